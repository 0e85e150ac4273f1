//! Cartier algebras presented by Fedder ideals, the trace `Φ^e`, splitting
//! numbers, nonsplit ideals, splitting primes, F-signature and splitting
//! ratio estimates.

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::divisor::DivisorQ;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::pairing::BoxSpan;
use crate::poly::{Monomial, Poly};
use crate::quotient::{positive_grading, QuotientPresentation};
use crate::rational::{ceil_mul, format_q, q_string, Q};

/// `Φ^e` on a polynomial ring, the generator of `Hom_S(F^e_* S, S)` dual to
/// `(x_1⋯x_n)^{q-1}`.
pub fn phi_apply(f: &Poly, e: u32) -> Poly {
    phi_q(f, f.ring().field().q(e))
}

pub fn phi_q(f: &Poly, q: u64) -> Poly {
    let q32 = q as u32;
    let terms = f
        .terms()
        .iter()
        .filter(|(m, _)| m.0.iter().all(|&a| a % q32 == q32 - 1))
        .map(|(m, c)| (Monomial(m.0.iter().map(|&a| a / q32).collect()), *c))
        .collect();
    Poly::from_terms(f.ring(), terms)
}

/// `Φ^e(J) = Σ_g Φ^e(S·g)`, generated by the Frobenius components of the
/// generators.
pub fn phi_ideal(j: &Ideal, q: u64) -> Ideal {
    let mut gens = Vec::new();
    for g in j.gens() {
        gens.extend(g.frobenius_components(q).into_values());
    }
    Ideal::new(j.ring(), gens)
}

#[derive(Clone, Debug)]
pub enum CartierSpec {
    Full,
    Pair { divisor: DivisorQ, ideal_part: Option<(Ideal, Q)> },
    Principal { u0: Poly, e0: u32 },
}

impl CartierSpec {
    pub fn pair(divisor: DivisorQ) -> Self {
        CartierSpec::Pair { divisor, ideal_part: None }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CartierSpec::Full => Ok(()),
            CartierSpec::Pair { ideal_part, .. } => match ideal_part {
                Some((_, t)) if *t < Q::from_integer(0) => {
                    Err(Error::InvalidCartier("ideal exponent must be nonnegative".into()))
                }
                _ => Ok(()),
            },
            CartierSpec::Principal { u0, e0 } => {
                if u0.is_zero() {
                    Err(Error::InvalidCartier("u0 must be nonzero".into()))
                } else if *e0 == 0 {
                    Err(Error::ZeroFrobeniusExponent)
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            CartierSpec::Full => "full".into(),
            CartierSpec::Pair { divisor, ideal_part } => match ideal_part {
                None => format!("pair {}", divisor.normalized()),
                Some((a, t)) => format!(
                    "pair {} with ideal ({})^{}",
                    divisor.normalized(),
                    a.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", "),
                    format_q(t)
                ),
            },
            CartierSpec::Principal { u0, e0 } => format!("principal u0 = {u0}, e0 = {e0}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FedderData {
    pub e: u32,
    pub q: u64,
    /// `U_e`, always containing `I^[q]`.
    pub u: Ideal,
}

/// `(I^[q] : I)`; the unit ideal for a polynomial ring, `(f^{q-1})` for a
/// hypersurface.
pub fn fedder_full(p: &QuotientPresentation, q: u64) -> Ideal {
    let ring = p.ambient();
    let rel = p.relations();
    let basis = rel.basis();
    if basis.is_empty() {
        return Ideal::unit(ring);
    }
    if basis.len() == 1 {
        return Ideal::new(ring, vec![basis[0].pow(q - 1)]);
    }
    rel.bracket_power(q).colon(rel)
}

pub fn fedder_data(spec: &CartierSpec, p: &QuotientPresentation, e: u32) -> Result<FedderData> {
    if e == 0 {
        return Err(Error::ZeroFrobeniusExponent);
    }
    spec.validate()?;
    let ring = p.ambient();
    let q = p.ambient().field().q(e);
    let u = match spec {
        CartierSpec::Full => fedder_full(p, q),
        CartierSpec::Pair { divisor, ideal_part } => {
            let full = fedder_full(p, q);
            let (pos, neg) = divisor.ceiling_parts(q);
            let rel = p.relations();
            let mut part = if neg.is_unit() {
                full.mul_poly(&pos)
            } else {
                // Twisting by a negative part is only meaningful when the
                // divisor of ⌈(q-1)Δ⌉ stays effective on R.
                if !effective_at(p, divisor, q) {
                    return Err(Error::NonEffective(e));
                }
                let v = rel.add_gens(&[pos.clone()]).colon_poly(&neg);
                full.product(&v)
            };
            if let Some((a, t)) = ideal_part {
                let k = ceil_mul(t, q as i64 - 1).max(0) as u64;
                part = part.product(&a.pow(k));
            }
            part.sum(&rel.bracket_power(q))
        }
        CartierSpec::Principal { u0, e0 } => {
            if e % e0 != 0 {
                return Err(Error::DegreeNotMultiple { e, e0: *e0 });
            }
            let q0 = p.ambient().field().q(*e0);
            let ue = u0.pow((q - 1) / (q0 - 1));
            Ideal::new(ring, vec![ue]).sum(&p.relations().bracket_power(q))
        }
    };
    Ok(FedderData { e, q, u })
}

/// Whether `⌈(q-1)Δ⌉` is effective on `R`, i.e. its positive part lies in
/// `(neg) + I`.
pub fn effective_at(p: &QuotientPresentation, divisor: &DivisorQ, q: u64) -> bool {
    let (pos, neg) = divisor.ceiling_parts(q);
    neg.is_unit() || p.relations().add_gens(&[neg]).contains(&pos)
}

/// Fedder's criterion: `(I^[p] : I) ⊄ m^[p]`.
pub fn fedder_fpure(p: &QuotientPresentation) -> bool {
    let q = p.p() as u64;
    fedder_full(p, q).gens().iter().any(|g| !g.truncate_box(q).is_zero())
}

fn span(p: &QuotientPresentation, spec: &CartierSpec, e: u32) -> Result<(FedderData, BoxSpan)> {
    let fd = fedder_data(spec, p, e)?;
    let s = BoxSpan::new(p.ambient(), fd.u.gens(), fd.q);
    Ok((fd, s))
}

/// `a_e`, the rank of the residue pairing between `U_e` and `S/(m^[q] + I)`.
pub fn splitting_number(p: &QuotientPresentation, spec: &CartierSpec, e: u32) -> Result<u64> {
    Ok(span(p, spec, e)?.1.rank())
}

/// `I_e = {r : φ(F^e_* r) ∈ m for all φ ∈ C_e}` as an ideal of the ambient
/// ring (it contains `I` and `m^[q]`).
pub fn nonsplit_ideal(p: &QuotientPresentation, spec: &CartierSpec, e: u32) -> Result<Ideal> {
    let (_, s) = span(p, spec, e)?;
    let ie = s.kernel_ideal();
    debug_assert!(ie.contains_ideal(p.relations()));
    Ok(ie)
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizedIdeal {
    pub ideal: Vec<String>,
    pub stabilized: bool,
    pub e_used: Vec<u32>,
    pub unit: bool,
    pub note: Option<String>,
    #[serde(skip)]
    pub value: Option<Ideal>,
}

impl StabilizedIdeal {
    pub fn new(ideal: Ideal, stabilized: bool, e_used: Vec<u32>, note: Option<String>) -> Self {
        StabilizedIdeal {
            ideal: ideal.basis().iter().map(|g| g.to_string()).collect(),
            stabilized,
            e_used,
            unit: ideal.is_unit(),
            note,
            value: Some(ideal),
        }
    }

    pub fn ideal(&self) -> &Ideal {
        self.value.as_ref().expect("constructed with an ideal")
    }
}

/// First `e ≤ e_max` with `a_e ≠ 0`.
fn first_nonzero(p: &QuotientPresentation, spec: &CartierSpec, e_max: u32) -> Result<Option<u32>> {
    for e in 1..=e_max {
        match splitting_number(p, spec, e) {
            Ok(0) | Err(Error::NonEffective(_)) => continue,
            Ok(_) => return Ok(Some(e)),
            Err(err) => return Err(err),
        }
    }
    Ok(None)
}

/// The splitting prime `sp = ∩_e I_e`.
///
/// Every `I_e` contains `m^[q]`, so the partial intersections never repeat
/// literally. Instead the part of degree below `q·w_min` (for a positive
/// grading `w`), which `m^[q]` cannot reach, is compared across consecutive
/// steps; stabilization means two consecutive low parts agree.
pub fn splitting_prime(p: &QuotientPresentation, spec: &CartierSpec, e_max: u32) -> Result<StabilizedIdeal> {
    let ring = p.ambient();
    let Some(n) = first_nonzero(p, spec, e_max.max(1))? else {
        return Ok(StabilizedIdeal::new(
            Ideal::unit(ring),
            true,
            (1..=e_max).collect(),
            Some("not F-pure: a_e = 0 throughout the window".into()),
        ));
    };
    let mut rels: Vec<Poly> = p.relations().gens().to_vec();
    if let CartierSpec::Pair { divisor, .. } = spec {
        rels.extend(divisor.entries().iter().map(|(g, _)| g.clone()));
    }
    let weights = positive_grading(ring.nvars(), &rels);
    let mut used = Vec::new();
    let mut acc: Option<Ideal> = None;
    let mut prev_low: Option<Ideal> = None;
    let mut e = n;
    while e <= e_max.max(2 * n) {
        let ie = nonsplit_ideal(p, spec, e)?;
        used.push(e);
        let q = ring.field().q(e);
        let cur = match acc {
            Some(prev) if !prev.contains_ideal(&ie) => prev.intersect(&ie),
            _ => ie,
        };
        if cur.is_unit() {
            return Ok(StabilizedIdeal::new(cur, true, used, Some("not F-pure".into())));
        }
        let Some(w) = &weights else {
            acc = Some(cur);
            e += n;
            continue;
        };
        let wmin = *w.iter().min().unwrap();
        let bound = q as i64 * wmin;
        let low: Vec<Poly> = cur
            .basis()
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.weighted_degree(w) < bound))
            .cloned()
            .collect();
        let low = Ideal::new(ring, low);
        if let Some(pl) = &prev_low {
            if *pl == low {
                let note = "splitting prime is prime when proper; primality not verified".to_string();
                return Ok(StabilizedIdeal::new(low, true, used, Some(note)));
            }
        }
        prev_low = Some(low);
        acc = Some(cur);
        e += n;
    }
    let out = prev_low.or(acc).unwrap_or_else(|| Ideal::unit(ring));
    Ok(StabilizedIdeal::new(out, false, used, Some("not stabilized within the window".into())))
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ReportRow {
    pub e: u32,
    pub q: u64,
    pub a_e: u64,
    #[serde(with = "q_string")]
    pub ratio: Q,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SplittingReport {
    pub rows: Vec<ReportRow>,
    pub n: u32,
    pub delta: usize,
    #[serde(with = "q_string")]
    pub estimate: Q,
    #[serde(with = "q_string")]
    pub error_bar: Q,
    pub estimate_f64: f64,
    pub stabilized: bool,
}

fn report(rows: Vec<ReportRow>, delta: usize) -> SplittingReport {
    let n = rows.iter().filter(|r| r.a_e != 0).fold(0u32, |g, r| g.gcd(&r.e));
    let usable: Vec<&ReportRow> =
        rows.iter().filter(|r| n == 0 || r.e % n == 0).collect();
    let (estimate, error_bar) = match usable.as_slice() {
        [] => (Q::from_integer(0), Q::from_integer(0)),
        [only] => (only.ratio, Q::new(1, only.q as i64)),
        [.., a, b] => {
            // One Richardson step for r_e = s + c/q + O(q^-2).
            let qa = Q::from_integer(a.q as i64);
            let qb = Q::from_integer(b.q as i64);
            let est = (qb * b.ratio - qa * a.ratio) / (qb - qa);
            let d = est - b.ratio;
            let err = if d < Q::from_integer(0) { -d } else { d };
            (est, err)
        }
    };
    let stabilized = usable.len() >= 2 && usable[usable.len() - 1].ratio == usable[usable.len() - 2].ratio;
    SplittingReport {
        rows,
        n,
        delta,
        estimate,
        error_bar,
        estimate_f64: *estimate.numer() as f64 / *estimate.denom() as f64,
        stabilized,
    }
}

fn rows_for(p: &QuotientPresentation, spec: &CartierSpec, e_max: u32, delta: usize) -> Result<Vec<ReportRow>> {
    (1..=e_max)
        .into_par_iter()
        .map(|e| {
            let q = p.ambient().field().q(e);
            let a = match splitting_number(p, spec, e) {
                Ok(a) => a,
                Err(Error::NonEffective(_)) => 0,
                Err(err) => return Err(err),
            };
            let denom = (q as i64).pow(delta as u32);
            Ok(ReportRow { e, q, a_e: a, ratio: Q::new(a as i64, denom) })
        })
        .collect()
}

/// Table of `a_e / q^δ` with a crude extrapolation.
pub fn fsignature_estimate(p: &QuotientPresentation, spec: &CartierSpec, e_max: u32) -> Result<SplittingReport> {
    let delta = p.dim();
    Ok(report(rows_for(p, spec, e_max.max(1), delta)?, delta))
}

/// `r(R, C) = s(R/sp, C̄)`. Elements of `sp` pair trivially with every `u`,
/// so the pairing rank is unchanged and only `δ` drops to `dim R/sp`.
pub fn splitting_ratio(p: &QuotientPresentation, spec: &CartierSpec, e_max: u32) -> Result<(SplittingReport, StabilizedIdeal)> {
    let sp = splitting_prime(p, spec, e_max)?;
    if sp.unit {
        return Err(Error::NotFPure);
    }
    let quotient = p.quotient_by(sp.ideal().gens())?;
    let delta = quotient.dim();
    let rows = rows_for(p, spec, e_max.max(1), delta)?;
    Ok((report(rows, delta), sp))
}

/// A `p^{-e}`-linear map `Φ^e(u · -)` on `R`.
#[derive(Clone, Debug)]
pub struct PMinusLinearMap {
    pub e: u32,
    pub u: Poly,
}

impl PMinusLinearMap {
    /// Composition `self ∘ other` of degree `e + d`: `u_e^{p^d} · u_d`.
    pub fn compose(&self, other: &PMinusLinearMap) -> PMinusLinearMap {
        let qd = self.u.ring().field().q(other.e);
        PMinusLinearMap { e: self.e + other.e, u: &self.u.frobenius_power(qd) * &other.u }
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        phi_apply(&(&self.u * f), self.e)
    }

    /// Whether `u ∈ (I^[q] : I)`, i.e. the map descends to `R`.
    pub fn is_defined_on(&self, p: &QuotientPresentation) -> bool {
        let q = p.ambient().field().q(self.e);
        fedder_full(p, q).contains(&self.u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn pres(p: u32, vars: &[&str], rels: &[&str]) -> QuotientPresentation {
        QuotientPresentation::parse(p, vars, rels).unwrap()
    }

    #[test]
    fn phi_on_monomials() {
        for p in [3u32, 5, 7] {
            let r = PolyRing::with_vars(p, &["x"]).unwrap();
            let x = Poly::var(&r, 0);
            assert_eq!(phi_apply(&x.pow(p as u64 - 1), 1), Poly::one(&r));
            assert!(phi_apply(&x.pow(p as u64 - 2), 1).is_zero());
        }
    }

    #[test]
    fn regular_ring_has_full_splitting_numbers() {
        let r = pres(3, &["x"], &[]);
        for e in 1..=3 {
            assert_eq!(splitting_number(&r, &CartierSpec::Full, e).unwrap(), 3u64.pow(e));
            assert_eq!(nonsplit_ideal(&r, &CartierSpec::Full, e).unwrap(), Ideal::frobenius_maximal(r.ambient(), 3u64.pow(e)));
        }
    }

    #[test]
    fn half_divisor_on_the_line() {
        let r = pres(5, &["x"], &[]);
        let x = r.parse_poly("x").unwrap();
        let spec = CartierSpec::pair(DivisorQ::single(x.clone(), Q::new(1, 2)));
        let fd = fedder_data(&spec, &r, 1).unwrap();
        assert_eq!(fd.u, Ideal::new(r.ambient(), vec![x.pow(2)]));
        assert_eq!(splitting_number(&r, &spec, 1).unwrap(), 3);
    }

    #[test]
    fn fermat_cubic_verdicts() {
        let f3 = pres(3, &["x", "y", "z"], &["x^3+y^3+z^3"]);
        let f7 = pres(7, &["x", "y", "z"], &["x^3+y^3+z^3"]);
        assert!(!fedder_fpure(&f3));
        assert!(fedder_fpure(&f7));
        assert_eq!(splitting_number(&f3, &CartierSpec::Full, 1).unwrap(), 0);
        assert!(nonsplit_ideal(&f3, &CartierSpec::Full, 1).unwrap().is_unit());
        let sp = splitting_prime(&f3, &CartierSpec::Full, 2).unwrap();
        assert!(sp.unit);
    }

    #[test]
    fn veronese_first_two_numbers() {
        let v = pres(5, &["s", "t", "u"], &["s*u-t^2"]);
        assert_eq!(splitting_number(&v, &CartierSpec::Full, 1).unwrap(), 13);
        assert_eq!(splitting_number(&v, &CartierSpec::Full, 2).unwrap(), 313);
    }

    #[test]
    fn divisor_splitting_prime_and_ratio() {
        let r = pres(5, &["x", "y"], &[]);
        let x = r.parse_poly("x").unwrap();
        let spec = CartierSpec::pair(DivisorQ::single(x.clone(), Q::from_integer(1)));
        let i1 = nonsplit_ideal(&r, &spec, 1).unwrap();
        assert_eq!(i1, Ideal::new(r.ambient(), vec![x.clone(), r.parse_poly("y^5").unwrap()]));
        let sp = splitting_prime(&r, &spec, 3).unwrap();
        assert!(sp.stabilized);
        assert_eq!(*sp.ideal(), Ideal::new(r.ambient(), vec![x.clone()]));
        let (ratio, _) = splitting_ratio(&r, &spec, 2).unwrap();
        assert_eq!(ratio.delta, 1);
        assert!(ratio.rows.iter().all(|row| row.ratio == Q::from_integer(1)));
        let full = splitting_prime(&r, &CartierSpec::Full, 3).unwrap();
        assert!(full.stabilized && full.ideal().is_zero());
    }

    #[test]
    fn principal_composition_law() {
        let r = pres(3, &["x", "y"], &[]);
        let u0 = r.parse_poly("x^2*y^2+x*y").unwrap();
        let spec = CartierSpec::Principal { u0: u0.clone(), e0: 1 };
        let fd = fedder_data(&spec, &r, 2).unwrap();
        let phi = PMinusLinearMap { e: 1, u: u0.clone() };
        let comp = phi.compose(&phi);
        assert_eq!(fd.u, Ideal::new(r.ambient(), vec![comp.u.clone()]));
        assert!(matches!(
            fedder_data(&CartierSpec::Principal { u0, e0: 2 }, &r, 3),
            Err(Error::DegreeNotMultiple { e: 3, e0: 2 })
        ));
        // Φ(u Φ(u f)) = Φ^2(u^{p} u f)
        let f = r.parse_poly("x^5*y^7+y^8").unwrap();
        assert_eq!(phi.apply(&phi.apply(&f)), comp.apply(&f));
    }
}
