//! Test ideals and non-F-pure ideals of divisor pairs.

use rayon::prelude::*;

use crate::divisor::DivisorQ;
use crate::error::{Error, Result};
use crate::frobenius::{fedder_data, phi_ideal, CartierSpec, StabilizedIdeal};
use crate::ideal::Ideal;
use crate::poly::Poly;
use crate::quotient::QuotientPresentation;
use crate::rational::{ceil, Q};

/// Iteration cap for both fixed points.
pub const MAX_ITERATIONS: usize = 64;

#[derive(Clone, Debug)]
pub struct PairContext {
    pub presentation: QuotientPresentation,
    pub divisor: DivisorQ,
    pub ideal_part: Option<(Ideal, Q)>,
}

impl PairContext {
    pub fn new(presentation: QuotientPresentation, divisor: DivisorQ) -> Self {
        PairContext { presentation, divisor, ideal_part: None }
    }

    pub fn spec(&self) -> CartierSpec {
        CartierSpec::Pair { divisor: self.divisor.clone(), ideal_part: self.ideal_part.clone() }
    }

    fn check_effective(&self) -> Result<()> {
        if self.divisor.normalized().entries().iter().any(|(_, t)| *t < Q::from_integer(0)) {
            return Err(Error::InvalidCartier("divisor coefficients must be nonnegative".into()));
        }
        Ok(())
    }

    /// `∏ g_i^{⌈t_i⌉} · 𝔞^{⌈t⌉}`.
    pub fn test_ideal_seed(&self) -> Ideal {
        let ring = self.presentation.ambient();
        let c = self.divisor.round_up_element();
        let mut j = Ideal::new(ring, vec![c]);
        if let Some((a, t)) = &self.ideal_part {
            j = j.product(&a.pow(ceil(t).max(0) as u64));
        }
        j
    }
}

/// `Σ_{e=1..E} Φ^e(U_e · J)`.
fn cartier_image(p: &QuotientPresentation, spec: &CartierSpec, j: &Ideal, window: u32) -> Result<Ideal> {
    let parts: Vec<Result<Ideal>> = (1..=window)
        .into_par_iter()
        .map(|e| {
            let fd = fedder_data(spec, p, e)?;
            Ok(phi_ideal(&fd.u.product(j), fd.q))
        })
        .collect();
    let mut acc = Ideal::zero(p.ambient());
    for part in parts {
        acc = acc.sum(&part?);
    }
    Ok(Ideal::new(p.ambient(), acc.basis().to_vec()))
}

/// Ascending fixed point from `seed` under `J ↦ J + Σ_e Φ^e(U_e J)`.
pub fn tau_from_seed(p: &QuotientPresentation, spec: &CartierSpec, seed: Ideal, window: u32) -> Result<StabilizedIdeal> {
    if !p.is_regular() {
        return Err(Error::RequiresRegular("test ideals are computed on polynomial rings only".into()));
    }
    let window = window.max(1);
    let used: Vec<u32> = (1..=window).collect();
    let mut j = Ideal::new(p.ambient(), seed.basis().to_vec());
    for _ in 0..MAX_ITERATIONS {
        if j.is_unit() {
            return Ok(StabilizedIdeal::new(j, true, used, None));
        }
        let next = j.sum(&cartier_image(p, spec, &j, window)?);
        let next = Ideal::new(p.ambient(), next.basis().to_vec());
        if next == j {
            return Ok(StabilizedIdeal::new(j, true, used, None));
        }
        j = next;
    }
    Ok(StabilizedIdeal::new(j, false, used, Some("iteration cap reached".into())))
}

/// `τ(R, Δ, 𝔞^t)` on a regular ambient.
pub fn tau(ctx: &PairContext, window: u32) -> Result<StabilizedIdeal> {
    ctx.check_effective()?;
    tau_from_seed(&ctx.presentation, &ctx.spec(), ctx.test_ideal_seed(), window)
}

/// `σ(R, Δ, 𝔞^t)`: descending fixed point from `(1)`.
pub fn sigma(ctx: &PairContext, window: u32) -> Result<StabilizedIdeal> {
    ctx.check_effective()?;
    sigma_spec(&ctx.presentation, &ctx.spec(), window)
}

pub fn sigma_spec(p: &QuotientPresentation, spec: &CartierSpec, window: u32) -> Result<StabilizedIdeal> {
    let window = window.max(1);
    let used: Vec<u32> = (1..=window).collect();
    let mut j = Ideal::unit(p.ambient());
    for _ in 0..MAX_ITERATIONS {
        let next = cartier_image(p, spec, &j, window)?.sum(p.relations());
        let next = Ideal::new(p.ambient(), next.basis().to_vec());
        if next == j {
            return Ok(StabilizedIdeal::new(j, true, used, None));
        }
        j = next;
    }
    Ok(StabilizedIdeal::new(j, false, used, Some("iteration cap reached".into())))
}

#[derive(Clone, Debug)]
pub struct SandwichOutcome {
    pub equal: bool,
    pub tau_c: StabilizedIdeal,
    pub tau_d: StabilizedIdeal,
}

/// A test element for a spec on a regular ambient.
pub fn seed_for(p: &QuotientPresentation, spec: &CartierSpec) -> Ideal {
    match spec {
        CartierSpec::Full => Ideal::unit(p.ambient()),
        CartierSpec::Pair { divisor, ideal_part } => {
            PairContext { presentation: p.clone(), divisor: divisor.clone(), ideal_part: ideal_part.clone() }
                .test_ideal_seed()
        }
        CartierSpec::Principal { u0, .. } => Ideal::new(p.ambient(), vec![u0.clone()]),
    }
}

/// Checks `U_e(D)·c ⊆ U_e(C) ⊆ U_e(D)` over the window and then compares the
/// two test ideals computed from a common seed.
pub fn sandwich_tau_check(
    c_spec: &CartierSpec,
    d_spec: &CartierSpec,
    c: &Poly,
    p: &QuotientPresentation,
    window: u32,
) -> Result<SandwichOutcome> {
    for e in 1..=window.max(1) {
        let uc = fedder_data(c_spec, p, e)?.u;
        let ud = fedder_data(d_spec, p, e)?.u;
        if !ud.contains_ideal(&uc) {
            return Err(Error::InvalidCartier(format!("C_e ⊄ D_e at e = {e}")));
        }
        if !uc.contains_ideal(&ud.mul_poly(c)) {
            return Err(Error::InvalidCartier(format!("c·D_e ⊄ C_e at e = {e}")));
        }
    }
    let seed = seed_for(p, c_spec).product(&seed_for(p, d_spec)).mul_poly(c);
    let tau_c = tau_from_seed(p, c_spec, seed.clone(), window)?;
    let tau_d = tau_from_seed(p, d_spec, seed, window)?;
    let equal = tau_c.ideal() == tau_d.ideal();
    Ok(SandwichOutcome { equal, tau_c, tau_d })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u32, vars: &[&str], g: &str, t: Q) -> PairContext {
        let pres = QuotientPresentation::parse(p, vars, &[]).unwrap();
        let g = pres.parse_poly(g).unwrap();
        PairContext::new(pres, DivisorQ::single(g, t))
    }

    fn ideal(c: &PairContext, gens: &[&str]) -> Ideal {
        let p = &c.presentation;
        Ideal::new(p.ambient(), gens.iter().map(|g| p.parse_poly(g).unwrap()).collect())
    }

    #[test]
    fn tau_examples() {
        let c = ctx(5, &["x"], "x", Q::new(1, 2));
        assert!(tau(&c, 2).unwrap().unit);
        let cusp = ctx(7, &["x", "y"], "x^2+y^3", Q::new(5, 6));
        let t = tau(&cusp, 2).unwrap();
        assert!(t.stabilized);
        assert_eq!(*t.ideal(), ideal(&cusp, &["x", "y"]));
        let zero = ctx(7, &["x", "y"], "x^2+y^3", Q::from_integer(0));
        assert!(tau(&zero, 2).unwrap().unit);
    }

    #[test]
    fn sigma_examples() {
        let c = ctx(5, &["x"], "x", Q::new(3, 2));
        assert_eq!(*sigma(&c, 2).unwrap().ideal(), ideal(&c, &["x"]));
        let cusp = ctx(7, &["x", "y"], "x^2+y^3", Q::new(5, 6));
        assert!(sigma(&cusp, 2).unwrap().unit);
    }

    #[test]
    fn tau_rejects_singular_ambient() {
        let pres = QuotientPresentation::parse(5, &["s", "t", "u"], &["s*u-t^2"]).unwrap();
        let c = PairContext::new(pres.clone(), DivisorQ::zero(pres.ambient()));
        assert!(matches!(tau(&c, 2), Err(Error::RequiresRegular(_))));
    }

    #[test]
    fn identical_fedder_ideals_sandwich() {
        let pres = QuotientPresentation::parse(3, &["x", "y"], &[]).unwrap();
        let x = pres.parse_poly("x").unwrap();
        let y = pres.parse_poly("y").unwrap();
        let one = Q::from_integer(1);
        let c = CartierSpec::pair(DivisorQ::new(pres.ambient(), vec![(x.clone(), one), (y.clone(), one)]));
        let d = CartierSpec::pair(DivisorQ::single(&x * &y, one));
        let out = sandwich_tau_check(&c, &d, &Poly::one(pres.ambient()), &pres, 2).unwrap();
        assert!(out.equal);
    }
}
