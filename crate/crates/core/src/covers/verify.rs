//! Executable checks of the transformation rules on a concrete cover.

use serde::Serialize;

use super::ramification::{divisor_check, pullback_effective, pullback_pair, ramification, f_torsion_exponent};
use super::{CoverSpec, SectionT};
use crate::divisor::DivisorQ;
use crate::error::{Error, Result};
use crate::frobenius::{fedder_data, fsignature_estimate, splitting_ratio, CartierSpec, SplittingReport, StabilizedIdeal};
use crate::ideal::Ideal;
use crate::matrix::FpMatrix;
use crate::pairs::{sigma_spec, tau_from_seed, seed_for};
use crate::poly::Poly;
use crate::quotient::QuotientPresentation;
use crate::rational::{format_q, Q};

fn ideal_strings(j: &Ideal) -> Vec<String> {
    j.basis().iter().map(|g| g.to_string()).collect()
}

/// A violated precondition of `T`: not surjective, or `T(n) ⊄ m`.
pub fn section_precondition_failure(cover: &CoverSpec, t: &SectionT) -> Option<String> {
    if !t.is_surjective(cover) {
        return Some("T is not surjective".into());
    }
    let in_m = |v: &Poly| cover.reduce_base(v).constant_term() == 0;
    for (k, b) in cover.basis().iter().enumerate() {
        if b.constant_term() == 0 && !in_m(&t.values[k]) {
            return Some(format!("T(n) ⊄ m, witness {b}"));
        }
    }
    let rt = cover.total().ambient();
    for i in 0..rt.nvars() {
        for (k, b) in cover.basis().iter().enumerate() {
            let c = cover.mul_coords(cover.var_coords(i), &cover.unit_coords(k));
            if !in_m(&t.apply(&c)) {
                return Some(format!("T(n) ⊄ m, witness {}", &Poly::var(rt, i) * b));
            }
        }
    }
    None
}

/// Every window Fedder generator of the base pair passes the divisor check.
fn spec_transposable(
    cover: &CoverSpec,
    ram: &super::RamificationData,
    delta: &DivisorQ,
    window: u32,
) -> Result<Option<String>> {
    for e in 1..=window.max(1) {
        let u = fedder_data(&CartierSpec::pair(delta.clone()), cover.base(), e)?.u;
        for a in u.gens() {
            if !divisor_check(cover, ram, a, e).transposable {
                return Ok(Some(format!("base spec is not transposable at e = {e} (generator {a})")));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct FsigRuleReport {
    pub rank: usize,
    pub preconditions_ok: bool,
    pub violated: Option<String>,
    pub delta_star: String,
    pub upstairs: Option<SplittingReport>,
    pub downstairs: Option<SplittingReport>,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub ok: bool,
}

/// Compares `s(S, Δ*)` with `N·s(R, Δ)`.
pub fn verify_fsig_rule(cover: &CoverSpec, t: &SectionT, delta: &DivisorQ, e_max: u32) -> Result<FsigRuleReport> {
    let ram = ramification(cover, t)?;
    let delta_star = pullback_pair(cover, &ram, delta);
    let n = cover.rank();
    let mut violated = section_precondition_failure(cover, t);
    if violated.is_none() {
        violated = spec_transposable(cover, &ram, delta, e_max)?;
    }
    if violated.is_none() {
        if let Some((e, _)) = pullback_effective(cover, &delta_star, e_max).into_iter().find(|(_, ok)| !ok) {
            violated = Some(format!("Δ* = {delta_star} is not effective at e = {e}"));
        }
    }
    let mut report = FsigRuleReport {
        rank: n,
        preconditions_ok: violated.is_none(),
        violated,
        delta_star: delta_star.to_string(),
        upstairs: None,
        downstairs: None,
        residual: None,
        tolerance: None,
        ok: false,
    };
    if !report.preconditions_ok {
        return Ok(report);
    }
    let down = fsignature_estimate(cover.base(), &CartierSpec::pair(delta.clone()), e_max)?;
    let up = fsignature_estimate(cover.total(), &CartierSpec::pair(delta_star), e_max)?;
    let residual = (up.estimate_f64 - n as f64 * down.estimate_f64).abs();
    let tolerance = err(&up) + n as f64 * err(&down);
    report.residual = Some(residual);
    report.tolerance = Some(tolerance);
    report.ok = residual <= tolerance + 1e-12;
    report.upstairs = Some(up);
    report.downstairs = Some(down);
    Ok(report)
}

fn err(r: &SplittingReport) -> f64 {
    *r.error_bar.numer() as f64 / *r.error_bar.denom() as f64
}

#[derive(Clone, Debug, Serialize)]
pub struct SpRuleReport {
    pub preconditions_ok: bool,
    pub violated: Option<String>,
    pub delta_star: String,
    pub sp_down: StabilizedIdeal,
    pub sp_up: StabilizedIdeal,
    pub contraction: Vec<String>,
    pub equal: bool,
    pub residue_degree: Option<u64>,
    pub ratio_down: Option<f64>,
    pub ratio_up: Option<f64>,
    pub residual: Option<f64>,
}

/// `sp(S, Δ*) ∩ R = sp(R, Δ)`, plus the splitting-ratio residual
/// `|r(S) - [κ(sp_S):κ(sp_R)]·r(R)|` when the residue degree is computable.
pub fn verify_sp_rule(cover: &CoverSpec, t: &SectionT, spec: &CartierSpec, e_max: u32) -> Result<SpRuleReport> {
    let ram = ramification(cover, t)?;
    let (up_spec, delta_star) = upstairs_spec(cover, &ram, spec)?;
    let violated = section_precondition_failure(cover, t);
    let (ratio_down, sp_down) = ratio_or_prime(cover.base(), spec, e_max)?;
    let (ratio_up, sp_up) = ratio_or_prime(cover.total(), &up_spec, e_max)?;
    let contraction = cover.contract(sp_up.ideal());
    let equal = contraction == *sp_down.ideal();
    let residue_degree = if sp_up.unit || sp_down.unit { None } else { residue_degree(cover, sp_up.ideal(), sp_down.ideal()) };
    let residual = match (residue_degree, ratio_up, ratio_down) {
        (Some(d), Some(u), Some(l)) if sp_up.stabilized && sp_down.stabilized => Some((u - d as f64 * l).abs()),
        _ => None,
    };
    Ok(SpRuleReport {
        preconditions_ok: violated.is_none(),
        violated,
        delta_star,
        contraction: ideal_strings(&contraction),
        sp_down,
        sp_up,
        equal,
        residue_degree,
        ratio_down,
        ratio_up,
        residual,
    })
}

fn ratio_or_prime(p: &QuotientPresentation, spec: &CartierSpec, e_max: u32) -> Result<(Option<f64>, StabilizedIdeal)> {
    match splitting_ratio(p, spec, e_max) {
        Ok((r, sp)) => Ok((Some(r.estimate_f64), sp)),
        Err(Error::NotFPure) => Ok((None, crate::frobenius::splitting_prime(p, spec, e_max)?)),
        Err(e) => Err(e),
    }
}

/// The upstairs spec: a pair pulls back to `Δ*`, and `Full` to `-Ram_T`,
/// which is the full algebra when `T` is a free generator.
fn upstairs_spec(cover: &CoverSpec, ram: &super::RamificationData, spec: &CartierSpec) -> Result<(CartierSpec, String)> {
    match spec {
        CartierSpec::Full => {
            let ds = pullback_pair(cover, ram, &DivisorQ::zero(cover.base().ambient()));
            if ds.is_zero() {
                Ok((CartierSpec::Full, "0".into()))
            } else {
                let s = ds.to_string();
                Ok((CartierSpec::pair(ds), s))
            }
        }
        CartierSpec::Pair { divisor, ideal_part: None } => {
            let ds = pullback_pair(cover, ram, divisor);
            let s = ds.to_string();
            Ok((CartierSpec::pair(ds), s))
        }
        _ => Err(Error::InvalidCartier("rule verifiers take a full or divisor-pair spec".into())),
    }
}

/// `[κ(P):κ(p)]` as the generic rank of `S/P` over `R/p`, for `p` maximal
/// or `p = 0` over a polynomial base.
fn residue_degree(cover: &CoverSpec, up: &Ideal, down: &Ideal) -> Option<u64> {
    let n = cover.rank();
    let mut rows: Vec<Vec<Poly>> = Vec::new();
    for g in up.gens() {
        let gc = cover.coords(g);
        for k in 0..n {
            rows.push(cover.mul_coords(&gc, &cover.unit_coords(k)));
        }
    }
    let rb = cover.base().ambient();
    if down.is_zero() && cover.base().is_regular() {
        return Some((n - poly_rank(rows)) as u64);
    }
    let maximal = Ideal::maximal(rb);
    if *down == maximal {
        let f = rb.field();
        let mut m = FpMatrix::zeros(f, 0, n);
        for r in rows {
            let row: Vec<u32> = r.iter().map(|x| down.normal_form(x).constant_term()).collect();
            m.push_row(&row);
        }
        return Some((n - m.rank()) as u64);
    }
    None
}

/// Rank over the fraction field by division-free elimination.
fn poly_rank(mut rows: Vec<Vec<Poly>>) -> usize {
    let Some(width) = rows.first().map(|r| r.len()) else { return 0 };
    let mut rank = 0;
    for c in 0..width {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, piv);
        let pivot = rows[rank].clone();
        for r in rank + 1..rows.len() {
            if rows[r][c].is_zero() {
                continue;
            }
            let factor = rows[r][c].clone();
            let new: Vec<Poly> = (0..width).map(|k| &(&pivot[c] * &rows[r][k]) - &(&factor * &pivot[k])).collect();
            rows[r] = new;
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealRuleReport {
    pub delta_star: String,
    pub upstairs: StabilizedIdeal,
    pub image: Vec<String>,
    pub downstairs: StabilizedIdeal,
    pub contained: bool,
    pub equal: bool,
    pub surjective: bool,
    pub ok: bool,
}

fn pulled_back_effective(cover: &CoverSpec, t: &SectionT, delta: &DivisorQ, window: u32) -> Result<CartierSpec> {
    let ram = ramification(cover, t)?;
    let ds = pullback_pair(cover, &ram, delta);
    if let Some((e, _)) = pullback_effective(cover, &ds, window).into_iter().find(|(_, ok)| !ok) {
        return Err(Error::NonEffective(e));
    }
    Ok(CartierSpec::pair(ds))
}

/// `T(τ(S, Δ*)) = τ(R, Δ)`.
pub fn verify_tau_rule(cover: &CoverSpec, t: &SectionT, delta: &DivisorQ, window: u32) -> Result<IdealRuleReport> {
    if !cover.total().is_regular() || !cover.base().is_regular() {
        return Err(Error::RequiresRegular("the τ rule is checked on regular rings".into()));
    }
    let up_spec = pulled_back_effective(cover, t, delta, window)?;
    let down_spec = CartierSpec::pair(delta.clone());
    let up = tau_from_seed(cover.total(), &up_spec, seed_for(cover.total(), &up_spec), window)?;
    let down = tau_from_seed(cover.base(), &down_spec, seed_for(cover.base(), &down_spec), window)?;
    Ok(ideal_rule(cover, t, &up_spec, up, down, true))
}

/// `T(σ(S, Δ*)) ⊆ σ(R, Δ)`, with equality demanded when `T` is surjective.
pub fn verify_sigma_rule(cover: &CoverSpec, t: &SectionT, delta: &DivisorQ, window: u32) -> Result<IdealRuleReport> {
    let up_spec = pulled_back_effective(cover, t, delta, window)?;
    let up = sigma_spec(cover.total(), &up_spec, window)?;
    let down = sigma_spec(cover.base(), &CartierSpec::pair(delta.clone()), window)?;
    Ok(ideal_rule(cover, t, &up_spec, up, down, false))
}

fn ideal_rule(
    cover: &CoverSpec,
    t: &SectionT,
    up_spec: &CartierSpec,
    up: StabilizedIdeal,
    down: StabilizedIdeal,
    need_equal: bool,
) -> IdealRuleReport {
    let image = cover.image_ideal(t, up.ideal());
    let contained = down.ideal().contains_ideal(&image);
    let equal = contained && image.contains_ideal(down.ideal());
    let surjective = t.is_surjective(cover);
    let ok = up.stabilized && down.stabilized && if need_equal || surjective { equal } else { contained };
    let delta_star = match up_spec {
        CartierSpec::Pair { divisor, .. } => divisor.to_string(),
        _ => "0".into(),
    };
    IdealRuleReport { delta_star, image: ideal_strings(&image), upstairs: up, downstairs: down, contained, equal, surjective, ok }
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichRow {
    pub e: u32,
    /// `C_e^{cΔ}` generators are all transposable.
    pub lower: bool,
    /// Every transposable element lies in `C_e^Δ`.
    pub upper: bool,
    pub transposable_ideal: Vec<String>,
    pub equals_lower: bool,
    pub equals_upper: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SandwichReport {
    pub rank: usize,
    pub torsion_exponent: u32,
    pub c: String,
    pub delta: String,
    pub c_delta: String,
    pub rows: Vec<SandwichRow>,
    pub total_signature: Option<f64>,
    pub lower_bound: Option<f64>,
    pub inequality_holds: Option<bool>,
    pub ok: bool,
}

/// `C^{cΔ} ⊆ C^⊤ ⊆ C^Δ` with `Δ = (1/N) Branch_T` and `c = N/k`.
///
/// The transposable elements of degree `e` form the ideal
/// `{a : ρ^{q-1} | a∘f}`, computed exactly as a contraction.
pub fn verify_sandwich(cover: &CoverSpec, t: &SectionT, e_max: u32, with_signature: bool) -> Result<SandwichReport> {
    if !cover.base().is_regular() {
        return Err(Error::RequiresRegular("the sandwich is checked over a polynomial base".into()));
    }
    let ram = ramification(cover, t)?;
    let n = cover.rank();
    let k = f_torsion_exponent(cover, &ram.rho);
    if k == 0 {
        return Err(Error::InvalidCartier("ρ has no torsion exponent".into()));
    }
    let c = Q::new(n as i64, k as i64);
    let delta = ram.branch.scale(Q::new(1, n as i64)).normalized();
    let c_delta = delta.scale(c).normalized();
    let f = cover.base().ambient().field();
    let mut rows = Vec::new();
    for e in 1..=e_max.max(1) {
        let q = f.q(e);
        let lower_u = fedder_data(&CartierSpec::pair(c_delta.clone()), cover.base(), e)?.u;
        let upper_u = fedder_data(&CartierSpec::pair(delta.clone()), cover.base(), e)?.u;
        let rels = cover.total().relations();
        let trans = cover.contract(&rels.add_gens(&[ram.rho.pow(q - 1)]));
        let lower = lower_u.gens().iter().all(|a| divisor_check(cover, &ram, a, e).transposable);
        let upper = upper_u.contains_ideal(&trans);
        rows.push(SandwichRow {
            e,
            lower,
            upper,
            transposable_ideal: ideal_strings(&trans),
            equals_lower: trans == lower_u,
            equals_upper: trans == upper_u,
        });
    }
    let (total_signature, lower_bound, inequality_holds) = if with_signature {
        let up = fsignature_estimate(cover.total(), &CartierSpec::Full, e_max)?;
        let down = fsignature_estimate(cover.base(), &CartierSpec::pair(c_delta.clone()), e_max)?;
        let lb = n as f64 * down.estimate_f64;
        let holds = up.estimate_f64 + err(&up) + n as f64 * err(&down) >= lb;
        (Some(up.estimate_f64), Some(lb), Some(holds))
    } else {
        (None, None, None)
    };
    let ok = rows.iter().all(|r| r.lower && r.upper) && inequality_holds.unwrap_or(true);
    Ok(SandwichReport {
        rank: n,
        torsion_exponent: k,
        c: format_q(&c),
        delta: delta.to_string(),
        c_delta: c_delta.to_string(),
        rows,
        total_signature,
        lower_bound,
        inequality_holds,
        ok,
    })
}
