//! The regression suite over the worked examples, shared by the acceptance
//! test and `frobsig paper-suite`.

use std::time::Instant;

use serde::Serialize;

use crate::covers::{
    divisor_check, ramification, section_precondition_failure, transpose, verify_fsig_rule, verify_sp_rule,
    verify_tau_rule, CoverSpec, SectionT, TransposeTable,
};
use crate::divisor::DivisorQ;
use crate::error::Result;
use crate::fixtures;
use crate::frobenius::{fedder_fpure, splitting_number, CartierSpec};
use crate::ideal::{monomials_of_degree, Ideal};
use crate::oracle::{free_rank_oracle, splitting_exists};
use crate::poly::Poly;
use crate::rational::Q;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
    pub budget_seconds: f64,
}

type Check = fn() -> Result<(bool, String)>;

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub budget_seconds: f64,
    check: Check,
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, name, budget_seconds, check| Criterion { id, name, budget_seconds, check };
    vec![
        c(1, "Veronese signature", 30.0, veronese_signature as Check),
        c(2, "pair signature", 10.0, pair_signature),
        c(3, "norm identity", 10.0, norm_identity),
        c(4, "transposability sharpening", 60.0, transposability_sharpening),
        c(5, "powers-of-x recursion", 5.0, powers_of_x),
        c(6, "tau transformation", 20.0, tau_transformation),
        c(7, "splitting-prime contraction", 20.0, sp_contraction),
        c(8, "negative precondition", 5.0, negative_precondition),
        c(9, "Veronese trace claims", 10.0, veronese_trace_claims),
        c(10, "oracle equivalence", 120.0, oracle_equivalence),
        c(11, "Fedder verdicts", 10.0, fedder_verdicts),
    ]
}

impl Criterion {
    pub fn run(&self) -> CriterionOutcome {
        let start = Instant::now();
        let result = (self.check)();
        let seconds = start.elapsed().as_secs_f64();
        let (ok, mut detail) = match result {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        let within = seconds <= self.budget_seconds;
        if !within {
            detail.push_str(&format!("; over budget ({seconds:.1}s > {}s)", self.budget_seconds));
        }
        CriterionOutcome {
            id: self.id,
            name: self.name,
            pass: ok && within,
            detail,
            seconds,
            budget_seconds: self.budget_seconds,
        }
    }
}

pub fn run_all() -> Vec<CriterionOutcome> {
    criteria().iter().map(|c| c.run()).collect()
}

fn paren(gens: &[String]) -> String {
    if gens.is_empty() {
        "(0)".into()
    } else {
        format!("({})", gens.join(", "))
    }
}

fn ratio(a: u64, q: u64, delta: u32) -> f64 {
    a as f64 / (q as f64).powi(delta as i32)
}

fn veronese_signature() -> Result<(bool, String)> {
    let v = fixtures::quadric_cone(5)?;
    let a1 = splitting_number(&v, &CartierSpec::Full, 1)?;
    let a2 = splitting_number(&v, &CartierSpec::Full, 2)?;
    let r = ratio(a2, 25, 2);
    let dev = (r - 0.5).abs();
    Ok((dev <= 1.0 / 25.0, format!("a_1 = {a1}, a_2 = {a2}, a_2/5^4 = {r:.4}, |dev| = {dev:.4} <= 0.04")))
}

/// `A = F_3[a_1, a_2]` with `a_i = x_i^2`, `Δ' = (1/2) div(a_1 a_2)`.
fn pair_signature() -> Result<(bool, String)> {
    let a = fixtures::regular(3, &["a1", "a2"])?;
    let delta = DivisorQ::single(a.parse_poly("a1*a2")?, Q::new(1, 2));
    let spec = CartierSpec::pair(delta);
    let a1 = splitting_number(&a, &spec, 1)?;
    let a2 = splitting_number(&a, &spec, 2)?;
    let r = ratio(a2, 9, 2);
    let dev = (r - 0.25).abs();
    Ok((dev <= 1.0 / 9.0, format!("a_1 = {a1}, a_2 = {a2}, a_2/3^4 = {r:.4}, |dev| = {dev:.4} <= 1/9")))
}

fn f2_poly(c: &CoverSpec, s: &str) -> Result<Poly> {
    c.total().parse_poly(s)
}

fn norm_identity() -> Result<(bool, String)> {
    let c = fixtures::f2_cover()?;
    let rho = f2_poly(&c, "x^2+y*z")?;
    let eps = c.base().parse_poly("y^3+u*v")?;
    let norm = c.norm_of(&rho);
    let norm_ok = norm == eps.pow(2);
    let mp = c.min_poly(&rho)?;
    let expected = vec![eps.pow(2), Poly::zero(c.base().ambient()), c.base().parse_poly("y*z")?, Poly::one(c.base().ambient())];
    let mp_ok = mp.coeffs() == expected.as_slice();
    Ok((norm_ok && mp_ok, format!("Norm(x^2+yz) = {norm}; min poly {mp}")))
}

fn transposability_sharpening() -> Result<(bool, String)> {
    let c = fixtures::f2_cover()?;
    let t = SectionT::trace(&c);
    let ram = ramification(&c, &t)?;
    let rb = c.base().ambient();
    let eps = c.base().parse_poly("y^3+u*v")?;
    let mut checked = 0usize;
    let mut positives = 0usize;
    for e in 1..=2u32 {
        let q = rb.field().q(e);
        let table = TransposeTable::new(&c, &t, e);
        let eps_q = eps.pow(q - 1);
        let eps_ideal = Ideal::new(rb, vec![eps_q.clone()]);
        for d in 0..=2 {
            for m in monomials_of_degree(rb.nvars(), d) {
                let mono = Poly::monomial(rb, m, 1);
                for a in [mono.clone(), &mono * &eps_q] {
                    let by_eps = eps_ideal.contains(&a);
                    let by_rho = divisor_check(&c, &ram, &a, e).transposable;
                    let by_solve = transpose(&c, &ram, &table, &a).is_some();
                    if by_eps != by_rho || by_rho != by_solve {
                        return Ok((false, format!("disagreement at e = {e}, a = {a}: ε {by_eps}, ρ {by_rho}, solver {by_solve}")));
                    }
                    checked += 1;
                    positives += by_solve as usize;
                }
            }
        }
    }
    Ok((true, format!("{checked} Fedder elements at e = 1, 2 ({positives} transposable); ε, ρ and solver verdicts agree")))
}

fn powers_of_x() -> Result<(bool, String)> {
    let c = fixtures::f2_cover()?;
    let rb = c.base().ambient();
    let x = c.var_coords(0).clone();
    let eps = c.base().parse_poly("y^3+u*v")?;
    let yz = c.base().parse_poly("y*z")?;
    let mut bc: Vec<(Poly, Poly)> = Vec::new();
    for e in 1..=5u32 {
        let k = (1u64 << e) - 1;
        let co = c.pow_coords(&x, k);
        if !co[2].is_zero() {
            return Ok((false, format!("x^{k} has a nonzero x^2 coordinate")));
        }
        bc.push((co[1].clone(), co[0].clone()));
    }
    let (b1, c1) = &bc[0];
    if *b1 != Poly::one(rb) || !c1.is_zero() {
        return Ok((false, "b_1 = 1, c_1 = 0 fails".into()));
    }
    for e in 0..4 {
        let (b, cc) = &bc[e];
        let (nb, nc) = &bc[e + 1];
        if *nb != &(&yz * &b.pow(2)) + &cc.pow(2) || *nc != &b.pow(2) * &eps {
            return Ok((false, format!("recursion fails at e = {}", e + 1)));
        }
    }
    Ok((true, format!("recursion exact for e = 1..4; b_3 = {}", bc[2].0)))
}

fn tau_transformation() -> Result<(bool, String)> {
    let c = fixtures::kummer()?;
    let t = SectionT::dual(&c, 1);
    let x = c.base().parse_poly("x")?;
    let mut parts = Vec::new();
    let mut ok = true;
    for (n, d) in [(1, 4), (3, 4), (5, 4)] {
        let r = verify_tau_rule(&c, &t, &DivisorQ::single(x.clone(), Q::new(n, d)), 2)?;
        ok &= r.ok && r.equal;
        parts.push(format!("t = {n}/{d}: T(τ_S) = {} vs τ_R = {}", paren(&r.image), paren(&r.downstairs.ideal)));
    }
    Ok((ok, parts.join("; ")))
}

fn sp_contraction() -> Result<(bool, String)> {
    let c = fixtures::kummer()?;
    let x = c.base().parse_poly("x")?;
    let pair = verify_sp_rule(
        &c,
        &SectionT::trace(&c),
        &CartierSpec::pair(DivisorQ::single(x, Q::from_integer(1))),
        3,
    )?;
    let full = verify_sp_rule(&c, &SectionT::dual(&c, 1), &CartierSpec::Full, 3)?;
    let ok = pair.equal && full.equal && pair.sp_up.stabilized && pair.sp_down.stabilized;
    Ok((
        ok,
        format!(
            "pair: sp_S = {}, contraction {}, sp_R = {}; full: contraction {}, sp_R = {}",
            paren(&pair.sp_up.ideal),
            paren(&pair.contraction),
            paren(&pair.sp_down.ideal),
            paren(&full.contraction),
            paren(&full.sp_down.ideal)
        ),
    ))
}

fn negative_precondition() -> Result<(bool, String)> {
    let c = fixtures::veronese_b(5)?;
    let t = SectionT::dual(&c, 1);
    let r = verify_fsig_rule(&c, &t, &DivisorQ::zero(c.base().ambient()), 2)?;
    let expected = "T(n) ⊄ m, witness xy";
    let reason = r.violated.clone().unwrap_or_default();
    Ok((!r.preconditions_ok && reason == expected, format!("reason: {reason}")))
}

fn veronese_trace_claims() -> Result<(bool, String)> {
    let mut parts = Vec::new();
    let mut ok = true;
    for p in [5u32, 7] {
        for (d, c) in [(2, fixtures::veronese_2_2(p)?), (3, fixtures::veronese_2_3(p)?)] {
            let t = SectionT::dual(&c, 0);
            let one = t.apply_to(&c, &Poly::one(c.total().ambient()));
            let failure = section_precondition_failure(&c, &t);
            ok &= one == Poly::one(c.base().ambient()) && failure.is_none();
            parts.push(format!("(2,{d}) p = {p}: T(1) = {one}, {}", failure.unwrap_or_else(|| "T(m) ⊆ (a, b)".into())));
        }
    }
    Ok((ok, parts.join("; ")))
}

fn oracle_equivalence() -> Result<(bool, String)> {
    let mut count = 0;
    for (name, p) in fixtures::small_presentations()? {
        let a = splitting_number(&p, &CartierSpec::Full, 1)?;
        let o = free_rank_oracle(&p, 1)?;
        if a != o {
            return Ok((false, format!("{name}: pairing {a} vs oracle {o}")));
        }
        let f = fedder_fpure(&p);
        if f != splitting_exists(&p)? {
            return Ok((false, format!("{name}: F-purity verdicts differ")));
        }
        count += 1;
    }
    Ok((true, format!("{count} presentations agree at e = 1")))
}

fn fedder_verdicts() -> Result<(bool, String)> {
    let f3 = fedder_fpure(&fixtures::fermat_cubic(3)?);
    let f7 = fedder_fpure(&fixtures::fermat_cubic(7)?);
    let f2 = fedder_fpure(&fixtures::f2_hypersurface()?);
    Ok((!f3 && f7 && f2, format!("Fermat p = 3: {f3}, Fermat p = 7: {f7}, F_2 hypersurface: {f2}")))
}
