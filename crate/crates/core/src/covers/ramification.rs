//! Free generators of `Hom_R(S, R)`, ramification divisors and transposes.

use rayon::prelude::*;
use serde::Serialize;

use super::linalg::{adjugate, determinant};
use super::{Coords, CoverSpec, SectionT};
use crate::divisor::DivisorQ;
use crate::error::{Error, Result};
use crate::frobenius::{effective_at, phi_q, PMinusLinearMap};
use crate::poly::{Monomial, Poly};
use crate::rational::Q;

/// Largest number of constant combinations tried in the generator search.
const GENERATOR_SEARCH_LIMIT: u64 = 20_000;

#[derive(Clone, Debug)]
pub struct RamificationData {
    /// The free generator `G` with `T = ρ·G`.
    pub generator: SectionT,
    pub generator_label: String,
    pub rho: Poly,
    pub rho_coords: Coords,
    /// `Ram_T = div ρ` on the total ambient ring.
    pub ram: DivisorQ,
    pub norm_rho: Poly,
    /// `Branch_T = div Norm(ρ)`, normalized.
    pub branch: DivisorQ,
    /// Leading coefficient stripped from `Norm(ρ)`.
    pub unit: u32,
    gram_inv: Vec<Vec<Poly>>,
    rho_adj: Vec<Vec<Poly>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RamificationReport {
    pub generator: String,
    pub generator_values: Vec<String>,
    pub rho: String,
    pub ram: String,
    pub norm_rho: String,
    pub branch: String,
    pub unit: u32,
}

impl RamificationData {
    pub fn report(&self) -> RamificationReport {
        RamificationReport {
            generator: self.generator_label.clone(),
            generator_values: self.generator.values.iter().map(|v| v.to_string()).collect(),
            rho: self.rho.to_string(),
            ram: self.ram.normalized().to_string(),
            norm_rho: self.norm_rho.to_string(),
            branch: self.branch.to_string(),
            unit: self.unit,
        }
    }
}

fn gram(cover: &CoverSpec, g: &SectionT) -> Vec<Vec<Poly>> {
    let n = cover.rank();
    (0..n)
        .map(|i| (0..n).map(|j| cover.reduce_base(&g.apply(cover.product_coords(i, j)))).collect())
        .collect()
}

/// Gram inverse when `det Gram` is a nonzero constant.
fn gram_inverse(cover: &CoverSpec, g: &SectionT) -> Option<Vec<Vec<Poly>>> {
    let m = gram(cover, g);
    let det = cover.reduce_base(&determinant(&m));
    if !det.is_unit() {
        return None;
    }
    let f = cover.base().ambient().field();
    let inv = f.inv(det.constant_term());
    Some(adjugate(&m).iter().map(|row| row.iter().map(|x| cover.reduce_base(&x.scale(inv))).collect()).collect())
}

fn candidates(cover: &CoverSpec) -> Vec<(String, Vec<u32>)> {
    let n = cover.rank();
    let p = cover.base().p() as u64;
    let mut out: Vec<(String, Vec<u32>)> = (0..n)
        .map(|k| {
            let mut v = vec![0; n];
            v[k] = 1;
            (format!("({})^∨", cover.basis()[k]), v)
        })
        .collect();
    let total = p.saturating_pow(n as u32);
    if total > GENERATOR_SEARCH_LIMIT {
        return out;
    }
    for idx in 1..total {
        let mut v = vec![0u32; n];
        let mut r = idx;
        for x in v.iter_mut() {
            *x = (r % p) as u32;
            r /= p;
        }
        // one representative per line: first nonzero entry equal to 1
        if v.iter().find(|&&x| x != 0) != Some(&1) || v.iter().filter(|&&x| x != 0).count() < 2 {
            continue;
        }
        let label = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| if c == 1 { format!("({})^∨", cover.basis()[k]) } else { format!("{c}*({})^∨", cover.basis()[k]) })
            .collect::<Vec<_>>()
            .join(" + ");
        out.push((label, v));
    }
    out
}

/// A free generator of `Hom_R(S, R)` among constant combinations of the
/// dual basis.
pub fn find_generator(cover: &CoverSpec) -> Result<(String, SectionT, Vec<Vec<Poly>>)> {
    let rb = cover.base().ambient();
    for (label, v) in candidates(cover) {
        let g = SectionT::new(v.iter().map(|&c| Poly::constant(rb, c as i64)).collect());
        if let Some(inv) = gram_inverse(cover, &g) {
            return Ok((label, g, inv));
        }
    }
    Err(Error::NoFreeGenerator)
}

fn mat_vec(cover: &CoverSpec, m: &[Vec<Poly>], v: &[Poly]) -> Coords {
    m.iter()
        .map(|row| {
            let s = row.iter().zip(v).fold(Poly::zero(cover.base().ambient()), |acc, (a, b)| &acc + &(a * b));
            cover.reduce_base(&s)
        })
        .collect()
}

/// Writes `T = ρ·G` and derives `Ram_T` and `Branch_T`.
pub fn ramification(cover: &CoverSpec, t: &SectionT) -> Result<RamificationData> {
    if t.is_zero() {
        return Err(Error::InvalidCartier("the section T is zero".into()));
    }
    let (label, g, gram_inv) = find_generator(cover)?;
    let rho_coords = mat_vec(cover, &gram_inv, &t.values);
    // T(b_j) = G(ρ b_j) must hold exactly
    for (j, tv) in t.values.iter().enumerate() {
        let lhs = cover.reduce_base(&g.apply(&cover.mul_coords(&rho_coords, &cover.unit_coords(j))));
        if lhs != cover.reduce_base(tv) {
            return Err(Error::NotAMultiple);
        }
    }
    let rho = cover.total().relations().normal_form(&cover.lift(&rho_coords));
    let m = cover.mult_matrix_coords(&rho_coords);
    let norm = cover.reduce_base(&determinant(&m));
    let unit = norm.leading_coefficient();
    let rho_adj = adjugate(&m);
    Ok(RamificationData {
        generator: g,
        generator_label: label,
        ram: DivisorQ::single(rho.clone(), Q::from_integer(1)),
        branch: DivisorQ::single(norm.clone(), Q::from_integer(1)).normalized(),
        rho,
        rho_coords,
        norm_rho: norm,
        unit,
        gram_inv,
        rho_adj,
    })
}

/// `T(F^e_*(x^α b_j^q))` for every box monomial `x^α` of the total ring.
pub struct TransposeTable {
    pub e: u32,
    pub q: u64,
    alphas: Vec<Monomial>,
    values: Vec<Vec<Poly>>,
}

impl TransposeTable {
    pub fn new(cover: &CoverSpec, t: &SectionT, e: u32) -> Self {
        let q = cover.base().ambient().field().q(e);
        let n = cover.total().ambient().nvars();
        let total = (q as usize).pow(n as u32);
        let mut alphas = Vec::with_capacity(total);
        let mut coords: Vec<Coords> = Vec::with_capacity(total);
        let mut cur = vec![0u32; n];
        for idx in 0..total {
            if idx == 0 {
                coords.push(cover.one.clone());
            } else {
                // first nonzero exponent; its predecessor sits at idx - q^i
                let i = cur.iter().position(|&x| x > 0).unwrap();
                let prev = idx - (q as usize).pow(i as u32);
                let c = cover.mul_coords(&coords[prev], cover.var_coords(i));
                coords.push(c);
            }
            alphas.push(Monomial(cur.clone()));
            for c in cur.iter_mut() {
                *c += 1;
                if (*c as u64) < q {
                    break;
                }
                *c = 0;
            }
        }
        let bq: Vec<Coords> = (0..cover.rank()).map(|j| cover.pow_coords(&cover.unit_coords(j), q)).collect();
        let values: Vec<Vec<Poly>> = coords
            .par_iter()
            .map(|c| bq.iter().map(|b| cover.reduce_base(&t.apply(&cover.mul_coords(c, b)))).collect())
            .collect();
        TransposeTable { e, q, alphas, values }
    }
}

/// The transpose `φ^⊤` of `φ = Φ^e(a·-)` with respect to `T`, or `None` when
/// `φ` is not transposable. The transpose is returned as its Fedder element
/// on the total ambient ring.
pub fn transpose(cover: &CoverSpec, ram: &RamificationData, table: &TransposeTable, a: &Poly) -> Option<PMinusLinearMap> {
    let q = table.q;
    let n = cover.total().ambient().nvars();
    let top = Monomial(vec![(q - 1) as u32; n]);
    let rt = cover.total().ambient();
    let parts: Option<Vec<Poly>> = table
        .values
        .par_iter()
        .zip(table.alphas.par_iter())
        .map(|(vals, alpha)| {
            let y: Coords = vals.iter().map(|v| cover.reduce_base(&phi_q(&(a * v), q))).collect();
            let z = mat_vec(cover, &ram.gram_inv, &y);
            let num = mat_vec(cover, &ram.rho_adj, &z);
            let mut w = Vec::with_capacity(num.len());
            for c in &num {
                w.push(c.exact_div(&ram.norm_rho)?);
            }
            let lifted = cover.lift(&w);
            Some(lifted.frobenius_power(q).mul_monomial(&alpha.quotient_of(&top), 1))
        })
        .collect();
    let parts = parts?;
    let u = parts.iter().fold(Poly::zero(rt), |acc, p| &acc + p);
    Some(PMinusLinearMap { e: table.e, u })
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisorCheck {
    pub e: u32,
    pub transposable: bool,
    /// `(1/(q-1)) div(a∘f) - div ρ`.
    pub predicted: String,
}

/// `φ = Φ^e(a·-)` is transposable iff `ρ^{q-1}` divides `a∘f` in `S`.
pub fn divisor_check(cover: &CoverSpec, ram: &RamificationData, a: &Poly, e: u32) -> DivisorCheck {
    let q = cover.base().ambient().field().q(e);
    let af = cover.image_of(a);
    let rels = cover.total().relations();
    let transposable = rels.add_gens(&[ram.rho.pow(q - 1)]).contains(&af);
    let predicted = DivisorQ::single(af, Q::new(1, q as i64 - 1)).sub(&ram.ram).normalized();
    DivisorCheck { e, transposable, predicted: predicted.to_string() }
}

/// `Δ* = f*Δ - Ram_T`, normalized.
pub fn pullback_pair(cover: &CoverSpec, ram: &RamificationData, delta: &DivisorQ) -> DivisorQ {
    delta.pullback(cover.total().ambient(), cover.images()).sub(&ram.ram).normalized()
}

/// Effectiveness of `⌈(q-1)Δ*⌉` for each `e` in the window.
pub fn pullback_effective(cover: &CoverSpec, delta_star: &DivisorQ, window: u32) -> Vec<(u32, bool)> {
    let f = cover.total().ambient().field();
    (1..=window.max(1)).map(|e| (e, effective_at(cover.total(), delta_star, f.q(e)))).collect()
}

/// Largest `k ≤ N` with `Norm(s) ∈ s^k S`.
pub fn f_torsion_exponent(cover: &CoverSpec, s: &Poly) -> u32 {
    let nf = cover.image_of(&cover.norm_of(s));
    let rels = cover.total().relations();
    (1..=cover.rank() as u32).rev().find(|&k| rels.add_gens(&[s.pow(k as u64)]).contains(&nf)).unwrap_or(0)
}
