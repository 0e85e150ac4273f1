//! Independent checks of splitting numbers by direct linear algebra on
//! `Hom_R(F^e_* R, R)`, without Fedder's correspondence.
//!
//! A homogeneous `p^{-e}`-linear map of shift `k` sends `R_d` to
//! `R_{(d-k)/q}`. Its values on standard monomials up to a degree bound are
//! unknowns, constrained by `φ(x_i^q s) = x_i φ(s)`. The splitting number is
//! the sum over `k` of the rank of the evaluations `φ(s) ∈ R_0` for
//! `deg s = k`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matrix::FpMatrix;
use crate::poly::{Monomial, Poly};
use crate::quotient::{positive_grading, QuotientPresentation};

struct Graded<'a> {
    p: &'a QuotientPresentation,
    w: Vec<i64>,
    leads: Vec<Monomial>,
    cache: HashMap<i64, Vec<Monomial>>,
}

impl<'a> Graded<'a> {
    fn new(p: &'a QuotientPresentation) -> Result<Self> {
        let n = p.ambient().nvars();
        let w = positive_grading(n, p.relations().gens())
            .ok_or_else(|| Error::InvalidCartier("no positive grading found".into()))?;
        let leads = p.relations().leading_monomials();
        Ok(Graded { p, w, leads, cache: HashMap::new() })
    }

    fn standard(&mut self, d: i64) -> &[Monomial] {
        if !self.cache.contains_key(&d) {
            let mut out = Vec::new();
            let n = self.w.len();
            weighted_monomials(&self.w, d, &mut vec![0; n], 0, &mut out);
            out.retain(|m| !self.leads.iter().any(|l| l.divides(m)));
            self.cache.insert(d, out);
        }
        &self.cache[&d]
    }

    fn index(&mut self, d: i64, m: &Monomial) -> usize {
        self.standard(d).iter().position(|x| x == m).expect("standard monomial")
    }

    /// Top weighted degree of the reduced basis of `I`; relations among the
    /// generators `x^α` of `F_* R` reach this far past the box.
    fn relation_degree(&self) -> i64 {
        self.p.relations().basis().iter().flat_map(|g| g.terms().iter().map(|(m, _)| m.weighted_degree(&self.w))).max().unwrap_or(0)
    }

    fn nf(&self, f: &Poly) -> Poly {
        self.p.relations().normal_form(f)
    }
}

fn weighted_monomials(w: &[i64], d: i64, cur: &mut Vec<u32>, i: usize, out: &mut Vec<Monomial>) {
    if i == w.len() {
        if d == 0 {
            out.push(Monomial(cur.clone()));
        }
        return;
    }
    let mut k = 0;
    while k as i64 * w[i] <= d {
        cur[i] = k;
        weighted_monomials(w, d - k as i64 * w[i], cur, i + 1, out);
        k += 1;
    }
    cur[i] = 0;
}

/// `a_e(R)` for the full Cartier algebra, by the linear-algebra oracle.
pub fn free_rank_oracle(p: &QuotientPresentation, e: u32) -> Result<u64> {
    let mut g = Graded::new(p)?;
    let q = p.ambient().field().q(e) as i64;
    let wsum: i64 = g.w.iter().sum();
    let wmax = *g.w.iter().max().unwrap();
    let top = (q - 1) * wsum;
    let bound = top + q * wmax + g.relation_degree();
    let mut total = 0u64;
    for k in 0..=top {
        if g.standard(k).is_empty() {
            continue;
        }
        total += shift_rank(&mut g, q, k, bound)?;
    }
    Ok(total)
}

/// Whether some `φ: F_* R → R` has `φ(1) = 1`.
pub fn splitting_exists(p: &QuotientPresentation) -> Result<bool> {
    let mut g = Graded::new(p)?;
    let q = p.p() as i64;
    let wsum: i64 = g.w.iter().sum();
    let wmax = *g.w.iter().max().unwrap();
    let bound = (q - 1) * wsum + q * wmax + g.relation_degree();
    Ok(shift_rank(&mut g, q, 0, bound)? > 0)
}

/// Rank of `φ ↦ (φ(s))_{deg s = k}` over shift-`k` maps.
fn shift_rank(g: &mut Graded<'_>, q: i64, k: i64, bound: i64) -> Result<u64> {
    let ring = g.p.ambient().clone();
    let n = ring.nvars();
    // unknown (s, t): coefficient of t in φ(s)
    let mut offset: HashMap<i64, usize> = HashMap::new();
    let mut count = 0usize;
    let mut d = k;
    while d <= bound {
        let src = g.standard(d).len();
        let dst = g.standard((d - k) / q).len();
        offset.insert(d, count);
        count += src * dst;
        d += q;
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut d = k;
    while d <= bound {
        let src: Vec<Monomial> = g.standard(d).to_vec();
        let dd = (d - k) / q;
        let dst: Vec<Monomial> = g.standard(dd).to_vec();
        for (si, s) in src.iter().enumerate() {
            for i in 0..n {
                let d2 = d + q * g.w[i];
                if d2 > bound {
                    continue;
                }
                let lifted = g.nf(&Poly::monomial(&ring, s.mul(&Monomial::var(n, i, q as u32)), 1));
                let tdeg = dd + g.w[i];
                let targets: Vec<Monomial> = g.standard(tdeg).to_vec();
                let dst2: usize = g.standard((d2 - k) / q).len();
                debug_assert_eq!(dst2, targets.len());
                // one equation per target monomial
                let mut eqs = vec![vec![0u32; count]; targets.len()];
                for (m, c) in lifted.terms() {
                    let s2 = g.index(d2, m);
                    for (ti, row) in eqs.iter_mut().enumerate() {
                        let u = offset[&d2] + s2 * dst2 + ti;
                        row[u] = ring.field().add(row[u], *c);
                    }
                }
                for (ti, t) in dst.iter().enumerate() {
                    let xt = g.nf(&Poly::monomial(&ring, t.mul(&Monomial::var(n, i, 1)), 1));
                    let u = offset[&d] + si * dst.len() + ti;
                    for (m, c) in xt.terms() {
                        let tj = g.index(tdeg, m);
                        eqs[tj][u] = ring.field().sub(eqs[tj][u], *c);
                    }
                }
                rows.extend(eqs.into_iter().filter(|r| r.iter().any(|&x| x != 0)));
            }
        }
        d += q;
    }
    let kernel = if rows.is_empty() {
        (0..count).map(|i| (0..count).map(|j| u32::from(i == j)).collect()).collect()
    } else {
        let mut m = FpMatrix::zeros(ring.field(), 0, count);
        for r in &rows {
            m.push_row(r);
        }
        m.kernel_basis()
    };
    // evaluations at degree k land in R_0, one coordinate per source monomial
    let width = g.standard(k).len();
    let mut proj = FpMatrix::zeros(ring.field(), 0, width);
    for v in &kernel {
        let row: Vec<u32> = (0..width).map(|si| v[offset[&k] + si]).collect();
        proj.push_row(&row);
    }
    Ok(proj.rank() as u64)
}
