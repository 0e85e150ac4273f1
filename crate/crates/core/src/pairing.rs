//! The Frobenius pairing on `S/m^[q]`.
//!
//! For `u` in a Fedder ideal `U` and `s ∈ S`, the residue of `Φ^e(u s)` is the
//! coefficient of `x^{(q-1)𝟙}` in `u s`. Its rank therefore equals the
//! dimension of the span of the box truncations of `x^β g_j` (`g_j` generating
//! `U`, `β ∈ [0,q)^n`), and its `s`-side kernel is the reflection of that
//! span's annihilator. Both are computed block by block over a grading group
//! under which the generators are homogeneous.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use crate::field::PrimeField;
use crate::ideal::Ideal;
use crate::matrix::FpMatrix;
use crate::poly::{Monomial, Poly, Ring};
use crate::quotient::grading_group;

type Key = Vec<i64>;

struct Block {
    /// Box monomials of this multidegree.
    cols: Vec<Monomial>,
    rows: Vec<Vec<u32>>,
}

pub(crate) struct BoxSpan {
    ring: Ring,
    q: u64,
    #[cfg_attr(not(test), allow(dead_code))]
    grading: Vec<Vec<i64>>,
    blocks: BTreeMap<Key, Block>,
}

fn key(grading: &[Vec<i64>], m: &Monomial) -> Key {
    grading.iter().map(|w| m.weighted_degree(w)).collect()
}

fn box_monomials(n: usize, q: u64) -> Vec<Monomial> {
    let total = (q as usize).pow(n as u32);
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![0u32; n];
    for _ in 0..total {
        out.push(Monomial(cur.clone()));
        for c in cur.iter_mut() {
            *c += 1;
            if (*c as u64) < q {
                break;
            }
            *c = 0;
        }
    }
    out
}

fn flat(m: &Monomial, q: u64) -> usize {
    m.0.iter().rev().fold(0usize, |acc, &e| acc * q as usize + e as usize)
}

impl BoxSpan {
    /// Span of the truncations of `x^β g` for the given generators.
    pub(crate) fn new(ring: &Ring, gens: &[Poly], q: u64) -> Self {
        let n = ring.nvars();
        let gens: Vec<Poly> =
            gens.iter().map(|g| g.truncate_box(q)).filter(|g| !g.is_zero()).collect();
        let grading = grading_group(n, &gens);
        let all = box_monomials(n, q);
        let mut blocks: BTreeMap<Key, Block> = BTreeMap::new();
        let mut location = vec![(0usize, 0usize); all.len()];
        let mut keys: Vec<Key> = Vec::new();
        for m in &all {
            let k = key(&grading, m);
            let b = blocks.entry(k).or_insert_with(|| Block { cols: Vec::new(), rows: Vec::new() });
            b.cols.push(m.clone());
        }
        for (bi, (k, b)) in blocks.iter().enumerate() {
            keys.push(k.clone());
            for (ci, m) in b.cols.iter().enumerate() {
                location[flat(m, q)] = (bi, ci);
            }
        }
        let mut rows_by_block: Vec<Vec<Vec<u32>>> = vec![Vec::new(); keys.len()];
        for g in &gens {
            for beta in &all {
                let row_terms: Vec<(usize, u32)> = g
                    .terms()
                    .iter()
                    .filter_map(|(m, c)| {
                        let prod = m.mul(beta);
                        prod.in_box(q).then(|| (flat(&prod, q), *c))
                    })
                    .collect();
                if row_terms.is_empty() {
                    continue;
                }
                let bi = location[row_terms[0].0].0;
                let width = blocks[&keys[bi]].cols.len();
                let mut row = vec![0u32; width];
                for (f, c) in row_terms {
                    debug_assert_eq!(location[f].0, bi, "generator not homogeneous");
                    row[location[f].1] = c;
                }
                rows_by_block[bi].push(row);
            }
        }
        for (bi, rows) in rows_by_block.into_iter().enumerate() {
            blocks.get_mut(&keys[bi]).unwrap().rows = rows;
        }
        BoxSpan { ring: ring.clone(), q, grading, blocks }
    }

    fn matrix(&self, b: &Block) -> FpMatrix {
        let field: &PrimeField = self.ring.field();
        let mut m = FpMatrix::zeros(field, 0, b.cols.len());
        for r in &b.rows {
            m.push_row(r);
        }
        m
    }

    /// Dimension of the span, i.e. the splitting number.
    pub(crate) fn rank(&self) -> u64 {
        self.blocks
            .par_iter()
            .map(|(_, b)| if b.rows.is_empty() { 0 } else { self.matrix(b).rank() as u64 })
            .sum()
    }

    /// `s`-side kernel plus `m^[q]`, as a reduced Gröbner basis.
    pub(crate) fn kernel_ideal(&self) -> Ideal {
        let ring = &self.ring;
        let n = ring.nvars();
        let q = self.q;
        let top = Monomial(vec![(q - 1) as u32; n]);
        let reflect = |m: &Monomial| m.quotient_of(&top);
        // Each block's kernel, written in reflected coordinates, in RREF with
        // columns sorted descending in the ring order.
        let rref_rows: Vec<(Monomial, Poly)> = self
            .blocks
            .par_iter()
            .flat_map_iter(|(_, b)| {
                let kernel: Vec<Vec<u32>> = if b.rows.is_empty() {
                    (0..b.cols.len())
                        .map(|i| {
                            let mut v = vec![0; b.cols.len()];
                            v[i] = 1;
                            v
                        })
                        .collect()
                } else {
                    self.matrix(b).kernel_basis()
                };
                let mut smons: Vec<(usize, Monomial)> =
                    b.cols.iter().map(reflect).enumerate().collect();
                smons.sort_by(|a, c| ring.cmp(&c.1, &a.1));
                let mut km = FpMatrix::zeros(ring.field(), 0, smons.len());
                for v in &kernel {
                    let row: Vec<u32> = smons.iter().map(|(i, _)| v[*i]).collect();
                    km.push_row(&row);
                }
                let rr = km.rref();
                let out: Vec<(Monomial, Poly)> = rr
                    .pivots
                    .iter()
                    .enumerate()
                    .map(|(r, &pc)| {
                        let terms: Vec<(Monomial, u32)> = (0..smons.len())
                            .filter(|&c| rr.matrix.get(r, c) != 0)
                            .map(|c| (smons[c].1.clone(), rr.matrix.get(r, c)))
                            .collect();
                        (smons[pc].1.clone(), Poly::from_sorted(ring, terms))
                    })
                    .collect();
                out.into_iter()
            })
            .collect();
        let pivots: HashSet<Monomial> = rref_rows.iter().map(|(m, _)| m.clone()).collect();
        let mut basis: Vec<Poly> = rref_rows
            .into_iter()
            .filter(|(m, _)| {
                m.support().all(|i| {
                    let mut d = m.clone();
                    d.0[i] -= 1;
                    !pivots.contains(&d)
                })
            })
            .map(|(_, p)| p)
            .collect();
        for i in 0..n {
            let below = Monomial::var(n, i, (q - 1) as u32);
            if !pivots.contains(&below) {
                basis.push(Poly::monomial(ring, Monomial::var(n, i, q as u32), 1));
            }
        }
        basis.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        Ideal::from_reduced_basis(ring, basis)
    }

    #[cfg(test)]
    pub(crate) fn block_count(&self) -> usize {
        self.blocks.len()
    }

    #[cfg(test)]
    pub(crate) fn grading(&self) -> &[Vec<i64>] {
        &self.grading
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::PolyRing;

    #[test]
    fn regular_full_span_is_everything() {
        let r = PolyRing::with_vars(3, &["x", "y"]).unwrap();
        let s = BoxSpan::new(&r, &[Poly::one(&r)], 9);
        assert_eq!(s.rank(), 81);
        assert_eq!(s.kernel_ideal(), Ideal::frobenius_maximal(&r, 9));
        assert_eq!(s.block_count(), 81);
    }

    #[test]
    fn principal_span_on_the_line() {
        let r = PolyRing::with_vars(5, &["x"]).unwrap();
        let s = BoxSpan::new(&r, &[parse_poly("x^2", &r).unwrap()], 5);
        assert_eq!(s.rank(), 3);
        // killed s: those with x^2 * s having no x^4 term, i.e. s in (x^3)
        assert_eq!(s.kernel_ideal(), Ideal::new(&r, vec![parse_poly("x^3", &r).unwrap()]));
    }

    #[test]
    fn quadric_cone_first_splitting_number() {
        let r = PolyRing::with_vars(5, &["s", "t", "u"]).unwrap();
        let f = parse_poly("s*u-t^2", &r).unwrap();
        let s = BoxSpan::new(&r, &[f.pow(4)], 5);
        assert_eq!(s.grading().len(), 2);
        assert_eq!(s.rank(), 13);
    }
}
