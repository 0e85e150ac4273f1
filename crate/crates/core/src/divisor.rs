//! Q-divisors `Σ t_i div(g_i)` with unfactored entries.
//!
//! Normalization never factors: it strips units, splits off monomial content
//! variable by variable, extracts perfect-power roots and merges equal entries.
//! Two divisors with equal normal forms are equal; the converse can fail for
//! entries sharing a nontrivial common factor.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::poly::{Monomial, Poly, Ring};
use crate::rational::{ceil_mul, format_q, Q};

#[derive(Clone, Debug)]
pub struct DivisorQ {
    ring: Ring,
    entries: Vec<(Poly, Q)>,
}

impl PartialEq for DivisorQ {
    fn eq(&self, other: &Self) -> bool {
        self.normalized().entries == other.normalized().entries
    }
}

impl Serialize for DivisorQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            poly: String,
            coeff: String,
        }
        s.collect_seq(
            self.entries.iter().map(|(g, t)| Entry { poly: g.to_string(), coeff: format_q(t) }),
        )
    }
}

impl DivisorQ {
    pub fn zero(ring: &Ring) -> Self {
        DivisorQ { ring: ring.clone(), entries: Vec::new() }
    }

    /// Builds a divisor; zero coefficients and zero polynomials are dropped.
    pub fn new(ring: &Ring, entries: Vec<(Poly, Q)>) -> Self {
        let entries = entries
            .into_iter()
            .filter(|(g, t)| *t != Q::from_integer(0) && !g.is_zero())
            .collect();
        DivisorQ { ring: ring.clone(), entries }
    }

    pub fn single(g: Poly, t: Q) -> Self {
        let ring = g.ring().clone();
        Self::new(&ring, vec![(g, t)])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn entries(&self) -> &[(Poly, Q)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.normalized().entries.is_empty()
    }

    pub fn add(&self, other: &DivisorQ) -> DivisorQ {
        let mut e = self.entries.clone();
        e.extend(other.entries.iter().cloned());
        DivisorQ::new(&self.ring, e)
    }

    pub fn scale(&self, c: Q) -> DivisorQ {
        DivisorQ::new(&self.ring, self.entries.iter().map(|(g, t)| (g.clone(), t * c)).collect())
    }

    pub fn neg(&self) -> DivisorQ {
        self.scale(Q::from_integer(-1))
    }

    pub fn sub(&self, other: &DivisorQ) -> DivisorQ {
        self.add(&other.neg())
    }

    /// Pulls back along `x_i ↦ images[i]`.
    pub fn pullback(&self, target: &Ring, images: &[Poly]) -> DivisorQ {
        DivisorQ::new(
            target,
            self.entries.iter().map(|(g, t)| (g.substitute(target, images), *t)).collect(),
        )
    }

    /// Every normalized coefficient nonnegative. Sufficient for effectiveness;
    /// the membership checks elsewhere decide the general case.
    pub fn has_nonnegative_entries(&self) -> bool {
        self.normalized().entries.iter().all(|(_, t)| *t > Q::from_integer(0))
    }

    /// Canonical form: monic, content-split, root-extracted, merged, sorted.
    pub fn normalized(&self) -> DivisorQ {
        let n = self.ring.nvars();
        let mut parts: Vec<(Poly, Q)> = Vec::new();
        for (g, t) in &self.entries {
            let g = g.monic();
            let content = g.monomial_content();
            for (i, &k) in content.0.iter().enumerate() {
                if k > 0 {
                    let xi = Poly::monomial(&self.ring, Monomial::var(n, i, 1), 1);
                    parts.push((xi, t * Q::from_integer(k as i64)));
                }
            }
            let rest = g.div_monomial(&content);
            if rest.is_unit() {
                continue;
            }
            let (root, k) = full_root(&rest);
            parts.push((root.monic(), t * Q::from_integer(k as i64)));
        }
        let mut merged: Vec<(Poly, Q)> = Vec::new();
        for (g, t) in parts {
            match merged.iter_mut().find(|(h, _)| *h == g) {
                Some(e) => e.1 += t,
                None => merged.push((g, t)),
            }
        }
        merged.retain(|(_, t)| *t != Q::from_integer(0));
        merged.sort_by_key(|(g, _)| g.to_string());
        DivisorQ { ring: self.ring.clone(), entries: merged }
    }

    /// `∏ g_i^{⌈t_i (q-1)⌉}` over the positive and negative parts separately.
    pub fn ceiling_parts(&self, q: u64) -> (Poly, Poly) {
        let mut pos = Poly::one(&self.ring);
        let mut neg = Poly::one(&self.ring);
        for (g, t) in &self.normalized().entries {
            let k = ceil_mul(t, q as i64 - 1);
            if k > 0 {
                pos = &pos * &g.pow(k as u64);
            } else if k < 0 {
                neg = &neg * &g.pow((-k) as u64);
            }
        }
        (pos, neg)
    }

    /// `∏ g_i^{⌈t_i⌉}` for the positive entries.
    pub fn round_up_element(&self) -> Poly {
        let mut c = Poly::one(&self.ring);
        for (g, t) in &self.normalized().entries {
            let k = ceil_mul(t, 1);
            if k > 0 {
                c = &c * &g.pow(k as u64);
            }
        }
        c
    }
}

/// Largest `k` with `g = h^k`, together with `h`.
fn full_root(g: &Poly) -> (Poly, u32) {
    let Some(d) = g.degree() else { return (g.clone(), 1) };
    let mut cur = g.clone();
    let mut total = 1u32;
    'outer: loop {
        let d_cur = cur.degree().unwrap_or(0);
        for k in (2..=d_cur as u32).rev() {
            if d_cur % k as u64 != 0 {
                continue;
            }
            if let Some(h) = cur.kth_root(k) {
                if h.pow(k as u64) == cur {
                    cur = h;
                    total *= k;
                    continue 'outer;
                }
            }
        }
        break;
    }
    debug_assert!(cur.degree().unwrap_or(0) * total as u64 == d);
    (cur, total)
}

impl fmt::Display for DivisorQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let zero = Q::from_integer(0);
        for (i, (g, t)) in self.entries.iter().enumerate() {
            let a = if *t < zero { -*t } else { *t };
            match (i, *t < zero) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if a == Q::from_integer(1) {
                write!(f, "div({g})")?;
            } else {
                write!(f, "{} div({g})", format_q(&a))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::PolyRing;

    #[test]
    fn normalization_splits_roots_and_content() {
        let r = PolyRing::with_vars(2, &["y", "z", "u", "v"]).unwrap();
        let eps = parse_poly("y^3+u*v", &r).unwrap();
        let d1 = DivisorQ::single(eps.pow(2), Q::new(1, 2));
        let d2 = DivisorQ::single(eps.clone(), Q::from_integer(1));
        assert_eq!(d1, d2);
        let mono = DivisorQ::single(parse_poly("y^2*z^2", &r).unwrap(), Q::new(1, 2));
        let split = DivisorQ::new(
            &r,
            vec![(parse_poly("y", &r).unwrap(), Q::from_integer(1)), (parse_poly("z", &r).unwrap(), Q::from_integer(1))],
        );
        assert_eq!(mono, split);
    }

    #[test]
    fn units_are_dropped_and_merging_cancels() {
        let r = PolyRing::with_vars(5, &["x", "y"]).unwrap();
        let d = DivisorQ::single(parse_poly("-4*x", &r).unwrap(), Q::from_integer(1));
        assert_eq!(d.normalized().to_string(), "div(x)");
        let z = DivisorQ::single(parse_poly("x*y", &r).unwrap(), Q::from_integer(1))
            .sub(&DivisorQ::single(parse_poly("x", &r).unwrap(), Q::from_integer(1)))
            .sub(&DivisorQ::single(parse_poly("3*y", &r).unwrap(), Q::from_integer(1)));
        assert!(z.is_zero());
    }

    #[test]
    fn ceilings_of_parts() {
        let r = PolyRing::with_vars(5, &["x"]).unwrap();
        let d = DivisorQ::single(parse_poly("x", &r).unwrap(), Q::new(1, 2));
        let (pos, neg) = d.ceiling_parts(5);
        assert_eq!(pos.to_string(), "x^2");
        assert!(neg.is_unit());
        let (_, neg) = d.neg().ceiling_parts(5);
        assert_eq!(neg.to_string(), "x^2");
    }
}
