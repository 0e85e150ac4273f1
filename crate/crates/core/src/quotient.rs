//! Graded quotients `R = S/I` with `I` inside the homogeneous maximal ideal.

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::parse::parse_poly;
use crate::poly::{Poly, PolyRing, Ring};

#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    ambient: Ring,
    relations: Ideal,
    dim: usize,
}

impl QuotientPresentation {
    pub fn new(ambient: &Ring, relations: Vec<Poly>) -> Result<Self> {
        for r in &relations {
            if r.constant_term() != 0 {
                return Err(Error::RelationNotInMaximalIdeal(r.to_string()));
            }
        }
        let relations = Ideal::new(ambient, relations);
        let dim = relations.krull_dim().expect("proper ideal inside m");
        Ok(QuotientPresentation { ambient: ambient.clone(), relations, dim })
    }

    /// The polynomial ring itself.
    pub fn regular(ambient: &Ring) -> Self {
        QuotientPresentation {
            ambient: ambient.clone(),
            relations: Ideal::zero(ambient),
            dim: ambient.nvars(),
        }
    }

    pub fn parse(p: u32, vars: &[&str], relations: &[&str]) -> Result<Self> {
        let ring = PolyRing::with_vars(p, vars)?;
        let rels = relations.iter().map(|r| parse_poly(r, &ring)).collect::<Result<Vec<_>>>()?;
        Self::new(&ring, rels)
    }

    pub fn ambient(&self) -> &Ring {
        &self.ambient
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    pub fn p(&self) -> u32 {
        self.ambient.p()
    }

    /// Krull dimension, which is also `δ` since the residue field is `F_p`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_regular(&self) -> bool {
        self.relations.basis().is_empty()
    }

    /// `S/(I + extra)`; errors when the result is the zero ring.
    pub fn quotient_by(&self, extra: &[Poly]) -> Result<Self> {
        let mut rels = self.relations.gens().to_vec();
        rels.extend(extra.iter().cloned());
        Self::new(&self.ambient, rels)
    }

    pub fn parse_poly(&self, text: &str) -> Result<Poly> {
        parse_poly(text, &self.ambient)
    }
}

/// A positive weight vector making every polynomial homogeneous, searched in
/// `{1..4}^n` (smallest total weight first).
pub fn positive_grading(n: usize, polys: &[Poly]) -> Option<Vec<i64>> {
    let ones = vec![1; n];
    if polys.iter().all(|f| f.is_homogeneous(&ones)) {
        return Some(ones);
    }
    if n > 8 {
        return None;
    }
    let mut best: Option<Vec<i64>> = None;
    for_each_vector(n, 1, 4, &mut |w| {
        let better = best.as_ref().is_none_or(|b| w.iter().sum::<i64>() < b.iter().sum::<i64>());
        if better && polys.iter().all(|f| f.is_homogeneous(w)) {
            best = Some(w.to_vec());
        }
    });
    best
}

/// A linearly independent family of gradings under which every polynomial
/// is homogeneous.
pub fn grading_group(n: usize, polys: &[Poly]) -> Vec<Vec<i64>> {
    let hi = if n <= 6 { 3 } else if n <= 9 { 2 } else { 1 };
    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut echelon: Vec<Vec<i64>> = Vec::new();
    for_each_vector(n, 0, hi, &mut |w| {
        if w.iter().all(|&x| x == 0) || !polys.iter().all(|f| f.is_homogeneous(w)) {
            return;
        }
        if let Some(reduced) = reduce_against(&echelon, w) {
            echelon.push(reduced);
            basis.push(w.to_vec());
        }
    });
    basis
}

fn reduce_against(echelon: &[Vec<i64>], w: &[i64]) -> Option<Vec<i64>> {
    let mut v = w.to_vec();
    for row in echelon {
        let Some(piv) = row.iter().position(|&x| x != 0) else { continue };
        if v[piv] != 0 {
            let a = row[piv];
            let b = v[piv];
            for k in 0..v.len() {
                v[k] = v[k] * a - row[k] * b;
            }
            let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
            if g > 1 {
                v.iter_mut().for_each(|x| *x /= g);
            }
        }
    }
    if v.iter().all(|&x| x == 0) {
        None
    } else {
        Some(v)
    }
}

fn for_each_vector(n: usize, lo: i64, hi: i64, f: &mut dyn FnMut(&[i64])) {
    let mut w = vec![lo; n];
    loop {
        f(&w);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            w[i] += 1;
            if w[i] <= hi {
                break;
            }
            w[i] = lo;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_relation_with_constant_term() {
        assert!(matches!(
            QuotientPresentation::parse(5, &["x"], &["x+1"]),
            Err(Error::RelationNotInMaximalIdeal(_))
        ));
    }

    #[test]
    fn dimensions() {
        let v = QuotientPresentation::parse(5, &["s", "t", "u"], &["s*u-t^2"]).unwrap();
        assert_eq!(v.dim(), 2);
        assert!(!v.is_regular());
        assert!(QuotientPresentation::parse(5, &["x", "y"], &[]).unwrap().is_regular());
    }

    #[test]
    fn gradings_of_the_quadric_cone() {
        let v = QuotientPresentation::parse(5, &["s", "t", "u"], &["s*u-t^2"]).unwrap();
        let g = grading_group(3, v.relations().gens());
        assert_eq!(g.len(), 2);
        assert_eq!(positive_grading(3, v.relations().gens()), Some(vec![1, 1, 1]));
        let w = QuotientPresentation::parse(2, &["x", "y"], &["x^2+y^3"]).unwrap();
        assert_eq!(positive_grading(2, w.relations().gens()), Some(vec![3, 2]));
    }
}
