//! Determinants and Cramer's rule over polynomial rings, for the small
//! matrices arising from a cover basis.

use std::fmt;

use crate::poly::{Poly, Ring};

/// Laplace expansion along the first row.
pub fn determinant(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix expected");
    if n == 1 {
        return m[0][0].clone();
    }
    let ring = m[0][0].ring().clone();
    let mut acc = Poly::zero(&ring);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor = minor(m, 0, j);
        let term = &m[0][j] * &determinant(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn minor<T: Clone>(m: &[Vec<T>], r: usize, c: usize) -> Vec<Vec<T>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
        .collect()
}

/// Adjugate, so that `adj(M)·M = det(M)·1`.
pub fn adjugate(m: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let n = m.len();
    let ring = m[0][0].ring().clone();
    if n == 1 {
        return vec![vec![Poly::one(&ring)]];
    }
    let mut adj = vec![vec![Poly::zero(&ring); n]; n];
    for i in 0..n {
        for j in 0..n {
            let d = determinant(&minor(m, i, j));
            adj[j][i] = if (i + j) % 2 == 0 { d } else { -&d };
        }
    }
    adj
}

/// Solves `Σ c_i cols[i] = target` over the base ring when the solution has
/// polynomial entries.
pub(crate) fn cramer(cols: &[Vec<Poly>], target: &[Poly], ring: &Ring) -> Option<Vec<Poly>> {
    let d = cols.len();
    let n = target.len();
    for rows in subsets(n, d) {
        let sub: Vec<Vec<Poly>> = rows.iter().map(|&r| (0..d).map(|c| cols[c][r].clone()).collect()).collect();
        let det = determinant(&sub);
        if det.is_zero() {
            continue;
        }
        let mut sol = Vec::with_capacity(d);
        for c in 0..d {
            let mut replaced = sub.clone();
            for (k, &r) in rows.iter().enumerate() {
                replaced[k][c] = target[r].clone();
            }
            sol.push(determinant(&replaced).exact_div(&det)?);
        }
        let consistent = (0..n).all(|r| {
            let lhs = (0..d).fold(Poly::zero(ring), |acc, c| &acc + &(&sol[c] * &cols[c][r]));
            lhs == target[r]
        });
        return consistent.then_some(sol);
    }
    None
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// A univariate polynomial `Σ c_i X^i` over the base ring.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly {
    coeffs: Vec<Poly>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn zero(ring: &Ring) -> Self {
        UPoly { coeffs: vec![Poly::zero(ring)] }
    }

    fn add(&self, other: &UPoly) -> UPoly {
        let ring = self.coeffs[0].ring();
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Poly::zero(ring);
        UPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    fn neg(&self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    fn mul(&self, other: &UPoly) -> UPoly {
        let ring = self.coeffs[0].ring();
        let mut out = vec![Poly::zero(ring); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UPoly::new(out)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let body = match i {
                0 => format!("({c})"),
                1 if c.is_unit() && c.constant_term() == 1 => "X".to_string(),
                1 => format!("({c})*X"),
                _ if c.is_unit() && c.constant_term() == 1 => format!("X^{i}"),
                _ => format!("({c})*X^{i}"),
            };
            write!(f, "{body}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub(crate) fn udeterminant(m: &[Vec<UPoly>], ring: &Ring) -> UPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = UPoly::zero(ring);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let term = m[0][j].mul(&udeterminant(&minor(m, 0, j), ring));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.add(&term.neg()) };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::PolyRing;

    #[test]
    fn adjugate_inverts_up_to_determinant() {
        let r = PolyRing::with_vars(5, &["a", "b"]).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let m = vec![vec![p("a"), p("b")], vec![p("1"), p("a+b")]];
        let det = determinant(&m);
        assert_eq!(det, p("a^2+a*b-b"));
        let adj = adjugate(&m);
        for i in 0..2 {
            for j in 0..2 {
                let s = (0..2).fold(Poly::zero(&r), |acc, k| &acc + &(&adj[i][k] * &m[k][j]));
                assert_eq!(s, if i == j { det.clone() } else { Poly::zero(&r) });
            }
        }
    }

    #[test]
    fn cramer_rejects_fractional_solutions() {
        let r = PolyRing::with_vars(5, &["a"]).unwrap();
        let p = |s: &str| parse_poly(s, &r).unwrap();
        let cols = vec![vec![p("a"), p("0")]];
        assert_eq!(cramer(&cols, &[p("a^2"), p("0")], &r), Some(vec![p("a")]));
        assert_eq!(cramer(&cols, &[p("1"), p("0")], &r), None);
        assert_eq!(cramer(&cols, &[p("a"), p("1")], &r), None);
    }
}
