//! Sparse multivariate polynomials over `F_p` with a fixed monomial order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Monomial orders. `Block` splits the variables into consecutive blocks
/// compared lexicographically block by block, with degree-reverse-lex inside
/// each block; it is the elimination order for the earlier blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    Block(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize, k: u32) -> Self {
        let mut m = vec![0; n];
        m[i] = k;
        Monomial(m)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, w: &[i64]) -> i64 {
        self.0.iter().zip(w).map(|(&e, &wi)| e as i64 * wi).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// True when every exponent is below `q`.
    pub fn in_box(&self, q: u64) -> bool {
        self.0.iter().all(|&e| (e as u64) < q)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type Ring = Arc<PolyRing>;

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new(field: PrimeField, vars: Vec<String>, order: MonomialOrder) -> Result<Ring> {
        if vars.is_empty() {
            return Err(Error::InvalidVariables("at least one variable is required".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if !valid_name(v) {
                return Err(Error::InvalidVariables(format!("`{v}` is not an identifier")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidVariables(format!("`{v}` is repeated")));
            }
        }
        if let MonomialOrder::Block(sizes) = &order {
            if sizes.iter().sum::<usize>() != vars.len() || sizes.contains(&0) {
                return Err(Error::InvalidVariables("block sizes do not cover the variables".into()));
            }
        }
        Ok(Arc::new(Self { field, vars, order }))
    }

    /// Convenience constructor with the default degrevlex order.
    pub fn with_vars(p: u32, vars: &[&str]) -> Result<Ring> {
        Self::new(
            PrimeField::new(p)?,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::DegRevLex,
        )
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match &self.order {
            MonomialOrder::DegRevLex => degrevlex(&a.0, &b.0),
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Block(sizes) => {
                let mut start = 0;
                for &len in sizes {
                    let o = degrevlex(&a.0[start..start + len], &b.0[start..start + len]);
                    if o != Ordering::Equal {
                        return o;
                    }
                    start += len;
                }
                Ordering::Equal
            }
        }
    }

    /// Same field, new variable list and order.
    pub fn derive(&self, vars: Vec<String>, order: MonomialOrder) -> Result<Ring> {
        PolyRing::new(self.field.clone(), vars, order)
    }
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// A polynomial: terms sorted strictly descending in the ring order, no zero
/// coefficients.
#[derive(Clone)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Poly {
    pub fn zero(ring: &Ring) -> Self {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        let c = ring.field().reduce(c);
        Self::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i, 1), 1)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: u32) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Ring, terms: Vec<(Monomial, u32)>) -> Self {
        let f = ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), ring.nvars());
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, c % f.characteristic());
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Ring, acc: HashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Poly { ring: ring.clone(), terms }
    }

    /// Terms already sorted descending and nonzero.
    pub(crate) fn from_sorted(ring: &Ring, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Poly { ring: ring.clone(), terms }
    }

    /// Removes and returns the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, u32)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn constant_term(&self) -> u32 {
        self.terms.last().filter(|(m, _)| m.is_one()).map(|(_, c)| *c).unwrap_or(0)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> u32 {
        self.terms.first().map(|(_, c)| *c).unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| *c).unwrap_or(0)
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self, w: &[i64]) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.weighted_degree(w));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.ring.field().inv(self.leading_coefficient());
        self.scale(inv)
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Poly::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect();
        Poly { ring: self.ring.clone(), terms }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u32) -> Poly {
        let f = self.ring.field();
        if c % f.characteristic() == 0 {
            return Poly::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(*a, c))).collect();
        Poly { ring: self.ring.clone(), terms }
    }

    /// `self - c * m * other`, the reduction step.
    pub fn sub_scaled(&self, c: u32, m: &Monomial, other: &Poly) -> Poly {
        let f = self.ring.field();
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let shifted: Vec<(Monomial, u32)> =
            other.terms.iter().map(|(t, a)| (t.mul(m), f.neg(f.mul(*a, c)))).collect();
        while i < self.terms.len() && j < shifted.len() {
            match ring.cmp(&self.terms[i].0, &shifted[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(shifted[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(self.terms[i].1, shifted[j].1);
                    if s != 0 {
                        out.push((self.terms[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(shifted.into_iter().skip(j));
        Poly { ring: ring.clone(), terms: out }
    }

    pub fn pow(&self, mut k: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^q` for `q` a power of `p`: exponents scale, coefficients are fixed.
    pub fn frobenius_power(&self, q: u64) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.pow(q as u32), *c)).collect();
        // Scaling all exponents by q preserves every monomial order used here.
        Poly::from_sorted(&self.ring, terms)
    }

    /// Writes `self = sum_r x^r * (h_r)^q` over residues `r` in `[0,q)^n` and
    /// returns the nonzero `h_r` keyed by `r`.
    pub fn frobenius_components(&self, q: u64) -> HashMap<Monomial, Poly> {
        let mut groups: HashMap<Monomial, Vec<(Monomial, u32)>> = HashMap::new();
        let q32 = q as u32;
        for (m, c) in &self.terms {
            let r = Monomial(m.0.iter().map(|e| e % q32).collect());
            let d = Monomial(m.0.iter().map(|e| e / q32).collect());
            groups.entry(r).or_default().push((d, *c));
        }
        groups
            .into_iter()
            .map(|(r, ts)| (r, Poly::from_terms(&self.ring, ts)))
            .collect()
    }

    /// Substitutes `images[i]` for variable `i`; the images share a target ring.
    pub fn substitute(&self, target: &Ring, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars());
        let mut acc = Poly::zero(target);
        let mut cache: Vec<Vec<Poly>> = images.iter().map(|g| vec![Poly::one(target), g.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, *c as i64);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Reinterprets the polynomial in `target` by sending variable `i` to
    /// variable `map[i]`.
    pub fn rename(&self, target: &Ring, map: &[usize]) -> Poly {
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; n];
                for (i, &k) in m.0.iter().enumerate() {
                    e[map[i]] += k;
                }
                (Monomial(e), *c)
            })
            .collect();
        Poly::from_terms(target, terms)
    }

    /// Moves into another ring with the same variable names (by name).
    pub fn to_ring(&self, target: &Ring) -> Result<Poly> {
        let map: Option<Vec<usize>> =
            self.ring.vars().iter().map(|v| target.var_index(v)).collect();
        let map = map.ok_or(Error::RingMismatch)?;
        Ok(self.rename(target, &map))
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = self.ring.field();
        let lm = d.leading_monomial().unwrap();
        let lc_inv = f.inv(d.leading_coefficient());
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let t = lm.quotient_of(&m);
            let k = f.mul(c, lc_inv);
            rem = rem.sub_scaled(k, &t, d);
            quot.push((t, k));
        }
        Some(Poly::from_terms(&self.ring, quot))
    }

    /// Monomial gcd of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter().map(|(m, _)| m);
        match it.next() {
            None => Monomial::one(self.ring.nvars()),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// Divides out a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        let terms = self.terms.iter().map(|(t, c)| (m.quotient_of(t), *c)).collect();
        Poly::from_sorted(&self.ring, terms)
    }

    /// Keeps only the terms with every exponent below `q`.
    pub fn truncate_box(&self, q: u64) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.in_box(q)).cloned().collect();
        Poly::from_sorted(&self.ring, terms)
    }

    /// The homogeneous component of degree `d` under the weight vector `w`.
    pub fn component(&self, w: &[i64], d: i64) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.weighted_degree(w) == d)
            .cloned()
            .collect();
        Poly::from_sorted(&self.ring, terms)
    }

    /// Attempts a root `h` with `h^k = self` (for `p` not dividing `k`, or
    /// `k = p` via Frobenius). Returns `None` when none exists.
    pub fn kth_root(&self, k: u32) -> Option<Poly> {
        if k == 1 {
            return Some(self.clone());
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let f = self.ring.field();
        let p = f.characteristic();
        if k % p == 0 {
            if k != p {
                return self.kth_root(p).and_then(|h| h.kth_root(k / p));
            }
            // F_p is perfect: c^(1/p) = c.
            if self.terms.iter().any(|(m, _)| m.0.iter().any(|e| e % p != 0)) {
                return None;
            }
            let terms = self
                .terms
                .iter()
                .map(|(m, c)| (Monomial(m.0.iter().map(|e| e / p).collect()), *c))
                .collect();
            return Some(Poly::from_terms(&self.ring, terms));
        }
        let (lm, lc) = self.terms[0].clone();
        if lm.0.iter().any(|e| e % k != 0) {
            return None;
        }
        let root_c = (1..p).find(|c| f.pow(*c, k as u64) == lc)?;
        let root_m = Monomial(lm.0.iter().map(|e| e / k).collect());
        let lead = Poly::monomial(&self.ring, root_m.clone(), root_c);
        // Newton-style term-by-term: h <- h + (g - h^k)_lead / (k * lt(h)^(k-1)).
        let denom_c = f.mul(f.from_u64(k as u64), f.pow(root_c, (k - 1) as u64));
        let denom_m = root_m.pow(k - 1);
        let mut h = lead;
        let bound = self.terms.len() * 4 + 16;
        for _ in 0..bound {
            let resid = self - &h.pow(k as u64);
            let Some((m, c)) = resid.terms.first().cloned() else {
                return Some(h);
            };
            if !denom_m.divides(&m) {
                return None;
            }
            let t = denom_m.quotient_of(&m);
            if self.ring.cmp(&t, &root_m) != Ordering::Less {
                return None;
            }
            h = &h + &Poly::monomial(&self.ring, t, f.div(c, denom_c));
        }
        None
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.sub_scaled(
            self.ring.field().neg(1),
            &Monomial::one(self.ring.nvars()),
            rhs,
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.sub_scaled(1, &Monomial::one(self.ring.nvars()), rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(self.ring.field().neg(1))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.ring);
        }
        if rhs.terms.len() == 1 {
            return self.mul_monomial(&rhs.terms[0].0, rhs.terms[0].1);
        }
        if self.terms.len() == 1 {
            return rhs.mul_monomial(&self.terms[0].0, self.terms[0].1);
        }
        let f = self.ring.field();
        let mut acc: HashMap<Monomial, u32> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let e = acc.entry(m1.mul(m2)).or_insert(0);
                *e = f.add(*e, f.mul(*c1, *c2));
            }
        }
        Poly::from_map(&self.ring, acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = field.signed(*c);
            let (neg, a) = if s < 0 { (true, -s) } else { (false, s) };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = format_monomial(self.ring.vars(), m);
            match (a, mono.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (1, false) => write!(f, "{mono}")?,
                (_, false) => write!(f, "{a}*{mono}")?,
            }
        }
        Ok(())
    }
}

pub fn format_monomial(vars: &[String], m: &Monomial) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], e) })
        .collect();
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        PolyRing::with_vars(5, &["x", "y"]).unwrap()
    }

    #[test]
    fn degrevlex_orders_by_degree_then_reverse() {
        let r = PolyRing::with_vars(3, &["x", "y", "z"]).unwrap();
        let a = Monomial(vec![1, 0, 1]);
        let b = Monomial(vec![0, 2, 0]);
        // both degree 2; xz has the larger last exponent so it is smaller
        assert_eq!(r.cmp(&a, &b), Ordering::Less);
        assert_eq!(r.cmp(&Monomial(vec![2, 0, 0]), &Monomial(vec![0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let f = PrimeField::new(5).unwrap();
        let r = PolyRing::new(f, vec!["y".into(), "x".into()], MonomialOrder::Block(vec![1, 1])).unwrap();
        assert_eq!(r.cmp(&Monomial(vec![1, 0]), &Monomial(vec![0, 9])), Ordering::Greater);
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let r = ring();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let s = &x + &y;
        let sq = &s * &s;
        assert_eq!(sq.nterms(), 3);
        assert!((&(&x * &x) - &(&x * &x)).is_zero());
        // (x + y)^5 = x^5 + y^5 in characteristic 5
        assert_eq!(s.pow(5), &x.pow(5) + &y.pow(5));
    }

    #[test]
    fn frobenius_components_reassemble() {
        let r = ring();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let g = (&(&x + &y) * &x).pow(3);
        let comps = g.frobenius_components(5);
        let mut back = Poly::zero(&r);
        for (res, h) in comps {
            back = &back + &h.frobenius_power(5).mul_monomial(&res, 1);
        }
        assert_eq!(back, g);
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let a = &x + &y;
        let b = &x - &y;
        assert_eq!((&a * &b).exact_div(&b), Some(a.clone()));
        assert_eq!((&a * &b + Poly::one(&r)).exact_div(&b), None);
    }

    #[test]
    fn roots() {
        let r = ring();
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        let h = &(&x * &x) + &(&y.scale(3) * &x);
        assert_eq!(h.pow(2).kth_root(2).map(|g| g.monic()), Some(h.monic()));
        assert_eq!(h.pow(5).kth_root(5), Some(h.clone()));
        assert_eq!((&h + &y).kth_root(2), None);
    }
}
