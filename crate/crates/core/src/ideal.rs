//! Ideals, reduced Gröbner bases (Buchberger with sugar selection, the
//! product criterion and the Gebauer–Möller chain criterion) and the ideal
//! calculus built on them.

use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::poly::{Monomial, MonomialOrder, Poly, Ring};

#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    basis: OnceLock<Vec<Poly>>,
}

impl Serialize for Ideal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.gens.iter().map(|g| g.to_string()))
    }
}

impl PartialEq for Ideal {
    /// Equality of ideals, not of generating sets.
    fn eq(&self, other: &Self) -> bool {
        self.basis() == other.basis()
    }
}

impl Eq for Ideal {}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring: ring.clone(), gens, basis: OnceLock::new() }
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Self {
        Self::new(ring, vec![Poly::one(ring)])
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(ring: &Ring) -> Self {
        let gens: Vec<Poly> = (0..ring.nvars()).rev().map(|i| Poly::var(ring, i)).collect();
        Self::from_reduced_basis(ring, gens)
    }

    /// `m^[q] = (x_1^q, ..., x_n^q)`.
    pub fn frobenius_maximal(ring: &Ring, q: u64) -> Self {
        let n = ring.nvars();
        let mut gens: Vec<Poly> =
            (0..n).map(|i| Poly::monomial(ring, Monomial::var(n, i, q as u32), 1)).collect();
        sort_basis(ring, &mut gens);
        Self::from_reduced_basis(ring, gens)
    }

    /// Wraps a basis the caller guarantees to be the reduced Gröbner basis.
    pub fn from_reduced_basis(ring: &Ring, basis: Vec<Poly>) -> Self {
        debug_assert!(basis.iter().all(|g| g.leading_coefficient() == 1));
        debug_assert!(basis.iter().enumerate().all(|(i, g)| basis.iter().enumerate().all(|(j, h)| i == j
            || !h.leading_monomial().unwrap().divides(g.leading_monomial().unwrap()))));
        let cell = OnceLock::new();
        let _ = cell.set(basis.clone());
        Ideal { ring: ring.clone(), gens: basis, basis: cell }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// The reduced Gröbner basis, computed on first access.
    pub fn basis(&self) -> &[Poly] {
        self.basis.get_or_init(|| groebner(&self.ring, &self.gens))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.basis().first().is_some_and(|g| g.is_unit())
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        let b: Vec<&Poly> = self.basis().iter().collect();
        reduce_full(f, &b)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Generators of the leading-term ideal.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis().iter().map(|g| g.leading_monomial().unwrap().clone()).collect()
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn add_gens(&self, extra: &[Poly]) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        Ideal::new(&self.ring, g)
    }

    pub fn mul_poly(&self, h: &Poly) -> Ideal {
        Ideal::new(&self.ring, self.gens.iter().map(|g| g * h).collect())
    }

    pub fn pow(&self, k: u64) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self);
            acc = Ideal::new(&self.ring, acc.basis().to_vec());
        }
        acc
    }

    /// `I^[q]`, generated by the `q`-th powers of the generators.
    pub fn bracket_power(&self, q: u64) -> Ideal {
        Ideal::new(&self.ring, self.gens.iter().map(|g| g.frobenius_power(q)).collect())
    }

    /// Intersection by elimination of an auxiliary variable.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        if self.is_zero() || other.is_zero() {
            return Ideal::zero(&self.ring);
        }
        if self.is_unit() {
            return other.clone();
        }
        if other.is_unit() {
            return self.clone();
        }
        let n = self.ring.nvars();
        let mut names = vec![fresh_name(self.ring.vars())];
        names.extend(self.ring.vars().iter().cloned());
        let big = self
            .ring
            .derive(names, MonomialOrder::Block(vec![1, n]))
            .expect("fresh variable");
        let shift: Vec<usize> = (1..=n).collect();
        let t = Poly::var(&big, 0);
        let one_minus_t = &Poly::one(&big) - &t;
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(&t * &g.rename(&big, &shift));
        }
        for g in &other.gens {
            gens.push(&one_minus_t * &g.rename(&big, &shift));
        }
        let gb = groebner(&big, &gens);
        let back: Vec<Poly> = gb
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.0[0] == 0))
            .map(|g| drop_first_var(g, &self.ring))
            .collect();
        Ideal::new(&self.ring, back)
    }

    /// `(I : h)` for a single polynomial.
    pub fn colon_poly(&self, h: &Poly) -> Ideal {
        if h.is_zero() || self.contains(h) {
            return Ideal::unit(&self.ring);
        }
        if h.is_unit() {
            return self.clone();
        }
        let inter = self.intersect(&Ideal::new(&self.ring, vec![h.clone()]));
        let gens = inter
            .basis()
            .iter()
            .map(|g| g.exact_div(h).expect("intersection with (h) is divisible by h"))
            .collect();
        Ideal::new(&self.ring, gens)
    }

    /// `(I : J) = { f : f J ⊆ I }`.
    pub fn colon(&self, other: &Ideal) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for h in other.basis() {
            let c = self.colon_poly(h);
            acc = acc.intersect(&c);
        }
        acc
    }

    /// Eliminates the variables at positions `elim`; the result lives in
    /// `target`, whose variables are looked up by name.
    pub fn eliminate(&self, elim: &[usize], target: &Ring) -> Ideal {
        let n = self.ring.nvars();
        let keep: Vec<usize> = (0..n).filter(|i| !elim.contains(i)).collect();
        let mut names: Vec<String> = elim.iter().map(|&i| self.ring.vars()[i].clone()).collect();
        names.extend(keep.iter().map(|&i| self.ring.vars()[i].clone()));
        let order = if elim.is_empty() {
            MonomialOrder::DegRevLex
        } else {
            MonomialOrder::Block(vec![elim.len(), keep.len()])
        };
        let big = self.ring.derive(names, order).expect("same variables");
        let mut map = vec![0; n];
        for (pos, &i) in elim.iter().chain(keep.iter()).enumerate() {
            map[i] = pos;
        }
        let gens: Vec<Poly> = self.gens.iter().map(|g| g.rename(&big, &map)).collect();
        let gb = groebner(&big, &gens);
        let k = elim.len();
        let out: Vec<Poly> = gb
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.0[..k].iter().all(|&e| e == 0)))
            .map(|g| project(g, k, target))
            .collect();
        Ideal::new(target, out)
    }

    /// Krull dimension of `S/I` via maximal independent sets modulo the
    /// leading-term ideal; `None` for the unit ideal.
    pub fn krull_dim(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        let n = self.ring.nvars();
        let supports: Vec<u64> = self
            .leading_monomials()
            .iter()
            .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        let mut best = 0;
        for set in 0u64..(1u64 << n) {
            let size = set.count_ones() as usize;
            if size > best && supports.iter().all(|&s| s & !set != 0) {
                best = size;
            }
        }
        Some(best)
    }

    /// Standard monomials when `S/I` is finite-dimensional, else `None`.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let n = self.ring.nvars();
        let lms = self.leading_monomials();
        let mut bounds = vec![u32::MAX; n];
        for m in &lms {
            let sup: Vec<usize> = m.support().collect();
            if sup.len() == 1 {
                bounds[sup[0]] = bounds[sup[0]].min(m.0[sup[0]]);
            }
        }
        if lms.is_empty() || bounds.iter().any(|&b| b == u32::MAX) {
            return if self.is_unit() { Some(Vec::new()) } else { None };
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        loop {
            let m = Monomial(cur.clone());
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            let mut i = 0;
            loop {
                if i == n {
                    return Some(out);
                }
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    /// `dim_{F_p} S/I`, or `None` when infinite.
    pub fn colength(&self) -> Option<u64> {
        self.standard_monomials().map(|v| v.len() as u64)
    }

    /// Standard monomials of total degree `d` (always finitely many).
    pub fn standard_monomials_of_degree(&self, d: u64) -> Vec<Monomial> {
        let lms = self.leading_monomials();
        monomials_of_degree(self.ring.nvars(), d)
            .into_iter()
            .filter(|m| !lms.iter().any(|l| l.divides(m)))
            .collect()
    }
}

/// All exponent vectors of `n` variables with total degree `d`.
pub fn monomials_of_degree(n: usize, d: u64) -> Vec<Monomial> {
    fn go(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            go(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, d as u32, &mut Vec::new(), &mut out);
    out
}

fn fresh_name(vars: &[String]) -> String {
    let mut name = "t_".to_string();
    while vars.contains(&name) {
        name.push('_');
    }
    name
}

/// Drops the first `k` variables (which must not occur) and maps the rest to
/// `target` by name.
fn project(g: &Poly, k: usize, target: &Ring) -> Poly {
    let src = g.ring().vars();
    let map: Vec<usize> = src[k..]
        .iter()
        .map(|v| target.var_index(v).expect("target carries the kept variables"))
        .collect();
    let n = target.nvars();
    let terms = g
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut e = vec![0; n];
            for (i, &x) in m.0[k..].iter().enumerate() {
                e[map[i]] += x;
            }
            (Monomial(e), *c)
        })
        .collect();
    Poly::from_terms(target, terms)
}

fn drop_first_var(g: &Poly, target: &Ring) -> Poly {
    let terms = g.terms().iter().map(|(m, c)| (Monomial(m.0[1..].to_vec()), *c)).collect();
    Poly::from_terms(target, terms)
}

fn sort_basis(ring: &Ring, v: &mut [Poly]) {
    v.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
}

/// Full reduction (leading and tail terms) of `f` by monic-or-not divisors.
pub(crate) fn reduce_full(f: &Poly, basis: &[&Poly]) -> Poly {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, u32)> = Vec::new();
    while let Some((m, c)) = p.terms().first().cloned() {
        match basis.iter().find(|g| g.leading_monomial().unwrap().divides(&m)) {
            Some(g) => {
                let t = g.leading_monomial().unwrap().quotient_of(&m);
                let k = field.div(c, g.leading_coefficient());
                p = p.sub_scaled(k, &t, g);
            }
            None => {
                let lt = p.pop_leading().unwrap();
                rem.push(lt);
            }
        }
    }
    Poly::from_sorted(&ring, rem)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

fn spoly(f: &Poly, g: &Poly, lcm: &Monomial) -> Poly {
    let ff = f.ring().field();
    let a = f.leading_monomial().unwrap().quotient_of(lcm);
    let b = g.leading_monomial().unwrap().quotient_of(lcm);
    let fa = f.mul_monomial(&a, ff.inv(f.leading_coefficient()));
    fa.sub_scaled(ff.inv(g.leading_coefficient()), &b, g)
}

/// Reduced, monic Gröbner basis sorted ascending by leading monomial.
pub fn groebner(ring: &Ring, gens: &[Poly]) -> Vec<Poly> {
    let mut polys: Vec<Poly> = Vec::new();
    let mut sugar: Vec<u64> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    input.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    for g in input {
        if g.is_unit() {
            return vec![Poly::one(ring)];
        }
        let s = g.degree().unwrap_or(0);
        let current: Vec<&Poly> =
            polys.iter().zip(&active).filter(|(_, &a)| a).map(|(p, _)| p).collect();
        let h = reduce_full(&g, &current);
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return vec![Poly::one(ring)];
        }
        update(&mut polys, &mut sugar, &mut active, &mut pairs, h.monic(), s);
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a]
                    .sugar
                    .cmp(&pairs[b].sugar)
                    .then_with(|| ring.cmp(&pairs[a].lcm, &pairs[b].lcm))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        let s = spoly(&polys[pair.i], &polys[pair.j], &pair.lcm);
        let current: Vec<&Poly> =
            polys.iter().zip(&active).filter(|(_, &a)| a).map(|(p, _)| p).collect();
        let h = reduce_full(&s, &current);
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return vec![Poly::one(ring)];
        }
        update(&mut polys, &mut sugar, &mut active, &mut pairs, h.monic(), pair.sugar);
    }

    let mut basis: Vec<Poly> =
        polys.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    // Minimal already (divisible leading monomials were deactivated); now
    // inter-reduce the tails.
    sort_basis(ring, &mut basis);
    let mut reduced = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let others: Vec<&Poly> = basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p).collect();
        let lt = Poly::monomial(ring, basis[i].leading_monomial().unwrap().clone(), 1);
        let tail = &basis[i] - &lt;
        reduced.push(&lt + &reduce_full(&tail, &others));
    }
    reduced
}

/// Gebauer–Möller update: adds `h` and its critical pairs, pruning with the
/// chain and product criteria.
fn update(
    polys: &mut Vec<Poly>,
    sugar: &mut Vec<u64>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: Poly,
    h_sugar: u64,
) {
    let hi = polys.len();
    let lh = h.leading_monomial().unwrap().clone();
    let deg_lh = lh.degree();

    let mut cands: Vec<Pair> = (0..hi)
        .filter(|&g| active[g])
        .map(|g| {
            let lg = polys[g].leading_monomial().unwrap();
            let lcm = lh.lcm(lg);
            let d = lcm.degree();
            let s = (h_sugar + d - deg_lh).max(sugar[g] + d - lg.degree());
            Pair { i: g, j: hi, lcm, sugar: s }
        })
        .collect();

    let coprime = |p: &Pair, polys: &Vec<Poly>| lh.coprime(polys[p.i].leading_monomial().unwrap());
    let mut kept: Vec<Pair> = Vec::new();
    while let Some(c) = cands.pop() {
        let dominated = !coprime(&c, polys)
            && (cands.iter().any(|o| o.lcm.divides(&c.lcm))
                || kept.iter().any(|o| o.lcm.divides(&c.lcm)));
        if !dominated {
            kept.push(c);
        }
    }
    kept.retain(|p| !coprime(p, polys));

    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && lh.lcm(polys[p.i].leading_monomial().unwrap()) != p.lcm
            && lh.lcm(polys[p.j].leading_monomial().unwrap()) != p.lcm)
    });
    pairs.extend(kept);

    for g in 0..hi {
        if active[g] && lh.divides(polys[g].leading_monomial().unwrap()) {
            active[g] = false;
        }
    }
    polys.push(h);
    sugar.push(h_sugar);
    active.push(true);
}

/// Compares two ideals' reduced bases term by term.
pub fn same_ideal(a: &Ideal, b: &Ideal) -> bool {
    a.basis().len() == b.basis().len()
        && a.basis().iter().zip(b.basis()).all(|(x, y)| x.terms() == y.terms())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::poly::PolyRing;

    fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(ring, gens.iter().map(|g| parse_poly(g, ring).unwrap()).collect())
    }

    fn strs(i: &Ideal) -> Vec<String> {
        i.basis().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn simple_bases() {
        let r = PolyRing::with_vars(3, &["x", "y"]).unwrap();
        assert_eq!(strs(&ideal(&r, &["x", "x+y"])), vec!["y", "x"]);
        assert!(Ideal::zero(&r).basis().is_empty());
    }

    #[test]
    fn hand_buchberger_trace() {
        // Leading monomials x^2 and y^2 are coprime; by hand the S-polynomial
        // x^3 - y^3 reduces x^3 -> x*y, then -y^3 + x*y -> 0.
        let r = PolyRing::with_vars(5, &["x", "y"]).unwrap();
        let i = ideal(&r, &["x^2-y", "y^2-x"]);
        assert_eq!(strs(&i), vec!["y^2 - x", "x^2 - y"]);
        assert_eq!(i.colength(), Some(4));
    }

    #[test]
    fn normal_form_single_step() {
        let r = PolyRing::with_vars(3, &["x", "y"]).unwrap();
        let i = ideal(&r, &["x^2-y"]);
        assert_eq!(i.normal_form(&parse_poly("x^3", &r).unwrap()).to_string(), "x*y");
        assert!(i.contains(&parse_poly("x^2-y", &r).unwrap()));
        assert_eq!(i.normal_form(&Poly::one(&r)), Poly::one(&r));
    }

    #[test]
    fn colon_and_intersection() {
        let r = PolyRing::with_vars(3, &["x", "y"]).unwrap();
        assert_eq!(ideal(&r, &["x^2"]).colon(&ideal(&r, &["x"])), ideal(&r, &["x"]));
        assert_eq!(ideal(&r, &["x"]).intersect(&ideal(&r, &["y"])), ideal(&r, &["x*y"]));
        let c = ideal(&r, &["x^2", "y^2"]).colon(&ideal(&r, &["x", "y"]));
        assert_eq!(c, ideal(&r, &["x^2", "y^2", "x*y"]));
        let f = parse_poly("x^2+y^3", &r).unwrap();
        let fq = Ideal::new(&r, vec![f.pow(3)]);
        assert_eq!(fq.colon(&Ideal::new(&r, vec![f.clone()])), Ideal::new(&r, vec![f.pow(2)]));
    }

    #[test]
    fn bracket_powers() {
        let r = PolyRing::with_vars(2, &["x", "y"]).unwrap();
        assert_eq!(Ideal::maximal(&r).bracket_power(4), ideal(&r, &["x^4", "y^4"]));
        assert_eq!(ideal(&r, &["x+y"]).bracket_power(2), ideal(&r, &["x^2+y^2"]));
    }

    #[test]
    fn dimension_and_colength() {
        let r = PolyRing::with_vars(5, &["x", "y"]).unwrap();
        assert_eq!(ideal(&r, &["x^2", "y^3"]).colength(), Some(6));
        assert_eq!(ideal(&r, &["x^2"]).colength(), None);
        let a = PolyRing::with_vars(5, &["a", "b", "c"]).unwrap();
        assert_eq!(ideal(&a, &["a*c-b^2"]).krull_dim(), Some(2));
        assert_eq!(Ideal::unit(&a).krull_dim(), None);
        assert_eq!(Ideal::zero(&a).krull_dim(), Some(3));
    }

    #[test]
    fn elimination_of_a_parametrization() {
        let r = PolyRing::with_vars(5, &["x", "y", "a", "b", "c"]).unwrap();
        let target = PolyRing::with_vars(5, &["a", "b", "c"]).unwrap();
        let i = ideal(&r, &["a-x^2", "b-x*y", "c-y^2"]);
        let e = i.eliminate(&[0, 1], &target);
        assert_eq!(e, ideal(&target, &["a*c-b^2"]));
    }
}
