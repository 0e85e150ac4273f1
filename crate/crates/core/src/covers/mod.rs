//! Finite graded covers `R → S` with a free basis, sections of `Hom_R(S, R)`
//! and the transposition of `p^{-e}`-linear maps.
//!
//! Elements of `S` are handled through coordinates in the basis `B`, with
//! coefficients in the ambient ring of `R` reduced modulo its relations.
//! Coordinates of the basis products and of the variables of `S` are found
//! once by reduction in a combined ring holding both sets of variables; all
//! later arithmetic goes through the resulting multiplication table.

mod linalg;
mod ramification;
mod verify;

pub use linalg::{determinant, UPoly};
pub use ramification::*;
pub use verify::*;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{groebner, Ideal};
use crate::poly::{Monomial, MonomialOrder, Poly, Ring};
use crate::quotient::QuotientPresentation;

/// Coordinates in the basis `B`, coefficients in the base ambient ring.
pub type Coords = Vec<Poly>;

#[derive(Clone, Debug)]
pub struct CoverSpec {
    base: QuotientPresentation,
    total: QuotientPresentation,
    images: Vec<Poly>,
    basis: Vec<Poly>,
    combined: Ring,
    rel: Ideal,
    /// `table[i][j]` holds the coordinates of `b_i b_j`.
    table: Vec<Vec<Coords>>,
    var_coords: Vec<Coords>,
    one: Coords,
}

fn combined_names(total: &Ring, base: &Ring) -> Vec<String> {
    let mut names: Vec<String> = total.vars().to_vec();
    for v in base.vars() {
        let mut name = v.clone();
        while names.contains(&name) {
            name.push_str("_base");
        }
        names.push(name);
    }
    names
}

impl CoverSpec {
    /// Builds the cover `base → total`, sending base variable `i` to
    /// `images[i]`, with candidate free basis `basis`.
    pub fn new(
        base: QuotientPresentation,
        total: QuotientPresentation,
        images: Vec<Poly>,
        basis: Vec<Poly>,
    ) -> Result<CoverSpec> {
        let rb = base.ambient().clone();
        let rt = total.ambient().clone();
        if rb.p() != rt.p() {
            return Err(Error::InvalidCover("base and total characteristics differ".into()));
        }
        if images.len() != rb.nvars() {
            return Err(Error::InvalidCover(format!(
                "{} images given for {} base variables",
                images.len(),
                rb.nvars()
            )));
        }
        if basis.is_empty() {
            return Err(Error::InvalidCover("empty basis".into()));
        }
        for r in base.relations().gens() {
            let img = r.substitute(&rt, &images);
            if !total.relations().contains(&img) {
                return Err(Error::InvalidCover(format!("base relation `{r}` does not map to zero")));
            }
        }
        let nt = rt.nvars();
        let nb = rb.nvars();
        let combined = rt.derive(combined_names(&rt, &rb), MonomialOrder::Block(vec![nt, nb]))?;
        let tmap: Vec<usize> = (0..nt).collect();
        let bmap: Vec<usize> = (nt..nt + nb).collect();
        let mut gens: Vec<Poly> = total.relations().gens().iter().map(|g| g.rename(&combined, &tmap)).collect();
        gens.extend(base.relations().gens().iter().map(|g| g.rename(&combined, &bmap)));
        for (i, img) in images.iter().enumerate() {
            gens.push(&Poly::var(&combined, nt + i) - &img.rename(&combined, &tmap));
        }
        let rel = Ideal::from_reduced_basis(&combined, groebner(&combined, &gens));
        let mut cover = CoverSpec {
            base,
            total,
            images,
            basis,
            combined,
            rel,
            table: Vec::new(),
            var_coords: Vec::new(),
            one: Vec::new(),
        };
        cover.check_leading_monomials()?;
        cover.one = cover
            .coords_by_reduction(&Poly::one(&rt))
            .map_err(|_| Error::BasisDoesNotClose("1 is not in the span of B".into()))?;
        let n = cover.rank();
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i..n {
                let prod = &cover.basis[i] * &cover.basis[j];
                let c = cover.coords_by_reduction(&prod).map_err(|_| {
                    Error::BasisDoesNotClose(format!("({})*({})", cover.basis[i], cover.basis[j]))
                })?;
                table[i][j] = c.clone();
                table[j][i] = c;
            }
        }
        cover.table = table;
        let mut var_coords = Vec::with_capacity(nt);
        for k in 0..nt {
            let x = Poly::var(&rt, k);
            let c = cover
                .coords_by_reduction(&x)
                .map_err(|_| Error::BasisDoesNotClose(format!("{x} is not in the span of B")))?;
            var_coords.push(c);
        }
        cover.var_coords = var_coords;
        cover.check_free()?;
        Ok(cover)
    }

    pub fn base(&self) -> &QuotientPresentation {
        &self.base
    }

    pub fn total(&self) -> &QuotientPresentation {
        &self.total
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    /// `N = |B|`, the generic degree.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub(crate) fn to_combined(&self, s: &Poly) -> Poly {
        let map: Vec<usize> = (0..self.total.ambient().nvars()).collect();
        s.rename(&self.combined, &map)
    }

    pub(crate) fn base_to_combined(&self, r: &Poly) -> Poly {
        let nt = self.total.ambient().nvars();
        let map: Vec<usize> = (nt..nt + self.base.ambient().nvars()).collect();
        r.rename(&self.combined, &map)
    }

    /// A combined polynomial without total variables, read in the base ring.
    pub(crate) fn combined_to_base(&self, g: &Poly) -> Poly {
        let nt = self.total.ambient().nvars();
        let terms = g.terms().iter().map(|(m, c)| (Monomial(m.0[nt..].to_vec()), *c)).collect();
        Poly::from_terms(self.base.ambient(), terms)
    }

    fn split_total(&self, m: &Monomial) -> (Monomial, Monomial) {
        let nt = self.total.ambient().nvars();
        (Monomial(m.0[..nt].to_vec()), Monomial(m.0[nt..].to_vec()))
    }

    fn normal_basis(&self) -> Vec<Poly> {
        self.basis.iter().map(|b| self.rel.normal_form(&self.to_combined(b))).collect()
    }

    fn check_leading_monomials(&self) -> Result<()> {
        let mut seen: Vec<Monomial> = Vec::new();
        for (b, nf) in self.basis.iter().zip(self.normal_basis()) {
            let Some(lm) = nf.leading_monomial() else {
                return Err(Error::InvalidCover(format!("basis element `{b}` is zero in S")));
            };
            let (tm, _) = self.split_total(lm);
            if seen.contains(&tm) {
                return Err(Error::InvalidCover(format!("basis element `{b}` is not independent")));
            }
            seen.push(tm);
        }
        Ok(())
    }

    /// `S/m_R S` must have dimension `N` and `S` the dimension of `R`.
    fn check_free(&self) -> Result<()> {
        let nt = self.total.ambient().nvars();
        let nb = self.base.ambient().nvars();
        let fiber = self.rel.add_gens(&(nt..nt + nb).map(|i| Poly::var(&self.combined, i)).collect::<Vec<_>>());
        match fiber.colength() {
            Some(d) if d == self.rank() as u64 => {}
            Some(d) => {
                return Err(Error::InvalidCover(format!(
                    "fiber over the origin has length {d}, expected {}",
                    self.rank()
                )))
            }
            None => return Err(Error::InvalidCover("S is not finite over R".into())),
        }
        if self.total.dim() != self.base.dim() {
            return Err(Error::InvalidCover("base and total dimensions differ".into()));
        }
        Ok(())
    }

    /// Coordinates by repeated cancellation of the leading total monomial.
    fn coords_by_reduction(&self, s: &Poly) -> Result<Coords> {
        let rb = self.base.ambient();
        let nbasis = self.normal_basis();
        let leads: Vec<(Monomial, Poly)> = nbasis
            .iter()
            .map(|nf| {
                let (tm, _) = self.split_total(nf.leading_monomial().unwrap());
                (tm.clone(), self.total_coefficient(nf, &tm))
            })
            .collect();
        let mut coords = vec![Poly::zero(rb); self.rank()];
        let mut r = self.rel.normal_form(&self.to_combined(s));
        while let Some(lm) = r.leading_monomial() {
            let (tm, _) = self.split_total(lm);
            let c = self.total_coefficient(&r, &tm);
            let k = leads.iter().position(|(m, _)| *m == tm).ok_or(Error::BasisDoesNotClose(s.to_string()))?;
            let factor = c.exact_div(&leads[k].1).ok_or(Error::BasisDoesNotClose(s.to_string()))?;
            coords[k] = &coords[k] + &factor;
            r = self.rel.normal_form(&(&r - &(&self.base_to_combined(&factor) * &nbasis[k])));
        }
        Ok(coords.into_iter().map(|c| self.reduce_base(&c)).collect())
    }

    /// The base coefficient of the total monomial `tm` in `g`.
    fn total_coefficient(&self, g: &Poly, tm: &Monomial) -> Poly {
        let terms = g
            .terms()
            .iter()
            .filter_map(|(m, c)| {
                let (t, b) = self.split_total(m);
                (t == *tm).then_some((b, *c))
            })
            .collect();
        Poly::from_terms(self.base.ambient(), terms)
    }

    pub fn reduce_base(&self, r: &Poly) -> Poly {
        if self.base.is_regular() {
            r.clone()
        } else {
            self.base.relations().normal_form(r)
        }
    }

    pub fn unit_coords(&self, k: usize) -> Coords {
        let rb = self.base.ambient();
        (0..self.rank()).map(|i| if i == k { Poly::one(rb) } else { Poly::zero(rb) }).collect()
    }

    pub fn scalar_coords(&self, r: &Poly) -> Coords {
        self.one.iter().map(|c| self.reduce_base(&(c * r))).collect()
    }

    pub fn add_coords(&self, a: &[Poly], b: &[Poly]) -> Coords {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn mul_coords(&self, a: &[Poly], b: &[Poly]) -> Coords {
        let rb = self.base.ambient();
        let n = self.rank();
        let mut out = vec![Poly::zero(rb); n];
        for k in 0..n {
            if a[k].is_zero() {
                continue;
            }
            for l in 0..n {
                if b[l].is_zero() {
                    continue;
                }
                let c = &a[k] * &b[l];
                for (o, t) in out.iter_mut().zip(&self.table[k][l]) {
                    if !t.is_zero() {
                        *o = &*o + &(&c * t);
                    }
                }
            }
        }
        out.into_iter().map(|c| self.reduce_base(&c)).collect()
    }

    pub fn pow_coords(&self, a: &[Poly], mut k: u64) -> Coords {
        let mut result = self.one_coords();
        let mut base = a.to_vec();
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul_coords(&result, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul_coords(&base, &base);
            }
        }
        result
    }

    pub(crate) fn product_coords(&self, i: usize, j: usize) -> &Coords {
        &self.table[i][j]
    }

    pub fn var_coords(&self, i: usize) -> &Coords {
        &self.var_coords[i]
    }

    /// Coordinates of an element of the total ambient ring.
    pub fn coords(&self, s: &Poly) -> Coords {
        let rb = self.base.ambient();
        let n = self.rank();
        let nt = self.total.ambient().nvars();
        if self.var_coords.is_empty() {
            return self.coords_by_reduction(s).expect("basis closes");
        }
        let mut powers: Vec<Vec<Coords>> = vec![Vec::new(); nt];
        let one = self.one_coords();
        let mut acc = vec![Poly::zero(rb); n];
        for (m, c) in s.terms() {
            let mut t = one.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if powers[i].is_empty() {
                    powers[i].push(one.clone());
                }
                while powers[i].len() <= e as usize {
                    let next = self.mul_coords(powers[i].last().unwrap(), &self.var_coords[i]);
                    powers[i].push(next);
                }
                t = self.mul_coords(&t, &powers[i][e as usize]);
            }
            for (a, x) in acc.iter_mut().zip(&t) {
                *a = &*a + &x.scale(*c);
            }
        }
        acc
    }

    fn one_coords(&self) -> Coords {
        self.one.clone()
    }

    /// `Σ c_k(f) b_k` in the total ambient ring.
    pub fn lift(&self, c: &[Poly]) -> Poly {
        let rt = self.total.ambient();
        let mut acc = Poly::zero(rt);
        for (ck, bk) in c.iter().zip(&self.basis) {
            if !ck.is_zero() {
                acc = &acc + &(&ck.substitute(rt, &self.images) * bk);
            }
        }
        acc
    }

    /// Pushes a base element into the total ambient ring.
    pub fn image_of(&self, r: &Poly) -> Poly {
        r.substitute(self.total.ambient(), &self.images)
    }

    /// Matrix of multiplication by `s`: column `j` holds the coordinates of `s b_j`.
    pub fn mult_matrix(&self, s: &Poly) -> Vec<Vec<Poly>> {
        self.mult_matrix_coords(&self.coords(s))
    }

    pub fn mult_matrix_coords(&self, sc: &[Poly]) -> Vec<Vec<Poly>> {
        let n = self.rank();
        let cols: Vec<Coords> = (0..n).map(|j| self.mul_coords(sc, &self.unit_coords(j))).collect();
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn trace_of(&self, s: &Poly) -> Poly {
        let m = self.mult_matrix(s);
        let rb = self.base.ambient();
        (0..self.rank()).fold(Poly::zero(rb), |acc, i| &acc + &m[i][i])
    }

    pub fn norm_of(&self, s: &Poly) -> Poly {
        self.reduce_base(&determinant(&self.mult_matrix(s)))
    }

    /// Characteristic polynomial `det(X - M_s)`.
    pub fn char_poly(&self, s: &Poly) -> UPoly {
        let m = self.mult_matrix(s);
        let rb = self.base.ambient();
        let n = self.rank();
        let um: Vec<Vec<UPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = -&m[i][j];
                        if i == j {
                            UPoly::new(vec![c, Poly::one(rb)])
                        } else {
                            UPoly::new(vec![c])
                        }
                    })
                    .collect()
            })
            .collect();
        linalg::udeterminant(&um, rb)
    }

    /// Minimal monic relation `X^d + a_{d-1} X^{d-1} + … + a_0` of `s` over
    /// the base, found by Cramer's rule with exact division. Falls back to
    /// the characteristic polynomial when no lower-degree relation has
    /// coefficients in the base.
    pub fn min_poly(&self, s: &Poly) -> Result<UPoly> {
        if !self.base.is_regular() {
            return Err(Error::RequiresRegular("minimal polynomials need a polynomial base".into()));
        }
        let rb = self.base.ambient();
        let n = self.rank();
        let sc = self.coords(s);
        let mut powers: Vec<Coords> = vec![self.one_coords()];
        for d in 1..=n {
            powers.push(self.mul_coords(powers.last().unwrap(), &sc));
            if let Some(c) = linalg::cramer(&powers[..d], &powers[d], rb) {
                let mut coeffs: Vec<Poly> = c.iter().map(|x| -x).collect();
                coeffs.push(Poly::one(rb));
                return Ok(UPoly::new(coeffs));
            }
        }
        Ok(self.char_poly(s))
    }

    /// `T(J)` for an ideal `J` of the total ambient ring.
    pub fn image_ideal(&self, t: &SectionT, j: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for g in j.gens() {
            let gc = self.coords(g);
            for k in 0..self.rank() {
                gens.push(t.apply(&self.mul_coords(&gc, &self.unit_coords(k))));
            }
        }
        Ideal::new(self.base.ambient(), gens).sum(self.base.relations())
    }

    /// `J ∩ R` by elimination in the combined ring.
    pub fn contract(&self, j: &Ideal) -> Ideal {
        let nt = self.total.ambient().nvars();
        let mut gens: Vec<Poly> = self.rel.basis().to_vec();
        gens.extend(j.gens().iter().map(|g| self.to_combined(g)));
        let gb = groebner(&self.combined, &gens);
        let out: Vec<Poly> = gb
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.0[..nt].iter().all(|&e| e == 0)))
            .map(|g| self.combined_to_base(g))
            .collect();
        Ideal::new(self.base.ambient(), out).sum(self.base.relations())
    }
}

/// A section `T ∈ Hom_R(S, R)`, recorded by its values on `B`.
#[derive(Clone, Debug, Serialize)]
pub struct SectionT {
    #[serde(serialize_with = "ser_polys")]
    pub values: Vec<Poly>,
}

fn ser_polys<S: serde::Serializer>(v: &[Poly], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

impl SectionT {
    pub fn new(values: Vec<Poly>) -> Self {
        SectionT { values }
    }

    /// The dual basis functional `b_k^∨`.
    pub fn dual(cover: &CoverSpec, k: usize) -> Self {
        SectionT { values: cover.unit_coords(k) }
    }

    pub fn trace(cover: &CoverSpec) -> Self {
        SectionT { values: cover.basis.iter().map(|b| cover.trace_of(b)).collect() }
    }

    pub fn apply(&self, c: &[Poly]) -> Poly {
        let ring = self.values[0].ring();
        c.iter().zip(&self.values).fold(Poly::zero(ring), |acc, (x, v)| &acc + &(x * v))
    }

    pub fn apply_to(&self, cover: &CoverSpec, s: &Poly) -> Poly {
        cover.reduce_base(&self.apply(&cover.coords(s)))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// `T(S) = R`.
    pub fn is_surjective(&self, cover: &CoverSpec) -> bool {
        Ideal::new(cover.base.ambient(), self.values.clone()).sum(cover.base.relations()).is_unit()
    }
}

#[cfg(test)]
mod tests;
