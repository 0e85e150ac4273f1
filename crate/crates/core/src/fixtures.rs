//! Presentations and covers used by the regression suite and the CLI.

use crate::covers::CoverSpec;
use crate::error::Result;
use crate::poly::Poly;
use crate::quotient::QuotientPresentation;

fn polys(p: &QuotientPresentation, texts: &[&str]) -> Result<Vec<Poly>> {
    texts.iter().map(|t| p.parse_poly(t)).collect()
}

fn cover(
    base: QuotientPresentation,
    total: QuotientPresentation,
    images: &[&str],
    basis: &[&str],
) -> Result<CoverSpec> {
    let images = polys(&total, images)?;
    let basis = polys(&total, basis)?;
    CoverSpec::new(base, total, images, basis)
}

/// `F_p[x_1..x_n]`.
pub fn regular(p: u32, vars: &[&str]) -> Result<QuotientPresentation> {
    QuotientPresentation::parse(p, vars, &[])
}

/// `x^3 + y^3 + z^3`.
pub fn fermat_cubic(p: u32) -> Result<QuotientPresentation> {
    QuotientPresentation::parse(p, &["x", "y", "z"], &["x^3+y^3+z^3"])
}

/// `F_2[x,y,z,u,v]/(x^3 + y^3 + xyz + uv)`.
pub fn f2_hypersurface() -> Result<QuotientPresentation> {
    QuotientPresentation::parse(2, &["x", "y", "z", "u", "v"], &["x^3+y^3+x*y*z+u*v"])
}

/// `V_{2,2} = F_p[s,t,u]/(su - t^2)`.
pub fn quadric_cone(p: u32) -> Result<QuotientPresentation> {
    QuotientPresentation::parse(p, &["s", "t", "u"], &["s*u-t^2"])
}

/// `V_{2,3}`, the cone over the twisted cubic.
pub fn twisted_cubic_cone(p: u32) -> Result<QuotientPresentation> {
    QuotientPresentation::parse(
        p,
        &["v0", "v1", "v2", "v3"],
        &["v0*v2-v1^2", "v1*v3-v2^2", "v0*v3-v1*v2"],
    )
}

/// `F_5[x] → F_5[y]`, `x ↦ y^2`, basis `{1, y}`.
pub fn kummer() -> Result<CoverSpec> {
    cover(regular(5, &["x"])?, regular(5, &["y"])?, &["y^2"], &["1", "y"])
}

/// `F_p[a,b] → V_{2,2}`, `(a,b) ↦ (s,u)`, basis `{1, t}`.
pub fn veronese_2_2(p: u32) -> Result<CoverSpec> {
    cover(regular(p, &["a", "b"])?, quadric_cone(p)?, &["s", "u"], &["1", "t"])
}

/// `F_p[a,b] → V_{2,3}`, `(a,b) ↦ (v0,v3)`, basis `{1, v1, v2}`.
pub fn veronese_2_3(p: u32) -> Result<CoverSpec> {
    cover(regular(p, &["a", "b"])?, twisted_cubic_cone(p)?, &["v0", "v3"], &["1", "v1", "v2"])
}

/// `F_p[x^2, y^2] → F_p[x^2, xy, y^2]` with the variables named after the
/// monomials they stand for.
pub fn veronese_b(p: u32) -> Result<CoverSpec> {
    let total = QuotientPresentation::parse(p, &["xx", "xy", "yy"], &["xx*yy-xy^2"])?;
    cover(regular(p, &["a", "b"])?, total, &["xx", "yy"], &["1", "xy"])
}

/// `F_2[y,z,u,v] → F_2[x,y,z,u,v]/(x^3 + y^3 + xyz + uv)`, basis `{1, x, x^2}`.
pub fn f2_cover() -> Result<CoverSpec> {
    cover(
        regular(2, &["y", "z", "u", "v"])?,
        f2_hypersurface()?,
        &["y", "z", "u", "v"],
        &["1", "x", "x^2"],
    )
}

/// Small graded presentations (ambient dimension at most 3, `p ≤ 3`), named.
pub fn small_presentations() -> Result<Vec<(String, QuotientPresentation)>> {
    let mut out = Vec::new();
    for p in [2u32, 3] {
        out.push((format!("regular-2-p{p}"), regular(p, &["x", "y"])?));
        out.push((format!("regular-3-p{p}"), regular(p, &["x", "y", "z"])?));
        out.push((format!("quadric-cone-p{p}"), quadric_cone(p)?));
        out.push((format!("fermat-cubic-p{p}"), fermat_cubic(p)?));
        out.push((format!("node-p{p}"), QuotientPresentation::parse(p, &["x", "y"], &["x*y"])?));
        out.push((format!("cusp-p{p}"), QuotientPresentation::parse(p, &["x", "y"], &["x^2+y^3"])?));
        out.push((format!("double-line-p{p}"), QuotientPresentation::parse(p, &["x", "y"], &["x^2"])?));
        out.push((
            format!("coordinate-axes-p{p}"),
            QuotientPresentation::parse(p, &["x", "y", "z"], &["x*y", "x*z", "y*z"])?,
        ));
        out.push((format!("a2-p{p}"), QuotientPresentation::parse(p, &["x", "y", "z"], &["x*y-z^3"])?));
    }
    Ok(out)
}
