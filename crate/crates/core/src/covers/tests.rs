use super::*;
use crate::divisor::DivisorQ;
use crate::frobenius::phi_q;
use crate::rational::Q;

fn kummer() -> CoverSpec {
    let base = QuotientPresentation::parse(5, &["x"], &[]).unwrap();
    let total = QuotientPresentation::parse(5, &["y"], &[]).unwrap();
    let y = total.parse_poly("y").unwrap();
    CoverSpec::new(base, total.clone(), vec![&y * &y], vec![Poly::one(total.ambient()), y]).unwrap()
}

fn quadric_cone(p: u32) -> CoverSpec {
    let base = QuotientPresentation::parse(p, &["a", "b"], &[]).unwrap();
    let total = QuotientPresentation::parse(p, &["s", "t", "u"], &["s*u-t^2"]).unwrap();
    let g = |s: &str| total.parse_poly(s).unwrap();
    CoverSpec::new(base, total.clone(), vec![g("s"), g("u")], vec![g("1"), g("t")]).unwrap()
}

fn bp(c: &CoverSpec, s: &str) -> Poly {
    c.base().parse_poly(s).unwrap()
}

#[test]
fn kummer_table_trace_and_norm() {
    let c = kummer();
    assert_eq!(c.product_coords(1, 1), &vec![bp(&c, "x"), bp(&c, "0")]);
    let tr = SectionT::trace(&c);
    assert_eq!(tr.values, vec![bp(&c, "2"), bp(&c, "0")]);
    let y = c.total().parse_poly("y").unwrap();
    assert_eq!(c.norm_of(&y), bp(&c, "-x"));
    assert_eq!(c.norm_of(&Poly::one(c.total().ambient())), bp(&c, "1"));
    let mp = c.min_poly(&y).unwrap();
    assert_eq!(mp.coeffs(), &[bp(&c, "-x"), bp(&c, "0"), bp(&c, "1")]);
    assert_eq!(f_torsion_exponent(&c, &y), 2);
}

#[test]
fn kummer_ramification() {
    let c = kummer();
    let ram = ramification(&c, &SectionT::trace(&c)).unwrap();
    assert_eq!(ram.generator_label, "(y)^∨");
    assert_eq!(ram.rho.to_string(), "2*y");
    assert_eq!(ram.branch.to_string(), "div(x)");
    let own = ramification(&c, &SectionT::dual(&c, 1)).unwrap();
    assert!(own.rho.is_unit());
    assert!(own.ram.is_zero());
}

#[test]
fn kummer_divisor_check_and_pullback() {
    let c = kummer();
    let ram = ramification(&c, &SectionT::trace(&c)).unwrap();
    let chk = divisor_check(&c, &ram, &bp(&c, "x^4"), 1);
    assert!(chk.transposable);
    assert_eq!(chk.predicted, "div(y)");
    assert!(!divisor_check(&c, &ram, &bp(&c, "1"), 1).transposable);
    let ds = pullback_pair(&c, &ram, &DivisorQ::single(bp(&c, "x"), Q::new(1, 4)));
    assert_eq!(ds.to_string(), "-1/2 div(y)");
    assert!(pullback_effective(&c, &ds, 2).iter().all(|(_, ok)| !ok));
}

#[test]
fn transposer_agrees_with_divisor_check() {
    let c = kummer();
    for t in [SectionT::trace(&c), SectionT::dual(&c, 1)] {
        let ram = ramification(&c, &t).unwrap();
        for e in 1..=2 {
            let table = TransposeTable::new(&c, &t, e);
            for k in 0..8 {
                let a = bp(&c, &format!("x^{k}"));
                let solved = transpose(&c, &ram, &table, &a);
                assert_eq!(solved.is_some(), divisor_check(&c, &ram, &a, e).transposable, "e={e} k={k}");
            }
        }
    }
}

#[test]
fn transpose_satisfies_the_defining_identity() {
    let c = kummer();
    let t = SectionT::dual(&c, 1);
    let ram = ramification(&c, &t).unwrap();
    let table = TransposeTable::new(&c, &t, 1);
    let a = bp(&c, "1");
    let w = transpose(&c, &ram, &table, &a).unwrap();
    assert!(w.u.is_unit() || !w.u.is_zero());
    let rt = c.total().ambient();
    for s_exp in 0..7u64 {
        for s2 in c.basis() {
            let s = Poly::var(rt, 0).pow(s_exp);
            let lhs = phi_q(&(&a * &t.apply_to(&c, &(&s * &s2.pow(5)))), 5);
            let rhs = t.apply_to(&c, &(&w.apply(&s) * s2));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn quadric_cone_veronese_section() {
    let c = quadric_cone(5);
    let one = SectionT::dual(&c, 0);
    let ram = ramification(&c, &one).unwrap();
    assert_eq!(ram.rho.to_string(), "t");
    assert_eq!(ram.branch.to_string(), "div(a) + div(b)");
    let delta = DivisorQ::single(bp(&c, "a*b"), Q::new(1, 2));
    // Δ* = (1/2)div(su) - div(t) is zero on S only; its Fedder ideals are
    // those of the full algebra.
    let ds = pullback_pair(&c, &ram, &delta);
    for e in 1..=2 {
        let pair = crate::frobenius::fedder_data(&crate::frobenius::CartierSpec::pair(ds.clone()), c.total(), e).unwrap();
        let full = crate::frobenius::fedder_data(&crate::frobenius::CartierSpec::Full, c.total(), e).unwrap();
        assert_eq!(pair.u, full.u);
    }
    assert_eq!(section_precondition_failure(&c, &one), None);
    let tr = SectionT::trace(&c);
    assert_eq!(tr.values, vec![bp(&c, "2"), bp(&c, "0")]);
}

#[test]
fn closure_failure_names_the_product() {
    let base = QuotientPresentation::parse(5, &["x"], &[]).unwrap();
    let total = QuotientPresentation::parse(5, &["y"], &[]).unwrap();
    let y = total.parse_poly("y").unwrap();
    let err = CoverSpec::new(base, total.clone(), vec![y.pow(3)], vec![Poly::one(total.ambient()), y]).unwrap_err();
    assert!(matches!(err, Error::BasisDoesNotClose(_) | Error::InvalidCover(_)), "{err}");
}

#[test]
fn contraction_by_elimination() {
    let c = kummer();
    let j = Ideal::new(c.total().ambient(), vec![c.total().parse_poly("y").unwrap()]);
    assert_eq!(c.contract(&j), Ideal::new(c.base().ambient(), vec![bp(&c, "x")]));
}
