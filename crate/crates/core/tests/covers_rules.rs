use frobsig_core::covers::*;
use frobsig_core::divisor::DivisorQ;
use frobsig_core::fixtures;
use frobsig_core::frobenius::CartierSpec;
use frobsig_core::{Ideal, Poly, Q};

#[test]
fn f2_trace_is_dual_of_one_and_rho_has_torsion_two() {
    let c = fixtures::f2_cover().unwrap();
    let tr = SectionT::trace(&c);
    assert_eq!(tr.values, SectionT::dual(&c, 0).values);
    let ram = ramification(&c, &tr).unwrap();
    assert_eq!(ram.rho, c.total().parse_poly("x^2+y*z").unwrap());
    assert_eq!(f_torsion_exponent(&c, &ram.rho), 2);
    let eps = c.base().parse_poly("y^3+u*v").unwrap();
    assert_eq!(ram.branch, DivisorQ::single(eps, Q::from_integer(2)));
    // e = 1, a = ε: ρ divides ε∘f
    let chk = divisor_check(&c, &ram, &c.base().parse_poly("y^3+u*v").unwrap(), 1);
    assert!(chk.transposable);
}

#[test]
fn f2_sandwich_and_sharpened_equality() {
    let c = fixtures::f2_cover().unwrap();
    let r = verify_sandwich(&c, &SectionT::trace(&c), 2, false).unwrap();
    assert_eq!(r.torsion_exponent, 2);
    assert_eq!(r.c, "3/2");
    assert!(r.ok);
    for row in &r.rows {
        assert!(row.lower && row.upper, "e = {}", row.e);
        assert!(row.equals_lower, "C^T = C^(div eps) at e = {}", row.e);
    }
}

#[test]
fn kummer_sandwich_collapses() {
    let c = fixtures::kummer().unwrap();
    let r = verify_sandwich(&c, &SectionT::trace(&c), 2, true).unwrap();
    assert_eq!(r.c, "1");
    assert!(r.ok);
    assert!(r.rows.iter().all(|row| row.equals_lower && row.equals_upper));
    assert_eq!(r.inequality_holds, Some(true));
}

#[test]
fn veronese_signature_rule() {
    let c = fixtures::veronese_2_2(5).unwrap();
    let one = SectionT::dual(&c, 0);
    let delta = DivisorQ::single(c.base().parse_poly("a*b").unwrap(), Q::new(1, 2));
    let r = verify_fsig_rule(&c, &one, &delta, 2).unwrap();
    assert!(r.preconditions_ok, "{:?}", r.violated);
    assert!(r.ok, "residual {:?} tolerance {:?}", r.residual, r.tolerance);
    let up = r.upstairs.unwrap();
    assert_eq!(up.rows.iter().map(|x| x.a_e).collect::<Vec<_>>(), vec![13, 313]);
}

#[test]
fn sigma_rule_on_kummer() {
    let c = fixtures::kummer().unwrap();
    let x = c.base().parse_poly("x").unwrap();
    let own = verify_sigma_rule(&c, &SectionT::dual(&c, 1), &DivisorQ::single(x.clone(), Q::new(1, 2)), 2).unwrap();
    assert!(own.equal && own.ok);
    let tr = verify_sigma_rule(&c, &SectionT::trace(&c), &DivisorQ::single(x, Q::new(3, 4)), 2).unwrap();
    assert!(tr.contained && tr.ok);
}

#[test]
fn tau_rule_needs_effective_pullback() {
    let c = fixtures::kummer().unwrap();
    let x = c.base().parse_poly("x").unwrap();
    let r = verify_tau_rule(&c, &SectionT::trace(&c), &DivisorQ::single(x, Q::new(1, 4)), 2);
    assert!(r.is_err());
}

#[test]
fn kummer_splitting_ratio_residual() {
    let c = fixtures::kummer().unwrap();
    let x = c.base().parse_poly("x").unwrap();
    let r = verify_sp_rule(&c, &SectionT::trace(&c), &CartierSpec::pair(DivisorQ::single(x, Q::from_integer(1))), 3).unwrap();
    assert!(r.equal);
    assert_eq!(r.residue_degree, Some(1));
    assert!(r.residual.unwrap() < 1e-9);
    let full = verify_sp_rule(&c, &SectionT::dual(&c, 1), &CartierSpec::Full, 3).unwrap();
    assert_eq!(full.residue_degree, Some(2));
    assert!(full.equal);
}

#[test]
fn veronese_b_section_rejected() {
    let c = fixtures::veronese_b(3).unwrap();
    let t = SectionT::dual(&c, 1);
    assert_eq!(section_precondition_failure(&c, &t).as_deref(), Some("T(n) ⊄ m, witness xy"));
    assert_eq!(ramification(&c, &t).unwrap().rho, Poly::one(c.total().ambient()).scale(1));
}

#[test]
fn transposes_satisfy_duality_on_the_quadric_cone() {
    let c = fixtures::veronese_2_2(5).unwrap();
    let t = SectionT::dual(&c, 0);
    let ram = ramification(&c, &t).unwrap();
    let table = TransposeTable::new(&c, &t, 1);
    let a = c.base().parse_poly("a^2*b^2").unwrap();
    let w = transpose(&c, &ram, &table, &a).expect("transposable");
    assert!(w.is_defined_on(c.total()));
    let rt = c.total().ambient();
    let rels = c.total().relations();
    for s in ["1", "t", "s*t", "s^3*u^2", "t^4*u"] {
        let s = c.total().parse_poly(s).unwrap();
        for b in c.basis() {
            let lhs = frobsig_core::frobenius::phi_q(&(&a * &t.apply_to(&c, &(&s * &b.pow(5)))), 5);
            let rhs = t.apply_to(&c, &rels.normal_form(&(&w.apply(&s) * b)));
            assert_eq!(lhs, rhs);
        }
    }
    let _ = Ideal::unit(rt);
}
