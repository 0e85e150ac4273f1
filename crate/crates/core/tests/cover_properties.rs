use frobsig_core::covers::{divisor_check, ramification, transpose, CoverSpec, SectionT, TransposeTable};
use frobsig_core::frobenius::{fedder_fpure, splitting_number, CartierSpec};
use frobsig_core::oracle::{free_rank_oracle, splitting_exists};
use frobsig_core::{fixtures, Monomial, Poly, QuotientPresentation};
use proptest::prelude::*;

type Terms = Vec<(Vec<u32>, u32)>;

fn terms(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), 1u32..97), 0..=max_terms)
}

fn build(p: &QuotientPresentation, t: &Terms) -> Poly {
    let r = p.ambient();
    Poly::from_terms(r, t.iter().map(|(e, c)| (Monomial(e.clone()), *c % r.p())).collect())
}

fn covers() -> Vec<CoverSpec> {
    vec![fixtures::kummer().unwrap(), fixtures::veronese_2_2(3).unwrap(), fixtures::f2_cover().unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn norm_is_multiplicative(which in 0usize..3, a in terms(5, 2, 3), b in terms(5, 2, 3)) {
        let c = &covers()[which];
        let n = c.total().ambient().nvars();
        let cut = |t: &Terms| -> Terms { t.iter().map(|(e, k)| (e[..n].to_vec(), *k)).collect() };
        let s = c.total().relations().normal_form(&build(c.total(), &cut(&a)));
        let t = c.total().relations().normal_form(&build(c.total(), &cut(&b)));
        let lhs = c.norm_of(&(&s * &t));
        let rhs = c.reduce_base(&(&c.norm_of(&s) * &c.norm_of(&t)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn norm_and_trace_of_base_elements(which in 0usize..3, a in terms(4, 2, 3)) {
        let c = &covers()[which];
        let n = c.base().ambient().nvars();
        let t: Terms = a.iter().map(|(e, k)| (e[..n].to_vec(), *k)).collect();
        let r = build(c.base(), &t);
        let s = c.image_of(&r);
        let rank = c.rank() as u64;
        prop_assert_eq!(c.norm_of(&s), c.reduce_base(&r.pow(rank)));
        prop_assert_eq!(c.trace_of(&s), c.reduce_base(&r.scale((rank % c.base().p() as u64) as u32)));
    }

    #[test]
    fn transposer_agrees_with_divisor_check(e in 1u32..=2, a in terms(4, 3, 3)) {
        let c = fixtures::f2_cover().unwrap();
        let t = SectionT::trace(&c);
        let ram = ramification(&c, &t).unwrap();
        let table = TransposeTable::new(&c, &t, e);
        let a = build(c.base(), &a);
        let solved = transpose(&c, &ram, &table, &a);
        prop_assert_eq!(solved.is_some(), divisor_check(&c, &ram, &a, e).transposable);
        if let Some(w) = solved {
            prop_assert!(w.is_defined_on(c.total()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pairing_rank_matches_oracle_on_plane_curves(p in prop::sample::select(vec![2u32, 3]), d in 2u32..=3, c in prop::collection::vec(0u32..3, 4)) {
        let ring = fixtures::regular(p, &["x", "y"]).unwrap();
        let t: Terms = (0..=d).map(|i| (vec![i, d - i], c[i as usize] % p)).collect();
        let f = build(&ring, &t);
        prop_assume!(!f.is_zero());
        let pres = QuotientPresentation::new(ring.ambient(), vec![f]).unwrap();
        prop_assert_eq!(splitting_number(&pres, &CartierSpec::Full, 1).unwrap(), free_rank_oracle(&pres, 1).unwrap());
        prop_assert_eq!(fedder_fpure(&pres), splitting_exists(&pres).unwrap());
    }
}
