use frobsig_core::frobenius::phi_q;
use frobsig_core::ideal::{monomials_of_degree, same_ideal};
use frobsig_core::{FpMatrix, Ideal, Monomial, Poly, PolyRing, PrimeField, Ring};
use proptest::prelude::*;

type Terms = Vec<(Vec<u32>, u32)>;

fn terms(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), 0u32..97), 0..=max_terms)
}

fn build(ring: &Ring, t: &Terms) -> Poly {
    Poly::from_terms(ring, t.iter().map(|(e, c)| (Monomial(e.clone()), *c % ring.p())).collect())
}

fn ring(p: u32, n: usize) -> Ring {
    let names = ["x", "y", "z", "w"];
    PolyRing::with_vars(p, &names[..n]).unwrap()
}

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(p in prime(), a in terms(3, 3, 4), b in terms(3, 3, 4), c in terms(3, 3, 4)) {
        let r = ring(p, 3);
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &Poly::one(&r), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn frobenius_is_additive_and_pulls_out_qth_powers(p in prime(), e in 1u32..=2, f in terms(2, 6, 5), g in terms(2, 2, 3), h in terms(2, 6, 5)) {
        let r = ring(p, 2);
        let q = r.field().q(e);
        prop_assume!(q <= 25);
        let (f, g, h) = (build(&r, &f), build(&r, &g), build(&r, &h));
        prop_assert_eq!(phi_q(&(&g.pow(q) * &f), q), &g * &phi_q(&f, q));
        prop_assert_eq!(phi_q(&(&f + &h), q), &phi_q(&f, q) + &phi_q(&h, q));
        // (a + b)^q = a^q + b^q
        prop_assert_eq!((&f + &h).pow(q), &f.pow(q) + &h.pow(q));
        prop_assert_eq!(f.pow(q), f.frobenius_power(q));
    }

    #[test]
    fn rank_plus_nullity(p in prime(), rows in 1usize..6, cols in 1usize..7, seed in prop::collection::vec(-50i64..50, 42)) {
        let f = PrimeField::new(p).unwrap();
        let data: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * 7..i * 7 + cols].to_vec()).collect();
        let m = FpMatrix::from_rows(&f, &data);
        let ker = m.kernel_basis();
        prop_assert_eq!(m.rank() + ker.len(), cols);
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn solve_returns_a_solution(p in prime(), rows in 1usize..6, cols in 1usize..6, seed in prop::collection::vec(-50i64..50, 36), x in prop::collection::vec(0u32..97, 6)) {
        let f = PrimeField::new(p).unwrap();
        let data: Vec<Vec<i64>> = (0..rows).map(|i| seed[i * 6..i * 6 + cols].to_vec()).collect();
        let m = FpMatrix::from_rows(&f, &data);
        let x: Vec<u32> = x[..cols].iter().map(|&v| v % p).collect();
        let b = m.mul_vec(&x);
        let sol = m.solve_linear(&b).expect("consistent system");
        prop_assert_eq!(m.mul_vec(&sol), b);
    }
}

/// Homogeneous membership by linear algebra in degree `d`.
fn member_by_span(r: &Ring, gens: &[Poly], f: &Poly, d: u64) -> bool {
    let basis = monomials_of_degree(r.nvars(), d);
    let col = |p: &Poly| -> Vec<u32> { basis.iter().map(|m| p.coefficient(m)).collect() };
    let mut m = FpMatrix::zeros(r.field(), 0, basis.len());
    for g in gens {
        let dg = g.degree().unwrap();
        if dg > d {
            continue;
        }
        for mono in monomials_of_degree(r.nvars(), d - dg) {
            m.push_row(&col(&g.mul_monomial(&mono, 1)));
        }
    }
    let before = m.rank();
    m.push_row(&col(f));
    m.rank() == before
}

fn homogeneous(r: &Ring, t: &Terms, d: u64) -> Poly {
    build(r, t).component(&vec![1; r.nvars()], d as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn normal_form_membership_matches_linear_algebra(
        p in prime(),
        g1 in terms(3, 2, 3),
        g2 in terms(3, 2, 3),
        h1 in terms(3, 2, 3),
        h2 in terms(3, 2, 3),
        noise in terms(3, 4, 2),
        add_noise in any::<bool>(),
    ) {
        let r = ring(p, 3);
        let gens: Vec<Poly> = [homogeneous(&r, &g1, 2), homogeneous(&r, &g2, 2)].into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let ideal = Ideal::new(&r, gens.clone());
        let mut f = Poly::zero(&r);
        for (g, h) in gens.iter().zip([&h1, &h2]) {
            f = &f + &(g * &homogeneous(&r, h, 2));
        }
        if add_noise {
            f = &f + &homogeneous(&r, &noise, 4);
        }
        prop_assert_eq!(ideal.contains(&f), member_by_span(&r, &gens, &f, 4));
        if !add_noise {
            prop_assert!(ideal.contains(&f));
        }
    }

    #[test]
    fn colon_times_divisor_lands_in_ideal(p in prime(), a in terms(2, 3, 3), b in terms(2, 3, 3), c in terms(2, 2, 2)) {
        let r = ring(p, 2);
        let i = Ideal::new(&r, vec![build(&r, &a), build(&r, &b)]);
        let j = Ideal::new(&r, vec![build(&r, &c), Poly::var(&r, 0)]);
        let col = i.colon(&j);
        prop_assert!(col.product(&j).gens().iter().all(|g| i.contains(g)));
        prop_assert!(col.contains_ideal(&i));
    }

    #[test]
    fn bracket_powers_compose(p in prime(), a in terms(2, 2, 3), b in terms(2, 2, 3)) {
        let r = ring(p, 2);
        let i = Ideal::new(&r, vec![build(&r, &a), build(&r, &b)]);
        let q = p as u64;
        prop_assert!(same_ideal(&i.bracket_power(q).bracket_power(q), &i.bracket_power(q * q)));
    }

    #[test]
    fn colength_counts_standard_monomials(p in prime(), gens in prop::collection::vec(prop::collection::vec(0u32..5, 3), 0..4), q in 2u32..5) {
        let r = ring(p, 3);
        let mut polys: Vec<Poly> = (0..3).map(|i| Poly::monomial(&r, Monomial::var(3, i, q), 1)).collect();
        polys.extend(gens.iter().map(|e| Poly::monomial(&r, Monomial(e.clone()), 1)));
        let i = Ideal::new(&r, polys);
        let mut count = 0u64;
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    let m = Monomial(vec![a, b, c]);
                    if !gens.iter().any(|g| Monomial(g.clone()).divides(&m)) {
                        count += 1;
                    }
                }
            }
        }
        prop_assert_eq!(i.colength(), Some(count));
    }
}
