use malcev_forge::grouplaw::{
    check_malcev, lemma_identity_check, malcev_words, nilpotency_class, GroupElement,
};
use malcev_forge::ideal::build_ideal_c;
use malcev_forge::matrix::IntMatrix;
use malcev_forge::poly::{Monomial, Polynomial};
use malcev_forge::quotient::QuotientAlgebra;
use malcev_forge::verify::GnGroup;
use num_bigint::BigInt;
use proptest::prelude::*;

const NVARS: usize = 3;

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..4, NVARS), -6i64..=6), 0..6).prop_map(|terms| {
        Polynomial::from_terms(
            NVARS,
            terms.into_iter().map(|(e, c)| (Monomial::new(e), BigInt::from(c))),
        )
        .unwrap()
    })
}

fn point() -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec((-4i64..=4).prop_map(BigInt::from), NVARS)
}

fn group33() -> GnGroup {
    GnGroup::new(3, 3).unwrap()
}

/// An element of `G_3` from generator exponents and a vector.
fn element(group: &GnGroup, ks: &[i64], a: &[i64]) -> GroupElement {
    let t = group
        .generators()
        .iter()
        .zip(ks)
        .fold(IntMatrix::identity(group.dim()), |acc, (g, &k)| &acc * &g.pow_signed(k).unwrap());
    GroupElement::new(t, a.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
}

fn elem_strategy() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (prop::collection::vec(-3i64..=3, 3), prop::collection::vec(-9i64..=9, 11))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p - &p, Polynomial::zero(NVARS));
        prop_assert_eq!(&p * &Polynomial::one(NVARS), p.clone());
    }

    #[test]
    fn evaluation_is_a_ring_map(p in poly(), q in poly(), x in point()) {
        let (pv, qv) = (p.eval(&x).unwrap(), q.eval(&x).unwrap());
        prop_assert_eq!((&p * &q).eval(&x).unwrap(), &pv * &qv);
        prop_assert_eq!((&p + &q).eval(&x).unwrap(), pv + qv);
    }

    #[test]
    fn shift_is_a_ring_map(p in poly(), q in poly(), x in point()) {
        prop_assert_eq!((&p * &q).shift_substitute(), &p.shift_substitute() * &q.shift_substitute());
        prop_assert_eq!((&p + &q).shift_substitute(), &p.shift_substitute() + &q.shift_substitute());
        // shift(p)(x) = p(x + 1)
        let moved: Vec<BigInt> = x.iter().map(|v| v + 1).collect();
        prop_assert_eq!(p.shift_substitute().eval(&x).unwrap(), p.eval(&moved).unwrap());
    }

    #[test]
    fn text_round_trip(p in poly()) {
        prop_assert_eq!(Polynomial::parse(&p.to_string(), NVARS).unwrap(), p);
    }

    #[test]
    fn normal_form_is_compatible(p in poly(), q in poly(), c in 3u32..=4) {
        let ideal = build_ideal_c(NVARS as u32, c).unwrap();
        let nf = |x: &Polynomial| ideal.normal_form(x).unwrap();
        prop_assert_eq!(nf(&nf(&p)), nf(&p));
        prop_assert_eq!(nf(&(&p * &q)), nf(&(&nf(&p) * &nf(&q))));
        prop_assert_eq!(nf(&(&p + &q)), &nf(&p) + &nf(&q));
        prop_assert!(ideal.contains(&(&p - &nf(&p))).unwrap());
    }

    #[test]
    fn regular_representation_is_faithful(p in poly(), q in poly()) {
        let alg = QuotientAlgebra::build(3, 3).unwrap();
        let (mp, mq) = (alg.mult_matrix(&p).unwrap(), alg.mult_matrix(&q).unwrap());
        prop_assert_eq!(alg.mult_matrix(&(&p * &q)).unwrap(), &mp * &mq);
        // row vector of p times M(q) is the class of pq
        let row = mq.vec_mul(&alg.coords(&p).unwrap()).unwrap();
        prop_assert_eq!(row, alg.coords(&(&p * &q)).unwrap());
        prop_assert_eq!(alg.from_coords(&alg.coords(&p).unwrap()).unwrap(), alg.ideal().normal_form(&p).unwrap());
    }

    #[test]
    fn group_axioms(x in elem_strategy(), y in elem_strategy(), z in elem_strategy()) {
        let g = group33();
        let (x, y, z) = (element(&g, &x.0, &x.1), element(&g, &y.0, &y.1), element(&g, &z.0, &z.1));
        let xy_z = x.mul(&y).unwrap().mul(&z).unwrap();
        let x_yz = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        prop_assert!(x.mul(&x.inverse()).unwrap().is_identity());
        prop_assert!(x.inverse().mul(&x).unwrap().is_identity());
        prop_assert_eq!(x.mul(&GroupElement::identity(11)).unwrap(), x.clone());
        prop_assert_eq!(x.pow(3), x.mul(&x).unwrap().mul(&x).unwrap());
        prop_assert_eq!(x.pow(-2), x.inverse().pow(2));
    }

    #[test]
    fn criterion_matches_word_evaluation(x in elem_strategy(), y in elem_strategy(), c in 3u32..=4) {
        let g = group33();
        let (x, y) = (element(&g, &x.0, &x.1), element(&g, &y.0, &y.1));
        let out = lemma_identity_check(c, x.matrix(), y.matrix(), x.vector(), y.vector()).unwrap();
        prop_assert!(out.agrees(), "{:?}", out);
        prop_assert_eq!(out.direct, check_malcev(c, &x, &y).unwrap());
    }

    #[test]
    fn t_satisfies_the_law(i in 0usize..4, j in 0usize..4, a in prop::collection::vec(-9i64..=9, 11), b in prop::collection::vec(-9i64..=9, 11)) {
        let g = group33();
        let reps = g.coset_reps();
        let v = |w: &[i64]| w.iter().map(|&k| BigInt::from(k)).collect::<Vec<_>>();
        let x = GroupElement::new(reps[i].clone(), v(&a)).unwrap();
        let y = GroupElement::new(reps[j].clone(), v(&b)).unwrap();
        prop_assert!(check_malcev(3, &x, &y).unwrap());
    }

    #[test]
    fn nilpotency_class_ignores_generator_order(perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle()) {
        let g = GnGroup::new(4, 3).unwrap();
        let mats: Vec<IntMatrix> = perm.iter().map(|&i| g.generators()[i].clone()).collect();
        prop_assert_eq!(nilpotency_class(&mats, g.dim()), nilpotency_class(g.generators(), g.dim()));
    }
}

#[test]
fn malcev_word_shapes() {
    assert!(malcev_words(0).is_err());
    for c in 1..=8 {
        let w = malcev_words(c).unwrap();
        assert_eq!(w.alpha.len(), 1 << c);
        assert_eq!(w.beta.len(), 1 << c);
        assert_eq!(w.alpha.weights(), w.beta.weights());
        assert_ne!(w.alpha, w.beta);
    }
    assert_eq!(malcev_words(2).unwrap().alpha.to_string(), "xyyx");
}

#[test]
fn nilpotency_class_examples() {
    assert_eq!(nilpotency_class(GnGroup::new(3, 3).unwrap().generators(), 11), 4);
    assert_eq!(nilpotency_class(&[IntMatrix::identity(4)], 4), 1);
    let q = QuotientAlgebra::build_unchecked(1, 3).unwrap();
    assert_eq!(nilpotency_class(&q.generators(), q.dim()), 3);
}
