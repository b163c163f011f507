//! Randomized checks of the algebraic and duality properties.

use num_traits::{One, Signed, Zero};
use pcoherence::bernstein::{bernstein_generator, to_bernstein_form};
use pcoherence::coherence::{hierarchy, lower_prevision, subset_sum_partitions, AssessmentSet};
use pcoherence::kv_cone::{
    cone_membership, pullup_epsilon, simplex_generators, simplex_membership, Certificate,
    SemiAlgebraicDomain,
};
use pcoherence::moment::{bell_state, DiracMixture};
use pcoherence::polynomial::{compositions, indices_up_to, int, rat};
use pcoherence::{Error, MultiIndex, Polynomial, Rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn coefficient() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn polynomial(n_vars: usize, degree: u32) -> impl Strategy<Value = Polynomial> {
    let indices = indices_up_to(n_vars, degree);
    prop::collection::vec((prop::sample::select(indices), coefficient()), 0..8)
        .prop_map(move |terms| Polynomial::from_terms(n_vars, terms).unwrap())
}

fn sized_polynomial(max_vars: usize, max_degree: u32) -> impl Strategy<Value = (Polynomial, u32)> {
    (1..=max_vars, 0..=max_degree)
        .prop_flat_map(move |(n, deg)| (polynomial(n, deg), deg..=max_degree))
}

/// A random point of the closed simplex with small denominators.
fn simplex_point(rng: &mut ChaCha8Rng, n_vars: usize) -> Vec<Rational> {
    let w: Vec<i64> = (0..=n_vars).map(|_| rng.gen_range(0..20)).collect();
    let total = w.iter().sum::<i64>().max(1);
    w[..n_vars].iter().map(|&x| rat(x, total)).collect()
}

fn simplex_point_strategy(n_vars: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(0i64..20, n_vars + 1).prop_map(move |w| {
        let total = w.iter().sum::<i64>().max(1);
        w[..n_vars].iter().map(|&x| rat(x, total)).collect()
    })
}

/// `Σ u_α · generator_α` for random nonnegative weights.
fn cone_element(n_vars: usize, d: u32) -> impl Strategy<Value = Polynomial> {
    let count = compositions(n_vars + 1, d).len();
    prop::collection::vec((0i64..4, 1i64..3), count).prop_map(move |ws| {
        let cert = Certificate::from_weights(
            d,
            compositions(n_vars + 1, d)
                .into_iter()
                .zip(ws)
                .map(|(a, (n, den))| (a, rat(n, den))),
        )
        .unwrap();
        cert.expand_simplex(n_vars).unwrap()
    })
}

fn mixture(n_vars: usize) -> impl Strategy<Value = DiracMixture> {
    prop::collection::vec((1i64..5, simplex_point_strategy(n_vars)), 1..4).prop_map(|atoms| {
        let total: i64 = atoms.iter().map(|(w, _)| w).sum();
        DiracMixture::new(atoms.into_iter().map(|(w, p)| (rat(w, total), p)).collect()).unwrap()
    })
}

fn consistent_set(n_vars: usize) -> AssessmentSet {
    // satisfied at the vertex θ₁ = 1
    let g = &Polynomial::var(n_vars, 0) - &Polynomial::constant(n_vars, rat(1, 4));
    AssessmentSet::new(n_vars, vec![g]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bernstein_round_trip((p, d) in sized_polynomial(3, 6)) {
        let form = to_bernstein_form(&p, d).unwrap();
        prop_assert_eq!(form.expand(), p.clone());
        let up = form.elevate(d + 1).unwrap();
        prop_assert_eq!(up.expand(), p);
    }

    #[test]
    fn partition_of_unity(n in 1usize..=3, d in 0u32..=5) {
        let form = to_bernstein_form(&Polynomial::one(n), d).unwrap();
        for (alpha, _) in form.coefficients() {
            prop_assert!(form.normalized_coefficient(alpha).is_one());
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        p in polynomial(2, 3),
        q in polynomial(2, 3),
        x in simplex_point_strategy(2),
    ) {
        let px = p.eval(&x).unwrap();
        let qx = q.eval(&x).unwrap();
        prop_assert_eq!((&p + &q).eval(&x).unwrap(), &px + &qx);
        prop_assert_eq!((&p * &q).eval(&x).unwrap(), &px * &qx);
        prop_assert_eq!((-&p).eval(&x).unwrap(), -px);
    }

    #[test]
    fn generators_are_nonnegative(n in 1usize..=3, d in 0u32..=4, x in simplex_point_strategy(3)) {
        let x = &x[..n];
        for alpha in compositions(n + 1, d) {
            let g = bernstein_generator(&alpha, n, d).unwrap();
            prop_assert!(!g.eval(x).unwrap().is_negative());
        }
    }

    #[test]
    fn completeness_on_generated_cones(
        (n, d, g) in (1usize..=2, 1u32..=3)
            .prop_flat_map(|(n, d)| (Just(n), Just(d), cone_element(n, d))),
        shift in 0i64..3,
    ) {
        let g = &g + &Polynomial::constant(n, int(shift));
        let cert = simplex_membership(&g, d).unwrap();
        prop_assert!(cert.is_some());
        prop_assert_eq!(cert.unwrap().expand_simplex(n).unwrap(), g.clone());
        let kv = cone_membership(&g, &SemiAlgebraicDomain::simplex(n), d).unwrap();
        prop_assert!(kv.is_some());
    }

    #[test]
    fn kv_on_the_simplex_matches_the_sign_check(p in polynomial(2, 2), d in 2u32..=3) {
        let simple = simplex_membership(&p, d).unwrap().is_some();
        let kv = cone_membership(&p, &SemiAlgebraicDomain::simplex(2), d).unwrap().is_some();
        prop_assert_eq!(simple, kv);
    }

    #[test]
    fn hierarchy_is_monotone(p in polynomial(2, 2)) {
        let rows = hierarchy(&p, &AssessmentSet::empty(2), 2, 5).unwrap();
        for w in rows.windows(2) {
            prop_assert!(w[0].1 <= w[1].1);
        }
    }

    #[test]
    fn pullup_is_monotone_and_tight(p in polynomial(2, 3), d in 3u32..=5) {
        let e = pullup_epsilon(&p, d).unwrap();
        prop_assert!(pullup_epsilon(&p, d + 1).unwrap() <= e);
        let lifted = &p + &Polynomial::constant(2, e.clone());
        prop_assert!(simplex_membership(&lifted, d).unwrap().is_some());
        if e.is_positive() {
            let below = &lifted - &Polynomial::constant(2, rat(1, 1000) * &e);
            prop_assert!(simplex_membership(&below, d).unwrap().is_none());
        }
    }

    #[test]
    fn prevision_agrees_with_membership(p in polynomial(2, 2), d in 2u32..=3) {
        let v = lower_prevision(&p, &AssessmentSet::empty(2), d).unwrap().value;
        prop_assert_eq!(!v.is_negative(), simplex_membership(&p, d).unwrap().is_some());
    }

    #[test]
    fn linearity_of_expectation(p in polynomial(3, 2), q in polynomial(3, 2), a in coefficient(), b in coefficient()) {
        let l = bell_state();
        let lhs = l.expectation(&(&p.scale(&a) + &q.scale(&b))).unwrap();
        prop_assert_eq!(lhs, a * l.expectation(&p).unwrap() + b * l.expectation(&q).unwrap());
    }

    #[test]
    fn mixtures_are_valid_states(m in mixture(3), d in 1u32..=3) {
        prop_assert!(m.moments(d).unwrap().is_valid());
    }

    #[test]
    fn weak_duality(g in cone_element(3, 2), m in mixture(3)) {
        prop_assert!(!bell_state().expectation(&g).unwrap().is_negative());
        prop_assert!(!m.moments(2).unwrap().expectation(&g).unwrap().is_negative());
    }

    #[test]
    fn conditional_value_identity(m in mixture(2), q in polynomial(2, 1), which in 0usize..6) {
        let l = m.moments(2).unwrap();
        let pi = subset_sum_partitions(2)[which].clone();
        match l.conditional_value(&q, &pi) {
            Ok(v) => {
                let shifted = &q - &Polynomial::constant(2, v);
                prop_assert!(l.expectation(&(&shifted * &pi)).unwrap().is_zero());
            }
            Err(e) => prop_assert_eq!(e, Error::ZeroLikelihood),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn prevision_axioms(
        p in polynomial(2, 2),
        q in polynomial(2, 2),
        c in coefficient(),
        k in (1i64..6, 1i64..4).prop_map(|(n, d)| rat(n, d)),
        with_set in any::<bool>(),
    ) {
        let set = if with_set { consistent_set(2) } else { AssessmentSet::empty(2) };
        let d = 2;
        let lp = |x: &Polynomial| lower_prevision(x, &set, d).unwrap().value;
        let base = lp(&p);
        prop_assert_eq!(lp(&(&p + &Polynomial::constant(2, c.clone()))), &base + &c);
        prop_assert_eq!(lp(&p.scale(&k)), &base * &k);
        prop_assert!(lp(&(&p + &q)) >= &base + lp(&q));
    }
}

#[test]
fn certified_gambles_are_nonnegative_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut certified = 0;
    for _ in 0..40 {
        let n = rng.gen_range(1..=3);
        let d = rng.gen_range(1..=4u32);
        // shifted random combination, so that both outcomes occur
        let mut g = Polynomial::constant(n, rat(rng.gen_range(0..4), 2));
        for (_, gen) in simplex_generators(n, d) {
            let w = rat(rng.gen_range(-1..6), rng.gen_range(1..4));
            g = &g + &gen.scale(&w);
        }
        if simplex_membership(&g, d).unwrap().is_none() {
            continue;
        }
        certified += 1;
        for _ in 0..1000 {
            let x = simplex_point(&mut rng, n);
            assert!(!g.eval(&x).unwrap().is_negative(), "{g} at {x:?}");
        }
    }
    assert!(certified >= 5, "only {certified} certified samples");
}

#[test]
fn sure_loss_makes_every_prevision_unbounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let set = AssessmentSet::new(2, vec![Polynomial::constant(2, rat(-1, 2))]).unwrap();
    for _ in 0..5 {
        let terms: Vec<(MultiIndex, Rational)> = indices_up_to(2, 2)
            .into_iter()
            .map(|a| (a, rat(rng.gen_range(-5..=5), rng.gen_range(1..=3))))
            .collect();
        let q = Polynomial::from_terms(2, terms).unwrap();
        assert_eq!(lower_prevision(&q, &set, 2).unwrap_err(), Error::Unbounded);
    }
}
