//! Cross-module invariants: algebra laws on random inputs and the
//! annihilator calculus identities of the self-injective examples.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ringlab::engine::{mul, Element, RingEngine};
use ringlab::gf2::Subspace;
use ringlab::ideal::{ann, ann_of_slices, dann_check, ideal_intersection, ideal_span, ideal_sum};
use ringlab::ordinal::{enumerate_delta_le, Ordinal};
use ringlab::rootalg::{rational, RootSeries};
use ringlab::zoo::cube::CubeEngine;
use ringlab::zoo::epsilon::EpsilonEngine;
use ringlab::zoo::exterior::ExteriorEngine;
use ringlab::zoo::rado::RadoEngine;
use std::sync::Arc;

fn ordinal_pool() -> Vec<Ordinal> {
    enumerate_delta_le(9)
}

proptest! {
    #[test]
    fn ordinal_addition_is_associative(
        a in 0usize..145, b in 0usize..145, c in 0usize..145
    ) {
        let pool = ordinal_pool();
        let (x, y, z) = (&pool[a % pool.len()], &pool[b % pool.len()], &pool[c % pool.len()]);
        prop_assert_eq!(x.add(y).add(z), x.add(&y.add(z)));
    }

    #[test]
    fn ordinal_order_is_total_and_compatible(
        a in 0usize..145, b in 0usize..145
    ) {
        let pool = ordinal_pool();
        let (x, y) = (&pool[a % pool.len()], &pool[b % pool.len()]);
        prop_assert_eq!(x.cmp(y), y.cmp(x).reverse());
        // sums dominate both arguments and absorb below the leading scale
        let s = x.add(y);
        prop_assert!(&s >= x);
        prop_assert!(&s >= y);
        if let Some((lead, _)) = y.terms().first() {
            if x < &Ordinal::omega_pow(lead) {
                prop_assert_eq!(&s, y);
            }
        }
    }

    #[test]
    fn root_series_laws(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mk = |rng: &mut ChaCha8Rng| {
            let mut s = RootSeries::zero(2).unwrap();
            for _ in 0..rng.gen_range(0..=3usize) {
                let d = rng.gen_range(1..=8i64);
                let n = rng.gen_range(0..=d);
                s = s.add(&RootSeries::x_pow(2, rational(n, d)).unwrap()).unwrap();
            }
            s
        };
        let a = mk(&mut rng);
        let b = mk(&mut rng);
        let c = mk(&mut rng);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
    }
}

fn random_element(rng: &mut ChaCha8Rng, engine: &dyn RingEngine, d: i64) -> Element {
    let dim = engine.dim(d);
    Element::from_support(d, (0..dim).filter(|_| rng.gen_bool(0.5)).collect())
}

#[test]
fn zoo_products_are_associative_and_commutative() {
    let engines: Vec<Arc<dyn RingEngine>> = vec![
        ExteriorEngine::full(16),
        CubeEngine::full(0, 16).unwrap(),
        CubeEngine::truncated(0, 2, 16).unwrap(),
        CubeEngine::bar(0, 3, 16).unwrap(),
        RadoEngine::new(16),
        EpsilonEngine::new(12),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for engine in &engines {
        for _ in 0..500 {
            let d1 = rng.gen_range(0..=3i64);
            let d2 = rng.gen_range(0..=3i64);
            let d3 = rng.gen_range(0..=3i64);
            let a = random_element(&mut rng, engine.as_ref(), d1);
            let b = random_element(&mut rng, engine.as_ref(), d2);
            let c = random_element(&mut rng, engine.as_ref(), d3);
            let ab = mul(engine.as_ref(), &a, &b).unwrap();
            let bc = mul(engine.as_ref(), &b, &c).unwrap();
            assert_eq!(ab, mul(engine.as_ref(), &b, &a).unwrap(), "{}", engine.name());
            assert_eq!(
                mul(engine.as_ref(), &ab, &c).unwrap(),
                mul(engine.as_ref(), &a, &bc).unwrap(),
                "{}",
                engine.name()
            );
        }
    }
}

/// ann(I + J) = ann(I) cap ann(J), which holds in any ring, computed along
/// two different routes.
#[test]
fn ann_of_sum_is_intersection_everywhere() {
    let engines: Vec<Arc<dyn RingEngine>> = vec![
        ExteriorEngine::full(20),
        CubeEngine::full(0, 20).unwrap(),
        RadoEngine::new(20),
        EpsilonEngine::new(10),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for engine in &engines {
        for _ in 0..10 {
            let mut gens_i = Vec::new();
            let mut gens_j = Vec::new();
            for _ in 0..rng.gen_range(1..=2usize) {
                let d = rng.gen_range(1..=4i64);
                gens_i.push(random_element(&mut rng, engine.as_ref(), d));
            }
            for _ in 0..rng.gen_range(1..=2usize) {
                let d = rng.gen_range(1..=4i64);
                gens_j.push(random_element(&mut rng, engine.as_ref(), d));
            }
            let bound = engine.dmax() - 5;
            let mut all = gens_i.clone();
            all.extend(gens_j.iter().cloned());
            let lhs = ann(engine.as_ref(), &all, bound).unwrap();
            let ai = ann(engine.as_ref(), &gens_i, bound).unwrap();
            let aj = ann(engine.as_ref(), &gens_j, bound).unwrap();
            for d in 0..=bound {
                let rhs: Subspace = ai.slice(d).intersect(aj.slice(d));
                assert_eq!(lhs.slice(d), &rhs, "{} degree {d}", engine.name());
            }
        }
    }
}

/// In the self-injective examples E and C the annihilator calculus holds:
/// ann(I cap J) = ann(I) + ann(J) and ann^2(J) = J, slicewise within the
/// windows where the bounded computation is conclusive.
#[test]
fn self_injective_annihilator_calculus() {
    let engines: Vec<Arc<dyn RingEngine>> = vec![
        ExteriorEngine::full(24),
        CubeEngine::full(0, 24).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for engine in &engines {
        for _ in 0..6 {
            let gen_of = |rng: &mut ChaCha8Rng| -> Element {
                loop {
                    let d = rng.gen_range(1..=4i64);
                    let e = random_element(rng, engine.as_ref(), d);
                    if !e.is_zero() {
                        return e;
                    }
                }
            };
            let gens_i: Vec<Element> = (0..rng.gen_range(1..=2usize))
                .map(|_| gen_of(&mut rng))
                .collect();
            let gens_j: Vec<Element> = (0..rng.gen_range(1..=2usize))
                .map(|_| gen_of(&mut rng))
                .collect();
            // ann(I cap J) = ann(I) + ann(J) in low degrees
            let span_i = ideal_span(engine.as_ref(), &gens_i, 20).unwrap();
            let span_j = ideal_span(engine.as_ref(), &gens_j, 20).unwrap();
            let inter = ideal_intersection(&span_i, &span_j);
            let lhs = ann_of_slices(engine.as_ref(), &inter, 8).unwrap();
            let rhs = ideal_sum(
                &ann(engine.as_ref(), &gens_i, 8).unwrap(),
                &ann(engine.as_ref(), &gens_j, 8).unwrap(),
            );
            for d in 0..=8 {
                assert_eq!(lhs.slice(d), rhs.slice(d), "{} degree {d}", engine.name());
            }
            // the double annihilator closes up on the ideal itself
            let report = dann_check(engine.as_ref(), &gens_i, 8).unwrap();
            assert!(
                report.equal,
                "{}: dann discrepancy {:?}",
                engine.name(),
                report.first_discrepancy.map(|d| d.degree)
            );
        }
    }
    // principal ideals in E: ann^2(Ra) = Ra
    let e = ExteriorEngine::full(24);
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..10 {
        let d = rng.gen_range(1..=8i64);
        if e.dim(d) == 0 {
            continue;
        }
        let a = Element::basis(d, 0);
        let report = dann_check(e.as_ref(), &[a], 8).unwrap();
        assert!(report.equal);
    }
}

/// A passing duality check forces a one-dimensional socle in the top
/// degree, computed independently.
#[test]
fn poincare_pass_implies_simple_socle() {
    use ringlab::ideal::{poincare_check, socle, PoincareReport};
    let engines: Vec<Arc<dyn RingEngine>> = vec![
        ExteriorEngine::truncated(3, 10).unwrap(),
        ExteriorEngine::truncated(4, 18).unwrap(),
        CubeEngine::bar(0, 2, 10).unwrap(),
        CubeEngine::bar(0, 3, 16).unwrap(),
    ];
    for engine in engines {
        let PoincareReport::Pass { top } = poincare_check(engine.as_ref()) else {
            panic!("{} should pass", engine.name());
        };
        let s = socle(engine.as_ref(), engine.dmax()).unwrap();
        for d in 0..=engine.dmax() {
            assert_eq!(s.dim(d), usize::from(d == top), "{} degree {d}", engine.name());
        }
    }
}

/// Transporter search agrees with brute force over small degree pieces.
#[test]
fn transporter_completeness_cross_check() {
    use ringlab::baer::{brute_force_transporter, find_transporter, TestPair};
    let c = CubeEngine::full(0, 12).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..200 {
        let du = rng.gen_range(1..=3i64);
        let d = rng.gen_range(-1..=2i64);
        let u = random_element(&mut rng, c.as_ref(), du);
        let v = random_element(&mut rng, c.as_ref(), du + d);
        let pair = TestPair::new(vec![u], vec![v], d).unwrap();
        let fast = find_transporter(c.as_ref(), &pair).unwrap();
        let brute = brute_force_transporter(c.as_ref(), &pair).unwrap();
        assert_eq!(fast.is_some(), brute.is_some());
    }
}
