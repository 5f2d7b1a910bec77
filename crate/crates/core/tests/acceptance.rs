//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test -p ringlab --test acceptance -- --nocapture`.

use ringlab::adjust::{adjoin_blocks, adjust_tower, verify_retraction, PresentedRing};
use ringlab::baer::{
    classify, enumerate_bad_pairs, verify_block, Classification, TestPair,
};
use ringlab::engine::{hilbert, mul, parse_element, unit, Element, RingEngine};
use ringlab::ideal::{ann, dann_check, ideal_span, poincare_check, step_check, PoincareReport};
use ringlab::jring::{pontrjagin_check, vp, JRing, JValue};
use ringlab::ordinal::{enumerate_delta_le, parse_ordinal, phi_decode};
use ringlab::rootalg::{
    baer_witness, classify_ideal, lambda_t, nilpotency_index, parse_series, rational,
    root_inverse, symbolic_ann, RootSeries, SymbolicIdeal,
};
use ringlab::zoo::cube::{flatten, mi_degree, theta, CubeEngine};
use ringlab::zoo::epsilon::{monomial_dac_check as epsilon_dac_check, EpsMonomialStatus, EpsilonEngine, OrdMono};
use ringlab::zoo::exterior::ExteriorEngine;
use ringlab::zoo::rado::{bset, gamma_complete, monomial_dac_check as rado_dac_check, MonomialStatus, RadoEngine};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn pass(n: u32, name: &str) {
    println!("acceptance {n} ({name}): PASS");
}

#[test]
fn a01_exterior_hilbert_series() {
    let e = ExteriorEngine::full(64);
    let dims = hilbert(e.as_ref(), 64).unwrap();
    assert_eq!(dims, vec![1; 65]);
    pass(1, "exterior Hilbert series");
}

#[test]
fn a02_cube_basis_and_flatten() {
    // independent oracle: coefficient DP for the flat-count series
    let dmax = 40usize;
    let mut coeff = vec![0u64; dmax + 1];
    coeff[0] = 1;
    let mut i = 0;
    while (1usize << i) <= dmax {
        let step = 1usize << i;
        let mut next = vec![0u64; dmax + 1];
        for (d, &c) in coeff.iter().enumerate() {
            for e in 0..=2usize {
                if c != 0 && d + e * step <= dmax {
                    next[d + e * step] += c;
                }
            }
        }
        coeff = next;
        i += 1;
    }
    let c = CubeEngine::full(0, dmax as i64).unwrap();
    for (d, &count) in coeff.iter().enumerate() {
        assert_eq!(c.dim(d as i64) as u64, count, "degree {d}");
    }
    // flatten terminates, preserves degree and lands flat
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..10_000 {
        let len = rng.gen_range(1..=6usize);
        let mi: Vec<u32> = (0..len).map(|_| rng.gen_range(0..=6u32)).collect();
        let f = flatten(&mi);
        assert_eq!(mi_degree(&f), mi_degree(&mi));
        assert!(f.iter().all(|&e| e < 3));
    }
    pass(2, "cube basis dimensions and flatten");
}

#[test]
fn a03_theta_powers() {
    for m in 0..=3u32 {
        let c = CubeEngine::full(0, 21i64 << m).unwrap();
        let mut ym = vec![0u32; m as usize + 1];
        ym[m as usize] = 1;
        let ym = c.monomial(&ym).unwrap();
        let mut power = unit(c.as_ref());
        for k in 0..=20u64 {
            assert_eq!(power, c.monomial(&theta(m, k)).unwrap(), "y_{m}^{k}");
            if k < 20 {
                power = mul(c.as_ref(), &power, &ym).unwrap();
            }
        }
    }
    pass(3, "theta powers");
}

#[test]
fn a04_annihilator_of_xk_in_truncations() {
    for m in 1..=4u32 {
        let dmax = 1i64 << (m + 1);
        let engine = CubeEngine::truncated(0, m, dmax).unwrap();
        for k in 1..=m {
            let xk = engine.x_element(k).unwrap();
            let bound = dmax - (1i64 << k);
            let got = ann(engine.as_ref(), &[xk], bound).unwrap();
            let mut ykm1 = vec![0u32; k as usize];
            ykm1[(k - 1) as usize] = 1;
            let want = ideal_span(
                engine.as_ref(),
                &[engine.monomial(&ykm1).unwrap()],
                bound,
            )
            .unwrap();
            for d in 0..=bound {
                assert_eq!(got.slice(d), want.slice(d), "C[0,{m}], x_{k}, degree {d}");
            }
        }
    }
    pass(4, "annihilators of x_k in cube truncations");
}

#[test]
fn a05_poincare_duality() {
    for n in 0..=4u32 {
        let top = (1i64 << n) - 1;
        let e = ExteriorEngine::truncated(n, top.max(1) + 1).unwrap();
        assert_eq!(
            poincare_check(e.as_ref()),
            PoincareReport::Pass { top },
            "E({n})"
        );
    }
    for m in 0..=3u32 {
        let top = 2 * ((1i64 << m) - 1);
        let b = CubeEngine::bar(0, m, top + 2).unwrap();
        assert_eq!(
            poincare_check(b.as_ref()),
            PoincareReport::Pass { top },
            "Cbar[0,{m}]"
        );
    }
    pass(5, "Poincare duality for E(n) and Cbar[0,m]");
}

#[test]
fn a06_self_injectivity_evidence() {
    let c = CubeEngine::full(0, 16).unwrap();
    assert!(enumerate_bad_pairs(c.as_ref(), 6, 16).unwrap().is_empty());
    let e = ExteriorEngine::full(16);
    assert!(enumerate_bad_pairs(e.as_ref(), 6, 16).unwrap().is_empty());

    // the block construction of the self-injectivity proof: for pairs
    // blocked modulo y_m, multiplying a lifted bar-quotient block by
    // x_{m+1} gives a block over C itself
    let m = 2u32;
    let cfull = CubeEngine::full(0, 26).unwrap();
    let bar = CubeEngine::bar(0, m, 8).unwrap();
    let x_next = cfull.x_element(m + 1).unwrap();
    let mut monomials = Vec::new();
    for d in 1..4i64 {
        for i in 0..cfull.dim(d) {
            monomials.push(Element::basis(d, i));
        }
    }
    let mut reverified = 0;
    for u in &monomials {
        for v in &monomials {
            let d = v.degree - u.degree;
            let pair = TestPair::new(vec![u.clone()], vec![v.clone()], d).unwrap();
            let bar_pair = TestPair::new(
                vec![bar.convert_from(&cfull, u).unwrap()],
                vec![bar.convert_from(&cfull, v).unwrap()],
                d,
            )
            .unwrap();
            if bar_pair.us[0].is_zero() {
                continue;
            }
            if let Classification::GoodBlock { block, .. } =
                classify(bar.as_ref(), &bar_pair, 6).unwrap()
            {
                // lift the bar block along the flat monomial section and
                // multiply by x_{m+1}
                let lifted: Vec<Element> = block
                    .iter()
                    .map(|b| {
                        let in_c = cfull.convert_from(&bar, b).unwrap();
                        mul(cfull.as_ref(), &x_next, &in_c).unwrap()
                    })
                    .collect();
                assert!(
                    verify_block(cfull.as_ref(), &pair, &lifted).unwrap(),
                    "x_{}·b failed for ({:?}, {:?})",
                    m + 1,
                    u,
                    v
                );
                reverified += 1;
            }
        }
    }
    assert!(reverified > 0, "no pairs were blocked modulo y_m");
    pass(6, "no bad pairs in C and E; cube block construction re-verified");
}

#[test]
fn a07_rado_counterexample_and_dac() {
    let q = RadoEngine::new(24);
    let x0 = parse_element(q.as_ref(), "x{0}").unwrap();
    let x2 = parse_element(q.as_ref(), "x{2}").unwrap();
    let pair = TestPair::new(
        vec![x0, x2.clone()],
        vec![Element::zero(1), x2],
        0,
    )
    .unwrap();
    assert_eq!(
        classify(q.as_ref(), &pair, 20).unwrap(),
        Classification::BadUpTo(20)
    );

    // 100 random finitely generated monomial ideals, witness-certified
    let window = 40i64;
    let pool: Vec<std::collections::BTreeSet<u64>> = (1..=window as u64)
        .map(bset)
        .filter(gamma_complete)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..100 {
        let n = rng.gen_range(1..=3usize);
        let gens: Vec<_> = pool.choose_multiple(&mut rng, n).cloned().collect();
        let report = rado_dac_check(&gens, window).unwrap();
        for (d, status) in report {
            let t = bset(d as u64);
            let divisible = gens.iter().any(|g| g.is_subset(&t));
            match status {
                MonomialStatus::InIdeal => assert!(divisible, "trial {trial} degree {d}"),
                MonomialStatus::Excluded { witness_bits } => {
                    assert!(!divisible, "trial {trial} degree {d}");
                    assert!(!witness_bits.is_empty());
                }
            }
        }
    }
    pass(7, "Rado counterexample pair and monomial double annihilators");
}

#[test]
fn a08_epsilon_suite() {
    // delta values
    for (s, d) in [("1", 2u64), ("2", 5), ("w", 3), ("w+1", 6), ("w^2", 6)] {
        assert_eq!(parse_ordinal(s).unwrap().delta(), d, "delta({s})");
    }
    // phi-word roundtrip and injectivity on delta <= 12
    let all = enumerate_delta_le(12);
    let mut seen = std::collections::BTreeSet::new();
    for a in &all {
        let w = a.phi_word();
        assert_eq!(w.len() as u64, a.delta());
        assert_eq!(phi_decode(&w).as_ref(), Some(a));
        assert!(seen.insert(w));
    }

    // the non-monomial counterexample: first discrepancy at degree 6 with
    // the witness x_{w^2} in ann^2 \ J
    let a = EpsilonEngine::new(19);
    let xi = a.var(&parse_ordinal("w^2").unwrap()).unwrap();
    let xj = a.var(&parse_ordinal("w+1").unwrap()).unwrap();
    let g = xi.add(&xj).unwrap();
    let report = dann_check(a.as_ref(), &[g], 8).unwrap();
    assert!(!report.equal);
    let disc = report.first_discrepancy.unwrap();
    assert_eq!(disc.degree, 6);
    assert!(disc.dann_slice.contains(&xi.to_row(a.dim(6))));
    assert!(!disc.ideal_slice.contains(&xi.to_row(a.dim(6))));

    // 50 random finitely generated monomial ideals, witness-certified
    let small = EpsilonEngine::new(9);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 50 {
        let mut gens: Vec<OrdMono> = Vec::new();
        for _ in 0..rng.gen_range(1..=2usize) {
            let d = rng.gen_range(1..=7i64);
            if small.dim(d) == 0 {
                continue;
            }
            let i = rng.gen_range(0..small.dim(d));
            gens.push(small.mono_to_ordinals(small.mono_at(d, i)));
        }
        if gens.is_empty() {
            continue;
        }
        let report = epsilon_dac_check(&small, &gens, 9).unwrap();
        assert!(!report.is_empty());
        for (_, _, status) in &report {
            if let EpsMonomialStatus::Excluded { witness } = status {
                assert!(!witness.is_empty());
            }
        }
        done += 1;
    }
    pass(8, "epsilon_0 suite");
}

#[test]
fn a09_adjustment() {
    let r = PresentedRing::from_presentation(
        vec![("x".into(), 1), ("y".into(), 1)],
        &["x*y".into()],
        12,
    )
    .unwrap();
    // the bad pair ((x,y),(x,0)) is found at weight <= 6
    let bad = enumerate_bad_pairs(r.engine.as_ref(), 6, 12).unwrap();
    let x = parse_element(r.engine.as_ref(), "x").unwrap();
    let y = parse_element(r.engine.as_ref(), "y").unwrap();
    let target = TestPair::new(
        vec![x.clone(), y.clone()],
        vec![x.clone(), Element::zero(1)],
        0,
    )
    .unwrap();
    let found = bad.iter().any(|p| {
        p.degree == 0 && p.len() == 2 && {
            let mut got: Vec<_> = p.us.iter().zip(&p.vs).collect();
            let mut want: Vec<_> = target.us.iter().zip(&target.vs).collect();
            got.sort_by_key(|(u, v)| (u.degree, u.support.clone(), v.support.clone()));
            want.sort_by_key(|(u, v)| (u.degree, u.support.clone(), v.support.clone()));
            got == want
        }
    });
    assert!(found, "the classic pair must be enumerated");

    // adjoining with m = 2: agreement below 2, block re-verified
    let report = adjoin_blocks(&r, &[target], 2).unwrap();
    assert_eq!(report.agreement_below, 2);
    for d in 0..2 {
        assert_eq!(r.engine.dim(d), report.ring.engine.dim(d));
    }
    assert_eq!(report.blocks.len(), 1);
    assert!(report.new_generators.iter().all(|g| g.1 == 2));
    verify_retraction(&r, &report.ring, 8).unwrap();

    // two tower stages satisfy the agreement bound
    let tower = adjust_tower(&r, 2, 2, 6, 4).unwrap();
    for (j, stage) in tower.stages.iter().enumerate() {
        let prev = &tower.rings[j];
        let next = &tower.rings[j + 1];
        assert!(stage.agreement_below >= stage.weight_handled as i64 + 2);
        for d in 0..stage.agreement_below.min(prev.dmax + 1) {
            assert_eq!(prev.engine.dim(d), next.engine.dim(d), "stage {j} deg {d}");
        }
    }
    assert!(tower.stages[0].pairs_adjoined > 0);
    pass(9, "self-injective adjustment");
}

#[test]
fn a10_root_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let one = RootSeries::one(2).unwrap();
    for _ in 0..1000 {
        let d1 = rng.gen_range(1..=12i64);
        let q = rational(rng.gen_range(0..=d1), d1);
        let d2 = rng.gen_range(1..=12i64);
        let rr = rational(rng.gen_range(0..=d2), d2);
        let xq = RootSeries::x_pow(2, q.clone()).unwrap();
        let xr = RootSeries::x_pow(2, rr.clone()).unwrap();
        let prod = xq.mul(&xr).unwrap();
        let expect = RootSeries::x_pow(2, &q + &rr).unwrap();
        assert_eq!(prod, expect, "x^q x^r = x^(q+r) with the cutoff at 1");
        assert_eq!(xq.mul(&one).unwrap(), xq);
    }
    // unit/nilpotent classification verified by direct multiplication
    for _ in 0..300 {
        let mut s = RootSeries::zero(2).unwrap();
        for _ in 0..rng.gen_range(1..=4usize) {
            let d = rng.gen_range(1..=9i64);
            s = s
                .add(&RootSeries::x_pow(2, rational(rng.gen_range(0..=d), d)).unwrap())
                .unwrap();
        }
        let Some(delta) = s.delta() else { continue };
        if delta == rational(0, 1) {
            let inv = root_inverse(&s).unwrap();
            assert_eq!(s.mul(&inv).unwrap(), one);
        } else {
            let n = nilpotency_index(&s).unwrap();
            let mut pow = s.clone();
            for _ in 1..n {
                pow = pow.mul(&s).unwrap();
            }
            assert!(pow.is_zero());
            // the witness construction and x^t factorization
            let w = baer_witness(&delta, &s).unwrap();
            let xt = RootSeries::x_pow(2, delta).unwrap();
            assert_eq!(xt.mul(&w).unwrap(), s);
            let _ = lambda_t(&s, &rational(0, 1)).unwrap();
        }
    }
    // symbolic annihilator involution on the grid t = 0, 1/8, ..., 1
    for n in 0..=8i64 {
        for closed in [true, false] {
            let i = SymbolicIdeal {
                t: rational(n, 8),
                closed,
            };
            assert_eq!(symbolic_ann(&symbolic_ann(&i)), i);
        }
    }
    // classification agrees with the annihilator calculus on generators
    let i = classify_ideal(&[
        parse_series(2, "x^(1/2)").unwrap(),
        parse_series(2, "x^(1/3)").unwrap(),
    ]);
    assert_eq!(
        i,
        SymbolicIdeal {
            t: rational(1, 3),
            closed: true
        }
    );
    assert_eq!(
        symbolic_ann(&i),
        SymbolicIdeal {
            t: rational(2, 3),
            closed: false
        }
    );
    pass(10, "root algebra laws and symbolic ideals");
}

#[test]
fn a11_jhat_duality() {
    for p in [3u64, 5] {
        let j = JRing::new(p, 6).unwrap();
        // degrees realized by |k| <= 30, plus 0 and -2
        let mut degrees = vec![0i64, -2];
        for k in -30i64..=30 {
            if k != 0 {
                degrees.push(j.gen_degree(k));
            }
        }
        for d in degrees {
            let report = pontrjagin_check(&j, d).unwrap();
            assert!(report.pass, "p={p}, degree {d}: {}", report.detail);
        }
        // pairing values alpha_k alpha_{-k} = zeta^{-1}(p^{-1-v_p(k)})
        for k in 1..=30i64 {
            let v = vp(k, p).unwrap();
            let prod = j
                .mul(&j.alpha(k, 1).unwrap(), &j.alpha(-k, 1).unwrap())
                .unwrap();
            let expect = p.pow(6 - 1 - v);
            assert_eq!(prod.value, JValue::Fraction(expect), "p={p}, k={k}");
        }
    }
    pass(11, "J-hat Pontrjagin duality at truncation");
}

#[test]
fn a12_cube_syzygy_stability() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for p in [3u32, 4] {
        let cfull = CubeEngine::full(0, 24).unwrap();
        // entries are sums of flat monomials supported on [0, p-3]
        let tilde = CubeEngine::bar(0, p - 2, 24).unwrap();
        let mut pool: Vec<Element> = Vec::new();
        for d in 0..=6i64 {
            for i in 0..tilde.dim(d) {
                pool.push(cfull.convert_from(&tilde, &Element::basis(d, i)).unwrap());
            }
        }
        let degrees: Vec<i64> = {
            let mut ds: Vec<i64> = pool.iter().map(|e| e.degree).filter(|&d| d > 0).collect();
            ds.sort_unstable();
            ds.dedup();
            ds
        };
        let mut trials = 0;
        while trials < 10 {
            let len = rng.gen_range(1..=2usize);
            let u: Vec<Element> = (0..len)
                .map(|_| {
                    let d = *degrees.choose(&mut rng).unwrap();
                    let cands: Vec<&Element> =
                        pool.iter().filter(|e| e.degree == d).collect();
                    let mut acc = Element::zero(d);
                    for c in cands {
                        if rng.gen_bool(0.5) {
                            acc = acc.add(c).unwrap();
                        }
                    }
                    acc
                })
                .filter(|e| !e.is_zero())
                .collect();
            if u.is_empty() {
                continue;
            }
            let report = step_check(&cfull, &u, p, 24).unwrap();
            assert!(report.ok, "p={p} trial {trials}: {:?}", report.per_degree);
            trials += 1;
        }
    }
    pass(12, "cube syzygy stability");
}
