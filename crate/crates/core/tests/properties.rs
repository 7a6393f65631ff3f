//! Cross-module property tests: ring and homomorphism laws on random
//! polynomials, normal-form contracts on random matrices, and structural
//! invariants of the diagram pipeline.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use proptest::prelude::*;

use linkalg::alexander::{build_presentation, reduce_tau, simplify, specialize_nu};
use linkalg::config::RunConfig;
use linkalg::diagram::{parse_diagram, validate};
use linkalg::fixtures;
use linkalg::laurent::{gcd_univariate, IntLaurent, RatLaurent};
use linkalg::modulealg::{
    alexander_poly, ideal_evaluation_fingerprint, nu_fingerprint, rat_det, smith_integer,
    smith_rational_univariate, IntMatrix, MinorCaps,
};

fn laurent_strategy(varcount: usize) -> impl Strategy<Value = IntLaurent> {
    prop::collection::vec(
        (prop::collection::vec(-3i32..=3, varcount), -9i64..=9),
        0..=4,
    )
    .prop_map(move |terms| {
        let mut p = IntLaurent::zero(varcount);
        for (e, c) in terms {
            p = p.add(&IntLaurent::monomial(e, c));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(
        p in laurent_strategy(2),
        q in laurent_strategy(2),
        r in laurent_strategy(2),
    ) {
        prop_assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
    }

    #[test]
    fn tau_and_evaluations_are_ring_homomorphisms(
        p in laurent_strategy(2),
        q in laurent_strategy(2),
    ) {
        prop_assert_eq!(p.add(&q).substitute_tau(), p.substitute_tau().add(&q.substitute_tau()));
        prop_assert_eq!(p.mul(&q).substitute_tau(), p.substitute_tau().mul(&q.substitute_tau()));
        prop_assert_eq!(p.add(&q).evaluate_nu(), p.evaluate_nu() + q.evaluate_nu());
        prop_assert_eq!(p.mul(&q).evaluate_nu(), p.evaluate_nu() * q.evaluate_nu());
        prop_assert_eq!(p.add(&q).augmentation(), p.augmentation() + q.augmentation());
        prop_assert_eq!(p.mul(&q).augmentation(), p.augmentation() * q.augmentation());
        let pt = [BigRational::from_integer(3.into()), BigRational::from_integer((-2).into())];
        prop_assert_eq!(
            p.mul(&q).evaluate_rat(&pt).unwrap(),
            p.evaluate_rat(&pt).unwrap() * q.evaluate_rat(&pt).unwrap()
        );
    }

    #[test]
    fn normalize_unit_ignores_units(p in laurent_strategy(1), m in -5i32..=5, neg in any::<bool>()) {
        let unit = IntLaurent::monomial(vec![m], if neg { -1 } else { 1 });
        prop_assert_eq!(p.mul(&unit).normalize_unit(), p.normalize_unit());
        let n = p.normalize_unit();
        prop_assert_eq!(n.normalize_unit(), n);
    }

    #[test]
    fn gcd_divides_both_and_absorbs_common_factors(
        g in laurent_strategy(1),
        a in laurent_strategy(1),
        b in laurent_strategy(1),
    ) {
        let p = g.mul(&a);
        let q = g.mul(&b);
        let d = gcd_univariate(&p, &q);
        if !p.is_zero() {
            prop_assert!(p.divisible_by(&d));
        }
        if !q.is_zero() {
            prop_assert!(q.divisible_by(&d));
        }
        if !g.is_zero() && !(p.is_zero() && q.is_zero()) {
            prop_assert!(d.divisible_by(&g));
        }
    }

    #[test]
    fn rat_divmod_reconstructs(p in laurent_strategy(1), q in laurent_strategy(1)) {
        prop_assume!(!q.is_zero());
        let pr = RatLaurent::from_int_laurent(&p);
        let qr = RatLaurent::from_int_laurent(&q);
        let (quot, rem) = pr.divmod(&qr).unwrap();
        prop_assert_eq!(qr.mul(&quot).add(&rem), pr);
        if !rem.is_zero() {
            prop_assert!(rem.span() < qr.span());
        }
    }

    #[test]
    fn smith_integer_contract(
        rows in 1usize..=8,
        cols in 1usize..=8,
        seed in prop::collection::vec(-9i64..=9, 64),
    ) {
        let a: IntMatrix = (0..rows)
            .map(|i| (0..cols).map(|j| BigInt::from(seed[i * 8 + j])).collect())
            .collect();
        let s = smith_integer(&a);
        // U·A·V = D exactly
        let ua: IntMatrix = (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| (0..rows).map(|k| &s.u[i][k] * &a[k][j]).sum::<BigInt>())
                    .collect()
            })
            .collect();
        let uav: IntMatrix = (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| (0..cols).map(|k| &ua[i][k] * &s.v[k][j]).sum::<BigInt>())
                    .collect()
            })
            .collect();
        prop_assert_eq!(&uav, &s.d);
        // determinants of the transforms are units
        prop_assert_eq!(det_int(&s.u).abs(), BigInt::one());
        prop_assert_eq!(det_int(&s.v).abs(), BigInt::one());
        // U_inv really inverts U
        let prod: IntMatrix = (0..rows)
            .map(|i| {
                (0..rows)
                    .map(|j| (0..rows).map(|k| &s.u[i][k] * &s.u_inv[k][j]).sum::<BigInt>())
                    .collect()
            })
            .collect();
        for i in 0..rows {
            for j in 0..rows {
                prop_assert_eq!(&prod[i][j], if i == j { &BigInt::one() } else { &BigInt::zero() } );
            }
        }
        // diagonal divisibility chain, zeros trailing
        for w in s.diag.windows(2) {
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
            prop_assert!(!w[0].is_negative());
        }
    }

    #[test]
    fn rational_smith_factor_product_matches_determinant(
        seed in prop::collection::vec((-2i32..=2, -3i64..=3, -3i64..=3), 16),
    ) {
        let a: Vec<Vec<RatLaurent>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        let (e, c0, c1) = seed[i * 4 + j];
                        let p = IntLaurent::monomial(vec![e], c0)
                            .add(&IntLaurent::monomial(vec![e + 1], c1));
                        RatLaurent::from_int_laurent(&p)
                    })
                    .collect()
            })
            .collect();
        let det = rat_det(&a);
        prop_assume!(!det.is_zero());
        let s = smith_rational_univariate(&a, 4);
        prop_assert_eq!(s.rank, 0);
        let mut prod = RatLaurent::one();
        for f in &s.factors {
            prod = prod.mul(f);
        }
        prop_assert_eq!(prod.normalize_monic(), det.normalize_monic());
    }
}

fn det_int(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: IntMatrix = (1..n)
            .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c].clone()).collect())
            .collect();
        let term = &m[0][j] * det_int(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

#[test]
fn delta_divisibility_chain_on_corpus() {
    let caps = MinorCaps::default();
    for f in fixtures::corpus() {
        let red = simplify(&reduce_tau(&build_presentation(&f.diagram).unwrap()));
        let mut prev: Option<IntLaurent> = None;
        for k in 0..=red.rows() {
            let dk = alexander_poly(&red, k, &caps).unwrap();
            if let Some(p) = prev {
                // Δ_{k+1} divides Δ_k (zero divides only zero)
                if dk.is_zero() {
                    assert!(p.is_zero(), "fixture {} k {}", f.name, k);
                } else if !p.is_zero() {
                    assert!(p.divisible_by(&dk), "fixture {} k {}: {} | {}", f.name, k, dk, p);
                }
            }
            prev = Some(dk);
        }
    }
}

#[test]
fn nu_fingerprint_invariant_under_transforms() {
    let cfg = RunConfig::default();
    for f in [fixtures::two_hopf(), fixtures::l_prime(), fixtures::hopf_unknot()] {
        let nu = specialize_nu(&simplify(&build_presentation(&f).unwrap()));
        let base = nu_fingerprint(&nu, cfg.torsion_cap).unwrap();

        // column permutation (relation order is irrelevant)
        let mut cols_permuted = nu.clone();
        for row in cols_permuted.matrix.iter_mut() {
            row.reverse();
        }
        assert_eq!(nu_fingerprint(&cols_permuted, cfg.torsion_cap).unwrap(), base);

        // row permutation together with its coordinate data
        let mut rows_permuted = nu.clone();
        rows_permuted.matrix.reverse();
        rows_permuted.free.reverse();
        rows_permuted.tors.reverse();
        rows_permuted.components.reverse();
        rows_permuted.generators.reverse();
        assert_eq!(nu_fingerprint(&rows_permuted, cfg.torsion_cap).unwrap(), base);

        // unimodular row operation g_0 += 2 g_1: new generators are
        // e_0, e_1 - 2 e_0, ... so the coordinate data moves contravariantly
        if nu.matrix.len() >= 2 {
            let mut sheared = nu.clone();
            let n_cols = sheared.matrix[0].len();
            for c in 0..n_cols {
                let t = &sheared.matrix[1][c] * BigInt::from(2);
                sheared.matrix[0][c] += t;
            }
            // row op on the presentation matrix corresponds to replacing
            // generator 1 by g_1 - 2 g_0 in the coordinate data
            let f0 = sheared.free[0].clone();
            sheared.free[1] -= BigInt::from(2) * &f0;
            let t0 = sheared.tors[0].clone();
            for (k, &t) in t0.iter().enumerate() {
                if t & 1 == 1 {
                    sheared.tors[1][k] ^= 0; // 2·t is even, no mod-2 change
                }
            }
            assert_eq!(nu_fingerprint(&sheared, cfg.torsion_cap).unwrap(), base, "{:?}", f);
        }
    }
}

#[test]
fn ideal_fingerprint_ignores_unit_scaling() {
    let t1 = linkalg::laurent::parse_laurent("t1 - 1", 3).unwrap();
    let t2 = linkalg::laurent::parse_laurent("t2 - 1", 3).unwrap();
    let base = ideal_evaluation_fingerprint(&[t1.clone(), t2.clone()], 3, 2, 64);
    let u1 = linkalg::laurent::parse_laurent("t1^2", 3).unwrap().neg();
    let u2 = linkalg::laurent::parse_laurent("t3^-1", 3).unwrap();
    let scaled = ideal_evaluation_fingerprint(&[t1.mul(&u1), t2.mul(&u2)], 3, 2, 64);
    assert_eq!(base.values, scaled.values);
}

#[test]
fn diagram_render_round_trips_on_corpus() {
    for f in fixtures::corpus() {
        let rendered = f.diagram.render_json();
        let back = parse_diagram(&rendered).unwrap();
        assert!(validate(&back).is_empty());
        assert_eq!(back, f.diagram, "fixture {}", f.name);
    }
}

#[test]
fn trace_counts_match_on_corpus() {
    for f in fixtures::corpus() {
        let t = linkalg::diagram::trace_components(&f.diagram).unwrap();
        assert_eq!(t.cycles.len(), f.diagram.mu, "fixture {}", f.name);
        let total: usize = t.cycles.iter().map(|c| c.len()).sum();
        assert_eq!(total, f.diagram.arcs.len(), "fixture {}", f.name);
    }
}

#[test]
fn fixture_expected_blocks_match_recomputation() {
    let cfg = RunConfig::default();
    for f in fixtures::corpus() {
        let fp = linkalg::distinguish::link_fingerprint(&f.diagram, &cfg).unwrap();
        if let Some((factors, rank)) = &f.expected.rational {
            assert_eq!(fp.rational.rank, *rank, "fixture {} rank", f.name);
            let expect: Vec<RatLaurent> = factors
                .iter()
                .map(|s| {
                    RatLaurent::from_int_laurent(&linkalg::laurent::parse_laurent(s, 1).unwrap())
                        .normalize_monic()
                })
                .collect();
            assert_eq!(fp.rational.factors, expect, "fixture {} factors", f.name);
        }
        if let Some((rank, torsion)) = &f.expected.nu {
            assert_eq!(fp.nu.rank, *rank, "fixture {} nu rank", f.name);
            let expect: Vec<BigInt> = torsion.iter().map(|&t| BigInt::from(t)).collect();
            assert_eq!(fp.nu.torsion, expect, "fixture {} nu torsion", f.name);
        }
        if let Some(d1) = &f.expected.delta1 {
            let expect = linkalg::laurent::parse_laurent(d1, 1).unwrap();
            assert_eq!(fp.deltas[1], Some(expect), "fixture {} delta1", f.name);
        }
        if let Some(orbits) = f.expected.orbits {
            assert_eq!(fp.orbit_count, orbits, "fixture {} orbits", f.name);
        }
        for &(n, u, count) in &f.expected.colorings {
            let spec = linkalg::quandle::AffineQuandleSpec::new(n, u).unwrap();
            let got = linkalg::quandle::count_colorings(&f.diagram, &spec).unwrap();
            assert_eq!(got, BigInt::from(count), "fixture {} colorings ({}, {})", f.name, n, u);
        }
    }
}

#[test]
fn pd_hopf_has_same_bundle_as_fixture() {
    let cfg = RunConfig::default();
    let from_pd = parse_diagram("X[1,3,2,4] X[3,1,4,2]").unwrap();
    let fp1 = linkalg::distinguish::link_fingerprint(&from_pd, &cfg).unwrap();
    let fp2 = linkalg::distinguish::link_fingerprint(&fixtures::hopf(), &cfg).unwrap();
    assert_eq!(fp1, fp2);
}
