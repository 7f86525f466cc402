//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its headline numbers. Run with `cargo test --test acceptance -- --nocapture`.

mod common;

use std::time::Instant;

use embed2k::cocycle::{
    elementary_coboundary2, intersection_data, omega2, van_kampen_trivial, Cocycle2,
    CocycleSystem, Hom2,
};
use embed2k::complex::{
    catalog, maximal_k_forest_2, maximal_k_forest_2_ordered, SimplicialComplex,
};
use embed2k::decide::{
    decide_even_z2, decide_in_homotopy_class2, decide_z2, decide_z2_with, decide_z_form,
    min_rank_bruteforce, min_rank_kernel, min_rank_literal, z2_rank, OracleBudget,
    WitnessData, Z2Context, Z2Rank,
};
use embed2k::geometry::{intersection_cocycle2, moment_map};
use embed2k::linalg::{
    decompose_gf2, decompose_skew_z, form_matrix_2, gramian2, hyperbolic_gf2, rank1_factor,
    symplectic_int, BitMatrix, BitRow, FormSpec, FormType, Matrix, SymMatrix2,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn k5() -> SimplicialComplex {
    catalog::complete_graph(5)
}

/// Criterion 1: the intersection-class test recognizes planarity on K4 and
/// 20 certified planar graphs, and rejects K5, K33 and the 2-skeleton of the
/// 6-simplex. Total runtime under 5 seconds.
#[test]
fn criterion_01_van_kampen_suite() {
    let start = Instant::now();
    assert!(van_kampen_trivial(&catalog::complete_graph(4)).unwrap().0);

    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for i in 0..20 {
        let extra = rng.gen_range(2..=9);
        let drop = rng.gen_range(0..=5);
        let planar = common::random_planar(&mut rng, extra, drop);
        // The maintained embedding is the planarity certificate; Euler's
        // relation was asserted during construction.
        assert!(
            van_kampen_trivial(&planar.complex).unwrap().0,
            "planar graph {i} (V={}, E={}) must have trivial class",
            planar.vertices,
            planar.edges
        );
    }

    assert!(!van_kampen_trivial(&k5()).unwrap().0);
    assert!(!van_kampen_trivial(&catalog::complete_bipartite(3, 3)).unwrap().0);
    assert!(!van_kampen_trivial(&catalog::deleted_simplex(2)).unwrap().0);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!("[criterion 1] PASS van Kampen suite: 24 instances in {elapsed:?}");
}

/// Criterion 2: disjoint copies of K5 against the even form of rank 2s have
/// no Z2-embedding; the neighbouring odd/even ranks are decided and agree
/// with the matrix-side oracle where it is within budget, and with
/// independently certified witnesses beyond it. Under 60 seconds.
#[test]
fn criterion_02_disjoint_k5_ranks() {
    let start = Instant::now();
    let k5 = k5();
    let budget = OracleBudget::default();

    // s = 0: a single K5.
    assert!(decide_z2(&k5, 0, FormType::Even, 0).unwrap().is_no());
    let d_odd = decide_z2(&k5, 1, FormType::Odd, 0).unwrap();
    let d_even = decide_z2(&k5, 2, FormType::Even, 0).unwrap();
    let min_odd = min_rank_bruteforce(&k5, FormType::Odd, budget, 0).unwrap();
    let min_even = min_rank_bruteforce(&k5, FormType::Even, budget, 0).unwrap();
    assert_eq!(d_odd.is_yes(), min_odd <= 1, "oracle disagrees at (1, odd)");
    assert_eq!(d_even.is_yes(), min_even <= 2, "oracle disagrees at (2, even)");

    // s = 1: two disjoint copies.
    let two = k5.disjoint_union(&k5).unwrap();
    assert!(decide_z2(&two, 2, FormType::Even, 0).unwrap().is_no());

    let d3 = decide_z2(&two, 3, FormType::Odd, 0).unwrap();
    let d4 = decide_z2(&two, 4, FormType::Even, 0).unwrap();
    // The oracle is beyond budget at n = 20, so certify the Yes verdicts
    // independently: build explicit homomorphisms and verify them through
    // the cohomology membership test alone (no search involved).
    let ctx = Z2Context::new(&two, 0).unwrap();
    let m = ctx.forest.cycle_dim();
    assert_eq!(m, 12);

    // (3, odd): pad the rank-2 odd witness found by the rank scan.
    let d2_odd = decide_z2(&two, 2, FormType::Odd, 0).unwrap();
    assert!(d2_odd.is_yes());
    let Some(WitnessData::HomGf2 { rows, .. }) = &d2_odd.witness else {
        panic!("missing witness")
    };
    let mut padded = BitMatrix::zeros(3, m);
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            padded.set(i, j, v == 1);
        }
    }
    let hom3 = Hom2 { matrix: padded };
    let i3 = form_matrix_2(3, FormType::Odd).unwrap();
    let omega = omega2(&two, ctx.system.pairs(), &ctx.forest, &hom3, &i3).unwrap();
    assert!(
        ctx.system.cohomologous2(&omega, &ctx.nu).is_some(),
        "padded witness certifies (3, odd)"
    );
    assert!(d3.is_yes(), "decider must agree with the certified witness");

    // (4, even): block-diagonal of two copies of the (2, even) witness of K5.
    let dk5 = decide_z2(&k5, 2, FormType::Even, 0).unwrap();
    let Some(WitnessData::HomGf2 { rows: wk5, .. }) = &dk5.witness else {
        panic!("missing witness")
    };
    let mut block = BitMatrix::zeros(4, m);
    for (i, row) in wk5.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            block.set(i, j, v == 1);
            block.set(i + 2, j + 6, v == 1);
        }
    }
    let hom4 = Hom2 { matrix: block };
    let h2 = hyperbolic_gf2(2);
    let omega = omega2(&two, ctx.system.pairs(), &ctx.forest, &hom4, &h2).unwrap();
    assert!(
        ctx.system.cohomologous2(&omega, &ctx.nu).is_some(),
        "block witness certifies (4, even)"
    );
    assert!(d4.is_yes(), "decider must agree with the certified witness");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    println!("[criterion 2] PASS disjoint-K5 rank suite (s = 0, 1) in {elapsed:?}");
}

/// Criterion 3: the searcher and the matrix-side minimum-rank oracle agree
/// on every complex of an exhaustive small family plus 50 random complexes,
/// for every rank up to 3 and both types. Zero discrepancies.
#[test]
fn criterion_03_decider_oracle_equivalence() {
    let start = Instant::now();
    let budget = OracleBudget::default();

    let mut family: Vec<SimplicialComplex> = Vec::new();
    // Exhaustive: every nonempty subgraph of K4 (all graphs on 4 labelled
    // vertices, up to 6 edges). The empty complex is excluded: no odd matrix
    // of size zero exists while the homomorphism side is vacuously yes.
    let k4_edges: Vec<Vec<usize>> = (0..4)
        .flat_map(|a| ((a + 1)..4).map(move |b| vec![a, b]))
        .collect();
    for mask in 1u32..(1 << 6) {
        let faces: Vec<Vec<usize>> = (0..6)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| k4_edges[i].clone())
            .collect();
        family.push(SimplicialComplex::new(1, faces).unwrap());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for _ in 0..50 {
        family.push(common::random_graph(&mut rng, 7, 7));
    }

    let mut checked = 0usize;
    for complex in &family {
        for t in [FormType::Even, FormType::Odd] {
            let min = min_rank_bruteforce(complex, t, budget, 0).unwrap();
            for r in 0..=3usize {
                if form_matrix_2(r, t).is_err() {
                    continue;
                }
                let verdict = decide_z2(complex, r, t, 0).unwrap().is_yes();
                assert_eq!(
                    verdict,
                    min <= r,
                    "discrepancy on {:?} at ({r}, {t:?}): oracle min {min}",
                    complex
                );
                checked += 1;
            }
        }
    }

    let elapsed = start.elapsed();
    println!(
        "[criterion 3] PASS decider == oracle on {} complexes, {checked} queries, 0 discrepancies in {elapsed:?}",
        family.len()
    );
}

/// Criterion 4: rank additivity over disjoint unions, exactly, on 20
/// sampled pairs including the two-copies-of-K5 instance.
#[test]
fn criterion_04_rank_additivity() {
    let start = Instant::now();
    let rank_of = |c: &SimplicialComplex| -> usize {
        match z2_rank(c, None, 0).unwrap() {
            Z2Rank::Known { rank, .. } => rank,
            Z2Rank::Unknown { .. } => panic!("rank must be determined"),
        }
    };

    let k5 = k5();
    let k33 = catalog::complete_bipartite(3, 3);
    let k4 = catalog::complete_graph(4);
    let c3 = catalog::cycle(3);
    let c5 = catalog::cycle(5);
    let p3 = catalog::path(3);

    let mut pairs: Vec<(&SimplicialComplex, &SimplicialComplex)> = vec![
        (&k5, &k5),
        (&k5, &k33),
        (&k5, &k4),
        (&k5, &c3),
        (&k5, &p3),
        (&k33, &k33),
        (&k33, &k4),
        (&k33, &c5),
        (&k4, &k4),
        (&k4, &c3),
        (&c3, &c3),
        (&c3, &c5),
        (&c5, &p3),
        (&p3, &p3),
        (&k33, &p3),
    ];
    // Top up to 20 with random small pairs.
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let extra: Vec<(SimplicialComplex, SimplicialComplex)> = (0..5)
        .map(|_| (common::random_graph(&mut rng, 5, 6), common::random_graph(&mut rng, 5, 6)))
        .collect();
    for (a, b) in &extra {
        pairs.push((a, b));
    }
    assert_eq!(pairs.len(), 20);

    for (i, (a, b)) in pairs.iter().enumerate() {
        let union = a.disjoint_union(b).unwrap();
        let (ra, rb, ru) = (rank_of(a), rank_of(b), rank_of(&union));
        assert_eq!(ru, ra + rb, "pair {i}: {ra} + {rb} != {ru}");
        if i == 0 {
            assert_eq!(ru, 2, "two copies of K5 have rank 2");
        }
    }

    let elapsed = start.elapsed();
    println!("[criterion 4] PASS rank additivity on 20 pairs in {elapsed:?}");
}

/// Criterion 5: decomposition round-trips, bit-exact.
#[test]
fn criterion_05_decompositions() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(505);

    for _ in 0..100 {
        let n = rng.gen_range(1..=12);
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let b = rng.gen_bool(0.5);
                m.set(i, j, b);
                m.set(j, i, b);
            }
        }
        let a = SymMatrix2::new(m).unwrap();
        let (h, y) = decompose_gf2(&a);
        assert_eq!(&gramian2(&h, &y), a.matrix(), "round-trip");
        assert_eq!(h.nrows(), a.rank(), "H size equals rank");
        if a.rank() > 0 {
            let ht = SymMatrix2::new(h).unwrap().form_type();
            assert_eq!(ht, a.form_type(), "type preserved");
        }
    }

    for _ in 0..100 {
        let n = rng.gen_range(1..=10);
        let mut a = Matrix::<BigInt>::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                let v = BigInt::from(rng.gen_range(-20i64..=20));
                a.set(i, j, v.clone());
                a.set(j, i, -v);
            }
        }
        let (r, y) = decompose_skew_z(&a).unwrap();
        assert_eq!(r % 2, 0, "skew rank is even");
        assert_eq!(r, a.rank_over_q());
        let h = symplectic_int::<BigInt>(r / 2);
        assert_eq!(y.transpose().mul(&h.mul(&y)), a, "round-trip");
    }

    let mut built = 0;
    while built < 50 {
        let n = rng.gen_range(1..=6);
        let b: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
        if b.iter().all(|x| x == &BigInt::from(0)) {
            continue;
        }
        let a = Matrix::from_fn(n, n, |i, j| b[i].clone() * b[j].clone());
        let f = rank1_factor(&a).unwrap();
        let back = Matrix::from_fn(n, n, |i, j| f[i].clone() * f[j].clone());
        assert_eq!(back, a, "exact b^T b reconstruction");
        built += 1;
    }
    // Ten constructed violations: five non-square diagonals, five rank-2.
    for t in 0..10 {
        let a = if t < 5 {
            let d = BigInt::from([2, 3, 5, 7, 8][t]);
            Matrix::from_rows(vec![
                vec![d.clone(), d.clone()],
                vec![d.clone(), d],
            ])
        } else {
            let u = BigInt::from(t as i64 - 3);
            Matrix::from_rows(vec![
                vec![BigInt::from(1), BigInt::from(0)],
                vec![BigInt::from(0), u.clone() * u],
            ])
        };
        assert!(rank1_factor(&a).is_err(), "violation {t} must be rejected");
    }

    let elapsed = start.elapsed();
    println!("[criterion 5] PASS decompositions: 100+100 round-trips, 50 factorizations, 10 rejections in {elapsed:?}");
}

/// Criterion 6: rank-bound lemmas as property tests, 200 instances each.
#[test]
fn criterion_06_rank_bounds() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(606);

    // Gramian rank bound over GF(2) and over Q.
    for _ in 0..200 {
        let n = rng.gen_range(1..=9);
        let m = rng.gen_range(1..=9);
        let mut i2 = BitMatrix::zeros(n, n);
        for a in 0..n {
            for b in a..n {
                let v = rng.gen_bool(0.5);
                i2.set(a, b, v);
                i2.set(b, a, v);
            }
        }
        let mut y2 = BitMatrix::zeros(n, m);
        for a in 0..n {
            for b in 0..m {
                y2.set(a, b, rng.gen_bool(0.5));
            }
        }
        assert!(gramian2(&i2, &y2).rank() <= i2.rank());

        let iq = Matrix::from_fn(n, n, |a, b| {
            BigInt::from(if a <= b { (a * 7 + b * 3) as i64 % 5 - 2 } else { (b * 7 + a * 3) as i64 % 5 - 2 })
        });
        let yq = Matrix::from_fn(n, m, |_, _| BigInt::from(rng.gen_range(-4i64..=4)));
        let gram = yq.transpose().mul(&iq.mul(&yq));
        assert!(gram.rank_over_q() <= iq.rank_over_q());
    }

    // rk(AB) <= rk(B).
    for _ in 0..200 {
        let n = rng.gen_range(1..=9);
        let m = rng.gen_range(1..=9);
        let k = rng.gen_range(1..=9);
        let mut a = BitMatrix::zeros(n, m);
        let mut b = BitMatrix::zeros(m, k);
        for i in 0..n {
            for j in 0..m {
                a.set(i, j, rng.gen_bool(0.5));
            }
        }
        for i in 0..m {
            for j in 0..k {
                b.set(i, j, rng.gen_bool(0.5));
            }
        }
        assert!(a.mul(&b).rank() <= b.rank());
    }

    // An even Gramian of an odd form drops rank by at least one.
    let mut found = 0;
    let mut tries = 0;
    while found < 200 && tries < 20000 {
        tries += 1;
        let n = rng.gen_range(1..=8);
        let m = rng.gen_range(1..=8);
        let mut i2 = BitMatrix::zeros(n, n);
        for a in 0..n {
            for b in a..n {
                let v = rng.gen_bool(0.5);
                i2.set(a, b, v);
                i2.set(b, a, v);
            }
        }
        if SymMatrix2::new(i2.clone()).unwrap().form_type() != FormType::Odd {
            continue;
        }
        let mut y = BitMatrix::zeros(n, m);
        for a in 0..n {
            for b in 0..m {
                y.set(a, b, rng.gen_bool(0.5));
            }
        }
        let gram = gramian2(&i2, &y);
        if SymMatrix2::new(gram.clone()).unwrap().form_type() != FormType::Even {
            continue;
        }
        assert!(gram.rank() + 1 <= i2.rank(), "even Gramian of odd form");
        found += 1;
    }
    assert_eq!(found, 200, "generated enough alternate instances");

    let elapsed = start.elapsed();
    println!("[criterion 6] PASS rank-bound lemmas: 3 x 200 instances, 0 violations in {elapsed:?}");
}

/// Criterion 7: invariance suite. Cocycle classes are seed-independent,
/// C-van-Kampen numbers are map-independent, decider verdicts are
/// forest-independent, and integer cocycles are super-symmetric.
#[test]
fn criterion_07_invariance() {
    let start = Instant::now();
    let complexes = vec![
        k5(),
        catalog::complete_bipartite(3, 3),
        catalog::complete_graph(4).disjoint_union(&catalog::cycle(3)).unwrap(),
        catalog::deleted_simplex(2),
        catalog::simplex_skeleton(2, 4)
            .disjoint_union(&catalog::simplex_skeleton(2, 4))
            .unwrap(),
    ];
    for complex in &complexes {
        let system = CocycleSystem::new(complex).unwrap();
        let data: Vec<_> = (0..3u64).map(|s| intersection_data(complex, s).unwrap()).collect();
        // Seed independence of the class.
        for w in data.windows(2) {
            assert!(
                system.cohomologous2(&w[0].0, &w[1].0).is_some(),
                "cocycle class must not depend on the seed"
            );
        }
        // Map independence of every basis C-van-Kampen number.
        for cycle in system.two_k_cycle_basis() {
            let values: Vec<bool> =
                data.iter().map(|(nu, _)| system.evaluate2(nu, cycle)).collect();
            assert!(values.windows(2).all(|w| w[0] == w[1]));
        }
        // Super-symmetry of every generated integer cocycle.
        let parity = complex.k() % 2 == 1;
        for (_, nuz) in &data {
            for idx in 0..nuz.len() {
                let fwd = nuz.value(idx, false);
                let bwd = nuz.value(idx, true);
                assert_eq!(fwd, if parity { -bwd } else { bwd });
            }
        }
    }

    // Forest independence of the decider.
    for complex in [k5(), catalog::complete_bipartite(3, 3)] {
        let default = Z2Context::new(&complex, 0).unwrap();
        let order: Vec<usize> = (0..complex.len()).rev().collect();
        let alt = Z2Context::with_forest(
            &complex,
            0,
            maximal_k_forest_2_ordered(&complex, &order),
        )
        .unwrap();
        for (r, t) in [(0, FormType::Even), (1, FormType::Odd), (2, FormType::Even)] {
            let h = form_matrix_2(r, t).unwrap();
            assert_eq!(
                decide_z2_with(&complex, &default, &h, false).unwrap().is_yes(),
                decide_z2_with(&complex, &alt, &h, false).unwrap().is_yes(),
                "forest choice changed the verdict"
            );
        }
    }

    let elapsed = start.elapsed();
    println!("[criterion 7] PASS invariance suite in {elapsed:?}");
}

/// Criterion 8: an even embedding into an odd form of rank r forces an
/// embedding into the even form of rank 2*floor((r-1)/2).
#[test]
fn criterion_08_even_embedding_consequence() {
    let start = Instant::now();
    let mut complexes = vec![
        k5(),
        catalog::complete_bipartite(3, 3),
        catalog::complete_graph(4),
        catalog::cycle(4),
        catalog::path(3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    for _ in 0..10 {
        complexes.push(common::random_graph(&mut rng, 6, 8));
    }
    let mut hits = 0;
    for complex in &complexes {
        for r in 1..=3usize {
            if !decide_even_z2(complex, r, FormType::Odd, 0).unwrap().is_yes() {
                continue;
            }
            let even_rank = 2 * ((r - 1) / 2);
            assert!(
                decide_z2(complex, even_rank, FormType::Even, 0).unwrap().is_yes(),
                "even yes at ({r}, odd) must give yes at ({even_rank}, even)"
            );
            hits += 1;
        }
    }
    assert!(hits > 5, "the sample must exercise the implication");

    let elapsed = start.elapsed();
    println!("[criterion 8] PASS even-embedding consequence, {hits} implications in {elapsed:?}");
}

/// Criterion 9: integer-ring consistency on K5 and the mod 2 necessity of
/// every integer yes.
#[test]
fn criterion_09_z_ring_consistency() {
    let start = Instant::now();
    let k5 = k5();

    let yes = decide_z_form(&k5, &FormSpec::Symplectic { g: 1 }, 1, 0).unwrap();
    assert!(yes.is_yes());
    // Re-verify the witness externally: rebuild the homomorphism and pass it
    // through the integer cohomology test.
    let Some(WitnessData::HomInt { rows, .. }) = &yes.witness else {
        panic!("missing integer witness")
    };
    {
        use embed2k::cocycle::{intersection_data, omega_z, HomZ};
        use embed2k::complex::maximal_k_forest_z;
        let system = CocycleSystem::new(&k5).unwrap();
        let forest = maximal_k_forest_z(&k5).unwrap();
        let hom = HomZ {
            matrix: Matrix::from_fn(2, forest.cycle_dim(), |i, j| BigInt::from(rows[i][j])),
        };
        let h = symplectic_int::<BigInt>(1);
        let omega = omega_z(&k5, system.pairs(), &forest, &hom, &h).unwrap();
        let (_, nuz) = intersection_data(&k5, 0).unwrap();
        assert!(system.cohomologous_z(&omega, &nuz).is_some(), "witness re-verifies");
    }

    let no = decide_z_form(&k5, &FormSpec::Symplectic { g: 0 }, 1, 0).unwrap();
    assert!(no.is_no());
    assert_eq!(no.certificate.as_deref(), Some("mod2-realizability"));

    // Every integer yes implies the mod 2 yes on the reduced form.
    let samples: Vec<(SimplicialComplex, FormSpec)> = vec![
        (k5.clone(), FormSpec::Symplectic { g: 1 }),
        (catalog::path(3), FormSpec::Symplectic { g: 1 }),
        (catalog::complete_graph(4), FormSpec::ZMatrix(Matrix::zeros(1, 1))),
        (catalog::cycle(4), FormSpec::Symplectic { g: 1 }),
        (catalog::simplex_skeleton(2, 4), FormSpec::Diagonal { r_plus: 1, r_minus: 0 }),
    ];
    for (complex, spec) in &samples {
        let d = decide_z_form(complex, spec, 1, 0).unwrap();
        if d.is_yes() {
            let m = embed2k::linalg::form_matrix_z(spec).unwrap();
            let mut form2 = BitMatrix::zeros(m.nrows(), m.ncols());
            let mut odd = false;
            for i in 0..m.nrows() {
                for j in 0..m.ncols() {
                    use num_integer::Integer;
                    if m.at(i, j).is_odd() {
                        form2.set(i, j, true);
                        if i == j {
                            odd = true;
                        }
                    }
                }
            }
            let t = if odd { FormType::Odd } else { FormType::Even };
            assert!(
                decide_z2(complex, form2.rank(), t, 0).unwrap().is_yes(),
                "integer yes must reduce to a mod 2 yes"
            );
        }
    }

    let elapsed = start.elapsed();
    println!("[criterion 9] PASS integer-ring consistency in {elapsed:?}");
}

/// Criterion 10: the homotopy-class decider is a single linear solve and
/// completes on a complex with more than 2000 nonadjacent pairs in under
/// ten seconds.
#[test]
fn criterion_10_homotopy_class_scale() {
    let start = Instant::now();
    let c33 = catalog::cycle(33);
    let complex = c33.disjoint_union(&c33).unwrap();
    let system = CocycleSystem::new(&complex).unwrap();
    let n_pairs = system.pairs().len();
    assert!(n_pairs >= 2000, "got {n_pairs} pairs");

    // A drawing of the disjoint cycles: its class is trivial.
    let map = moment_map(&complex, 0).unwrap();
    let nu = intersection_cocycle2(&complex, &map).unwrap();
    let (ok, witness) = decide_in_homotopy_class2(&complex, &nu).unwrap();
    assert!(ok, "two disjoint cycles draw without independent odd crossings");
    assert!(witness.is_some());

    // A single cross-copy crossing is obstructed: it pairs oddly with the
    // product 2k-cycle of the two cycle classes.
    let forest = maximal_k_forest_2(&complex);
    let (a, b) = (forest.non_forest[0], forest.non_forest[1]);
    let (ca, cb) = (forest.hat_column[a].unwrap(), forest.hat_column[b].unwrap());
    let bracket =
        embed2k::cocycle::product_cycle(system.pairs(), &forest.hats[ca], &forest.hats[cb]);
    let one_idx = bracket.first_one().expect("cross bracket is nonempty");
    let single = Cocycle2::new(BitRow::from_indices(n_pairs, &[one_idx]));
    let (bad, _) = decide_in_homotopy_class2(&complex, &single).unwrap();
    assert!(!bad, "a lone crossing on a product cycle is not a coboundary");

    // A sum of elementary coboundaries is recognized with a witness.
    let mut sum = Cocycle2::zeros(n_pairs);
    let lower = complex.lower_faces();
    for (i, alpha) in lower.iter().take(8).enumerate() {
        let sigma = (i * 5) % complex.len();
        if complex.face(sigma).contains_all(alpha.vertices()) {
            continue;
        }
        let d = elementary_coboundary2(&complex, system.pairs(), alpha, sigma).unwrap();
        sum = sum.xor(&d);
    }
    let (ok, _) = decide_in_homotopy_class2(&complex, &sum).unwrap();
    assert!(ok);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "[criterion 10] PASS homotopy-class decider on {n_pairs} pairs in {elapsed:?}"
    );
}

/// Companion check: the two oracle engines agree wherever both run; keeps
/// the scalable engine honest against the literal enumeration.
#[test]
fn oracle_engines_cross_validate() {
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut compared = 0;
    for _ in 0..30 {
        let complex = common::random_graph(&mut rng, 5, 5);
        for t in [FormType::Even, FormType::Odd] {
            let lit = min_rank_literal(&complex, t, 1 << 22, 0);
            let ker = min_rank_kernel(&complex, t, 1 << 19, 0);
            if let (Ok(a), Ok(b)) = (&lit, &ker) {
                assert_eq!(a, b, "engines disagree on {complex:?} ({t:?})");
                compared += 1;
            }
        }
    }
    assert!(compared >= 40, "enough overlapping runs");
    println!("[extra] PASS oracle engines agree on {compared} runs");
}

/// Companion check: the decider/oracle equivalence also holds in dimension
/// two, where faces are triangles and the lower faces are edges.
#[test]
fn dimension_two_cross_validation() {
    let mut rng = ChaCha8Rng::seed_from_u64(1111);
    let budget = OracleBudget::default();
    let mut complexes: Vec<SimplicialComplex> = vec![
        catalog::simplex_skeleton(2, 4),
        catalog::simplex_skeleton(2, 4)
            .disjoint_union(&catalog::simplex_skeleton(2, 4))
            .unwrap(),
        SimplicialComplex::new(
            2,
            vec![vec![0, 1, 2], vec![3, 4, 5], vec![0, 1, 3], vec![2, 4, 5]],
        )
        .unwrap(),
    ];
    // Random pure 2-complexes: subsets of the triangles on 6 or 7 vertices.
    use itertools::Itertools;
    for _ in 0..12 {
        let v = rng.gen_range(6..=7);
        let all: Vec<Vec<usize>> = (0..v).combinations(3).collect();
        let count = rng.gen_range(2..=8);
        let mut chosen: Vec<Vec<usize>> = Vec::new();
        for _ in 0..count {
            chosen.push(all[rng.gen_range(0..all.len())].clone());
        }
        complexes.push(SimplicialComplex::new(2, chosen).unwrap());
    }

    let mut checked = 0;
    for complex in &complexes {
        for t in [FormType::Even, FormType::Odd] {
            let min = match min_rank_bruteforce(complex, t, budget, 0) {
                Ok(m) => m,
                Err(_) => continue, // beyond budget: skip
            };
            for r in 0..=3usize {
                if form_matrix_2(r, t).is_err() {
                    continue;
                }
                let verdict = decide_z2(complex, r, t, 0).unwrap().is_yes();
                assert_eq!(verdict, min <= r, "k=2 discrepancy at ({r}, {t:?})");
                checked += 1;
            }
        }
    }
    assert!(checked >= 60);
    println!("[extra] PASS k=2 decider == oracle on {checked} queries");
}

/// Companion anchors in dimension two: two disjoint 2-spheres embed at rank
/// zero, and the non-embeddable 2-skeleton of the 6-simplex is already
/// realizable at rank one (odd), with the witness machine-certified.
#[test]
fn dimension_two_anchors() {
    let s2 = catalog::simplex_skeleton(2, 4);
    let two_spheres = s2.disjoint_union(&s2).unwrap();
    assert!(decide_z2(&two_spheres, 0, FormType::Even, 0).unwrap().is_yes());
    assert!(matches!(
        z2_rank(&two_spheres, None, 0).unwrap(),
        Z2Rank::Known { rank: 0, .. }
    ));

    let d6 = catalog::deleted_simplex(2);
    assert!(decide_z2(&d6, 0, FormType::Even, 0).unwrap().is_no());
    match z2_rank(&d6, None, 0).unwrap() {
        Z2Rank::Known { rank, form_type } => {
            assert_eq!(rank, 1);
            assert_eq!(form_type, FormType::Odd);
        }
        Z2Rank::Unknown { .. } => panic!("rank of the deleted simplex is decidable"),
    }
}

/// Companion check: the integer decider accepts the classical toroidal
/// graphs at the symplectic form of genus one within bound one.
#[test]
fn toroidal_z_instances() {
    for complex in [k5(), catalog::complete_bipartite(3, 3)] {
        let d = decide_z_form(&complex, &FormSpec::Symplectic { g: 1 }, 1, 0).unwrap();
        assert!(d.is_yes());
    }
    // Planar graphs are trivially realizable with the zero assignment.
    let c5 = catalog::cycle(5);
    let d = decide_z_form(&c5, &FormSpec::Symplectic { g: 1 }, 1, 0).unwrap();
    assert!(d.is_yes());
    if let Some(WitnessData::HomInt { rows, .. }) = &d.witness {
        assert!(rows.iter().flatten().all(|&v| v == 0));
    }
}
