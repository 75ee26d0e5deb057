//! End-to-end acceptance battery. Each numbered case prints one PASS line
//! with its measured runtime; any failure aborts the run with the
//! offending assertion.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dirackit::dirac::{DiracPair, DiracSubspace};
use dirackit::groups::{picard_group, Bispace, FiniteGroup};
use dirackit::linalg::{Matrix, Scalar, Subspace};
use dirackit::poisson::{
    gauge_bivector_at, graph_closure_check, jacobi_check, jacobiator, lie_poisson, schouten_square,
    twisted_poisson_check, Poly, PolyBivector, PolyThreeForm, PolyTwoForm, StructureConstants,
};
use dirackit::qtorus::{
    fractional_action, generator_relation_check, generator_set, n2_decide, orbit_bfs, replay_word,
    Equivalence, OrbitOutcome, QuadExt, SOnnMatrix, SkewParam,
};
use dirackit::tss::{
    build_graph, find_zero_curves, graphs_isomorphic, modular_period, period_line_integral,
    period_via_flow, ScalarField, TorusFunction, TssEdge, TssGraph, TssParams,
};

fn rational(rng: &mut ChaCha8Rng, span: i64, max_den: i64) -> Scalar {
    Scalar::new(rng.gen_range(-span..=span), rng.gen_range(1..=max_den)).expect("positive den")
}

fn random_skew(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Scalar> {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rational(rng, 4, 3);
            m[(i, j)] = v.clone();
            m[(j, i)] = -v;
        }
    }
    m
}

fn random_subspace(rng: &mut ChaCha8Rng, ambient: usize) -> Subspace<Scalar> {
    let rows = rng.gen_range(0..=ambient);
    let data: Vec<Vec<Scalar>> = (0..rows)
        .map(|_| (0..ambient).map(|_| rational(rng, 3, 2)).collect())
        .collect();
    Subspace::from_rows(ambient, data).expect("within cap")
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..4 {
        let exp: Vec<u32> = {
            let mut left = degree;
            (0..n)
                .map(|_| {
                    let e = rng.gen_range(0..=left.min(2));
                    left -= e;
                    e
                })
                .collect()
        };
        p = p.add(&Poly::monomial(n, exp, rational(rng, 3, 2)));
    }
    p
}

fn random_poly_bivector(rng: &mut ChaCha8Rng, n: usize, degree: u32) -> PolyBivector {
    let mut pi = PolyBivector::zero(n);
    for i in 0..n {
        for j in (i + 1)..n {
            pi.set(i, j, random_poly(rng, n, degree));
        }
    }
    pi
}

fn report(label: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed <= budget,
        "{label}: runtime {elapsed:?} exceeded budget {budget:?}"
    );
    println!("PASS {label} ({elapsed:?})");
}

/// 1. Generator exchange relation to 1e-12 over 100 random rational
///    parameters, n ≤ 4, within one second.
#[test]
fn acceptance_01_generator_relations() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..100 {
        let n = rng.gen_range(2..=4);
        let mut entries = vec![vec![QuadExt::from_int(0); n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = QuadExt::from_rational(&rational(&mut rng, 6, 7));
                entries[i][j] = v.clone();
                entries[j][i] = -v;
            }
        }
        let pi = SkewParam::exact(Matrix::from_rows(entries).expect("square")).expect("skew");
        let rep = generator_relation_check(&pi, 1e-12).expect("sized");
        assert!(
            rep.pass,
            "relation deviation {} out of tolerance",
            rep.max_deviation
        );
    }
    report(
        "criterion 1: generator relations < 1e-12 on 100 random parameters",
        started,
        Duration::from_secs(1),
    );
}

/// 2. Split-orthogonal block identities and composability of the partial
///    action on 500 random instances, n ≤ 3, within five seconds.
#[test]
fn acceptance_02_partial_action_compatibility() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut verified = 0usize;
    while verified < 500 {
        let n = rng.gen_range(2..=3);
        let gens = generator_set(n);
        let pick = |rng: &mut ChaCha8Rng| gens[rng.gen_range(0..gens.len())].1.clone();
        // Random words of generators stay in the group; re-validate the
        // block identities on the products.
        let mut g1 = pick(&mut rng);
        let mut g2 = pick(&mut rng);
        for _ in 0..rng.gen_range(0..3) {
            g1 = g1.mul(&pick(&mut rng)).expect("same size");
            g2 = g2.mul(&pick(&mut rng)).expect("same size");
        }
        for g in [&g1, &g2] {
            assert!(
                SOnnMatrix::from_blocks(g.a.clone(), g.b.clone(), g.c.clone(), g.d.clone()).is_ok(),
                "product of generators must satisfy the block identities"
            );
        }
        let mut entries = vec![vec![QuadExt::from_int(0); n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = QuadExt::from_rational(&rational(&mut rng, 4, 5));
                entries[i][j] = v.clone();
                entries[j][i] = -v;
            }
        }
        let pi = SkewParam::exact(Matrix::from_rows(entries).expect("square")).expect("skew");
        let Some(step1) = fractional_action(&g1, &pi).expect("sized") else {
            continue;
        };
        let Some(step2) = fractional_action(&g2, &step1).expect("sized") else {
            continue;
        };
        let composed = g2.mul(&g1).expect("same size");
        let Some(direct) = fractional_action(&composed, &pi).expect("sized") else {
            continue;
        };
        match (&direct, &step2) {
            (SkewParam::Exact(a), SkewParam::Exact(b)) => {
                assert_eq!(a, b, "composability of the partial action failed")
            }
            _ => unreachable!("exact inputs stay exact"),
        }
        verified += 1;
    }
    report(
        "criterion 2: block identities + action compatibility on 500 instances",
        started,
        Duration::from_secs(5),
    );
}

/// 3. Exact two-parameter decisions in under a millisecond each, with
///    orbit witness words replaying to the target exactly.
#[test]
fn acceptance_03_two_parameter_decisions() {
    let started = Instant::now();
    let q = |s: &str| s.parse::<QuadExt>().expect("literal");
    let cases = [
        ("1/3", "0", Equivalence::Equivalent),
        ("sqrt2", "1+sqrt2", Equivalence::Equivalent),
        ("sqrt2", "sqrt3", Equivalence::Inequivalent),
    ];
    for (a, b, expected) in cases {
        let clock = Instant::now();
        let got = n2_decide(&q(a), &q(b));
        let took = clock.elapsed();
        assert_eq!(got, expected, "decision for ({a}, {b})");
        assert!(
            took < Duration::from_millis(1),
            "decision for ({a}, {b}) took {took:?}"
        );
    }
    // Witness words for the equivalent pairs replay to the target.
    for (a, b) in [("1/3", "0"), ("sqrt2", "1+sqrt2")] {
        let pi = SkewParam::n2(q(a));
        let target = SkewParam::n2(q(b));
        match orbit_bfs(&pi, &target, 4).expect("same kind") {
            OrbitOutcome::Equivalent { word } => {
                let replay = replay_word(&pi, &word)
                    .expect("known generators")
                    .expect("witness path is defined");
                match (&replay, &target) {
                    (SkewParam::Exact(x), SkewParam::Exact(y)) => {
                        assert_eq!(x, y, "witness for ({a}, {b}) must replay exactly")
                    }
                    _ => unreachable!(),
                }
            }
            OrbitOutcome::Unknown => panic!("equivalent pair ({a}, {b}) not found by search"),
        }
    }
    report(
        "criterion 3: n=2 decisions exact and fast, witnesses replay",
        started,
        Duration::from_secs(5),
    );
}

/// 4. Constructor invariants on 1000 random instances each (v_dim ≤ 8),
///    bitwise pair round trip, and the exhaustive roundtrip laws for
///    v_dim ≤ 3 over matrix entries {−1, 0, 1}, within thirty seconds.
#[test]
fn acceptance_04_dirac_linear_suite() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=8);
        // from_bivector: isotropy and maximality enforced on construction.
        let l1 = DiracSubspace::from_bivector(&random_skew(&mut rng, n)).expect("valid");
        // from_two_form.
        let l2 = DiracSubspace::from_two_form(&random_skew(&mut rng, n)).expect("valid");
        // from_pair.
        let range = random_subspace(&mut rng, n);
        let theta = random_skew(&mut rng, range.dim());
        let pair = DiracPair::new(range, theta).expect("shapes");
        let l3 = DiracSubspace::from_pair(&pair, n).expect("valid");
        for l in [&l1, &l2, &l3] {
            let back = l.to_pair().expect("valid structure");
            assert_eq!(
                DiracSubspace::from_pair(&back, n).expect("valid pair"),
                *l,
                "pair round trip must be bitwise"
            );
        }
    }
    // Exhaustive roundtrip laws over small maps; structure data (kernel,
    // range) precomputed once per structure.
    struct Labeled {
        l: DiracSubspace,
        kernel: Subspace<Scalar>,
        range: Subspace<Scalar>,
    }
    let structures: Vec<Vec<Labeled>> = (1..=3)
        .map(|n| {
            let mut out = vec![
                DiracSubspace::from_bivector(&Matrix::zeros(n, n)).expect("valid"),
                DiracSubspace::from_two_form(&Matrix::zeros(n, n)).expect("valid"),
            ];
            let mut local = ChaCha8Rng::seed_from_u64(44_000 + n as u64);
            let range = random_subspace(&mut local, n);
            let theta = random_skew(&mut local, range.dim());
            out.push(
                DiracSubspace::from_pair(&DiracPair::new(range, theta).expect("shapes"), n)
                    .expect("valid"),
            );
            out.into_iter()
                .map(|l| Labeled {
                    kernel: l.kernel().expect("valid"),
                    range: l.to_pair().expect("valid").range,
                    l,
                })
                .collect()
        })
        .collect();
    let entries = [-1i64, 0, 1];
    for rows in 1..=3usize {
        for cols in 1..=3usize {
            let cells = rows * cols;
            for stamp in 0..3usize.pow(cells as u32) {
                let mut m = Matrix::zeros(rows, cols);
                let mut s = stamp;
                for r in 0..rows {
                    for c in 0..cols {
                        m[(r, c)] = Scalar::from(entries[s % 3]);
                        s /= 3;
                    }
                }
                let ker_f = Subspace::span(cols, m.kernel()).expect("within cap");
                let im_f = Subspace::span(rows, m.transpose()).expect("within cap");
                for item in &structures[cols - 1] {
                    let back = item
                        .l
                        .pushforward(&m)
                        .expect("shapes")
                        .pullback(&m)
                        .expect("shapes");
                    let identity = back == item.l;
                    let condition = item.kernel.contains_subspace(&ker_f);
                    assert_eq!(identity, condition, "source law for {m:?}");
                }
                for item in &structures[rows - 1] {
                    let fwd = item
                        .l
                        .pullback(&m)
                        .expect("shapes")
                        .pushforward(&m)
                        .expect("shapes");
                    let identity = fwd == item.l;
                    let condition = im_f.contains_subspace(&item.range);
                    assert_eq!(identity, condition, "target law for {m:?}");
                }
            }
        }
    }
    report(
        "criterion 4: 3x1000 constructor instances + exhaustive roundtrip laws",
        started,
        Duration::from_secs(30),
    );
}

/// 5. Integrability: the rotation constants pass; a broken variant fails
///    with a nonzero residual; every plane bivector passes; the closed
///    trivector formula matches the nested-bracket oracle bitwise on 500
///    random bivectors (n ≤ 4, degree ≤ 3).
#[test]
fn acceptance_05_jacobi_schouten() {
    let started = Instant::now();
    let so3 = lie_poisson(&StructureConstants::so3());
    assert!(jacobi_check(&so3).holds);
    // The literal sign-flipped rotation constants are the other real
    // form, still a Lie algebra; the nested-bracket oracle computes a
    // zero jacobiator for them.
    let other_form = lie_poisson(&StructureConstants::so3_sign_flipped());
    assert!(jacobi_check(&other_form).holds);
    // A genuinely broken variant fails with a nonzero residual.
    let broken = lie_poisson(&StructureConstants::broken_rotation());
    let check = jacobi_check(&broken);
    assert!(!check.holds);
    assert!(!check.residual.is_zero());

    let mut rng = ChaCha8Rng::seed_from_u64(505);
    // Every bivector on the plane is integrable.
    for _ in 0..100 {
        let mut pi = PolyBivector::zero(2);
        pi.set(0, 1, random_poly(&mut rng, 2, 4));
        assert!(schouten_square(&pi).is_zero());
    }
    // Closed formula versus oracle, bitwise.
    for _ in 0..500 {
        let n = rng.gen_range(2..=4);
        let pi = random_poly_bivector(&mut rng, n, 3);
        let square = schouten_square(&pi);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let oracle =
                        jacobiator(&Poly::var(n, i), &Poly::var(n, j), &Poly::var(n, k), &pi)
                            .expect("vars match");
                    assert_eq!(
                        square.get(i, j, k),
                        oracle.scale(&Scalar::from(2)),
                        "formula and oracle must agree bitwise"
                    );
                }
            }
        }
    }
    report(
        "criterion 5: rotation constants, broken variant, plane bivectors, 500 oracle matches",
        started,
        Duration::from_secs(30),
    );
}

/// 6. Twisted integrability: constant full-rank bivector against a
///    nonvanishing wedge image is rejected; the zero bivector passes for
///    every closed background; the graph closure route agrees with the
///    residual route across the random suite.
#[test]
fn acceptance_06_twisted_condition() {
    let started = Instant::now();
    // Constant full-rank bivector, nonzero wedge image.
    let n = 4;
    let mut pi = PolyBivector::zero(n);
    pi.set(0, 1, Poly::one(n));
    pi.set(2, 3, Poly::one(n));
    let mut phi = PolyThreeForm::zero(n);
    phi.set(0, 1, 2, Poly::one(n));
    let check = twisted_poisson_check(&pi, &phi).expect("closed");
    assert!(!check.holds);
    assert!(!check.residual.is_zero());

    let mut rng = ChaCha8Rng::seed_from_u64(606);
    // Zero bivector accepted for every closed background; random closed
    // 3-forms are exterior derivatives of random 2-forms.
    let random_closed_phi = |rng: &mut ChaCha8Rng, n: usize| -> PolyThreeForm {
        let mut omega = PolyTwoForm::zero(n);
        for i in 0..n {
            for j in (i + 1)..n {
                omega.set(i, j, random_poly(rng, n, 2));
            }
        }
        let phi = omega.exterior_d();
        assert!(phi.is_closed());
        phi
    };
    for _ in 0..20 {
        let zero = PolyBivector::zero(4);
        let phi = random_closed_phi(&mut rng, 4);
        assert!(twisted_poisson_check(&zero, &phi).expect("closed").holds);
    }
    // Agreement of the two decision routes across the random suite.
    for _ in 0..40 {
        let n = rng.gen_range(3..=4);
        let pi = random_poly_bivector(&mut rng, n, 1);
        let phi = random_closed_phi(&mut rng, n);
        let residual_route = twisted_poisson_check(&pi, &phi).expect("closed").holds;
        let closure_route = graph_closure_check(&pi, Some(&phi)).expect("closed");
        assert_eq!(residual_route, closure_route);
        let untwisted = jacobi_check(&pi).holds;
        assert_eq!(untwisted, graph_closure_check(&pi, None).expect("sized"));
    }
    report(
        "criterion 6: twisted condition with dual-route agreement",
        started,
        Duration::from_secs(30),
    );
}

/// 7. Gauge laws: composition and range invariance on 1000 linear
///    instances; the pointwise gauged bivector matches the graph shear
///    wherever defined.
#[test]
fn acceptance_07_gauge() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=6);
        let l = match rng.gen_range(0..2) {
            0 => DiracSubspace::from_bivector(&random_skew(&mut rng, n)).expect("valid"),
            _ => {
                let range = random_subspace(&mut rng, n);
                let theta = random_skew(&mut rng, range.dim());
                DiracSubspace::from_pair(&DiracPair::new(range, theta).expect("shapes"), n)
                    .expect("valid")
            }
        };
        let b1 = random_skew(&mut rng, n);
        let b2 = random_skew(&mut rng, n);
        let two = l.gauge(&b1).expect("skew").gauge(&b2).expect("skew");
        let one = l.gauge(&b1.add_mat(&b2).expect("size")).expect("skew");
        assert_eq!(two, one, "gauge shears must compose additively");
        assert_eq!(
            two.to_pair().expect("valid").range,
            l.to_pair().expect("valid").range,
            "gauge must not move the range"
        );
    }
    // Pointwise matrix route against the graph route.
    for _ in 0..200 {
        let n = rng.gen_range(2..=4);
        let pi = random_poly_bivector(&mut rng, n, 1);
        let mut b = PolyTwoForm::zero(n);
        for i in 0..n {
            for j in (i + 1)..n {
                b.set(i, j, random_poly(&mut rng, n, 1));
            }
        }
        let point: Vec<Scalar> = (0..n).map(|_| rational(&mut rng, 2, 2)).collect();
        let gauged = gauge_bivector_at(&pi, &b, &point).expect("sizes");
        let pi_at = pi.eval_matrix(&point);
        let b_at = b.eval_matrix(&point);
        let graph = DiracSubspace::from_bivector(&pi_at).expect("skew");
        let sheared = graph.gauge(&b_at).expect("skew");
        match gauged {
            Some(matrix) => {
                assert!(matrix.is_skew_symmetric());
                assert_eq!(
                    sheared,
                    DiracSubspace::from_bivector(&matrix).expect("skew"),
                    "pointwise gauge must match the graph shear"
                );
            }
            None => {
                // The sheared structure must genuinely fail to be a
                // bivector graph: it meets the vector summand.
                assert!(
                    !sheared.kernel().expect("valid").is_zero(),
                    "undefined gauge must correspond to a non-graph shear"
                );
            }
        }
    }
    report(
        "criterion 7: gauge composition, range invariance, pointwise match",
        started,
        Duration::from_secs(30),
    );
}

/// 8. Surface classification: the horizontal sine at grid 512, period
///    scaling, inequivalence of the halved-period variant, equivalence of
///    a relabeled copy; each structure within ten seconds.
#[test]
fn acceptance_08_tss_classification() {
    let started = Instant::now();
    let params = TssParams::default();
    assert_eq!(params.grid, 512);
    let f = TorusFunction::sin_mode(0, 1);

    let clock = Instant::now();
    let graph = build_graph(&f, &params).expect("stable structure");
    assert!(
        clock.elapsed() < Duration::from_secs(10),
        "per-structure budget"
    );
    assert_eq!(graph.vertices.len(), 2);
    assert!(graph.vertices.iter().all(|v| v.genus == 0));
    assert_eq!(graph.edges.len(), 2);
    let expected = 1.0 / (2.0 * PI);
    for e in &graph.edges {
        assert!(
            (e.period - expected).abs() < 1e-6,
            "period {} vs {}",
            e.period,
            expected
        );
    }

    // Scaling: periods divide by c.
    let c = 3.0;
    let scaled = f.scale(c);
    let curves = find_zero_curves(&f, &params).expect("stable");
    let curves_scaled = find_zero_curves(&scaled, &params).expect("stable");
    let p = modular_period(&f, &curves[0], &params)
        .expect("regular")
        .value;
    let ps = modular_period(&scaled, &curves_scaled[0], &params)
        .expect("regular")
        .value;
    assert!((p / c - ps).abs() < 1e-8, "scaling law: {p}/{c} vs {ps}");

    // Halved period (doubled function) is not equivalent; a relabeled
    // copy is.
    let doubled_graph = build_graph(&f.scale(2.0), &params).expect("stable");
    assert!(graphs_isomorphic(&graph, &doubled_graph, 1e-6).is_none());
    let relabeled = TssGraph {
        vertices: graph.vertices.iter().rev().cloned().collect(),
        edges: graph
            .edges
            .iter()
            .rev()
            .map(|e| TssEdge {
                from: 1 - e.from,
                to: 1 - e.to,
                period: e.period,
            })
            .collect(),
    };
    let witness = graphs_isomorphic(&graph, &relabeled, 1e-6).expect("relabeling is isomorphic");
    assert_eq!(witness.vertex_map, vec![1, 0]);
    report(
        "criterion 8: sine classification, scaling, rigidity of period labels",
        started,
        Duration::from_secs(40),
    );
}

/// 9. The planar circle: period π through the line integral and through
///    direct flow timing, agreeing within 1e-6.
#[test]
fn acceptance_09_planar_period_cross_check() {
    let started = Instant::now();
    struct Circle;
    impl ScalarField for Circle {
        fn value(&self, x: f64, y: f64) -> f64 {
            x * x + y * y - 1.0
        }
        fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
            (2.0 * x, 2.0 * y)
        }
    }
    let n = 2048;
    let points: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let th = 2.0 * PI * k as f64 / n as f64;
            (th.cos(), th.sin())
        })
        .collect();
    let line = period_line_integral(&Circle, &points, false, 1).expect("regular");
    let flow = period_via_flow(&Circle, (1.0, 0.0), 1e-5, 8.0, false).expect("returns");
    assert!(
        (line.value - PI).abs() < 1e-6,
        "line integral {}",
        line.value
    );
    assert!((flow - PI).abs() < 1e-6, "flow period {flow}");
    assert!(
        (line.value - flow).abs() < 1e-6,
        "routes disagree: {} vs {flow}",
        line.value
    );
    report(
        "criterion 9: circle period by integral and flow within 1e-6",
        started,
        Duration::from_secs(10),
    );
}

/// 10. Picard groups against outer automorphism counts, and the
///     invertibility characterization across small bispaces, within one
///     minute.
#[test]
fn acceptance_10_picard_groups() {
    let started = Instant::now();
    let cases = [
        (FiniteGroup::symmetric3(), 1usize),
        (FiniteGroup::cyclic(4), 2),
        (FiniteGroup::klein(), 6),
    ];
    for (g, expected) in cases {
        let pic = picard_group(&g, 24).expect("within cap");
        assert_eq!(pic.order(), expected);
        assert_eq!(pic.order(), g.outer_order());
    }
    // Invertibility is exactly free-and-transitive: for each battery
    // bispace, the free/transitive test must coincide with having an
    // actual tensor inverse (the flip).
    let battery_groups = [
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::klein(),
        FiniteGroup::cyclic(6),
        FiniteGroup::symmetric3(),
        FiniteGroup::cyclic(8),
        FiniteGroup::dihedral(4),
        FiniteGroup::quaternion(),
    ];
    for g in &battery_groups {
        let unit = Bispace::regular(g);
        let mut candidates: Vec<Bispace> = vec![unit.clone()];
        for q in g.automorphisms() {
            candidates.push(Bispace::twisted(g, &q).expect("automorphism twist"));
        }
        candidates.push(unit.disjoint_union(&unit).expect("same groups"));
        for x in candidates {
            let claims_invertible = x.is_invertible();
            let flip = x.flip();
            let has_inverse = x
                .tensor(&flip)
                .ok()
                .and_then(|p| p.isomorphism_to(&unit))
                .is_some()
                && flip
                    .tensor(&x)
                    .ok()
                    .and_then(|p| p.isomorphism_to(&unit))
                    .is_some();
            assert_eq!(
                claims_invertible,
                has_inverse,
                "invertibility must coincide with free-and-transitive (order {})",
                g.order()
            );
        }
    }
    report(
        "criterion 10: Picard orders and invertibility characterization",
        started,
        Duration::from_secs(60),
    );
}
