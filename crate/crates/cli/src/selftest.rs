use dirackit::dirac::{DiracPair, DiracSubspace};
use dirackit::groups::{picard_group, FiniteGroup};
use dirackit::linalg::{Matrix, Scalar, Subspace};
use dirackit::poisson::{
    graph_closure_check, jacobi_check, jacobiator, poisson_bracket, schouten_square, Poly,
    PolyBivector,
};
use dirackit::qtorus::{
    fractional_action, generator_relation_check, generator_set, n2_decide, Equivalence, QuadExt,
    SkewParam,
};
use dirackit::tss::{build_graph, graphs_isomorphic, TorusFunction, TssGraph, TssParams};

use crate::config::Config;
use crate::AppError;

/// SplitMix64; deterministic for a fixed seed.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    fn rational(&mut self) -> Scalar {
        Scalar::new(self.int(-4, 4), self.int(1, 3)).expect("positive denominator")
    }
}

struct Battery {
    failures: usize,
}

impl Battery {
    fn check(&mut self, name: &str, ok: bool) {
        if ok {
            println!("PASS {name}");
        } else {
            println!("FAIL {name}");
            self.failures += 1;
        }
    }
}

fn random_subspace(rng: &mut Rng, ambient: usize) -> Subspace<Scalar> {
    let rows = rng.below(ambient as u64 + 1) as usize;
    let data: Vec<Vec<Scalar>> = (0..rows)
        .map(|_| (0..ambient).map(|_| rng.rational()).collect())
        .collect();
    Subspace::from_rows(ambient, data).expect("within cap")
}

fn random_skew(rng: &mut Rng, n: usize) -> Matrix<Scalar> {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = rng.rational();
            m[(i, j)] = v.clone();
            m[(j, i)] = -v;
        }
    }
    m
}

fn random_dirac(rng: &mut Rng, n: usize) -> DiracSubspace {
    match rng.below(3) {
        0 => DiracSubspace::from_bivector(&random_skew(rng, n)).expect("skew"),
        1 => DiracSubspace::from_two_form(&random_skew(rng, n)).expect("skew"),
        _ => {
            let range = random_subspace(rng, n);
            let k = range.dim();
            let theta = random_skew(rng, k);
            DiracSubspace::from_pair(&DiracPair::new(range, theta).expect("shapes"), n)
                .expect("pair")
        }
    }
}

fn random_poly(rng: &mut Rng, n: usize) -> Poly {
    let mut p = Poly::zero(n);
    for _ in 0..3 {
        let exp: Vec<u32> = (0..n).map(|_| rng.below(3) as u32).collect();
        p = p.add(&Poly::monomial(n, exp, rng.rational()));
    }
    p
}

fn random_poly_bivector(rng: &mut Rng, n: usize) -> PolyBivector {
    let mut pi = PolyBivector::zero(n);
    for i in 0..n {
        for j in (i + 1)..n {
            pi.set(i, j, random_poly(rng, n));
        }
    }
    pi
}

pub fn run(config: &Config) -> Result<(), AppError> {
    let mut rng = Rng(config
        .seed
        .wrapping_mul(2862933555777941757)
        .wrapping_add(1));
    let mut battery = Battery { failures: 0 };

    // Exact subspace laws.
    let mut grassmann = true;
    let mut annihilator = true;
    for _ in 0..300 {
        let n = 2 + rng.below(5) as usize;
        let a = random_subspace(&mut rng, n);
        let b = random_subspace(&mut rng, n);
        let sum = a.sum(&b).expect("same ambient");
        let meet = a.intersect(&b).expect("same ambient");
        grassmann &= a.dim() + b.dim() == sum.dim() + meet.dim();
        annihilator &= a.annihilator().annihilator() == a;
    }
    battery.check("linalg.grassmann-identity", grassmann);
    battery.check("linalg.double-annihilator", annihilator);

    // Dirac constructors certify isotropy/maximality on construction;
    // round trips and shear laws on top.
    let mut pair_roundtrip = true;
    let mut gauge_action = true;
    let mut restrict_agree = true;
    for _ in 0..100 {
        let n = 2 + rng.below(4) as usize;
        let l = random_dirac(&mut rng, n);
        let pair = l.to_pair().expect("valid structure");
        pair_roundtrip &= DiracSubspace::from_pair(&pair, n).expect("valid pair") == l;
        let b1 = random_skew(&mut rng, n);
        let b2 = random_skew(&mut rng, n);
        let two_step = l.gauge(&b1).expect("skew").gauge(&b2).expect("skew");
        let one_step = l.gauge(&b1.add_mat(&b2).expect("same size")).expect("skew");
        gauge_action &= two_step == one_step;
        let w = random_subspace(&mut rng, n);
        restrict_agree &=
            l.restrict(&w).expect("subspace") == l.restrict_via_pair(&w).expect("subspace");
    }
    battery.check("dirac.pair-roundtrip", pair_roundtrip);
    battery.check("dirac.gauge-is-an-action", gauge_action);
    battery.check("dirac.restriction-two-routes", restrict_agree);

    // Polynomial calculus: the closed trivector formula against the
    // nested-bracket oracle, and graph closure against the residual test.
    let mut schouten_oracle = true;
    let mut closure_agrees = true;
    let mut leibniz = true;
    for _ in 0..25 {
        let n = 3;
        let pi = random_poly_bivector(&mut rng, n);
        let square = schouten_square(&pi);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let oracle =
                        jacobiator(&Poly::var(n, i), &Poly::var(n, j), &Poly::var(n, k), &pi)
                            .expect("matching vars");
                    schouten_oracle &= square.get(i, j, k) == oracle.scale(&Scalar::from(2));
                }
            }
        }
        let check = jacobi_check(&pi);
        let closed = graph_closure_check(&pi, None).expect("sized");
        closure_agrees &= check.holds == closed;
        let f = random_poly(&mut rng, n);
        let g = random_poly(&mut rng, n);
        let h = random_poly(&mut rng, n);
        let lhs = poisson_bracket(&f, &g.mul(&h), &pi).expect("vars");
        let rhs = poisson_bracket(&f, &g, &pi)
            .expect("vars")
            .mul(&h)
            .add(&g.mul(&poisson_bracket(&f, &h, &pi).expect("vars")));
        leibniz &= lhs == rhs;
    }
    battery.check("poisson.schouten-vs-jacobiator", schouten_oracle);
    battery.check("poisson.graph-closure-agrees", closure_agrees);
    battery.check("poisson.leibniz-rule", leibniz);

    // Quantum torus: generator relations and the partial action.
    let mut relations = true;
    for _ in 0..10 {
        let n = 2 + rng.below(2) as usize;
        let mut entries = vec![vec![QuadExt::from_int(0); n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = QuadExt::from_rational(&rng.rational());
                entries[i][j] = v.clone();
                entries[j][i] = -v;
            }
        }
        let pi = SkewParam::exact(Matrix::from_rows(entries).expect("square")).expect("skew");
        let report = generator_relation_check(&pi, config.tol("relation")).expect("sized");
        relations &= report.pass;
    }
    battery.check("torus.generator-relations", relations);

    let mut compat = true;
    {
        let theta = QuadExt::from_rational(&Scalar::new(3, 7).expect("positive"));
        let pi = SkewParam::n2(theta);
        let gens = generator_set(2);
        for (_, g1) in &gens {
            for (_, g2) in &gens {
                let step = fractional_action(g1, &pi).expect("sized");
                let Some(step) = step else { continue };
                let Some(two) = fractional_action(g2, &step).expect("sized") else {
                    continue;
                };
                let composed = g2.mul(g1).expect("same size");
                let Some(direct) = fractional_action(&composed, &pi).expect("sized") else {
                    continue;
                };
                compat &=
                    matches!((direct, two), (SkewParam::Exact(a), SkewParam::Exact(b)) if a == b);
            }
        }
    }
    battery.check("torus.partial-action-compatibility", compat);

    let q = |s: &str| s.parse::<QuadExt>().expect("literal");
    battery.check(
        "torus.two-parameter-decisions",
        n2_decide(&q("1/3"), &q("0")) == Equivalence::Equivalent
            && n2_decide(&q("sqrt2"), &q("1+sqrt2")) == Equivalence::Equivalent
            && n2_decide(&q("sqrt2"), &q("sqrt3")) == Equivalence::Inequivalent,
    );

    // Picard orders against outer automorphism counts.
    let cap = config.cap("picard-order");
    let picard_ok = [
        (FiniteGroup::symmetric3(), 1usize),
        (FiniteGroup::cyclic(4), 2),
        (FiniteGroup::klein(), 6),
    ]
    .into_iter()
    .all(|(g, expected)| {
        picard_group(&g, cap)
            .map(|p| p.order() == expected && p.order() == g.outer_order())
            .unwrap_or(false)
    });
    battery.check("groups.picard-orders", picard_ok);

    // Surface invariants at a reduced grid.
    let tss_ok = {
        let f = TorusFunction::sin_mode(0, 1);
        let params = TssParams {
            grid: 128,
            ..TssParams::default()
        };
        match build_graph(&f, &params) {
            Ok(graph) => {
                let expected_period = 1.0 / (2.0 * std::f64::consts::PI);
                let shape_ok = graph.vertices.len() == 2
                    && graph.edges.len() == 2
                    && graph.vertices.iter().all(|v| v.genus == 0)
                    && graph
                        .edges
                        .iter()
                        .all(|e| (e.period - expected_period).abs() < config.tol("period"));
                let relabeled = TssGraph {
                    vertices: graph.vertices.iter().rev().cloned().collect(),
                    edges: graph
                        .edges
                        .iter()
                        .map(|e| dirackit::tss::TssEdge {
                            from: 1 - e.from,
                            to: 1 - e.to,
                            period: e.period,
                        })
                        .collect(),
                };
                let doubled = build_graph(&f.scale(2.0), &params).expect("still stable");
                shape_ok
                    && graphs_isomorphic(&graph, &relabeled, config.tol("period")).is_some()
                    && graphs_isomorphic(&graph, &doubled, config.tol("period")).is_none()
            }
            Err(_) => false,
        }
    };
    battery.check("tss.sine-classification", tss_ok);

    if battery.failures == 0 {
        println!("selftest: all suites passed");
        Ok(())
    } else {
        Err(AppError::domain(
            "selftest-failed",
            format!("{} suite(s) failed", battery.failures),
        ))
    }
}
