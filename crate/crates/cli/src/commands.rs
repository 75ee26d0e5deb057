use std::io::Read;

use clap::Subcommand;
use serde::de::DeserializeOwned;
use serde::Serialize;

use dirackit::dirac::{
    ComplexDiracSubspace, DiracError, DiracPair, DiracSubspace, RoundtripReport,
};
use dirackit::groups::{picard_group, FiniteGroup, GroupError};
use dirackit::linalg::{ExactSubspace, LinalgError, Matrix, Scalar};
use dirackit::poisson::{
    gauge_bivector_at, graph_closure_check, jacobi_check, leaf_rank, poisson_bracket,
    twisted_poisson_check, PoissonError, Poly, PolyBivector, PolyThreeForm, PolyTwoForm,
};
use dirackit::qtorus::{
    generator_relation_check, n2_decide, orbit_bfs, replay_word, twisted_product, OrbitOutcome,
    QTorusError, QuadExt, SkewParam, TorusElement,
};
use dirackit::tss::{
    build_graph, graphs_isomorphic, regularized_volume, TorusFunction, TssError, TssGraph,
    TssParams,
};

use crate::config::{Config, Format};
use crate::AppError;

fn read_input(path: &str) -> Result<String, AppError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| AppError::malformed("stdin-io", format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| AppError::malformed("file-io", format!("cannot read {path}: {e}")))
    }
}

fn load<T: DeserializeOwned>(path: &str) -> Result<T, AppError> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| {
        AppError::malformed(
            "bad-json",
            format!("{path}: {e} (path {}:{})", e.line(), e.column()),
        )
    })
}

fn emit<T: Serialize>(config: &Config, value: &T, text: impl FnOnce() -> String) {
    match config.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("serializable output")
        ),
        _ => println!("{}", text()),
    }
}

fn dirac_err(e: DiracError) -> AppError {
    match e {
        DiracError::Linalg(LinalgError::DimensionMismatch(m)) => {
            AppError::malformed("dimension-mismatch", m)
        }
        DiracError::Linalg(l) => AppError::malformed("linalg", l.to_string()),
        other => AppError::domain("dirac-invalid", other.to_string()),
    }
}

fn poisson_err(e: PoissonError) -> AppError {
    match e {
        PoissonError::VarMismatch(a, b) => {
            AppError::malformed("var-mismatch", format!("variable counts {a} and {b}"))
        }
        PoissonError::Linalg(l) => AppError::malformed("linalg", l.to_string()),
        other => AppError::domain("poisson-invalid", other.to_string()),
    }
}

fn torus_err(e: QTorusError) -> AppError {
    match e {
        QTorusError::DimMismatch(a, b) => {
            AppError::malformed("dimension-mismatch", format!("sizes {a} and {b}"))
        }
        QTorusError::BadScalar(s) => AppError::malformed("bad-scalar", s),
        QTorusError::Linalg(l) => AppError::malformed("linalg", l.to_string()),
        other => AppError::domain("torus-invalid", other.to_string()),
    }
}

fn tss_err(e: TssError) -> AppError {
    match e {
        TssError::NotReal(a, b) => AppError::malformed(
            "fourier-not-real",
            format!("mode ({a}, {b}) breaks conjugate symmetry"),
        ),
        other => AppError::domain("non-tss", other.to_string()),
    }
}

fn group_err(e: GroupError) -> AppError {
    match e {
        GroupError::OrderCap(n, cap) => {
            AppError::domain("order-cap", format!("group order {n} exceeds cap {cap}"))
        }
        other => AppError::malformed("bad-group", other.to_string()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GcKind {
    /// The +i eigenspace of an almost complex operator (a square matrix
    /// with J² = −1).
    ComplexStructure,
    /// The eigenspace presentation of an invertible skew 2-form.
    Symplectic,
    /// The complexification of a real structure (never generalized
    /// complex).
    Complexify,
}

#[derive(Subcommand)]
pub enum DiracOp {
    /// Graph of a skew bivector matrix.
    FromBivector { pi: String },
    /// Graph of a skew 2-form matrix.
    FromTwoForm { omega: String },
    /// Structure from a range subspace and a skew form on it.
    FromPair { pair: String },
    /// Range and induced form of a structure.
    ToPair { l: String },
    /// Test the intersection-with-conjugate condition for a complex
    /// structure built from the given input.
    IsGc {
        input: String,
        #[arg(long, value_enum)]
        kind: GcKind,
    },
    /// Characteristic subspace V ∩ L.
    Kernel { l: String },
    /// Shear by a skew 2-form.
    Gauge { l: String, b: String },
    /// Restrict to a subspace of V.
    Restrict { l: String, w: String },
    /// Forward image along a linear map.
    Pushforward { l: String, f: String },
    /// Backward image along a linear map.
    Pullback { l: String, f: String },
    /// Roundtrip identities along a linear map.
    Roundtrip { l: String, f: String },
    /// Twisted-conjugation fiber from an operator and invariant form.
    CartanFiber { ad: String, beta: String },
}

#[derive(serde::Serialize)]
struct DiracOut {
    result: DiracSubspace,
    certificate: String,
}

fn emit_dirac(config: &Config, l: DiracSubspace) {
    let certificate = l.certificate();
    emit(
        config,
        &DiracOut {
            result: l.clone(),
            certificate: certificate.clone(),
        },
        || {
            format!(
                "{}\n{}",
                serde_json::to_string(&l).expect("serializable"),
                certificate
            )
        },
    );
}

pub fn run_dirac(op: DiracOp, config: &Config) -> Result<(), AppError> {
    match op {
        DiracOp::FromBivector { pi } => {
            let m: Matrix<Scalar> = load(&pi)?;
            let l = DiracSubspace::from_bivector(&m).map_err(dirac_err)?;
            emit_dirac(config, l);
        }
        DiracOp::FromTwoForm { omega } => {
            let m: Matrix<Scalar> = load(&omega)?;
            let l = DiracSubspace::from_two_form(&m).map_err(dirac_err)?;
            emit_dirac(config, l);
        }
        DiracOp::FromPair { pair } => {
            #[derive(serde::Deserialize)]
            struct PairIn {
                v_dim: usize,
                range: ExactSubspace,
                theta: Matrix<Scalar>,
            }
            let input: PairIn = load(&pair)?;
            let p = DiracPair::new(input.range, input.theta).map_err(dirac_err)?;
            emit_dirac(
                config,
                DiracSubspace::from_pair(&p, input.v_dim).map_err(dirac_err)?,
            );
        }
        DiracOp::IsGc { input, kind } => {
            let lc = match kind {
                GcKind::ComplexStructure => {
                    let j: Matrix<Scalar> = load(&input)?;
                    ComplexDiracSubspace::from_complex_structure(&j).map_err(dirac_err)?
                }
                GcKind::Symplectic => {
                    let w: Matrix<Scalar> = load(&input)?;
                    ComplexDiracSubspace::from_symplectic(&w).map_err(dirac_err)?
                }
                GcKind::Complexify => {
                    let l: DiracSubspace = load(&input)?;
                    ComplexDiracSubspace::complexify(&l)
                }
            };
            let verdict = lc.is_generalized_complex();
            emit(
                config,
                &serde_json::json!({ "generalized_complex": verdict }),
                || format!("generalized complex: {verdict}"),
            );
        }
        DiracOp::ToPair { l } => {
            let l: DiracSubspace = load(&l)?;
            let pair = l.to_pair().map_err(dirac_err)?;
            #[derive(serde::Serialize)]
            struct PairOut {
                range: ExactSubspace,
                theta: Matrix<Scalar>,
            }
            let out = PairOut {
                range: pair.range.clone(),
                theta: pair.theta.clone(),
            };
            emit(config, &out, || {
                format!(
                    "range dim {} of {}; theta is {}x{}",
                    pair.range.dim(),
                    pair.range.ambient_dim(),
                    pair.theta.rows(),
                    pair.theta.cols()
                )
            });
        }
        DiracOp::Kernel { l } => {
            let l: DiracSubspace = load(&l)?;
            let k = l.kernel().map_err(dirac_err)?;
            emit(config, &k, || {
                format!("kernel dimension {} in Q^{}", k.dim(), k.ambient_dim())
            });
        }
        DiracOp::Gauge { l, b } => {
            let l: DiracSubspace = load(&l)?;
            let b: Matrix<Scalar> = load(&b)?;
            emit_dirac(config, l.gauge(&b).map_err(dirac_err)?);
        }
        DiracOp::Restrict { l, w } => {
            let l: DiracSubspace = load(&l)?;
            let w: ExactSubspace = load(&w)?;
            emit_dirac(config, l.restrict(&w).map_err(dirac_err)?);
        }
        DiracOp::Pushforward { l, f } => {
            let l: DiracSubspace = load(&l)?;
            let f: Matrix<Scalar> = load(&f)?;
            emit_dirac(config, l.pushforward(&f).map_err(dirac_err)?);
        }
        DiracOp::Pullback { l, f } => {
            let l: DiracSubspace = load(&l)?;
            let f: Matrix<Scalar> = load(&f)?;
            emit_dirac(config, l.pullback(&f).map_err(dirac_err)?);
        }
        DiracOp::Roundtrip { l, f } => {
            let l: DiracSubspace = load(&l)?;
            let f: Matrix<Scalar> = load(&f)?;
            let report: RoundtripReport =
                DiracSubspace::roundtrip_laws(&f, &l).map_err(dirac_err)?;
            emit(config, &report, || format!("{report:?}"));
        }
        DiracOp::CartanFiber { ad, beta } => {
            let ad: Matrix<Scalar> = load(&ad)?;
            let beta: Matrix<Scalar> = load(&beta)?;
            emit_dirac(
                config,
                DiracSubspace::cartan_fiber(&ad, &beta).map_err(dirac_err)?,
            );
        }
    }
    Ok(())
}

fn parse_point(s: &str) -> Result<Vec<Scalar>, AppError> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<Scalar>()
                .map_err(|e| AppError::malformed("bad-scalar", e.to_string()))
        })
        .collect()
}

#[derive(Subcommand)]
pub enum PoissonOp {
    /// Bracket of two polynomials against a bivector.
    Bracket { f: String, g: String, pi: String },
    /// Squared-bracket integrability test.
    Jacobi { pi: String },
    /// Twisted integrability against a closed 3-form.
    Twisted { pi: String, phi: String },
    /// Pointwise gauged bivector matrix.
    GaugeAt {
        pi: String,
        b: String,
        #[arg(long)]
        point: String,
    },
    /// Rank of the evaluated bivector at a point.
    LeafRank {
        pi: String,
        #[arg(long)]
        point: String,
    },
}

pub fn run_poisson(op: PoissonOp, config: &Config) -> Result<(), AppError> {
    match op {
        PoissonOp::Bracket { f, g, pi } => {
            let f: Poly = load(&f)?;
            let g: Poly = load(&g)?;
            let pi: PolyBivector = load(&pi)?;
            let out = poisson_bracket(&f, &g, &pi).map_err(poisson_err)?;
            emit(config, &out, || format!("{out}"));
        }
        PoissonOp::Jacobi { pi } => {
            let pi: PolyBivector = load(&pi)?;
            let check = jacobi_check(&pi);
            let closed = graph_closure_check(&pi, None).map_err(poisson_err)?;
            #[derive(serde::Serialize)]
            struct JacobiOut {
                holds: bool,
                graph_closed: bool,
                residual: dirackit::poisson::PolyTrivector,
            }
            let out = JacobiOut {
                holds: check.holds,
                graph_closed: closed,
                residual: check.residual,
            };
            emit(config, &out, || {
                format!(
                    "jacobi: {}; graph closure agrees: {}",
                    out.holds,
                    out.holds == out.graph_closed
                )
            });
        }
        PoissonOp::Twisted { pi, phi } => {
            let pi: PolyBivector = load(&pi)?;
            let phi: PolyThreeForm = load(&phi)?;
            let check = twisted_poisson_check(&pi, &phi).map_err(poisson_err)?;
            #[derive(serde::Serialize)]
            struct TwistedOut {
                holds: bool,
                residual: dirackit::poisson::PolyTrivector,
            }
            let out = TwistedOut {
                holds: check.holds,
                residual: check.residual,
            };
            emit(config, &out, || {
                format!("twisted condition holds: {}", out.holds)
            });
        }
        PoissonOp::GaugeAt { pi, b, point } => {
            let pi: PolyBivector = load(&pi)?;
            let b: PolyTwoForm = load(&b)?;
            let point = parse_point(&point)?;
            let out = gauge_bivector_at(&pi, &b, &point).map_err(poisson_err)?;
            #[derive(serde::Serialize)]
            struct GaugeOut {
                defined: bool,
                matrix: Option<Matrix<Scalar>>,
            }
            let out = GaugeOut {
                defined: out.is_some(),
                matrix: out,
            };
            emit(config, &out, || {
                if out.defined {
                    format!("defined:\n{}", out.matrix.as_ref().expect("defined"))
                } else {
                    "undefined: sheared structure is not a bivector graph at this point".into()
                }
            });
        }
        PoissonOp::LeafRank { pi, point } => {
            let pi: PolyBivector = load(&pi)?;
            let point = parse_point(&point)?;
            if point.len() != pi.n_vars() {
                return Err(AppError::malformed(
                    "var-mismatch",
                    format!(
                        "point has {} entries, bivector has {}",
                        point.len(),
                        pi.n_vars()
                    ),
                ));
            }
            let rank = leaf_rank(&pi, &point);
            emit(config, &serde_json::json!({ "rank": rank }), || {
                format!("rank {rank}")
            });
        }
    }
    Ok(())
}

#[derive(Subcommand)]
pub enum TorusOp {
    /// Twisted product of two finitely supported elements.
    Product {
        f: String,
        g: String,
        pi: String,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
    },
    /// Generator exchange and unitarity relations.
    Relations { pi: String },
    /// Breadth-first orbit search between two parameters.
    Orbit {
        pi1: String,
        pi2: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Exact equivalence decision for a pair of 2x2 parameters.
    Decide2 {
        #[arg(long)]
        theta1: String,
        #[arg(long)]
        theta2: String,
    },
}

pub fn run_torus(op: TorusOp, config: &Config) -> Result<(), AppError> {
    match op {
        TorusOp::Product { f, g, pi, hbar } => {
            let f: TorusElement = load(&f)?;
            let g: TorusElement = load(&g)?;
            let pi: SkewParam = load(&pi)?;
            let out = twisted_product(&f, &g, &pi, hbar).map_err(torus_err)?;
            emit(config, &out, || {
                format!("support size {}", out.support().count())
            });
        }
        TorusOp::Relations { pi } => {
            let pi: SkewParam = load(&pi)?;
            let report =
                generator_relation_check(&pi, config.tol("relation")).map_err(torus_err)?;
            emit(config, &report, || {
                format!(
                    "relations {} (max deviation {:.3e})",
                    if report.pass { "pass" } else { "fail" },
                    report.max_deviation
                )
            });
        }
        TorusOp::Orbit { pi1, pi2, depth } => {
            let pi1: SkewParam = load(&pi1)?;
            let pi2: SkewParam = load(&pi2)?;
            let depth = depth.unwrap_or_else(|| config.cap("orbit-depth"));
            let outcome = orbit_bfs(&pi1, &pi2, depth).map_err(torus_err)?;
            if let OrbitOutcome::Equivalent { word } = &outcome {
                // The witness must replay to the target exactly.
                let replay = replay_word(&pi1, word).map_err(torus_err)?;
                if replay.is_none() {
                    return Err(AppError::domain(
                        "witness-replay",
                        "witness word passed through an undefined point",
                    ));
                }
            }
            emit(config, &outcome, || match &outcome {
                OrbitOutcome::Equivalent { word } => format!("equivalent via {word:?}"),
                OrbitOutcome::Unknown => "unknown within depth bound".to_string(),
            });
        }
        TorusOp::Decide2 { theta1, theta2 } => {
            let t1: QuadExt = theta1
                .parse()
                .map_err(|e: QTorusError| AppError::malformed("bad-scalar", e.to_string()))?;
            let t2: QuadExt = theta2
                .parse()
                .map_err(|e: QTorusError| AppError::malformed("bad-scalar", e.to_string()))?;
            let verdict = n2_decide(&t1, &t2);
            emit(config, &verdict, || format!("{verdict:?}").to_lowercase());
        }
    }
    Ok(())
}

#[derive(Subcommand)]
pub enum TssOp {
    /// Trace the zero set and build the classifying graph.
    Build {
        f: String,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        curve_tol: Option<f64>,
    },
    /// Compare two structures for Morita equivalence.
    Compare {
        f1: String,
        f2: String,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        period_tol: Option<f64>,
    },
    /// Principal-value volume.
    Volume {
        f: String,
        #[arg(long)]
        grid: Option<usize>,
    },
}

fn tss_params(config: &Config, grid: Option<usize>, curve_tol: Option<f64>) -> TssParams {
    TssParams {
        grid: grid.unwrap_or_else(|| config.cap("grid")),
        curve_tol: curve_tol.unwrap_or_else(|| config.tol("curve")),
        period_tol: config.tol("period"),
        ..TssParams::default()
    }
}

pub fn run_tss(op: TssOp, config: &Config) -> Result<(), AppError> {
    match op {
        TssOp::Build { f, grid, curve_tol } => {
            let f: TorusFunction = load(&f)?;
            let params = tss_params(config, grid, curve_tol);
            let graph: TssGraph = build_graph(&f, &params).map_err(tss_err)?;
            match config.format {
                Format::Dot => println!("{}", graph.to_dot()),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&graph).expect("serializable")
                ),
                Format::Text => {
                    println!(
                        "{} vertices, {} edges",
                        graph.vertices.len(),
                        graph.edges.len()
                    );
                    for (i, v) in graph.vertices.iter().enumerate() {
                        println!("vertex {i}: genus {}", v.genus);
                    }
                    for e in &graph.edges {
                        println!("edge {} -> {} period {:.9}", e.from, e.to, e.period);
                    }
                }
            }
        }
        TssOp::Compare {
            f1,
            f2,
            grid,
            period_tol,
        } => {
            let f1: TorusFunction = load(&f1)?;
            let f2: TorusFunction = load(&f2)?;
            let params = tss_params(config, grid, None);
            let g1 = build_graph(&f1, &params).map_err(tss_err)?;
            let g2 = build_graph(&f2, &params).map_err(tss_err)?;
            let tol = period_tol.unwrap_or_else(|| config.tol("period"));
            let verdict = graphs_isomorphic(&g1, &g2, tol);
            #[derive(serde::Serialize)]
            struct CompareOut {
                equivalent: bool,
                witness: Option<dirackit::tss::GraphIsomorphism>,
                graph1: TssGraph,
                graph2: TssGraph,
            }
            let out = CompareOut {
                equivalent: verdict.is_some(),
                witness: verdict,
                graph1: g1,
                graph2: g2,
            };
            emit(config, &out, || {
                if let Some(w) = &out.witness {
                    format!("Morita equivalent; vertex map {:?}", w.vertex_map)
                } else {
                    "NOT Morita equivalent: no label-preserving graph isomorphism".to_string()
                }
            });
        }
        TssOp::Volume { f, grid } => {
            let f: TorusFunction = load(&f)?;
            let eps: Vec<f64> = (0..5).map(|k| 0.16 / 2f64.powi(k)).collect();
            let grid = grid.unwrap_or_else(|| config.cap("grid"));
            let v =
                regularized_volume(&f, &eps, grid, config.tol("volume-settle")).map_err(tss_err)?;
            emit(
                config,
                &serde_json::json!({"volume": v, "regularization": "principal value, smooth even kernel"}),
                || format!("volume {v:.9} (principal value)"),
            );
        }
    }
    Ok(())
}

#[derive(Subcommand)]
pub enum FiniteOp {
    /// Picard group of a finite group.
    Picard {
        /// Preset (cyclic:N, dihedral:N, s3, q8, klein) or a JSON table
        /// file.
        group: String,
        #[arg(long)]
        cap: Option<usize>,
    },
}

fn parse_group(spec: &str) -> Result<FiniteGroup, AppError> {
    if let Some(n) = spec.strip_prefix("cyclic:") {
        let n: usize = n
            .parse()
            .map_err(|_| AppError::malformed("bad-group", format!("bad order in `{spec}`")))?;
        if n == 0 {
            return Err(AppError::malformed("bad-group", "order must be positive"));
        }
        return Ok(FiniteGroup::cyclic(n));
    }
    if let Some(n) = spec.strip_prefix("dihedral:") {
        let n: usize = n
            .parse()
            .map_err(|_| AppError::malformed("bad-group", format!("bad order in `{spec}`")))?;
        if n == 0 {
            return Err(AppError::malformed("bad-group", "order must be positive"));
        }
        return Ok(FiniteGroup::dihedral(n));
    }
    match spec {
        "s3" => Ok(FiniteGroup::symmetric3()),
        "q8" => Ok(FiniteGroup::quaternion()),
        "klein" => Ok(FiniteGroup::klein()),
        path => {
            #[derive(serde::Deserialize)]
            struct TableRepr {
                table: Vec<Vec<usize>>,
            }
            let repr: TableRepr = load(path)?;
            FiniteGroup::from_table(repr.table).map_err(group_err)
        }
    }
}

pub fn run_finite(op: FiniteOp, config: &Config) -> Result<(), AppError> {
    match op {
        FiniteOp::Picard { group, cap } => {
            let g = parse_group(&group)?;
            let cap = cap.unwrap_or_else(|| config.cap("picard-order"));
            let pic = picard_group(&g, cap).map_err(group_err)?;
            emit(config, &pic, || {
                let mut s = format!(
                    "Picard order {} (outer automorphisms of a group of order {})\n",
                    pic.order(),
                    g.order()
                );
                for (i, rep) in pic.class_reps.iter().enumerate() {
                    s.push_str(&format!(
                        "class {i}: bispace twisted by automorphism {rep:?}\n"
                    ));
                }
                s.pop();
                s
            });
        }
    }
    Ok(())
}
