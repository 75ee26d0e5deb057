//! Poisson structures `f ∂x ∧ ∂y` on the flat 2-torus with linearly
//! degenerate zero sets: zero-curve tracing, modular periods, the
//! genus/period-labeled oriented graph that classifies them up to Morita
//! equivalence, and the principal-value volume.
//!
//! The modular vector field of `f ∂x∧∂y` against the area form `dx∧dy`
//! is the hamiltonian field `(∂f/∂y, −∂f/∂x)`; it is tangent to the zero
//! curves and its travel time around a curve is `∮ ds / |∇f|`. The line
//! integral and a direct flow timing are implemented independently.

mod graph;
mod marching;
mod period;

pub use graph::{build_graph, graphs_isomorphic, GraphIsomorphism, TssEdge, TssGraph, TssVertex};
pub use period::{period_line_integral, period_via_flow, PeriodEstimate};

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TssError {
    #[error("zero set is degenerate near ({x}, {y}): gradient below the floor")]
    DegenerateZero { x: f64, y: f64 },
    #[error("root polishing stalled at ({x}, {y}) with residual {residual}")]
    PolishStalled { x: f64, y: f64, residual: f64 },
    #[error("could not find a sample grid with clean signs; zero is not a regular value at this resolution")]
    GridDegenerate,
    #[error("flow did not return to the section within {elapsed} time units")]
    FlowDidNotReturn { elapsed: f64 },
    #[error("fourier data violates the real-value symmetry at mode ({0}, {1})")]
    NotReal(i32, i32),
    #[error("volume estimates did not converge: tail {0:?}")]
    VolumeNotConverged(Vec<f64>),
    #[error("component has inconsistent topology: chi {chi}, boundaries {boundary}")]
    BadComponent { chi: i64, boundary: usize },
}

/// Real scalar field on the plane or torus with an analytic gradient.
pub trait ScalarField {
    fn value(&self, x: f64, y: f64) -> f64;
    fn gradient(&self, x: f64, y: f64) -> (f64, f64);

    /// Second derivatives `[[f_xx, f_xy], [f_yx, f_yy]]`; the default is
    /// a central difference of the gradient, enough for the critical
    /// point search used in degeneracy detection.
    fn hessian(&self, x: f64, y: f64) -> [[f64; 2]; 2] {
        let h = 1e-5;
        let (gxp, gyp) = self.gradient(x + h, y);
        let (gxm, gym) = self.gradient(x - h, y);
        let (hxp, hyp) = self.gradient(x, y + h);
        let (hxm, hym) = self.gradient(x, y - h);
        [
            [(gxp - gxm) / (2.0 * h), (hxp - hxm) / (2.0 * h)],
            [(gyp - gym) / (2.0 * h), (hyp - hym) / (2.0 * h)],
        ]
    }
}

/// Real-valued trigonometric polynomial on the torus, stored as finitely
/// many Fourier modes with the conjugate symmetry enforced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TorusFunctionRepr", into = "TorusFunctionRepr")]
pub struct TorusFunction {
    modes: BTreeMap<(i32, i32), (f64, f64)>,
}

#[derive(Serialize, Deserialize)]
struct ModeRepr {
    k: [i32; 2],
    re: f64,
    #[serde(default)]
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct TorusFunctionRepr {
    terms: Vec<ModeRepr>,
}

impl TryFrom<TorusFunctionRepr> for TorusFunction {
    type Error = TssError;
    fn try_from(repr: TorusFunctionRepr) -> Result<Self, TssError> {
        let mut modes = BTreeMap::new();
        for m in repr.terms {
            let prev = modes.insert((m.k[0], m.k[1]), (m.re, m.im));
            if prev.is_some() {
                return Err(TssError::NotReal(m.k[0], m.k[1]));
            }
        }
        TorusFunction::from_modes(modes)
    }
}

impl From<TorusFunction> for TorusFunctionRepr {
    fn from(f: TorusFunction) -> Self {
        TorusFunctionRepr {
            terms: f
                .modes
                .into_iter()
                .map(|((k1, k2), (re, im))| ModeRepr {
                    k: [k1, k2],
                    re,
                    im,
                })
                .collect(),
        }
    }
}

impl TorusFunction {
    /// Build from Fourier modes; missing conjugate modes are filled in,
    /// present ones must be consistent with a real-valued function.
    pub fn from_modes(modes: BTreeMap<(i32, i32), (f64, f64)>) -> Result<Self, TssError> {
        let mut full = modes.clone();
        for (&(k1, k2), &(re, im)) in &modes {
            match full.get(&(-k1, -k2)) {
                None => {
                    full.insert((-k1, -k2), (re, -im));
                }
                Some(&(cre, cim)) => {
                    if (cre - re).abs() > 1e-12 || (cim + im).abs() > 1e-12 {
                        return Err(TssError::NotReal(k1, k2));
                    }
                }
            }
        }
        if let Some(&(_, im)) = full.get(&(0, 0)) {
            if im.abs() > 1e-12 {
                return Err(TssError::NotReal(0, 0));
            }
        }
        Ok(TorusFunction { modes: full })
    }

    pub fn constant(c: f64) -> Self {
        let mut modes = BTreeMap::new();
        modes.insert((0, 0), (c, 0.0));
        TorusFunction { modes }
    }

    /// `sin(2π(k1 x + k2 y))`.
    pub fn sin_mode(k1: i32, k2: i32) -> Self {
        let mut modes = BTreeMap::new();
        modes.insert((k1, k2), (0.0, -0.5));
        modes.insert((-k1, -k2), (0.0, 0.5));
        TorusFunction { modes }
    }

    /// `cos(2π(k1 x + k2 y))`.
    pub fn cos_mode(k1: i32, k2: i32) -> Self {
        let mut modes = BTreeMap::new();
        modes.insert((k1, k2), (0.5, 0.0));
        modes.insert((-k1, -k2), (0.5, 0.0));
        TorusFunction { modes }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut modes = self.modes.clone();
        for (&k, &(re, im)) in &other.modes {
            let e = modes.entry(k).or_insert((0.0, 0.0));
            e.0 += re;
            e.1 += im;
        }
        TorusFunction { modes }
    }

    pub fn scale(&self, c: f64) -> Self {
        TorusFunction {
            modes: self
                .modes
                .iter()
                .map(|(&k, &(re, im))| (k, (c * re, c * im)))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1.0)
    }

    pub fn modes(&self) -> &BTreeMap<(i32, i32), (f64, f64)> {
        &self.modes
    }
}

impl ScalarField for TorusFunction {
    fn value(&self, x: f64, y: f64) -> f64 {
        let mut acc = 0.0;
        for (&(k1, k2), &(re, im)) in &self.modes {
            let phase = 2.0 * PI * (k1 as f64 * x + k2 as f64 * y);
            let c = Complex64::new(re, im);
            acc += (c * Complex64::new(0.0, phase).exp()).re;
        }
        acc
    }

    fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
        let mut gx = 0.0;
        let mut gy = 0.0;
        for (&(k1, k2), &(re, im)) in &self.modes {
            let phase = 2.0 * PI * (k1 as f64 * x + k2 as f64 * y);
            let c = Complex64::new(re, im);
            let deriv = (c * Complex64::new(0.0, phase).exp() * Complex64::new(0.0, 1.0)).re;
            gx += 2.0 * PI * k1 as f64 * deriv;
            gy += 2.0 * PI * k2 as f64 * deriv;
        }
        (gx, gy)
    }
}

/// An oriented closed zero curve: points ordered along the modular field,
/// winding numbers around the two torus directions, and the smallest
/// gradient magnitude seen on the curve.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroCurve {
    pub points: Vec<(f64, f64)>,
    pub homology: (i64, i64),
    pub min_gradient: f64,
}

/// Resolution and tolerance knobs.
#[derive(Clone, Debug)]
pub struct TssParams {
    pub grid: usize,
    pub curve_tol: f64,
    pub polish_tol: f64,
    pub grad_floor: f64,
    pub period_refinements: usize,
    pub period_tol: f64,
}

impl Default for TssParams {
    fn default() -> Self {
        TssParams {
            grid: 512,
            curve_tol: 1e-9,
            polish_tol: 1e-12,
            grad_floor: 1e-6,
            period_refinements: 1,
            period_tol: 1e-6,
        }
    }
}

/// Trace the zero set as disjoint oriented closed polylines. Inputs whose
/// zero level is not regular at working precision are rejected.
pub fn find_zero_curves<F: ScalarField>(
    f: &F,
    params: &TssParams,
) -> Result<Vec<ZeroCurve>, TssError> {
    marching::find_zero_curves_impl(f, params)
}

/// The modular period of one zero curve.
pub fn modular_period<F: ScalarField>(
    f: &F,
    curve: &ZeroCurve,
    params: &TssParams,
) -> Result<PeriodEstimate, TssError> {
    period_line_integral(f, &curve.points, true, params.period_refinements)
}

/// Principal-value estimate of `∫ (1/f) dA` over the torus. The limit is
/// taken through the smooth even regularization `∫ f/(f² + ε²) dA`, which
/// converges to the same principal value: the sharp `|f| > ε` cutoff
/// carries cell-quantization noise of order `1/(grid·ε)` that a fixed
/// grid cannot beat, while the smooth kernel is resolvable. Curvature of
/// `f` across its zero set leaves an `O(ε)` tail, removed by one
/// first-order Richardson step; the last extrapolants must settle within
/// the tolerance or the computation is rejected.
pub fn regularized_volume<F: ScalarField>(
    f: &F,
    eps_sequence: &[f64],
    grid: usize,
    settle_tol: f64,
) -> Result<f64, TssError> {
    assert!(eps_sequence.len() >= 3, "need at least three cutoffs");
    assert!(
        eps_sequence
            .windows(2)
            .all(|w| (w[1] - w[0] / 2.0).abs() < 1e-12),
        "cutoff sequence must halve at each step"
    );
    let sg = marching::sample_grid(f, grid)?;
    let cell_area = 1.0 / (grid * grid) as f64;
    let raw: Vec<f64> = eps_sequence
        .iter()
        .map(|&eps| {
            let mut total = 0.0;
            for col in &sg.values {
                for &v in col {
                    total += cell_area * v / (v * v + eps * eps);
                }
            }
            total
        })
        .collect();
    let extr: Vec<f64> = raw.windows(2).map(|w| 2.0 * w[1] - w[0]).collect();
    let tail: Vec<f64> = extr.iter().rev().take(2).copied().collect();
    let spread = tail
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    if spread.1 - spread.0 > settle_tol {
        return Err(TssError::VolumeNotConverged(extr));
    }
    Ok(*extr.last().expect("at least two extrapolants"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_function_evaluates_and_differentiates() {
        let f = TorusFunction::sin_mode(0, 1);
        assert!((f.value(0.3, 0.25) - 1.0).abs() < 1e-12);
        assert!(f.value(0.1, 0.0).abs() < 1e-12);
        let (gx, gy) = f.gradient(0.7, 0.0);
        assert!(gx.abs() < 1e-12);
        assert!((gy - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn non_real_fourier_data_is_rejected() {
        let mut modes = BTreeMap::new();
        modes.insert((0, 1), (1.0, 0.0));
        modes.insert((0, -1), (2.0, 0.0));
        assert!(matches!(
            TorusFunction::from_modes(modes),
            Err(TssError::NotReal(..))
        ));
    }

    #[test]
    fn horizontal_sine_has_two_opposite_essential_curves() {
        let f = TorusFunction::sin_mode(0, 1);
        let params = TssParams {
            grid: 128,
            ..TssParams::default()
        };
        let curves = find_zero_curves(&f, &params).unwrap();
        assert_eq!(curves.len(), 2);
        let mut classes: Vec<(i64, i64)> = curves.iter().map(|c| c.homology).collect();
        classes.sort_unstable();
        assert_eq!(classes, vec![(-1, 0), (1, 0)]);
        for c in &curves {
            for &(x, y) in &c.points {
                assert!(f.value(x, y).abs() < params.curve_tol);
            }
        }
    }

    #[test]
    fn positive_functions_have_no_zero_curves() {
        let f = TorusFunction::sin_mode(1, 0).add(&TorusFunction::constant(2.0));
        let params = TssParams {
            grid: 64,
            ..TssParams::default()
        };
        assert!(find_zero_curves(&f, &params).unwrap().is_empty());
    }

    #[test]
    fn degenerate_zero_set_is_rejected() {
        // sin(2πx)·sin(2πy) changes sign across its zero curves but the
        // gradient vanishes where they cross, so zero is not a regular
        // value.
        let f = TorusFunction::cos_mode(1, -1)
            .scale(0.5)
            .add(&TorusFunction::cos_mode(1, 1).scale(-0.5));
        let params = TssParams {
            grid: 64,
            ..TssParams::default()
        };
        match find_zero_curves(&f, &params) {
            Err(TssError::DegenerateZero { .. })
            | Err(TssError::GridDegenerate)
            | Err(TssError::PolishStalled { .. }) => {}
            other => panic!("expected degenerate rejection, got {other:?}"),
        }
    }

    #[test]
    fn sine_period_is_the_reciprocal_gradient() {
        let f = TorusFunction::sin_mode(0, 1);
        let params = TssParams {
            grid: 256,
            ..TssParams::default()
        };
        let curves = find_zero_curves(&f, &params).unwrap();
        for c in &curves {
            let p = modular_period(&f, c, &params).unwrap();
            assert!(
                (p.value - 1.0 / (2.0 * PI)).abs() < 1e-9,
                "period {} vs {}",
                p.value,
                1.0 / (2.0 * PI)
            );
        }
    }

    #[test]
    fn period_scales_inversely_with_the_function() {
        let f = TorusFunction::sin_mode(0, 1);
        let g = f.scale(3.0);
        let params = TssParams {
            grid: 256,
            ..TssParams::default()
        };
        let pf = {
            let c = &find_zero_curves(&f, &params).unwrap()[0];
            modular_period(&f, c, &params).unwrap().value
        };
        let pg = {
            let c = &find_zero_curves(&g, &params).unwrap()[0];
            modular_period(&g, c, &params).unwrap().value
        };
        assert!((pf / 3.0 - pg).abs() < 1e-10);
    }

    #[test]
    fn flow_timing_agrees_on_the_torus() {
        let f = TorusFunction::sin_mode(0, 1);
        let params = TssParams {
            grid: 128,
            ..TssParams::default()
        };
        let curves = find_zero_curves(&f, &params).unwrap();
        let start = curves[0].points[0];
        let t = period_via_flow(&f, start, 1e-5, 2.0, true).unwrap();
        assert!((t - 1.0 / (2.0 * PI)).abs() < 1e-7, "flow time {t}");
    }

    /// Plane-chart field for the analytic circle cross-check.
    struct Paraboloid;

    impl ScalarField for Paraboloid {
        fn value(&self, x: f64, y: f64) -> f64 {
            x * x + y * y - 1.0
        }
        fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
            (2.0 * x, 2.0 * y)
        }
    }

    #[test]
    fn circle_period_matches_pi_via_both_routes() {
        let n = 2000;
        let points: Vec<(f64, f64)> = (0..n)
            .map(|k| {
                let th = 2.0 * PI * k as f64 / n as f64;
                (th.cos(), th.sin())
            })
            .collect();
        let line = period_line_integral(&Paraboloid, &points, false, 1).unwrap();
        assert!(
            (line.value - PI).abs() < 1e-7,
            "line integral {}",
            line.value
        );
        let flow = period_via_flow(&Paraboloid, (1.0, 0.0), 1e-5, 8.0, false).unwrap();
        assert!((flow - PI).abs() < 1e-7, "flow time {flow}");
        assert!((line.value - flow).abs() < 1e-6);
    }

    #[test]
    fn reversing_sign_reverses_orientations_and_keeps_periods() {
        let f = TorusFunction::sin_mode(0, 1);
        let g = f.neg();
        let params = TssParams {
            grid: 128,
            ..TssParams::default()
        };
        let cf = find_zero_curves(&f, &params).unwrap();
        let cg = find_zero_curves(&g, &params).unwrap();
        let mut hf: Vec<(i64, i64)> = cf.iter().map(|c| c.homology).collect();
        let mut hg_rev: Vec<(i64, i64)> =
            cg.iter().map(|c| (-c.homology.0, -c.homology.1)).collect();
        hf.sort_unstable();
        hg_rev.sort_unstable();
        assert_eq!(hf, hg_rev);
        let pf = modular_period(&f, &cf[0], &params).unwrap().value;
        let pg = modular_period(&g, &cg[0], &params).unwrap().value;
        assert!((pf - pg).abs() < 1e-10);
    }

    #[test]
    fn volume_of_a_constant_is_its_reciprocal() {
        let f = TorusFunction::constant(4.0);
        let v = regularized_volume(&f, &[0.4, 0.2, 0.1, 0.05, 0.025], 128, 1e-4).unwrap();
        assert!((v - 0.25).abs() < 1e-4, "volume {v}");
    }

    #[test]
    fn odd_symmetric_function_has_zero_volume() {
        let f = TorusFunction::sin_mode(0, 1);
        let eps: Vec<f64> = (0..6).map(|k| 0.2 / 2f64.powi(k)).collect();
        let v = regularized_volume(&f, &eps, 256, 1e-3).unwrap();
        assert!(v.abs() < 1e-6, "volume {v}");
    }

    #[test]
    fn shifted_sine_volume_matches_a_one_dimensional_oracle() {
        // f depends on y alone, so the principal value reduces to a 1-D
        // integral, computed here with the same smooth regularization on
        // a far finer one-dimensional grid.
        let f = TorusFunction::sin_mode(0, 1).add(&TorusFunction::constant(0.5));
        let eps: Vec<f64> = (0..4).map(|k| 0.16 / 2f64.powi(k)).collect();
        let v = regularized_volume(&f, &eps, 512, 1e-3).unwrap();
        let oracle = {
            let n = 2_000_000usize;
            let one_d = |delta: f64| -> f64 {
                let mut total = 0.0;
                for k in 0..n {
                    let y = (k as f64 + 0.5) / n as f64;
                    let val = (2.0 * PI * y).sin() + 0.5;
                    total += val / (val * val + delta * delta) / n as f64;
                }
                total
            };
            // Same estimator on a far finer one-dimensional grid.
            2.0 * one_d(eps[3]) - one_d(eps[2])
        };
        assert!((v - oracle).abs() < 1e-4, "volume {v} vs oracle {oracle}");
    }
}
