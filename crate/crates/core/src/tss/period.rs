use super::marching::polish_point;
use super::{ScalarField, TssError};

fn delta(a: f64, b: f64, wrap: bool) -> f64 {
    let d = b - a;
    if wrap {
        // Nearest-image difference, robust to arbitrarily many wraps.
        (d + 0.5).rem_euclid(1.0) - 0.5
    } else {
        d
    }
}

/// Period estimate with the two finest quadrature levels retained.
#[derive(Clone, Copy, Debug)]
pub struct PeriodEstimate {
    pub value: f64,
    pub error_estimate: f64,
}

fn midpoint_sum<F: ScalarField>(f: &F, points: &[(f64, f64)], wrap: bool) -> f64 {
    let m = points.len();
    let mut total = 0.0;
    for k in 0..m {
        let p = points[k];
        let q = points[(k + 1) % m];
        let (dx, dy) = (delta(p.0, q.0, wrap), delta(p.1, q.1, wrap));
        let len = (dx * dx + dy * dy).sqrt();
        let mid = (p.0 + dx / 2.0, p.1 + dy / 2.0);
        let (gx, gy) = f.gradient(mid.0, mid.1);
        total += len / (gx * gx + gy * gy).sqrt();
    }
    total
}

fn refine_points<F: ScalarField>(
    f: &F,
    points: &[(f64, f64)],
    wrap: bool,
) -> Result<Vec<(f64, f64)>, TssError> {
    let m = points.len();
    let mut out = Vec::with_capacity(2 * m);
    for k in 0..m {
        let p = points[k];
        let q = points[(k + 1) % m];
        let (dx, dy) = (delta(p.0, q.0, wrap), delta(p.1, q.1, wrap));
        let mid_raw = if wrap {
            (
                (p.0 + dx / 2.0).rem_euclid(1.0),
                (p.1 + dy / 2.0).rem_euclid(1.0),
            )
        } else {
            (p.0 + dx / 2.0, p.1 + dy / 2.0)
        };
        let mid = polish_point(f, mid_raw, 1e-13, 1e-9, wrap)?;
        out.push(p);
        out.push(mid);
    }
    Ok(out)
}

/// The period `∮ ds / |∇f|` along a closed polyline on the zero level:
/// midpoint rule with gradient evaluated on curve-polished chord
/// midpoints, one refinement halving, and Richardson extrapolation of the
/// second-order error.
pub fn period_line_integral<F: ScalarField>(
    f: &F,
    points: &[(f64, f64)],
    wrap: bool,
    refinements: usize,
) -> Result<PeriodEstimate, TssError> {
    let mut pts = points.to_vec();
    for _ in 0..refinements {
        pts = refine_points(f, &pts, wrap)?;
    }
    let coarse = midpoint_sum(f, &pts, wrap);
    let fine_pts = refine_points(f, &pts, wrap)?;
    let fine = midpoint_sum(f, &fine_pts, wrap);
    let value = (4.0 * fine - coarse) / 3.0;
    Ok(PeriodEstimate {
        value,
        error_estimate: (fine - coarse).abs() / 3.0,
    })
}

/// Time one full return of the flow of `(f_y, −f_x)` started on the zero
/// level; an independent computation of the same period. With `wrap` the
/// return is detected modulo the unit lattice, so curves winding around
/// the torus close up correctly.
pub fn period_via_flow<F: ScalarField>(
    f: &F,
    start: (f64, f64),
    dt: f64,
    max_time: f64,
    wrap: bool,
) -> Result<f64, TssError> {
    let field = |p: (f64, f64)| -> (f64, f64) {
        let (gx, gy) = f.gradient(p.0, p.1);
        (gy, -gx)
    };
    let rk4 = |p: (f64, f64), h: f64| -> (f64, f64) {
        let k1 = field(p);
        let k2 = field((p.0 + 0.5 * h * k1.0, p.1 + 0.5 * h * k1.1));
        let k3 = field((p.0 + 0.5 * h * k2.0, p.1 + 0.5 * h * k2.1));
        let k4 = field((p.0 + h * k3.0, p.1 + h * k3.1));
        (
            p.0 + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
            p.1 + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
        )
    };
    let v0 = field(start);
    let speed0 = (v0.0 * v0.0 + v0.1 * v0.1).sqrt();
    if speed0 == 0.0 {
        return Err(TssError::DegenerateZero {
            x: start.0,
            y: start.1,
        });
    }
    let n0 = (v0.0 / speed0, v0.1 / speed0);
    let offset = move |p: (f64, f64)| -> (f64, f64) {
        (delta(start.0, p.0, wrap), delta(start.1, p.1, wrap))
    };
    // Cross the section through the start point, transverse to the flow.
    let section = move |p: (f64, f64)| {
        let (dx, dy) = offset(p);
        dx * n0.0 + dy * n0.1
    };
    let near = move |p: (f64, f64)| {
        let (dx, dy) = offset(p);
        (dx * dx + dy * dy).sqrt() < 0.25
    };
    let mut t = 0.0;
    let mut p = start;
    let mut left_neighbourhood = false;
    while t < max_time {
        let q = rk4(p, dt);
        let t_next = t + dt;
        if !near(q) {
            left_neighbourhood = true;
        }
        if left_neighbourhood && near(q) && section(p) < 0.0 && section(q) >= 0.0 {
            // Linear interpolation of the crossing inside the step,
            // tightened by bisection on fresh integrations from p.
            let mut lo = 0.0;
            let mut hi = dt;
            for _ in 0..60 {
                let midstep = 0.5 * (lo + hi);
                let pm = rk4(p, midstep);
                if section(pm) < 0.0 {
                    lo = midstep;
                } else {
                    hi = midstep;
                }
            }
            return Ok(t + 0.5 * (lo + hi));
        }
        p = q;
        t = t_next;
    }
    Err(TssError::FlowDidNotReturn { elapsed: max_time })
}
