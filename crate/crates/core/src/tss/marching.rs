use std::collections::HashMap;

use super::{ScalarField, TssError, TssParams, ZeroCurve};

/// Grid edge between adjacent sample points, wrapped on the torus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum EdgeKey {
    /// From sample (i, j) to (i+1, j).
    H(usize, usize),
    /// From sample (i, j) to (i, j+1).
    V(usize, usize),
}

pub(crate) struct SampledGrid {
    pub grid: usize,
    pub offset: f64,
    pub values: Vec<Vec<f64>>,
}

impl SampledGrid {
    pub fn coord(&self, idx: usize) -> f64 {
        (idx as f64 + self.offset) / self.grid as f64
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i % self.grid][j % self.grid]
    }

    pub fn positive(&self, i: usize, j: usize) -> bool {
        self.value(i, j) > 0.0
    }
}

/// Sample the field on an offset grid, retrying the offset if a sample
/// lands too close to zero for sign decisions.
pub(crate) fn sample_grid<F: ScalarField>(f: &F, grid: usize) -> Result<SampledGrid, TssError> {
    const OFFSETS: [f64; 4] = [0.5, 0.317, 0.123, 0.871];
    'offsets: for &offset in &OFFSETS {
        let mut values = vec![vec![0.0f64; grid]; grid];
        for (i, col) in values.iter_mut().enumerate() {
            for (j, v) in col.iter_mut().enumerate() {
                let x = (i as f64 + offset) / grid as f64;
                let y = (j as f64 + offset) / grid as f64;
                *v = f.value(x, y);
                if v.abs() < 1e-13 {
                    continue 'offsets;
                }
            }
        }
        return Ok(SampledGrid {
            grid,
            offset,
            values,
        });
    }
    Err(TssError::GridDegenerate)
}

fn crossing(sg: &SampledGrid, key: EdgeKey) -> Option<(f64, f64)> {
    let (va, vb, pa, pb) = match key {
        EdgeKey::H(i, j) => (
            sg.value(i, j),
            sg.value(i + 1, j),
            (sg.coord(i), sg.coord(j)),
            (sg.coord(i) + 1.0 / sg.grid as f64, sg.coord(j)),
        ),
        EdgeKey::V(i, j) => (
            sg.value(i, j),
            sg.value(i, j + 1),
            (sg.coord(i), sg.coord(j)),
            (sg.coord(i), sg.coord(j) + 1.0 / sg.grid as f64),
        ),
    };
    if (va > 0.0) == (vb > 0.0) {
        return None;
    }
    let t = va / (va - vb);
    Some((
        (pa.0 + t * (pb.0 - pa.0)).rem_euclid(1.0),
        (pa.1 + t * (pb.1 - pa.1)).rem_euclid(1.0),
    ))
}

/// Does the contour cross this grid edge?
pub(crate) fn edge_crossed(sg: &SampledGrid, horizontal: bool, i: usize, j: usize) -> bool {
    if horizontal {
        sg.positive(i, j) != sg.positive(i + 1, j)
    } else {
        sg.positive(i, j) != sg.positive(i, j + 1)
    }
}

/// Marching squares on the periodic grid: segments per cell, chained into
/// closed loops of edge keys.
fn trace_loops<F: ScalarField>(f: &F, sg: &SampledGrid) -> Vec<Vec<EdgeKey>> {
    let g = sg.grid;
    let mut segments: Vec<(EdgeKey, EdgeKey)> = Vec::new();
    for i in 0..g {
        for j in 0..g {
            let bl = sg.positive(i, j);
            let br = sg.positive(i + 1, j);
            let tr = sg.positive(i + 1, j + 1);
            let tl = sg.positive(i, j + 1);
            let case = u8::from(bl) | u8::from(br) << 1 | u8::from(tr) << 2 | u8::from(tl) << 3;
            let bottom = EdgeKey::H(i, j);
            let top = EdgeKey::H(i, (j + 1) % g);
            let left = EdgeKey::V(i, j);
            let right = EdgeKey::V((i + 1) % g, j);
            match case {
                0 | 15 => {}
                1 | 14 => segments.push((left, bottom)),
                2 | 13 => segments.push((bottom, right)),
                3 | 12 => segments.push((left, right)),
                4 | 11 => segments.push((top, right)),
                6 | 9 => segments.push((bottom, top)),
                7 | 8 => segments.push((left, top)),
                5 | 10 => {
                    // Saddle: disambiguate with the cell center value.
                    let cx = sg.coord(i) + 0.5 / g as f64;
                    let cy = sg.coord(j) + 0.5 / g as f64;
                    let center_pos = f.value(cx, cy) > 0.0;
                    let connect_bl_tr = (case == 5) == center_pos;
                    if connect_bl_tr {
                        segments.push((left, top));
                        segments.push((bottom, right));
                    } else {
                        segments.push((left, bottom));
                        segments.push((top, right));
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    // Each crossed edge belongs to exactly two segments; walk the loops.
    let mut incident: HashMap<EdgeKey, Vec<usize>> = HashMap::new();
    for (si, (a, b)) in segments.iter().enumerate() {
        incident.entry(*a).or_default().push(si);
        incident.entry(*b).or_default().push(si);
    }
    let mut used = vec![false; segments.len()];
    let mut loops = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        let mut keys: Vec<EdgeKey> = Vec::new();
        let mut seg = start;
        let mut entry = segments[start].0;
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            let exit = if entry == a { b } else { a };
            keys.push(exit);
            let next = incident[&exit]
                .iter()
                .copied()
                .find(|&s| s != seg)
                .expect("closed contours on the torus pair every crossing");
            if next == start {
                break;
            }
            seg = next;
            entry = exit;
        }
        loops.push(keys);
    }
    loops
}

fn wrap_delta(a: f64, b: f64) -> f64 {
    let mut d = b - a;
    if d > 0.5 {
        d -= 1.0;
    }
    if d < -0.5 {
        d += 1.0;
    }
    d
}

/// Newton steps along the gradient until `|f| < target`. Coordinates are
/// reduced into the unit square only in `wrap` mode.
pub(crate) fn polish_point<F: ScalarField>(
    f: &F,
    mut p: (f64, f64),
    target: f64,
    grad_floor: f64,
    wrap: bool,
) -> Result<(f64, f64), TssError> {
    let reduce = |v: f64| if wrap { v.rem_euclid(1.0) } else { v };
    for _ in 0..60 {
        let v = f.value(p.0, p.1);
        if v.abs() < target {
            return Ok(p);
        }
        let (gx, gy) = f.gradient(p.0, p.1);
        let norm2 = gx * gx + gy * gy;
        if norm2.sqrt() < grad_floor {
            return Err(TssError::DegenerateZero {
                x: reduce(p.0),
                y: reduce(p.1),
            });
        }
        p = (reduce(p.0 - v * gx / norm2), reduce(p.1 - v * gy / norm2));
    }
    Err(TssError::PolishStalled {
        x: p.0,
        y: p.1,
        residual: f.value(p.0, p.1).abs(),
    })
}

fn grad_norm<F: ScalarField>(f: &F, p: (f64, f64)) -> f64 {
    let (gx, gy) = f.gradient(p.0, p.1);
    (gx * gx + gy * gy).sqrt()
}

/// Bisect the along-curve neighbourhood of the sampled gradient minimum.
/// A regular curve bottoms out at a positive value; a degeneracy between
/// samples drives the minimum towards zero until it crosses the floor.
fn refined_min_gradient<F: ScalarField>(
    f: &F,
    points: &[(f64, f64)],
    min_idx: usize,
    params: &TssParams,
) -> Result<f64, TssError> {
    let m = points.len();
    let mut a = points[(min_idx + m - 1) % m];
    let mut mid = points[min_idx];
    let mut b = points[(min_idx + 1) % m];
    let midpoint = |p: (f64, f64), q: (f64, f64)| -> (f64, f64) {
        let dx = (q.0 - p.0 + 0.5).rem_euclid(1.0) - 0.5;
        let dy = (q.1 - p.1 + 0.5).rem_euclid(1.0) - 0.5;
        (
            (p.0 + dx / 2.0).rem_euclid(1.0),
            (p.1 + dy / 2.0).rem_euclid(1.0),
        )
    };
    for _ in 0..26 {
        if grad_norm(f, mid) < params.grad_floor {
            return Ok(grad_norm(f, mid));
        }
        let left = polish_point(
            f,
            midpoint(a, mid),
            params.polish_tol,
            params.grad_floor,
            true,
        );
        let right = polish_point(
            f,
            midpoint(mid, b),
            params.polish_tol,
            params.grad_floor,
            true,
        );
        let (left, right) = match (left, right) {
            (Ok(l), Ok(r)) => (l, r),
            // Polishing fell into the degeneracy itself.
            _ => return Ok(0.0),
        };
        let candidates = [a, left, mid, right, b];
        let best = (0..5)
            .min_by(|&i, &j| grad_norm(f, candidates[i]).total_cmp(&grad_norm(f, candidates[j])))
            .expect("nonempty");
        let (na, nm, nb) = match best {
            0 => (a, a, left),
            1 => (a, left, mid),
            2 => (left, mid, right),
            3 => (mid, right, b),
            _ => (right, b, b),
        };
        a = na;
        mid = nm;
        b = nb;
    }
    Ok(grad_norm(f, mid))
}

/// Newton iteration for `∇f = 0` from a seed; `Some` when it converges
/// to a genuine critical point.
fn critical_point_near<F: ScalarField>(f: &F, seed: (f64, f64)) -> Option<(f64, f64)> {
    let mut p = seed;
    for _ in 0..50 {
        let (gx, gy) = f.gradient(p.0, p.1);
        if (gx * gx + gy * gy).sqrt() < 1e-11 {
            return Some(p);
        }
        let h = f.hessian(p.0, p.1);
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        if det.abs() < 1e-12 {
            return None;
        }
        let dx = (-gx * h[1][1] + gy * h[0][1]) / det;
        let dy = (gx * h[1][0] - gy * h[0][0]) / det;
        if dx.abs() + dy.abs() > 0.25 {
            // Diverging away from the seed; not a nearby critical point.
            return None;
        }
        p = ((p.0 + dx).rem_euclid(1.0), (p.1 + dy).rem_euclid(1.0));
    }
    None
}

/// Trace, polish and orient the zero curves of the field. The traced set
/// must keep its gradient above the floor, otherwise the zero level is
/// not regular and the input is rejected.
pub(crate) fn find_zero_curves_impl<F: ScalarField>(
    f: &F,
    params: &TssParams,
) -> Result<Vec<ZeroCurve>, TssError> {
    let sg = sample_grid(f, params.grid)?;
    let loops = trace_loops(f, &sg);
    let mut curves = Vec::new();
    for keys in loops {
        let mut points = Vec::with_capacity(keys.len());
        for key in &keys {
            let raw = crossing(&sg, *key).expect("loop keys are crossed edges");
            let polished = polish_point(f, raw, params.polish_tol, params.grad_floor, true)?;
            points.push(polished);
        }
        // Verify the curve tolerance and the gradient floor on the final
        // points, then chase the minimum gradient along the curve: a
        // degenerate point between samples reveals itself as a minimum
        // that keeps collapsing under bisection.
        let mut min_grad = f64::INFINITY;
        let mut min_idx = 0usize;
        for (idx, &(x, y)) in points.iter().enumerate() {
            if f.value(x, y).abs() >= params.curve_tol {
                return Err(TssError::PolishStalled {
                    x,
                    y,
                    residual: f.value(x, y).abs(),
                });
            }
            let (gx, gy) = f.gradient(x, y);
            let norm = (gx * gx + gy * gy).sqrt();
            if norm < min_grad {
                min_grad = norm;
                min_idx = idx;
            }
        }
        min_grad = refined_min_gradient(f, &points, min_idx, params)?;
        if min_grad < params.grad_floor {
            let (x, y) = points[min_idx];
            return Err(TssError::DegenerateZero { x, y });
        }
        // A suspiciously small minimum may sit next to a critical point of
        // f lying exactly on the zero level; decide with a Newton search
        // for ∇f = 0.
        const DEGENERACY_SCREEN: f64 = 1e-3;
        if min_grad < DEGENERACY_SCREEN {
            if let Some((cx, cy)) = critical_point_near(f, points[min_idx]) {
                if f.value(cx, cy).abs() < 1e-6 {
                    return Err(TssError::DegenerateZero { x: cx, y: cy });
                }
            }
        }
        // Orient along the tangent direction of (f_y, -f_x).
        let m = points.len();
        let mut alignment = 0.0;
        for k in 0..m {
            let p = points[k];
            let q = points[(k + 1) % m];
            let t = (wrap_delta(p.0, q.0), wrap_delta(p.1, q.1));
            let (gx, gy) = f.gradient(p.0, p.1);
            alignment += t.0 * gy - t.1 * gx;
        }
        if alignment < 0.0 {
            points.reverse();
        }
        // Homology class from unwrapped displacement.
        let mut dx = 0.0;
        let mut dy = 0.0;
        for k in 0..m {
            let p = points[k];
            let q = points[(k + 1) % m];
            dx += wrap_delta(p.0, q.0);
            dy += wrap_delta(p.1, q.1);
        }
        let homology = (dx.round() as i64, dy.round() as i64);
        if (dx - homology.0 as f64).abs() > 0.01 || (dy - homology.1 as f64).abs() > 0.01 {
            return Err(TssError::GridDegenerate);
        }
        curves.push(ZeroCurve {
            points,
            homology,
            min_gradient: min_grad,
        });
    }
    Ok(curves)
}
