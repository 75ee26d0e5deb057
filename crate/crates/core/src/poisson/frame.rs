use crate::linalg::{ExactSubspace, Scalar};

use super::poly::Poly;
use super::tensors::{PolyBivector, PolyTwoForm};
use super::{pi_graph_image, sample_points, PoissonError};
use crate::poisson::PolyOneForm;

/// Presentations of a Dirac structure for which the bracket of admissible
/// functions can be computed exactly.
#[derive(Clone, Debug)]
pub enum DiracFrame {
    /// Graph of a polynomial bivector; every function is admissible and
    /// the bracket is the Poisson bracket.
    BivectorGraph(PolyBivector),
    /// Graph of a polynomial 2-form; admissibility means the differential
    /// lies in the pointwise image of the form.
    TwoFormGraph(PolyTwoForm),
    /// Constant product structure `F ⊕ F°`: admissible functions are
    /// constant along `F` and the induced form vanishes.
    Foliation(ExactSubspace),
}

const SAMPLES: usize = 40;

/// Bracket of admissible functions `{f, g} = θ(X_f, X_g)`, where `X_f`
/// is any lift with `(X_f, df)` in the structure. Any two lifts differ by
/// a characteristic vector, so the value is independent of the choice;
/// non-admissible inputs are rejected with a witness point.
pub fn admissible_bracket(f: &Poly, g: &Poly, frame: &DiracFrame) -> Result<Poly, PoissonError> {
    match frame {
        DiracFrame::BivectorGraph(pi) => {
            super::check_vars(f.n_vars(), pi.n_vars())?;
            super::check_vars(g.n_vars(), pi.n_vars())?;
            // The lift of dg in the graph; pairing with df gives the
            // bracket, and coincides with the Poisson bracket.
            let lift = pi_graph_image(pi, &PolyOneForm::d(g));
            Ok(PolyOneForm::d(f).pair(&lift))
        }
        DiracFrame::Foliation(f_sub) => {
            let n = f_sub.ambient_dim();
            super::check_vars(f.n_vars(), n)?;
            super::check_vars(g.n_vars(), n)?;
            for func in [f, g] {
                check_leafwise_constant(func, f_sub)?;
            }
            // The induced form on the range vanishes identically.
            Ok(Poly::zero(n))
        }
        DiracFrame::TwoFormGraph(omega) => {
            let n = omega.n_vars();
            super::check_vars(f.n_vars(), n)?;
            super::check_vars(g.n_vars(), n)?;
            if omega.components().all(|(_, p)| p.is_constant()) {
                return bracket_on_constant_two_form(f, g, omega);
            }
            for func in [f, g] {
                check_in_image(func, omega)?;
            }
            bracket_on_two_form_graph(f, g, omega)
        }
    }
}

/// Constant 2-form (possibly degenerate, any dimension): eliminate the
/// constant matrix exactly with the polynomial gradient as right-hand
/// side. Zero rows demand an identically vanishing residual, which is
/// the admissibility condition as a polynomial identity.
fn bracket_on_constant_two_form(
    f: &Poly,
    g: &Poly,
    omega: &PolyTwoForm,
) -> Result<Poly, PoissonError> {
    let n = omega.n_vars();
    let origin = vec![Scalar::from(0); n];
    // Column realization: solve ωᵀ X = ∇g.
    let mut w: Vec<Vec<Scalar>> = (0..n)
        .map(|r| (0..n).map(|c| omega.get(c, r).eval(&origin)).collect())
        .collect();
    let mut rhs_g: Vec<Poly> = (0..n).map(|c| g.partial(c)).collect();
    let mut rhs_f: Vec<Poly> = (0..n).map(|c| f.partial(c)).collect();
    // Forward elimination with exact pivots, applied to both right-hand
    // sides in lockstep.
    let mut pivot_row = 0usize;
    let mut pivot_cols: Vec<(usize, usize)> = Vec::new();
    for col in 0..n {
        let Some(pr) = (pivot_row..n).find(|&r| !w[r][col].is_zero()) else {
            continue;
        };
        w.swap(pivot_row, pr);
        rhs_g.swap(pivot_row, pr);
        rhs_f.swap(pivot_row, pr);
        let inv = w[pivot_row][col].recip().expect("pivot nonzero");
        for c in 0..n {
            w[pivot_row][c] = &w[pivot_row][c] * &inv;
        }
        rhs_g[pivot_row] = rhs_g[pivot_row].scale(&inv);
        rhs_f[pivot_row] = rhs_f[pivot_row].scale(&inv);
        for r in 0..n {
            if r != pivot_row && !w[r][col].is_zero() {
                let factor = w[r][col].clone();
                for c in 0..n {
                    let upd = &w[r][c] - &(&factor * &w[pivot_row][c]);
                    w[r][c] = upd;
                }
                rhs_g[r] = rhs_g[r].sub(&rhs_g[pivot_row].scale(&factor));
                rhs_f[r] = rhs_f[r].sub(&rhs_f[pivot_row].scale(&factor));
            }
        }
        pivot_cols.push((pivot_row, col));
        pivot_row += 1;
    }
    // Residual rows must vanish identically for both functions.
    for r in pivot_row..n {
        for rhs in [&rhs_g, &rhs_f] {
            if !rhs[r].is_zero() {
                let witness = sample_points(n, SAMPLES)
                    .into_iter()
                    .find(|p| !rhs[r].eval(p).is_zero())
                    .unwrap_or(origin.clone());
                return Err(PoissonError::NotAdmissible(witness));
            }
        }
    }
    // A particular lift: pivot variables from the reduced rows, free
    // variables zero. Any two lifts differ by a characteristic vector,
    // which admissible differentials annihilate.
    let mut lift = vec![Poly::zero(n); n];
    for &(row, col) in &pivot_cols {
        lift[col] = rhs_g[row].clone();
    }
    let mut out = Poly::zero(n);
    for (c, item) in lift.iter().enumerate() {
        out = out.add(&f.partial(c).mul(item));
    }
    Ok(out)
}

/// Admissibility for the product structure: `df` must kill the leaf
/// directions as a polynomial identity.
fn check_leafwise_constant(f: &Poly, f_sub: &ExactSubspace) -> Result<(), PoissonError> {
    let n = f_sub.ambient_dim();
    for r in 0..f_sub.dim() {
        let v = f_sub.basis().row(r);
        let mut directional = Poly::zero(n);
        for (i, coef) in v.iter().enumerate() {
            directional = directional.add(&f.partial(i).scale(coef));
        }
        if !directional.is_zero() {
            let witness = sample_points(n, SAMPLES)
                .into_iter()
                .find(|p| !directional.eval(p).is_zero())
                .unwrap_or_else(|| vec![Scalar::from(0); n]);
            return Err(PoissonError::NotAdmissible(witness));
        }
    }
    Ok(())
}

/// Admissibility for a 2-form graph at the sample points: `df(x)` must be
/// in the image of the form.
fn check_in_image(f: &Poly, omega: &PolyTwoForm) -> Result<(), PoissonError> {
    let n = omega.n_vars();
    for point in sample_points(n, SAMPLES) {
        let m = omega.eval_matrix(&point).transpose();
        let df: Vec<Scalar> = (0..n).map(|i| f.partial(i).eval(&point)).collect();
        if m.solve(&df).is_none() {
            return Err(PoissonError::NotAdmissible(point));
        }
    }
    Ok(())
}

/// On the graph of an invertible-as-polynomial 2-form the lift is the
/// adjugate solve `X_g = adj(ω̃) ∇g / det(ω̃)`; the bracket is
/// polynomial exactly when the determinant divides the numerator.
fn bracket_on_two_form_graph(
    f: &Poly,
    g: &Poly,
    omega: &PolyTwoForm,
) -> Result<Poly, PoissonError> {
    let n = omega.n_vars();
    if f.is_constant() || g.is_constant() {
        return Ok(Poly::zero(n));
    }
    // Polynomial matrix of the column realization of the form.
    let m: Vec<Vec<Poly>> = (0..n)
        .map(|r| (0..n).map(|c| omega.get(c, r)).collect())
        .collect();
    let det = poly_det(&m);
    if det.is_zero() {
        // Degenerate as a polynomial matrix: only the zero bracket can be
        // certified symbolically, which the constant shortcut above and
        // the admissibility check already covered.
        return Err(PoissonError::NonPolynomialBracket);
    }
    let adj = poly_adjugate(&m);
    // Numerator of df(X_g) with X_g = adj·∇g / det.
    let mut num = Poly::zero(n);
    for c in 0..n {
        let mut xg_c = Poly::zero(n);
        for a in 0..n {
            xg_c = xg_c.add(&adj[c][a].mul(&g.partial(a)));
        }
        num = num.add(&f.partial(c).mul(&xg_c));
    }
    num.div_exact(&det)
        .ok_or(PoissonError::NonPolynomialBracket)
}

fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let n_vars = m[0][0].n_vars();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = Poly::zero(n_vars);
    for (col, item) in m[0].iter().enumerate() {
        if item.is_zero() {
            continue;
        }
        let minor = poly_minor(m, 0, col);
        let term = item.mul(&poly_det(&minor));
        det = if col % 2 == 0 {
            det.add(&term)
        } else {
            det.sub(&term)
        };
    }
    det
}

fn poly_minor(m: &[Vec<Poly>], row: usize, col: usize) -> Vec<Vec<Poly>> {
    m.iter()
        .enumerate()
        .filter(|(r, _)| *r != row)
        .map(|(_, rvec)| {
            rvec.iter()
                .enumerate()
                .filter(|(c, _)| *c != col)
                .map(|(_, p)| p.clone())
                .collect()
        })
        .collect()
}

/// Adjugate: `adj(M)_ij = (−1)^{i+j} det(minor_ji)`, so `M adj(M) = det·I`.
fn poly_adjugate(m: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let n = m.len();
    let n_vars = m[0][0].n_vars();
    if n == 1 {
        return vec![vec![Poly::one(n_vars)]];
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let minor = poly_minor(m, j, i);
                    let d = poly_det(&minor);
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        d.neg()
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Subspace;
    use crate::poisson::{lie_poisson, poisson_bracket, StructureConstants};

    #[test]
    fn graph_frame_recovers_the_poisson_bracket() {
        let pi = lie_poisson(&StructureConstants::so3());
        let frame = DiracFrame::BivectorGraph(pi.clone());
        let f = Poly::var(3, 0).mul(&Poly::var(3, 1));
        let g = Poly::var(3, 2);
        let via_frame = admissible_bracket(&f, &g, &frame).unwrap();
        let direct = poisson_bracket(&f, &g, &pi).unwrap();
        assert_eq!(via_frame, direct);
    }

    #[test]
    fn foliation_frame_accepts_only_leafwise_constants() {
        let n = 3;
        let f_sub = Subspace::span(n, crate::linalg::int_matrix(&[&[1, 0, 0]])).unwrap();
        let frame = DiracFrame::Foliation(f_sub);
        // Constant along e1.
        let ok = Poly::var(n, 1).mul(&Poly::var(n, 2));
        let bad = Poly::var(n, 0);
        assert_eq!(admissible_bracket(&ok, &ok, &frame).unwrap(), Poly::zero(n));
        match admissible_bracket(&bad, &ok, &frame) {
            Err(PoissonError::NotAdmissible(witness)) => {
                assert_eq!(witness.len(), n);
            }
            other => panic!("expected non-admissible, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_two_form_admits_constants() {
        // ω = x1 dx1∧dx2: constants are admissible and bracket to zero.
        let mut omega = PolyTwoForm::zero(2);
        omega.set(0, 1, Poly::var(2, 0));
        let frame = DiracFrame::TwoFormGraph(omega);
        let c1 = Poly::constant(2, Scalar::from(4));
        let c2 = Poly::constant(2, Scalar::from(-9));
        assert!(admissible_bracket(&c1, &c2, &frame).unwrap().is_zero());
    }

    #[test]
    fn linearly_degenerate_two_form_rejects_transverse_functions() {
        let mut omega = PolyTwoForm::zero(2);
        omega.set(0, 1, Poly::var(2, 0));
        let frame = DiracFrame::TwoFormGraph(omega);
        // dg = x2 dx1 + x1 dx2 is not in the image on the degeneracy axis.
        let g = Poly::var(2, 0).mul(&Poly::var(2, 1));
        let c = Poly::constant(2, Scalar::from(1));
        assert!(matches!(
            admissible_bracket(&g, &c, &frame),
            Err(PoissonError::NotAdmissible(_))
        ));
    }

    #[test]
    fn admissible_pair_on_a_degenerate_two_form() {
        // f = x1², g = x1²x2 are admissible for ω = x1 dx1∧dx2 and the
        // lift algebra gives a polynomial bracket.
        let mut omega = PolyTwoForm::zero(2);
        omega.set(0, 1, Poly::var(2, 0));
        let frame = DiracFrame::TwoFormGraph(omega);
        let f = Poly::var(2, 0).mul(&Poly::var(2, 0));
        let g = f.mul(&Poly::var(2, 1));
        let out = admissible_bracket(&f, &g, &frame).unwrap();
        // df(X_g) with ω̃ X_g = dg works out to 2 x1².
        assert_eq!(out, f.scale(&Scalar::from(2)));
    }

    #[test]
    fn symplectic_two_form_graph_matches_inverse_bivector() {
        // ω = dx∧dy on Q²: the admissible bracket is the Poisson bracket
        // of Π with ω = (−Π)⁻¹, i.e. Π = −ω⁻¹ = ω for the standard block.
        let mut omega = PolyTwoForm::zero(2);
        omega.set(0, 1, Poly::one(2));
        let frame = DiracFrame::TwoFormGraph(omega);
        let f = Poly::var(2, 0).mul(&Poly::var(2, 0));
        let g = Poly::var(2, 1);
        let out = admissible_bracket(&f, &g, &frame).unwrap();
        let mut pi = PolyBivector::zero(2);
        pi.set(0, 1, Poly::one(2));
        let expected = poisson_bracket(&f, &g, &pi).unwrap();
        assert_eq!(out, expected);
    }

    #[test]
    fn constant_degenerate_two_form_brackets_block_functions() {
        // ω = dx∧dy on Q³: functions of (x, y) are admissible and bracket
        // like the planar block; anything moving along z is rejected with
        // a witness.
        let mut omega = PolyTwoForm::zero(3);
        omega.set(0, 1, Poly::one(3));
        let frame = DiracFrame::TwoFormGraph(omega);
        let f = Poly::var(3, 0).mul(&Poly::var(3, 0));
        let g = Poly::var(3, 0).mul(&Poly::var(3, 1));
        let out = admissible_bracket(&f, &g, &frame).unwrap();
        // ∂x f ∂y g − ∂y f ∂x g = 2x · x.
        assert_eq!(out, f.scale(&Scalar::from(2)));

        let bad = Poly::var(3, 2).mul(&Poly::var(3, 2));
        match admissible_bracket(&bad, &g, &frame) {
            Err(PoissonError::NotAdmissible(witness)) => assert_eq!(witness.len(), 3),
            other => panic!("expected rejection, got {other:?}"),
        }
    }
}
