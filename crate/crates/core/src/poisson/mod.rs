//! Polynomial-coefficient multivector and form calculus on `Q^n`:
//! brackets, integrability checks (plain and twisted by a closed 3-form),
//! Courant brackets of sections, structure-constant linear brackets, the
//! induced bracket on 1-forms, pointwise ranks and gauge transforms.
//!
//! Coefficients are exact rationals throughout; every identity asserted
//! here is a polynomial identity, not an approximation. The only sampled
//! (semi-decided) checks are the explicitly pointwise ones, which draw
//! their rational sample points from a fixed deterministic sequence.

mod frame;
mod poly;
mod tensors;

pub use frame::{admissible_bracket, DiracFrame};
pub use poly::Poly;
pub use tensors::{
    PolyBivector, PolyOneForm, PolyThreeForm, PolyTrivector, PolyTwoForm, PolyVectorField,
};

use thiserror::Error;

use crate::linalg::{LinalgError, Matrix, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PoissonError {
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("background 3-form is not closed")]
    NotClosed,
    #[error("structure constants are not antisymmetric at ({0},{1},{2})")]
    NotAntisymmetric(usize, usize, usize),
    #[error("function is not admissible; witness point {0:?}")]
    NotAdmissible(Vec<Scalar>),
    #[error("bracket of admissible functions is not polynomial on this structure")]
    NonPolynomialBracket,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn check_vars(a: usize, b: usize) -> Result<(), PoissonError> {
    if a != b {
        return Err(PoissonError::VarMismatch(a, b));
    }
    Ok(())
}

/// `{f, g} = Σ_{i<j} Π_ij (∂_i f ∂_j g − ∂_j f ∂_i g)`.
pub fn poisson_bracket(f: &Poly, g: &Poly, pi: &PolyBivector) -> Result<Poly, PoissonError> {
    check_vars(f.n_vars(), pi.n_vars())?;
    check_vars(g.n_vars(), pi.n_vars())?;
    let n = pi.n_vars();
    let mut out = Poly::zero(n);
    for ((i, j), c) in pi.components() {
        let term = f
            .partial(i)
            .mul(&g.partial(j))
            .sub(&f.partial(j).mul(&g.partial(i)));
        out = out.add(&c.mul(&term));
    }
    Ok(out)
}

/// The derivation `{f, ·}` as a vector field: component `j` is
/// `Σ_i Π_ij ∂_i f`.
pub fn hamiltonian_vf(f: &Poly, pi: &PolyBivector) -> Result<PolyVectorField, PoissonError> {
    check_vars(f.n_vars(), pi.n_vars())?;
    let n = pi.n_vars();
    let mut comps = vec![Poly::zero(n); n];
    for ((i, j), c) in pi.components() {
        comps[j] = comps[j].add(&c.mul(&f.partial(i)));
        comps[i] = comps[i].sub(&c.mul(&f.partial(j)));
    }
    Ok(PolyVectorField::new(comps))
}

/// Contraction of a 1-form into the bivector, normalized so that
/// `pi_sharp(df) = hamiltonian_vf(f)`.
pub fn pi_sharp(alpha: &PolyOneForm, pi: &PolyBivector) -> Result<PolyVectorField, PoissonError> {
    check_vars(alpha.n_vars(), pi.n_vars())?;
    let n = pi.n_vars();
    let mut comps = vec![Poly::zero(n); n];
    for ((i, j), c) in pi.components() {
        comps[j] = comps[j].add(&c.mul(alpha.comp(i)));
        comps[i] = comps[i].sub(&c.mul(alpha.comp(j)));
    }
    Ok(PolyVectorField::new(comps))
}

/// `Π(α, β) = Σ_{i<j} Π_ij (α_i β_j − α_j β_i)`.
pub fn pi_pairing(alpha: &PolyOneForm, beta: &PolyOneForm, pi: &PolyBivector) -> Poly {
    let n = pi.n_vars();
    let mut out = Poly::zero(n);
    for ((i, j), c) in pi.components() {
        let term = alpha
            .comp(i)
            .mul(beta.comp(j))
            .sub(&alpha.comp(j).mul(beta.comp(i)));
        out = out.add(&c.mul(&term));
    }
    out
}

/// Sum of the three nested brackets `{{f,g},h} + {{g,h},f} + {{h,f},g}`.
/// Vanishes identically exactly when the bracket satisfies the Jacobi
/// identity; serves as the independent oracle for the closed trivector
/// formula below.
pub fn jacobiator(f: &Poly, g: &Poly, h: &Poly, pi: &PolyBivector) -> Result<Poly, PoissonError> {
    let a = poisson_bracket(&poisson_bracket(f, g, pi)?, h, pi)?;
    let b = poisson_bracket(&poisson_bracket(g, h, pi)?, f, pi)?;
    let c = poisson_bracket(&poisson_bracket(h, f, pi)?, g, pi)?;
    Ok(a.add(&b).add(&c))
}

/// The square bracket of the bivector with itself, normalized so that
/// `T(dx_i, dx_j, dx_k)` equals twice the jacobiator of the coordinate
/// triple. `T = 0` exactly when the bracket satisfies the Jacobi
/// identity.
pub fn schouten_square(pi: &PolyBivector) -> PolyTrivector {
    let n = pi.n_vars();
    let mut t = PolyTrivector::zero(n);
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mut comp = Poly::zero(n);
                for a in 0..n {
                    comp = comp
                        .add(&pi.get(a, i).mul(&pi.get(j, k).partial(a)))
                        .add(&pi.get(a, j).mul(&pi.get(k, i).partial(a)))
                        .add(&pi.get(a, k).mul(&pi.get(i, j).partial(a)));
                }
                t.set(i, j, k, comp.scale(&Scalar::from(2)));
            }
        }
    }
    t
}

/// Result of the twisted integrability test.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedCheck {
    pub holds: bool,
    pub residual: PolyTrivector,
}

/// Graph sections of the bivector, matching the graph constructor of the
/// Dirac module: section `p` is `(X_p, dx_p)` with `X_p^a = Π_ap`.
fn graph_section_fields(pi: &PolyBivector) -> Vec<PolyVectorField> {
    let n = pi.n_vars();
    (0..n)
        .map(|p| PolyVectorField::new((0..n).map(|a| pi.get(a, p)).collect()))
        .collect()
}

/// Whether `Π` is a Poisson structure twisted by the closed 3-form `φ`:
/// the jacobiator trivector must equal `φ` evaluated on the three legs of
/// the graph realization of `Π`. Returns the residual trivector.
pub fn twisted_poisson_check(
    pi: &PolyBivector,
    phi: &PolyThreeForm,
) -> Result<TwistedCheck, PoissonError> {
    check_vars(pi.n_vars(), phi.n_vars())?;
    if !phi.is_closed() {
        return Err(PoissonError::NotClosed);
    }
    let n = pi.n_vars();
    let fields = graph_section_fields(pi);
    let mut residual = PolyTrivector::zero(n);
    let half = Scalar::new(1, 2).expect("nonzero");
    let square = schouten_square(pi);
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let jac = square.get(i, j, k).scale(&half);
                let wedge = phi.eval_on_fields(&fields[i], &fields[j], &fields[k]);
                residual.set(i, j, k, jac.sub(&wedge));
            }
        }
    }
    Ok(TwistedCheck {
        holds: residual.is_zero(),
        residual,
    })
}

/// Plain integrability: `twisted_poisson_check` against the zero 3-form.
pub fn jacobi_check(pi: &PolyBivector) -> TwistedCheck {
    twisted_poisson_check(pi, &PolyThreeForm::zero(pi.n_vars()))
        .expect("zero form is closed and sized correctly")
}

/// The section bracket `⟦(X,α),(Y,β)⟧ = ([X,Y], L_X β − i_Y dα + φ(X,Y,·))`.
pub fn courant_bracket(
    s1: (&PolyVectorField, &PolyOneForm),
    s2: (&PolyVectorField, &PolyOneForm),
    phi: Option<&PolyThreeForm>,
) -> Result<(PolyVectorField, PolyOneForm), PoissonError> {
    let (x, alpha) = s1;
    let (y, beta) = s2;
    check_vars(x.n_vars(), alpha.n_vars())?;
    check_vars(y.n_vars(), beta.n_vars())?;
    check_vars(x.n_vars(), y.n_vars())?;
    let vec = x.lie_bracket(y);
    let mut form = x.lie_derivative(beta).sub(&alpha.exterior_d().contract(y));
    if let Some(phi) = phi {
        check_vars(x.n_vars(), phi.n_vars())?;
        form = form.add(&phi.contract2(x, y));
    }
    Ok((vec, form))
}

/// Closure of the graph of `Π` under the (possibly twisted) section
/// bracket, decided exactly: brackets of the graph frame sections must
/// lie back in the graph as a polynomial identity. Agrees with
/// [`twisted_poisson_check`].
pub fn graph_closure_check(
    pi: &PolyBivector,
    phi: Option<&PolyThreeForm>,
) -> Result<bool, PoissonError> {
    if let Some(phi) = phi {
        check_vars(pi.n_vars(), phi.n_vars())?;
        if !phi.is_closed() {
            return Err(PoissonError::NotClosed);
        }
    }
    let n = pi.n_vars();
    let fields = graph_section_fields(pi);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let dxi = PolyOneForm::coordinate(n, i);
            let dxj = PolyOneForm::coordinate(n, j);
            let (y, beta) = courant_bracket((&fields[i], &dxi), (&fields[j], &dxj), phi)?;
            // Membership in the graph: vector part = Π̃(covector part).
            let lift = pi_graph_image(pi, &beta);
            for c in 0..n {
                if !y.comp(c).sub(lift.comp(c)).is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The graph realization applied to a 1-form: component `c` of the image
/// is `Σ_a Π_ca β_a`, matching `graph_section_fields`.
fn pi_graph_image(pi: &PolyBivector, beta: &PolyOneForm) -> PolyVectorField {
    let n = pi.n_vars();
    PolyVectorField::new(
        (0..n)
            .map(|c| {
                let mut acc = Poly::zero(n);
                for a in 0..n {
                    acc = acc.add(&pi.get(c, a).mul(beta.comp(a)));
                }
                acc
            })
            .collect(),
    )
}

/// Antisymmetric structure constants `c_ij^k` defining a linear bracket
/// `{x_i, x_j} = Σ_k c_ij^k x_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    n: usize,
    c: Vec<Vec<Vec<Scalar>>>,
}

impl StructureConstants {
    pub fn new(n: usize, c: Vec<Vec<Vec<Scalar>>>) -> Result<Self, PoissonError> {
        assert_eq!(c.len(), n);
        for i in 0..n {
            assert_eq!(c[i].len(), n);
            for j in 0..n {
                assert_eq!(c[i][j].len(), n);
                for k in 0..n {
                    if c[i][j][k].clone() + c[j][i][k].clone() != Scalar::from(0) {
                        return Err(PoissonError::NotAntisymmetric(i, j, k));
                    }
                }
            }
        }
        Ok(StructureConstants { n, c })
    }

    /// Build from the upper triangle: entries `(i, j, k, value)` with
    /// `i < j`; the lower triangle is filled by antisymmetry.
    pub fn from_upper(n: usize, entries: &[(usize, usize, usize, i64)]) -> Self {
        let mut c = vec![vec![vec![Scalar::from(0); n]; n]; n];
        for &(i, j, k, v) in entries {
            assert!(i < j && j < n && k < n);
            c[i][j][k] = Scalar::from(v);
            c[j][i][k] = Scalar::from(-v);
        }
        StructureConstants { n, c }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Direct check of the Lie-algebra Jacobi identity on the constants.
    pub fn satisfies_jacobi(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut acc = Scalar::from(0);
                        for m in 0..n {
                            acc += &self.c[i][j][m] * &self.c[m][k][l]
                                + &self.c[j][k][m] * &self.c[m][i][l]
                                + &self.c[k][i][m] * &self.c[m][j][l];
                        }
                        if !acc.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Rotation-algebra constants: `{x1,x2}=x3`, `{x2,x3}=x1`,
    /// `{x3,x1}=x2`.
    pub fn so3() -> Self {
        Self::from_upper(3, &[(0, 1, 2, 1), (1, 2, 0, 1), (0, 2, 1, -1)])
    }

    /// Rotation constants with the last sign flipped. This is the
    /// signature-flipped rotation algebra (a real form of sl(2)), so it
    /// still satisfies the Jacobi identity.
    pub fn so3_sign_flipped() -> Self {
        Self::from_upper(3, &[(0, 1, 2, 1), (1, 2, 0, 1), (0, 2, 1, 1)])
    }

    /// A genuinely non-Lie set of constants: `{x1,x2}=x3`, `{x2,x3}=x1`,
    /// `{x3,x1}=x1`. The jacobiator of the coordinates is `x3 ≠ 0`.
    pub fn broken_rotation() -> Self {
        Self::from_upper(3, &[(0, 1, 2, 1), (1, 2, 0, 1), (0, 2, 0, -1)])
    }

    /// Nonabelian two-dimensional algebra: `{x1, x2} = x2`.
    pub fn affine_line() -> Self {
        Self::from_upper(2, &[(0, 1, 1, 1)])
    }

    pub fn abelian(n: usize) -> Self {
        StructureConstants {
            n,
            c: vec![vec![vec![Scalar::from(0); n]; n]; n],
        }
    }
}

/// The linear bivector `Π_ij = Σ_k c_ij^k x_k`.
pub fn lie_poisson(c: &StructureConstants) -> PolyBivector {
    let n = c.n;
    let mut pi = PolyBivector::zero(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let mut comp = Poly::zero(n);
            for k in 0..n {
                comp = comp.add(&Poly::var(n, k).scale(&c.c[i][j][k]));
            }
            pi.set(i, j, comp);
        }
    }
    pi
}

/// The bracket on 1-forms determined by `[df, dg] = d{f, g}` and the
/// Leibniz rule: `[α,β] = L_{Π̃α} β − L_{Π̃β} α − d Π(α,β)`.
pub fn one_form_bracket(
    alpha: &PolyOneForm,
    beta: &PolyOneForm,
    pi: &PolyBivector,
) -> Result<PolyOneForm, PoissonError> {
    check_vars(alpha.n_vars(), pi.n_vars())?;
    check_vars(beta.n_vars(), pi.n_vars())?;
    let xa = pi_sharp(alpha, pi)?;
    let xb = pi_sharp(beta, pi)?;
    let pairing = pi_pairing(alpha, beta, pi);
    Ok(xa
        .lie_derivative(beta)
        .sub(&xb.lie_derivative(alpha))
        .sub(&PolyOneForm::d(&pairing)))
}

/// Rank of the evaluated bivector matrix at a rational point; always
/// even.
pub fn leaf_rank(pi: &PolyBivector, point: &[Scalar]) -> usize {
    pi.eval_matrix(point).rank()
}

/// Pointwise gauge transform of the bivector by a 2-form: the skew matrix
/// `Π(x) (1 − B(x) Π(x))⁻¹` when the denominator is invertible, `None`
/// when the sheared structure fails to be a bivector graph at the point.
pub fn gauge_bivector_at(
    pi: &PolyBivector,
    b: &PolyTwoForm,
    point: &[Scalar],
) -> Result<Option<Matrix<Scalar>>, PoissonError> {
    check_vars(pi.n_vars(), b.n_vars())?;
    let n = pi.n_vars();
    let p = pi.eval_matrix(point);
    let bm = b.eval_matrix(point);
    let denom = Matrix::identity(n).sub_mat(&bm.matmul(&p)?)?;
    let Some(inv) = denom.inverse() else {
        return Ok(None);
    };
    let out = p.matmul(&inv)?;
    debug_assert!(out.is_skew_symmetric());
    Ok(Some(out))
}

/// Deterministic rational sample points for the pointwise (semi-decided)
/// checks; a fixed linear congruential stream mapped into small
/// fractions.
pub(crate) fn sample_points(n_vars: usize, count: usize) -> Vec<Vec<Scalar>> {
    let mut state: u64 = 0x9E3779B97F4A7C15;
    let mut next = move || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        state >> 33
    };
    (0..count)
        .map(|_| {
            (0..n_vars)
                .map(|_| {
                    let num = (next() % 19) as i64 - 9;
                    let den = (next() % 4) as i64 + 1;
                    Scalar::new(num, den).expect("denominator positive")
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn canonical_2n(n_pairs: usize) -> PolyBivector {
        // Σ ∂q_i ∧ ∂p_i on coordinates (q1, p1, q2, p2, ...).
        let n = 2 * n_pairs;
        let mut pi = PolyBivector::zero(n);
        for b in 0..n_pairs {
            pi.set(2 * b, 2 * b + 1, Poly::one(n));
        }
        pi
    }

    #[test]
    fn canonical_bracket_of_conjugate_coordinates() {
        let pi = canonical_2n(1);
        let q = Poly::var(2, 0);
        let p = Poly::var(2, 1);
        assert_eq!(poisson_bracket(&q, &p, &pi).unwrap(), Poly::one(2));
        assert!(poisson_bracket(&q, &q, &pi).unwrap().is_zero());
    }

    #[test]
    fn bracket_of_coordinates_returns_the_component() {
        // {x1, x2} = f for Π = f ∂1∧∂2 on Q².
        let f = Poly::var(2, 0)
            .mul(&Poly::var(2, 1))
            .add(&Poly::constant(2, Scalar::from(3)));
        let mut pi = PolyBivector::zero(2);
        pi.set(0, 1, f.clone());
        let x1 = Poly::var(2, 0);
        let x2 = Poly::var(2, 1);
        assert_eq!(poisson_bracket(&x1, &x2, &pi).unwrap(), f);
    }

    #[test]
    fn leibniz_rule_holds() {
        let pi = canonical_2n(2);
        let f = Poly::var(4, 0).mul(&Poly::var(4, 3));
        let g = Poly::var(4, 1).add(&Poly::var(4, 2));
        let h = Poly::var(4, 2).mul(&Poly::var(4, 2));
        let lhs = poisson_bracket(&f, &g.mul(&h), &pi).unwrap();
        let rhs = poisson_bracket(&f, &g, &pi)
            .unwrap()
            .mul(&h)
            .add(&g.mul(&poisson_bracket(&f, &h, &pi).unwrap()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn hamiltonian_field_evaluates_brackets() {
        let pi = canonical_2n(1);
        let f = Poly::var(2, 0).mul(&Poly::var(2, 0));
        let xf = hamiltonian_vf(&f, &pi).unwrap();
        for g in [Poly::var(2, 0), Poly::var(2, 1)] {
            let direct = poisson_bracket(&f, &g, &pi).unwrap();
            let via_field = xf.apply(&g);
            assert_eq!(direct, via_field);
        }
    }

    #[test]
    fn casimir_has_zero_hamiltonian_field() {
        // Constant Π on Q³ with a degenerate direction: e is a Casimir.
        let mut pi = PolyBivector::zero(3);
        pi.set(0, 1, Poly::one(3));
        let e = Poly::var(3, 2);
        assert!(hamiltonian_vf(&e, &pi).unwrap().is_zero());
    }

    #[test]
    fn coordinate_hamiltonian_field_in_the_canonical_block() {
        // With X_f = {f, ·} and {q, p} = 1, the field of q is ∂/∂p.
        let pi = canonical_2n(1);
        let xq = hamiltonian_vf(&Poly::var(2, 0), &pi).unwrap();
        assert!(xq.comp(0).is_zero());
        assert_eq!(xq.comp(1), &Poly::one(2));
        let xp = hamiltonian_vf(&Poly::var(2, 1), &pi).unwrap();
        assert_eq!(xp.comp(0), &Poly::one(2).neg());
        assert!(xp.comp(1).is_zero());
    }

    #[test]
    fn hamiltonian_field_is_linear() {
        let pi = canonical_2n(2);
        let f = Poly::var(4, 0).mul(&Poly::var(4, 1));
        let g = Poly::var(4, 2).mul(&Poly::var(4, 3));
        let sum = hamiltonian_vf(&f.add(&g), &pi).unwrap();
        let parts = hamiltonian_vf(&f, &pi)
            .unwrap()
            .add(&hamiltonian_vf(&g, &pi).unwrap());
        assert_eq!(sum, parts);
    }

    #[test]
    fn schouten_square_matches_jacobiator_on_coordinates() {
        for pi in [
            lie_poisson(&StructureConstants::so3()),
            lie_poisson(&StructureConstants::broken_rotation()),
        ] {
            let t = schouten_square(&pi);
            for i in 0..3 {
                for j in (i + 1)..3 {
                    for k in (j + 1)..3 {
                        let jac =
                            jacobiator(&Poly::var(3, i), &Poly::var(3, j), &Poly::var(3, k), &pi)
                                .unwrap();
                        assert_eq!(t.get(i, j, k), jac.scale(&Scalar::from(2)));
                    }
                }
            }
        }
    }

    #[test]
    fn every_bivector_on_the_plane_is_integrable() {
        let f = Poly::var(2, 0)
            .mul(&Poly::var(2, 0))
            .add(&Poly::var(2, 1).scale(&Scalar::from(7)));
        let mut pi = PolyBivector::zero(2);
        pi.set(0, 1, f);
        assert!(schouten_square(&pi).is_zero());
        assert!(jacobi_check(&pi).holds);
    }

    #[test]
    fn constant_bivectors_are_integrable() {
        let pi = canonical_2n(2);
        assert!(schouten_square(&pi).is_zero());
    }

    #[test]
    fn rotation_constants_pass_and_broken_ones_fail() {
        let good = lie_poisson(&StructureConstants::so3());
        assert!(schouten_square(&good).is_zero());
        assert!(StructureConstants::so3().satisfies_jacobi());

        // Flipping a sign lands on the other real form, which is still a
        // Lie algebra; the jacobiator oracle confirms it.
        let other_form = lie_poisson(&StructureConstants::so3_sign_flipped());
        assert!(schouten_square(&other_form).is_zero());
        assert!(StructureConstants::so3_sign_flipped().satisfies_jacobi());

        let bad = lie_poisson(&StructureConstants::broken_rotation());
        assert!(!schouten_square(&bad).is_zero());
        assert!(!StructureConstants::broken_rotation().satisfies_jacobi());
        // The failing component is the jacobiator of the coordinates.
        let jac = jacobiator(&Poly::var(3, 0), &Poly::var(3, 1), &Poly::var(3, 2), &bad).unwrap();
        assert_eq!(jac, Poly::var(3, 2));
    }

    #[test]
    fn affine_line_constants_satisfy_jacobi() {
        let c = StructureConstants::affine_line();
        assert!(c.satisfies_jacobi());
        assert!(schouten_square(&lie_poisson(&c)).is_zero());
    }

    #[test]
    fn abelian_constants_give_the_zero_bivector() {
        let pi = lie_poisson(&StructureConstants::abelian(3));
        assert!(pi.is_zero());
        assert_eq!(
            leaf_rank(&pi, &[Scalar::from(1), Scalar::from(1), Scalar::from(1)]),
            0
        );
    }

    #[test]
    fn courant_bracket_of_coordinate_fields() {
        let n = 2;
        let dx = PolyVectorField::coordinate(n, 0);
        let dy = PolyVectorField::coordinate(n, 1);
        let zero_form = PolyOneForm::zero(n);
        let (v, a) = courant_bracket((&dx, &zero_form), (&dy, &zero_form), None).unwrap();
        assert!(v.is_zero());
        assert!(a.is_zero());
    }

    #[test]
    fn courant_bracket_of_exact_forms_vanishes() {
        let n = 3;
        let f = Poly::var(n, 0).mul(&Poly::var(n, 1));
        let g = Poly::var(n, 2).mul(&Poly::var(n, 2));
        let zero_vf = PolyVectorField::zero(n);
        let (v, a) = courant_bracket(
            (&zero_vf, &PolyOneForm::d(&f)),
            (&zero_vf, &PolyOneForm::d(&g)),
            None,
        )
        .unwrap();
        assert!(v.is_zero());
        assert!(a.is_zero());
    }

    #[test]
    fn twisting_term_appears_in_the_bracket() {
        // φ = dx∧dy∧dz on Q³: ⟦(∂x,0),(∂y,0)⟧_φ = (0, dz).
        let n = 3;
        let mut phi = PolyThreeForm::zero(n);
        phi.set(0, 1, 2, Poly::one(n));
        let dx = PolyVectorField::coordinate(n, 0);
        let dy = PolyVectorField::coordinate(n, 1);
        let zero_form = PolyOneForm::zero(n);
        let (v, a) = courant_bracket((&dx, &zero_form), (&dy, &zero_form), Some(&phi)).unwrap();
        assert!(v.is_zero());
        assert_eq!(a, PolyOneForm::coordinate(n, 2));
    }

    #[test]
    fn twisted_check_reduces_to_jacobi_for_zero_form() {
        let so3 = lie_poisson(&StructureConstants::so3());
        let phi = PolyThreeForm::zero(3);
        let check = twisted_poisson_check(&so3, &phi).unwrap();
        assert!(check.holds);
        let bad = lie_poisson(&StructureConstants::broken_rotation());
        let check = twisted_poisson_check(&bad, &phi).unwrap();
        assert!(!check.holds);
        assert!(!check.residual.is_zero());
    }

    #[test]
    fn constant_bivector_fails_against_a_nonzero_wedge() {
        // A constant bivector has vanishing jacobiator, so any closed φ
        // with nonzero wedge image must be rejected. The bivector must be
        // full rank for the wedge image to survive, hence n = 4.
        let n = 4;
        let mut pi = PolyBivector::zero(n);
        pi.set(0, 1, Poly::one(n));
        pi.set(2, 3, Poly::one(n));
        let mut phi = PolyThreeForm::zero(n);
        phi.set(0, 1, 2, Poly::one(n));
        assert!(phi.is_closed());
        let check = twisted_poisson_check(&pi, &phi).unwrap();
        assert!(!check.holds);
        assert!(!check.residual.is_zero());
    }

    #[test]
    fn zero_bivector_is_twisted_poisson_for_any_closed_form() {
        let n = 4;
        let pi = PolyBivector::zero(n);
        let mut phi = PolyThreeForm::zero(n);
        phi.set(0, 1, 2, Poly::var(n, 3));
        phi.set(0, 1, 3, Poly::var(n, 2));
        assert!(phi.is_closed());
        let check = twisted_poisson_check(&pi, &phi).unwrap();
        assert!(check.holds);
    }

    #[test]
    fn non_closed_background_is_rejected() {
        let n = 4;
        let pi = PolyBivector::zero(n);
        let mut phi = PolyThreeForm::zero(n);
        phi.set(0, 1, 2, Poly::var(n, 3));
        assert!(!phi.is_closed());
        assert_eq!(
            twisted_poisson_check(&pi, &phi),
            Err(PoissonError::NotClosed)
        );
    }

    #[test]
    fn graph_closure_agrees_with_twisted_check() {
        let n = 3;
        let wedge_form = || {
            let mut phi = PolyThreeForm::zero(n);
            phi.set(0, 1, 2, Poly::one(n));
            phi
        };
        let cases: Vec<(PolyBivector, PolyThreeForm)> = vec![
            (
                lie_poisson(&StructureConstants::so3()),
                PolyThreeForm::zero(n),
            ),
            (
                lie_poisson(&StructureConstants::broken_rotation()),
                PolyThreeForm::zero(n),
            ),
            (PolyBivector::zero(n), wedge_form()),
            (
                {
                    let mut pi = PolyBivector::zero(n);
                    pi.set(0, 1, Poly::one(n));
                    pi.set(1, 2, Poly::one(n));
                    pi
                },
                wedge_form(),
            ),
            (lie_poisson(&StructureConstants::so3()), wedge_form()),
        ];
        for (pi, phi) in cases {
            let closed = graph_closure_check(&pi, Some(&phi)).unwrap();
            let twisted = twisted_poisson_check(&pi, &phi).unwrap().holds;
            assert_eq!(closed, twisted);
        }
    }

    #[test]
    fn canonical_graph_is_closed() {
        let pi = canonical_2n(1);
        assert!(graph_closure_check(&pi, None).unwrap());
        let so3 = lie_poisson(&StructureConstants::so3());
        assert!(graph_closure_check(&so3, None).unwrap());
        let bad = lie_poisson(&StructureConstants::broken_rotation());
        assert!(!graph_closure_check(&bad, None).unwrap());
    }

    #[test]
    fn one_form_bracket_of_differentials() {
        let pi = canonical_2n(1);
        let f = Poly::var(2, 0).mul(&Poly::var(2, 0)).mul(&Poly::var(2, 1));
        let g = Poly::var(2, 1).add(&Poly::var(2, 0));
        let lhs = one_form_bracket(&PolyOneForm::d(&f), &PolyOneForm::d(&g), &pi).unwrap();
        let rhs = PolyOneForm::d(&poisson_bracket(&f, &g, &pi).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn one_form_bracket_is_alternating_on_exact_forms() {
        let pi = lie_poisson(&StructureConstants::so3());
        let f = Poly::var(3, 0).mul(&Poly::var(3, 2));
        let a = PolyOneForm::d(&f);
        assert!(one_form_bracket(&a, &a, &pi).unwrap().is_zero());
    }

    #[test]
    fn one_form_bracket_leibniz_in_the_first_argument() {
        // [fα, β] = f[α,β] − (i_{Π̃β} df) α.
        let pi = lie_poisson(&StructureConstants::so3());
        let f = Poly::var(3, 1);
        let g = Poly::var(3, 0).mul(&Poly::var(3, 2));
        let h = Poly::var(3, 2);
        let alpha = PolyOneForm::d(&g);
        let beta = PolyOneForm::d(&h);
        let lhs = one_form_bracket(&alpha.scale_fn(&f), &beta, &pi).unwrap();
        let xb = pi_sharp(&beta, &pi).unwrap();
        let correction = alpha.scale_fn(&xb.apply(&f));
        let rhs = one_form_bracket(&alpha, &beta, &pi)
            .unwrap()
            .scale_fn(&f)
            .sub(&correction);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn leaf_ranks_of_the_rotation_bracket() {
        let so3 = lie_poisson(&StructureConstants::so3());
        assert_eq!(
            leaf_rank(&so3, &[Scalar::from(0), Scalar::from(0), Scalar::from(0)]),
            0
        );
        assert_eq!(
            leaf_rank(&so3, &[Scalar::from(1), Scalar::from(0), Scalar::from(0)]),
            2
        );
    }

    #[test]
    fn symplectic_rank_is_full_everywhere() {
        let pi = canonical_2n(2);
        for p in sample_points(4, 10) {
            assert_eq!(leaf_rank(&pi, &p), 4);
        }
    }

    #[test]
    fn plane_structure_rank_drops_on_the_zero_set() {
        // {x1,x2} = x1: rank 2 off the axis, 0 on it.
        let mut pi = PolyBivector::zero(2);
        pi.set(0, 1, Poly::var(2, 0));
        assert_eq!(leaf_rank(&pi, &[Scalar::from(2), Scalar::from(5)]), 2);
        assert_eq!(leaf_rank(&pi, &[Scalar::from(0), Scalar::from(5)]), 0);
    }

    #[test]
    fn pointwise_gauge_matches_zero_form() {
        let pi = canonical_2n(1);
        let b0 = PolyTwoForm::zero(2);
        let pt = [Scalar::from(1), Scalar::from(2)];
        let out = gauge_bivector_at(&pi, &b0, &pt).unwrap().unwrap();
        assert_eq!(out, pi.eval_matrix(&pt));
    }

    #[test]
    fn pointwise_gauge_detects_the_singular_shear() {
        // B = −(−Π)⁻¹ forces 1 − BΠ = 0 for the canonical plane block.
        let pi = canonical_2n(1);
        let mut b = PolyTwoForm::zero(2);
        b.set(0, 1, Poly::constant(2, Scalar::from(-1)));
        let pt = [Scalar::from(0), Scalar::from(0)];
        assert_eq!(gauge_bivector_at(&pi, &b, &pt).unwrap(), None);
    }

    #[test]
    fn pointwise_gauge_round_trips_where_defined() {
        let so3 = lie_poisson(&StructureConstants::so3());
        let mut b = PolyTwoForm::zero(3);
        b.set(0, 1, Poly::var(3, 2));
        b.set(1, 2, Poly::one(3));
        let pt = [Scalar::from(1), Scalar::from(-1), Scalar::from(2)];
        let once = gauge_bivector_at(&so3, &b, &pt).unwrap().unwrap();
        assert!(once.is_skew_symmetric());
        // Undo the shear on the evaluated matrix directly.
        let bm = b.eval_matrix(&pt);
        let denom = Matrix::identity(3)
            .add_mat(&bm.matmul(&once).unwrap())
            .unwrap();
        let back = once.matmul(&denom.inverse().unwrap()).unwrap();
        assert_eq!(back, so3.eval_matrix(&pt));
    }
}
