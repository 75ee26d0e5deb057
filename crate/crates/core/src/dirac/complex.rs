use num_traits::Zero;

use super::{DiracError, DiracSubspace};
use crate::linalg::{ComplexScalar, LinalgError, Matrix, Scalar, Subspace};

/// A maximal isotropic complex subspace of `(V ⊕ V*) ⊗ C`, stored over
/// exact Gaussian rationals. Conjugation flips the sign of every
/// imaginary part, so the generalized-complex test `L ∩ L̄ = 0` is exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexDiracSubspace {
    v_dim: usize,
    space: Subspace<ComplexScalar>,
}

fn c_pairing(a: &[ComplexScalar], b: &[ComplexScalar], n: usize) -> ComplexScalar {
    let mut acc = ComplexScalar::zero();
    for i in 0..n {
        acc = acc + a[n + i].clone() * b[i].clone() + a[i].clone() * b[n + i].clone();
    }
    acc
}

impl ComplexDiracSubspace {
    pub fn new(v_dim: usize, space: Subspace<ComplexScalar>) -> Result<Self, DiracError> {
        if space.ambient_dim() != 2 * v_dim {
            return Err(LinalgError::DimensionMismatch(format!(
                "complex double of C^{} has dimension {}, got ambient {}",
                v_dim,
                2 * v_dim,
                space.ambient_dim()
            ))
            .into());
        }
        if space.dim() != v_dim {
            return Err(DiracError::NotMaximal {
                got: space.dim(),
                want: v_dim,
            });
        }
        let b = space.basis();
        for i in 0..b.rows() {
            for j in i..b.rows() {
                let p = c_pairing(b.row(i), b.row(j), v_dim);
                if !p.is_zero() {
                    return Err(DiracError::NotIsotropic(i, j, format!("{p}")));
                }
            }
        }
        Ok(ComplexDiracSubspace { v_dim, space })
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn space(&self) -> &Subspace<ComplexScalar> {
        &self.space
    }

    /// Complexification of a real Dirac subspace. Its conjugate is
    /// itself, so it is never generalized complex.
    pub fn complexify(l: &DiracSubspace) -> Self {
        let basis = l
            .space()
            .basis()
            .map(|s| ComplexScalar::from_real(s.clone()));
        let space = Subspace::span(2 * l.v_dim(), basis).expect("same ambient");
        ComplexDiracSubspace {
            v_dim: l.v_dim(),
            space,
        }
    }

    /// Graph of a skew complex 2-form, the complex analogue of the real
    /// 2-form graph.
    pub fn from_two_form(omega: &Matrix<ComplexScalar>) -> Result<Self, DiracError> {
        if !omega.is_skew_symmetric() {
            return Err(DiracError::NotSkew);
        }
        let n = omega.rows();
        let basis = Matrix::<ComplexScalar>::identity(n).hstack(omega)?;
        ComplexDiracSubspace::new(n, Subspace::span(2 * n, basis)?)
    }

    /// The `+i` eigenspace of `(X, α) ↦ (−J X, J* α)` for an almost
    /// complex operator `J` (i.e. `J² = −1`).
    pub fn from_complex_structure(j: &Matrix<Scalar>) -> Result<Self, DiracError> {
        let n = j.rows();
        let minus_id = Matrix::<Scalar>::identity(n).neg_mat();
        if !j.is_square() || j.matmul(j)? != minus_id {
            return Err(LinalgError::DimensionMismatch(
                "operator must square to minus the identity".into(),
            )
            .into());
        }
        let mut op: Matrix<ComplexScalar> = Matrix::zeros(2 * n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                op[(r, c)] = ComplexScalar::from_real(-j[(r, c)].clone());
                // J* acts on covectors through the transpose.
                op[(n + r, n + c)] = ComplexScalar::from_real(j[(c, r)].clone());
            }
        }
        Self::eigenspace_i(n, op)
    }

    /// The `+i` eigenspace of `(X, α) ↦ (−ω̃⁻¹ α, ω̃ X)` for an
    /// invertible skew 2-form; the standard way a symplectic form is seen
    /// as a generalized complex structure.
    pub fn from_symplectic(omega: &Matrix<Scalar>) -> Result<Self, DiracError> {
        if !omega.is_skew_symmetric() {
            return Err(DiracError::NotSkew);
        }
        let n = omega.rows();
        // Column realization of ω̃ in this crate's conventions.
        let w = omega.transpose();
        let w_inv = w.inverse().ok_or(DiracError::DegenerateForm)?;
        let mut op: Matrix<ComplexScalar> = Matrix::zeros(2 * n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                op[(r, n + c)] = ComplexScalar::from_real(-w_inv[(r, c)].clone());
                op[(n + r, c)] = ComplexScalar::from_real(w[(r, c)].clone());
            }
        }
        Self::eigenspace_i(n, op)
    }

    fn eigenspace_i(n: usize, op: Matrix<ComplexScalar>) -> Result<Self, DiracError> {
        let mut shifted = op;
        for d in 0..2 * n {
            shifted[(d, d)] = shifted[(d, d)].clone() - ComplexScalar::i();
        }
        let kernel = shifted.kernel();
        ComplexDiracSubspace::new(n, Subspace::span(2 * n, kernel)?)
    }

    /// Entrywise complex conjugate. Conjugation preserves reduced echelon
    /// form, so the result is already canonical.
    pub fn conj(&self) -> Self {
        let basis = self.space.basis().map(ComplexScalar::conj);
        ComplexDiracSubspace {
            v_dim: self.v_dim,
            space: Subspace::span(2 * self.v_dim, basis).expect("same ambient"),
        }
    }

    /// True exactly when the subspace meets its conjugate only in zero.
    pub fn is_generalized_complex(&self) -> bool {
        self.space
            .intersect(self.conj().space())
            .map(|meet| meet.is_zero())
            .unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_matrix;

    #[test]
    fn complex_structure_eigenspace_is_generalized_complex() {
        let j = int_matrix(&[&[0, -1], &[1, 0]]);
        let l = ComplexDiracSubspace::from_complex_structure(&j).unwrap();
        assert_eq!(l.space().dim(), 2);
        assert!(l.is_generalized_complex());
    }

    #[test]
    fn complexified_real_structure_never_is() {
        let omega = int_matrix(&[&[0, 1], &[-1, 0]]);
        let real = DiracSubspace::from_two_form(&omega).unwrap();
        let lc = ComplexDiracSubspace::complexify(&real);
        assert_eq!(lc.conj(), lc);
        assert!(!lc.is_generalized_complex());
    }

    #[test]
    fn symplectic_eigenspace_is_generalized_complex() {
        let omega = int_matrix(&[&[0, 1], &[-1, 0]]);
        let lc = ComplexDiracSubspace::from_symplectic(&omega).unwrap();
        assert!(lc.is_generalized_complex());
        // It is the graph of the complex 2-form −iω.
        let minus_i_omega = omega.map(|s| {
            let mut z = ComplexScalar::from_real(s.clone());
            z = z * -ComplexScalar::i();
            z
        });
        let graph = ComplexDiracSubspace::from_two_form(&minus_i_omega).unwrap();
        assert_eq!(lc, graph);
    }

    #[test]
    fn non_almost_complex_operator_rejected() {
        let j = int_matrix(&[&[1, 0], &[0, 1]]);
        assert!(ComplexDiracSubspace::from_complex_structure(&j).is_err());
    }
}
