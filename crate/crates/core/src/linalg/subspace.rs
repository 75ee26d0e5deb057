use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Field, LinalgError, Matrix, Scalar, DIM_CAP};

/// A linear subspace of `F^ambient`, stored as a basis matrix in reduced
/// row echelon form with zero rows dropped. The representation is
/// canonical: two equal subspaces compare equal entrywise.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<F = Scalar> {
    ambient: usize,
    basis: Matrix<F>,
}

/// Subspace of `Q^ambient`; the workhorse of the pointwise geometry.
pub type ExactSubspace = Subspace<Scalar>;

impl<F: Field> Subspace<F> {
    /// Span of a set of row vectors.
    pub fn span(ambient: usize, rows: Matrix<F>) -> Result<Self, LinalgError> {
        if ambient > DIM_CAP {
            return Err(LinalgError::DimensionCap(ambient, DIM_CAP));
        }
        if rows.cols() != ambient && rows.rows() != 0 {
            return Err(LinalgError::DimensionMismatch(format!(
                "spanning rows have {} columns, ambient is {}",
                rows.cols(),
                ambient
            )));
        }
        let (r, pivots) = rows.rref();
        let mut basis = Matrix::zeros(pivots.len(), ambient);
        for i in 0..pivots.len() {
            for c in 0..ambient {
                basis[(i, c)] = r[(i, c)].clone();
            }
        }
        Ok(Subspace { ambient, basis })
    }

    pub fn from_rows(ambient: usize, rows: Vec<Vec<F>>) -> Result<Self, LinalgError> {
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        Self::span(ambient, Matrix::from_rows(rows)?)
    }

    pub fn zero(ambient: usize) -> Result<Self, LinalgError> {
        if ambient > DIM_CAP {
            return Err(LinalgError::DimensionCap(ambient, DIM_CAP));
        }
        Ok(Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
        })
    }

    pub fn full(ambient: usize) -> Result<Self, LinalgError> {
        if ambient > DIM_CAP {
            return Err(LinalgError::DimensionCap(ambient, DIM_CAP));
        }
        Ok(Subspace {
            ambient,
            basis: Matrix::identity(ambient),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn contains(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length must match ambient");
        // Reduce v against the echelon basis.
        let mut v = v.to_vec();
        for r in 0..self.basis.rows() {
            let pivot = (0..self.ambient)
                .find(|&c| !self.basis[(r, c)].is_zero())
                .expect("basis rows are nonzero");
            if !v[pivot].is_zero() {
                let factor = v[pivot].clone();
                for c in 0..self.ambient {
                    let upd = v[c].clone() - factor.clone() * self.basis[(r, c)].clone();
                    v[c] = upd;
                }
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        (0..other.basis.rows()).all(|r| self.contains(other.basis.row(r)))
    }

    /// Smallest subspace containing both summands.
    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_ambient(other)?;
        Subspace::span(self.ambient, self.basis.vstack(&other.basis)?)
    }

    /// Exact intersection via the Zassenhaus block algorithm.
    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_ambient(other)?;
        let n = self.ambient;
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(n);
        }
        // [A | A] over [B | 0]; echelon rows with zero left block carry an
        // intersection basis in their right block.
        let top = self.basis.hstack(&self.basis)?;
        let bottom = other.basis.hstack(&Matrix::zeros(other.basis.rows(), n))?;
        let (r, _) = top.vstack(&bottom)?.rref();
        let mut rows = Vec::new();
        for i in 0..r.rows() {
            let left_zero = (0..n).all(|c| r[(i, c)].is_zero());
            let right = r.submatrix(i, n, 1, n);
            if left_zero && !right.is_zero() {
                rows.push(right.row_vec(0));
            }
        }
        Subspace::from_rows(n, rows)
    }

    /// Annihilator in the dual space: all covectors vanishing on `self`.
    /// Under the canonical identification of `V` with `V**`, applying it
    /// twice returns the original subspace.
    pub fn annihilator(&self) -> Self {
        let ker = self.basis.kernel();
        Subspace::span(self.ambient, ker).expect("kernel rows live in the same ambient")
    }

    /// A surjection `Q : F^ambient -> F^(ambient - dim)` with kernel
    /// exactly `self`, together with the quotient dimension. One row per
    /// non-pivot column `c`: the coordinate form `e_c* − Σ_j B_jc e_pj*`
    /// kills every basis row of the echelon basis `B`, and the rows stay
    /// independent through their leading entries on distinct non-pivot
    /// columns.
    pub fn quotient_map(&self) -> (Matrix<F>, usize) {
        let n = self.ambient;
        let k = self.dim();
        let pivots: Vec<usize> = (0..k)
            .map(|r| {
                (0..n)
                    .find(|&c| !self.basis[(r, c)].is_zero())
                    .expect("basis rows are nonzero")
            })
            .collect();
        let complement: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut q = Matrix::zeros(n - k, n);
        for (row, &c) in complement.iter().enumerate() {
            q[(row, c)] = F::one();
            for (j, &p) in pivots.iter().enumerate() {
                q[(row, p)] = -self.basis[(j, c)].clone();
            }
        }
        (q, n - k)
    }

    fn check_same_ambient(&self, other: &Self) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient_dim: usize,
    basis: Matrix<Scalar>,
}

impl Serialize for Subspace<Scalar> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SubspaceRepr {
            ambient_dim: self.ambient,
            basis: self.basis.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Subspace<Scalar> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SubspaceRepr::deserialize(deserializer)?;
        Subspace::span(repr.ambient_dim, repr.basis).map_err(D::Error::custom)
    }
}
