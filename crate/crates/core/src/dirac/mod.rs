//! Vector Dirac structures: maximal isotropic subspaces of `V ⊕ V*`.
//!
//! Coordinates on the double are ordered vector part first, covector part
//! last, so a basis row `(x | a)` stands for the pair `(X, α)` with
//! `X = Σ xᵢ eᵢ` and `α = Σ aᵢ eᵢ*`. The symmetric pairing is
//! `⟨(X,α),(Y,β)⟩₊ = α(Y) + β(X)`.
//!
//! Graphs of bivectors and 2-forms are realized so that for invertible
//! skew `Π` the two constructions produce the same subspace exactly when
//! `ω = (−Π)⁻¹`; all derived operations (pairs, restriction, gauge,
//! pointwise gauged bivectors) follow that convention.

mod complex;

pub use complex::ComplexDiracSubspace;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{ExactSubspace, LinalgError, Matrix, Scalar, Subspace};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiracError {
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("subspace is not isotropic: basis rows {0} and {1} pair to {2}")]
    NotIsotropic(usize, usize, String),
    #[error("subspace has dimension {got}, maximal isotropic requires {want}")]
    NotMaximal { got: usize, want: usize },
    #[error("bilinear form of size {form} does not match range of dimension {range}")]
    PairShapeMismatch { form: usize, range: usize },
    #[error("inconsistent lift: two lifts of the same range vector induce different forms")]
    InconsistentLift,
    #[error("symmetric form is not invariant under the given operator")]
    NotInvariant,
    #[error("symmetric form must be nondegenerate")]
    DegenerateForm,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A vector Dirac structure on `Q^v_dim`: a maximal isotropic subspace of
/// the double `Q^v_dim ⊕ (Q^v_dim)*`. Validity is enforced at
/// construction, so a value of this type certifies its own invariants.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiracSubspace {
    v_dim: usize,
    space: ExactSubspace,
}

/// The range/2-form presentation of a Dirac subspace: a subspace
/// `R ⊆ V` together with a skew bilinear form on `R` written in the
/// canonical basis of `R`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiracPair {
    pub range: ExactSubspace,
    pub theta: Matrix<Scalar>,
}

impl DiracPair {
    pub fn new(range: ExactSubspace, theta: Matrix<Scalar>) -> Result<Self, DiracError> {
        if !theta.is_skew_symmetric() {
            return Err(DiracError::NotSkew);
        }
        if theta.rows() != range.dim() {
            return Err(DiracError::PairShapeMismatch {
                form: theta.rows(),
                range: range.dim(),
            });
        }
        Ok(DiracPair { range, theta })
    }
}

/// Roundtrip behaviour of the forward/backward images along a linear map,
/// together with the kernel/range conditions that characterize it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    /// Set when the structure lives on the source: `f* f_* L = L` and
    /// `Ker f ⊆ Ker L`.
    pub source: Option<(bool, bool)>,
    /// Set when the structure lives on the target: `f_* f* L = L` and
    /// `R(L) ⊆ im f`. (Expanding the double image gives
    /// `(L + 0⊕(im f)°) ∩ (im f ⊕ V*)`; both inclusions against `L`
    /// reduce to the range condition, which also makes surjective maps
    /// roundtrip every structure.)
    pub target: Option<(bool, bool)>,
}

impl RoundtripReport {
    /// Each roundtrip identity must hold exactly when its linear condition
    /// does.
    pub fn laws_hold(&self) -> bool {
        self.source.is_none_or(|(a, b)| a == b) && self.target.is_none_or(|(a, b)| a == b)
    }
}

fn pairing(a: &[Scalar], b: &[Scalar], n: usize) -> Scalar {
    let mut acc = Scalar::zero();
    for i in 0..n {
        acc += &a[n + i] * &b[i] + &a[i] * &b[n + i];
    }
    acc
}

impl DiracSubspace {
    /// Wrap a subspace of the double, verifying maximality and isotropy.
    pub fn new(v_dim: usize, space: ExactSubspace) -> Result<Self, DiracError> {
        if space.ambient_dim() != 2 * v_dim {
            return Err(LinalgError::DimensionMismatch(format!(
                "double of Q^{} has dimension {}, got ambient {}",
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
                let p = pairing(b.row(i), b.row(j), v_dim);
                if !p.is_zero() {
                    return Err(DiracError::NotIsotropic(i, j, p.to_string()));
                }
            }
        }
        Ok(DiracSubspace { v_dim, space })
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn space(&self) -> &ExactSubspace {
        &self.space
    }

    /// Graph of a skew bivector: pairs `(X, α)` with `X` determined by
    /// `α`. Meets the vector summand only in zero.
    pub fn from_bivector(pi: &Matrix<Scalar>) -> Result<Self, DiracError> {
        if !pi.is_skew_symmetric() {
            return Err(DiracError::NotSkew);
        }
        let n = pi.rows();
        let basis = pi.transpose().hstack(&Matrix::identity(n))?;
        DiracSubspace::new(n, Subspace::span(2 * n, basis)?)
    }

    /// Graph of a skew 2-form: pairs `(X, ω(X,·))`. Meets the covector
    /// summand only in zero.
    pub fn from_two_form(omega: &Matrix<Scalar>) -> Result<Self, DiracError> {
        if !omega.is_skew_symmetric() {
            return Err(DiracError::NotSkew);
        }
        let n = omega.rows();
        let basis = Matrix::identity(n).hstack(omega)?;
        DiracSubspace::new(n, Subspace::span(2 * n, basis)?)
    }

    /// Build the Dirac subspace `{(X, α) : X ∈ R, α|_R = i_X θ}` from a
    /// range and a skew form on it.
    pub fn from_pair(pair: &DiracPair, v_dim: usize) -> Result<Self, DiracError> {
        let r = &pair.range;
        if r.ambient_dim() != v_dim {
            return Err(LinalgError::DimensionMismatch(format!(
                "range ambient {} does not match v_dim {}",
                r.ambient_dim(),
                v_dim
            ))
            .into());
        }
        let k = r.dim();
        let rb = r.basis();
        let pivots: Vec<usize> = (0..k)
            .map(|i| {
                (0..v_dim)
                    .find(|&c| !rb[(i, c)].is_zero())
                    .expect("nonzero row")
            })
            .collect();
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(v_dim);
        // One generator per range basis vector: the covector supported on
        // the pivot columns reproduces i_X θ on R.
        for i in 0..k {
            let mut row = vec![Scalar::zero(); 2 * v_dim];
            for c in 0..v_dim {
                row[c] = rb[(i, c)].clone();
            }
            for (j, &p) in pivots.iter().enumerate() {
                row[v_dim + p] = pair.theta[(i, j)].clone();
            }
            rows.push(row);
        }
        // Plus the annihilator of R in the covector summand.
        let ann = r.annihilator();
        for i in 0..ann.dim() {
            let mut row = vec![Scalar::zero(); 2 * v_dim];
            for c in 0..v_dim {
                row[v_dim + c] = ann.basis()[(i, c)].clone();
            }
            rows.push(row);
        }
        DiracSubspace::new(v_dim, Subspace::from_rows(2 * v_dim, rows)?)
    }

    /// Recover the range and induced skew form. The form does not depend
    /// on the choice of lift; this is re-verified with a second lift when
    /// one exists.
    pub fn to_pair(&self) -> Result<DiracPair, DiracError> {
        let n = self.v_dim;
        let b = self.space.basis();
        let vec_part = b.submatrix(0, 0, b.rows(), n);
        let cov_part = b.submatrix(0, n, b.rows(), n);
        let range = Subspace::span(n, vec_part.clone())?;
        let k = range.dim();
        let vec_t = vec_part.transpose();
        let kernel_dirs = vec_t.kernel();
        let mut covectors: Vec<Vec<Scalar>> = Vec::with_capacity(k);
        for i in 0..k {
            let target = range.basis().row_vec(i);
            let c = vec_t.solve(&target).expect("range vectors lift into L");
            let alpha = cov_part.transpose().apply(&c)?;
            if kernel_dirs.rows() > 0 {
                // A second lift must induce the same values on the range.
                let mut c2 = c.clone();
                for (idx, v) in kernel_dirs.row(0).iter().enumerate() {
                    c2[idx] = c2[idx].clone() + v.clone();
                }
                let alpha2 = cov_part.transpose().apply(&c2)?;
                for j in 0..k {
                    let rj = range.basis().row(j);
                    let v1: Scalar = (0..n).map(|m| &alpha[m] * &rj[m]).sum();
                    let v2: Scalar = (0..n).map(|m| &alpha2[m] * &rj[m]).sum();
                    if v1 != v2 {
                        return Err(DiracError::InconsistentLift);
                    }
                }
            }
            covectors.push(alpha);
        }
        let theta = Matrix::from_fn(k, k, |i, j| {
            let rj = range.basis().row(j);
            (0..n).map(|m| &covectors[i][m] * &rj[m]).sum()
        });
        DiracPair::new(range, theta)
    }

    /// Restriction to a subspace `W ⊆ V` through the canonical quotient
    /// `L ∩ (W ⊕ V*) / L ∩ W°`, expressed in the canonical basis of `W`.
    pub fn restrict(&self, w: &ExactSubspace) -> Result<Self, DiracError> {
        let n = self.v_dim;
        if w.ambient_dim() != n {
            return Err(LinalgError::DimensionMismatch(format!(
                "subspace ambient {} does not match v_dim {}",
                w.ambient_dim(),
                n
            ))
            .into());
        }
        let m = w.dim();
        // W ⊕ V* inside the double.
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for i in 0..m {
            let mut row = vec![Scalar::zero(); 2 * n];
            for c in 0..n {
                row[c] = w.basis()[(i, c)].clone();
            }
            rows.push(row);
        }
        for c in 0..n {
            let mut row = vec![Scalar::zero(); 2 * n];
            row[n + c] = Scalar::one();
            rows.push(row);
        }
        let wv = Subspace::from_rows(2 * n, rows)?;
        let s = self.space.intersect(&wv)?;
        // Push each intersection vector down to W ⊕ W*.
        let pivots: Vec<usize> = (0..m)
            .map(|i| {
                (0..n)
                    .find(|&c| !w.basis()[(i, c)].is_zero())
                    .expect("nonzero row")
            })
            .collect();
        let mut image: Vec<Vec<Scalar>> = Vec::new();
        for r in 0..s.dim() {
            let row = s.basis().row(r);
            let mut out = vec![Scalar::zero(); 2 * m];
            for (j, &p) in pivots.iter().enumerate() {
                out[j] = row[p].clone();
            }
            for j in 0..m {
                let wj = w.basis().row(j);
                out[m + j] = (0..n).map(|c| &row[n + c] * &wj[c]).sum();
            }
            image.push(out);
        }
        DiracSubspace::new(m, Subspace::from_rows(2 * m, image)?)
    }

    /// Restriction computed through the range/form presentation:
    /// `(R ∩ W, θ|_{R∩W})`. Agrees with [`DiracSubspace::restrict`]
    /// bitwise.
    pub fn restrict_via_pair(&self, w: &ExactSubspace) -> Result<Self, DiracError> {
        let n = self.v_dim;
        if w.ambient_dim() != n {
            return Err(LinalgError::DimensionMismatch(format!(
                "subspace ambient {} does not match v_dim {}",
                w.ambient_dim(),
                n
            ))
            .into());
        }
        let m = w.dim();
        let pair = self.to_pair()?;
        let rw = pair.range.intersect(w)?;
        let w_pivots: Vec<usize> = (0..m)
            .map(|i| {
                (0..n)
                    .find(|&c| !w.basis()[(i, c)].is_zero())
                    .expect("nonzero row")
            })
            .collect();
        // R ∩ W written in W coordinates, re-canonicalized there.
        let mut coords: Vec<Vec<Scalar>> = Vec::new();
        for r in 0..rw.dim() {
            let row = rw.basis().row(r);
            coords.push(w_pivots.iter().map(|&p| row[p].clone()).collect());
        }
        let range_w = Subspace::from_rows(m, coords)?;
        // Map the canonical W-basis of R ∩ W back to V and evaluate θ.
        let r_pivots: Vec<usize> = (0..pair.range.dim())
            .map(|i| {
                (0..n)
                    .find(|&c| !pair.range.basis()[(i, c)].is_zero())
                    .expect("nonzero row")
            })
            .collect();
        let back: Vec<Vec<Scalar>> = (0..range_w.dim())
            .map(|i| {
                let c = range_w.basis().row(i);
                (0..n)
                    .map(|col| (0..m).map(|j| &c[j] * &w.basis()[(j, col)]).sum())
                    .collect()
            })
            .collect();
        let theta_w = Matrix::from_fn(range_w.dim(), range_w.dim(), |i, j| {
            let ci: Vec<Scalar> = r_pivots.iter().map(|&p| back[i][p].clone()).collect();
            let cj: Vec<Scalar> = r_pivots.iter().map(|&p| back[j][p].clone()).collect();
            let mut acc = Scalar::zero();
            for a in 0..ci.len() {
                for b in 0..cj.len() {
                    acc += &(&ci[a] * &cj[b]) * &pair.theta[(a, b)];
                }
            }
            acc
        });
        DiracSubspace::from_pair(&DiracPair::new(range_w, theta_w)?, m)
    }

    /// Forward image along a linear map `f : V₁ → V₂` (matrix acting on
    /// columns): `{(f X, β) : (X, f*β) ∈ L}`. Always maximal isotropic at
    /// the vector-space level.
    pub fn pushforward(&self, f: &Matrix<Scalar>) -> Result<Self, DiracError> {
        let n1 = self.v_dim;
        let n2 = f.rows();
        if f.cols() != n1 {
            return Err(LinalgError::DimensionMismatch(format!(
                "map has {} columns, structure lives on Q^{}",
                f.cols(),
                n1
            ))
            .into());
        }
        let (q, _) = self.space.quotient_map();
        // (X, β) ∈ V₁ ⊕ V₂* such that (X, f*β) ∈ L.
        let mut psi = Matrix::zeros(2 * n1, n1 + n2);
        for i in 0..n1 {
            psi[(i, i)] = Scalar::one();
        }
        let ft = f.transpose();
        for i in 0..n1 {
            for j in 0..n2 {
                psi[(n1 + i, n1 + j)] = ft[(i, j)].clone();
            }
        }
        let pre = q.matmul(&psi)?.kernel();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for r in 0..pre.rows() {
            let row = pre.row(r);
            let x = &row[..n1];
            let beta = &row[n1..];
            let fx = f.apply(x)?;
            let mut out = Vec::with_capacity(2 * n2);
            out.extend(fx);
            out.extend_from_slice(beta);
            rows.push(out);
        }
        DiracSubspace::new(n2, Subspace::from_rows(2 * n2, rows)?)
    }

    /// Backward image along `f : V₁ → V₂`: `{(X, f*β) : (f X, β) ∈ L}`.
    pub fn pullback(&self, f: &Matrix<Scalar>) -> Result<Self, DiracError> {
        let n2 = self.v_dim;
        let n1 = f.cols();
        if f.rows() != n2 {
            return Err(LinalgError::DimensionMismatch(format!(
                "map has {} rows, structure lives on Q^{}",
                f.rows(),
                n2
            ))
            .into());
        }
        let (q, _) = self.space.quotient_map();
        // (X, β) ∈ V₁ ⊕ V₂* such that (f X, β) ∈ L.
        let mut phi = Matrix::zeros(2 * n2, n1 + n2);
        for i in 0..n2 {
            for j in 0..n1 {
                phi[(i, j)] = f[(i, j)].clone();
            }
        }
        for i in 0..n2 {
            phi[(n2 + i, n1 + i)] = Scalar::one();
        }
        let pre = q.matmul(&phi)?.kernel();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for r in 0..pre.rows() {
            let row = pre.row(r);
            let x = &row[..n1];
            let beta = &row[n1..];
            // f*β as a row is β·f.
            let fstar: Vec<Scalar> = (0..n1)
                .map(|j| (0..n2).map(|i| &beta[i] * &f[(i, j)]).sum())
                .collect();
            let mut out = Vec::with_capacity(2 * n1);
            out.extend_from_slice(x);
            out.extend(fstar);
            rows.push(out);
        }
        DiracSubspace::new(n1, Subspace::from_rows(2 * n1, rows)?)
    }

    /// Check the roundtrip identities along `f` together with their
    /// characterizing kernel/range conditions.
    pub fn roundtrip_laws(
        f: &Matrix<Scalar>,
        l: &DiracSubspace,
    ) -> Result<RoundtripReport, DiracError> {
        let mut report = RoundtripReport {
            source: None,
            target: None,
        };
        if f.cols() == l.v_dim {
            let back = l.pushforward(f)?.pullback(f)?;
            let ker_f = Subspace::span(f.cols(), f.kernel())?;
            let ker_l = l.kernel()?;
            report.source = Some((back == *l, ker_l.contains_subspace(&ker_f)));
        }
        if f.rows() == l.v_dim {
            let fwd = l.pullback(f)?.pushforward(f)?;
            let image = Subspace::span(f.rows(), f.transpose())?;
            let range = l.to_pair()?.range;
            report.target = Some((fwd == *l, image.contains_subspace(&range)));
        }
        Ok(report)
    }

    /// The characteristic subspace `Ker(L) = V ∩ L`, returned inside `V`.
    pub fn kernel(&self) -> Result<ExactSubspace, DiracError> {
        let n = self.v_dim;
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for c in 0..n {
            let mut row = vec![Scalar::zero(); 2 * n];
            row[c] = Scalar::one();
            rows.push(row);
        }
        let v_summand = Subspace::from_rows(2 * n, rows)?;
        let meet = self.space.intersect(&v_summand)?;
        let vec_rows: Vec<Vec<Scalar>> = (0..meet.dim())
            .map(|r| meet.basis().row(r)[..n].to_vec())
            .collect();
        Ok(Subspace::from_rows(n, vec_rows)?)
    }

    /// Gauge shear by a skew 2-form: `(X, α) ↦ (X, α + B(X,·))`. The
    /// range is unchanged; the induced form picks up the restriction of
    /// `B`.
    pub fn gauge(&self, b: &Matrix<Scalar>) -> Result<Self, DiracError> {
        if !b.is_skew_symmetric() {
            return Err(DiracError::NotSkew);
        }
        let n = self.v_dim;
        if b.rows() != n {
            return Err(LinalgError::DimensionMismatch(format!(
                "form of size {} on a structure over Q^{}",
                b.rows(),
                n
            ))
            .into());
        }
        let basis = self.space.basis();
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(basis.rows());
        for r in 0..basis.rows() {
            let row = basis.row(r);
            let mut out = row.to_vec();
            for k in 0..n {
                let shear: Scalar = (0..n).map(|i| &row[i] * &b[(i, k)]).sum();
                out[n + k] = out[n + k].clone() + shear;
            }
            rows.push(out);
        }
        DiracSubspace::new(n, Subspace::from_rows(2 * n, rows)?)
    }

    /// Pointwise fiber of the conjugation-twisted structure on a group
    /// with an invariant symmetric pairing: the span of
    /// `((A−1)w, ½β((A+1)w, ·))` over all `w`, where `A` is the adjoint
    /// operator at the point. Uses the right-translation identification
    /// `v_r ↦ v`, `v_l ↦ A⁻¹v`; the induced form on the range satisfies
    /// `θ((A−1)v,(A−1)w) = ½β((A⁻¹−A)v, w)`.
    pub fn cartan_fiber(ad: &Matrix<Scalar>, beta: &Matrix<Scalar>) -> Result<Self, DiracError> {
        let n = ad.rows();
        if !ad.is_square() || !beta.is_square() || beta.rows() != n {
            return Err(LinalgError::DimensionMismatch(
                "operator and form must be square of equal size".into(),
            )
            .into());
        }
        if !beta.is_symmetric() || beta.inverse().is_none() {
            return Err(DiracError::DegenerateForm);
        }
        let invariant = ad.transpose().matmul(beta)?.matmul(ad)? == *beta;
        if !invariant {
            return Err(DiracError::NotInvariant);
        }
        let id = Matrix::identity(n);
        let a_minus = ad.sub_mat(&id)?;
        let a_plus = ad.add_mat(&id)?;
        let half = Scalar::new(1, 2).expect("nonzero denominator");
        let cov = a_plus.transpose().matmul(beta)?.scale(&half);
        let basis = a_minus.transpose().hstack(&cov)?;
        DiracSubspace::new(n, Subspace::span(2 * n, basis)?)
    }

    /// Human-readable certificate of the defining invariants.
    pub fn certificate(&self) -> String {
        let n = self.v_dim;
        let b = self.space.basis();
        let mut worst = Scalar::zero();
        let mut pairs = 0usize;
        for i in 0..b.rows() {
            for j in i..b.rows() {
                let p = pairing(b.row(i), b.row(j), n);
                if p.abs() > worst {
                    worst = p.abs();
                }
                pairs += 1;
            }
        }
        format!(
            "dim(L) = {} = v_dim (maximal); {} basis pairings under <.,.>+ all equal {} (isotropic)",
            self.space.dim(),
            pairs,
            worst
        )
    }
}

#[derive(Serialize, Deserialize)]
struct DiracRepr {
    v_dim: usize,
    basis: Matrix<Scalar>,
}

impl Serialize for DiracSubspace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DiracRepr {
            v_dim: self.v_dim,
            basis: self.space.basis().clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DiracSubspace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = DiracRepr::deserialize(deserializer)?;
        let space = Subspace::span(2 * repr.v_dim, repr.basis).map_err(D::Error::custom)?;
        DiracSubspace::new(repr.v_dim, space).map_err(D::Error::custom)
    }
}
