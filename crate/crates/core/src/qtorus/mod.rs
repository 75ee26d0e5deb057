//! Twisted convolution algebra on finitely supported lattice functions,
//! integer block matrices of the split orthogonal group, their fractional
//! action on skew parameter matrices, orbit search over the standard
//! generator set, and the exact `n = 2` equivalence decision through
//! continued fractions.

mod quadext;

pub use quadext::{
    continued_fraction_class, fractional_linear_equivalent, ContinuedFractionClass, QuadExt,
};

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::f64::consts::PI;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{LinalgError, Matrix, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QTorusError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("{0} is not square-free")]
    NotSquareFree(u64),
    #[error("invalid scalar literal `{0}`")]
    BadScalar(String),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("lattice dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("blocks fail the split-orthogonality identities: {0}")]
    NotSplitOrthogonal(String),
    #[error("entries must be integers")]
    NotInteger,
    #[error("determinant must be +1, got {0}")]
    WrongDeterminant(String),
    #[error("exact and floating parameters cannot be mixed")]
    MixedKinds,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Skew deformation parameter: either exact entries in one real quadratic
/// field or floating entries with an explicit tolerance.
#[derive(Clone, Debug, PartialEq)]
pub enum SkewParam {
    Exact(Matrix<QuadExt>),
    Float { entries: Vec<Vec<f64>>, tol: f64 },
}

impl SkewParam {
    pub fn exact(m: Matrix<QuadExt>) -> Result<Self, QTorusError> {
        if !m.is_skew_symmetric() {
            return Err(QTorusError::NotSkew);
        }
        Ok(SkewParam::Exact(m))
    }

    /// The `2 × 2` parameter with upper entry `theta`.
    pub fn n2(theta: QuadExt) -> Self {
        let m = Matrix::from_rows(vec![
            vec![QuadExt::zero(), theta.clone()],
            vec![-theta, QuadExt::zero()],
        ])
        .expect("2x2 literal");
        SkewParam::Exact(m)
    }

    pub fn float(entries: Vec<Vec<f64>>, tol: f64) -> Result<Self, QTorusError> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(QTorusError::DimMismatch(row.len(), n));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if (entries[i][j] + entries[j][i]).abs() > tol {
                    return Err(QTorusError::NotSkew);
                }
            }
        }
        Ok(SkewParam::Float { entries, tol })
    }

    pub fn n(&self) -> usize {
        match self {
            SkewParam::Exact(m) => m.rows(),
            SkewParam::Float { entries, .. } => entries.len(),
        }
    }

    pub fn entry_f64(&self, i: usize, j: usize) -> f64 {
        match self {
            SkewParam::Exact(m) => m[(i, j)].to_f64(),
            SkewParam::Float { entries, .. } => entries[i][j],
        }
    }

    /// `Π(k, l) = Σ_{i<j} Π_ij (k_i l_j − k_j l_i)` as a float, for
    /// phase computation.
    pub fn pairing_f64(&self, k: &[i64], l: &[i64]) -> f64 {
        let n = self.n();
        let mut acc = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                acc +=
                    self.entry_f64(i, j) * (k[i] as f64 * l[j] as f64 - k[j] as f64 * l[i] as f64);
            }
        }
        acc
    }

    /// Key for visited-set bookkeeping: canonical parts for exact
    /// entries, a tolerance/10 grid for floats.
    fn canonical_key(&self) -> String {
        match self {
            SkewParam::Exact(m) => {
                let mut s = String::new();
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        s.push_str(&format!("{};", m[(r, c)]));
                    }
                }
                s
            }
            SkewParam::Float { entries, tol } => {
                let grid = tol / 10.0;
                let mut s = String::new();
                for row in entries {
                    for &v in row {
                        s.push_str(&format!("{};", (v / grid).round() as i64));
                    }
                }
                s
            }
        }
    }

    fn matches(&self, other: &SkewParam) -> bool {
        match (self, other) {
            (SkewParam::Exact(a), SkewParam::Exact(b)) => a == b,
            (SkewParam::Float { entries: a, tol }, SkewParam::Float { entries: b, .. }) => {
                let n = a.len();
                (0..n).all(|i| (0..n).all(|j| (a[i][j] - b[i][j]).abs() <= *tol))
            }
            _ => false,
        }
    }
}

/// Integer that serializes as a JSON number when it fits and a string
/// otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BigIntRepr {
    Small(i64),
    Big(String),
}

impl BigIntRepr {
    fn pack(v: &BigInt) -> Self {
        use num_traits::ToPrimitive;
        match v.to_i64() {
            Some(s) => BigIntRepr::Small(s),
            None => BigIntRepr::Big(v.to_string()),
        }
    }

    fn unpack(&self) -> Result<BigInt, QTorusError> {
        match self {
            BigIntRepr::Small(s) => Ok(BigInt::from(*s)),
            BigIntRepr::Big(s) => {
                BigInt::from_str(s).map_err(|_| QTorusError::BadScalar(s.clone()))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SkewEntryRepr {
    Float(f64),
    Exact {
        p: BigIntRepr,
        q: BigIntRepr,
        d: u64,
        r: BigIntRepr,
    },
}

#[derive(Serialize, Deserialize)]
struct SkewParamRepr {
    n: usize,
    entries: Vec<Vec<SkewEntryRepr>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tol: Option<f64>,
}

impl Serialize for SkewParam {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let n = self.n();
        let repr = match self {
            SkewParam::Exact(m) => SkewParamRepr {
                n,
                entries: (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| {
                                let (p, q, r, d) = {
                                    let (a, b, c, d) = m[(i, j)].parts();
                                    (a, b, c, d)
                                };
                                SkewEntryRepr::Exact {
                                    p: BigIntRepr::pack(&p),
                                    q: BigIntRepr::pack(&q),
                                    d,
                                    r: BigIntRepr::pack(&r),
                                }
                            })
                            .collect()
                    })
                    .collect(),
                tol: None,
            },
            SkewParam::Float { entries, tol } => SkewParamRepr {
                n,
                entries: entries
                    .iter()
                    .map(|row| row.iter().map(|&v| SkewEntryRepr::Float(v)).collect())
                    .collect(),
                tol: Some(*tol),
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SkewParam {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SkewParamRepr::deserialize(deserializer)?;
        let n = repr.n;
        if repr.entries.len() != n || repr.entries.iter().any(|r| r.len() != n) {
            return Err(D::Error::custom("entries must form an n-by-n matrix"));
        }
        let exact = repr
            .entries
            .iter()
            .flatten()
            .all(|e| matches!(e, SkewEntryRepr::Exact { .. }));
        if exact {
            let mut rows = Vec::with_capacity(n);
            for row in &repr.entries {
                let mut out = Vec::with_capacity(n);
                for e in row {
                    let SkewEntryRepr::Exact { p, q, d, r } = e else {
                        unreachable!()
                    };
                    let value = QuadExt::new(
                        p.unpack().map_err(D::Error::custom)?,
                        q.unpack().map_err(D::Error::custom)?,
                        r.unpack().map_err(D::Error::custom)?,
                        *d,
                    )
                    .map_err(D::Error::custom)?;
                    out.push(value);
                }
                rows.push(out);
            }
            let m = Matrix::from_rows(rows).map_err(D::Error::custom)?;
            SkewParam::exact(m).map_err(D::Error::custom)
        } else {
            let mut rows = Vec::with_capacity(n);
            for row in &repr.entries {
                let mut out = Vec::with_capacity(n);
                for e in row {
                    match e {
                        SkewEntryRepr::Float(v) => out.push(*v),
                        SkewEntryRepr::Exact { .. } => {
                            return Err(D::Error::custom(
                                "entries must be all exact or all floating",
                            ))
                        }
                    }
                }
                rows.push(out);
            }
            SkewParam::float(rows, repr.tol.unwrap_or(1e-9)).map_err(D::Error::custom)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TorusTermRepr {
    k: Vec<i64>,
    re: f64,
    #[serde(default)]
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct TorusElementRepr {
    n: usize,
    terms: Vec<TorusTermRepr>,
}

impl Serialize for TorusElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TorusElementRepr {
            n: self.n,
            terms: self
                .coeffs
                .iter()
                .map(|(k, v)| TorusTermRepr {
                    k: k.clone(),
                    re: v.re,
                    im: v.im,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TorusElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = TorusElementRepr::deserialize(deserializer)?;
        let mut out = TorusElement::zero(repr.n);
        for t in repr.terms {
            if t.k.len() != repr.n {
                return Err(D::Error::custom("lattice point length must equal n"));
            }
            out.set(t.k, Complex64::new(t.re, t.im));
        }
        Ok(out)
    }
}

/// Finitely supported function on the rank-`n` lattice with complex
/// values; the carrier of the twisted convolution product.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusElement {
    n: usize,
    coeffs: BTreeMap<Vec<i64>, Complex64>,
}

impl TorusElement {
    pub fn zero(n: usize) -> Self {
        TorusElement {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    /// Indicator of a single lattice point.
    pub fn delta(n: usize, k: Vec<i64>) -> Self {
        assert_eq!(k.len(), n);
        let mut coeffs = BTreeMap::new();
        coeffs.insert(k, Complex64::new(1.0, 0.0));
        TorusElement { n, coeffs }
    }

    /// The multiplicative unit: the indicator of the origin.
    pub fn unit(n: usize) -> Self {
        TorusElement::delta(n, vec![0; n])
    }

    /// The `j`-th generator, the indicator of the `j`-th basis point.
    pub fn generator(n: usize, j: usize) -> Self {
        let mut k = vec![0i64; n];
        k[j] = 1;
        TorusElement::delta(n, k)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, k: Vec<i64>, v: Complex64) {
        assert_eq!(k.len(), self.n);
        if v.norm() == 0.0 {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, v);
        }
    }

    pub fn coeff(&self, k: &[i64]) -> Complex64 {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    pub fn support(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.coeffs.keys()
    }

    /// Fourier coefficients of the complex-conjugate function: conjugated
    /// values on negated lattice points.
    pub fn conj(&self) -> Self {
        TorusElement {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.iter().map(|x| -x).collect(), v.conj()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            let cur = out.coeff(k);
            out.set(k.clone(), cur - v);
        }
        out
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, z: Complex64) -> Self {
        TorusElement {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v * z))
                .collect(),
        }
    }
}

/// Twisted convolution: `(f ∗ g)(m) = Σ_k f(k) g(m−k) e^{iπħ Π(k, m−k)}`.
/// The cocycle sign is fixed so that the generator exchange relation
/// `u_j ∗ u_k = e^{2πi Π_jk} u_k ∗ u_j` holds at `ħ = 1`.
pub fn twisted_product(
    f: &TorusElement,
    g: &TorusElement,
    pi: &SkewParam,
    hbar: f64,
) -> Result<TorusElement, QTorusError> {
    if f.n != g.n {
        return Err(QTorusError::DimMismatch(f.n, g.n));
    }
    if f.n != pi.n() {
        return Err(QTorusError::DimMismatch(f.n, pi.n()));
    }
    let mut out = TorusElement::zero(f.n);
    for (k, fv) in &f.coeffs {
        for (l, gv) in &g.coeffs {
            let m: Vec<i64> = k.iter().zip(l).map(|(a, b)| a + b).collect();
            let phase = PI * hbar * pi.pairing_f64(k, l);
            let rot = Complex64::new(0.0, phase).exp();
            let cur = out.coeff(&m);
            out.set(m, cur + fv * gv * rot);
        }
    }
    Ok(out)
}

/// Outcome of the generator relation and unitarity verification.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationReport {
    pub max_deviation: f64,
    pub pass: bool,
}

/// Verify `u_j ∗ u_k = e^{2πi Π_jk} u_k ∗ u_j` for all pairs and the
/// unitarity relations `u_j ∗ ū_j = ū_j ∗ u_j = 1`, all at `ħ = 1`.
pub fn generator_relation_check(pi: &SkewParam, tol: f64) -> Result<RelationReport, QTorusError> {
    let n = pi.n();
    let mut worst = 0.0f64;
    for j in 0..n {
        let uj = TorusElement::generator(n, j);
        let uj_bar = uj.conj();
        let left = twisted_product(&uj, &uj_bar, pi, 1.0)?;
        let right = twisted_product(&uj_bar, &uj, pi, 1.0)?;
        worst = worst.max(left.sub(&TorusElement::unit(n)).norm_inf());
        worst = worst.max(right.sub(&TorusElement::unit(n)).norm_inf());
        for k in 0..n {
            if j == k {
                continue;
            }
            let uk = TorusElement::generator(n, k);
            let jk = twisted_product(&uj, &uk, pi, 1.0)?;
            let kj = twisted_product(&uk, &uj, pi, 1.0)?;
            let factor = Complex64::new(0.0, 2.0 * PI * pi.entry_f64(j, k)).exp();
            let dev = jk.sub(&kj.scale(factor)).norm_inf();
            worst = worst.max(dev);
        }
    }
    Ok(RelationReport {
        max_deviation: worst,
        pass: worst < tol,
    })
}

/// Integer block matrix `[[A, B], [C, D]]` in the split orthogonal group:
/// `AᵀC + CᵀA = 0 = BᵀD + DᵀB`, `AᵀD + CᵀB = 1`, determinant `+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SOnnMatrix {
    pub a: Matrix<Scalar>,
    pub b: Matrix<Scalar>,
    pub c: Matrix<Scalar>,
    pub d: Matrix<Scalar>,
}

/// Check the defining block identities without constructing.
pub fn sonn_check(
    a: &Matrix<Scalar>,
    b: &Matrix<Scalar>,
    c: &Matrix<Scalar>,
    d: &Matrix<Scalar>,
) -> bool {
    SOnnMatrix::from_blocks(a.clone(), b.clone(), c.clone(), d.clone()).is_ok()
}

impl SOnnMatrix {
    pub fn from_blocks(
        a: Matrix<Scalar>,
        b: Matrix<Scalar>,
        c: Matrix<Scalar>,
        d: Matrix<Scalar>,
    ) -> Result<Self, QTorusError> {
        let n = a.rows();
        for m in [&a, &b, &c, &d] {
            if m.rows() != n || m.cols() != n {
                return Err(QTorusError::DimMismatch(m.rows(), n));
            }
            if m.data().iter().any(|s| !s.is_integer()) {
                return Err(QTorusError::NotInteger);
            }
        }
        let at = a.transpose();
        let bt = b.transpose();
        let ct = c.transpose();
        let dt = d.transpose();
        let id = Matrix::identity(n);
        let z1 = at.matmul(&c)?.add_mat(&ct.matmul(&a)?)?;
        if !z1.is_zero() {
            return Err(QTorusError::NotSplitOrthogonal("AtC + CtA != 0".into()));
        }
        let z2 = bt.matmul(&d)?.add_mat(&dt.matmul(&b)?)?;
        if !z2.is_zero() {
            return Err(QTorusError::NotSplitOrthogonal("BtD + DtB != 0".into()));
        }
        let u = at.matmul(&d)?.add_mat(&ct.matmul(&b)?)?;
        if u != id {
            return Err(QTorusError::NotSplitOrthogonal("AtD + CtB != 1".into()));
        }
        let out = SOnnMatrix { a, b, c, d };
        let det = out.assemble().det();
        if det != Scalar::one() {
            return Err(QTorusError::WrongDeterminant(det.to_string()));
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn identity(n: usize) -> Self {
        SOnnMatrix {
            a: Matrix::identity(n),
            b: Matrix::zeros(n, n),
            c: Matrix::zeros(n, n),
            d: Matrix::identity(n),
        }
    }

    /// `ρ(R)`: basis change by any unimodular `R` (determinant ±1).
    pub fn rho(r: &Matrix<Scalar>) -> Result<Self, QTorusError> {
        let rt_inv = r
            .transpose()
            .inverse()
            .ok_or_else(|| QTorusError::NotSplitOrthogonal("R not invertible".into()))?;
        let n = r.rows();
        Self::from_blocks(r.clone(), Matrix::zeros(n, n), Matrix::zeros(n, n), rt_inv)
    }

    /// `ν(N)`: shear by a skew integer matrix, acting as `Π ↦ Π + N`.
    pub fn nu(nmat: &Matrix<Scalar>) -> Result<Self, QTorusError> {
        if !nmat.is_skew_symmetric() {
            return Err(QTorusError::NotSkew);
        }
        let n = nmat.rows();
        Self::from_blocks(
            Matrix::identity(n),
            nmat.clone(),
            Matrix::zeros(n, n),
            Matrix::identity(n),
        )
    }

    /// `σ_{ij}`: partial inversion on the coordinate pair `(i, j)`.
    pub fn sigma(n: usize, i: usize, j: usize) -> Self {
        assert!(i < j && j < n);
        let mut p = Matrix::zeros(n, n);
        p[(i, i)] = Scalar::one();
        p[(j, j)] = Scalar::one();
        let q = Matrix::identity(n).sub_mat(&p).expect("same shape");
        SOnnMatrix {
            a: q.clone(),
            b: p.clone(),
            c: p,
            d: q,
        }
    }

    pub fn assemble(&self) -> Matrix<Scalar> {
        let top = self.a.hstack(&self.b).expect("same rows");
        let bottom = self.c.hstack(&self.d).expect("same rows");
        top.vstack(&bottom).expect("same cols")
    }

    pub fn mul(&self, other: &Self) -> Result<Self, QTorusError> {
        let n = self.n();
        let prod = self.assemble().matmul(&other.assemble())?;
        Ok(SOnnMatrix {
            a: prod.submatrix(0, 0, n, n),
            b: prod.submatrix(0, n, n, n),
            c: prod.submatrix(n, 0, n, n),
            d: prod.submatrix(n, n, n, n),
        })
    }
}

/// Fractional action `g · Π = (AΠ + B)(CΠ + D)⁻¹`, partial: `None` when
/// the denominator is singular. The result is skew whenever defined.
pub fn fractional_action(g: &SOnnMatrix, pi: &SkewParam) -> Result<Option<SkewParam>, QTorusError> {
    if g.n() != pi.n() {
        return Err(QTorusError::DimMismatch(g.n(), pi.n()));
    }
    match pi {
        SkewParam::Exact(m) => {
            let lift = |mm: &Matrix<Scalar>| -> Matrix<QuadExt> { mm.map(QuadExt::from_rational) };
            let a = lift(&g.a);
            let b = lift(&g.b);
            let c = lift(&g.c);
            let d = lift(&g.d);
            let denom = c.matmul(m)?.add_mat(&d)?;
            let Some(inv) = denom.inverse() else {
                return Ok(None);
            };
            let out = a.matmul(m)?.add_mat(&b)?.matmul(&inv)?;
            debug_assert!(out.is_skew_symmetric());
            Ok(Some(SkewParam::Exact(out)))
        }
        SkewParam::Float { entries, tol } => {
            let n = pi.n();
            let to_f = |mm: &Matrix<Scalar>| -> Vec<Vec<f64>> {
                (0..n)
                    .map(|r| (0..n).map(|c| mm[(r, c)].to_f64()).collect())
                    .collect()
            };
            let a = to_f(&g.a);
            let b = to_f(&g.b);
            let c = to_f(&g.c);
            let d = to_f(&g.d);
            let mut denom = vec![vec![0.0; n]; n];
            let mut numer = vec![vec![0.0; n]; n];
            for r in 0..n {
                for cc in 0..n {
                    let mut sd = d[r][cc];
                    let mut sn = b[r][cc];
                    for k in 0..n {
                        sd += c[r][k] * entries[k][cc];
                        sn += a[r][k] * entries[k][cc];
                    }
                    denom[r][cc] = sd;
                    numer[r][cc] = sn;
                }
            }
            let Some(inv) = invert_f64(&denom, *tol) else {
                return Ok(None);
            };
            let mut out = vec![vec![0.0; n]; n];
            for r in 0..n {
                for cc in 0..n {
                    let mut s = 0.0;
                    for k in 0..n {
                        s += numer[r][k] * inv[k][cc];
                    }
                    out[r][cc] = s;
                }
            }
            // Symmetrize away roundoff.
            for r in 0..n {
                out[r][r] = 0.0;
                for cc in (r + 1)..n {
                    let v = 0.5 * (out[r][cc] - out[cc][r]);
                    out[r][cc] = v;
                    out[cc][r] = -v;
                }
            }
            Ok(Some(SkewParam::Float {
                entries: out,
                tol: *tol,
            }))
        }
    }
}

fn invert_f64(m: &[Vec<f64>], tol: f64) -> Option<Vec<Vec<f64>>> {
    let n = m.len();
    let mut aug: Vec<Vec<f64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let (pr, pv) = (col..n)
            .map(|r| (r, aug[r][col].abs()))
            .max_by(|a, b| a.1.total_cmp(&b.1))?;
        if pv <= tol {
            return None;
        }
        aug.swap(col, pr);
        let pivot = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= pivot;
        }
        for r in 0..n {
            if r != col && aug[r][col].abs() > 0.0 {
                let factor = aug[r][col];
                for c in 0..2 * n {
                    let delta = factor * aug[col][c];
                    aug[r][c] -= delta;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// The named generator set used for orbit search: unimodular transvections,
/// swaps and a sign flip through `ρ`, skew shears `ν(±(E_ij − E_ji))`,
/// and the pair inversions `σ_ij`.
pub fn generator_set(n: usize) -> Vec<(String, SOnnMatrix)> {
    let mut out: Vec<(String, SOnnMatrix)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for sign in [1i64, -1] {
                let mut r = Matrix::identity(n);
                r[(i, j)] = Scalar::from(sign);
                let name = format!("rho(T[{i}{j}]{})", if sign > 0 { "+" } else { "-" });
                out.push((
                    name,
                    SOnnMatrix::rho(&r).expect("transvection is unimodular"),
                ));
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut r = Matrix::identity(n);
            r[(i, i)] = Scalar::from(0);
            r[(j, j)] = Scalar::from(0);
            r[(i, j)] = Scalar::one();
            r[(j, i)] = Scalar::one();
            out.push((
                format!("rho(S[{i}{j}])"),
                SOnnMatrix::rho(&r).expect("swap is unimodular"),
            ));
        }
    }
    {
        let mut r = Matrix::identity(n);
        r[(0, 0)] = Scalar::from(-1);
        out.push((
            "rho(D0)".to_string(),
            SOnnMatrix::rho(&r).expect("sign flip is unimodular"),
        ));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            for sign in [1i64, -1] {
                let mut nm = Matrix::zeros(n, n);
                nm[(i, j)] = Scalar::from(sign);
                nm[(j, i)] = Scalar::from(-sign);
                let name = format!("nu(E[{i}{j}]{})", if sign > 0 { "+" } else { "-" });
                out.push((name, SOnnMatrix::nu(&nm).expect("skew shear")));
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            out.push((format!("sigma({i}{j})"), SOnnMatrix::sigma(n, i, j)));
        }
    }
    out
}

/// Result of the breadth-first orbit search.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum OrbitOutcome {
    /// A word in the named generators mapping the first parameter to the
    /// second, leftmost applied first.
    Equivalent { word: Vec<String> },
    /// Not reached within the depth bound; the action is partial, so this
    /// is only a semi-decision.
    Unknown,
}

/// Breadth-first search over the generator set from `pi` towards `pi2`.
pub fn orbit_bfs(
    pi: &SkewParam,
    pi2: &SkewParam,
    depth: usize,
) -> Result<OrbitOutcome, QTorusError> {
    if pi.n() != pi2.n() {
        return Err(QTorusError::DimMismatch(pi.n(), pi2.n()));
    }
    match (pi, pi2) {
        (SkewParam::Exact(_), SkewParam::Exact(_))
        | (SkewParam::Float { .. }, SkewParam::Float { .. }) => {}
        _ => return Err(QTorusError::MixedKinds),
    }
    if pi.matches(pi2) {
        return Ok(OrbitOutcome::Equivalent { word: Vec::new() });
    }
    let gens = generator_set(pi.n());
    let mut visited: HashMap<String, ()> = HashMap::new();
    visited.insert(pi.canonical_key(), ());
    let mut frontier: VecDeque<(SkewParam, Vec<String>)> = VecDeque::new();
    frontier.push_back((pi.clone(), Vec::new()));
    for _ in 0..depth {
        let mut next: VecDeque<(SkewParam, Vec<String>)> = VecDeque::new();
        while let Some((state, word)) = frontier.pop_front() {
            for (name, g) in &gens {
                let Some(image) = fractional_action(g, &state)? else {
                    continue;
                };
                let key = image.canonical_key();
                if visited.contains_key(&key) {
                    continue;
                }
                let mut next_word = word.clone();
                next_word.push(name.clone());
                if image.matches(pi2) {
                    return Ok(OrbitOutcome::Equivalent { word: next_word });
                }
                visited.insert(key, ());
                next.push_back((image, next_word));
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(OrbitOutcome::Unknown)
}

/// Replay a generator word on a parameter; `None` if any step is
/// undefined.
pub fn replay_word(pi: &SkewParam, word: &[String]) -> Result<Option<SkewParam>, QTorusError> {
    let gens: HashMap<String, SOnnMatrix> = generator_set(pi.n()).into_iter().collect();
    let mut cur = pi.clone();
    for name in word {
        let g = gens
            .get(name)
            .unwrap_or_else(|| panic!("unknown generator name {name}"));
        match fractional_action(g, &cur)? {
            Some(next) => cur = next,
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}

/// Exact Morita-equivalence decision for the one-parameter case: rational
/// parameters form a single class; irrational quadratic parameters are
/// equivalent exactly when their continued-fraction tails agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Equivalence {
    Equivalent,
    Inequivalent,
}

pub fn n2_decide(theta1: &QuadExt, theta2: &QuadExt) -> Equivalence {
    if fractional_linear_equivalent(theta1, theta2) {
        Equivalence::Equivalent
    } else {
        Equivalence::Inequivalent
    }
}
