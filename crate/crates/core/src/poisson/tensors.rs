use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::{Matrix, Scalar};

use super::poly::Poly;

#[derive(Serialize, Deserialize)]
struct Skew2Component {
    idx: [usize; 2],
    poly: Poly,
}

#[derive(Serialize, Deserialize)]
struct Skew2Repr {
    n_vars: usize,
    components: Vec<Skew2Component>,
}

#[derive(Serialize, Deserialize)]
struct Skew3Component {
    idx: [usize; 3],
    poly: Poly,
}

#[derive(Serialize, Deserialize)]
struct Skew3Repr {
    n_vars: usize,
    components: Vec<Skew3Component>,
}

/// Vector field with polynomial components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyVectorField {
    comps: Vec<Poly>,
}

/// 1-form with polynomial components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyOneForm {
    comps: Vec<Poly>,
}

impl PolyVectorField {
    pub fn new(comps: Vec<Poly>) -> Self {
        assert!(
            !comps.is_empty(),
            "a vector field needs at least one component"
        );
        let n = comps[0].n_vars();
        assert!(comps.iter().all(|c| c.n_vars() == n));
        PolyVectorField { comps }
    }

    pub fn zero(n: usize) -> Self {
        PolyVectorField {
            comps: vec![Poly::zero(n); n],
        }
    }

    /// The coordinate field along `x_i`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut comps = vec![Poly::zero(n); n];
        comps[i] = Poly::one(n);
        PolyVectorField { comps }
    }

    pub fn n_vars(&self) -> usize {
        self.comps[0].n_vars()
    }

    pub fn comp(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        PolyVectorField::new(
            self.comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        PolyVectorField::new(
            self.comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    /// Action on functions as a derivation: `X(f) = Σ X^i ∂_i f`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let n = self.n_vars();
        let mut out = Poly::zero(n);
        for (i, c) in self.comps.iter().enumerate() {
            out = out.add(&c.mul(&f.partial(i)));
        }
        out
    }

    /// `[X, Y]^c = Σ_a (X^a ∂_a Y^c − Y^a ∂_a X^c)`.
    pub fn lie_bracket(&self, other: &Self) -> Self {
        let n = self.n_vars();
        PolyVectorField::new(
            (0..n)
                .map(|c| self.apply(other.comp(c)).sub(&other.apply(self.comp(c))))
                .collect(),
        )
    }

    /// Cartan formula: `L_X β = i_X dβ + d(i_X β)`.
    pub fn lie_derivative(&self, beta: &PolyOneForm) -> PolyOneForm {
        let inner = beta.pair(self);
        beta.exterior_d()
            .contract(self)
            .add(&PolyOneForm::d(&inner))
    }

    pub fn eval(&self, point: &[Scalar]) -> Vec<Scalar> {
        self.comps.iter().map(|c| c.eval(point)).collect()
    }
}

impl PolyOneForm {
    pub fn new(comps: Vec<Poly>) -> Self {
        assert!(!comps.is_empty(), "a 1-form needs at least one component");
        let n = comps[0].n_vars();
        assert!(comps.iter().all(|c| c.n_vars() == n));
        PolyOneForm { comps }
    }

    pub fn zero(n: usize) -> Self {
        PolyOneForm {
            comps: vec![Poly::zero(n); n],
        }
    }

    /// The coordinate differential `dx_i`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut comps = vec![Poly::zero(n); n];
        comps[i] = Poly::one(n);
        PolyOneForm { comps }
    }

    /// Differential of a function.
    pub fn d(f: &Poly) -> Self {
        let n = f.n_vars();
        PolyOneForm {
            comps: (0..n).map(|i| f.partial(i)).collect(),
        }
    }

    pub fn n_vars(&self) -> usize {
        self.comps[0].n_vars()
    }

    pub fn comp(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        PolyOneForm::new(
            self.comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        PolyOneForm::new(
            self.comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        PolyOneForm::new(self.comps.iter().map(Poly::neg).collect())
    }

    /// Multiply by a function.
    pub fn scale_fn(&self, f: &Poly) -> Self {
        PolyOneForm::new(self.comps.iter().map(|c| c.mul(f)).collect())
    }

    /// Pairing with a vector field: `α(X) = Σ α_i X^i`.
    pub fn pair(&self, x: &PolyVectorField) -> Poly {
        let n = self.n_vars();
        let mut out = Poly::zero(n);
        for i in 0..n {
            out = out.add(&self.comps[i].mul(x.comp(i)));
        }
        out
    }

    /// Exterior derivative: `(dα)_ij = ∂_i α_j − ∂_j α_i`.
    pub fn exterior_d(&self) -> PolyTwoForm {
        let n = self.n_vars();
        let mut out = PolyTwoForm::zero(n);
        for i in 0..n {
            for j in (i + 1)..n {
                out.set(
                    i,
                    j,
                    self.comps[j].partial(i).sub(&self.comps[i].partial(j)),
                );
            }
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Vec<Scalar> {
        self.comps.iter().map(|c| c.eval(point)).collect()
    }
}

macro_rules! skew2 {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, PartialEq, Eq, Debug)]
        pub struct $name {
            n_vars: usize,
            comps: BTreeMap<(usize, usize), Poly>,
        }

        impl $name {
            pub fn zero(n_vars: usize) -> Self {
                $name {
                    n_vars,
                    comps: BTreeMap::new(),
                }
            }

            pub fn n_vars(&self) -> usize {
                self.n_vars
            }

            /// Set the component at `i < j`.
            pub fn set(&mut self, i: usize, j: usize, p: Poly) {
                assert!(i < j && j < self.n_vars, "need i < j < n_vars");
                assert_eq!(p.n_vars(), self.n_vars);
                if p.is_zero() {
                    self.comps.remove(&(i, j));
                } else {
                    self.comps.insert((i, j), p);
                }
            }

            /// Signed component at any index pair.
            pub fn get(&self, i: usize, j: usize) -> Poly {
                if i == j {
                    return Poly::zero(self.n_vars);
                }
                let (key, flip) = if i < j {
                    ((i, j), false)
                } else {
                    ((j, i), true)
                };
                match self.comps.get(&key) {
                    Some(p) if flip => p.neg(),
                    Some(p) => p.clone(),
                    None => Poly::zero(self.n_vars),
                }
            }

            /// Stored components, keys with `i < j`.
            pub fn components(&self) -> impl Iterator<Item = ((usize, usize), &Poly)> {
                self.comps.iter().map(|(&k, v)| (k, v))
            }

            pub fn is_zero(&self) -> bool {
                self.comps.is_empty()
            }

            pub fn add(&self, other: &Self) -> Self {
                assert_eq!(self.n_vars, other.n_vars);
                let mut out = self.clone();
                for (&(i, j), p) in &other.comps {
                    let merged = out.get(i, j).add(p);
                    out.set(i, j, merged);
                }
                out
            }

            pub fn neg(&self) -> Self {
                $name {
                    n_vars: self.n_vars,
                    comps: self.comps.iter().map(|(&k, p)| (k, p.neg())).collect(),
                }
            }

            /// Full skew component matrix evaluated at a point.
            pub fn eval_matrix(&self, point: &[Scalar]) -> Matrix<Scalar> {
                let n = self.n_vars;
                let mut m = Matrix::zeros(n, n);
                for (&(i, j), p) in &self.comps {
                    let v = p.eval(point);
                    m[(i, j)] = v.clone();
                    m[(j, i)] = -v;
                }
                m
            }

            /// Build from the evaluated-entry representation of a constant
            /// skew matrix.
            pub fn from_constant_matrix(m: &Matrix<Scalar>) -> Self {
                let n = m.rows();
                let mut out = Self::zero(n);
                for i in 0..n {
                    for j in (i + 1)..n {
                        out.set(i, j, Poly::constant(n, m[(i, j)].clone()));
                    }
                }
                out
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                Skew2Repr {
                    n_vars: self.n_vars,
                    components: self
                        .comps
                        .iter()
                        .map(|(&(i, j), p)| Skew2Component {
                            idx: [i, j],
                            poly: p.clone(),
                        })
                        .collect(),
                }
                .serialize(serializer)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let repr = Skew2Repr::deserialize(deserializer)?;
                let mut out = Self::zero(repr.n_vars);
                for c in repr.components {
                    let [i, j] = c.idx;
                    if i >= j || j >= repr.n_vars || c.poly.n_vars() != repr.n_vars {
                        return Err(D::Error::custom("components must have i < j < n_vars"));
                    }
                    out.set(i, j, c.poly);
                }
                Ok(out)
            }
        }
    };
}

skew2!(
    PolyBivector,
    "Skew contravariant 2-tensor with polynomial components, stored on the upper triangle."
);
skew2!(
    PolyTwoForm,
    "Skew covariant 2-tensor (a 2-form) with polynomial components, stored on the upper triangle."
);

impl PolyTwoForm {
    /// Interior product: `(i_X ω)_j = Σ_i X^i ω_ij`.
    pub fn contract(&self, x: &PolyVectorField) -> PolyOneForm {
        let n = self.n_vars;
        PolyOneForm::new(
            (0..n)
                .map(|j| {
                    let mut acc = Poly::zero(n);
                    for i in 0..n {
                        acc = acc.add(&x.comp(i).mul(&self.get(i, j)));
                    }
                    acc
                })
                .collect(),
        )
    }

    /// Exterior derivative: `(dω)_ijk = ∂_i ω_jk − ∂_j ω_ik + ∂_k ω_ij`.
    pub fn exterior_d(&self) -> PolyThreeForm {
        let n = self.n_vars;
        let mut out = PolyThreeForm::zero(n);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let comp = self
                        .get(j, k)
                        .partial(i)
                        .sub(&self.get(i, k).partial(j))
                        .add(&self.get(i, j).partial(k));
                    out.set(i, j, k, comp);
                }
            }
        }
        out
    }
}

fn sort3_signed(mut idx: [usize; 3]) -> Option<([usize; 3], bool)> {
    if idx[0] == idx[1] || idx[1] == idx[2] || idx[0] == idx[2] {
        return None;
    }
    let mut flips = 0;
    // Three-element bubble sort, counting swaps.
    for _ in 0..2 {
        for k in 0..2 {
            if idx[k] > idx[k + 1] {
                idx.swap(k, k + 1);
                flips += 1;
            }
        }
    }
    Some((idx, flips % 2 == 1))
}

macro_rules! skew3 {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, PartialEq, Eq, Debug)]
        pub struct $name {
            n_vars: usize,
            comps: BTreeMap<(usize, usize, usize), Poly>,
        }

        impl $name {
            pub fn zero(n_vars: usize) -> Self {
                $name {
                    n_vars,
                    comps: BTreeMap::new(),
                }
            }

            pub fn n_vars(&self) -> usize {
                self.n_vars
            }

            /// Set the component at `i < j < k`.
            pub fn set(&mut self, i: usize, j: usize, k: usize, p: Poly) {
                assert!(i < j && j < k && k < self.n_vars, "need i < j < k < n_vars");
                assert_eq!(p.n_vars(), self.n_vars);
                if p.is_zero() {
                    self.comps.remove(&(i, j, k));
                } else {
                    self.comps.insert((i, j, k), p);
                }
            }

            /// Signed component at any index triple.
            pub fn get(&self, i: usize, j: usize, k: usize) -> Poly {
                match sort3_signed([i, j, k]) {
                    None => Poly::zero(self.n_vars),
                    Some(([a, b, c], odd)) => match self.comps.get(&(a, b, c)) {
                        Some(p) if odd => p.neg(),
                        Some(p) => p.clone(),
                        None => Poly::zero(self.n_vars),
                    },
                }
            }

            pub fn components(&self) -> impl Iterator<Item = ((usize, usize, usize), &Poly)> {
                self.comps.iter().map(|(&k, v)| (k, v))
            }

            pub fn is_zero(&self) -> bool {
                self.comps.is_empty()
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                Skew3Repr {
                    n_vars: self.n_vars,
                    components: self
                        .comps
                        .iter()
                        .map(|(&(i, j, k), p)| Skew3Component {
                            idx: [i, j, k],
                            poly: p.clone(),
                        })
                        .collect(),
                }
                .serialize(serializer)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let repr = Skew3Repr::deserialize(deserializer)?;
                let mut out = Self::zero(repr.n_vars);
                for c in repr.components {
                    let [i, j, k] = c.idx;
                    if !(i < j && j < k && k < repr.n_vars) || c.poly.n_vars() != repr.n_vars {
                        return Err(D::Error::custom("components must have i < j < k < n_vars"));
                    }
                    out.set(i, j, k, c.poly);
                }
                Ok(out)
            }
        }
    };
}

skew3!(
    PolyTrivector,
    "Skew contravariant 3-tensor with polynomial components; carries squared-bracket residuals."
);
skew3!(
    PolyThreeForm,
    "Skew covariant 3-tensor (a 3-form) with polynomial components."
);

impl PolyThreeForm {
    /// Closedness: every component of the exterior derivative vanishes.
    /// `(dφ)_ijkl = ∂_i φ_jkl − ∂_j φ_ikl + ∂_k φ_ijl − ∂_l φ_ijk`.
    pub fn is_closed(&self) -> bool {
        let n = self.n_vars;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    for l in (k + 1)..n {
                        let comp = self
                            .get(j, k, l)
                            .partial(i)
                            .sub(&self.get(i, k, l).partial(j))
                            .add(&self.get(i, j, l).partial(k))
                            .sub(&self.get(i, j, k).partial(l));
                        if !comp.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `φ(X, Y, ·)` as a 1-form.
    pub fn contract2(&self, x: &PolyVectorField, y: &PolyVectorField) -> PolyOneForm {
        let n = self.n_vars;
        PolyOneForm::new(
            (0..n)
                .map(|c| {
                    let mut acc = Poly::zero(n);
                    for &(a, b, d) in self.comps.keys() {
                        // Expand the alternating sum over the stored triple.
                        for (p, q, r, sign) in [
                            (a, b, d, 1i64),
                            (b, d, a, 1),
                            (d, a, b, 1),
                            (b, a, d, -1),
                            (a, d, b, -1),
                            (d, b, a, -1),
                        ] {
                            if r != c {
                                continue;
                            }
                            let val = self
                                .get(a, b, d)
                                .scale(&Scalar::from(sign))
                                .mul(x.comp(p))
                                .mul(y.comp(q));
                            acc = acc.add(&val);
                        }
                    }
                    acc
                })
                .collect(),
        )
    }

    /// Full contraction `φ(X, Y, Z)`.
    pub fn eval_on_fields(
        &self,
        x: &PolyVectorField,
        y: &PolyVectorField,
        z: &PolyVectorField,
    ) -> Poly {
        self.contract2(x, y).pair(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_component_lookup() {
        let mut b = PolyBivector::zero(3);
        b.set(0, 2, Poly::one(3));
        assert_eq!(b.get(2, 0), Poly::one(3).neg());
        assert!(b.get(1, 1).is_zero());
    }

    #[test]
    fn three_form_signs() {
        let mut phi = PolyThreeForm::zero(3);
        phi.set(0, 1, 2, Poly::one(3));
        assert_eq!(phi.get(1, 0, 2), Poly::one(3).neg());
        assert_eq!(phi.get(2, 0, 1), Poly::one(3));
        assert!(phi.get(0, 0, 2).is_zero());
    }

    #[test]
    fn exterior_square_of_functions_vanishes() {
        // d(df) = 0.
        let f = Poly::var(3, 0)
            .mul(&Poly::var(3, 1))
            .mul(&Poly::var(3, 2))
            .add(&Poly::var(3, 0).mul(&Poly::var(3, 0)));
        assert!(PolyOneForm::d(&f).exterior_d().is_zero());
    }

    #[test]
    fn exterior_square_of_one_forms_vanishes() {
        // d(dα) = 0 for any polynomial 1-form.
        let alpha = PolyOneForm::new(vec![
            Poly::var(4, 1).mul(&Poly::var(4, 2)),
            Poly::var(4, 0),
            Poly::var(4, 3).mul(&Poly::var(4, 3)),
            Poly::one(4),
        ]);
        assert!(alpha.exterior_d().exterior_d().is_closed());
        // The 3-form d(dα) itself is zero.
        let ddalpha = alpha.exterior_d().exterior_d();
        assert!(ddalpha.is_zero());
    }

    #[test]
    fn contraction_is_alternating() {
        let mut phi = PolyThreeForm::zero(3);
        phi.set(0, 1, 2, Poly::var(3, 0));
        let x = PolyVectorField::coordinate(3, 0);
        let y = PolyVectorField::coordinate(3, 1);
        let z = PolyVectorField::coordinate(3, 2);
        let pos = phi.eval_on_fields(&x, &y, &z);
        let negf = phi.eval_on_fields(&y, &x, &z);
        assert_eq!(pos, negf.neg());
        assert_eq!(pos, Poly::var(3, 0));
        assert!(phi.eval_on_fields(&x, &x, &z).is_zero());
    }

    #[test]
    fn lie_bracket_of_linear_fields() {
        // [x ∂y, y ∂x] = x ∂x − y ∂y.
        let x_dy = {
            let mut comps = vec![Poly::zero(2); 2];
            comps[1] = Poly::var(2, 0);
            PolyVectorField::new(comps)
        };
        let y_dx = {
            let mut comps = vec![Poly::zero(2); 2];
            comps[0] = Poly::var(2, 1);
            PolyVectorField::new(comps)
        };
        let br = x_dy.lie_bracket(&y_dx);
        assert_eq!(br.comp(0), &Poly::var(2, 0));
        assert_eq!(br.comp(1), &Poly::var(2, 1).neg());
    }

    #[test]
    fn lie_derivative_matches_leibniz_on_pairings() {
        // L_X(α(Y)) = (L_X α)(Y) + α([X,Y]).
        let x = PolyVectorField::new(vec![Poly::var(2, 1), Poly::var(2, 0).neg()]);
        let y = PolyVectorField::new(vec![Poly::one(2), Poly::var(2, 0)]);
        let alpha = PolyOneForm::new(vec![Poly::var(2, 0).mul(&Poly::var(2, 1)), Poly::var(2, 1)]);
        let lhs = x.apply(&alpha.pair(&y));
        let rhs = x
            .lie_derivative(&alpha)
            .pair(&y)
            .add(&alpha.pair(&x.lie_bracket(&y)));
        assert_eq!(lhs, rhs);
    }
}
