use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::Scalar;

/// Multivariate polynomial with exact rational coefficients. Terms are
/// keyed by exponent vectors in a sorted map and zero coefficients are
/// never stored, so equal polynomials have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    n_vars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl Poly {
    pub fn zero(n_vars: usize) -> Self {
        Poly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; n_vars], c);
        }
        p
    }

    pub fn one(n_vars: usize) -> Self {
        Poly::constant(n_vars, Scalar::one())
    }

    /// The coordinate monomial `x_i`.
    pub fn var(n_vars: usize, i: usize) -> Self {
        assert!(i < n_vars, "variable index out of range");
        let mut exp = vec![0; n_vars];
        exp[i] = 1;
        let mut p = Poly::zero(n_vars);
        p.terms.insert(exp, Scalar::one());
        p
    }

    pub fn monomial(n_vars: usize, exp: Vec<u32>, coef: Scalar) -> Self {
        assert_eq!(exp.len(), n_vars, "exponent length must match n_vars");
        let mut p = Poly::zero(n_vars);
        if !coef.is_zero() {
            p.terms.insert(exp, coef);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn insert(&mut self, exp: Vec<u32>, coef: Scalar) {
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(c) => {
                *c += coef;
                if c.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, coef);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.n_vars, other.n_vars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.n_vars);
        }
        Poly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.n_vars, other.n_vars, "variable count mismatch");
        let mut out = Poly::zero(self.n_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(exp, ca * cb);
            }
        }
        out
    }

    /// Partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Poly {
        assert!(i < self.n_vars, "variable index out of range");
        let mut out = Poly::zero(self.n_vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut exp = e.clone();
            exp[i] -= 1;
            out.insert(exp, c * &Scalar::from(e[i] as i64));
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.n_vars, "point dimension mismatch");
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &p) in e.iter().enumerate() {
                if p > 0 {
                    term = term.clone() * point[i].pow(p);
                }
            }
            acc += term;
        }
        acc
    }

    /// Exact division: `Some(q)` with `self = q * divisor` when the
    /// division leaves no remainder. Uses lexicographic leading-term
    /// reduction.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert_eq!(self.n_vars, divisor.n_vars, "variable count mismatch");
        if divisor.is_zero() {
            return None;
        }
        let (dlead, dcoef) = divisor.terms.iter().next_back()?;
        let dcoef_inv = dcoef.recip().expect("stored coefficients are nonzero");
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.n_vars);
        while !rem.is_zero() {
            let (rlead, rcoef) = rem.terms.iter().next_back().expect("nonzero");
            let mut exp = Vec::with_capacity(self.n_vars);
            for (a, b) in rlead.iter().zip(dlead) {
                if a < b {
                    return None;
                }
                exp.push(a - b);
            }
            let coef = rcoef * &dcoef_inv;
            let t = Poly::monomial(self.n_vars, exp, coef);
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
        }
        Some(quot)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, p)?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<u32>,
    coef: Scalar,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    n_vars: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            n_vars: self.n_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    exp: e.clone(),
                    coef: c.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut p = Poly::zero(repr.n_vars);
        for t in repr.terms {
            if t.exp.len() != repr.n_vars {
                return Err(D::Error::custom("exponent length must match n_vars"));
            }
            p.insert(t.exp, t.coef);
        }
        Ok(p)
    }
}
