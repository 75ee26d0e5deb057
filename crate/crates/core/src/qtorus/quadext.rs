use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::linalg::{Field, Scalar};

use super::QTorusError;

/// Exact real quadratic irrational `(a + b√d)/c` with `c > 0`,
/// `gcd(a,b,c) = 1` and `d` square-free; rationals are the `b = 0`,
/// `d = 0` case. Arithmetic stays inside one real quadratic field;
/// combining two genuinely irrational values over different `d` panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: u64,
}

fn is_square_free(mut d: u64) -> bool {
    if d == 0 {
        return true;
    }
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        while d.is_multiple_of(p) {
            d /= p;
        }
        p += 1;
    }
    true
}

fn isqrt(n: &BigInt) -> BigInt {
    n.sqrt()
}

impl QuadExt {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: u64,
    ) -> Result<Self, QTorusError> {
        let c: BigInt = c.into();
        if c.is_zero() {
            return Err(QTorusError::ZeroDenominator);
        }
        if !is_square_free(d) {
            return Err(QTorusError::NotSquareFree(d));
        }
        let mut out = QuadExt {
            a: a.into(),
            b: b.into(),
            c,
            d,
        };
        out.reduce();
        Ok(out)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        QuadExt {
            a: n.into(),
            b: BigInt::zero(),
            c: BigInt::one(),
            d: 0,
        }
    }

    pub fn from_rational(r: &Scalar) -> Self {
        QuadExt {
            a: r.numer().clone(),
            b: BigInt::zero(),
            c: r.denom().clone(),
            d: 0,
        }
        .reduced()
    }

    /// `√d` for square-free `d`.
    pub fn sqrt(d: u64) -> Result<Self, QTorusError> {
        QuadExt::new(0, 1, 1, d)
    }

    fn reduced(mut self) -> Self {
        self.reduce();
        self
    }

    fn reduce(&mut self) {
        if self.c.is_negative() {
            self.a = -std::mem::take(&mut self.a);
            self.b = -std::mem::take(&mut self.b);
            self.c = -std::mem::take(&mut self.c);
        }
        if self.d == 0 || self.b.is_zero() {
            self.b = BigInt::zero();
            self.d = 0;
        }
        let g = self.a.gcd(&self.b).gcd(&self.c);
        if !g.is_zero() && !g.is_one() {
            self.a = &self.a / &g;
            self.b = &self.b / &g;
            self.c = &self.c / &g;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Scalar> {
        if self.is_rational() {
            Some(Scalar::new(self.a.clone(), self.c.clone()).expect("c > 0"))
        } else {
            None
        }
    }

    pub fn discriminant(&self) -> u64 {
        self.d
    }

    fn common_d(&self, other: &Self) -> u64 {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, true) => 0,
            (false, true) => self.d,
            (true, false) => other.d,
            (false, false) => {
                assert_eq!(
                    self.d, other.d,
                    "arithmetic across different quadratic fields is not defined"
                );
                self.d
            }
        }
    }

    /// Sign of the real number: -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        // c > 0; decide sign of a + b√d.
        if self.b.is_zero() {
            return sign_of(&self.a);
        }
        if self.a.is_zero() {
            return sign_of(&self.b);
        }
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa == sb {
            return sa;
        }
        // Opposite signs: compare |a|² against |b|²·d.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * BigInt::from(self.d);
        match a2.cmp(&b2d) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0, // impossible for square-free d, b ≠ 0
        }
    }

    /// Exact integer floor.
    pub fn floor(&self) -> BigInt {
        // floor((a + b√d)/c) with c > 0. m = floor(b√d) computed through
        // the integer square root of b²d; for irrational b√d the value is
        // strictly between m and m+1, so no boundary case arises.
        let m = if self.b.is_zero() {
            BigInt::zero()
        } else {
            let b2d = &self.b * &self.b * BigInt::from(self.d);
            let root = isqrt(&b2d);
            if self.b.is_negative() {
                -root - 1
            } else {
                root
            }
        };
        (&self.a + m).div_floor(&self.c)
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // c/(a + b√d) = c (a − b√d) / (a² − b² d).
        let norm = &self.a * &self.a - &self.b * &self.b * BigInt::from(self.d);
        assert!(!norm.is_zero(), "square-free d admits no rational root");
        Some(
            QuadExt {
                a: &self.c * &self.a,
                b: -(&self.c * &self.b),
                c: norm,
                d: self.d,
            }
            .reduced(),
        )
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let c = self.c.to_f64().unwrap_or(f64::NAN);
        (a + b * (self.d as f64).sqrt()) / c
    }

    /// Parts `(a, b, c, d)` of the normal form.
    pub fn parts(&self) -> (BigInt, BigInt, BigInt, u64) {
        (self.a.clone(), self.b.clone(), self.c.clone(), self.d)
    }
}

fn sign_of(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_negative() {
        -1
    } else {
        1
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            if self.c.is_one() {
                write!(f, "{}", self.a)
            } else {
                write!(f, "{}/{}", self.a, self.c)
            }
        } else if self.c.is_one() {
            write!(f, "({}+{}*sqrt{})", self.a, self.b, self.d)
        } else {
            write!(f, "({}+{}*sqrt{})/{}", self.a, self.b, self.d, self.c)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Accepts integers, `p/q`, `sqrtD`, and sums/differences like
/// `1+sqrt2`, `1/2-3*sqrt5`.
impl FromStr for QuadExt {
    type Err = QTorusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || QTorusError::BadScalar(s.to_owned());
        let t = s.replace(' ', "");
        if t.is_empty() {
            return Err(bad());
        }
        // Split into at most two signed parts.
        let mut parts: Vec<(i32, String)> = Vec::new();
        let mut current = String::new();
        let mut sign = 1;
        for (idx, ch) in t.char_indices() {
            if (ch == '+' || ch == '-') && idx != 0 {
                parts.push((sign, std::mem::take(&mut current)));
                sign = if ch == '+' { 1 } else { -1 };
            } else if ch == '-' && idx == 0 {
                sign = -1;
            } else {
                current.push(ch);
            }
        }
        parts.push((sign, current));
        if parts.len() > 2 {
            return Err(bad());
        }
        let mut total = QuadExt::from_int(0);
        for (sgn, part) in parts {
            let term = parse_term(&part).ok_or_else(bad)?;
            let term = if sgn < 0 { -term } else { term };
            total = total + term;
        }
        Ok(total)
    }
}

fn parse_term(part: &str) -> Option<QuadExt> {
    if let Some(root) = part.strip_prefix("sqrt") {
        let d: u64 = root.parse().ok()?;
        return QuadExt::sqrt(d).ok();
    }
    if let Some((coef, root)) = part.split_once("*sqrt") {
        let d: u64 = root.parse().ok()?;
        let r: Scalar = coef.parse().ok()?;
        return Some(QuadExt::from_rational(&r) * QuadExt::sqrt(d).ok()?);
    }
    let r: Scalar = part.parse().ok()?;
    Some(QuadExt::from_rational(&r))
}

impl Add for QuadExt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let d = self.common_d(&rhs);
        QuadExt {
            a: &self.a * &rhs.c + &rhs.a * &self.c,
            b: &self.b * &rhs.c + &rhs.b * &self.c,
            c: &self.c * &rhs.c,
            d,
        }
        .reduced()
    }
}

impl Sub for QuadExt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for QuadExt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let d = self.common_d(&rhs);
        QuadExt {
            a: &self.a * &rhs.a + &self.b * &rhs.b * BigInt::from(d),
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            c: &self.c * &rhs.c,
            d,
        }
        .reduced()
    }
}

impl Div for QuadExt {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        let inv = rhs.recip().expect("division by zero");
        self * inv
    }
}

impl Neg for QuadExt {
    type Output = Self;
    fn neg(self) -> Self {
        QuadExt {
            a: -self.a,
            b: -self.b,
            c: self.c,
            d: self.d,
        }
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::from_int(0)
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::from_int(1)
    }
}

impl Field for QuadExt {}

/// Class of a real number under integer fractional-linear equivalence,
/// read off from the continued fraction: rationals form a single class;
/// quadratic irrationals are classified by the cyclic word of partial
/// quotients in the eventual period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContinuedFractionClass {
    Rational,
    Periodic { cycle: Vec<BigInt> },
}

const CF_ITERATION_CAP: usize = 100_000;

/// Continued fraction expansion driven to either termination (rational
/// input) or the first repeated state (quadratic irrational input).
pub fn continued_fraction_class(x: &QuadExt) -> ContinuedFractionClass {
    if x.is_rational() {
        return ContinuedFractionClass::Rational;
    }
    let mut states: Vec<QuadExt> = Vec::new();
    let mut quotients: Vec<BigInt> = Vec::new();
    let mut cur = x.clone();
    for _ in 0..CF_ITERATION_CAP {
        if let Some(pos) = states.iter().position(|s| s == &cur) {
            return ContinuedFractionClass::Periodic {
                cycle: quotients[pos..].to_vec(),
            };
        }
        states.push(cur.clone());
        let a = cur.floor();
        quotients.push(a.clone());
        let frac = cur - QuadExt::from_int(a);
        debug_assert!(!frac.is_zero(), "irrational values never hit an integer");
        cur = frac.recip().expect("nonzero fractional part");
    }
    unreachable!("quadratic irrational expansions are eventually periodic");
}

/// Whether two cyclic words coincide up to rotation.
fn cyclically_equal(a: &[BigInt], b: &[BigInt]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|shift| (0..a.len()).all(|i| a[(i + shift) % a.len()] == b[i]))
}

/// Exact integer fractional-linear equivalence of two exact scalars: all
/// rationals are mutually equivalent; quadratic irrationals are
/// equivalent exactly when their periodic quotient cycles agree as
/// cyclic words.
pub fn fractional_linear_equivalent(x: &QuadExt, y: &QuadExt) -> bool {
    match (continued_fraction_class(x), continued_fraction_class(y)) {
        (ContinuedFractionClass::Rational, ContinuedFractionClass::Rational) => true,
        (
            ContinuedFractionClass::Periodic { cycle: ca },
            ContinuedFractionClass::Periodic { cycle: cb },
        ) => cyclically_equal(&ca, &cb),
        _ => false,
    }
}
