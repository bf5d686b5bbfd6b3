use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[derive(Default)]
pub enum Field {
    /// Arbitrary-precision rationals.
    #[serde(rename = "Q")]
    #[default]
    Rational,
    /// The prime field with `p` elements.
    #[serde(rename = "Fp")]
    Prime(u64),
}


/// Default modulus used when a prime field is requested without a modulus.
pub const DEFAULT_PRIME: u64 = 101;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, LinalgError> {
        // keep products below 2^64
        if !is_prime(p) || p >= (1 << 31) {
            return Err(LinalgError::BadModulus(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            Field::Rational => Scalar::Q(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { value: 0, modulus: p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Fp {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, LinalgError> {
        if den == 0 {
            return Err(LinalgError::DivisionByZero);
        }
        let d = self.from_i64(den);
        if d.is_zero() {
            return Err(LinalgError::DivisionByZero);
        }
        Ok(&self.from_i64(num) / &d)
    }

    /// Parses `"a"`, `"a/b"` or `"a mod p"`.
    pub fn parse(&self, text: &str) -> Result<Scalar, LinalgError> {
        let t = text.trim();
        let bad = || LinalgError::Parse(text.to_string());
        if let Some((lhs, rhs)) = t.split_once(" mod ") {
            let p: u64 = rhs.trim().parse().map_err(|_| bad())?;
            return match *self {
                Field::Prime(q) if q == p => {
                    let v: BigInt = lhs.trim().parse().map_err(|_| bad())?;
                    Ok(self.from_bigint(&v))
                }
                _ => Err(LinalgError::FieldMismatch),
            };
        }
        let (num, den) = match t.split_once('/') {
            Some((a, b)) => (
                a.trim().parse::<BigInt>().map_err(|_| bad())?,
                b.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (t.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(LinalgError::DivisionByZero);
        }
        match *self {
            Field::Rational => Ok(Scalar::Q(BigRational::new(num, den))),
            Field::Prime(_) => {
                let d = self.from_bigint(&den);
                if d.is_zero() {
                    return Err(LinalgError::DivisionByZero);
                }
                Ok(&self.from_bigint(&num) / &d)
            }
        }
    }

    fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            Field::Rational => Scalar::Q(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let r = ((v % &pb) + &pb) % &pb;
                Scalar::Fp {
                    value: r.to_u64().unwrap_or(0),
                    modulus: p,
                }
            }
        }
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = LinalgError;

    /// `"Q"` or a prime such as `"101"` / `"F101"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let digits = t.trim_start_matches(['F', 'f', 'p', 'P']);
        let p: u64 = digits
            .parse()
            .map_err(|_| LinalgError::Parse(s.to_string()))?;
        Field::prime(p)
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { value: u64, modulus: u64 },
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(q.recip()),
            Scalar::Fp { value, modulus } => Scalar::Fp {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Canonical text form: `"a"`, `"a/b"` (lowest terms, positive denominator) or `"a mod p"`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Integer value if this is an integral rational or a prime-field element.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(q) if q.is_integer() => q.to_integer().to_i64(),
            Scalar::Q(_) => None,
            Scalar::Fp { value, .. } => Some(*value as i64),
        }
    }

    fn mismatch() -> ! {
        panic!("arithmetic between scalars of different fields")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Fp { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: q }) if p == q => {
                Scalar::Fp { value: (a + b) % p, modulus: *p }
            }
            _ => Scalar::mismatch(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: q }) if p == q => {
                Scalar::Fp { value: (a + p - b) % p, modulus: *p }
            }
            _ => Scalar::mismatch(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: q }) if p == q => {
                Scalar::Fp { value: a * b % p, modulus: *p }
            }
            _ => Scalar::mismatch(),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { value, modulus } => Scalar::Fp {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Scalar {
    /// `self += a * b` without an intermediate clone of `self`.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        match (&mut *self, a, b) {
            (Scalar::Fp { value, modulus }, Scalar::Fp { value: x, .. }, Scalar::Fp { value: y, .. }) => {
                *value = (*value + x * y % *modulus) % *modulus;
            }
            (Scalar::Q(acc), Scalar::Q(x), Scalar::Q(y)) => {
                if x.is_integer() && y.is_integer() && acc.is_integer() {
                    let v = acc.numer() + x.numer() * y.numer();
                    *acc = BigRational::from_integer(v);
                } else {
                    *acc += x * y;
                }
            }
            _ => Scalar::mismatch(),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Q(q) if q.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_is_lowest_terms() {
        let q = Field::Rational;
        let x = q.parse("6/-4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(q.parse("4/2").unwrap().to_string(), "2");
        assert_eq!(q.parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::prime(101).unwrap();
        let x = f.from_i64(7);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(51));
        assert_eq!(x.to_string(), "7 mod 101");
        assert_eq!(f.parse("7 mod 101").unwrap(), x);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(100).is_err());
        assert!("F7".parse::<Field>().is_ok());
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
    }
}
