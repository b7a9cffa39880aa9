//! Exact scalars: arbitrary-precision rationals and prime fields.
//!
//! Every computation in this crate is exact; there is no floating point
//! anywhere. A [`Scalar`] always knows which field it lives in, and mixing
//! fields is a hard error surfaced at the matrix layer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::FinlinError;

/// Descriptor of the base field: the rationals, or F_p for a prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn validate(&self) -> Result<(), FinlinError> {
        match self {
            Field::Rationals => Ok(()),
            Field::Prime(p) => {
                if is_prime(*p) {
                    Ok(())
                } else {
                    Err(FinlinError::Semantic(format!("{p} is not prime")))
                }
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { p: *p, v: 0 },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::one()),
            Field::Prime(p) => Scalar::Fp { p: *p, v: 1 % *p },
        }
    }

    /// Embeds a signed integer into the field.
    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            Field::Prime(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { p: *p, v: m }
            }
        }
    }

    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element: a reduced fraction, or a residue in [0, p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { p: u64, v: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { p, v }, Scalar::Fp { p: q, v: w }) if p == q => Scalar::Fp {
                p: *p,
                v: addmod(*v, *w, *p),
            },
            _ => panic!("scalar field mismatch: {:?} vs {:?}", self.field(), other.field()),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { p, v }, Scalar::Fp { p: q, v: w }) if p == q => Scalar::Fp {
                p: *p,
                v: mulmod(*v, *w, *p),
            },
            _ => panic!("scalar field mismatch: {:?} vs {:?}", self.field(), other.field()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { p, v } => Scalar::Fp {
                p: *p,
                v: if *v == 0 { 0 } else { p - v },
            },
        }
    }

    /// Multiplicative inverse; `None` on zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(a) => {
                if a.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(a.recip()))
                }
            }
            Scalar::Fp { p, v } => {
                if *v == 0 {
                    None
                } else {
                    Some(Scalar::Fp { p: *p, v: invmod(*v, *p) })
                }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self.mul(&i))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invmod(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p); p prime, a != 0
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}

/// Parses a scalar from the external document syntax: an integer, or a
/// string "a/b" over the rationals.
pub fn parse_scalar(field: &Field, value: &serde_json::Value) -> Result<Scalar, FinlinError> {
    match value {
        serde_json::Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| FinlinError::Syntax(format!("scalar {n} is not an integer")))?;
            Ok(field.from_i64(i))
        }
        serde_json::Value::String(s) => match field {
            Field::Rationals => {
                let r: BigRational = s
                    .parse::<BigRational>()
                    .map_err(|e| FinlinError::Syntax(format!("bad rational {s:?}: {e}")))?;
                if r.denom().is_negative() {
                    // num-rational normalizes; defensive parse check only
                    return Err(FinlinError::Syntax(format!("bad rational {s:?}")));
                }
                Ok(Scalar::Rat(r))
            }
            Field::Prime(_) => Err(FinlinError::Syntax(format!(
                "fractional scalar {s:?} not allowed over a prime field"
            ))),
        },
        other => Err(FinlinError::Syntax(format!("scalar must be integer or string, got {other}"))),
    }
}

/// Serializes a scalar into the document syntax.
pub fn scalar_to_json(s: &Scalar) -> serde_json::Value {
    match s {
        Scalar::Rat(r) => {
            if r.denom().is_one() {
                match i64::try_from(r.numer().clone()) {
                    Ok(i) => serde_json::Value::from(i),
                    Err(_) => serde_json::Value::from(r.to_string()),
                }
            } else {
                serde_json::Value::from(format!("{}/{}", r.numer(), r.denom()))
            }
        }
        Scalar::Fp { v, .. } => serde_json::Value::from(*v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic_mod_7() {
        let f = Field::Prime(7);
        let a = f.from_i64(-3);
        assert_eq!(a, Scalar::Fp { p: 7, v: 4 });
        assert_eq!(a.mul(&f.from_i64(2)), Scalar::Fp { p: 7, v: 1 });
        assert_eq!(f.from_i64(3).inv().unwrap(), Scalar::Fp { p: 7, v: 5 });
    }

    #[test]
    fn rational_inverse_and_reduction() {
        let f = Field::Rationals;
        let half = f.from_i64(1).div(&f.from_i64(2)).unwrap();
        assert_eq!(half.add(&half), f.one());
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn prime_validation() {
        assert!(Field::Prime(7).validate().is_ok());
        assert!(Field::Prime(1).validate().is_err());
        assert!(Field::Prime(91).validate().is_err());
    }
}
