//! Field elements: exact rationals or residues modulo a prime.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;

/// Which field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    /// The rationals. Characteristic zero; the reference backend.
    Rational,
    /// `Z/pZ` for a prime `p`.
    Prime(u64),
}

impl Field {
    /// Builds a prime field, rejecting composite or tiny moduli.
    pub fn prime(p: u64) -> Result<Field, Error> {
        if p > (1u64 << 62) {
            return Err(Error::Input(format!("modulus {p} is too large")));
        }
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Modular {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Maps a rational into this field. Fails when the denominator vanishes mod `p`.
    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar, Error> {
        match *self {
            Field::Rational => Ok(Scalar::Rational(r.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let num = reduce_bigint(r.numer(), &pb);
                let den = reduce_bigint(r.denom(), &pb);
                if den == 0 {
                    return Err(Error::Input(format!(
                        "denominator of {r} is not invertible modulo {p}"
                    )));
                }
                let den_inv = mod_pow(den, p - 2, p);
                Ok(Scalar::Modular {
                    value: mul_mod(num, den_inv, p),
                    modulus: p,
                })
            }
        }
    }

    /// Parses a scalar string (`"p/q"` or an integer) into this field.
    pub fn parse(&self, s: &str) -> Result<Scalar, Error> {
        let r = parse_rational(s)?;
        self.from_rational(&r)
    }

    pub fn is_characteristic_zero(&self) -> bool {
        matches!(self, Field::Rational)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q` or `Fp:<p>`.
    fn from_str(s: &str) -> Result<Field, Error> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rational);
        }
        if let Some(rest) = s.strip_prefix("Fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Input(format!("bad prime in field tag {s:?}")))?;
            return Field::prime(p);
        }
        Err(Error::Input(format!(
            "unknown field tag {s:?}; expected Q or Fp:<p>"
        )))
    }
}

fn reduce_bigint(v: &BigInt, p: &BigInt) -> u64 {
    let r = ((v % p) + p) % p;
    r.to_u64().expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Parses `"p/q"`, `"-p/q"` or `"n"` into a canonical rational.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let bad = || Error::Input(format!("malformed scalar {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Input(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// An exact field element.
///
/// Rationals are always kept in lowest terms with a positive denominator
/// (`num_rational` normalizes on construction and after every operation).
/// Residues satisfy `0 <= value < modulus`. Mixing the two variants, or two
/// different moduli, in one operation is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: mod_pow(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// `self * sign` where `sign` is `(-1)^odd`.
    pub fn signed(self, odd: bool) -> Scalar {
        if odd {
            -self
        } else {
            self
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Modular { .. } => None,
        }
    }

    /// In-place `self += a * b`; the hot loop of every tensor contraction.
    pub fn add_product(&mut self, a: &Scalar, b: &Scalar) {
        match (&mut *self, a, b) {
            (Scalar::Rational(s), Scalar::Rational(x), Scalar::Rational(y)) => {
                if x.is_one() {
                    *s += y;
                } else if y.is_one() {
                    *s += x;
                } else {
                    *s += x * y;
                }
            }
            (
                Scalar::Modular { value, modulus },
                Scalar::Modular {
                    value: x,
                    modulus: mx,
                },
                Scalar::Modular {
                    value: y,
                    modulus: my,
                },
            ) => {
                assert!(*modulus == *mx && *mx == *my, "mixed prime moduli");
                *value = ((*value as u128 + *x as u128 * *y as u128) % *modulus as u128) as u64;
            }
            _ => panic!("scalar operation mixes different fields"),
        }
    }
}

impl fmt::Display for Scalar {
    /// Rationals print as `p/q` with `q` omitted when it is 1; residues print as decimals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $rat:expr, $modop:expr) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational($rat(a, b)),
                    (
                        Scalar::Modular {
                            value: a,
                            modulus: p,
                        },
                        Scalar::Modular {
                            value: b,
                            modulus: q,
                        },
                    ) => {
                        assert_eq!(p, q, "mixed prime moduli");
                        Scalar::Modular {
                            value: $modop(*a, *b, *p),
                            modulus: *p,
                        }
                    }
                    _ => panic!("scalar operation mixes different fields"),
                }
            }
        }

        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(
    Add,
    add,
    |a: &BigRational, b: &BigRational| a + b,
    |a: u64, b: u64, p: u64| { ((a as u128 + b as u128) % p as u128) as u64 }
);
binop!(
    Sub,
    sub,
    |a: &BigRational, b: &BigRational| a - b,
    |a: u64, b: u64, p: u64| { ((a as u128 + p as u128 - b as u128) % p as u128) as u64 }
);
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, mul_mod);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus,
            },
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(self.clone())
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            _ => *self = &*self + rhs,
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a -= b,
            _ => *self = &*self - rhs,
        }
    }
}

/// Sign helper: `true` when `(-1)^k` is negative.
#[inline]
pub fn odd(k: usize) -> bool {
    k % 2 == 1
}
