//! Exact rationals with an inline fast path.
//!
//! Values whose numerator and denominator both fit in `±2^62` are stored
//! inline and combined with `i128` intermediates; anything larger is carried
//! as a [`BigRational`]. The representation is canonical: a value is `Small`
//! exactly when it fits, so structural equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const SMALL_LIMIT: i128 = 1 << 62;

#[derive(Clone, Debug)]
pub enum Rational {
    Small { num: i64, den: i64 },
    Big(BigRational),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn fits(x: i128) -> bool {
    (-SMALL_LIMIT..=SMALL_LIMIT).contains(&x)
}

impl Rational {
    pub fn zero() -> Self {
        Rational::Small { num: 0, den: 1 }
    }

    pub fn one() -> Self {
        Rational::Small { num: 1, den: 1 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_i128(n as i128, 1)
    }

    /// Builds `num/den` from wide integers. Panics on a zero denominator.
    pub fn from_i128(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd_i128(num, den);
        let (mut n, mut d) = if g > 1 { (num / g, den / g) } else { (num, den) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        if n == 0 {
            return Self::zero();
        }
        if fits(n) && fits(d) {
            Rational::Small {
                num: n as i64,
                den: d as i64,
            }
        } else {
            Rational::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))
        }
    }

    pub fn from_big(r: BigRational) -> Self {
        // BigRational is already reduced with a positive denominator.
        match (r.numer().to_i128(), r.denom().to_i128()) {
            (Some(n), Some(d)) if fits(n) && fits(d) => Rational::Small {
                num: n as i64,
                den: d as i64,
            },
            _ => Rational::Big(r),
        }
    }

    pub fn new(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small { num, den } => {
                BigRational::new_raw(BigInt::from(*num), BigInt::from(*den))
            }
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small { num, .. } => BigInt::from(*num),
            Rational::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small { den, .. } => BigInt::from(*den),
            Rational::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small { den, .. } => *den == 1,
            Rational::Big(r) => r.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rational::Small { num, .. } => num.signum() as i32,
            Rational::Big(r) => {
                if r.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Rational::Small { num, den } => Rational::Small {
                num: -num,
                den: *den,
            },
            Rational::Big(r) => Rational::Big(-r),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) => {
                if *b == *d {
                    Self::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                    Self::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Self::from_big(self.to_big() + other.to_big()),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) => {
                if *a == 0 || *c == 0 {
                    return Self::zero();
                }
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => {
                if self.is_zero() || other.is_zero() {
                    return Self::zero();
                }
                Self::from_big(self.to_big() * other.to_big())
            }
        }
    }

    /// Panics when `other` is zero.
    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.recip())
    }

    /// Panics on zero.
    pub fn recip(&self) -> Self {
        match self {
            Rational::Small { num, den } => {
                assert!(*num != 0, "division by zero");
                if *num < 0 {
                    Rational::Small {
                        num: -den,
                        den: -num,
                    }
                } else {
                    Rational::Small {
                        num: *den,
                        den: *num,
                    }
                }
            }
            Rational::Big(r) => Self::from_big(r.recip()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Rational::Small { num, den } => *num as f64 / *den as f64,
            Rational::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) => {
                a == c && b == d
            }
            (Rational::Big(x), Rational::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Rational::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            Rational::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small { num, den: 1 } => write!(f, "{num}"),
            Rational::Small { num, den } => write!(f, "{num}/{den}"),
            Rational::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Rational::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError;

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `a` or `a/b` with an optional leading sign on `a`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        fn int(s: &str, signed: bool) -> Result<BigInt, ParseRationalError> {
            let digits = if signed {
                s.strip_prefix(['-', '+']).unwrap_or(s)
            } else {
                s
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ParseRationalError);
            }
            s.parse::<BigInt>().map_err(|_| ParseRationalError)
        }
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (int(n, true)?, int(d, false)?),
            None => (int(s, true)?, BigInt::one()),
        };
        if d.is_zero() {
            return Err(ParseRationalError);
        }
        Ok(Rational::new(n, d))
    }
}

/// Least common multiple of the denominators, as a big integer.
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(&r.denom()))
}
