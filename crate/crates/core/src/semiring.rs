//! Arithmetic and order relations on the symmetrized max-plus semiring.
//!
//! A [`SymNum`] is either the tropical zero (−∞), or an exact rational
//! magnitude tagged positive, negative or balanced.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero as _};

use crate::error::{Error, Result};

/// Sign class of a [`SymNum`].
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
    Bal,
    Zero,
}

impl Sign {
    /// Sign of a product of two nonzero classes.
    fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (Sign::Bal, _) | (_, Sign::Bal) => Sign::Bal,
            (a, b) if a == b => Sign::Pos,
            _ => Sign::Neg,
        }
    }
}

/// Outcome of [`SymNum::compare`].
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash)]
pub enum Cmp {
    Lt,
    Gt,
    Eq,
    Incomparable,
}

/// An element of the symmetrized semiring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SymNum {
    Zero,
    Pos(BigRational),
    Neg(BigRational),
    Bal(BigRational),
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl SymNum {
    pub fn with_sign(sign: Sign, mag: BigRational) -> SymNum {
        match sign {
            Sign::Pos => SymNum::Pos(mag),
            Sign::Neg => SymNum::Neg(mag),
            Sign::Bal => SymNum::Bal(mag),
            Sign::Zero => SymNum::Zero,
        }
    }

    /// The multiplicative unit `0`.
    pub fn one() -> SymNum {
        SymNum::Pos(BigRational::zero())
    }

    pub fn pos(m: i64) -> SymNum {
        SymNum::Pos(rat(m))
    }

    pub fn neg_of(m: i64) -> SymNum {
        SymNum::Neg(rat(m))
    }

    pub fn bal(m: i64) -> SymNum {
        SymNum::Bal(rat(m))
    }

    pub fn sign(&self) -> Sign {
        match self {
            SymNum::Zero => Sign::Zero,
            SymNum::Pos(_) => Sign::Pos,
            SymNum::Neg(_) => Sign::Neg,
            SymNum::Bal(_) => Sign::Bal,
        }
    }

    pub fn mag(&self) -> Option<&BigRational> {
        match self {
            SymNum::Zero => None,
            SymNum::Pos(m) | SymNum::Neg(m) | SymNum::Bal(m) => Some(m),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SymNum::Zero)
    }

    /// True for everything except balanced numbers.
    pub fn is_signed(&self) -> bool {
        !matches!(self, SymNum::Bal(_))
    }

    pub fn is_pos(&self) -> bool {
        matches!(self, SymNum::Pos(_))
    }

    pub fn is_neg(&self) -> bool {
        matches!(self, SymNum::Neg(_))
    }

    /// Balanced or zero.
    pub fn is_balanced_or_zero(&self) -> bool {
        matches!(self, SymNum::Bal(_) | SymNum::Zero)
    }

    pub fn abs(&self) -> SymNum {
        match self.mag() {
            None => SymNum::Zero,
            Some(m) => SymNum::Pos(m.clone()),
        }
    }

    pub fn add(&self, other: &SymNum) -> SymNum {
        let (a, b) = match (self.mag(), other.mag()) {
            (None, _) => return other.clone(),
            (_, None) => return self.clone(),
            (Some(a), Some(b)) => (a, b),
        };
        match a.cmp(b) {
            Ordering::Greater => self.clone(),
            Ordering::Less => other.clone(),
            Ordering::Equal => {
                if self.sign() == other.sign() && self.is_signed() {
                    self.clone()
                } else {
                    SymNum::Bal(a.clone())
                }
            }
        }
    }

    pub fn mul(&self, other: &SymNum) -> SymNum {
        match (self.mag(), other.mag()) {
            (Some(a), Some(b)) => SymNum::with_sign(self.sign().times(other.sign()), a + b),
            _ => SymNum::Zero,
        }
    }

    pub fn negate(&self) -> SymNum {
        match self {
            SymNum::Pos(m) => SymNum::Neg(m.clone()),
            SymNum::Neg(m) => SymNum::Pos(m.clone()),
            other => other.clone(),
        }
    }

    /// `self ⊕ ⊖other`.
    pub fn minus(&self, other: &SymNum) -> SymNum {
        self.add(&other.negate())
    }

    /// Multiply by the positive scalar with magnitude `shift`.
    pub fn shift(&self, shift: &BigRational) -> SymNum {
        match self {
            SymNum::Zero => SymNum::Zero,
            SymNum::Pos(m) => SymNum::Pos(m + shift),
            SymNum::Neg(m) => SymNum::Neg(m + shift),
            SymNum::Bal(m) => SymNum::Bal(m + shift),
        }
    }

    /// Multiplicative inverse: negated magnitude, same sign.
    pub fn inv(&self) -> Result<SymNum> {
        match self {
            SymNum::Pos(m) => Ok(SymNum::Pos(-m)),
            SymNum::Neg(m) => Ok(SymNum::Neg(-m)),
            _ => Err(Error::Domain(format!("{self} has no inverse"))),
        }
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a SymNum>>(items: I) -> SymNum {
        items.into_iter().fold(SymNum::Zero, |acc, x| acc.add(x))
    }

    pub fn strict_gt(&self, other: &SymNum) -> bool {
        self.minus(other).is_pos()
    }

    /// The balance relation `x ⋈ y`.
    pub fn balance(&self, other: &SymNum) -> bool {
        self.minus(other).is_balanced_or_zero()
    }

    /// The relation `x ⊵ y`.
    pub fn teq(&self, other: &SymNum) -> bool {
        !self.minus(other).is_neg()
    }

    pub fn geq(&self, other: &SymNum) -> bool {
        self == other || self.strict_gt(other)
    }

    pub fn compare(&self, other: &SymNum) -> Cmp {
        if self == other {
            Cmp::Eq
        } else if self.strict_gt(other) {
            Cmp::Gt
        } else if other.strict_gt(self) {
            Cmp::Lt
        } else {
            Cmp::Incomparable
        }
    }

    /// Total order on signed numbers; `None` if either side is balanced.
    pub fn cmp_signed(&self, other: &SymNum) -> Option<Ordering> {
        fn key(x: &SymNum) -> Option<(u8, BigRational)> {
            match x {
                SymNum::Neg(m) => Some((0, -m.clone())),
                SymNum::Zero => Some((1, BigRational::zero())),
                SymNum::Pos(m) => Some((2, m.clone())),
                SymNum::Bal(_) => None,
            }
        }
        Some(key(self)?.cmp(&key(other)?))
    }

    /// The set `U(x)` of signed numbers balancing `x`.
    pub fn uncomp(&self) -> Interval {
        match self {
            SymNum::Bal(m) => Interval {
                lo: SymNum::Neg(m.clone()),
                hi: SymNum::Pos(m.clone()),
            },
            x => Interval {
                lo: x.clone(),
                hi: x.clone(),
            },
        }
    }
}

impl Add for &SymNum {
    type Output = SymNum;
    fn add(self, rhs: &SymNum) -> SymNum {
        SymNum::add(self, rhs)
    }
}

impl Mul for &SymNum {
    type Output = SymNum;
    fn mul(self, rhs: &SymNum) -> SymNum {
        SymNum::mul(self, rhs)
    }
}

impl Neg for &SymNum {
    type Output = SymNum;
    fn neg(self) -> SymNum {
        self.negate()
    }
}

impl Neg for SymNum {
    type Output = SymNum;
    fn neg(self) -> SymNum {
        self.negate()
    }
}

/// A closed interval of signed numbers under the total order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: SymNum,
    pub hi: SymNum,
}

impl Interval {
    pub fn contains(&self, x: &SymNum) -> bool {
        matches!(
            (self.lo.cmp_signed(x), x.cmp_signed(&self.hi)),
            (Some(Ordering::Less | Ordering::Equal), Some(Ordering::Less | Ordering::Equal))
        )
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let whole: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            digits => digits.parse().map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let value = BigRational::new(whole * &scale + frac, scale);
        return Ok(if negative { -value } else { value });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

impl fmt::Display for SymNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymNum::Zero => write!(f, "_"),
            SymNum::Pos(m) => write!(f, "{}", format_rational(m)),
            SymNum::Neg(m) => write!(f, "~{}", format_rational(m)),
            SymNum::Bal(m) => write!(f, "*{}", format_rational(m)),
        }
    }
}

impl FromStr for SymNum {
    type Err = Error;

    fn from_str(s: &str) -> Result<SymNum> {
        let s = s.trim();
        if s == "_" {
            return Ok(SymNum::Zero);
        }
        if let Some(rest) = s.strip_prefix('~') {
            return Ok(SymNum::Neg(parse_rational(rest)?));
        }
        if let Some(rest) = s.strip_prefix('*') {
            return Ok(SymNum::Bal(parse_rational(rest)?));
        }
        Ok(SymNum::Pos(parse_rational(s)?))
    }
}

impl serde::Serialize for SymNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for SymNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<SymNum, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Pick a signed number strictly between `lo` and `hi` (absent bounds are
/// the ends of the line). Prefers `0`, then `Zero`.
pub fn pick_between(lo: Option<&SymNum>, hi: Option<&SymNum>) -> Option<SymNum> {
    let above = |x: &SymNum| lo.is_none_or(|l| x.cmp_signed(l) == Some(Ordering::Greater));
    let below = |x: &SymNum| hi.is_none_or(|h| x.cmp_signed(h) == Some(Ordering::Less));
    let inside = |x: &SymNum| above(x) && below(x);
    for c in [SymNum::one(), SymNum::Zero] {
        if inside(&c) {
            return Some(c);
        }
    }
    let one = BigRational::one();
    let two = rat(2);
    let candidate = match (lo, hi) {
        (Some(SymNum::Pos(a)), Some(SymNum::Pos(b))) => SymNum::Pos((a + b) / &two),
        (Some(SymNum::Neg(a)), Some(SymNum::Neg(b))) => SymNum::Neg((a + b) / &two),
        (Some(SymNum::Zero), Some(SymNum::Pos(b))) | (None, Some(SymNum::Pos(b))) => {
            SymNum::Pos(b - &one)
        }
        (Some(SymNum::Neg(a)), Some(SymNum::Zero)) | (Some(SymNum::Neg(a)), None) => {
            SymNum::Neg(a - &one)
        }
        (None, Some(SymNum::Neg(b))) => SymNum::Neg(b + &one),
        (None, Some(SymNum::Zero)) => SymNum::Neg(BigRational::zero()),
        (Some(SymNum::Pos(a)), None) => SymNum::Pos(a + &one),
        _ => return None,
    };
    inside(&candidate).then_some(candidate)
}
