//! Exact rational numbers.
//!
//! Almost every coefficient that shows up in these complexes is a small
//! integer, so [`Q`] keeps an `i64` fraction and only promotes to a bignum
//! fraction when a checked operation overflows. Results are demoted again
//! whenever they fit.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

type Small = Ratio<i64>;

/// An exact rational number.
#[derive(Clone)]
pub struct Q(Repr);

#[derive(Clone)]
enum Repr {
  Small(Small),
  Big(BigRational),
}

impl Q {
  pub fn new(num: i64, den: i64) -> Q {
    assert!(den != 0, "zero denominator");
    Q(Repr::Small(Small::new(num, den)))
  }

  pub fn from_int(n: i64) -> Q { Q(Repr::Small(Small::from_integer(n))) }

  pub fn from_big(r: BigRational) -> Q { Q::demote(r) }

  fn demote(r: BigRational) -> Q {
    match (r.numer().to_i64(), r.denom().to_i64()) {
      (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Q(Repr::Small(Small::new_raw(n, d))),
      _ => Q(Repr::Big(r)),
    }
  }

  pub fn to_big(&self) -> BigRational {
    match &self.0 {
      Repr::Small(s) => BigRational::new_raw(BigInt::from(*s.numer()), BigInt::from(*s.denom())),
      Repr::Big(b) => b.clone(),
    }
  }

  pub fn numer(&self) -> BigInt {
    match &self.0 {
      Repr::Small(s) => BigInt::from(*s.numer()),
      Repr::Big(b) => b.numer().clone(),
    }
  }

  pub fn denom(&self) -> BigInt {
    match &self.0 {
      Repr::Small(s) => BigInt::from(*s.denom()),
      Repr::Big(b) => b.denom().clone(),
    }
  }

  pub fn is_integer(&self) -> bool {
    match &self.0 {
      Repr::Small(s) => s.is_integer(),
      Repr::Big(b) => b.is_integer(),
    }
  }

  pub fn abs(&self) -> Q {
    if self.is_negative() { -self.clone() } else { self.clone() }
  }

  pub fn is_negative(&self) -> bool {
    match &self.0 {
      Repr::Small(s) => *s.numer() < 0,
      Repr::Big(b) => b.is_negative(),
    }
  }

  pub fn recip(&self) -> Q {
    assert!(!self.is_zero(), "reciprocal of zero");
    match &self.0 {
      Repr::Small(s) if *s.numer() != i64::MIN => Q(Repr::Small(s.recip())),
      _ => Q::demote(self.to_big().recip()),
    }
  }

  /// Returns the value as an `i64` if it is an integer that fits.
  pub fn to_i64(&self) -> Option<i64> {
    match &self.0 {
      Repr::Small(s) if s.is_integer() => Some(*s.numer()),
      Repr::Big(b) if b.is_integer() => b.numer().to_i64(),
      _ => None,
    }
  }

  fn binop(
    &self,
    other: &Q,
    small: impl Fn(&Small, &Small) -> Option<Small>,
    big: impl Fn(BigRational, BigRational) -> BigRational,
  ) -> Q {
    if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
      if let Some(r) = small(a, b) {
        return Q(Repr::Small(r));
      }
    }
    Q::demote(big(self.to_big(), other.to_big()))
  }
}

impl Zero for Q {
  fn zero() -> Q { Q::from_int(0) }

  fn is_zero(&self) -> bool {
    match &self.0 {
      Repr::Small(s) => s.is_zero(),
      Repr::Big(b) => b.is_zero(),
    }
  }
}

impl One for Q {
  fn one() -> Q { Q::from_int(1) }
}

impl From<i64> for Q {
  fn from(n: i64) -> Q { Q::from_int(n) }
}

impl From<i32> for Q {
  fn from(n: i32) -> Q { Q::from_int(n as i64) }
}

impl PartialEq for Q {
  fn eq(&self, other: &Q) -> bool {
    match (&self.0, &other.0) {
      (Repr::Small(a), Repr::Small(b)) => a == b,
      _ => self.to_big() == other.to_big(),
    }
  }
}

impl Eq for Q {}

impl Hash for Q {
  fn hash<H: Hasher>(&self, state: &mut H) {
    // Both representations are kept in lowest terms and demoted when they
    // fit, so equal values share a representation.
    match &self.0 {
      Repr::Small(s) => {
        s.numer().hash(state);
        s.denom().hash(state);
      }
      Repr::Big(b) => {
        b.numer().hash(state);
        b.denom().hash(state);
      }
    }
  }
}

impl PartialOrd for Q {
  fn partial_cmp(&self, other: &Q) -> Option<Ordering> { Some(self.cmp(other)) }
}

impl Ord for Q {
  fn cmp(&self, other: &Q) -> Ordering {
    match (&self.0, &other.0) {
      (Repr::Small(a), Repr::Small(b)) => {
        let lhs = *a.numer() as i128 * *b.denom() as i128;
        let rhs = *b.numer() as i128 * *a.denom() as i128;
        lhs.cmp(&rhs)
      }
      _ => self.to_big().cmp(&other.to_big()),
    }
  }
}

macro_rules! forward_binop {
  ($trait:ident, $method:ident, $checked:ident, $op:tt) => {
    impl $trait<&Q> for &Q {
      type Output = Q;
      fn $method(self, rhs: &Q) -> Q { self.binop(rhs, |a, b| a.$checked(b), |a, b| a $op b) }
    }
    impl $trait<Q> for Q {
      type Output = Q;
      fn $method(self, rhs: Q) -> Q { (&self).$method(&rhs) }
    }
    impl $trait<&Q> for Q {
      type Output = Q;
      fn $method(self, rhs: &Q) -> Q { (&self).$method(rhs) }
    }
  };
}

forward_binop!(Add, add, checked_add, +);
forward_binop!(Sub, sub, checked_sub, -);
forward_binop!(Mul, mul, checked_mul, *);

impl Div<&Q> for &Q {
  type Output = Q;
  fn div(self, rhs: &Q) -> Q {
    assert!(!rhs.is_zero(), "division by zero");
    self.binop(rhs, |a, b| a.checked_div(b), |a, b| a / b)
  }
}

impl Div<Q> for Q {
  type Output = Q;
  fn div(self, rhs: Q) -> Q { &self / &rhs }
}

impl Neg for Q {
  type Output = Q;
  fn neg(self) -> Q {
    match self.0 {
      Repr::Small(s) if *s.numer() != i64::MIN => Q(Repr::Small(-s)),
      _ => Q::demote(-self.to_big()),
    }
  }
}

impl Neg for &Q {
  type Output = Q;
  fn neg(self) -> Q { -self.clone() }
}

impl AddAssign<&Q> for Q {
  fn add_assign(&mut self, rhs: &Q) { *self = &*self + rhs; }
}

impl AddAssign<Q> for Q {
  fn add_assign(&mut self, rhs: Q) { *self = &*self + &rhs; }
}

impl SubAssign<&Q> for Q {
  fn sub_assign(&mut self, rhs: &Q) { *self = &*self - rhs; }
}

impl MulAssign<&Q> for Q {
  fn mul_assign(&mut self, rhs: &Q) { *self = &*self * rhs; }
}

impl fmt::Display for Q {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match &self.0 {
      Repr::Small(s) => write!(f, "{s}"),
      Repr::Big(b) => write!(f, "{b}"),
    }
  }
}

impl fmt::Debug for Q {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { write!(f, "{self}") }
}

impl FromStr for Q {
  type Err = String;

  fn from_str(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
      Some((n, d)) => (n, d),
      None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|e| format!("bad numerator {n:?}: {e}"))?;
    let d: BigInt = d.trim().parse().map_err(|e| format!("bad denominator {d:?}: {e}"))?;
    if d.is_zero() {
      return Err("zero denominator".into());
    }
    Ok(Q::from_big(BigRational::new(n, d)))
  }
}

impl serde::Serialize for Q {
  fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&self.to_string())
  }
}

impl<'de> serde::Deserialize<'de> for Q {
  fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn overflow_promotes_and_demotes() {
    let big = Q::from_int(i64::MAX);
    let sum = &big + &big;
    assert_eq!(sum.to_i64(), None);
    let back = &sum - &big;
    assert_eq!(back.to_i64(), Some(i64::MAX));
    assert_eq!(back, big);
  }

  #[test]
  fn arithmetic_matches_bigrational() {
    let a = Q::new(3, 7);
    let b = Q::new(-5, 14);
    assert_eq!(&a + &b, Q::new(1, 14));
    assert_eq!(&a * &b, Q::new(-15, 98));
    assert_eq!(&a / &b, Q::new(-6, 5));
    assert!(b < a);
    assert_eq!("-15/98".parse::<Q>().unwrap(), &a * &b);
  }

  #[test]
  fn hash_is_representation_independent() {
    use std::collections::HashSet;
    let x = Q::from_int(i64::MAX);
    let y = &(&x + &x) - &x;
    let mut set = HashSet::new();
    set.insert(x);
    assert!(set.contains(&y));
  }
}
