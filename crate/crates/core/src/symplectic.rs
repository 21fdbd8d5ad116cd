//! Symplectic basis vectors and the standard pairing.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which half of a hyperbolic pair a basis vector belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Half {
  P,
  Q,
}

/// A symplectic basis vector `p_i`, `q_i`, or a stabilizing vector `p'_i`, `q'_i`.
///
/// Indices are 1-based. Ordering is by (primed, index, half) so that all
/// unprimed labels sort before the stabilizing ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
  pub primed: bool,
  pub index:  u16,
  pub half:   Half,
}

impl Label {
  pub const fn p(index: u16) -> Label { Label { primed: false, index, half: Half::P } }

  pub const fn q(index: u16) -> Label { Label { primed: false, index, half: Half::Q } }

  pub const fn p_prime(index: u16) -> Label { Label { primed: true, index, half: Half::P } }

  pub const fn q_prime(index: u16) -> Label { Label { primed: true, index, half: Half::Q } }

  /// The hyperbolic partner: `p_i <-> q_i`.
  pub fn dual(self) -> Label {
    Label { half: if self.half == Half::P { Half::Q } else { Half::P }, ..self }
  }

  pub fn is_lagrangian_p(self) -> bool { !self.primed && self.half == Half::P }
}

/// The symplectic form on basis vectors: `ω(p_i, q_i) = 1`, `ω(q_i, p_i) = -1`,
/// zero otherwise.
pub fn omega(a: Label, b: Label) -> i64 {
  if a.primed != b.primed || a.index != b.index {
    return 0;
  }
  match (a.half, b.half) {
    (Half::P, Half::Q) => 1,
    (Half::Q, Half::P) => -1,
    _ => 0,
  }
}

impl fmt::Display for Label {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let h = if self.half == Half::P { 'p' } else { 'q' };
    let prime = if self.primed { "'" } else { "" };
    write!(f, "{h}{prime}{}", self.index)
  }
}

impl FromStr for Label {
  type Err = Error;

  fn from_str(s: &str) -> Result<Label> {
    let bad = || Error::Parse(format!("bad label {s:?}"));
    let mut chars = s.chars();
    let half = match chars.next() {
      Some('p') => Half::P,
      Some('q') => Half::Q,
      _ => return Err(bad()),
    };
    let rest = chars.as_str();
    let (primed, digits) = match rest.strip_prefix('\'') {
      Some(d) => (true, d),
      None => (false, rest),
    };
    let index: u16 = digits.parse().map_err(|_| bad())?;
    if index == 0 {
      return Err(bad());
    }
    Ok(Label { primed, index, half })
  }
}

impl Serialize for Label {
  fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&self.to_string())
  }
}

impl<'de> Deserialize<'de> for Label {
  fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Label, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
  }
}

/// The standard symplectic space `V_n` with basis `p_1..p_n, q_1..q_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticSpace {
  pub n: u16,
}

impl SymplecticSpace {
  pub fn new(n: u16) -> Result<SymplecticSpace> {
    if n == 0 {
      return Err(Error::Domain("symplectic rank must be positive".into()));
    }
    Ok(SymplecticSpace { n })
  }

  pub fn dim(&self) -> usize { 2 * self.n as usize }

  /// Basis in label order: `p_1, q_1, p_2, q_2, ...`.
  pub fn basis(&self) -> Vec<Label> {
    (1..=self.n).flat_map(|i| [Label::p(i), Label::q(i)]).collect()
  }

  /// The Lagrangian half `p_1..p_n`.
  pub fn lagrangian(&self) -> Vec<Label> { (1..=self.n).map(Label::p).collect() }

  pub fn contains(&self, l: Label) -> bool { !l.primed && l.index >= 1 && l.index <= self.n }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn pairing_table() {
    let v = SymplecticSpace::new(2).unwrap();
    for a in v.basis() {
      for b in v.basis() {
        assert_eq!(omega(a, b), -omega(b, a));
        let expected = if b == a.dual() { if a.half == Half::P { 1 } else { -1 } } else { 0 };
        assert_eq!(omega(a, b), expected, "{a} {b}");
      }
    }
    assert_eq!(v.dim(), 4);
  }

  #[test]
  fn primed_labels_pair_only_among_themselves() {
    assert_eq!(omega(Label::p_prime(1), Label::q_prime(1)), 1);
    assert_eq!(omega(Label::p(1), Label::q_prime(1)), 0);
  }

  #[test]
  fn parse_roundtrip() {
    for s in ["p1", "q12", "p'3", "q'1"] {
      assert_eq!(s.parse::<Label>().unwrap().to_string(), s);
    }
    assert!("x1".parse::<Label>().is_err());
    assert!("p0".parse::<Label>().is_err());
  }
}
