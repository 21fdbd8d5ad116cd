//! The cyclic operads `Com`, `Assoc` and `Lie`.
//!
//! Every arity `m` comes with a fixed basis of `O((m))`:
//!
//! * `Com` has the single unit element.
//! * `Assoc` has one element per cyclic order of the slots, stored rotated so
//!   that slot 0 comes first.
//! * `Lie` has the left-normed combs rooted at slot 0 with slot 1 leftmost
//!   (see [`lie`]), so `dim Lie((m)) = (m - 2)!`.
//!
//! The symmetric group acts by relabeling slots, and composition glues slot
//! `a` of one element to slot `b` of another. Results are always expanded in
//! the fixed bases, so `Lie` elements absorb antisymmetry and IHX here and
//! nowhere else.

pub mod lie;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use lie::LieTree;

use crate::error::{Error, Result};
use crate::perm;
use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperadKind {
  Com,
  Assoc,
  Lie,
}

impl OperadKind {
  pub const ALL: [OperadKind; 3] = [OperadKind::Com, OperadKind::Assoc, OperadKind::Lie];

  pub fn name(self) -> &'static str {
    match self {
      OperadKind::Com => "com",
      OperadKind::Assoc => "assoc",
      OperadKind::Lie => "lie",
    }
  }
}

impl fmt::Display for OperadKind {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { f.write_str(self.name()) }
}

impl std::str::FromStr for OperadKind {
  type Err = Error;

  fn from_str(s: &str) -> Result<OperadKind> {
    match s.to_ascii_lowercase().as_str() {
      "com" | "comm" | "commutative" => Ok(OperadKind::Com),
      "assoc" | "associative" => Ok(OperadKind::Assoc),
      "lie" => Ok(OperadKind::Lie),
      _ => Err(Error::Parse(format!("unknown operad {s:?}"))),
    }
  }
}

/// A basis element of `O((m))`.
///
/// The payload is empty for `Com`, the full cyclic order starting at 0 for
/// `Assoc`, and the comb tail (slots after 1) for `Lie`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OperadBasisElement {
  pub kind:    OperadKind,
  pub arity:   u8,
  pub payload: Vec<u8>,
}

impl OperadBasisElement {
  pub fn com(arity: u8) -> OperadBasisElement {
    OperadBasisElement { kind: OperadKind::Com, arity, payload: vec![] }
  }

  /// An `Assoc` element from any rotation of a cyclic order of `0..m`.
  pub fn assoc(order: &[u8]) -> Result<OperadBasisElement> {
    let as_usize: Vec<usize> = order.iter().map(|&x| x as usize).collect();
    if !perm::is_permutation(&as_usize) {
      return Err(Error::Domain(format!("{order:?} is not a cyclic order of 0..{}", order.len())));
    }
    Ok(OperadBasisElement { kind: OperadKind::Assoc, arity: order.len() as u8, payload: rotate_to_zero(order) })
  }

  /// The `Lie` comb `[[..[x1, x_t1], ..], x_tk]` rooted at slot 0.
  pub fn lie_comb(arity: u8, tail: &[u8]) -> Result<OperadBasisElement> {
    let mut sorted = tail.to_vec();
    sorted.sort_unstable();
    if arity < 2 || sorted != (2..arity).collect::<Vec<_>>() {
      return Err(Error::Domain(format!("{tail:?} is not an arrangement of 2..{arity}")));
    }
    Ok(OperadBasisElement { kind: OperadKind::Lie, arity, payload: tail.to_vec() })
  }

  pub fn arity(&self) -> usize { self.arity as usize }

  /// Position of this element in [`basis`].
  pub fn index(&self) -> usize {
    match self.kind {
      OperadKind::Com => 0,
      OperadKind::Assoc => perm::rank_arrangement(&self.payload[1..]),
      OperadKind::Lie => perm::rank_arrangement(&self.payload),
    }
  }

  /// Inverse of [`OperadBasisElement::index`].
  pub fn from_index(kind: OperadKind, arity: u8, index: usize) -> OperadBasisElement {
    match kind {
      OperadKind::Com => OperadBasisElement::com(arity),
      OperadKind::Assoc => {
        let rest: Vec<u8> = (1..arity).collect();
        let mut payload = vec![0];
        payload.extend(perm::unrank_arrangement(&rest, index));
        OperadBasisElement { kind, arity, payload }
      }
      OperadKind::Lie => {
        let rest: Vec<u8> = (2..arity).collect();
        OperadBasisElement { kind, arity, payload: perm::unrank_arrangement(&rest, index) }
      }
    }
  }

  /// The bracket expression of a `Lie` element hanging off slot 0.
  pub fn lie_tree(&self) -> LieTree {
    debug_assert_eq!(self.kind, OperadKind::Lie);
    LieTree::comb(1, &self.payload)
  }
}

impl fmt::Display for OperadBasisElement {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match self.kind {
      OperadKind::Com => write!(f, "com{}", self.arity),
      OperadKind::Assoc => write!(f, "({})", join(&self.payload)),
      OperadKind::Lie => {
        let mut s = String::from("x1");
        for x in &self.payload {
          s = format!("[{s},x{x}]");
        }
        write!(f, "{s}")
      }
    }
  }
}

fn join(xs: &[u8]) -> String { xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ") }

fn rotate_to_zero(order: &[u8]) -> Vec<u8> {
  let z = order.iter().position(|&x| x == 0).expect("cyclic order contains slot 0");
  order[z..].iter().chain(&order[..z]).copied().collect()
}

/// A linear combination of basis elements of a single `O((m))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadElement {
  pub kind:  OperadKind,
  pub arity: u8,
  pub terms: BTreeMap<OperadBasisElement, Q>,
}

impl OperadElement {
  pub fn zero(kind: OperadKind, arity: u8) -> OperadElement {
    OperadElement { kind, arity, terms: BTreeMap::new() }
  }

  pub fn basis(e: OperadBasisElement) -> OperadElement {
    let mut out = OperadElement::zero(e.kind, e.arity);
    out.terms.insert(e, Q::from_int(1));
    out
  }

  pub fn is_zero(&self) -> bool { self.terms.is_empty() }

  pub fn add_term(&mut self, e: OperadBasisElement, c: &Q) {
    debug_assert_eq!((e.kind, e.arity), (self.kind, self.arity));
    if c.is_zero() {
      return;
    }
    match self.terms.entry(e) {
      Entry::Vacant(v) => {
        v.insert(c.clone());
      }
      Entry::Occupied(mut o) => {
        *o.get_mut() += c;
        if o.get().is_zero() {
          o.remove();
        }
      }
    }
  }

  pub fn add_scaled(&mut self, other: &OperadElement, c: &Q) {
    for (e, v) in &other.terms {
      self.add_term(e.clone(), &(v * c));
    }
  }

  pub fn scaled(&self, c: &Q) -> OperadElement {
    let mut out = OperadElement::zero(self.kind, self.arity);
    out.add_scaled(self, c);
    out
  }

  /// Builds the `Lie` element of arity `m` given by a bracket expression in
  /// the slots other than `root`, hanging off `root`.
  pub fn lie_from_tree(arity: u8, root: u8, tree: &LieTree) -> Result<OperadElement> {
    let mut leaves = tree.leaves();
    leaves.push(root);
    leaves.sort_unstable();
    if leaves != (0..arity).collect::<Vec<_>>() {
      return Err(Error::Domain(format!("tree leaves {leaves:?} are not the slots of arity {arity}")));
    }
    let rooted = tree.reroot(root, 0);
    let mut out = OperadElement::zero(OperadKind::Lie, arity);
    for (tail, c) in rooted.comb_coordinates() {
      out.terms.insert(OperadBasisElement { kind: OperadKind::Lie, arity, payload: tail }, Q::from_int(c));
    }
    Ok(out)
  }
}

impl fmt::Display for OperadElement {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if self.terms.is_empty() {
      return write!(f, "0");
    }
    let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("{c}*{e}")).collect();
    write!(f, "{}", parts.join(" + "))
  }
}

fn check_arity(m: usize) -> Result<()> {
  if m < 2 {
    return Err(Error::Domain(format!("arity must be at least 2, got {m}")));
  }
  if m > u8::MAX as usize {
    return Err(Error::Domain(format!("arity {m} too large")));
  }
  Ok(())
}

/// The fixed basis of `O((m))`, in index order.
pub fn basis(kind: OperadKind, m: usize) -> Result<Vec<OperadBasisElement>> {
  let d = dim(kind, m)?;
  Ok((0..d).map(|i| OperadBasisElement::from_index(kind, m as u8, i)).collect())
}

/// `dim O((m))`: 1 for `Com`, `(m-1)!` for `Assoc`, `(m-2)!` for `Lie`.
pub fn dim(kind: OperadKind, m: usize) -> Result<usize> {
  check_arity(m)?;
  Ok(match kind {
    OperadKind::Com => 1,
    OperadKind::Assoc => perm::factorial(m - 1),
    OperadKind::Lie => perm::factorial(m - 2),
  })
}

/// The action of a slot permutation on a basis element: slot `i` becomes slot
/// `perm[i]`.
pub fn act_basis(perm: &[usize], e: &OperadBasisElement) -> Result<OperadElement> {
  if perm.len() != e.arity() {
    return Err(Error::ArityMismatch { expected: e.arity(), got: perm.len() });
  }
  if !perm::is_permutation(perm) {
    return Err(Error::Domain(format!("{perm:?} is not a permutation")));
  }
  Ok(act_basis_unchecked(perm, e))
}

pub(crate) fn act_basis_unchecked(perm: &[usize], e: &OperadBasisElement) -> OperadElement {
  match e.kind {
    OperadKind::Com => OperadElement::basis(e.clone()),
    OperadKind::Assoc => {
      let order: Vec<u8> = e.payload.iter().map(|&s| perm[s as usize] as u8).collect();
      OperadElement::basis(OperadBasisElement { kind: e.kind, arity: e.arity, payload: rotate_to_zero(&order) })
    }
    OperadKind::Lie => {
      if perm[0] == 0 && perm[1] == 1 {
        // combs are permuted among themselves
        let payload = e.payload.iter().map(|&s| perm[s as usize] as u8).collect();
        return OperadElement::basis(OperadBasisElement { kind: e.kind, arity: e.arity, payload });
      }
      let tree = e.lie_tree().relabel(&|s| perm[s as usize] as u8);
      OperadElement::lie_from_tree(e.arity, perm[0] as u8, &tree).expect("relabeled tree is valid")
    }
  }
}

/// Linear extension of [`act_basis`].
pub fn act(perm: &[usize], e: &OperadElement) -> Result<OperadElement> {
  if perm.len() != e.arity as usize {
    return Err(Error::ArityMismatch { expected: e.arity as usize, got: perm.len() });
  }
  let mut out = OperadElement::zero(e.kind, e.arity);
  for (b, c) in &e.terms {
    out.add_scaled(&act_basis(perm, b)?, c);
  }
  Ok(out)
}

/// Glues slot `slot_a` of `a` to slot `slot_b` of `b`.
///
/// The result has arity `m_a + m_b - 2`; its slots are the remaining slots of
/// `a` in order followed by the remaining slots of `b` in order.
pub fn compose_basis(
  a: &OperadBasisElement,
  slot_a: usize,
  b: &OperadBasisElement,
  slot_b: usize,
) -> Result<OperadElement> {
  if a.kind != b.kind {
    return Err(Error::KindMismatch(a.kind, b.kind));
  }
  if slot_a >= a.arity() {
    return Err(Error::InvalidSlot { slot: slot_a, arity: a.arity() });
  }
  if slot_b >= b.arity() {
    return Err(Error::InvalidSlot { slot: slot_b, arity: b.arity() });
  }
  let ma = a.arity();
  let m = ma + b.arity() - 2;
  check_arity(m)?;
  let new_a = |j: u8| -> u8 { j - (j as usize > slot_a) as u8 };
  let new_b = |j: u8| -> u8 { (ma - 1) as u8 + j - (j as usize > slot_b) as u8 };
  Ok(match a.kind {
    OperadKind::Com => OperadElement::basis(OperadBasisElement::com(m as u8)),
    OperadKind::Assoc => {
      let ra = rotate_to(&a.payload, slot_a as u8);
      let rb = rotate_to(&b.payload, slot_b as u8);
      let order: Vec<u8> = ra[1..].iter().map(|&j| new_a(j)).chain(rb[1..].iter().map(|&j| new_b(j))).collect();
      OperadElement::basis(OperadBasisElement { kind: a.kind, arity: m as u8, payload: rotate_to_zero(&order) })
    }
    OperadKind::Lie => {
      // a as an expression containing leaf slot_a, hanging off some other leaf
      let (root_a, expr_a) = if slot_a != 0 { (0u8, a.lie_tree()) } else { (1u8, a.lie_tree().reroot(0, 1)) };
      let expr_b = b.lie_tree().reroot(0, slot_b as u8);
      let glued = expr_a.relabel(&|j| if j as usize == slot_a { u8::MAX } else { new_a(j) });
      let sub = expr_b.relabel(&new_b);
      let tree = glued.graft(u8::MAX, &sub);
      OperadElement::lie_from_tree(m as u8, new_a(root_a), &tree)?
    }
  })
}

fn rotate_to(order: &[u8], slot: u8) -> Vec<u8> {
  let z = order.iter().position(|&x| x == slot).expect("slot in cyclic order");
  order[z..].iter().chain(&order[..z]).copied().collect()
}

/// Bilinear extension of [`compose_basis`].
pub fn compose(a: &OperadElement, slot_a: usize, b: &OperadElement, slot_b: usize) -> Result<OperadElement> {
  if a.kind != b.kind {
    return Err(Error::KindMismatch(a.kind, b.kind));
  }
  let m = a.arity as usize + b.arity as usize - 2;
  check_arity(m)?;
  let mut out = OperadElement::zero(a.kind, m as u8);
  for (x, cx) in &a.terms {
    for (y, cy) in &b.terms {
      out.add_scaled(&compose_basis(x, slot_a, y, slot_b)?, &(cx * cy));
    }
  }
  Ok(out)
}

#[cfg(test)]
mod tests;
