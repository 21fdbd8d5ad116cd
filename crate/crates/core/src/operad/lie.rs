//! Trees for the cyclic Lie operad.
//!
//! An element of `Lie((m))` is drawn as a trivalent tree whose leaves are the
//! slots `0..m`, with a cyclic order at every internal vertex. Rooting the
//! tree at a leaf turns it into a bracket expression in the remaining leaves:
//! a vertex seen from its parent side with cyclic order `(parent, a, b)` reads
//! as `[a, b]`.
//!
//! The basis used throughout is the left-normed comb rooted at slot 0 whose
//! leftmost leaf is slot 1, `[[..[x1, x_s2], ..], x_sm]`. A multilinear Lie
//! polynomial in `x1..` has, as its coordinate on such a comb, the coefficient
//! of the associative word `x1 x_s2 .. x_sm` in its expansion, so normalizing
//! only needs the words that start with `x1`.

use std::collections::BTreeMap;

/// A rooted bracket expression over slot labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LieTree {
  Leaf(u8),
  Bracket(Box<LieTree>, Box<LieTree>),
}

impl LieTree {
  pub fn bracket(a: LieTree, b: LieTree) -> LieTree { LieTree::Bracket(Box::new(a), Box::new(b)) }

  /// The comb `[[..[x_first, x_s1], ..], x_sk]`.
  pub fn comb(first: u8, rest: &[u8]) -> LieTree {
    rest.iter().fold(LieTree::Leaf(first), |acc, &s| LieTree::bracket(acc, LieTree::Leaf(s)))
  }

  pub fn contains(&self, leaf: u8) -> bool {
    match self {
      LieTree::Leaf(x) => *x == leaf,
      LieTree::Bracket(a, b) => a.contains(leaf) || b.contains(leaf),
    }
  }

  pub fn leaves(&self) -> Vec<u8> {
    let mut out = Vec::new();
    self.collect_leaves(&mut out);
    out
  }

  fn collect_leaves(&self, out: &mut Vec<u8>) {
    match self {
      LieTree::Leaf(x) => out.push(*x),
      LieTree::Bracket(a, b) => {
        a.collect_leaves(out);
        b.collect_leaves(out);
      }
    }
  }

  pub fn relabel(&self, f: &impl Fn(u8) -> u8) -> LieTree {
    match self {
      LieTree::Leaf(x) => LieTree::Leaf(f(*x)),
      LieTree::Bracket(a, b) => LieTree::bracket(a.relabel(f), b.relabel(f)),
    }
  }

  /// Replaces the leaf `leaf` by `sub`.
  pub fn graft(&self, leaf: u8, sub: &LieTree) -> LieTree {
    match self {
      LieTree::Leaf(x) if *x == leaf => sub.clone(),
      LieTree::Leaf(x) => LieTree::Leaf(*x),
      LieTree::Bracket(a, b) => LieTree::bracket(a.graft(leaf, sub), b.graft(leaf, sub)),
    }
  }

  /// Given this expression hanging off the root leaf `root`, returns the
  /// expression of the same tree hanging off the leaf `target`.
  pub fn reroot(&self, root: u8, target: u8) -> LieTree {
    if root == target {
      return self.clone();
    }
    let mut parent = LieTree::Leaf(root);
    let mut cur = self;
    loop {
      match cur {
        LieTree::Leaf(x) => {
          assert_eq!(*x, target, "reroot target not in tree");
          return parent;
        }
        LieTree::Bracket(a, b) => {
          // cyclic order at this vertex is (parent, a, b)
          if a.contains(target) {
            parent = LieTree::bracket((**b).clone(), parent);
            cur = a;
          } else {
            parent = LieTree::bracket(parent, (**a).clone());
            cur = b;
          }
        }
      }
    }
  }

  /// Full expansion into associative words with integer coefficients.
  pub fn words(&self) -> Vec<(Vec<u8>, i64)> {
    match self {
      LieTree::Leaf(x) => vec![(vec![*x], 1)],
      LieTree::Bracket(a, b) => {
        let wa = a.words();
        let wb = b.words();
        let mut out = Vec::with_capacity(2 * wa.len() * wb.len());
        for (u, cu) in &wa {
          for (v, cv) in &wb {
            out.push(([u.as_slice(), v].concat(), cu * cv));
            out.push(([v.as_slice(), u].concat(), -cu * cv));
          }
        }
        out
      }
    }
  }

  /// The words of the expansion that begin with `first`.
  pub fn words_from(&self, first: u8) -> Vec<(Vec<u8>, i64)> {
    match self {
      LieTree::Leaf(x) => {
        if *x == first {
          vec![(vec![*x], 1)]
        } else {
          vec![]
        }
      }
      LieTree::Bracket(a, b) => {
        let (head, tail, sign) = if a.contains(first) { (a, b, 1) } else { (b, a, -1) };
        let wh = head.words_from(first);
        let wt = tail.words();
        let mut out = Vec::with_capacity(wh.len() * wt.len());
        for (u, cu) in &wh {
          for (v, cv) in &wt {
            out.push(([u.as_slice(), v].concat(), sign * cu * cv));
          }
        }
        out
      }
    }
  }

  /// Coordinates in the comb basis of this expression hanging off slot 0.
  /// Keys are the comb tails (the leaves after slot 1).
  pub fn comb_coordinates(&self) -> BTreeMap<Vec<u8>, i64> {
    let mut out: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
    for (w, c) in self.words_from(1) {
      *out.entry(w[1..].to_vec()).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
  }
}
