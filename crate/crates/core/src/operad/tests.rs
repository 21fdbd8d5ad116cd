use std::collections::BTreeSet;

use super::*;

fn q(x: i64) -> Q { Q::from_int(x) }

fn tripod_tree(a: u8, b: u8) -> LieTree { LieTree::bracket(LieTree::Leaf(a), LieTree::Leaf(b)) }

#[test]
fn basis_sizes() {
  assert_eq!(basis(OperadKind::Com, 5).unwrap().len(), 1);
  assert_eq!(basis(OperadKind::Com, 9).unwrap().len(), 1);
  assert_eq!(basis(OperadKind::Assoc, 3).unwrap().len(), 2);
  assert_eq!(basis(OperadKind::Assoc, 4).unwrap().len(), 6);
  assert_eq!(basis(OperadKind::Lie, 3).unwrap().len(), 1);
  assert_eq!(basis(OperadKind::Lie, 4).unwrap().len(), 2);
  assert_eq!(basis(OperadKind::Lie, 6).unwrap().len(), 24);
  assert!(basis(OperadKind::Com, 1).is_err());
}

#[test]
fn index_roundtrip() {
  for kind in OperadKind::ALL {
    for m in 3..=6 {
      for (i, e) in basis(kind, m).unwrap().iter().enumerate() {
        assert_eq!(e.index(), i);
      }
    }
  }
}

#[test]
fn identity_acts_trivially() {
  for kind in OperadKind::ALL {
    for m in 3..=5 {
      let id: Vec<usize> = (0..m).collect();
      for e in basis(kind, m).unwrap() {
        assert_eq!(act_basis(&id, &e).unwrap(), OperadElement::basis(e.clone()));
      }
    }
  }
}

#[test]
fn lie_tripod_transposition_is_odd() {
  let e = OperadBasisElement::lie_comb(3, &[2]).unwrap();
  let swapped = act_basis(&[0, 2, 1], &e).unwrap();
  assert_eq!(swapped, OperadElement::basis(e.clone()).scaled(&q(-1)));
  let rotated = act_basis(&[1, 2, 0], &e).unwrap();
  assert_eq!(rotated, OperadElement::basis(e));
}

#[test]
fn assoc_rotation_and_reflection() {
  let e = OperadBasisElement::assoc(&[0, 1, 2]).unwrap();
  let rotated = act_basis(&[1, 2, 0], &e).unwrap();
  assert_eq!(rotated, OperadElement::basis(e.clone()));
  let reflected = act_basis(&[0, 2, 1], &e).unwrap();
  assert_eq!(reflected, OperadElement::basis(OperadBasisElement::assoc(&[0, 2, 1]).unwrap()));
}

#[test]
fn action_is_a_group_action() {
  for kind in OperadKind::ALL {
    for m in 3..=4 {
      for e in basis(kind, m).unwrap() {
        perm::for_each_permutation(m, |s| {
          perm::for_each_permutation(m, |t| {
            // acting by t then s equals acting by s∘t
            let lhs = act(s, &act_basis(t, &e).unwrap()).unwrap();
            let rhs = act_basis(&perm::compose(s, t), &e).unwrap();
            assert_eq!(lhs, rhs, "{kind} {e} s={s:?} t={t:?}");
          });
        });
      }
    }
  }
}

#[test]
fn lie_antisymmetry_and_jacobi() {
  let ab = OperadElement::lie_from_tree(3, 0, &tripod_tree(1, 2)).unwrap();
  let ba = OperadElement::lie_from_tree(3, 0, &tripod_tree(2, 1)).unwrap();
  let mut sum = ab.clone();
  sum.add_scaled(&ba, &q(1));
  assert!(sum.is_zero());

  let l = |x: u8| LieTree::Leaf(x);
  let mut jac = OperadElement::zero(OperadKind::Lie, 4);
  for (a, b, c) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
    let t = LieTree::bracket(LieTree::bracket(l(a), l(b)), l(c));
    jac.add_scaled(&OperadElement::lie_from_tree(4, 0, &t).unwrap(), &q(1));
  }
  assert!(jac.is_zero());
}

#[test]
fn compose_examples() {
  let c = compose_basis(&OperadBasisElement::com(3), 1, &OperadBasisElement::com(4), 2).unwrap();
  assert_eq!(c, OperadElement::basis(OperadBasisElement::com(5)));

  let t = OperadBasisElement::assoc(&[0, 1, 2]).unwrap();
  let c = compose_basis(&t, 1, &t, 0).unwrap();
  assert_eq!(c, OperadElement::basis(OperadBasisElement::assoc(&[0, 2, 3, 1]).unwrap()));

  // gluing two tripods gives [x1, [x2, x3]], a difference of two combs
  let y = OperadBasisElement::lie_comb(3, &[2]).unwrap();
  let c = compose_basis(&y, 2, &y, 0).unwrap();
  let expected = OperadElement::lie_from_tree(4, 0, &tripod_tree(1, 2).graft(2, &tripod_tree(2, 3))).unwrap();
  assert_eq!(c, expected);
  assert_eq!(c.terms.len(), 2);
}

#[test]
fn compose_rejects_bad_input() {
  let y = OperadBasisElement::lie_comb(3, &[2]).unwrap();
  let t = OperadBasisElement::assoc(&[0, 1, 2]).unwrap();
  assert!(matches!(compose_basis(&y, 0, &t, 0), Err(Error::KindMismatch(..))));
  assert!(matches!(compose_basis(&y, 3, &y, 0), Err(Error::InvalidSlot { .. })));
}

#[test]
fn composition_is_associative() {
  // glue slot i of a to slot j of b, and slot k of b to slot l of c, in both orders
  for kind in OperadKind::ALL {
    for (ma, mb, mc) in [(3, 3, 3), (3, 3, 4), (3, 4, 3), (4, 3, 3)] {
      for a in basis(kind, ma).unwrap() {
        for b in basis(kind, mb).unwrap() {
          for c in basis(kind, mc).unwrap() {
            for i in 0..ma {
              for j in 0..mb {
                for k in (0..mb).filter(|&k| k != j) {
                  for l in 0..mc {
                    let ab = compose_basis(&a, i, &b, j).unwrap();
                    let k_in_ab = ma - 1 + k - (k > j) as usize;
                    let left = compose(&ab, k_in_ab, &OperadElement::basis(c.clone()), l).unwrap();
                    let bc = compose_basis(&b, k, &c, l).unwrap();
                    let j_in_bc = j - (j > k) as usize;
                    let right = compose(&OperadElement::basis(a.clone()), i, &bc, j_in_bc).unwrap();
                    assert_eq!(left, right, "{kind} {a} {i} {b} {j} {k} {c} {l}");
                  }
                }
              }
            }
          }
        }
      }
    }
  }
}

#[test]
fn composition_is_equivariant() {
  // relabeling the slots of b commutes with gluing once the glued slot is tracked
  for kind in OperadKind::ALL {
    let a = basis(kind, 3).unwrap();
    let b = basis(kind, 4).unwrap();
    for x in &a {
      for y in &b {
        perm::for_each_permutation(4, |s| {
          let moved = act_basis(s, y).unwrap();
          for j in 0..4 {
            let lhs = compose(&OperadElement::basis(x.clone()), 1, &moved, s[j]).unwrap();
            let plain = compose_basis(x, 1, y, j).unwrap();
            // induced permutation on result slots: a-part fixed, b-part follows s
            let mut induced: Vec<usize> = vec![0, 1];
            for t in (0..4).filter(|&t| t != j) {
              induced.push(2 + s[t] - (s[t] > s[j]) as usize);
            }
            let rhs = act(&induced, &plain).unwrap();
            assert_eq!(lhs, rhs, "{kind} {x} {y} {s:?} {j}");
          }
        });
      }
    }
  }
}

fn all_bracketings(leaves: &[u8]) -> Vec<LieTree> {
  if leaves.len() == 1 {
    return vec![LieTree::Leaf(leaves[0])];
  }
  let mut out = Vec::new();
  for split in 1..leaves.len() {
    for l in all_bracketings(&leaves[..split]) {
      for r in all_bracketings(&leaves[split..]) {
        out.push(LieTree::bracket(l.clone(), r.clone()));
      }
    }
  }
  out
}

/// Rank over Q of a set of integer vectors, by plain Gaussian elimination.
fn rank_of(mut rows: Vec<Vec<Q>>) -> usize {
  let mut rank = 0;
  let cols = rows.first().map_or(0, |r| r.len());
  for col in 0..cols {
    let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
    rows.swap(rank, p);
    let pivot = rows[rank][col].clone();
    for r in 0..rows.len() {
      if r != rank && !rows[r][col].is_zero() {
        let f = &rows[r][col] / &pivot;
        for c in col..cols {
          let sub = &f * &rows[rank][c];
          rows[r][c] -= &sub;
        }
      }
    }
    rank += 1;
  }
  rank
}

#[test]
fn lie_dimension_matches_span_of_all_trees() {
  // the span of every bracketing of every leaf order, inside the free associative algebra
  for m in 3..=6u8 {
    let mut words = BTreeSet::new();
    let mut vecs = Vec::new();
    perm::for_each_permutation((m - 1) as usize, |p| {
      let leaves: Vec<u8> = p.iter().map(|&x| x as u8 + 1).collect();
      for t in all_bracketings(&leaves) {
        let w = t.words();
        words.extend(w.iter().map(|(w, _)| w.clone()));
        vecs.push(w);
      }
    });
    let index: Vec<Vec<u8>> = words.into_iter().collect();
    let rows: Vec<Vec<Q>> = vecs
      .iter()
      .map(|w| {
        let mut row = vec![Q::zero(); index.len()];
        for (word, c) in w {
          let i = index.binary_search(word).unwrap();
          row[i] += &q(*c);
        }
        row
      })
      .collect();
    assert_eq!(rank_of(rows), dim(OperadKind::Lie, m as usize).unwrap(), "m={m}");
  }
}

#[test]
fn assoc_dimension_counts_cyclic_orders() {
  for m in 3..=6usize {
    let mut seen = BTreeSet::new();
    perm::for_each_permutation(m, |p| {
      let order: Vec<u8> = p.iter().map(|&x| x as u8).collect();
      seen.insert(OperadBasisElement::assoc(&order).unwrap());
    });
    assert_eq!(seen.len(), dim(OperadKind::Assoc, m).unwrap());
  }
}

#[test]
fn lie_normal_form_is_consistent_across_roots() {
  // a tree read from any leaf gives the same element
  let l = |x: u8| LieTree::Leaf(x);
  let t = LieTree::bracket(LieTree::bracket(l(3), l(1)), LieTree::bracket(l(4), l(2)));
  let base = OperadElement::lie_from_tree(5, 0, &t).unwrap();
  for r in 1..5u8 {
    let moved = t.reroot(0, r);
    assert_eq!(OperadElement::lie_from_tree(5, r, &moved).unwrap(), base);
  }
}
