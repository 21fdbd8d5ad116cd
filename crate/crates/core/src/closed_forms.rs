//! Closed-form dimensions the graph computations are checked against.
//!
//! Cusp form counts `s_k`, the two-row multiplicities `λ_{k,ℓ}` of the rank
//! two part, two-row Weyl module dimensions, and the polynomial model of the
//! rank two part: polynomials `f(x, y)` on `V ⊕ V` with
//!
//! 1. `f(x, y) = f(y, x)`,
//! 2. `f(x, y) = -f(-x, y)`,
//! 3. `f(x, y) + f(y, -x-y) + f(-x-y, x) = 0`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::operad::OperadKind;
use crate::rational::Q;

/// Dimension of weight `k` cusp forms for the full modular group.
pub fn cusp_dim(k: usize) -> usize {
  if k % 2 == 1 || k == 2 {
    0
  } else if k % 12 == 2 {
    k / 12 - 1
  } else {
    k / 12
  }
}

/// A two-row partition `(k, ℓ)` with `k >= ℓ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition2 {
  pub k: usize,
  pub l: usize,
}

impl Partition2 {
  pub fn new(k: usize, l: usize) -> Result<Partition2> {
    if k < l {
      return Err(Error::Domain(format!("({k},{l}) is not a partition")));
    }
    Ok(Partition2 { k, l })
  }

  pub fn size(&self) -> usize { self.k + self.l }
}

impl fmt::Display for Partition2 {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { write!(f, "({},{})", self.k, self.l) }
}

/// Multiplicity of the Weyl module `(k, ℓ)` in the rank two part.
pub fn lambda(p: Partition2) -> usize {
  let Partition2 { k, l } = p;
  if k == l || (k + l) % 2 == 1 {
    0
  } else if l % 2 == 0 {
    cusp_dim(k - l + 2)
  } else {
    cusp_dim(k - l + 2) + 1
  }
}

/// For each even size up to `max_size`, the partitions with nonzero
/// multiplicity, largest first row first.
pub fn lambda_table(max_size: usize) -> Vec<(usize, Vec<(Partition2, usize)>)> {
  (2..=max_size)
    .step_by(2)
    .map(|h| {
      let row = (0..=h / 2)
        .map(|l| Partition2 { k: h - l, l })
        .filter_map(|p| Some((p, lambda(p))).filter(|&(_, m)| m > 0))
        .collect();
      (h, row)
    })
    .collect()
}

/// `(k,ℓ)` or `(k,ℓ)^m`.
pub fn format_entry(p: Partition2, m: usize) -> String {
  if m == 1 {
    p.to_string()
  } else {
    format!("{p}^{m}")
  }
}

fn binom(top: i64, bottom: i64) -> u128 {
  if bottom < 0 {
    return 0;
  }
  if top < 0 {
    // only C(-1, 0) = 1 is reached here
    return u128::from(bottom == 0);
  }
  if bottom > top {
    return 0;
  }
  (0..bottom).fold(1u128, |acc, i| acc * (top - i) as u128 / (i + 1) as u128)
}

/// `dim S_(k,ℓ) V` for `dim V = dim_v`, by the two-row product formula.
pub fn weyl_dim_two_row(p: Partition2, dim_v: usize) -> Result<usize> {
  if dim_v == 0 {
    return Err(Error::Domain("dim V must be positive".into()));
  }
  let (k, l, n) = (p.k as i64, p.l as i64, dim_v as i64);
  let num = (k - l + 1) as u128 * binom(n - 2 + l, l) * binom(n + k - 1, k);
  Ok((num / (k + 1) as u128) as usize)
}

/// Closed-form dimension of the rank two part with `h` hairs.
pub fn h12_dim_closed(dim_v: usize, h: usize) -> Result<usize> {
  let mut total = 0;
  for l in 0..=h / 2 {
    let p = Partition2 { k: h - l, l };
    let m = lambda(p);
    if m > 0 {
      total += m * weyl_dim_two_row(p, dim_v)?;
    }
  }
  Ok(total)
}

/// A polynomial on `V ⊕ V` in coordinates `x_1..x_c, y_1..y_c`. Exponent
/// vectors list the `x` exponents, then the `y` exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
  pub coords: usize,
  pub terms:  BTreeMap<Vec<u32>, i64>,
}

impl Poly {
  pub fn zero(coords: usize) -> Poly { Poly { coords, terms: BTreeMap::new() } }

  pub fn monomial(x: &[u32], y: &[u32], c: i64) -> Poly {
    let mut p = Poly::zero(x.len());
    p.add_term([x, y].concat(), c);
    p
  }

  pub fn is_zero(&self) -> bool { self.terms.is_empty() }

  fn add_term(&mut self, e: Vec<u32>, c: i64) {
    let v = self.terms.entry(e.clone()).or_insert(0);
    *v += c;
    if *v == 0 {
      self.terms.remove(&e);
    }
  }

  pub fn add(&self, other: &Poly) -> Poly {
    let mut out = self.clone();
    for (e, &c) in &other.terms {
      out.add_term(e.clone(), c);
    }
    out
  }

  pub fn scaled(&self, c: i64) -> Poly {
    let mut out = Poly::zero(self.coords);
    for (e, &v) in &self.terms {
      out.add_term(e.clone(), v * c);
    }
    out
  }

  /// `f(a x + b y, c x + d y)`, coordinate by coordinate.
  pub fn substitute(&self, [a, b, c, d]: [i64; 4]) -> Poly {
    let mut out = Poly::zero(self.coords);
    for (e, &coeff) in &self.terms {
      // per coordinate: coefficients of x^j y^(deg - j)
      let factors: Vec<Vec<i64>> =
        (0..self.coords).map(|i| expand_pair(e[i], e[self.coords + i], [a, b, c, d])).collect();
      let mut acc: Vec<(Vec<u32>, i64)> = vec![(vec![0; 2 * self.coords], coeff)];
      for (i, f) in factors.iter().enumerate() {
        let deg = e[i] + e[self.coords + i];
        let mut next = Vec::with_capacity(acc.len() * f.len());
        for (exp, v) in &acc {
          for (j, &w) in f.iter().enumerate() {
            if w != 0 {
              let mut exp = exp.clone();
              exp[i] = j as u32;
              exp[self.coords + i] = deg - j as u32;
              next.push((exp, v * w));
            }
          }
        }
        acc = next;
      }
      for (exp, v) in acc {
        out.add_term(exp, v);
      }
    }
    out
  }

  pub fn degree(&self) -> Option<u32> { self.terms.keys().next().map(|e| e.iter().sum()) }

  /// The three defining conditions as polynomials that must vanish.
  pub fn conditions(&self) -> [Poly; 3] {
    [
      self.substitute(SWAP).add(&self.scaled(-1)),
      self.substitute(NEGATE_X).add(self),
      self.add(&self.substitute(ROTATE)).add(&self.substitute(ROTATE2)),
    ]
  }

  pub fn satisfies_conditions(&self) -> bool { self.conditions().iter().all(Poly::is_zero) }
}

const SWAP: [i64; 4] = [0, 1, 1, 0];
const NEGATE_X: [i64; 4] = [-1, 0, 0, 1];
const ROTATE: [i64; 4] = [0, 1, -1, -1];
const ROTATE2: [i64; 4] = [-1, -1, 1, 0];

/// `(a x + b y)^p (c x + d y)^q` as coefficients of `x^j y^(p+q-j)`.
fn expand_pair(p: u32, q: u32, [a, b, c, d]: [i64; 4]) -> Vec<i64> {
  let power = |s: i64, t: i64, m: u32| -> Vec<i64> {
    (0..=m).map(|j| binom(m as i64, j as i64) as i64 * s.pow(j) * t.pow(m - j)).collect()
  };
  let (u, v) = (power(a, b, p), power(c, d, q));
  let mut out = vec![0; (p + q + 1) as usize];
  for (i, x) in u.iter().enumerate() {
    for (j, y) in v.iter().enumerate() {
      out[i + j] += x * y;
    }
  }
  out
}

/// `x_1 y_2^(2k-1) - x_2 y_1 y_2^(2k-2) + y_1 x_2^(2k-1) - y_2 x_1 x_2^(2k-2)`
/// in `coords >= 2` coordinates per factor.
pub fn f2k(k: u32, coords: usize) -> Result<Poly> {
  if k < 2 {
    return Err(Error::Domain(format!("f_2k needs k >= 2, got {k}")));
  }
  if coords < 2 {
    return Err(Error::Domain("f_2k needs two coordinates per factor".into()));
  }
  let m = 2 * k;
  let mono = |x1: u32, x2: u32, y1: u32, y2: u32, c: i64| {
    let mut x = vec![0; coords];
    let mut y = vec![0; coords];
    (x[0], x[1], y[0], y[1]) = (x1, x2, y1, y2);
    Poly::monomial(&x, &y, c)
  };
  Ok(
    mono(1, 0, 0, m - 1, 1)
      .add(&mono(0, 1, 1, m - 2, -1))
      .add(&mono(0, m - 1, 1, 0, 1))
      .add(&mono(1, m - 2, 0, 1, -1)),
  )
}

/// All monomials whose degree in `(x_i, y_i)` is `weight[i]`.
fn weight_block(weight: &[u32]) -> Vec<Vec<u32>> {
  let c = weight.len();
  let mut out = vec![vec![0; 2 * c]];
  for (i, &w) in weight.iter().enumerate() {
    out = out
      .into_iter()
      .flat_map(|e| {
        (0..=w).map(move |j| {
          let mut e = e.clone();
          e[i] = j;
          e[c + i] = w - j;
          e
        })
      })
      .collect();
  }
  out
}

/// The stacked condition matrix on one weight block: rows index monomials of
/// the block three times over, columns the monomials of the block.
pub fn condition_matrix(weight: &[u32]) -> (Vec<Vec<u32>>, RationalMatrix) {
  let basis = weight_block(weight);
  let position: BTreeMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
  let n = basis.len();
  let mut triplets = Vec::new();
  for (col, e) in basis.iter().enumerate() {
    let f = Poly { coords: weight.len(), terms: BTreeMap::from([(e.clone(), 1)]) };
    for (block, cond) in f.conditions().iter().enumerate() {
      for (exp, &v) in &cond.terms {
        triplets.push((block * n + position[exp], col, Q::from_int(v)));
      }
    }
  }
  (basis.clone(), RationalMatrix::from_triplets(3 * n, n, triplets))
}

/// Nonincreasing sequences of `len` naturals summing to `total`.
fn sorted_weights(total: u32, len: usize, max: u32) -> Vec<Vec<u32>> {
  if len == 0 {
    return if total == 0 { vec![vec![]] } else { vec![] };
  }
  let mut out = Vec::new();
  for first in (0..=max.min(total)).rev() {
    for mut rest in sorted_weights(total - first, len - 1, first) {
      rest.insert(0, first);
      out.push(rest);
    }
  }
  out
}

fn arrangements(w: &[u32]) -> usize {
  let mut counts = BTreeMap::new();
  for x in w {
    *counts.entry(x).or_insert(0usize) += 1;
  }
  let fact = |m: usize| (1..=m).product::<usize>();
  counts.values().fold(fact(w.len()), |acc, &c| acc / fact(c))
}

/// Dimension of the degree `h` solutions of the three conditions on
/// `V ⊕ V`, `dim V = 2n`. The conditions act coordinate by coordinate, so
/// they preserve the weight in each `(x_i, y_i)`; blocks that differ by a
/// permutation of coordinates have the same solution dimension.
pub fn rank2_poly_dim(n: usize, h: usize) -> Result<usize> {
  if n == 0 {
    return Err(Error::Domain("n must be positive".into()));
  }
  let coords = 2 * n;
  let mut total = 0;
  for w in sorted_weights(h as u32, coords, h as u32) {
    let (basis, m) = condition_matrix(&w);
    total += arrangements(&w) * (basis.len() - m.rank());
  }
  Ok(total)
}

/// Coordinates of `f` in the weight block it lives in, if it is homogeneous
/// for one weight.
pub fn block_coordinates(f: &Poly) -> Option<(Vec<u32>, Vec<(usize, Q)>)> {
  let weight_of = |e: &Vec<u32>| (0..f.coords).map(|i| e[i] + e[f.coords + i]).collect::<Vec<u32>>();
  let weight = weight_of(f.terms.keys().next()?);
  if f.terms.keys().any(|e| weight_of(e) != weight) {
    return None;
  }
  let basis = weight_block(&weight);
  let v = f
    .terms
    .iter()
    .map(|(e, &c)| (basis.iter().position(|b| b == e).expect("same block"), Q::from_int(c)))
    .collect();
  Some((weight, v))
}

fn binom_usize(top: usize, bottom: usize) -> usize { binom(top as i64, bottom as i64) as usize }

/// Predicted first homology dimension summed over hair counts. `Com` and
/// `Assoc` take `rank = None` (all ranks); `Lie` needs a rank of at most 2.
pub fn expected_h1(kind: OperadKind, dim_v: usize, d: usize, rank: Option<usize>) -> Result<usize> {
  match (kind, rank) {
    (OperadKind::Com, None) => Ok(if d == 1 { binom_usize(dim_v + 2, 3) } else { 0 }),
    (OperadKind::Assoc, None) => Ok(match d {
      1 => (dim_v.pow(3) + 2 * dim_v) / 3 + dim_v,
      2 => binom_usize(dim_v, 2),
      _ => 0,
    }),
    (OperadKind::Lie, Some(0)) => Ok(if d == 1 { binom_usize(dim_v, 3) } else { 0 }),
    (OperadKind::Lie, Some(1)) => Ok(if d % 2 == 1 { binom_usize(dim_v + d - 1, d) } else { 0 }),
    (OperadKind::Lie, Some(2)) if d >= 2 => h12_dim_closed(dim_v, d - 2),
    (OperadKind::Lie, Some(2)) => Ok(0),
    (kind, rank) => Err(Error::Domain(format!("no closed form for {kind} at rank {rank:?}"))),
  }
}
