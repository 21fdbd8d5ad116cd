//! Exact sparse linear algebra over the rationals.
//!
//! Ranks are computed by fraction-free elimination: every row is scaled to
//! a primitive integer vector, eliminating with pivot `p` replaces a row `r`
//! with entry `a` in the pivot column by `p*r - a*pivot_row`, and the result
//! is divided by its content again. Pivots are chosen Markowitz style: the
//! shortest row, then within it the column met by the fewest rows, then the
//! smallest entry, then the lowest index.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::SliceKey;
use crate::rational::Q;

/// A sparse matrix of exact rationals. No explicit zeros are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
  rows:    usize,
  cols:    usize,
  entries: BTreeMap<(usize, usize), Q>,
}

impl RationalMatrix {
  pub fn zeros(rows: usize, cols: usize) -> RationalMatrix { RationalMatrix { rows, cols, entries: BTreeMap::new() } }

  pub fn identity(n: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    for i in 0..n {
      m.add(i, i, &Q::from_int(1));
    }
    m
  }

  pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, Q)>) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(rows, cols);
    for (r, c, v) in triplets {
      m.add(r, c, &v);
    }
    m
  }

  pub fn rows(&self) -> usize { self.rows }

  pub fn cols(&self) -> usize { self.cols }

  pub fn nnz(&self) -> usize { self.entries.len() }

  pub fn is_zero(&self) -> bool { self.entries.is_empty() }

  pub fn get(&self, r: usize, c: usize) -> Q { self.entries.get(&(r, c)).cloned().unwrap_or_else(Q::zero) }

  /// Adds `v` to entry `(r, c)`.
  pub fn add(&mut self, r: usize, c: usize, v: &Q) {
    assert!(r < self.rows && c < self.cols, "entry ({r}, {c}) outside {}x{}", self.rows, self.cols);
    if v.is_zero() {
      return;
    }
    let e = self.entries.entry((r, c)).or_insert_with(Q::zero);
    *e += v;
    if e.is_zero() {
      self.entries.remove(&(r, c));
    }
  }

  pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Q)> { self.entries.iter().map(|(&(r, c), v)| (r, c, v)) }

  pub fn transpose(&self) -> RationalMatrix {
    RationalMatrix {
      rows:    self.cols,
      cols:    self.rows,
      entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
    }
  }

  /// `self * other`.
  pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
    if self.cols != other.rows {
      return Err(Error::ArityMismatch { expected: self.cols, got: other.rows });
    }
    let mut by_row: Vec<Vec<(usize, &Q)>> = vec![Vec::new(); other.rows];
    for (&(r, c), v) in &other.entries {
      by_row[r].push((c, v));
    }
    let mut out = RationalMatrix::zeros(self.rows, other.cols);
    for (&(r, k), a) in &self.entries {
      for &(c, b) in &by_row[k] {
        out.add(r, c, &(a * b));
      }
    }
    Ok(out)
  }

  /// Column `c` as a sparse vector.
  pub fn column(&self, c: usize) -> Vec<(usize, Q)> {
    self.entries.iter().filter(|((_, j), _)| *j == c).map(|(&(r, _), v)| (r, v.clone())).collect()
  }

  fn integer_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
    let mut rows: Vec<Vec<(usize, Q)>> = vec![Vec::new(); self.rows];
    for (&(r, c), v) in &self.entries {
      rows[r].push((c, v.clone()));
    }
    rows.into_iter().map(|r| primitive(&r)).collect()
  }

  /// Exact rank over Q.
  pub fn rank(&self) -> usize { Eliminator::new(self.cols, self.integer_rows()).run() }

  pub fn kernel_dim(&self) -> usize { self.cols - self.rank() }

  /// A basis of the null space, one sparse vector per free column of the
  /// reduced row echelon form.
  pub fn kernel_basis(&self) -> Vec<Vec<(usize, Q)>> {
    let mut rows: Vec<Vec<Q>> = vec![vec![Q::zero(); self.cols]; self.rows];
    for (&(r, c), v) in &self.entries {
      rows[r][c] = v.clone();
    }
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..self.cols {
      let Some(p) = (top..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
      rows.swap(top, p);
      let inv = rows[top][c].recip();
      rows[top].iter_mut().for_each(|x| *x = &*x * &inv);
      for r in 0..rows.len() {
        if r != top && !rows[r][c].is_zero() {
          let f = rows[r][c].clone();
          let (head, tail) = rows.split_at_mut(r.max(top));
          let (src, dst) = if r < top { (&tail[0], &mut head[r]) } else { (&head[top], &mut tail[0]) };
          for (x, y) in dst.iter_mut().zip(src) {
            *x = &*x - &(&f * y);
          }
        }
      }
      pivots.push(c);
      top += 1;
    }
    let free = (0..self.cols).filter(|c| !pivots.contains(c));
    free
      .map(|f| {
        let mut v = vec![(f, Q::from_int(1))];
        for (r, &p) in pivots.iter().enumerate() {
          if !rows[r][f].is_zero() {
            v.push((p, -&rows[r][f]));
          }
        }
        v.sort_by_key(|&(i, _)| i);
        v
      })
      .collect()
  }

  /// `true` if `v` lies in the span of the columns.
  pub fn column_span_contains(&self, v: &[(usize, Q)]) -> bool {
    let mut span = Echelon::default();
    for c in 0..self.cols {
      span.insert(self.column(c));
    }
    span.contains(v)
  }

  /// Coordinate text dump: header `rows cols nnz`, then `row col num/den` per entry.
  pub fn to_dump(&self) -> String {
    let mut s = format!("{} {} {}\n", self.rows, self.cols, self.nnz());
    for (&(r, c), v) in &self.entries {
      writeln!(s, "{r} {c} {}/{}", v.numer(), v.denom()).expect("write to string");
    }
    s
  }

  pub fn from_dump(text: &str) -> Result<RationalMatrix> {
    let bad = |msg: &str| Error::Parse(format!("matrix dump: {msg}"));
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<usize> = lines
      .next()
      .ok_or_else(|| bad("missing header"))?
      .split_whitespace()
      .map(|x| x.parse().map_err(|_| bad("bad header")))
      .collect::<Result<_>>()?;
    let [rows, cols, nnz] = header[..] else { return Err(bad("header needs three numbers")) };
    let mut m = RationalMatrix::zeros(rows, cols);
    let mut count = 0;
    for line in lines {
      let parts: Vec<&str> = line.split_whitespace().collect();
      let [r, c, v] = parts[..] else { return Err(bad("entry needs three fields")) };
      let r: usize = r.parse().map_err(|_| bad("bad row"))?;
      let c: usize = c.parse().map_err(|_| bad("bad column"))?;
      if r >= rows || c >= cols {
        return Err(bad("entry out of range"));
      }
      m.add(r, c, &v.parse::<Q>().map_err(|e| bad(&e))?);
      count += 1;
    }
    if count != nnz {
      return Err(bad("entry count does not match header"));
    }
    Ok(m)
  }
}

/// Scales a rational row to a primitive integer row with positive leading entry.
fn primitive(row: &[(usize, Q)]) -> Vec<(usize, BigInt)> {
  if row.is_empty() {
    return vec![];
  }
  let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(&v.denom()));
  let ints: Vec<(usize, BigInt)> = row.iter().map(|(c, v)| (*c, v.numer() * (&lcm / v.denom()))).collect();
  make_primitive(ints)
}

fn make_primitive(mut row: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
  let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
  if !g.is_zero() && !g.is_one() {
    for (_, v) in &mut row {
      *v /= &g;
    }
  }
  if row.first().is_some_and(|(_, v)| v.is_negative()) {
    for (_, v) in &mut row {
      *v = -&*v;
    }
  }
  row
}

struct Eliminator {
  rows:     Vec<Vec<(usize, BigInt)>>,
  col_rows: Vec<BTreeSet<usize>>,
  by_len:   BTreeSet<(usize, usize)>,
}

impl Eliminator {
  fn new(cols: usize, rows: Vec<Vec<(usize, BigInt)>>) -> Eliminator {
    let mut col_rows = vec![BTreeSet::new(); cols];
    let mut by_len = BTreeSet::new();
    for (i, r) in rows.iter().enumerate() {
      for (c, _) in r {
        col_rows[*c].insert(i);
      }
      if !r.is_empty() {
        by_len.insert((r.len(), i));
      }
    }
    Eliminator { rows, col_rows, by_len }
  }

  fn run(mut self) -> usize {
    let mut rank = 0;
    while let Some(&(_, p)) = self.by_len.iter().next() {
      self.by_len.remove(&(self.rows[p].len(), p));
      let pivot_row = std::mem::take(&mut self.rows[p]);
      for (c, _) in &pivot_row {
        self.col_rows[*c].remove(&p);
      }
      let (pc, pv) = pivot_row
        .iter()
        .min_by(|(c1, v1), (c2, v2)| {
          (self.col_rows[*c1].len(), v1.abs(), *c1).cmp(&(self.col_rows[*c2].len(), v2.abs(), *c2))
        })
        .map(|(c, v)| (*c, v.clone()))
        .expect("pivot row is nonempty");
      rank += 1;
      let targets: Vec<usize> = self.col_rows[pc].iter().copied().collect();
      for r in targets {
        let old = std::mem::take(&mut self.rows[r]);
        self.by_len.remove(&(old.len(), r));
        let a = old.iter().find(|(c, _)| *c == pc).map(|(_, v)| v.clone()).expect("row meets pivot column");
        let combined = combine(&old, &pv, &pivot_row, &a);
        for (c, _) in &old {
          self.col_rows[*c].remove(&r);
        }
        for (c, _) in &combined {
          self.col_rows[*c].insert(r);
        }
        if !combined.is_empty() {
          self.by_len.insert((combined.len(), r));
        }
        self.rows[r] = combined;
      }
    }
    rank
  }
}

/// `p * row - a * pivot`, made primitive.
fn combine(row: &[(usize, BigInt)], p: &BigInt, pivot: &[(usize, BigInt)], a: &BigInt) -> Vec<(usize, BigInt)> {
  let mut out = Vec::with_capacity(row.len() + pivot.len());
  let (mut i, mut j) = (0, 0);
  while i < row.len() || j < pivot.len() {
    let ci = row.get(i).map_or(usize::MAX, |x| x.0);
    let cj = pivot.get(j).map_or(usize::MAX, |x| x.0);
    let (c, v) = if ci < cj {
      i += 1;
      (ci, p * &row[i - 1].1)
    } else if cj < ci {
      j += 1;
      (cj, -(a * &pivot[j - 1].1))
    } else {
      i += 1;
      j += 1;
      (ci, p * &row[i - 1].1 - a * &pivot[j - 1].1)
    };
    if !v.is_zero() {
      out.push((c, v));
    }
  }
  make_primitive(out)
}

/// Row echelon form of a growing set of sparse vectors, for span membership.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
  /// Rows keyed by their leading index, normalized to leading coefficient 1.
  rows: BTreeMap<usize, Vec<(usize, Q)>>,
}

impl Echelon {
  pub fn rank(&self) -> usize { self.rows.len() }

  /// Reduces `v` against the stored rows.
  pub fn reduce(&self, v: &[(usize, Q)]) -> BTreeMap<usize, Q> {
    let mut cur: BTreeMap<usize, Q> = v.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
    let mut floor = 0;
    loop {
      let Some((&lead, c)) = cur.range(floor..).find(|(i, _)| self.rows.contains_key(i)) else { return cur };
      let c = c.clone();
      for (j, x) in &self.rows[&lead] {
        let e = cur.entry(*j).or_insert_with(Q::zero);
        *e -= &(&c * x);
        if e.is_zero() {
          cur.remove(j);
        }
      }
      floor = lead + 1;
    }
  }

  /// Adds `v`; returns `true` if it was independent of the stored rows.
  pub fn insert(&mut self, v: Vec<(usize, Q)>) -> bool {
    let cur = self.reduce(&v);
    let Some((&lead, c)) = cur.iter().next() else { return false };
    let inv = c.recip();
    self.rows.insert(lead, cur.iter().map(|(j, x)| (*j, x * &inv)).collect());
    true
  }

  pub fn contains(&self, v: &[(usize, Q)]) -> bool { self.reduce(v).is_empty() }
}

/// The homology of one slice of a chain complex.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct HomologyReport {
  pub slice:      SliceKey,
  pub dim_chains: usize,
  pub rank_in:    usize,
  pub rank_out:   usize,
  pub betti:      usize,
}

/// Betti number at the middle of `d_in` then `d_out`.
///
/// `d_out` maps the slice down, `d_in` maps into it; their composite must vanish.
pub fn homology_dim(slice: SliceKey, d_out: &RationalMatrix, d_in: &RationalMatrix) -> Result<HomologyReport> {
  if d_out.cols() != d_in.rows() {
    return Err(Error::Integrity(format!(
      "{slice}: boundary shapes {}x{} and {}x{} do not compose",
      d_out.rows(),
      d_out.cols(),
      d_in.rows(),
      d_in.cols()
    )));
  }
  if !d_out.mul(d_in)?.is_zero() {
    return Err(Error::Integrity(format!("{slice}: boundary squared is nonzero")));
  }
  let dim_chains = d_out.cols();
  let rank_out = d_out.rank();
  let rank_in = d_in.rank();
  let betti = dim_chains
    .checked_sub(rank_out + rank_in)
    .ok_or_else(|| Error::Integrity(format!("{slice}: ranks exceed chain dimension")))?;
  Ok(HomologyReport { slice, dim_chains, rank_in, rank_out, betti })
}

#[cfg(test)]
mod tests {
  use super::*;

  fn dense_rank(m: &RationalMatrix) -> usize {
    let mut a: Vec<Vec<Q>> = (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect()).collect();
    let mut rank = 0;
    for col in 0..m.cols() {
      let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
      a.swap(rank, p);
      for r in 0..a.len() {
        if r != rank && !a[r][col].is_zero() {
          let f = &a[r][col] / &a[rank][col];
          for c in 0..m.cols() {
            let s = &f * &a[rank][c];
            a[r][c] -= &s;
          }
        }
      }
      rank += 1;
    }
    rank
  }

  #[test]
  fn small_ranks() {
    assert_eq!(RationalMatrix::zeros(3, 4).rank(), 0);
    assert_eq!(RationalMatrix::identity(5).rank(), 5);
    let m = RationalMatrix::from_triplets(
      2,
      3,
      [(0, 0, Q::from_int(1)), (0, 1, Q::new(1, 2)), (1, 0, Q::from_int(2)), (1, 1, Q::from_int(1))],
    );
    assert_eq!(m.rank(), 1);
  }

  #[test]
  fn dump_roundtrip() {
    let m = RationalMatrix::from_triplets(3, 2, [(0, 1, Q::new(-3, 4)), (2, 0, Q::from_int(5))]);
    let text = m.to_dump();
    assert!(text.starts_with("3 2 2\n"));
    assert_eq!(RationalMatrix::from_dump(&text).unwrap(), m);
    assert!(RationalMatrix::from_dump("2 2 1\n0 5 1/1\n").is_err());
  }

  #[test]
  fn membership() {
    let m = RationalMatrix::from_triplets(3, 2, [(0, 0, Q::from_int(1)), (1, 0, Q::from_int(1)), (2, 1, Q::from_int(2))]);
    assert!(m.column_span_contains(&[(0, Q::from_int(3)), (1, Q::from_int(3)), (2, Q::from_int(1))]));
    assert!(!m.column_span_contains(&[(0, Q::from_int(1))]));
  }

  #[test]
  fn homology_rejects_nonzero_square() {
    let key = SliceKey { kind: crate::operad::OperadKind::Com, n: 1, k: 1, d: 1, r: 0, h: 3 };
    let a = RationalMatrix::identity(2);
    assert!(matches!(homology_dim(key, &a, &a), Err(Error::Integrity(_))));
    let z = RationalMatrix::zeros(2, 0);
    let rep = homology_dim(key, &RationalMatrix::zeros(0, 2), &z).unwrap();
    assert_eq!(rep.betti, 2);
  }

  proptest::proptest! {
    #[test]
    fn rank_agrees_with_dense_and_transpose(
      entries in proptest::collection::vec((0usize..7, 0usize..9, -2i64..=2), 0..40)
    ) {
      let m = RationalMatrix::from_triplets(7, 9, entries.into_iter().map(|(r, c, v)| (r, c, Q::from_int(v))));
      let r = m.rank();
      proptest::prop_assert_eq!(r, dense_rank(&m));
      proptest::prop_assert_eq!(r, m.transpose().rank());
    }

    #[test]
    fn kernel_basis_is_annihilated_and_complete(
      entries in proptest::collection::vec((0usize..5, 0usize..8, -3i64..=3), 0..30)
    ) {
      let m = RationalMatrix::from_triplets(5, 8, entries.into_iter().map(|(r, c, v)| (r, c, Q::from_int(v))));
      let kernel = m.kernel_basis();
      proptest::prop_assert_eq!(kernel.len(), m.kernel_dim());
      let k = RationalMatrix::from_triplets(
        8,
        kernel.len(),
        kernel.iter().enumerate().flat_map(|(j, v)| v.iter().map(move |(i, x)| (*i, j, x.clone()))),
      );
      proptest::prop_assert!(m.mul(&k).unwrap().is_zero());
      proptest::prop_assert_eq!(k.rank(), kernel.len());
    }
  }
}
