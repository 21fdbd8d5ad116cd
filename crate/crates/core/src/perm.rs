//! Small permutation helpers shared by the operad and graph code.

/// `true` if `p` is a permutation of `0..p.len()`.
pub fn is_permutation(p: &[usize]) -> bool {
  let mut seen = vec![false; p.len()];
  for &x in p {
    if x >= p.len() || seen[x] {
      return false;
    }
    seen[x] = true;
  }
  true
}

/// Sign of a permutation given in one-line notation.
pub fn sign(p: &[usize]) -> i64 {
  let mut seen = vec![false; p.len()];
  let mut s = 1;
  for start in 0..p.len() {
    if seen[start] {
      continue;
    }
    let mut len = 0;
    let mut i = start;
    while !seen[i] {
      seen[i] = true;
      i = p[i];
      len += 1;
    }
    if len % 2 == 0 {
      s = -s;
    }
  }
  s
}

/// `(a ∘ b)(i) = a[b[i]]`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> { b.iter().map(|&i| a[i]).collect() }

pub fn inverse(p: &[usize]) -> Vec<usize> {
  let mut inv = vec![0; p.len()];
  for (i, &x) in p.iter().enumerate() {
    inv[x] = i;
  }
  inv
}

pub fn factorial(n: usize) -> usize { (1..=n).product() }

/// Lexicographic rank of `seq` among all orderings of its (distinct) elements.
pub fn rank_arrangement(seq: &[u8]) -> usize {
  let mut rank = 0;
  let n = seq.len();
  for i in 0..n {
    let smaller = seq[i + 1..].iter().filter(|&&x| x < seq[i]).count();
    rank += smaller * factorial(n - 1 - i);
  }
  rank
}

/// Inverse of [`rank_arrangement`] over the sorted element set `elems`.
pub fn unrank_arrangement(elems: &[u8], mut rank: usize) -> Vec<u8> {
  let mut pool: Vec<u8> = elems.to_vec();
  pool.sort_unstable();
  let mut out = Vec::with_capacity(pool.len());
  while !pool.is_empty() {
    let f = factorial(pool.len() - 1);
    let i = rank / f;
    rank %= f;
    out.push(pool.remove(i));
  }
  out
}

/// Visits every permutation of `0..n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
  let mut p: Vec<usize> = (0..n).collect();
  loop {
    f(&p);
    // next lexicographic permutation
    let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { return };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
  }
}
