use hairy::closed_forms::{h12_dim_closed, lambda_table, rank2_poly_dim, weyl_dim_two_row, Partition2};
use hairy::graph::SliceKey;
use hairy::homology::{basis, slice_homology};
use hairy::operad::OperadKind;

/// Semistandard tableaux of shape `(k, l)` with entries below `n`, counted
/// by listing both rows.
fn ssyt(k: usize, l: usize, n: usize) -> usize {
  fn rows(len: usize, n: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == len {
      out.push(cur.clone());
      return;
    }
    for x in from..n {
      cur.push(x);
      rows(len, n, x, cur, out);
      cur.pop();
    }
  }
  let (mut top, mut bottom) = (Vec::new(), Vec::new());
  rows(k, n, 0, &mut Vec::new(), &mut top);
  rows(l, n, 0, &mut Vec::new(), &mut bottom);
  top.iter().map(|t| bottom.iter().filter(|b| b.iter().zip(t).all(|(x, y)| x > y)).count()).sum()
}

#[test]
fn weyl_dimensions_count_tableaux() {
  for dim_v in 1..=4 {
    for size in 0..=8 {
      for l in 0..=size / 2 {
        let p = Partition2::new(size - l, l).unwrap();
        assert_eq!(weyl_dim_two_row(p, dim_v).unwrap(), ssyt(size - l, l, dim_v), "{p} in dimension {dim_v}");
      }
    }
  }
}

#[test]
fn closed_form_sums_the_table() {
  for (h, entries) in lambda_table(14) {
    let sum: usize = entries.iter().map(|&(p, m)| m * (p.k - p.l + 1)).sum();
    assert_eq!(h12_dim_closed(2, h).unwrap(), sum, "h = {h}");
  }
}

#[test]
fn polynomial_model_matches_closed_form() {
  for n in 1..=2 {
    for h in (2..=10).step_by(2) {
      assert_eq!(rank2_poly_dim(n, h).unwrap(), h12_dim_closed(2 * n, h).unwrap(), "n = {n}, h = {h}");
    }
  }
}

/// The alternating sum of chain dimensions equals that of Betti numbers.
#[test]
fn euler_characteristics_agree() {
  for kind in [OperadKind::Com, OperadKind::Assoc, OperadKind::Lie] {
    for d in 1..=4 {
      for r in 0..=d + 1 {
        for h in 0..=3 * d {
          let (mut chains, mut betti) = (0i64, 0i64);
          for k in 1..=d {
            let key = SliceKey { kind, n: 1, k, d, r, h };
            if key.validate().is_err() || key.components() != Some(1) {
              continue;
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            chains += sign * basis(&key, true).unwrap().len() as i64;
            betti += sign * slice_homology(&key, true).unwrap().betti as i64;
          }
          assert_eq!(chains, betti, "{kind} d={d} r={r} h={h}");
        }
      }
    }
  }
}
