use proptest::prelude::*;

use hairy::graph::{boundary_chain, Chain};
use hairy::operad::{self, OperadKind};
use hairy::rational::Q;
use hairy::spider::{bracket, ce_boundary, wedge, BasicSpider, LieElement};
use hairy::symplectic::SymplecticSpace;
use hairy::trace::{exp_neg_t, exp_t, trace};

fn kind() -> impl Strategy<Value = OperadKind> {
  prop_oneof![Just(OperadKind::Com), Just(OperadKind::Assoc), Just(OperadKind::Lie)]
}

fn spider(kind: OperadKind, max_arity: usize) -> impl Strategy<Value = BasicSpider> {
  let labels = SymplecticSpace::new(2).unwrap().basis();
  (3..=max_arity).prop_flat_map(move |m| {
    let basis = operad::basis(kind, m).unwrap();
    let labels = labels.clone();
    (0..basis.len(), proptest::collection::vec(0..labels.len(), m))
      .prop_map(move |(i, ls)| BasicSpider::new(basis[i].clone(), ls.iter().map(|&l| labels[l]).collect()).unwrap())
  })
}

fn spiders(count: usize, max_arity: usize) -> impl Strategy<Value = Vec<BasicSpider>> {
  kind().prop_flat_map(move |k| proptest::collection::vec(spider(k, max_arity), count))
}

fn sum(terms: &[&LieElement]) -> Chain {
  let mut out = Chain::zero();
  for t in terms {
    out.add_scaled(&t.0, &Q::from_int(1));
  }
  out
}

proptest! {
  #![proptest_config(ProptestConfig::with_cases(64))]

  #[test]
  fn bracket_is_antisymmetric(s in spiders(2, 5)) {
    let (a, b) = (s[0].element(), s[1].element());
    let ab = bracket(&a, &b).unwrap();
    let ba = bracket(&b, &a).unwrap();
    prop_assert!(sum(&[&ab, &ba]).is_zero());
  }

  #[test]
  fn jacobi_identity(s in spiders(3, 4)) {
    let (a, b, c) = (s[0].element(), s[1].element(), s[2].element());
    let x = bracket(&a, &bracket(&b, &c).unwrap()).unwrap();
    let y = bracket(&b, &bracket(&c, &a).unwrap()).unwrap();
    let z = bracket(&c, &bracket(&a, &b).unwrap()).unwrap();
    prop_assert!(sum(&[&x, &y, &z]).is_zero());
  }

  #[test]
  fn wedge_is_alternating(s in spiders(3, 4)) {
    let w = wedge(&s).unwrap();
    let swapped = wedge(&[s[1].clone(), s[0].clone(), s[2].clone()]).unwrap();
    let mut total = w.clone();
    total.add_scaled(&swapped, &Q::from_int(1));
    prop_assert!(total.is_zero());
    let rotated = wedge(&[s[1].clone(), s[2].clone(), s[0].clone()]).unwrap();
    prop_assert_eq!(rotated, w);
  }

  #[test]
  fn ce_boundary_squares_to_zero_on_four_factors(s in spiders(4, 3)) {
    let w = wedge(&s).unwrap();
    prop_assert!(ce_boundary(&ce_boundary(&w)).is_zero());
  }

  #[test]
  fn exp_t_is_inverted(s in spiders(2, 4)) {
    let w = wedge(&s).unwrap();
    prop_assert_eq!(exp_neg_t(&exp_t(&w)), w.clone());
    prop_assert_eq!(exp_t(&exp_neg_t(&w)), w);
  }

  #[test]
  fn trace_is_a_chain_map_on_random_wedges(s in spiders(3, 4)) {
    let w = wedge(&s).unwrap();
    prop_assert_eq!(boundary_chain(&trace(&w).unwrap()), trace(&ce_boundary(&w)).unwrap());
  }
}
