use proptest::prelude::*;

use xchain::bias::{bias_degree, is_balanced, negative_weight, overlap};
use xchain::gf2::{complement_basis, intersect, kernel, rref};
use xchain::graphs::{canonical_form, emit_graph6, parse_graph6};
use xchain::oracle::{dense_overlap, dense_state_z};
use xchain::stab::{cut_parity, induced_stabilizer, multiply, stabilizer_parity};
use xchain::{Basis, BitMatrix, BitVec, DyadicReal, Graph, Sign};

fn matrix(max_width: usize, max_rows: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_width, 0..=max_rows).prop_flat_map(|(w, r)| {
        prop::collection::vec(0..(1u32 << w), r)
            .prop_map(move |rows| BitMatrix::new(w, rows.into_iter().map(|b| BitVec::masked(w, b)).collect()).unwrap())
    })
}

fn graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, any::<u64>()).prop_map(|(n, mask)| Graph::from_pair_mask(n, mask).unwrap())
}

fn graph_with_sets(max_n: usize) -> impl Strategy<Value = (Graph, BitVec, BitVec, BitVec)> {
    graph(1, max_n).prop_flat_map(|g| {
        let n = g.n();
        let set = move || (0..(1u32 << n)).prop_map(move |b| BitVec::masked(n, b));
        (Just(g), set(), set(), set())
    })
}

fn span_set(b: &Basis) -> std::collections::BTreeSet<BitVec> {
    b.elements().into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix(16, 16)) {
        let k = kernel(&m);
        for v in k.rows() {
            prop_assert!(m.mul_vec(*v).is_zero());
        }
        let (_, rank) = rref(&m);
        prop_assert_eq!(rank + k.dim(), m.width());
    }

    #[test]
    fn rref_ignores_row_order(rows in prop::collection::vec(0u32..1 << 12, 0..12).prop_shuffle(), seed in any::<u64>()) {
        let vecs: Vec<BitVec> = rows.iter().map(|&b| BitVec::masked(12, b)).collect();
        let mut shuffled = vecs.clone();
        shuffled.rotate_left(if vecs.is_empty() { 0 } else { (seed as usize) % vecs.len() });
        shuffled.reverse();
        prop_assert_eq!(rref(&BitMatrix::new(12, vecs).unwrap()).0, rref(&BitMatrix::new(12, shuffled).unwrap()).0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn complements_split_uniquely(
        w in 1usize..=6,
        sup_rows in prop::collection::vec(any::<u32>(), 0..6),
        picks in prop::collection::vec(any::<u64>(), 0..4),
    ) {
        let mask = (1u32 << w) - 1;
        let sup_vecs: Vec<BitVec> = sup_rows.iter().map(|&b| BitVec::masked(w, b & mask)).collect();
        let sup = Basis::span_of(w, &sup_vecs).unwrap();
        let sub_vecs: Vec<BitVec> = picks.iter().map(|&c| sup.combine(c)).collect();
        let sub = Basis::span_of(w, &sub_vecs).unwrap();
        let c = complement_basis(&sub, &sup).unwrap();
        prop_assert_eq!(sub.dim() + c.dim(), sup.dim());
        for v in sup.elements() {
            let splits = sub.elements().iter().flat_map(|s| c.elements().into_iter().map(move |x| *s ^ x)).filter(|x| *x == v).count();
            prop_assert_eq!(splits, 1);
        }
    }

    #[test]
    fn intersections_match_brute_force(
        w in 1usize..=8,
        a in prop::collection::vec(any::<u32>(), 0..5),
        b in prop::collection::vec(any::<u32>(), 0..5),
    ) {
        let mask = (1u32 << w) - 1;
        let span = |rows: &[u32]| {
            let v: Vec<BitVec> = rows.iter().map(|&x| BitVec::masked(w, x & mask)).collect();
            Basis::span_of(w, &v).unwrap()
        };
        let (sa, sb) = (span(&a), span(&b));
        let ours = span_set(&intersect(&sa, &sb).unwrap());
        let brute: std::collections::BTreeSet<BitVec> = span_set(&sa).intersection(&span_set(&sb)).copied().collect();
        prop_assert_eq!(ours, brute);
    }

    #[test]
    fn parsers_round_trip(g in graph(1, 12)) {
        let g6 = emit_graph6(&g);
        let back = parse_graph6(&g6).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(&Graph::parse_edge_list(&g.to_edge_list()).unwrap(), &g);
        for v in 1..=g.n() {
            prop_assert!(!back.neighbors(v).contains(v));
            for u in back.neighbors(v).vertices() {
                prop_assert!(back.neighbors(u).contains(v));
            }
        }
    }

    #[test]
    fn symmetric_difference_is_a_group(n in 1usize..=8, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (g, h, k) = (
            Graph::from_pair_mask(n, a).unwrap(),
            Graph::from_pair_mask(n, b).unwrap(),
            Graph::from_pair_mask(n, c).unwrap(),
        );
        let e = Graph::empty(n).unwrap();
        prop_assert_eq!(g.symmetric_difference(&h).unwrap(), h.symmetric_difference(&g).unwrap());
        prop_assert_eq!(
            g.symmetric_difference(&h).unwrap().symmetric_difference(&k).unwrap(),
            g.symmetric_difference(&h.symmetric_difference(&k).unwrap()).unwrap()
        );
        prop_assert_eq!(&g.symmetric_difference(&e).unwrap(), &g);
        prop_assert_eq!(g.symmetric_difference(&g).unwrap(), e);
    }

    #[test]
    fn canonical_form_is_certified(g in graph(1, 6), perm_seed in any::<u64>()) {
        let (canon, perm) = canonical_form(&g).unwrap();
        prop_assert_eq!(&g.relabeled(&perm).unwrap(), &canon);
        prop_assert_eq!(canon.edge_count(), g.edge_count());
        // any relabeling lands on the same canonical graph
        let mut p: Vec<usize> = (1..=g.n()).collect();
        let mut s = perm_seed;
        for i in (1..p.len()).rev() {
            p.swap(i, (s % (i as u64 + 1)) as usize);
            s /= i as u64 + 1;
        }
        let other = g.relabeled(&p).unwrap();
        prop_assert_eq!(canonical_form(&other).unwrap().0, canon);
        prop_assert_eq!(is_balanced(&other), is_balanced(&g));
    }

    #[test]
    fn stabilizer_products_are_homomorphic((g, a, b, c) in graph_with_sets(10)) {
        let (sa, sb) = (induced_stabilizer(&g, a).unwrap(), induced_stabilizer(&g, b).unwrap());
        prop_assert_eq!(multiply(&g, &sa, &sb).unwrap(), induced_stabilizer(&g, a ^ b).unwrap());
        prop_assert_eq!(sa.product(&sb).unwrap(), induced_stabilizer(&g, a ^ b).unwrap());
        let cut = |x, y| cut_parity(&g, x, y).unwrap();
        prop_assert_eq!(cut(a, b), cut(b, a));
        prop_assert_eq!(cut(a ^ c, b), cut(a, b) ^ cut(c, b));
        prop_assert_eq!(cut(a, b ^ c), cut(a, b) ^ cut(a, c));
        let pi = |x| stabilizer_parity(&g, x).unwrap();
        prop_assert_eq!(pi(a) * pi(b) * pi(a ^ b), Sign::from_parity(cut(a, b)));
    }

    #[test]
    fn overlaps_are_symmetric_and_exact(n in 1usize..=10, a in any::<u64>(), b in any::<u64>()) {
        let (g, h) = (Graph::from_pair_mask(n, a).unwrap(), Graph::from_pair_mask(n, b).unwrap());
        let o = overlap(&g, &h).unwrap();
        prop_assert_eq!(o, overlap(&h, &g).unwrap());
        prop_assert_eq!(o, dense_overlap(&g, &h).unwrap());
        prop_assert_eq!(dense_overlap(&h, &g).unwrap(), o);
        prop_assert!(o.squared() <= num_rational::Ratio::from_integer(1));
    }

    #[test]
    fn negative_weight_counts_minus_signs(g in graph(1, 10)) {
        let dense = dense_state_z::<i64>(&g).unwrap();
        let minus = dense.amps.iter().filter(|&&a| a < 0).count() as u64;
        prop_assert_eq!(negative_weight(&g).unwrap(), minus);
    }
}

#[test]
fn exhaustive_pairs_up_to_five_vertices() {
    for n in 1..=5 {
        let pairs = n * (n - 1) / 2;
        for mask in 0..1u64 << pairs {
            let g = Graph::from_pair_mask(n, mask).unwrap();
            for x in 0..1u32 << n {
                for y in 0..1u32 << n {
                    let (a, b) = (BitVec::masked(n, x), BitVec::masked(n, y));
                    let s = multiply(&g, &induced_stabilizer(&g, a).unwrap(), &induced_stabilizer(&g, b).unwrap()).unwrap();
                    assert_eq!(s, induced_stabilizer(&g, a ^ b).unwrap());
                }
            }
        }
    }
}

#[test]
fn bias_is_normalized_parity_sum() {
    // β = 2^{-n} Σ_ξ π(ξ) for every graph up to six vertices
    for n in 1..=6 {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            let g = Graph::from_pair_mask(n, mask).unwrap();
            let sum: i64 = dense_state_z::<i64>(&g).unwrap().amps.iter().sum();
            assert_eq!(bias_degree(&g).unwrap(), DyadicReal::from_ratio(sum as i128, n as u32).unwrap(), "{g:?}");
        }
    }
}

#[test]
fn pair_overlaps_exhaustive_to_four_vertices() {
    for n in 1..=4 {
        let count = 1u64 << (n * (n - 1) / 2);
        for a in 0..count {
            for b in 0..count {
                let (g, h) = (Graph::from_pair_mask(n, a).unwrap(), Graph::from_pair_mask(n, b).unwrap());
                assert_eq!(overlap(&g, &h).unwrap(), dense_overlap(&g, &h).unwrap());
            }
        }
    }
}

#[test]
fn balance_is_isomorphism_invariant() {
    for n in 1..=5 {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            let g = Graph::from_pair_mask(n, mask).unwrap();
            let (canon, _) = canonical_form(&g).unwrap();
            assert_eq!(is_balanced(&g), is_balanced(&canon));
            assert_eq!(bias_degree(&g).unwrap(), bias_degree(&canon).unwrap());
        }
    }
}
