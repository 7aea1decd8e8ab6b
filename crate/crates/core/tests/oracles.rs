//! Identities between independent routes to the same polynomial, checked
//! exhaustively on small graphs and by property tests on random ones.

mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use homopoly::graph::{canonical_form, enumerate_graphs, parse_graph6};
use homopoly::homopoly::{complete_multipartite, join_poly};
use homopoly::poly::{y_index, Polynomial, Substitution, VarSpace};
use homopoly::specialize::{colour_count, hardcore_partition, ising_direct, potts_direct};
use homopoly::subset::{
    random_cluster, random_cluster_from_u, strong_u_polynomial, u_from_strong_u, u_polynomial, u_space,
};
use homopoly::treewidth::{dp_hom_poly, exact_treewidth};
use homopoly::{hom_poly, Budget, Graph};

fn p(g: &Graph, q: usize) -> Polynomial {
    hom_poly(g, q, Budget::default()).unwrap()
}

fn graph(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Graph> {
    n.prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

#[test]
fn sweep_through_six_vertices() {
    let (graphs, checks) = common::sweep(6).unwrap();
    assert_eq!(graphs, 1 + 2 + 4 + 11 + 34 + 156);
    assert!(checks > 20 * graphs);
}

#[test]
fn enumeration_counts_and_graph6_round_trip() {
    let expected = [1, 2, 4, 11, 34, 156, 1044];
    for (n, &count) in (1..=7).zip(&expected) {
        let graphs = enumerate_graphs(n).unwrap();
        assert_eq!(graphs.len(), count, "n = {n}");
        for g in &graphs {
            let text = g.to_graph6();
            let back = parse_graph6(&text).unwrap();
            assert_eq!(&back, g);
            assert_eq!(back.to_graph6(), text);
            assert_eq!(&g.complement().complement(), g);
        }
    }
}

#[test]
fn complete_graphs_match_brute_force_at_order_four() {
    for n in 1..=6 {
        let k = Graph::complete(n).unwrap();
        assert_eq!(
            homopoly::homopoly::hom_poly_complete(n, 4).unwrap(),
            common::brute_hom_poly(&k, 4),
            "n = {n}"
        );
    }
}

#[test]
fn multipartite_closed_form() {
    for parts in [vec![1, 1], vec![2, 3], vec![1, 2, 2], vec![3, 3]] {
        let n: usize = parts.iter().sum();
        let mut edges = Vec::new();
        let mut part = Vec::new();
        for (i, &t) in parts.iter().enumerate() {
            part.extend(std::iter::repeat_n(i, t));
        }
        for v in 0..n {
            for u in 0..v {
                if part[u] != part[v] {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        for q in [2, 3] {
            assert_eq!(
                complete_multipartite(&parts, q).unwrap(),
                p(&g, q),
                "{parts:?}, q = {q}"
            );
        }
    }
}

/// Embeds a U-polynomial on `n` vertices into the space for `total`.
fn widen_u(u: &Polynomial, total: usize) -> Polynomial {
    u.substitute(&Substitution::new(&u_space(total))).unwrap()
}

/// Permutes the colours of `P_q`: `x_i -> x_pi(i)`, `y_ij -> y_pi(i)pi(j)`.
fn permute_colours(poly: &Polynomial, q: usize, pi: &[usize]) -> Polynomial {
    let space = VarSpace::homomorphism(q);
    let names = space.names();
    let mut s = Substitution::new(&space).strict(true);
    for i in 0..q {
        s = s.map_monomial(&names[i], &[(&names[pi[i]], 1)]).unwrap();
        for j in i..q {
            let image = &names[y_index(q, pi[i].min(pi[j]) + 1, pi[i].max(pi[j]) + 1)];
            s = s.map_monomial(&names[y_index(q, i + 1, j + 1)], &[(image, 1)]).unwrap();
        }
    }
    poly.substitute(&s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn decomposition_dp_on_larger_graphs(g in graph(8..=10)) {
        let (_, td) = exact_treewidth(&g).unwrap();
        td.validate(&g).unwrap();
        prop_assert_eq!(dp_hom_poly(&g, &td, 2).unwrap(), p(&g, 2));
    }

    #[test]
    fn treewidth_ignores_labels(g in graph(1..=9), perms in proptest::collection::vec(permutation(9), 20)) {
        let (width, _) = exact_treewidth(&g).unwrap();
        for perm in perms {
            let perm: Vec<usize> = perm.into_iter().filter(|&v| v < g.n()).collect();
            let h = g.relabel(&perm);
            let (w, td) = exact_treewidth(&h).unwrap();
            td.validate(&h).unwrap();
            prop_assert_eq!(w, width);
        }
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph(1..=10), perms in proptest::collection::vec(permutation(10), 100)) {
        let c = canonical_form(&g).graph6;
        for perm in perms {
            let perm: Vec<usize> = perm.into_iter().filter(|&v| v < g.n()).collect();
            prop_assert_eq!(&canonical_form(&g.relabel(&perm)).graph6, &c);
        }
    }

    #[test]
    fn disjoint_union_multiplies(a in graph(1..=4), b in graph(1..=3), q in 2usize..=3) {
        let u = a.disjoint_union(&b).unwrap();
        prop_assert_eq!(p(&u, q), &p(&a, q) * &p(&b, q));
    }

    #[test]
    fn join_from_parts(a in graph(1..=4), b in graph(1..=3), q in 2usize..=3) {
        let j = a.join(&b).unwrap();
        prop_assert_eq!(join_poly(&p(&a, q), a.n(), &p(&b, q), b.n()).unwrap(), p(&j, q));
        prop_assert_eq!(j, a.complement().disjoint_union(&b.complement()).unwrap().complement());
    }

    #[test]
    fn u_of_disjoint_union_multiplies(a in graph(1..=5), b in graph(1..=4)) {
        let total = a.n() + b.n();
        let u = u_polynomial(&a.disjoint_union(&b).unwrap()).unwrap();
        let product = &widen_u(&u_polynomial(&a).unwrap(), total) * &widen_u(&u_polynomial(&b).unwrap(), total);
        prop_assert_eq!(u, product);
    }

    #[test]
    fn projections_of_u(g in graph(1..=9)) {
        let u = u_polynomial(&g).unwrap();
        prop_assert_eq!(random_cluster_from_u(&u, g.n(), g.m()).unwrap(), random_cluster(&g).unwrap());
        prop_assert_eq!(u_from_strong_u(&strong_u_polynomial(&g).unwrap(), g.n()).unwrap(), u);
    }

    #[test]
    fn degrees_and_colour_symmetry(g in graph(1..=6), q in 2usize..=4, pi in permutation(4)) {
        let poly = p(&g, q);
        for (m, _) in poly.terms() {
            let e = m.exponents();
            prop_assert_eq!(e[..q].iter().sum::<i32>() as usize, g.n());
            prop_assert_eq!(e[q..].iter().sum::<i32>() as usize, g.m());
        }
        let pi: Vec<usize> = pi.into_iter().filter(|&c| c < q).collect();
        prop_assert_eq!(permute_colours(&poly, q, &pi), poly);
    }

    #[test]
    fn specialization_totals(g in graph(1..=8), q in 2usize..=3) {
        let n = g.n() as u32;
        prop_assert_eq!(ising_direct(&g).unwrap().coefficient_sum(), BigInt::from(2).pow(n));
        prop_assert_eq!(potts_direct(&g, q, Budget::default()).unwrap().coefficient_sum(), BigInt::from(q).pow(n));
        let at_h1 = hardcore_partition(&g)
            .unwrap()
            .substitute(&Substitution::new(&VarSpace::new(["x"])).map_const("h", 1))
            .unwrap();
        let one_plus_x = Polynomial::univariate("x", [1, 1]);
        prop_assert_eq!(at_h1, one_plus_x.pow(n));
    }

    #[test]
    fn colour_counts_by_backtracking(g in graph(1..=7), k in 1usize..=4) {
        prop_assert_eq!(colour_count(&g, k), u128::from(common::brute_colourings(&g, k)));
    }
}
