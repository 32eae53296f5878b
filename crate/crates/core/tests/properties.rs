use operadcalc::classical::{
    classical_cocycle_defect, lyndon_basis, lyndon_coordinates, ClassicalDerivation, Operad, WordSum,
};
use operadcalc::divergence::{cocycle_defect_sum, div_sum};
use operadcalc::freeder::{
    act_sum, bracket_sum, pointed_product_trees, prelie_sum, spine_factorize, trace_class_sum, Necklace, TreeSum,
};
use operadcalc::linear::{kernel, rank_of, FormalSum, Scalar, Subspace};
use operadcalc::trees::{enumerate_trees, parse_label_set, GeneratorSet, Label, LabeledTree};
use proptest::prelude::*;
use proptest::sample::select;

fn labels(s: &str) -> Vec<Label> {
    parse_label_set(s).unwrap()
}

fn trees(s: &str, degrees: std::ops::RangeInclusive<usize>) -> Vec<LabeledTree> {
    let ls = labels(s);
    degrees.flat_map(|n| enumerate_trees(&ls, &GeneratorSet::binary(), n, None, None)).collect()
}

fn sum_over(basis: Vec<LabeledTree>, max_terms: usize) -> impl Strategy<Value = TreeSum> {
    prop::collection::vec((select(basis), -3i64..=3), 1..=max_terms)
        .prop_map(|terms| terms.into_iter().map(|(t, c)| (t, Scalar::from(c))).collect())
}

fn pointed(n: std::ops::RangeInclusive<usize>) -> Vec<LabeledTree> {
    let ls = labels("x,y,z");
    let z = Label::new("z").unwrap();
    n.flat_map(|k| enumerate_trees(&ls, &GeneratorSet::binary(), k, Some(&z), None))
        .filter(|t| t.classify().is_pointed())
        .collect()
}

fn lie_derivation(rank: usize, max_degree: usize) -> impl Strategy<Value = ClassicalDerivation> {
    let basis: Vec<WordSum> =
        (2..=max_degree + 1).flat_map(|len| lyndon_basis(rank, len)).map(|m| m.expand()).collect();
    prop::collection::vec(prop::collection::vec((select(basis), -2i64..=2), 0..=2), rank).prop_map(move |imgs| {
        let images = imgs
            .into_iter()
            .map(|terms| {
                let mut s = WordSum::zero();
                for (w, c) in terms {
                    s.add_scaled(&Scalar::from(c), &w);
                }
                s
            })
            .collect();
        ClassicalDerivation::new(Operad::Lie, rank, images).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn prelie_is_right_symmetric(
        a in sum_over(trees("x,y", 1..=2), 3),
        b in sum_over(trees("x,y", 1..=2), 3),
        c in sum_over(trees("x,y", 1..=1), 3),
    ) {
        let assoc = |p: &TreeSum, q: &TreeSum, r: &TreeSum| {
            prelie_sum(&prelie_sum(p, q), r) - prelie_sum(p, &prelie_sum(q, r))
        };
        prop_assert_eq!(assoc(&a, &b, &c), assoc(&a, &c, &b));
    }

    #[test]
    fn bracket_satisfies_jacobi(
        a in sum_over(trees("x,y", 1..=1), 3),
        b in sum_over(trees("x,y", 1..=1), 3),
        c in sum_over(trees("x,y", 1..=2), 2),
    ) {
        let j = bracket_sum(&bracket_sum(&a, &b), &c)
            + bracket_sum(&bracket_sum(&b, &c), &a)
            + bracket_sum(&bracket_sum(&c, &a), &b);
        prop_assert!(j.is_zero(), "{}", j);
        prop_assert_eq!(bracket_sum(&a, &b), -bracket_sum(&b, &a));
    }

    #[test]
    fn divergence_is_a_cocycle(
        d in sum_over(trees("x,y", 1..=2), 3),
        e in sum_over(trees("x,y", 1..=2), 3),
    ) {
        let defect = cocycle_defect_sum(&d, &e);
        prop_assert!(defect.is_zero(), "{}", defect);
    }

    #[test]
    fn trace_action_is_a_lie_action(
        t in sum_over(pointed(1..=2), 2),
        d in sum_over(trees("x,y", 1..=1), 2),
        e in sum_over(trees("x,y", 1..=1), 2),
    ) {
        let z = Label::new("z").unwrap();
        let tau = trace_class_sum(&t);
        let lhs = act_sum(&tau, &bracket_sum(&d, &e), &z);
        let rhs = act_sum(&act_sum(&tau, &d, &z), &e, &z) - act_sum(&act_sum(&tau, &e, &z), &d, &z);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pointed_product_is_associative(
        p in select(pointed(0..=2)),
        q in select(pointed(0..=2)),
        r in select(pointed(0..=1)),
    ) {
        let z = Label::new("z").unwrap();
        let left = pointed_product_trees(&pointed_product_trees(&p, &q, &z), &r, &z);
        let right = pointed_product_trees(&p, &pointed_product_trees(&q, &r, &z), &z);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn spine_factorization_multiplies_back(p in select(pointed(0..=4))) {
        let z = Label::new("z").unwrap();
        let factors = spine_factorize(&p).unwrap();
        prop_assert_eq!(factors.iter().map(LabeledTree::degree).sum::<usize>(), p.degree());
        let unit = LabeledTree::degenerate(z.clone(), z.clone());
        let back = factors.iter().fold(unit, |acc, f| pointed_product_trees(&acc, f, &z));
        prop_assert_eq!(back, p);
    }

    #[test]
    fn necklaces_ignore_rotation(p in select(pointed(1..=2)), q in select(pointed(1..=2))) {
        let z = Label::new("z").unwrap();
        let pq = trace_class_sum(&FormalSum::basis(pointed_product_trees(&p, &q, &z)));
        let qp = trace_class_sum(&FormalSum::basis(pointed_product_trees(&q, &p, &z)));
        prop_assert_eq!(pq, qp);
    }

    #[test]
    fn graft_adds_leaves(s in select(trees("x,y", 0..=2)), t in select(trees("x,y", 0..=2)), i in 1usize..=3) {
        prop_assume!(i <= s.leaf_count());
        let g = s.graft(i, &t).unwrap();
        prop_assert_eq!(g.leaf_count(), s.leaf_count() - 1 + t.leaf_count());
        prop_assert_eq!(g.degree(), s.degree() + t.degree());
        prop_assert_eq!(g.root(), s.root());
    }

    #[test]
    fn prune_then_graft_is_identity(t in select(trees("x,y", 2..=4)), k in 0usize..8) {
        let edges = t.internal_edges();
        let edge = edges[k % edges.len()];
        let (lower, upper) = t.prune(edge).unwrap();
        prop_assert_eq!(lower.degree() + upper.degree(), t.degree());
        let pos = lower.leaf_positions(&Label::plus());
        prop_assert_eq!(pos.len(), 1);
        prop_assert_eq!(lower.graft(pos[0], &upper).unwrap(), t);
    }

    #[test]
    fn key_round_trips_through_the_parser(t in select(trees("x,y,z", 0..=3))) {
        let back = LabeledTree::parse(&GeneratorSet::binary(), t.key()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn kernel_vectors_are_relations(vs in prop::collection::vec(sum_over(trees("x,y", 1..=1), 3), 1..=6)) {
        let rank = rank_of(&vs);
        let ker = kernel(&vs);
        prop_assert_eq!(rank + ker.len(), vs.len());
        for k in &ker {
            let mut total = TreeSum::zero();
            for (i, c) in k {
                total.add_scaled(c, &vs[*i]);
            }
            prop_assert!(total.is_zero());
        }
    }

    #[test]
    fn reduction_stays_in_the_coset(
        vs in prop::collection::vec(sum_over(trees("x,y", 1..=1), 3), 1..=4),
        v in sum_over(trees("x,y", 1..=1), 4),
    ) {
        let s = Subspace::span(vs.iter());
        for g in &vs {
            prop_assert!(s.contains(g));
        }
        let r = s.reduce(&v);
        prop_assert!(s.contains(&(v.clone() - r.clone())));
        prop_assert_eq!(s.reduce(&r), r.clone());
        prop_assert_eq!(s.contains(&v), r.is_zero());
    }

    #[test]
    fn divergence_is_linear(
        d in sum_over(trees("x,y", 1..=2), 3),
        e in sum_over(trees("x,y", 1..=2), 3),
        c in -3i64..=3,
    ) {
        let mut de = d.clone();
        de.add_scaled(&Scalar::from(c), &e);
        let mut expected: FormalSum<Necklace> = div_sum(&d);
        expected.add_scaled(&Scalar::from(c), &div_sum(&e));
        prop_assert_eq!(div_sum(&de), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lie_brackets_stay_lie(d in lie_derivation(2, 2), e in lie_derivation(2, 1)) {
        let b = d.bracket(&e).unwrap();
        for img in b.images() {
            prop_assert!(lyndon_coordinates(img).is_ok());
        }
    }

    #[test]
    fn classical_divergence_is_a_cocycle(d in lie_derivation(2, 2), e in lie_derivation(2, 1)) {
        for (x, y) in [(d.clone(), e.clone()), (d.lie_to_ass().unwrap(), e.lie_to_ass().unwrap())] {
            let defect = classical_cocycle_defect(&x, &y).unwrap();
            prop_assert!(defect.is_zero());
        }
    }
}
