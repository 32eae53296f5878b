//! Tree-level subspaces of the free operad derivations.

use std::collections::BTreeSet;

use crate::freeder::{pointed_product_trees, spine_factorize, Necklace, TreeSum};
use crate::linear::{FormalSum, Subspace};
use crate::trees::{enumerate_trees, graft_matching, ClassKind, GeneratorSet, Label, LabeledTree};

pub fn disjoint_trees(labels: &[Label], gens: &GeneratorSet, degree: usize) -> Vec<LabeledTree> {
    enumerate_trees(labels, gens, degree, None, Some(ClassKind::Disjoint))
}

pub fn special_pointed_trees(labels: &[Label], gens: &GeneratorSet, degree: usize) -> Vec<LabeledTree> {
    enumerate_trees(labels, gens, degree, None, Some(ClassKind::SpecialPointed))
}

/// Pointed trees rooted at `basepoint`, which must be one of `labels`.
pub fn pointed_trees(labels: &[Label], gens: &GeneratorSet, degree: usize, basepoint: &Label) -> Vec<LabeledTree> {
    let mut out = enumerate_trees(labels, gens, degree, Some(basepoint), None);
    out.retain(|t| t.classify().is_pointed());
    out
}

fn with_plus(labels: &[Label]) -> Vec<Label> {
    let mut l = labels.to_vec();
    l.push(Label::plus());
    l
}

/// The right module over `Der(S)` generated by the degree-one special
/// pointed trees rooted at `+`, in the given degree. Its ambient space
/// starts as the special pointed trees, so a generated vector leaving that
/// span shows up as an ambient column past the initial ones.
pub fn special_pointed_generated(labels: &[Label], gens: &GeneratorSet, degree: usize) -> Subspace<LabeledTree> {
    let plus = Label::plus();
    let lp = with_plus(labels);
    let special = |n: usize| -> Vec<LabeledTree> {
        let mut v = pointed_trees(&lp, gens, n, &plus);
        v.retain(|t| t.classify().kind() == ClassKind::SpecialPointed);
        v
    };
    let mut levels: Vec<Vec<TreeSum>> = vec![Vec::new(), special(1).into_iter().map(FormalSum::basis).collect()];
    for n in 2..=degree {
        let mut s = Subspace::new(special(n));
        for k in 1..n {
            let der = enumerate_trees(labels, gens, k, None, None);
            for p in &levels[n - k] {
                for t in &der {
                    let mut v = TreeSum::zero();
                    for (q, c) in p {
                        v.add_scaled(c, &graft_matching(q, t));
                    }
                    s.insert(&v);
                }
            }
        }
        levels.push(s.generators());
    }
    if degree <= 1 {
        return Subspace::span_in(special(degree), levels.get(degree).into_iter().flatten());
    }
    Subspace::span_in(special(degree), levels[degree].iter())
}

/// Sizes compared by the necklace cross-check: pointed trees of a degree,
/// the rank of the commutators `pq − qp` among them, and the number of
/// necklaces they factor into.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecklaceCount {
    pub pointed: usize,
    pub commutator_rank: usize,
    pub necklaces: usize,
}

impl NecklaceCount {
    pub fn consistent(&self) -> bool {
        self.pointed - self.commutator_rank == self.necklaces
    }
}

pub fn necklace_count_check(labels: &[Label], gens: &GeneratorSet, degree: usize) -> NecklaceCount {
    let plus = Label::plus();
    let lp = with_plus(labels);
    let by_degree: Vec<Vec<LabeledTree>> = (0..=degree).map(|d| pointed_trees(&lp, gens, d, &plus)).collect();
    let top = &by_degree[degree];
    let mut comm = Subspace::new(top.clone());
    for i in 1..degree {
        for p in &by_degree[i] {
            for q in &by_degree[degree - i] {
                let mut v = TreeSum::basis(pointed_product_trees(p, q, &plus));
                v.add_term(pointed_product_trees(q, p, &plus), -crate::linear::Scalar::one());
                comm.insert(&v);
            }
        }
    }
    let necklaces: BTreeSet<Necklace> =
        top.iter().map(|t| Necklace::new(spine_factorize(t).expect("pointed by construction"))).collect();
    NecklaceCount { pointed: top.len(), commutator_rank: comm.rank(), necklaces: necklaces.len() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::parse_label_set;

    #[test]
    fn special_degree_one_example() {
        let labels = parse_label_set("x,z").unwrap();
        let g = GeneratorSet::binary();
        let z = Label::user("z").unwrap();
        let mut got: Vec<String> =
            special_pointed_trees(&labels, &g, 1).iter().filter(|t| *t.root() == z).map(|t| t.to_string()).collect();
        got.sort();
        assert_eq!(got, ["z<-*(x,z)", "z<-*(z,x)"]);
    }

    #[test]
    fn generated_module_is_spanned_by_special_trees() {
        let g = GeneratorSet::binary();
        for s in ["x", "x,y"] {
            let labels = parse_label_set(s).unwrap();
            for d in 1..=3 {
                let m = special_pointed_generated(&labels, &g, d);
                let special = m.ambient().len();
                assert!(m.is_full(), "{s} degree {d}: rank {} of {special}", m.rank());
            }
        }
    }

    #[test]
    fn necklaces_count_the_quotient_by_commutators() {
        let g = GeneratorSet::binary();
        for s in ["x", "x,y"] {
            let labels = parse_label_set(s).unwrap();
            for d in 0..=3 {
                let c = necklace_count_check(&labels, &g, d);
                assert!(c.consistent(), "{s} degree {d}: {c:?}");
            }
        }
    }
}
