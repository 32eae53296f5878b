//! Exhaustive enumeration of labelled trees.

use super::{ClassKind, GeneratorSet, Label, LabeledTree, Node};

/// An unlabelled planar tree shape; vertices refer to generators by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Leaf,
    Vertex(usize, Vec<Shape>),
}

impl Shape {
    pub fn leaf_count(&self) -> usize {
        match self {
            Shape::Leaf => 1,
            Shape::Vertex(_, ch) => ch.iter().map(Shape::leaf_count).sum(),
        }
    }

    /// Fills the leaves, in planar order, from `labels`.
    pub fn instantiate(&self, gens: &GeneratorSet, labels: &mut impl Iterator<Item = Label>) -> Node {
        match self {
            Shape::Leaf => Node::Leaf(labels.next().expect("enough labels")),
            Shape::Vertex(g, ch) => {
                let name = gens.iter().nth(*g).expect("generator index").name.clone();
                Node::Vertex(name, ch.iter().map(|c| c.instantiate(gens, labels)).collect())
            }
        }
    }
}

/// All shapes with exactly `n` internal vertices.
pub fn shapes(gens: &GeneratorSet, n: usize) -> Vec<Shape> {
    let mut memo: Vec<Vec<Shape>> = vec![vec![Shape::Leaf]];
    for m in 1..=n {
        let mut level = Vec::new();
        for (gi, g) in gens.iter().enumerate() {
            // Distribute the remaining m-1 vertices over g.arity children.
            for split in compositions(m - 1, g.arity) {
                let mut partial: Vec<Vec<Shape>> = vec![Vec::new()];
                for &k in &split {
                    let mut next = Vec::new();
                    for p in &partial {
                        for s in &memo[k] {
                            let mut q = p.clone();
                            q.push(s.clone());
                            next.push(q);
                        }
                    }
                    partial = next;
                }
                level.extend(partial.into_iter().map(|ch| Shape::Vertex(gi, ch)));
            }
        }
        memo.push(level);
    }
    memo.swap_remove(n)
}

/// Ordered ways of writing `total` as `parts` non-negative summands.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All trees over `labels` with `n` internal vertices, in key order, with
/// optional filters on the root label and on the class.
pub fn enumerate_trees(
    labels: &[Label],
    gens: &GeneratorSet,
    n: usize,
    root_filter: Option<&Label>,
    class_filter: Option<ClassKind>,
) -> Vec<LabeledTree> {
    let roots: Vec<&Label> = match root_filter {
        Some(r) => vec![r],
        None => labels.iter().collect(),
    };
    let mut out = Vec::new();
    for shape in shapes(gens, n) {
        let leaves = shape.leaf_count();
        let mut idx = vec![0usize; leaves];
        loop {
            let node = shape.instantiate(gens, &mut idx.iter().map(|&i| labels[i].clone()));
            for root in &roots {
                let t = LabeledTree::new((*root).clone(), node.clone());
                if class_filter.is_none_or(|k| t.classify().kind() == k) {
                    out.push(t);
                }
            }
            if !odometer(&mut idx, labels.len()) {
                break;
            }
        }
    }
    out.sort();
    out
}

/// Advances a base-`radix` counter; false once it wraps around.
fn odometer(idx: &mut [usize], radix: usize) -> bool {
    for d in idx.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// Distinct orderings of the multiset with `counts[i]` copies of `i`, in
/// lexicographic order.
pub fn multiset_permutations(counts: &[usize]) -> Vec<Vec<usize>> {
    fn go(counts: &mut [usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i] > 0 {
                counts[i] -= 1;
                cur.push(i);
                go(counts, left - 1, cur, out);
                cur.pop();
                counts[i] += 1;
            }
        }
    }
    let mut counts = counts.to_vec();
    let total = counts.iter().sum();
    let mut out = Vec::new();
    go(&mut counts, total, &mut Vec::new(), &mut out);
    out
}

/// Trees with `n` internal vertices, root `root`, and exactly `content[i]`
/// leaves labelled `labels[i]`; in key order.
pub fn trees_with_content(
    labels: &[Label],
    gens: &GeneratorSet,
    n: usize,
    root: &Label,
    content: &[usize],
) -> Vec<LabeledTree> {
    let total: usize = content.iter().sum();
    let perms = multiset_permutations(content);
    let mut out = Vec::new();
    for shape in shapes(gens, n).into_iter().filter(|s| s.leaf_count() == total) {
        for p in &perms {
            let node = shape.instantiate(gens, &mut p.iter().map(|&i| labels[i].clone()));
            out.push(LabeledTree::new(root.clone(), node));
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::parse_label_set;

    fn catalan(n: usize) -> usize {
        (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
    }

    #[test]
    fn shape_counts_are_catalan_for_binary() {
        let g = GeneratorSet::binary();
        for n in 0..=6 {
            assert_eq!(shapes(&g, n).len(), catalan(n), "n = {n}");
        }
    }

    #[test]
    fn ternary_shapes() {
        // Ternary planar trees with n vertices: 1, 1, 3, 12 (Fuss–Catalan).
        let g = GeneratorSet::parse("m:3").unwrap();
        let counts: Vec<usize> = (0..4).map(|n| shapes(&g, n).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 12]);
    }

    #[test]
    fn spec_counts() {
        let g = GeneratorSet::binary();
        let xy = parse_label_set("x,y").unwrap();
        assert_eq!(enumerate_trees(&xy, &g, 2, None, None).len(), 32);
        assert_eq!(enumerate_trees(&xy, &g, 0, None, None).len(), 4);
        let z = parse_label_set("z").unwrap();
        assert!(enumerate_trees(&z, &g, 2, None, Some(ClassKind::Disjoint)).is_empty());
    }

    #[test]
    fn enumeration_is_sorted_and_unique() {
        let g = GeneratorSet::binary();
        let s = parse_label_set("a,b").unwrap();
        let ts = enumerate_trees(&s, &g, 3, None, None);
        assert!(ts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn multiset_permutation_counts() {
        assert_eq!(multiset_permutations(&[2, 1]), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(multiset_permutations(&[0, 0]).len(), 1);
        assert_eq!(multiset_permutations(&[1, 1, 1]).len(), 6);
    }
}
