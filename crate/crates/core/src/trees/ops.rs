//! Grafting, pruning and classification of labelled trees.

use super::{Label, LabeledTree, Node};
use crate::error::{Error, Result};
use crate::linear::FormalSum;

/// Position of a tree relative to its own root label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeClass {
    /// The root label is not a leaf label.
    Disjoint,
    /// The root label labels exactly one leaf, and the path from the root to
    /// that leaf meets `spine ≥ 2` internal vertices.
    PointedNotSpecial { spine: usize },
    /// The root label labels exactly one leaf, and the path meets at most
    /// one internal vertex.
    SpecialPointed { spine: usize },
    /// The root label labels two or more leaves.
    Other,
}

/// [`TreeClass`] without the spine data, for filtering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Disjoint,
    PointedNotSpecial,
    SpecialPointed,
    Other,
}

impl TreeClass {
    pub fn kind(self) -> ClassKind {
        match self {
            TreeClass::Disjoint => ClassKind::Disjoint,
            TreeClass::PointedNotSpecial { .. } => ClassKind::PointedNotSpecial,
            TreeClass::SpecialPointed { .. } => ClassKind::SpecialPointed,
            TreeClass::Other => ClassKind::Other,
        }
    }

    pub fn is_pointed(self) -> bool {
        matches!(self, TreeClass::PointedNotSpecial { .. } | TreeClass::SpecialPointed { .. })
    }

    /// Internal vertices on the root-to-marked-leaf path, when pointed.
    pub fn spine(self) -> Option<usize> {
        match self {
            TreeClass::PointedNotSpecial { spine } | TreeClass::SpecialPointed { spine } => Some(spine),
            _ => None,
        }
    }
}

impl std::fmt::Display for TreeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TreeClass::Disjoint => write!(f, "disjoint"),
            TreeClass::PointedNotSpecial { spine } => write!(f, "pointed (spine {spine})"),
            TreeClass::SpecialPointed { spine } => write!(f, "special pointed (spine {spine})"),
            TreeClass::Other => write!(f, "other"),
        }
    }
}

/// Replaces leaf number `target` (0-based, planar order) by `with`.
fn replace_leaf(node: &Node, target: usize, counter: &mut usize, with: &Node) -> Node {
    match node {
        Node::Leaf(l) => {
            let here = *counter;
            *counter += 1;
            if here == target {
                with.clone()
            } else {
                Node::Leaf(l.clone())
            }
        }
        Node::Vertex(g, ch) => {
            Node::Vertex(g.clone(), ch.iter().map(|c| replace_leaf(c, target, counter, with)).collect())
        }
    }
}

/// Depth (internal vertices above) of every leaf, in planar order.
fn leaf_depths(node: &Node, depth: usize, out: &mut Vec<usize>) {
    match node {
        Node::Leaf(_) => out.push(depth),
        Node::Vertex(_, ch) => ch.iter().for_each(|c| leaf_depths(c, depth + 1, out)),
    }
}

impl LabeledTree {
    /// Grafts the root of `t2` onto leaf `leaf_index` (1-based, planar order).
    /// The old leaf label is discarded and the root label of `self` kept.
    pub fn graft(&self, leaf_index: usize, t2: &LabeledTree) -> Result<LabeledTree> {
        let leaves = self.leaf_count();
        if leaf_index == 0 || leaf_index > leaves {
            return Err(Error::LeafIndex { index: leaf_index, leaves });
        }
        let mut counter = 0;
        Ok(LabeledTree::new(self.root.clone(), replace_leaf(&self.node, leaf_index - 1, &mut counter, &t2.node)))
    }

    /// Relabels leaf `leaf_index` (1-based).
    pub fn with_leaf(&self, leaf_index: usize, label: Label) -> Result<LabeledTree> {
        self.graft(leaf_index, &LabeledTree::degenerate(label.clone(), label))
    }

    /// 1-based indices of the leaves labelled `label`.
    pub fn leaf_positions(&self, label: &Label) -> Vec<usize> {
        self.leaves().iter().enumerate().filter(|(_, l)| **l == label).map(|(i, _)| i + 1).collect()
    }

    pub fn classify(&self) -> TreeClass {
        let marked = self.leaf_positions(&self.root);
        match marked.len() {
            0 => TreeClass::Disjoint,
            1 => {
                let mut depths = Vec::new();
                leaf_depths(&self.node, 0, &mut depths);
                let spine = depths[marked[0] - 1];
                if spine <= 1 {
                    TreeClass::SpecialPointed { spine }
                } else {
                    TreeClass::PointedNotSpecial { spine }
                }
            }
            _ => TreeClass::Other,
        }
    }

    /// Cuts the edge above node number `edge` in preorder over all nodes
    /// (leaves included, the root vertex being node 0). The edge must join
    /// two internal vertices. Returns the lower part, which keeps the root and
    /// gains a new leaf `+`, and the upper part, rooted at `+`.
    pub fn prune(&self, edge: usize) -> Result<(LabeledTree, LabeledTree)> {
        if self.internal_count() < 2 {
            return Err(Error::Prune("need at least two internal vertices".into()));
        }
        if edge == 0 {
            return Err(Error::Prune("node 0 is the root; it has no edge above it".into()));
        }
        fn cut(node: &Node, edge: usize, counter: &mut usize, found: &mut Option<Node>) -> Node {
            let here = *counter;
            *counter += 1;
            if here == edge {
                *found = Some(node.clone());
                return Node::Leaf(Label::plus());
            }
            match node {
                Node::Leaf(l) => Node::Leaf(l.clone()),
                Node::Vertex(g, ch) => Node::Vertex(g.clone(), ch.iter().map(|c| cut(c, edge, counter, found)).collect()),
            }
        }
        let mut counter = 0;
        let mut found = None;
        let lower = cut(&self.node, edge, &mut counter, &mut found);
        match found {
            None => Err(Error::Prune(format!("no node {edge}; the tree has {counter} nodes"))),
            Some(Node::Leaf(_)) => Err(Error::Prune(format!("node {edge} is a leaf, so its edge is not internal"))),
            Some(upper) => Ok((LabeledTree::new(self.root.clone(), lower), LabeledTree::new(Label::plus(), upper))),
        }
    }

    /// Preorder indices (over all nodes) of internal vertices other than the
    /// root: the valid arguments of [`LabeledTree::prune`].
    pub fn internal_edges(&self) -> Vec<usize> {
        fn go(node: &Node, counter: &mut usize, out: &mut Vec<usize>) {
            let here = *counter;
            *counter += 1;
            if let Node::Vertex(_, ch) = node {
                if here > 0 {
                    out.push(here);
                }
                ch.iter().for_each(|c| go(c, counter, out));
            }
        }
        let mut out = Vec::new();
        go(&self.node, &mut 0, &mut out);
        out
    }
}

/// `Σ_ℓ t1 ∘_ℓ t2` over the leaves `ℓ` of `t1` labelled `root(t2)`.
pub fn graft_matching(t1: &LabeledTree, t2: &LabeledTree) -> FormalSum<LabeledTree> {
    let mut out = FormalSum::zero();
    for pos in t1.leaf_positions(t2.root()) {
        out.add_term(t1.graft(pos, t2).expect("position in range"), crate::linear::Scalar::one());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::GeneratorSet;

    fn t(s: &str) -> LabeledTree {
        LabeledTree::parse(&GeneratorSet::binary(), s).unwrap()
    }

    #[test]
    fn graft_examples() {
        assert_eq!(t("x<-*(x,y)").graft(2, &t("q<-*(y,y)")).unwrap(), t("x<-*(x,*(y,y))"));
        let g = t("x<-*(x,*(y,y))");
        assert_eq!(t("z<-z").graft(1, &g).unwrap(), g.with_root(Label::new("z").unwrap()));
        assert_eq!(g.graft(1, &t("w<-w")).unwrap(), t("x<-*(w,*(y,y))"));
        assert!(matches!(g.graft(4, &g), Err(Error::LeafIndex { index: 4, leaves: 3 })));
        assert!(g.graft(0, &g).is_err());
    }

    #[test]
    fn graft_matching_examples() {
        assert_eq!(graft_matching(&t("x<-*(x,y)"), &t("y<-*(y,y)")), FormalSum::basis(t("x<-*(x,*(y,y))")));
        assert!(graft_matching(&t("x<-*(x,y)"), &t("w<-*(x,x)")).is_zero());
        let two = graft_matching(&t("z<-*(z,z)"), &t("z<-*(x,y)"));
        assert_eq!(two, FormalSum::basis(t("z<-*(*(x,y),z)")) + FormalSum::basis(t("z<-*(z,*(x,y))")));
    }

    #[test]
    fn prune_examples() {
        let tree = t("x<-*(x,*(y,y))");
        assert_eq!(tree.internal_edges(), vec![2]);
        let (lo, up) = tree.prune(2).unwrap();
        assert_eq!(lo, t("x<-*(x,+)"));
        assert_eq!(up, t("+<-*(y,y)"));
        assert_eq!(graft_matching(&lo, &up), FormalSum::basis(tree.clone()));
        assert!(matches!(tree.prune(1), Err(Error::Prune(_))));
        assert!(matches!(tree.prune(0), Err(Error::Prune(_))));
        assert!(matches!(t("x<-*(x,y)").prune(1), Err(Error::Prune(_))));
        assert!(tree.prune(9).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(t("z<-*(x,y)").classify(), TreeClass::Disjoint);
        assert_eq!(t("z<-*(z,y)").classify(), TreeClass::SpecialPointed { spine: 1 });
        assert_eq!(t("z<-*(x,*(y,z))").classify(), TreeClass::PointedNotSpecial { spine: 2 });
        assert_eq!(t("z<-*(z,z)").classify(), TreeClass::Other);
        assert_eq!(t("z<-z").classify(), TreeClass::SpecialPointed { spine: 0 });
        assert_eq!(t("z<-x").classify(), TreeClass::Disjoint);
    }
}
