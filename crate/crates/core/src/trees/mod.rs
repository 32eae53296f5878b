//! Labelled rooted planar trees: the basis of derivations of free operad
//! algebras.
//!
//! A tree has internal vertices decorated by generators and leaves decorated
//! by labels, plus a separate root label. Trees are immutable; the canonical
//! text key is computed once at construction and drives equality, hashing and
//! ordering.

mod enumerate;
mod ops;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

pub use enumerate::{enumerate_trees, multiset_permutations, shapes, trees_with_content, Shape};
pub use ops::{graft_matching, ClassKind, TreeClass};

/// A leaf or root label. User-facing labels match `[A-Za-z0-9_]+`; labels
/// containing `+` are reserved for basepoints and stabilization symbols.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(Arc<str>);

impl Label {
    /// Any syntactically valid label, reserved ones included.
    pub fn new(s: &str) -> Result<Self> {
        if s.is_empty() || !s.chars().all(is_label_char) {
            return Err(Error::InvalidLabel(s.to_string()));
        }
        Ok(Label(Arc::from(s)))
    }

    /// A label a user may put in a label set.
    pub fn user(s: &str) -> Result<Self> {
        let l = Self::new(s)?;
        if l.is_reserved() {
            return Err(Error::ReservedLabel(s.to_string()));
        }
        Ok(l)
    }

    /// The basepoint symbol `+` used by contraction and pruning.
    pub fn plus() -> Self {
        Label(Arc::from("+"))
    }

    /// The `k`-th stabilization symbol `+k` (`k ≥ 1`).
    pub fn stab(k: usize) -> Self {
        Label(Arc::from(format!("+{k}").as_str()))
    }

    /// If this is a stabilization symbol `+k`, its index.
    pub fn stab_index(&self) -> Option<usize> {
        self.0.strip_prefix('+').and_then(|d| d.parse().ok()).filter(|k| *k >= 1)
    }

    pub fn is_reserved(&self) -> bool {
        self.0.contains('+')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_label_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '+'
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Parses a comma-separated user label set, sorted and deduplicated.
pub fn parse_label_set(text: &str) -> Result<Vec<Label>> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(Label::user(part)?);
    }
    if out.is_empty() {
        return Err(Error::Invalid("empty label set".into()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: Arc<str>,
    pub arity: usize,
}

/// The generators of a free reduced operad, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    gens: Vec<Generator>,
}

fn is_generator_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '(' | ')' | ',' | '<' | '|' | ':' | '-' | '[' | ']')
}

impl GeneratorSet {
    pub fn new(gens: impl IntoIterator<Item = (String, usize)>) -> Result<Self> {
        let mut out: Vec<Generator> = Vec::new();
        for (name, arity) in gens {
            if name.is_empty() || !name.chars().all(is_generator_char) {
                return Err(Error::InvalidGenerators(format!("bad generator name `{name}`")));
            }
            if arity < 2 {
                return Err(Error::InvalidGenerators(format!("`{name}` has arity {arity}; arities must be at least 2")));
            }
            if out.iter().any(|g| *g.name == *name) {
                return Err(Error::InvalidGenerators(format!("duplicate generator `{name}`")));
            }
            out.push(Generator { name: Arc::from(name.as_str()), arity });
        }
        if out.is_empty() {
            return Err(Error::InvalidGenerators("no generators".into()));
        }
        Ok(Self { gens: out })
    }

    /// One binary generator `*`.
    pub fn binary() -> Self {
        Self::new([("*".to_string(), 2)]).expect("valid")
    }

    /// Parses `name:arity[,name:arity]`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            let (name, arity) = part
                .rsplit_once(':')
                .ok_or_else(|| Error::InvalidGenerators(format!("expected name:arity, got `{part}`")))?;
            let arity: usize =
                arity.trim().parse().map_err(|_| Error::InvalidGenerators(format!("bad arity in `{part}`")))?;
            gens.push((name.trim().to_string(), arity));
        }
        Self::new(gens)
    }

    pub fn get(&self, name: &str) -> Option<&Generator> {
        self.gens.iter().find(|g| &*g.name == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_binary(&self) -> bool {
        self.gens.iter().all(|g| g.arity == 2)
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| format!("{}:{}", g.name, g.arity)).collect();
        f.write_str(&parts.join(","))
    }
}

/// A planar tree body: a leaf, or a generator applied to children.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Leaf(Label),
    Vertex(Arc<str>, Vec<Node>),
}

impl Node {
    pub fn internal_count(&self) -> usize {
        match self {
            Node::Leaf(_) => 0,
            Node::Vertex(_, ch) => 1 + ch.iter().map(Node::internal_count).sum::<usize>(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Node::Leaf(_) => 1,
            Node::Vertex(_, ch) => ch.iter().map(Node::leaf_count).sum(),
        }
    }

    pub fn for_each_leaf<'a>(&'a self, f: &mut impl FnMut(&'a Label)) {
        match self {
            Node::Leaf(l) => f(l),
            Node::Vertex(_, ch) => ch.iter().for_each(|c| c.for_each_leaf(f)),
        }
    }

    fn write_key(&self, out: &mut String) {
        match self {
            Node::Leaf(l) => out.push_str(l.as_str()),
            Node::Vertex(g, ch) => {
                out.push_str(g);
                out.push('(');
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    c.write_key(out);
                }
                out.push(')');
            }
        }
    }
}

/// An `S`-labelled rooted planar tree.
#[derive(Clone)]
pub struct LabeledTree {
    root: Label,
    node: Node,
    key: Arc<str>,
}

impl LabeledTree {
    /// Builds a tree from parts. Generator arities are not re-checked here;
    /// use [`LabeledTree::parse`] for untrusted input.
    pub fn new(root: Label, node: Node) -> Self {
        let mut key = String::with_capacity(16);
        key.push_str(root.as_str());
        key.push_str("<-");
        node.write_key(&mut key);
        Self { root, node, key: Arc::from(key.as_str()) }
    }

    /// The tree with no internal vertex, root `root` and one leaf `leaf`.
    pub fn degenerate(root: Label, leaf: Label) -> Self {
        Self::new(root, Node::Leaf(leaf))
    }

    pub fn parse(gens: &GeneratorSet, text: &str) -> Result<Self> {
        parse::parse_tree(gens, text)
    }

    pub fn root(&self) -> &Label {
        &self.root
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    /// The canonical serialization, e.g. `x<-*(x,*(y,y))`.
    pub fn key(&self) -> &str {
        &self.key
    }

    /// Number of internal vertices, i.e. the degree.
    pub fn internal_count(&self) -> usize {
        self.node.internal_count()
    }

    pub fn degree(&self) -> usize {
        self.internal_count()
    }

    pub fn leaf_count(&self) -> usize {
        self.node.leaf_count()
    }

    /// Leaf labels in planar order.
    pub fn leaves(&self) -> Vec<&Label> {
        let mut out = Vec::new();
        self.node.for_each_leaf(&mut |l| out.push(l));
        out
    }

    /// All labels used, root included.
    pub fn labels(&self) -> Vec<&Label> {
        let mut out = self.leaves();
        out.push(&self.root);
        out
    }

    pub fn with_root(&self, root: Label) -> Self {
        Self::new(root, self.node.clone())
    }

    /// Renames every occurrence (root and leaves) of `from` to `to`.
    pub fn rename(&self, from: &Label, to: &Label) -> Self {
        fn go(n: &Node, from: &Label, to: &Label) -> Node {
            match n {
                Node::Leaf(l) if l == from => Node::Leaf(to.clone()),
                Node::Leaf(l) => Node::Leaf(l.clone()),
                Node::Vertex(g, ch) => Node::Vertex(g.clone(), ch.iter().map(|c| go(c, from, to)).collect()),
            }
        }
        let root = if &self.root == from { to.clone() } else { self.root.clone() };
        Self::new(root, go(&self.node, from, to))
    }
}

impl PartialEq for LabeledTree {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for LabeledTree {}

impl Hash for LabeledTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state)
    }
}

impl PartialOrd for LabeledTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LabeledTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

impl fmt::Debug for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_and_reserved_symbols() {
        assert!(Label::user("x_1").is_ok());
        assert!(matches!(Label::user("+"), Err(Error::ReservedLabel(_))));
        assert!(matches!(Label::user("a b"), Err(Error::InvalidLabel(_))));
        assert_eq!(Label::stab(3).as_str(), "+3");
        assert_eq!(Label::stab(3).stab_index(), Some(3));
        assert_eq!(Label::plus().stab_index(), None);
        assert_eq!(parse_label_set("y, x,y").unwrap(), vec![Label::user("x").unwrap(), Label::user("y").unwrap()]);
    }

    #[test]
    fn generator_sets() {
        let g = GeneratorSet::parse("*:2, m:3").unwrap();
        assert_eq!(g.len(), 2);
        assert!(!g.is_binary());
        assert_eq!(g.to_string(), "*:2,m:3");
        assert!(GeneratorSet::parse("u:1").is_err());
        assert!(GeneratorSet::parse("*:2,*:2").is_err());
        assert!(GeneratorSet::binary().is_binary());
    }

    #[test]
    fn keys_order_lexicographically() {
        let g = GeneratorSet::binary();
        let a = LabeledTree::parse(&g, "x<-*(x,y)").unwrap();
        let b = LabeledTree::parse(&g, "x<-*(y,x)").unwrap();
        assert!(a < b);
        assert!(a.key() < b.key());
    }
}
