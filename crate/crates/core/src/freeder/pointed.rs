//! Pointed derivations: the unital associative algebra spanned by pointed
//! trees with root the basepoint `z`, multiplied by grafting onto the unique
//! `z`-leaf.

use std::fmt;
use std::sync::Arc;

use super::{Context, TreeSum};
use crate::error::{Error, Result};
use crate::linear::{FormalSum, Scalar};
use crate::trees::{Label, LabeledTree, Node};

/// `p · q` for single pointed trees over basepoint `z`.
pub fn pointed_product_trees(p: &LabeledTree, q: &LabeledTree, z: &Label) -> LabeledTree {
    let pos = p.leaf_positions(z);
    debug_assert_eq!(pos.len(), 1, "{p} is not pointed at {z}");
    p.graft(pos[0], q).expect("marked leaf exists")
}

fn check_pointed(t: &LabeledTree, z: &Label) -> Result<()> {
    if t.root() != z || !t.classify().is_pointed() {
        return Err(Error::NotPointed(t.to_string()));
    }
    Ok(())
}

/// Cuts every edge of the root-to-basepoint path that joins two internal
/// vertices. The pieces are special pointed, ordered from the root upward,
/// and their product in that order is `p`. The unit gives `[]`.
pub fn spine_factorize(p: &LabeledTree) -> Result<Vec<LabeledTree>> {
    let z = p.root().clone();
    check_pointed(p, &z)?;
    let mut factors = Vec::new();
    let mut cur = p.node();
    loop {
        let Node::Vertex(g, ch) = cur else {
            break;
        };
        // The unique child containing the z-leaf.
        let mut next = None;
        let mut children = Vec::with_capacity(ch.len());
        for c in ch {
            let mut has_z = false;
            c.for_each_leaf(&mut |l| has_z |= *l == z);
            if has_z && matches!(c, Node::Vertex(..)) {
                next = Some(c);
                children.push(Node::Leaf(z.clone()));
            } else {
                children.push(c.clone());
            }
        }
        factors.push(LabeledTree::new(z.clone(), Node::Vertex(g.clone(), children)));
        match next {
            Some(c) => cur = c,
            None => break,
        }
    }
    Ok(factors)
}

/// An element of the pointed algebra over `(S, z)`.
#[derive(Clone, PartialEq, Eq)]
pub struct PointedDerivation {
    ctx: Arc<Context>,
    basepoint: Label,
    value: TreeSum,
}

impl PointedDerivation {
    pub fn new(ctx: Arc<Context>, basepoint: Label, value: TreeSum) -> Result<Self> {
        if !ctx.contains(&basepoint) {
            return Err(Error::UnknownLabel(basepoint.to_string()));
        }
        for t in value.keys() {
            ctx.check_tree(t)?;
            check_pointed(t, &basepoint)?;
        }
        Ok(Self { ctx, basepoint, value })
    }

    /// Trusted constructor for values known to be pointed.
    pub(crate) fn from_parts(ctx: Arc<Context>, basepoint: Label, value: TreeSum) -> Self {
        Self { ctx, basepoint, value }
    }

    pub fn unit(ctx: Arc<Context>, basepoint: Label) -> Result<Self> {
        let t = LabeledTree::degenerate(basepoint.clone(), basepoint.clone());
        Self::new(ctx, basepoint, FormalSum::basis(t))
    }

    pub fn parse(ctx: Arc<Context>, basepoint: Label, text: &str) -> Result<Self> {
        let value = ctx.parse_sum(text)?;
        Self::new(ctx, basepoint, value)
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn basepoint(&self) -> &Label {
        &self.basepoint
    }

    pub fn value(&self) -> &TreeSum {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx || self.basepoint != other.basepoint {
            return Err(Error::ContextMismatch("pointed derivations over different pointed sets".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(Self::from_parts(self.ctx.clone(), self.basepoint.clone(), &self.value + &other.value))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_parts(self.ctx.clone(), self.basepoint.clone(), self.value.scale(c))
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let mut out = TreeSum::zero();
        for (p, a) in &self.value {
            for (q, b) in &other.value {
                out.add_term(pointed_product_trees(p, q, &self.basepoint), a * b);
            }
        }
        Ok(Self::from_parts(self.ctx.clone(), self.basepoint.clone(), out))
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.product(other)?;
        let ba = other.product(self)?;
        Ok(Self::from_parts(self.ctx.clone(), self.basepoint.clone(), &ab.value - &ba.value))
    }
}

impl fmt::Display for PointedDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

impl fmt::Debug for PointedDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeder::prelie_sum;
    use crate::trees::{parse_label_set, GeneratorSet};

    fn setup() -> (Arc<Context>, Label) {
        let c = Arc::new(Context::user(parse_label_set("x,y,z").unwrap(), GeneratorSet::binary()).unwrap());
        (c, Label::user("z").unwrap())
    }

    fn p(s: &str) -> PointedDerivation {
        let (c, z) = setup();
        PointedDerivation::parse(c, z, s).unwrap()
    }

    fn tree(s: &str) -> LabeledTree {
        LabeledTree::parse(&GeneratorSet::binary(), s).unwrap()
    }

    #[test]
    fn product_and_unit() {
        let (c, z) = setup();
        let unit = PointedDerivation::unit(c, z).unwrap();
        let a = p("z<-*(z,x)");
        assert_eq!(a.product(&unit).unwrap(), a);
        assert_eq!(unit.product(&a).unwrap(), a);
        assert_eq!(a.product(&p("z<-*(y,z)")).unwrap(), p("z<-*(*(y,z),x)"));
    }

    #[test]
    fn rejects_non_pointed_input() {
        let (c, z) = setup();
        assert!(matches!(PointedDerivation::parse(c.clone(), z.clone(), "z<-*(z,z)"), Err(Error::NotPointed(_))));
        assert!(matches!(PointedDerivation::parse(c, z, "x<-*(x,y)"), Err(Error::NotPointed(_))));
        assert!(spine_factorize(&tree("z<-*(x,y)")).is_err());
    }

    #[test]
    fn product_agrees_with_prelie() {
        let a = p("z<-*(z,x) + 2*z<-*(*(y,z),x)");
        let b = p("z<-*(y,z) - z<-*(x,*(z,y))");
        assert_eq!(a.product(&b).unwrap().value(), &prelie_sum(a.value(), b.value()));
    }

    #[test]
    fn factorization_examples() {
        let sp = tree("z<-*(z,x)");
        assert_eq!(spine_factorize(&sp).unwrap(), vec![sp.clone()]);
        assert_eq!(spine_factorize(&tree("z<-*(*(y,z),x)")).unwrap(), vec![tree("z<-*(z,x)"), tree("z<-*(y,z)")]);
        assert!(spine_factorize(&tree("z<-z")).unwrap().is_empty());
        let deep = tree("z<-*(x,*(*(z,y),*(x,x)))");
        let fs = spine_factorize(&deep).unwrap();
        assert_eq!(fs, vec![tree("z<-*(x,z)"), tree("z<-*(z,*(x,x))"), tree("z<-*(z,y)")]);
        let z = Label::user("z").unwrap();
        let rebuilt = fs.iter().fold(tree("z<-z"), |acc, f| pointed_product_trees(&acc, f, &z));
        assert_eq!(rebuilt, deep);
    }
}
