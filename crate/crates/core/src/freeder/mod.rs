//! Derivations of free operad algebras on tree bases.
//!
//! `Der(fo(R[S]))` has basis the `S`-labelled trees. The preLie product
//! `d ⊲ e` grafts each tree of `e` onto every leaf of each tree of `d` that
//! carries the root label of the `e`-tree; on generators this is `e ∘ d`.

mod pointed;
mod trace;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linear::{FormalSum, Scalar};
use crate::trees::{graft_matching, GeneratorSet, Label, LabeledTree};

pub use pointed::{pointed_product_trees, spine_factorize, PointedDerivation};
pub use trace::{act_sum, least_rotation, trace_class_sum, Necklace, TraceElement};

pub type TreeSum = FormalSum<LabeledTree>;

/// A label set with its generator set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    labels: Vec<Label>,
    gens: GeneratorSet,
}

impl Context {
    /// Labels are sorted and deduplicated; reserved labels are accepted here
    /// because internal contexts contain basepoints and stabilization symbols.
    pub fn new(mut labels: Vec<Label>, gens: GeneratorSet) -> Self {
        labels.sort();
        labels.dedup();
        Self { labels, gens }
    }

    /// A context built from user labels, rejecting reserved symbols.
    pub fn user(labels: Vec<Label>, gens: GeneratorSet) -> Result<Self> {
        if let Some(l) = labels.iter().find(|l| l.is_reserved()) {
            return Err(Error::ReservedLabel(l.to_string()));
        }
        Ok(Self::new(labels, gens))
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn contains(&self, l: &Label) -> bool {
        self.labels.binary_search(l).is_ok()
    }

    /// Adds one label (e.g. a basepoint); errors if already present.
    pub fn with_label(&self, l: Label) -> Result<Self> {
        if self.contains(&l) {
            return Err(Error::ReservedLabel(l.to_string()));
        }
        let mut labels = self.labels.clone();
        labels.push(l);
        Ok(Self::new(labels, self.gens.clone()))
    }

    /// The `n` fresh stabilization symbols this context would receive.
    pub fn fresh_symbols(&self, n: usize) -> Vec<Label> {
        let next = self.labels.iter().filter_map(Label::stab_index).max().unwrap_or(0) + 1;
        (next..next + n).map(Label::stab).collect()
    }

    /// `S ⊔ {+k, …}` with `n` fresh symbols.
    pub fn stabilize(&self, n: usize) -> Self {
        let mut labels = self.labels.clone();
        labels.extend(self.fresh_symbols(n));
        Self::new(labels, self.gens.clone())
    }

    /// Checks that every label of `t` is in the context and that its
    /// generators are declared with the right arities.
    pub fn check_tree(&self, t: &LabeledTree) -> Result<()> {
        for l in t.labels() {
            if !self.contains(l) {
                return Err(Error::UnknownLabel(l.to_string()));
            }
        }
        let reparsed = LabeledTree::parse(&self.gens, t.key())?;
        debug_assert_eq!(&reparsed, t);
        Ok(())
    }

    pub fn parse_tree(&self, text: &str) -> Result<LabeledTree> {
        let t = LabeledTree::parse(&self.gens, text)?;
        self.check_tree(&t)?;
        Ok(t)
    }

    /// Parses the `c1*KEY1 + c2*KEY2` form; a bare tree is also accepted.
    pub fn parse_sum(&self, text: &str) -> Result<TreeSum> {
        FormalSum::parse_with(text, |k| self.parse_tree(k))
    }
}

/// `a ⊲ b` extended bilinearly.
pub fn prelie_sum(a: &TreeSum, b: &TreeSum) -> TreeSum {
    let mut out = TreeSum::zero();
    for (s, cs) in a {
        for (t, ct) in b {
            let prod = graft_matching(s, t);
            if !prod.is_zero() {
                out.add_scaled(&(cs * ct), &prod);
            }
        }
    }
    out
}

/// `[a, b] = a ⊲ b − b ⊲ a`.
pub fn bracket_sum(a: &TreeSum, b: &TreeSum) -> TreeSum {
    let mut out = prelie_sum(a, b);
    out -= &prelie_sum(b, a);
    out
}

/// Homogeneous component of the given degree.
pub fn degree_part(a: &TreeSum, degree: usize) -> TreeSum {
    a.filter(|t| t.degree() == degree)
}

/// Keeps only the trees all of whose labels lie in `labels`; this is the
/// retraction `Der(fo(R[S ⊔ W])) → Der(fo(R[S]))` killing the new generators.
pub fn retract_sum(a: &TreeSum, labels: &[Label]) -> TreeSum {
    a.filter(|t| t.labels().iter().all(|l| labels.contains(l)))
}

/// An element of `Der(fo(R[S]))`.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    ctx: Arc<Context>,
    value: TreeSum,
}

impl Derivation {
    pub fn new(ctx: Arc<Context>, value: TreeSum) -> Result<Self> {
        for t in value.keys() {
            ctx.check_tree(t)?;
        }
        Ok(Self { ctx, value })
    }

    pub fn zero(ctx: Arc<Context>) -> Self {
        Self { ctx, value: TreeSum::zero() }
    }

    pub fn from_tree(ctx: Arc<Context>, t: LabeledTree) -> Result<Self> {
        Self::new(ctx, TreeSum::basis(t))
    }

    pub fn parse(ctx: Arc<Context>, text: &str) -> Result<Self> {
        let value = ctx.parse_sum(text)?;
        Ok(Self { ctx, value })
    }

    /// `Σ_{x ∈ S} x<-x`, the identity endomorphism in degree zero.
    pub fn identity(ctx: Arc<Context>) -> Self {
        let value = ctx.labels.iter().map(|l| (LabeledTree::degenerate(l.clone(), l.clone()), Scalar::one())).collect();
        Self { ctx, value }
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn value(&self) -> &TreeSum {
        &self.value
    }

    pub fn into_value(self) -> TreeSum {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn same_context(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch("derivations over different label or generator sets".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        Ok(Self { ctx: self.ctx.clone(), value: &self.value + &other.value })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self { ctx: self.ctx.clone(), value: self.value.scale(c) }
    }

    /// The preLie product `self ⊲ other`.
    pub fn prelie(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        Ok(Self { ctx: self.ctx.clone(), value: prelie_sum(&self.value, &other.value) })
    }

    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        Ok(Self { ctx: self.ctx.clone(), value: bracket_sum(&self.value, &other.value) })
    }

    pub fn degree_part(&self, degree: usize) -> Self {
        Self { ctx: self.ctx.clone(), value: degree_part(&self.value, degree) }
    }

    /// Projection onto positive degrees.
    pub fn restrict_positive(&self) -> Self {
        Self { ctx: self.ctx.clone(), value: self.value.filter(|t| t.degree() > 0) }
    }

    /// The image under `S ↪ S ⊔ {n fresh symbols}`: same trees, the new
    /// generators being sent to zero.
    pub fn stabilize(&self, n: usize) -> Self {
        Self { ctx: Arc::new(self.ctx.stabilize(n)), value: self.value.clone() }
    }

    /// The retraction onto a smaller context.
    pub fn retract(&self, target: Arc<Context>) -> Result<Self> {
        if target.gens != self.ctx.gens || !target.labels.iter().all(|l| self.ctx.contains(l)) {
            return Err(Error::ContextMismatch("retraction target is not a sub-context".into()));
        }
        Ok(Self { value: retract_sum(&self.value, &target.labels), ctx: target })
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::parse_label_set;

    fn ctx(s: &str) -> Arc<Context> {
        Arc::new(Context::user(parse_label_set(s).unwrap(), GeneratorSet::binary()).unwrap())
    }

    fn d(c: &Arc<Context>, s: &str) -> Derivation {
        Derivation::parse(c.clone(), s).unwrap()
    }

    #[test]
    fn prelie_examples() {
        let c = ctx("x,y");
        assert_eq!(d(&c, "x<-*(x,y)").prelie(&d(&c, "y<-*(y,y)")).unwrap(), d(&c, "x<-*(x,*(y,y))"));
        assert!(d(&c, "x<-*(x,x)").prelie(&d(&c, "y<-*(y,y)")).unwrap().is_zero());
        let cx = ctx("x");
        let xx = d(&cx, "x<-*(x,x)");
        assert_eq!(xx.prelie(&xx).unwrap(), d(&cx, "x<-*(*(x,x),x) + x<-*(x,*(x,x))"));
    }

    #[test]
    fn bracket_examples() {
        let c = ctx("x,y");
        let a = d(&c, "x<-*(x,y)");
        let b = d(&c, "y<-*(y,y)");
        assert!(a.bracket(&a).unwrap().is_zero());
        // b ⊲ a = 0 since b has no x-leaf.
        assert_eq!(a.bracket(&b).unwrap(), d(&c, "x<-*(x,*(y,y))"));
        let e = d(&c, "y<-*(x,y)");
        assert_eq!(a.bracket(&e).unwrap(), d(&c, "x<-*(x,*(x,y)) - y<-*(*(x,y),y)"));
    }

    #[test]
    fn context_mismatch_is_reported() {
        let a = d(&ctx("x,y"), "x<-*(x,y)");
        let b = d(&ctx("x"), "x<-*(x,x)");
        assert!(matches!(a.prelie(&b), Err(Error::ContextMismatch(_))));
        assert!(Derivation::parse(ctx("x"), "x<-*(x,y)").is_err());
    }

    #[test]
    fn stabilization_and_retraction() {
        let c = ctx("x,y");
        let a = d(&c, "x<-*(x,y) + 2*y<-x");
        let s = a.stabilize(2);
        assert_eq!(s.context().labels().iter().map(|l| l.as_str()).collect::<Vec<_>>(), ["+1", "+2", "x", "y"]);
        assert_eq!(s.stabilize(1).context().labels().len(), 5);
        assert!(s.stabilize(1).context().contains(&Label::stab(3)));
        assert_eq!(s.retract(c.clone()).unwrap(), a);
        let with_new = Derivation::parse(s.context().clone(), "x<-*(x,+1) + x<-*(x,y)").unwrap();
        assert_eq!(with_new.retract(c.clone()).unwrap(), d(&c, "x<-*(x,y)"));
    }

    #[test]
    fn identity_is_sum_of_degenerate_trees() {
        let c = ctx("x,y");
        assert_eq!(Derivation::identity(c.clone()), d(&c, "x<-x + y<-y"));
    }
}
