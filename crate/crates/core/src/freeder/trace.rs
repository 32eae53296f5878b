//! The trace space `|A| = A/[A, A]` of the pointed algebra.
//!
//! The pointed algebra is free associative on the special pointed trees of
//! positive degree, so a basis of `|A|` is given by cyclic words in those
//! trees. A class is stored as its rotation-minimal factor sequence.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{pointed_product_trees, spine_factorize, Context, Derivation, PointedDerivation, TreeSum};
use crate::error::{Error, Result};
use crate::linear::{FormalSum, Scalar};
use crate::trees::{graft_matching, Label, LabeledTree};

/// A cyclic word of special pointed trees, in minimal rotation.
#[derive(Clone)]
pub struct Necklace {
    factors: Vec<LabeledTree>,
    key: Arc<str>,
}

/// Index of the lexicographically least rotation (ties: the first).
pub fn least_rotation<T: Ord>(seq: &[T]) -> usize {
    let n = seq.len();
    let mut best = 0;
    for start in 1..n {
        let cmp = (0..n).map(|i| seq[(start + i) % n].cmp(&seq[(best + i) % n])).find(|o| o.is_ne());
        if cmp == Some(Ordering::Less) {
            best = start;
        }
    }
    best
}

impl Necklace {
    pub fn new(mut factors: Vec<LabeledTree>) -> Self {
        let r = least_rotation(&factors);
        factors.rotate_left(r);
        let body: Vec<&str> = factors.iter().map(|f| f.key()).collect();
        let key = format!("({})", body.join("|"));
        Self { factors, key: Arc::from(key.as_str()) }
    }

    /// The empty cyclic word, the class of the unit.
    pub fn unit() -> Self {
        Self::new(Vec::new())
    }

    pub fn factors(&self) -> &[LabeledTree] {
        &self.factors
    }

    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(LabeledTree::degree).sum()
    }

    /// A pointed tree representing this class: the product of the factors.
    pub fn lift(&self, basepoint: &Label) -> LabeledTree {
        self.factors
            .iter()
            .fold(LabeledTree::degenerate(basepoint.clone(), basepoint.clone()), |acc, f| {
                pointed_product_trees(&acc, f, basepoint)
            })
    }

    /// Reads `(k1|k2|…)`.
    pub fn parse(ctx: &Context, text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, "a necklace is written `(k1|k2|...)`"))?;
        if inner.trim().is_empty() {
            return Ok(Self::unit());
        }
        let factors = inner.split('|').map(|k| ctx.parse_tree(k)).collect::<Result<Vec<_>>>()?;
        for f in &factors {
            if !matches!(f.classify(), crate::trees::TreeClass::SpecialPointed { spine: 1 }) {
                return Err(Error::Invalid(format!("necklace factor {f} is not special pointed of positive degree")));
            }
        }
        Ok(Self::new(factors))
    }
}

impl PartialEq for Necklace {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Necklace {}

impl Hash for Necklace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state)
    }
}

impl PartialOrd for Necklace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Necklace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.cmp(&other.key)
    }
}

impl fmt::Display for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

impl fmt::Debug for Necklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key)
    }
}

/// Trace class of a combination of pointed trees (all with root `z`).
pub fn trace_class_sum(p: &TreeSum) -> FormalSum<Necklace> {
    p.map_keys(|t| Some(Necklace::new(spine_factorize(t).expect("pointed input"))))
}

/// `t ⊲ d` on trace classes: lift, graft `d` at non-basepoint leaves, and
/// take the class again. `d` must not mention the basepoint.
pub fn act_sum(t: &FormalSum<Necklace>, d: &TreeSum, basepoint: &Label) -> FormalSum<Necklace> {
    let mut out = FormalSum::zero();
    for (n, c) in t {
        let lifted = n.lift(basepoint);
        for (e, ce) in d {
            let grafted = graft_matching(&lifted, e);
            if !grafted.is_zero() {
                out.add_scaled(&(c * ce), &trace_class_sum(&grafted));
            }
        }
    }
    out
}

/// An element of `|der_•(fo(R[S]))|` for a pointed set `(S, z)`.
#[derive(Clone, PartialEq, Eq)]
pub struct TraceElement {
    ctx: Arc<Context>,
    basepoint: Label,
    value: FormalSum<Necklace>,
}

impl TraceElement {
    pub fn new(ctx: Arc<Context>, basepoint: Label, value: FormalSum<Necklace>) -> Self {
        Self { ctx, basepoint, value }
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn basepoint(&self) -> &Label {
        &self.basepoint
    }

    pub fn value(&self) -> &FormalSum<Necklace> {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn parse(ctx: Arc<Context>, basepoint: Label, text: &str) -> Result<Self> {
        let value = FormalSum::parse_with(text, |k| Necklace::parse(&ctx, k))?;
        Ok(Self { ctx, basepoint, value })
    }

    pub fn of(p: &PointedDerivation) -> Self {
        Self {
            ctx: p.context().clone(),
            basepoint: p.basepoint().clone(),
            value: trace_class_sum(p.value()),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(Self::new(self.ctx.clone(), self.basepoint.clone(), &self.value + &other.value))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(Self::new(self.ctx.clone(), self.basepoint.clone(), &self.value - &other.value))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(self.ctx.clone(), self.basepoint.clone(), self.value.scale(c))
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx || self.basepoint != other.basepoint {
            return Err(Error::ContextMismatch("trace elements over different pointed sets".into()));
        }
        Ok(())
    }

    /// The right action of a derivation over `S \ {z}`: `d`'s context must be
    /// this context with the basepoint removed.
    pub fn act(&self, d: &Derivation) -> Result<Self> {
        let expected: Vec<&Label> = self.ctx.labels().iter().filter(|l| **l != self.basepoint).collect();
        let got: Vec<&Label> = d.context().labels().iter().collect();
        if expected != got || d.context().gens() != self.ctx.gens() {
            return Err(Error::ContextMismatch(
                "the acting derivation must live over the label set without the basepoint".into(),
            ));
        }
        Ok(Self::new(self.ctx.clone(), self.basepoint.clone(), act_sum(&self.value, d.value(), &self.basepoint)))
    }

    /// Image under `S ↪ S ⊔ {n fresh symbols}`.
    pub fn stabilize(&self, n: usize) -> Self {
        Self::new(Arc::new(self.ctx.stabilize(n)), self.basepoint.clone(), self.value.clone())
    }
}

impl fmt::Display for TraceElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}

impl fmt::Debug for TraceElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.value, f)
    }
}
