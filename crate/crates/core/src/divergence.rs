//! The contraction `Φ`, the divergence `Div = |Φ|`, and the cocycle check.
//!
//! `Φ` sends a tree with root `z` to the sum, over its `z`-labelled leaves,
//! of the tree with the root and that one leaf relabelled by the fresh
//! basepoint `+`. The result is a pointed derivation over `(S ⊔ {+}, +)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::freeder::{
    act_sum, bracket_sum, trace_class_sum, Context, Derivation, Necklace, PointedDerivation, TraceElement, TreeSum,
};
use crate::linear::{FormalSum, Scalar};
use crate::trees::{Label, LabeledTree};

/// `Φ` on a single tree.
pub fn contract_tree(t: &LabeledTree) -> TreeSum {
    let plus = Label::plus();
    let mut out = TreeSum::zero();
    for pos in t.leaf_positions(t.root()) {
        let relabelled = t.with_leaf(pos, plus.clone()).expect("position in range").with_root(plus.clone());
        out.add_term(relabelled, Scalar::one());
    }
    out
}

/// `Φ` extended linearly.
pub fn contract_sum(d: &TreeSum) -> TreeSum {
    d.map_linear(contract_tree)
}

/// `Div` extended linearly.
pub fn div_sum(d: &TreeSum) -> FormalSum<Necklace> {
    trace_class_sum(&contract_sum(d))
}

/// `Div([d, e]) − Div(d)·e + Div(e)·d` on raw sums.
pub fn cocycle_defect_sum(d: &TreeSum, e: &TreeSum) -> FormalSum<Necklace> {
    let plus = Label::plus();
    let mut out = div_sum(&bracket_sum(d, e));
    out -= &act_sum(&div_sum(d), e, &plus);
    out += &act_sum(&div_sum(e), d, &plus);
    out
}

/// `S ⊔ {+}` for a context that does not already use `+`.
pub fn pointed_context(ctx: &Context) -> Result<Context> {
    if ctx.contains(&Label::plus()) {
        return Err(Error::ReservedLabel("+".into()));
    }
    ctx.with_label(Label::plus())
}

pub fn contract(d: &Derivation) -> Result<PointedDerivation> {
    let ctx = Arc::new(pointed_context(d.context())?);
    Ok(PointedDerivation::from_parts(ctx, Label::plus(), contract_sum(d.value())))
}

pub fn div(d: &Derivation) -> Result<TraceElement> {
    Ok(TraceElement::of(&contract(d)?))
}

pub fn cocycle_defect(d: &Derivation, e: &Derivation) -> Result<TraceElement> {
    if d.context() != e.context() {
        return Err(Error::ContextMismatch("cocycle arguments over different contexts".into()));
    }
    let ctx = Arc::new(pointed_context(d.context())?);
    Ok(TraceElement::new(ctx, Label::plus(), cocycle_defect_sum(d.value(), e.value())))
}

/// Divergence of the positive-degree part.
pub fn div_positive(d: &Derivation) -> Result<TraceElement> {
    div(&d.restrict_positive())
}

/// Forgets the basepoint of a pointed tree over `S_+` by renaming `+` to a
/// fresh stabilization symbol: a derivation over `S ⊔ {+k}` whose
/// divergence is the class of the tree.
pub fn forget_basepoint(p: &LabeledTree, fresh: &Label) -> LabeledTree {
    p.rename(&Label::plus(), fresh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{parse_label_set, GeneratorSet};

    fn ctx(s: &str) -> Arc<Context> {
        Arc::new(Context::user(parse_label_set(s).unwrap(), GeneratorSet::binary()).unwrap())
    }

    fn tree(s: &str) -> LabeledTree {
        LabeledTree::parse(&GeneratorSet::binary(), s).unwrap()
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(
            contract_tree(&tree("z<-*(z,z)")),
            FormalSum::basis(tree("+<-*(+,z)")) + FormalSum::basis(tree("+<-*(z,+)"))
        );
        assert!(contract_tree(&tree("z<-*(x,y)")).is_zero());
        let c = ctx("x,y,z");
        let id = Derivation::identity(c.clone());
        let phi = contract(&id).unwrap();
        let unit = PointedDerivation::unit(phi.context().clone(), Label::plus()).unwrap();
        assert_eq!(phi, unit.scale(&Scalar::from(3)));
    }

    #[test]
    fn divergence_examples() {
        let c = ctx("z");
        let d = Derivation::parse(c.clone(), "z<-*(z,z)").unwrap();
        let got = div(&d).unwrap();
        let expected: FormalSum<Necklace> = [
            (Necklace::new(vec![tree("+<-*(+,z)")]), Scalar::one()),
            (Necklace::new(vec![tree("+<-*(z,+)")]), Scalar::one()),
        ]
        .into_iter()
        .collect();
        assert_eq!(got.value(), &expected);
        assert!(div(&Derivation::zero(c)).unwrap().is_zero());
        assert!(div(&Derivation::parse(ctx("x,y,z"), "z<-*(x,y)").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn deeper_contraction_factorizes() {
        // z<-*(x,*(y,z)) contracts to a pointed tree whose class has two factors.
        let d = tree("z<-*(x,*(y,z))");
        let nk = div_sum(&FormalSum::basis(d));
        let expected = Necklace::new(vec![tree("+<-*(x,+)"), tree("+<-*(y,+)")]);
        assert_eq!(nk, FormalSum::basis(expected));
    }

    #[test]
    fn cocycle_on_small_pairs() {
        let c = ctx("x,y");
        let d = Derivation::parse(c.clone(), "x<-*(x,y) + y<-*(x,x)").unwrap();
        let e = Derivation::parse(c.clone(), "y<-*(y,*(x,y)) - 2*x<-y").unwrap();
        assert!(cocycle_defect(&d, &e).unwrap().is_zero());
        assert!(cocycle_defect(&d, &d).unwrap().is_zero());
    }

    #[test]
    fn positive_restriction() {
        let c = ctx("x,y");
        let d0 = Derivation::parse(c.clone(), "x<-x + x<-y").unwrap();
        assert!(div_positive(&d0).unwrap().is_zero());
        assert!(!div(&d0).unwrap().is_zero());
        let d2 = Derivation::parse(c, "x<-*(x,*(x,y))").unwrap();
        assert_eq!(div_positive(&d2).unwrap(), div(&d2).unwrap());
    }

    #[test]
    fn reserved_basepoint_collision() {
        let c = Arc::new(Context::new(vec![Label::plus(), Label::user("x").unwrap()], GeneratorSet::binary()));
        let d = Derivation::parse(c, "x<-*(x,+)").unwrap();
        assert!(matches!(contract(&d), Err(Error::ReservedLabel(_))));
    }
}
