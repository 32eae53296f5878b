//! Transport from the free binary operad along `fo → Lie`, `fo → Ass` and
//! `fo → Com`, sending the generator to the bracket, the product and the
//! commutative product respectively.
//!
//! Labels map to letters by their position in the label list. The basepoint
//! `+` maps to the slot letter; a pointed tree then evaluates to an element
//! linear in the slot, which is read as an element of `T(V)` (Lie) or
//! `T(V) ⊗ T(V)^op` (Ass).

use super::derivation::{normalize, ClassicalDerivation, Operad};
use super::lie::{commutator, WordSum};
use super::traces::{bimodule_normal_form, BimoduleClass};
use super::words::{BimoduleWord, CyclicWord, Word, SLOT};
use crate::error::{Error, Result};
use crate::freeder::{Derivation, Necklace, TreeSum};
use crate::linear::FormalSum;
use crate::trees::{Label, LabeledTree, Node};

fn letter_of(labels: &[Label], l: &Label) -> Result<u8> {
    if *l == Label::plus() {
        return Ok(SLOT);
    }
    labels.iter().position(|x| x == l).map(|i| i as u8).ok_or_else(|| Error::UnknownLabel(l.to_string()))
}

fn eval_node(operad: Operad, labels: &[Label], node: &Node) -> Result<WordSum> {
    match node {
        Node::Leaf(l) => Ok(WordSum::basis(Word::letter(letter_of(labels, l)?))),
        Node::Vertex(_, ch) => {
            if ch.len() != 2 {
                return Err(Error::NotBinary);
            }
            let a = eval_node(operad, labels, &ch[0])?;
            let b = eval_node(operad, labels, &ch[1])?;
            Ok(match operad {
                Operad::Lie => commutator(&a, &b),
                Operad::Ass | Operad::Com => {
                    let mut out = WordSum::zero();
                    for (u, cu) in &a {
                        for (v, cv) in &b {
                            out.add_term(u.concat(v), cu * cv);
                        }
                    }
                    out
                }
            })
        }
    }
}

/// Image of a tree's operation, evaluated on its leaf letters.
pub fn eval_tree(operad: Operad, labels: &[Label], t: &LabeledTree) -> Result<WordSum> {
    Ok(normalize(operad, &eval_node(operad, labels, t.node())?))
}

/// The classical derivation induced by a free-operad derivation over the
/// label set `labels` (letters in that order).
pub fn transport_derivation(operad: Operad, labels: &[Label], d: &TreeSum) -> Result<ClassicalDerivation> {
    let mut images = vec![WordSum::zero(); labels.len()];
    for (t, c) in d {
        let i = letter_of(labels, t.root())? as usize;
        images.get_mut(i).ok_or_else(|| Error::UnknownLabel(t.root().to_string()))?.add_scaled(c, &eval_tree(operad, labels, t)?);
    }
    ClassicalDerivation::new(operad, labels.len(), images)
}

pub fn transport(operad: Operad, d: &Derivation) -> Result<ClassicalDerivation> {
    transport_derivation(operad, d.context().labels(), d.value())
}

fn pointed_values(operad: Operad, labels: &[Label], x: &FormalSum<Necklace>) -> Result<WordSum> {
    let plus = Label::plus();
    let mut out = WordSum::zero();
    for (n, c) in x {
        out.add_scaled(c, &eval_tree(operad, labels, &n.lift(&plus))?);
    }
    Ok(out)
}

/// `|der_•(fo(R[S_+]))| → |T(V)|`: evaluate a lifted representative in the
/// free Lie algebra and keep the words ending in the slot.
pub fn transport_trace_lie(labels: &[Label], x: &FormalSum<Necklace>) -> Result<FormalSum<CyclicWord>> {
    let vals = pointed_values(Operad::Lie, labels, x)?;
    Ok(vals.map_keys(|w| match w.letters().split_last() {
        Some((&SLOT, init)) => Some(CyclicWord::new(&Word(init.to_vec()))),
        _ => None,
    }))
}

/// `|der_•(fo(R[S_+]))| → |T(V) ⊗ T(V)^op|`: the leaf word of a lifted
/// representative is `α 1 β`, giving `α ⊗ β`.
pub fn transport_trace_ass(labels: &[Label], x: &FormalSum<Necklace>) -> Result<FormalSum<BimoduleClass>> {
    let vals = pointed_values(Operad::Ass, labels, x)?;
    let mut raw = FormalSum::zero();
    for (w, c) in &vals {
        let v = w.letters();
        let k = v.iter().position(|&l| l == SLOT).ok_or_else(|| Error::NotPointed(w.to_string()))?;
        raw.add_term(BimoduleWord::new(Word(v[..k].to_vec()), Word(v[k + 1..].to_vec())), c.clone());
    }
    Ok(bimodule_normal_form(&raw))
}

/// `|der_•(fo(R[S_+]))| → S(V)`: the slot is set to 1.
pub fn transport_trace_com(labels: &[Label], x: &FormalSum<Necklace>) -> Result<WordSum> {
    let vals = pointed_values(Operad::Com, labels, x)?;
    Ok(vals.map_keys(|w| Some(Word(w.letters().iter().copied().filter(|&l| l != SLOT).collect()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::traces::{com_divergence, double_divergence, satoh_trace};
    use crate::divergence::div_sum;
    use crate::trees::{enumerate_trees, parse_label_set, GeneratorSet};

    #[test]
    fn degree_one_and_two_trees_agree_with_direct_divergences() {
        let labels = parse_label_set("x,y").unwrap();
        let gens = GeneratorSet::binary();
        for n in 0..=2 {
            for t in enumerate_trees(&labels, &gens, n, None, None) {
                let d = TreeSum::basis(t.clone());
                let div = div_sum(&d);
                let lie = transport_derivation(Operad::Lie, &labels, &d).unwrap();
                assert_eq!(satoh_trace(&lie).unwrap(), transport_trace_lie(&labels, &div).unwrap(), "{t}");
                let ass = transport_derivation(Operad::Ass, &labels, &d).unwrap();
                assert_eq!(double_divergence(&ass).unwrap(), transport_trace_ass(&labels, &div).unwrap(), "{t}");
                let com = transport_derivation(Operad::Com, &labels, &d).unwrap();
                assert_eq!(com_divergence(&com).unwrap(), transport_trace_com(&labels, &div).unwrap(), "{t}");
            }
        }
    }

    #[test]
    fn generator_maps_to_bracket() {
        let labels = parse_label_set("x,y").unwrap();
        let t = LabeledTree::parse(&GeneratorSet::binary(), "x<-*(x,y)").unwrap();
        let lie = eval_tree(Operad::Lie, &labels, &t).unwrap();
        assert_eq!(lie.to_string(), "1*xy - 1*yx");
        assert_eq!(eval_tree(Operad::Com, &labels, &t).unwrap().to_string(), "1*xy");
    }
}
