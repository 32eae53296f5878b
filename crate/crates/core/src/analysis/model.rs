//! A uniform interface to the derivation algebras that the analysis runs on.
//!
//! Every algebra here is graded by degree and by a weight in `Z^S`: the leaf
//! (or letter) content minus the root (or generator) coordinate. Both
//! gradings are additive under `⊲` and preserved by the divergence, so all
//! subspaces split into small (degree, weight) blocks.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use crate::classical::{
    classical_div, is_lyndon, lyndon_coordinates, words_with_content, BimoduleClass, BimoduleWord, ClassicalDerivation,
    ClassicalTrace, CyclicWord, LyndonMonomial, Operad, Word, WordSum,
};
use crate::classical::bimodule_normal_form;
use crate::divergence::div_sum;
use crate::freeder::{spine_factorize, Necklace, TreeSum};
use crate::linear::FormalSum;
use crate::trees::{graft_matching, shapes, trees_with_content, GeneratorSet, Label, LabeledTree};

pub type Weight = Vec<i64>;

/// Pads a weight with zeros for the generators added by stabilization.
pub fn pad(w: &Weight, len: usize) -> Weight {
    let mut v = w.clone();
    v.resize(len, 0);
    v
}

pub trait Model: Clone {
    type Basis: Ord + Clone + Hash + fmt::Display + fmt::Debug;
    type Trace: Ord + Clone + Hash + fmt::Display + fmt::Debug;

    fn name(&self) -> String;
    /// Number of generators (labels or letters).
    fn size(&self) -> usize;
    /// The same algebra on `n` more generators; old basis elements keep
    /// their keys and their weights are padded with zeros.
    fn stabilized(&self, n: usize) -> Self;
    /// Weights of the nonempty degree-`d` blocks.
    fn weights(&self, degree: usize) -> Vec<Weight>;
    /// Sorted basis of a block.
    fn basis(&self, degree: usize, weight: &Weight) -> Vec<Self::Basis>;
    fn grading(&self, b: &Self::Basis) -> (usize, Weight);
    fn prelie(&self, a: &Self::Basis, b: &Self::Basis) -> FormalSum<Self::Basis>;
    fn div(&self, b: &Self::Basis) -> FormalSum<Self::Trace>;
    /// Weights of the possibly nonempty degree-`d` trace blocks.
    fn trace_weights(&self, degree: usize) -> Vec<Weight> {
        self.weights(degree).into_iter().filter(|w| w.iter().all(|&x| x >= 0)).collect()
    }
    /// Sorted basis of the trace space in the same block.
    fn trace_basis(&self, degree: usize, weight: &Weight) -> Vec<Self::Trace>;
    /// Spanning set of the image of the special pointed module in a block.
    fn special_traces(&self, degree: usize, weight: &Weight) -> Vec<FormalSum<Self::Trace>>;

    fn bracket(&self, a: &Self::Basis, b: &Self::Basis) -> FormalSum<Self::Basis> {
        let mut out = self.prelie(a, b);
        out -= &self.prelie(b, a);
        out
    }
}

/// Bilinear extension of a basis-level product.
pub fn product_sum<M: Model>(
    m: &M,
    a: &FormalSum<M::Basis>,
    b: &FormalSum<M::Basis>,
    f: impl Fn(&M, &M::Basis, &M::Basis) -> FormalSum<M::Basis>,
) -> FormalSum<M::Basis> {
    let mut out = FormalSum::zero();
    for (x, cx) in a {
        for (y, cy) in b {
            let p = f(m, x, y);
            if !p.is_zero() {
                out.add_scaled(&(cx * cy), &p);
            }
        }
    }
    out
}

pub fn div_of<M: Model>(m: &M, x: &FormalSum<M::Basis>) -> FormalSum<M::Trace> {
    x.map_linear(|b| m.div(b))
}

/// Splits a combination into its (degree, weight) blocks.
pub fn split_blocks<M: Model>(m: &M, x: &FormalSum<M::Basis>) -> Vec<((usize, Weight), FormalSum<M::Basis>)> {
    let mut blocks: HashMap<(usize, Weight), FormalSum<M::Basis>> = HashMap::new();
    for (b, c) in x {
        blocks.entry(m.grading(b)).or_default().add_term(b.clone(), c.clone());
    }
    let mut out: Vec<_> = blocks.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// All vectors of nonnegative integers of length `len` summing to `total`.
pub fn contents(len: usize, total: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() + 1 == len {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k);
            go(len, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if len == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(len, total, &mut Vec::new(), &mut out);
    out
}

fn shift(w: &Weight, i: usize) -> Option<Vec<usize>> {
    w.iter().enumerate().map(|(j, &x)| usize::try_from(x + i64::from(j == i)).ok()).collect()
}

/// Derivations of the free operad algebra on a label set. Labels keep their
/// insertion order so that stabilization only appends weight coordinates.
#[derive(Clone)]
pub struct FreeModel {
    labels: Vec<Label>,
    gens: GeneratorSet,
    index: Arc<HashMap<Label, usize>>,
    leaf_counts: Arc<Mutex<HashMap<usize, BTreeSet<usize>>>>,
}

impl FreeModel {
    pub fn new(labels: Vec<Label>, gens: GeneratorSet) -> Self {
        let index = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        Self { labels, gens, index: Arc::new(index), leaf_counts: Arc::default() }
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    fn leaf_counts(&self, degree: usize) -> BTreeSet<usize> {
        let mut cache = self.leaf_counts.lock().expect("cache poisoned");
        cache.entry(degree).or_insert_with(|| shapes(&self.gens, degree).iter().map(|s| s.leaf_count()).collect()).clone()
    }

    fn content(&self, t: &LabeledTree) -> Vec<i64> {
        let mut c = vec![0; self.labels.len()];
        for l in t.leaves() {
            c[self.index[l]] += 1;
        }
        c
    }
}

impl Model for FreeModel {
    type Basis = LabeledTree;
    type Trace = Necklace;

    fn name(&self) -> String {
        let names: Vec<&str> = self.labels.iter().map(Label::as_str).collect();
        format!("free[{}]", names.join(","))
    }

    fn size(&self) -> usize {
        self.labels.len()
    }

    fn stabilized(&self, n: usize) -> Self {
        let next = self.labels.iter().filter_map(Label::stab_index).max().unwrap_or(0) + 1;
        let mut labels = self.labels.clone();
        labels.extend((next..next + n).map(Label::stab));
        Self::new(labels, self.gens.clone())
    }

    fn weights(&self, degree: usize) -> Vec<Weight> {
        let m = self.labels.len();
        let mut out = BTreeSet::new();
        for l in self.leaf_counts(degree) {
            for c in contents(m, l) {
                for r in 0..m {
                    let mut w: Weight = c.iter().map(|&x| x as i64).collect();
                    w[r] -= 1;
                    out.insert(w);
                }
            }
        }
        out.into_iter().collect()
    }

    fn basis(&self, degree: usize, weight: &Weight) -> Vec<LabeledTree> {
        let counts = self.leaf_counts(degree);
        let mut out = Vec::new();
        for r in 0..self.labels.len() {
            let Some(c) = shift(weight, r) else { continue };
            if !counts.contains(&c.iter().sum()) {
                continue;
            }
            out.extend(trees_with_content(&self.labels, &self.gens, degree, &self.labels[r], &c));
        }
        out.sort();
        out.dedup();
        out
    }

    fn grading(&self, t: &LabeledTree) -> (usize, Weight) {
        let mut w = self.content(t);
        w[self.index[t.root()]] -= 1;
        (t.degree(), w)
    }

    fn prelie(&self, a: &LabeledTree, b: &LabeledTree) -> FormalSum<LabeledTree> {
        graft_matching(a, b)
    }

    fn div(&self, b: &LabeledTree) -> FormalSum<Necklace> {
        div_sum(&TreeSum::basis(b.clone()))
    }

    fn trace_basis(&self, degree: usize, weight: &Weight) -> Vec<Necklace> {
        let Some(mut c) = weight.iter().map(|&x| usize::try_from(x).ok()).collect::<Option<Vec<usize>>>() else {
            return Vec::new();
        };
        let plus = Label::plus();
        let mut labels = self.labels.clone();
        labels.push(plus.clone());
        c.push(1);
        let mut out: Vec<Necklace> = trees_with_content(&labels, &self.gens, degree, &plus, &c)
            .iter()
            .map(|t| Necklace::new(spine_factorize(t).expect("pointed by construction")))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    fn special_traces(&self, degree: usize, weight: &Weight) -> Vec<FormalSum<Necklace>> {
        if degree == 0 {
            return Vec::new();
        }
        self.trace_basis(degree, weight).into_iter().filter(|n| n.factors().len() == 1).map(FormalSum::basis).collect()
    }
}

/// A basis derivation of a classical free algebra: generator `gen` goes to
/// `word` (a Lyndon word standing for its bracketing, a tensor word, or a
/// sorted monomial).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenWord {
    pub operad: Operad,
    pub gen: u8,
    pub word: Word,
}

impl GenWord {
    pub fn value(&self) -> WordSum {
        match self.operad {
            Operad::Lie => crate::classical::lyndon_expansion(&self.word),
            _ => WordSum::basis(self.word.clone()),
        }
    }

    pub fn derivation(&self, rank: usize) -> ClassicalDerivation {
        ClassicalDerivation::single(self.operad, rank, self.gen as usize, self.value()).expect("valid basis derivation")
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = crate::classical::letter_char(self.gen);
        match self.operad {
            Operad::Lie => write!(f, "{letter} -> {}", LyndonMonomial::new(self.word.clone()).map_err(|_| fmt::Error)?),
            _ => write!(f, "{letter} -> {}", self.word),
        }
    }
}

impl fmt::Debug for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A trace-space basis element of a classical realization.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TraceKey {
    Cyclic(CyclicWord),
    Bimodule(BimoduleClass),
    Monomial(Word),
}

impl fmt::Display for TraceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceKey::Cyclic(c) => fmt::Display::fmt(c, f),
            TraceKey::Bimodule(c) => fmt::Display::fmt(c, f),
            TraceKey::Monomial(w) => fmt::Display::fmt(w, f),
        }
    }
}

impl fmt::Debug for TraceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn trace_keys(t: &ClassicalTrace) -> FormalSum<TraceKey> {
    match t {
        ClassicalTrace::Lie(x) => x.map_keys(|c| Some(TraceKey::Cyclic(c.clone()))),
        ClassicalTrace::Ass(x) => x.map_keys(|c| Some(TraceKey::Bimodule(c.clone()))),
        ClassicalTrace::Com(x) => x.map_keys(|w| Some(TraceKey::Monomial(w.clone()))),
    }
}

/// Derivations of the free Lie, associative or commutative algebra of a
/// given rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalModel {
    pub operad: Operad,
    pub rank: usize,
}

impl ClassicalModel {
    pub fn new(operad: Operad, rank: usize) -> Self {
        Self { operad, rank }
    }

    /// Coordinates of a classical derivation in the basis of this model.
    pub fn coordinates(&self, d: &ClassicalDerivation) -> FormalSum<GenWord> {
        let mut out = FormalSum::zero();
        for (i, img) in d.images().iter().enumerate() {
            let coords: Vec<(Word, crate::linear::Scalar)> = match self.operad {
                Operad::Lie => lyndon_coordinates(img)
                    .expect("Lie derivation values are Lie elements")
                    .into_iter()
                    .map(|(m, c)| (m.word().clone(), c))
                    .collect(),
                _ => img.iter().map(|(w, c)| (w.clone(), c.clone())).collect(),
            };
            for (w, c) in coords {
                out.add_term(GenWord { operad: self.operad, gen: i as u8, word: w }, c);
            }
        }
        out
    }

    fn content_i64(&self, w: &Word) -> Vec<i64> {
        w.content(self.rank).into_iter().map(|x| x as i64).collect()
    }
}

impl Model for ClassicalModel {
    type Basis = GenWord;
    type Trace = TraceKey;

    fn name(&self) -> String {
        format!("{}[rank {}]", self.operad, self.rank)
    }

    fn size(&self) -> usize {
        self.rank
    }

    fn stabilized(&self, n: usize) -> Self {
        Self::new(self.operad, self.rank + n)
    }

    fn weights(&self, degree: usize) -> Vec<Weight> {
        let mut out = BTreeSet::new();
        for c in contents(self.rank, degree + 1) {
            let distinct = c.iter().filter(|&&x| x > 0).count();
            if self.operad == Operad::Lie && degree > 0 && distinct < 2 {
                continue;
            }
            for i in 0..self.rank {
                let mut w: Weight = c.iter().map(|&x| x as i64).collect();
                w[i] -= 1;
                out.insert(w);
            }
        }
        out.into_iter().collect()
    }

    fn trace_weights(&self, degree: usize) -> Vec<Weight> {
        contents(self.rank, degree).into_iter().map(|c| c.into_iter().map(|x| x as i64).collect()).collect()
    }

    fn basis(&self, degree: usize, weight: &Weight) -> Vec<GenWord> {
        let mut out = Vec::new();
        for i in 0..self.rank {
            let Some(c) = shift(weight, i) else { continue };
            if c.iter().sum::<usize>() != degree + 1 {
                continue;
            }
            let words = match self.operad {
                Operad::Lie => words_with_content(&c).into_iter().filter(is_lyndon).collect(),
                Operad::Ass => words_with_content(&c),
                Operad::Com => vec![words_with_content(&c).swap_remove(0)],
            };
            out.extend(words.into_iter().map(|w| GenWord { operad: self.operad, gen: i as u8, word: w }));
        }
        out.sort();
        out
    }

    fn grading(&self, b: &GenWord) -> (usize, Weight) {
        let mut w = self.content_i64(&b.word);
        w[b.gen as usize] -= 1;
        (b.word.len() - 1, w)
    }

    fn prelie(&self, a: &GenWord, b: &GenWord) -> FormalSum<GenWord> {
        let d = a.derivation(self.rank);
        let e = b.derivation(self.rank);
        self.coordinates(&d.prelie(&e).expect("same algebra"))
    }

    fn div(&self, b: &GenWord) -> FormalSum<TraceKey> {
        trace_keys(&classical_div(&b.derivation(self.rank)))
    }

    fn trace_basis(&self, degree: usize, weight: &Weight) -> Vec<TraceKey> {
        let Some(c) = weight.iter().map(|&x| usize::try_from(x).ok()).collect::<Option<Vec<usize>>>() else {
            return Vec::new();
        };
        if c.iter().sum::<usize>() != degree {
            return Vec::new();
        }
        let words = words_with_content(&c);
        let mut out: Vec<TraceKey> = match self.operad {
            Operad::Lie => words.iter().map(|w| TraceKey::Cyclic(CyclicWord::new(w))).collect(),
            Operad::Com => words.into_iter().take(1).map(TraceKey::Monomial).collect(),
            Operad::Ass => {
                let mut keys = Vec::new();
                for w in &words {
                    for k in 0..=w.len() {
                        let v = w.letters();
                        let bw = BimoduleWord::new(Word(v[..k].to_vec()), Word(v[k..].to_vec()));
                        keys.extend(bimodule_normal_form(&FormalSum::basis(bw)).keys().cloned().map(TraceKey::Bimodule));
                    }
                }
                keys
            }
        };
        out.sort();
        out.dedup();
        out
    }

    fn special_traces(&self, degree: usize, weight: &Weight) -> Vec<FormalSum<TraceKey>> {
        if degree == 0 {
            return Vec::new();
        }
        let basis = self.trace_basis(degree, weight);
        match self.operad {
            Operad::Lie => {
                if degree == 1 {
                    basis.into_iter().map(FormalSum::basis).collect()
                } else {
                    Vec::new()
                }
            }
            Operad::Ass => basis
                .into_iter()
                .filter(|k| matches!(k, TraceKey::Bimodule(c) if c.word().left.is_empty() || c.word().right.is_empty()))
                .map(FormalSum::basis)
                .collect(),
            Operad::Com => basis.into_iter().map(FormalSum::basis).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{enumerate_trees, parse_label_set};

    fn free(s: &str) -> FreeModel {
        FreeModel::new(parse_label_set(s).unwrap(), GeneratorSet::binary())
    }

    #[test]
    fn free_blocks_partition_the_tree_basis() {
        let m = free("x,y");
        for d in 0..=3 {
            let mut all: Vec<LabeledTree> = m.weights(d).iter().flat_map(|w| m.basis(d, w)).collect();
            all.sort();
            assert_eq!(all, enumerate_trees(m.labels(), m.gens(), d, None, None), "degree {d}");
            for t in &all {
                let (deg, w) = m.grading(t);
                assert!(m.basis(deg, &w).contains(t));
            }
        }
    }

    #[test]
    fn stabilization_appends_coordinates() {
        let m = free("x,y").stabilized(2);
        assert_eq!(m.labels().iter().map(Label::as_str).collect::<Vec<_>>(), ["x", "y", "+1", "+2"]);
        assert_eq!(m.stabilized(1).labels()[4], Label::stab(3));
        let t = LabeledTree::parse(&GeneratorSet::binary(), "x<-*(x,+1)").unwrap();
        assert_eq!(m.grading(&t), (1, vec![0, 0, 1, 0]));
    }

    #[test]
    fn free_trace_blocks_are_necklaces() {
        let m = free("x,y");
        let tb = m.trace_basis(2, &vec![1, 1]);
        assert!(!tb.is_empty());
        for d in 1..=3 {
            for w in m.weights(d) {
                for t in m.basis(d, &w) {
                    for n in m.div(&t).keys() {
                        assert!(m.trace_basis(d, &w).contains(n));
                    }
                }
            }
        }
    }

    #[test]
    fn classical_blocks_cover_the_bases() {
        for (op, expect) in [(Operad::Lie, 2 * 2), (Operad::Ass, 2 * 8), (Operad::Com, 2 * 4)] {
            let m = ClassicalModel::new(op, 2);
            let total: usize = m.weights(2).iter().map(|w| m.basis(2, w).len()).sum();
            assert_eq!(total, expect, "{op}");
        }
    }

    #[test]
    fn classical_traces_land_in_blocks() {
        for op in [Operad::Lie, Operad::Ass, Operad::Com] {
            let m = ClassicalModel::new(op, 2);
            for d in 0..=3 {
                for w in m.weights(d) {
                    let tb = m.trace_basis(d, &w);
                    for b in m.basis(d, &w) {
                        assert_eq!(m.grading(&b), (d, w.clone()));
                        for k in m.div(&b).keys() {
                            assert!(tb.contains(k), "{op} {b} {k}");
                        }
                    }
                }
            }
        }
    }
}
