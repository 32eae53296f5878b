//! Divergences of classical derivations and the trace spaces they land in.
//!
//! * Lie: `|T(V)|`, cyclic words.
//! * Ass: `|T(V) ⊗ T(V)^op|`, computed by reducing modulo the span of
//!   commutators of the bimodule algebra, one (left content, right content)
//!   block at a time.
//! * Com: the symmetric algebra itself.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::derivation::{normalize, ClassicalDerivation, Operad};
use super::lie::WordSum;
use super::words::{words_with_content, BimoduleWord, CyclicWord, Word};
use crate::error::{Error, Result};
use crate::linear::{FormalSum, Scalar, Subspace};

/// A class in `|T(V) ⊗ T(V)^op|`, stored by its normal-form word; prints
/// as `~α|β`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BimoduleClass(BimoduleWord);

impl BimoduleClass {
    pub fn word(&self) -> &BimoduleWord {
        &self.0
    }

    pub fn parse(text: &str) -> Result<FormalSum<Self>> {
        Ok(bimodule_normal_form(&FormalSum::basis(BimoduleWord::parse(text)?)))
    }
}

impl fmt::Display for BimoduleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "~{}", self.0)
    }
}

impl fmt::Debug for BimoduleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

type BlockKey = (Vec<usize>, Vec<usize>);

fn content_of(w: &Word) -> Vec<usize> {
    let rank = w.letters().iter().map(|&l| l as usize + 1).max().unwrap_or(0);
    w.content(rank)
}

fn commutator_block(key: &BlockKey) -> Arc<Subspace<BimoduleWord>> {
    static CACHE: OnceLock<Mutex<HashMap<BlockKey, Arc<Subspace<BimoduleWord>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("cache poisoned").get(key) {
        return hit.clone();
    }
    let lefts = words_with_content(&key.0);
    let rights = words_with_content(&key.1);
    let mut ambient: Vec<BimoduleWord> =
        lefts.iter().flat_map(|a| rights.iter().map(move |b| BimoduleWord::new(a.clone(), b.clone()))).collect();
    // Descending order puts pivots on large words, so normal forms are the
    // smallest word of each class.
    ambient.sort_by(|a, b| b.cmp(a));
    let mut s = Subspace::new(ambient.clone());
    for w in &ambient {
        let (p, q) = w.bidegree();
        for i in 0..=p {
            for j in 0..=q {
                // (a⊗b)(a'⊗b') − (a'⊗b')(a⊗b) with a = A[..i], a' = A[i..],
                // b' = B[..j], b = B[j..].
                let (a, a2) = w.left.letters().split_at(i);
                let (b2, b) = w.right.letters().split_at(j);
                let x = BimoduleWord::new(Word(a.to_vec()), Word(b.to_vec()));
                let y = BimoduleWord::new(Word(a2.to_vec()), Word(b2.to_vec()));
                let mut c = FormalSum::basis(x.mul(&y));
                c.add_term(y.mul(&x), -Scalar::one());
                s.insert(&c);
            }
        }
    }
    let s = Arc::new(s);
    cache.lock().expect("cache poisoned").insert(key.clone(), s.clone());
    s
}

fn normalize_content(mut c: Vec<usize>) -> Vec<usize> {
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

/// Reduces a bimodule combination modulo commutators.
pub fn bimodule_normal_form(x: &FormalSum<BimoduleWord>) -> FormalSum<BimoduleClass> {
    let mut blocks: HashMap<BlockKey, FormalSum<BimoduleWord>> = HashMap::new();
    for (w, c) in x {
        let key = (normalize_content(content_of(&w.left)), normalize_content(content_of(&w.right)));
        blocks.entry(key).or_default().add_term(w.clone(), c.clone());
    }
    let mut out = FormalSum::zero();
    for (key, part) in blocks {
        let reduced = commutator_block(&key).reduce(&part);
        for (w, c) in reduced {
            out.add_term(BimoduleClass(w), c);
        }
    }
    out
}

fn expect(d: &ClassicalDerivation, operad: Operad) -> Result<()> {
    if d.operad() != operad {
        return Err(Error::Invalid(format!("expected a {operad} derivation, got {}", d.operad())));
    }
    Ok(())
}

/// Satoh trace: for each generator `x_i`, the words of `d(x_i)` ending in
/// `x_i`, with that last letter removed, taken up to rotation.
pub fn satoh_trace(d: &ClassicalDerivation) -> Result<FormalSum<CyclicWord>> {
    expect(d, Operad::Lie)?;
    Ok(satoh_words(d))
}

fn satoh_words(d: &ClassicalDerivation) -> FormalSum<CyclicWord> {
    let mut out = FormalSum::zero();
    for (i, img) in d.images().iter().enumerate() {
        for (w, c) in img {
            if let Some((&last, init)) = w.letters().split_last() {
                if last as usize == i {
                    out.add_term(CyclicWord::new(&Word(init.to_vec())), c.clone());
                }
            }
        }
    }
    out
}

/// Splits of the words of `d(x_i)` at each occurrence of `x_i`.
pub fn double_divergence_raw(d: &ClassicalDerivation) -> FormalSum<BimoduleWord> {
    let mut out = FormalSum::zero();
    for (i, img) in d.images().iter().enumerate() {
        for (w, c) in img {
            let v = w.letters();
            for (k, &l) in v.iter().enumerate() {
                if l as usize == i {
                    out.add_term(BimoduleWord::new(Word(v[..k].to_vec()), Word(v[k + 1..].to_vec())), c.clone());
                }
            }
        }
    }
    out
}

pub fn double_divergence(d: &ClassicalDerivation) -> Result<FormalSum<BimoduleClass>> {
    expect(d, Operad::Ass)?;
    Ok(bimodule_normal_form(&double_divergence_raw(d)))
}

/// `Σ_i ∂ d(x_i) / ∂ x_i`.
pub fn com_divergence(d: &ClassicalDerivation) -> Result<WordSum> {
    expect(d, Operad::Com)?;
    let mut out = WordSum::zero();
    for (i, img) in d.images().iter().enumerate() {
        for (w, c) in img {
            let v = w.letters();
            let m = v.iter().filter(|&&l| l as usize == i).count();
            if m > 0 {
                let pos = v.iter().position(|&l| l as usize == i).expect("occurs");
                let mut rest = v.to_vec();
                rest.remove(pos);
                out.add_term(Word(rest), c * &Scalar::from(m));
            }
        }
    }
    Ok(out)
}

/// The algebra map `T(V) → T(V) ⊗ T(V)^op`, `v ↦ v⊗1 − 1⊗v`.
pub fn tilde_delta(w: &Word) -> FormalSum<BimoduleWord> {
    let mut acc = FormalSum::basis(BimoduleWord::unit());
    for &l in w.letters() {
        let left = BimoduleWord::new(Word::letter(l), Word::empty());
        let right = BimoduleWord::new(Word::empty(), Word::letter(l));
        let mut next = FormalSum::zero();
        for (t, c) in &acc {
            next.add_term(t.mul(&left), c.clone());
            next.add_term(t.mul(&right), -c);
        }
        acc = next;
    }
    acc
}

/// The map `|T(V)| → |T(V) ⊗ T(V)^op|` induced by `tilde_delta`.
pub fn tilde_delta_trace(x: &FormalSum<CyclicWord>) -> FormalSum<BimoduleClass> {
    bimodule_normal_form(&x.map_linear(|c| tilde_delta(c.word())))
}

/// `α ⊗ β ↦ αβ` followed by abelianization.
pub fn abelianize(x: &FormalSum<BimoduleClass>) -> WordSum {
    x.map_keys(|c| Some(c.0.left.concat(&c.0.right).sorted()))
}

pub fn act_lie(t: &FormalSum<CyclicWord>, d: &ClassicalDerivation) -> FormalSum<CyclicWord> {
    let words: WordSum = t.map_keys(|c| Some(c.word().clone()));
    d.extend(&words).map_keys(|w| Some(CyclicWord::new(w)))
}

pub fn act_ass(t: &FormalSum<BimoduleClass>, d: &ClassicalDerivation) -> FormalSum<BimoduleClass> {
    let mut raw = FormalSum::zero();
    for (c, k) in t {
        let w = &c.0;
        for (a, ca) in d.extend(&WordSum::basis(w.left.clone())) {
            raw.add_term(BimoduleWord::new(a, w.right.clone()), k * &ca);
        }
        for (b, cb) in d.extend(&WordSum::basis(w.right.clone())) {
            raw.add_term(BimoduleWord::new(w.left.clone(), b), k * &cb);
        }
    }
    bimodule_normal_form(&raw)
}

pub fn act_com(t: &WordSum, d: &ClassicalDerivation) -> WordSum {
    d.extend(&normalize(Operad::Com, t))
}

/// A divergence value in one of the three trace spaces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ClassicalTrace {
    Lie(FormalSum<CyclicWord>),
    Ass(FormalSum<BimoduleClass>),
    Com(WordSum),
}

impl ClassicalTrace {
    pub fn is_zero(&self) -> bool {
        match self {
            ClassicalTrace::Lie(x) => x.is_zero(),
            ClassicalTrace::Ass(x) => x.is_zero(),
            ClassicalTrace::Com(x) => x.is_zero(),
        }
    }
}

impl fmt::Display for ClassicalTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassicalTrace::Lie(x) => fmt::Display::fmt(x, f),
            ClassicalTrace::Ass(x) => fmt::Display::fmt(x, f),
            ClassicalTrace::Com(x) => fmt::Display::fmt(x, f),
        }
    }
}

/// The divergence appropriate to the derivation's operad.
pub fn classical_div(d: &ClassicalDerivation) -> ClassicalTrace {
    match d.operad() {
        Operad::Lie => ClassicalTrace::Lie(satoh_words(d)),
        Operad::Ass => ClassicalTrace::Ass(bimodule_normal_form(&double_divergence_raw(d))),
        Operad::Com => ClassicalTrace::Com(com_divergence(d).expect("com derivation")),
    }
}

fn classical_act(t: &ClassicalTrace, d: &ClassicalDerivation) -> ClassicalTrace {
    match t {
        ClassicalTrace::Lie(x) => ClassicalTrace::Lie(act_lie(x, d)),
        ClassicalTrace::Ass(x) => ClassicalTrace::Ass(act_ass(x, d)),
        ClassicalTrace::Com(x) => ClassicalTrace::Com(act_com(x, d)),
    }
}

fn combine(a: ClassicalTrace, b: ClassicalTrace, sign: i64) -> ClassicalTrace {
    let s = Scalar::from(sign);
    match (a, b) {
        (ClassicalTrace::Lie(mut x), ClassicalTrace::Lie(y)) => {
            x.add_scaled(&s, &y);
            ClassicalTrace::Lie(x)
        }
        (ClassicalTrace::Ass(mut x), ClassicalTrace::Ass(y)) => {
            x.add_scaled(&s, &y);
            ClassicalTrace::Ass(x)
        }
        (ClassicalTrace::Com(mut x), ClassicalTrace::Com(y)) => {
            x.add_scaled(&s, &y);
            ClassicalTrace::Com(x)
        }
        _ => unreachable!("traces of one operad"),
    }
}

/// `Div([d, e]) − Div(d)·e + Div(e)·d` in the classical realization.
pub fn classical_cocycle_defect(d: &ClassicalDerivation, e: &ClassicalDerivation) -> Result<ClassicalTrace> {
    let de = d.bracket(e)?;
    let mut out = classical_div(&de);
    out = combine(out, classical_act(&classical_div(d), e), -1);
    out = combine(out, classical_act(&classical_div(e), d), 1);
    Ok(out)
}
