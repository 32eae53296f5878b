//! Words over a finite ordered alphabet and the objects built from them.
//!
//! Letters are indices; letter `i` prints as the `i`-th character of
//! [`ALPHABET`], so rank-2 words use `x` and `y`.

use std::fmt;

use crate::error::{Error, Result};
use crate::freeder::least_rotation;

/// Print names of letters, in order.
pub const ALPHABET: &str = "xyzwuvabcdefghijklmnopqrst";

/// The basepoint letter, printed `1`, used when a word carries a marked slot.
pub const SLOT: u8 = u8::MAX;

pub fn letter_char(i: u8) -> char {
    if i == SLOT {
        return '1';
    }
    ALPHABET.chars().nth(i as usize).expect("alphabet exhausted")
}

pub fn letter_index(c: char) -> Result<u8> {
    ALPHABET.chars().position(|a| a == c).map(|i| i as u8).ok_or_else(|| Error::parse(0, format!("unknown letter `{c}`")))
}

/// A tensor word; the empty word is the unit and prints as `1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: u8) -> Self {
        Word(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Letters sorted: the commutative monomial of this word.
    pub fn sorted(&self) -> Word {
        let mut v = self.0.clone();
        v.sort_unstable();
        Word(v)
    }

    /// Number of occurrences of each letter `0..rank`.
    pub fn content(&self, rank: usize) -> Vec<usize> {
        let mut c = vec![0; rank];
        for &l in &self.0 {
            c[l as usize] += 1;
        }
        c
    }

    /// Rotation-minimal representative of the cyclic class.
    pub fn cyclic(&self) -> Word {
        let mut v = self.0.clone();
        let r = least_rotation(&v);
        v.rotate_left(r);
        Word(v)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "1" {
            return Ok(Word::empty());
        }
        if t.is_empty() {
            return Err(Error::parse(0, "empty word; write 1 for the unit"));
        }
        t.chars().map(letter_index).collect::<Result<Vec<_>>>().map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for &l in &self.0 {
            write!(f, "{}", letter_char(l))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A class in `|T(V)|`, stored as a rotation-minimal word; prints as `~w`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord(Word);

impl CyclicWord {
    pub fn new(w: &Word) -> Self {
        CyclicWord(w.cyclic())
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        Ok(Self::new(&Word::parse(t.strip_prefix('~').unwrap_or(t))?))
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "~{}", self.0)
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `α ⊗ β` in `T(V) ⊗ T(V)^op`, printed `α|β`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BimoduleWord {
    pub left: Word,
    pub right: Word,
}

impl BimoduleWord {
    pub fn new(left: Word, right: Word) -> Self {
        Self { left, right }
    }

    pub fn unit() -> Self {
        Self::new(Word::empty(), Word::empty())
    }

    /// `(α⊗β)(α'⊗β') = αα' ⊗ β'β`.
    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.left.concat(&other.left), other.right.concat(&self.right))
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.left.len(), self.right.len())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let t = t.strip_prefix('~').unwrap_or(t);
        let (l, r) = t.split_once('|').ok_or_else(|| Error::parse(0, "a bimodule word is written `left|right`"))?;
        Ok(Self::new(Word::parse(l)?, Word::parse(r)?))
    }
}

impl fmt::Display for BimoduleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.left, self.right)
    }
}

impl fmt::Debug for BimoduleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All words of length `len` over `rank` letters, in lexicographic order.
pub fn all_words(rank: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| (0..rank as u8).map(move |l| {
                let mut v = w.0.clone();
                v.push(l);
                Word(v)
            }))
            .collect();
    }
    out
}

/// All words with the given letter content, in lexicographic order.
pub fn words_with_content(content: &[usize]) -> Vec<Word> {
    crate::trees::multiset_permutations(content)
        .into_iter()
        .map(|p| Word(p.into_iter().map(|i| i as u8).collect()))
        .collect()
}

/// Sorted words (commutative monomials) of length `len` over `rank` letters.
pub fn monomials(rank: usize, len: usize) -> Vec<Word> {
    fn go(rank: u8, start: u8, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Word>) {
        if left == 0 {
            out.push(Word(cur.clone()));
            return;
        }
        for l in start..rank {
            cur.push(l);
            go(rank, l, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rank as u8, 0, len, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_text() {
        let w = Word::parse("xyy").unwrap();
        assert_eq!(w.letters(), &[0, 1, 1]);
        assert_eq!(w.to_string(), "xyy");
        assert_eq!(Word::parse("1").unwrap(), Word::empty());
        assert_eq!(Word::empty().to_string(), "1");
        assert!(Word::parse("x!").is_err());
    }

    #[test]
    fn cyclic_classes() {
        assert_eq!(CyclicWord::new(&Word::parse("yxx").unwrap()).to_string(), "~xxy");
        assert_eq!(CyclicWord::parse("~xyx").unwrap(), CyclicWord::parse("yxx").unwrap());
    }

    #[test]
    fn bimodule_product_rule() {
        let a = BimoduleWord::parse("x|y").unwrap();
        let b = BimoduleWord::parse("z|w").unwrap();
        assert_eq!(a.mul(&b), BimoduleWord::parse("xz|wy").unwrap());
        assert_eq!(BimoduleWord::unit().mul(&a), a);
        assert_eq!(BimoduleWord::parse("~1|y").unwrap().to_string(), "1|y");
    }

    #[test]
    fn counts() {
        assert_eq!(all_words(2, 3).len(), 8);
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(words_with_content(&[1, 2]).len(), 3);
    }
}
