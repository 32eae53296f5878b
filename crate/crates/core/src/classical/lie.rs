//! Free Lie algebras inside the tensor algebra, with the Lyndon basis.
//!
//! Lie elements are stored by their tensor expansion. The standard
//! bracketing `P_w` of a Lyndon word `w` expands to `w` plus words strictly
//! greater than `w`, so the Lyndon coordinates of a Lie element are read off
//! by repeatedly peeling its smallest word.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use super::words::{letter_index, Word};
use crate::error::{Error, Result};
use crate::linear::FormalSum;

pub type WordSum = FormalSum<Word>;

pub fn is_lyndon(w: &Word) -> bool {
    let v = w.letters();
    let n = v.len();
    n > 0 && (1..n).all(|r| v[r..].iter().chain(&v[..r]).cmp(v.iter()).is_gt())
}

/// Lyndon words of length `len` over `rank` letters (Duval's generator).
pub fn lyndon_words(rank: usize, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if rank == 0 || len == 0 {
        return out;
    }
    let k = rank as u8;
    let mut w: Vec<u8> = vec![0];
    while !w.is_empty() {
        if w.len() == len {
            out.push(Word(w.clone()));
        }
        let m = w.len();
        while w.len() < len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out
}

/// Witt's count of Lyndon words: `(1/n) Σ_{d|n} μ(d) r^{n/d}`.
pub fn witt_dimension(rank: usize, len: usize) -> usize {
    fn mobius(mut n: usize) -> i64 {
        let mut m = 1;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                m = -m;
            }
            p += 1;
        }
        if n > 1 {
            m = -m;
        }
        m
    }
    if len == 0 {
        return 0;
    }
    let total: i64 = (1..=len).filter(|d| len % d == 0).map(|d| mobius(d) * (rank as i64).pow((len / d) as u32)).sum();
    (total / len as i64) as usize
}

/// Splits a Lyndon word of length ≥ 2 as `uv` with `v` its longest proper
/// Lyndon suffix.
pub fn standard_factorization(w: &Word) -> (Word, Word) {
    let v = w.letters();
    for i in 1..v.len() {
        let suffix = Word(v[i..].to_vec());
        if is_lyndon(&suffix) {
            return (Word(v[..i].to_vec()), suffix);
        }
    }
    unreachable!("a word of length ≥ 2 has a one-letter Lyndon suffix")
}

/// Commutator `ab − ba` in the tensor algebra.
pub fn commutator(a: &WordSum, b: &WordSum) -> WordSum {
    let mut out = WordSum::zero();
    for (u, cu) in a {
        for (v, cv) in b {
            let c = cu * cv;
            out.add_term(u.concat(v), c.clone());
            out.add_term(v.concat(u), -c);
        }
    }
    out
}

fn expansion_cache() -> &'static Mutex<HashMap<Word, WordSum>> {
    static CACHE: OnceLock<Mutex<HashMap<Word, WordSum>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Tensor expansion of the standard bracketing of a Lyndon word.
pub fn lyndon_expansion(w: &Word) -> WordSum {
    debug_assert!(is_lyndon(w), "{w} is not Lyndon");
    if w.len() == 1 {
        return WordSum::basis(w.clone());
    }
    if let Some(hit) = expansion_cache().lock().expect("cache poisoned").get(w) {
        return hit.clone();
    }
    let (u, v) = standard_factorization(w);
    let e = commutator(&lyndon_expansion(&u), &lyndon_expansion(&v));
    expansion_cache().lock().expect("cache poisoned").insert(w.clone(), e.clone());
    e
}

/// A Lyndon word standing for its standard bracketing.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LyndonMonomial(Word);

impl LyndonMonomial {
    pub fn new(w: Word) -> Result<Self> {
        if !is_lyndon(&w) {
            return Err(Error::Invalid(format!("{w} is not a Lyndon word")));
        }
        Ok(Self(w))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn expand(&self) -> WordSum {
        lyndon_expansion(&self.0)
    }
}

impl fmt::Display for LyndonMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0);
        }
        let (u, v) = standard_factorization(&self.0);
        write!(f, "[{},{}]", LyndonMonomial(u), LyndonMonomial(v))
    }
}

impl fmt::Debug for LyndonMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn lyndon_basis(rank: usize, degree: usize) -> Vec<LyndonMonomial> {
    lyndon_words(rank, degree).into_iter().map(LyndonMonomial).collect()
}

/// Lyndon coordinates of a tensor-algebra element, or an error if it is not
/// a Lie element.
pub fn lyndon_coordinates(x: &WordSum) -> Result<FormalSum<LyndonMonomial>> {
    let mut rest = x.clone();
    let mut out = FormalSum::zero();
    while let Some((w, c)) = rest.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
        if !is_lyndon(&w) {
            return Err(Error::Invalid(format!("not a Lie element: leading word {w} is not Lyndon")));
        }
        rest.add_scaled(&-&c, &lyndon_expansion(&w));
        out.add_term(LyndonMonomial(w), c);
    }
    Ok(out)
}

pub fn is_lie_element(x: &WordSum) -> bool {
    lyndon_coordinates(x).is_ok()
}

/// A bracket expression such as `[x,[x,y]]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Bracket {
    Letter(u8),
    Br(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let b = Self::parse_at(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::parse(pos, "trailing input after bracket expression"));
        }
        Ok(b)
    }

    fn parse_at(chars: &[char], pos: &mut usize) -> Result<Self> {
        match chars.get(*pos) {
            Some('[') => {
                *pos += 1;
                let a = Self::parse_at(chars, pos)?;
                if chars.get(*pos) != Some(&',') {
                    return Err(Error::parse(*pos, "expected `,`"));
                }
                *pos += 1;
                let b = Self::parse_at(chars, pos)?;
                if chars.get(*pos) != Some(&']') {
                    return Err(Error::parse(*pos, "expected `]`"));
                }
                *pos += 1;
                Ok(Bracket::Br(Box::new(a), Box::new(b)))
            }
            Some(&c) => {
                let l = letter_index(c).map_err(|_| Error::parse(*pos, format!("unknown letter `{c}`")))?;
                *pos += 1;
                Ok(Bracket::Letter(l))
            }
            None => Err(Error::parse(*pos, "unexpected end of bracket expression")),
        }
    }

    pub fn expand(&self) -> WordSum {
        match self {
            Bracket::Letter(l) => WordSum::basis(Word::letter(*l)),
            Bracket::Br(a, b) => commutator(&a.expand(), &b.expand()),
        }
    }

    pub fn max_letter(&self) -> u8 {
        match self {
            Bracket::Letter(l) => *l,
            Bracket::Br(a, b) => a.max_letter().max(b.max_letter()),
        }
    }
}

/// Parses a linear combination of bracket expressions into its expansion.
pub fn parse_lie(text: &str) -> Result<WordSum> {
    let f: FormalSum<Bracket> = FormalSum::parse_with(text, Bracket::parse)?;
    Ok(f.map_linear(Bracket::expand))
}

/// `lie_normal_form`: Lyndon coordinates of a bracket combination.
pub fn lie_normal_form(text: &str) -> Result<FormalSum<LyndonMonomial>> {
    lyndon_coordinates(&parse_lie(text)?)
}

/// Expands a Lyndon-coordinate combination back to tensor words.
pub fn expand_lyndon_sum(x: &FormalSum<LyndonMonomial>) -> WordSum {
    x.map_linear(LyndonMonomial::expand)
}

#[cfg(test)]
pub fn scalar_sum(words: &[(Word, i64)]) -> WordSum {
    words.iter().map(|(w, c)| (w.clone(), crate::linear::Scalar::from(*c))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::Scalar;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn lyndon_counts_follow_witt() {
        assert_eq!(lyndon_basis(2, 2).len(), 1);
        assert_eq!(lyndon_basis(2, 2)[0].to_string(), "[x,y]");
        assert_eq!(lyndon_basis(2, 3).len(), 2);
        for r in 1..=3 {
            for n in 1..=6 {
                assert_eq!(lyndon_words(r, n).len(), witt_dimension(r, n), "rank {r} length {n}");
                assert!(lyndon_words(r, n).iter().all(is_lyndon));
            }
        }
    }

    #[test]
    fn expansions_have_lyndon_leading_word() {
        for n in 1..=5 {
            for l in lyndon_words(3, n) {
                let e = lyndon_expansion(&l);
                assert_eq!(e.iter().next().map(|(k, c)| (k.clone(), c.clone())), Some((l.clone(), Scalar::one())));
            }
        }
    }

    #[test]
    fn normal_forms() {
        assert!(lie_normal_form("[x,x]").unwrap().is_zero());
        let yx = lie_normal_form("[y,x]").unwrap();
        assert_eq!(yx.to_string(), "-1*[x,y]");
        let jac = lie_normal_form("[x,[y,z]] + [y,[z,x]] + [z,[x,y]]").unwrap();
        assert!(jac.is_zero());
        let n = lie_normal_form("[[x,y],y]").unwrap();
        assert_eq!(expand_lyndon_sum(&n), parse_lie("[[x,y],y]").unwrap());
        assert_eq!(lyndon_coordinates(&expand_lyndon_sum(&n)).unwrap(), n);
    }

    #[test]
    fn non_lie_elements_are_rejected() {
        assert!(!is_lie_element(&WordSum::basis(w("xy"))));
        assert!(is_lie_element(&scalar_sum(&[(w("xy"), 1), (w("yx"), -1)])));
    }

    #[test]
    fn bracket_syntax_errors() {
        assert!(Bracket::parse("[x,y").is_err());
        assert!(Bracket::parse("[x y]").is_err());
        assert!(Bracket::parse("[x,y]]").is_err());
    }
}
