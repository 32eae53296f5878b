//! Derivations of free Lie, associative and commutative algebras, given by
//! their values on the generators `x_0, …, x_{r-1}`.
//!
//! All three are stored the same way, as one word combination per
//! generator: Lie values by tensor expansion, Ass values as tensor words and
//! Com values as sorted words (monomials).

use std::fmt;
use std::str::FromStr;

use super::lie::{is_lie_element, lyndon_coordinates, parse_lie, WordSum};
use super::words::{letter_char, Word};
use crate::error::{Error, Result};
use crate::linear::{FormalSum, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operad {
    Lie,
    Ass,
    Com,
}

impl fmt::Display for Operad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operad::Lie => "lie",
            Operad::Ass => "ass",
            Operad::Com => "com",
        })
    }
}

impl FromStr for Operad {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lie" => Ok(Operad::Lie),
            "ass" => Ok(Operad::Ass),
            "com" => Ok(Operad::Com),
            other => Err(Error::Invalid(format!("unknown operad `{other}`"))),
        }
    }
}

/// Normalizes a word combination for the given operad (sorting for Com).
pub fn normalize(operad: Operad, x: &WordSum) -> WordSum {
    match operad {
        Operad::Com => x.map_keys(|w| Some(w.sorted())),
        _ => x.clone(),
    }
}

/// Leibniz extension of `images` (values on generators) to a word
/// combination. For Com the input must already be normalized.
pub fn extend_words(operad: Operad, images: &[WordSum], x: &WordSum) -> WordSum {
    let mut out = WordSum::zero();
    for (w, c) in x {
        let v = w.letters();
        for (k, &l) in v.iter().enumerate() {
            let Some(img) = images.get(l as usize) else { continue };
            for (u, cu) in img {
                let mut word = Vec::with_capacity(v.len() + u.len());
                word.extend_from_slice(&v[..k]);
                word.extend_from_slice(u.letters());
                word.extend_from_slice(&v[k + 1..]);
                out.add_term(Word(word), c * cu);
            }
        }
    }
    normalize(operad, &out)
}

#[derive(Clone, PartialEq, Eq)]
pub struct ClassicalDerivation {
    operad: Operad,
    rank: usize,
    images: Vec<WordSum>,
}

impl ClassicalDerivation {
    pub fn zero(operad: Operad, rank: usize) -> Self {
        Self { operad, rank, images: vec![WordSum::zero(); rank] }
    }

    /// Checks letters against the rank and, for Lie, that every value is a
    /// Lie element.
    pub fn new(operad: Operad, rank: usize, images: Vec<WordSum>) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::Invalid(format!("expected {rank} generator values, got {}", images.len())));
        }
        for img in &images {
            for w in img.keys() {
                if let Some(&l) = w.letters().iter().find(|&&l| l as usize >= rank) {
                    return Err(Error::UnknownLabel(letter_char(l).to_string()));
                }
                if w.is_empty() {
                    return Err(Error::Invalid("derivation values must have positive length".into()));
                }
            }
            if operad == Operad::Lie && !is_lie_element(img) {
                return Err(Error::Invalid(format!("{img} is not a Lie element")));
            }
        }
        let images = images.iter().map(|i| normalize(operad, i)).collect();
        Ok(Self { operad, rank, images })
    }

    /// The derivation sending generator `i` to `value` and the others to 0.
    pub fn single(operad: Operad, rank: usize, i: usize, value: WordSum) -> Result<Self> {
        let mut images = vec![WordSum::zero(); rank];
        images[i] = value;
        Self::new(operad, rank, images)
    }

    /// Parses `x -> [x,y]; y -> xy` style specifications. Lie values use
    /// bracket syntax, the others juxtaposed words.
    pub fn parse(operad: Operad, rank: usize, text: &str) -> Result<Self> {
        let mut images = vec![WordSum::zero(); rank];
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (lhs, rhs) = part.split_once("->").ok_or_else(|| Error::parse(0, "expected `letter -> value`"))?;
            let w = Word::parse(lhs)?;
            if w.len() != 1 || w.letters()[0] as usize >= rank {
                return Err(Error::UnknownLabel(lhs.trim().to_string()));
            }
            let value = parse_value(operad, rhs)?;
            images[w.letters()[0] as usize] += &value;
        }
        Self::new(operad, rank, images)
    }

    pub fn operad(&self) -> Operad {
        self.operad
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[WordSum] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &WordSum {
        &self.images[i]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(FormalSum::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.operad != other.operad || self.rank != other.rank {
            return Err(Error::ContextMismatch("classical derivations of different algebras".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let images = self.images.iter().zip(&other.images).map(|(a, b)| a + b).collect();
        Ok(Self { images, ..self.clone() })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self { images: self.images.iter().map(|a| a.scale(c)).collect(), ..self.clone() }
    }

    /// Leibniz extension to an element of the algebra, given by its
    /// expansion (tensor words, or monomials for Com).
    pub fn extend(&self, x: &WordSum) -> WordSum {
        extend_words(self.operad, &self.images, &normalize(self.operad, x))
    }

    /// `(self ⊲ other)(x) = other(self(x))`.
    pub fn prelie(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let images = self.images.iter().map(|a| other.extend(a)).collect();
        Ok(Self { images, ..self.clone() })
    }

    /// `[d, e] = d ⊲ e − e ⊲ d`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        let a = self.prelie(other)?;
        let b = other.prelie(self)?;
        Ok(Self { images: a.images.iter().zip(&b.images).map(|(x, y)| x - y).collect(), ..a })
    }

    /// Homogeneous component of the given degree (word length minus one).
    pub fn degree_part(&self, degree: usize) -> Self {
        Self { images: self.images.iter().map(|a| a.filter(|w| w.len() == degree + 1)).collect(), ..self.clone() }
    }

    /// The same derivation of the algebra on `rank + n` generators, new
    /// generators going to zero.
    pub fn stabilize(&self, n: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(std::iter::repeat(WordSum::zero()).take(n));
        Self { images, rank: self.rank + n, ..self.clone() }
    }

    /// The Lie-tagged derivation seen as a derivation of the tensor algebra.
    pub fn lie_to_ass(&self) -> Result<Self> {
        if self.operad != Operad::Lie {
            return Err(Error::Invalid("lie_to_ass expects a Lie derivation".into()));
        }
        Ok(Self { operad: Operad::Ass, ..self.clone() })
    }

    /// Abelianization of an Ass-tagged derivation.
    pub fn ass_to_com(&self) -> Result<Self> {
        if self.operad != Operad::Ass {
            return Err(Error::Invalid("ass_to_com expects an associative derivation".into()));
        }
        Ok(Self {
            operad: Operad::Com,
            images: self.images.iter().map(|a| normalize(Operad::Com, a)).collect(),
            rank: self.rank,
        })
    }

    /// Value text: brackets in the Lyndon basis for Lie, words otherwise.
    pub fn value_text(&self, i: usize) -> String {
        format_value(self.operad, &self.images[i])
    }
}

pub fn parse_value(operad: Operad, text: &str) -> Result<WordSum> {
    match operad {
        Operad::Lie => parse_lie(text),
        _ => Ok(normalize(operad, &FormalSum::parse_with(text, Word::parse)?)),
    }
}

pub fn format_value(operad: Operad, x: &WordSum) -> String {
    match operad {
        Operad::Lie => match lyndon_coordinates(x) {
            Ok(c) => c.to_string(),
            Err(_) => x.to_string(),
        },
        _ => x.to_string(),
    }
}

impl fmt::Display for ClassicalDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.rank)
            .filter(|&i| !self.images[i].is_zero())
            .map(|i| format!("{} -> {}", letter_char(i as u8), self.value_text(i)))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("; "))
        }
    }
}

impl fmt::Debug for ClassicalDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.operad, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(s: &str) -> WordSum {
        FormalSum::parse_with(s, Word::parse).unwrap()
    }

    #[test]
    fn leibniz_on_tensor_words() {
        let d = ClassicalDerivation::parse(Operad::Ass, 2, "x -> xy").unwrap();
        assert_eq!(d.extend(&words("xx")), words("xyx + xxy"));
        assert!(ClassicalDerivation::zero(Operad::Ass, 2).extend(&words("xyx")).is_zero());
    }

    #[test]
    fn leibniz_on_lie_elements() {
        let d = ClassicalDerivation::parse(Operad::Lie, 2, "x -> [x,y]").unwrap();
        let got = d.extend(&parse_lie("[x,y]").unwrap());
        assert_eq!(got, parse_lie("[[x,y],y]").unwrap());
        assert_eq!(format_value(Operad::Lie, &got), "1*[[x,y],y]");
    }

    #[test]
    fn lie_values_are_checked() {
        assert!(ClassicalDerivation::parse(Operad::Lie, 2, "x -> [x,y]").is_ok());
        let bad = ClassicalDerivation::new(Operad::Lie, 2, vec![words("xy"), WordSum::zero()]);
        assert!(bad.is_err());
        assert!(ClassicalDerivation::parse(Operad::Ass, 1, "x -> xy").is_err());
    }

    #[test]
    fn commutative_values_are_sorted() {
        let d = ClassicalDerivation::parse(Operad::Com, 2, "x -> yx").unwrap();
        assert_eq!(d.image(0), &words("xy"));
        assert_eq!(d.extend(&words("xx")), words("2*xxy"));
    }

    #[test]
    fn morphisms_commute_with_extension() {
        let d = ClassicalDerivation::parse(Operad::Lie, 2, "x -> [x,[x,y]]; y -> [y,x]").unwrap();
        let a = d.lie_to_ass().unwrap();
        let c = a.ass_to_com().unwrap();
        let x = parse_lie("[x,[y,x]]").unwrap();
        assert_eq!(a.extend(&x), d.extend(&x));
        assert_eq!(c.extend(&normalize(Operad::Com, &x)), normalize(Operad::Com, &a.extend(&x)));
        assert!(normalize(Operad::Com, &parse_lie("[x,y]").unwrap()).is_zero());
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let d = ClassicalDerivation::parse(Operad::Ass, 2, "x -> xy").unwrap();
        let e = ClassicalDerivation::parse(Operad::Ass, 2, "y -> yxx").unwrap();
        assert!(d.bracket(&d).unwrap().is_zero());
        assert_eq!(d.bracket(&e).unwrap(), e.bracket(&d).unwrap().scale(&Scalar::from(-1)));
    }
}
