//! Finite linear combinations over an ordered basis.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use super::Scalar;
use crate::error::{Error, Result};

/// A finite linear combination `Σ c_k · k` with every stored `c_k ≠ 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormalSum<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for FormalSum<K> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> FormalSum<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, Scalar::one())
    }

    pub fn term(key: K, coeff: Scalar) -> Self {
        let mut s = Self::zero();
        s.add_term(key, coeff);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of basis elements with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), c * v);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, v)| (k.clone(), c * v)).collect() }
    }

    /// Extends `f: K -> FormalSum<L>` linearly.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> FormalSum<L>) -> FormalSum<L> {
        let mut out = FormalSum::zero();
        for (k, c) in &self.terms {
            out.add_scaled(c, &f(k));
        }
        out
    }

    /// Sends each basis element to a single basis element (or drops it).
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Option<L>) -> FormalSum<L> {
        let mut out = FormalSum::zero();
        for (k, c) in &self.terms {
            if let Some(l) = f(k) {
                out.add_term(l, c.clone());
            }
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Self {
            terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (k.clone(), c.clone())).collect(),
        }
    }

    /// Renders with a caller-supplied key printer.
    pub fn display_with(&self, mut key: impl FnMut(&K) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&format!("{mag}*{}", key(k)));
        }
        out
    }

    /// Parses `c1*KEY1 + c2*KEY2 - ...`. Binary signs must be surrounded by
    /// whitespace; a coefficient (`p` or `p/q`) is optional and defaults to 1.
    /// Keys themselves may not contain whitespace.
    pub fn parse_with(text: &str, mut key: impl FnMut(&str) -> Result<K>) -> Result<Self> {
        let text = text.trim();
        let mut out = Self::zero();
        if text == "0" {
            return Ok(out);
        }
        let mut sign = Scalar::one();
        let mut expect_term = true;
        for tok in text.split_whitespace() {
            if expect_term {
                let (neg, body) = match tok.strip_prefix('-') {
                    Some(rest) if !rest.is_empty() && !rest.starts_with('<') => (true, rest),
                    _ => (false, tok),
                };
                let (coeff, k) = split_coefficient(body)?;
                let mut c = &sign * &coeff;
                if neg {
                    c = -c;
                }
                out.add_term(key(k)?, c);
                expect_term = false;
            } else {
                sign = match tok {
                    "+" => Scalar::one(),
                    "-" => -Scalar::one(),
                    _ => return Err(Error::parse(0, format!("expected `+` or `-`, found `{tok}`"))),
                };
                expect_term = true;
            }
        }
        if expect_term {
            return Err(Error::parse(text.len(), "dangling sign or empty sum"));
        }
        Ok(out)
    }
}

/// Splits a leading `p*` or `p/q*` coefficient off a term.
fn split_coefficient(term: &str) -> Result<(Scalar, &str)> {
    if let Some(star) = term.find('*') {
        let head = &term[..star];
        if !head.is_empty() && head.chars().all(|c| c.is_ascii_digit() || c == '/') {
            let c: Scalar = head.parse()?;
            let rest = &term[star + 1..];
            if rest.is_empty() {
                return Err(Error::parse(star, "missing basis key after coefficient"));
            }
            return Ok((c, rest));
        }
    }
    Ok((Scalar::one(), term))
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for FormalSum<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in iter {
            s.add_term(k, c);
        }
        s
    }
}

impl<K: Ord> IntoIterator for FormalSum<K> {
    type Item = (K, Scalar);
    type IntoIter = btree_map::IntoIter<K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, K: Ord> IntoIterator for &'a FormalSum<K> {
    type Item = (&'a K, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone> AddAssign<&FormalSum<K>> for FormalSum<K> {
    fn add_assign(&mut self, rhs: &FormalSum<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.clone());
        }
    }
}

impl<K: Ord + Clone> SubAssign<&FormalSum<K>> for FormalSum<K> {
    fn sub_assign(&mut self, rhs: &FormalSum<K>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), -c);
        }
    }
}

impl<K: Ord + Clone> Add<&FormalSum<K>> for &FormalSum<K> {
    type Output = FormalSum<K>;
    fn add(self, rhs: &FormalSum<K>) -> FormalSum<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord + Clone> Sub<&FormalSum<K>> for &FormalSum<K> {
    type Output = FormalSum<K>;
    fn sub(self, rhs: &FormalSum<K>) -> FormalSum<K> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<K: Ord + Clone> Add for FormalSum<K> {
    type Output = FormalSum<K>;
    fn add(mut self, rhs: FormalSum<K>) -> FormalSum<K> {
        self += &rhs;
        self
    }
}

impl<K: Ord + Clone> Sub for FormalSum<K> {
    type Output = FormalSum<K>;
    fn sub(mut self, rhs: FormalSum<K>) -> FormalSum<K> {
        self -= &rhs;
        self
    }
}

impl<K: Ord + Clone> Neg for &FormalSum<K> {
    type Output = FormalSum<K>;
    fn neg(self) -> FormalSum<K> {
        self.scale(&-Scalar::one())
    }
}

impl<K: Ord + Clone> Neg for FormalSum<K> {
    type Output = FormalSum<K>;
    fn neg(self) -> FormalSum<K> {
        -&self
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for FormalSum<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(|k| k.to_string()))
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Debug for FormalSum<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(terms: &[(&str, i64)]) -> FormalSum<String> {
        terms.iter().map(|(k, c)| (k.to_string(), Scalar::from(*c))).collect()
    }

    #[test]
    fn additive_identity_and_inverse() {
        let a = s(&[("a", 2), ("b", -3)]);
        assert_eq!(&a + &FormalSum::zero(), a);
        assert!((&a + &(-&a)).is_zero());
        assert!((&a + &a.scale(&Scalar::from(-1))).is_zero());
    }

    #[test]
    fn halving_a_doubled_term() {
        let t = FormalSum::basis("t".to_string());
        let two_t = t.scale(&Scalar::from(2));
        assert_eq!(two_t.scale(&Scalar::ratio(1, 2)), t);
    }

    #[test]
    fn zero_coefficients_are_never_stored() {
        let mut a = s(&[("a", 1)]);
        a.add_term("a".into(), Scalar::from(-1));
        assert_eq!(a.len(), 0);
        a.add_term("b".into(), Scalar::zero());
        assert!(a.is_zero());
    }

    #[test]
    fn text_round_trip() {
        let a: FormalSum<String> = [("x<-*(x,y)".to_string(), Scalar::ratio(-2, 3)), ("+<-+".to_string(), Scalar::one())]
            .into_iter()
            .collect();
        let text = a.to_string();
        assert_eq!(text, "1*+<-+ - 2/3*x<-*(x,y)");
        let back = FormalSum::parse_with(&text, |k| Ok(k.to_string())).unwrap();
        assert_eq!(back, a);
        let neg_first = FormalSum::parse_with("-3*a + b", |k| Ok(k.to_string())).unwrap();
        assert_eq!(neg_first, s(&[("a", -3), ("b", 1)]));
        assert_eq!(FormalSum::parse_with("0", |k| Ok(k.to_string())).unwrap(), FormalSum::zero());
        assert!(FormalSum::parse_with("a +", |k| Ok(k.to_string())).is_err());
        assert!(FormalSum::parse_with("a b", |k| Ok(k.to_string())).is_err());
    }
}
