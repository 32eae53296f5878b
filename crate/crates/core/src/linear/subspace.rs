//! Subspaces of a finite-dimensional space with a keyed basis.
//!
//! Rows are kept in echelon form with leading coefficient 1, and every row is
//! reduced against the pivots that existed when it was inserted. Reducing a
//! vector by scanning columns in increasing order therefore clears every
//! pivot column, which gives a canonical representative modulo the subspace.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use super::{FormalSum, Scalar};

type Row = Vec<(usize, Scalar)>;

#[derive(Clone, Debug)]
pub struct Subspace<K: Ord + Clone + Hash> {
    ambient: Vec<K>,
    index: HashMap<K, usize>,
    rows: Vec<Row>,
    pivot_row: HashMap<usize, usize>,
}

impl<K: Ord + Clone + Hash> Subspace<K> {
    /// The zero subspace of the space with the given ordered basis.
    pub fn new(ambient: Vec<K>) -> Self {
        let index = ambient.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Self { ambient, index, rows: Vec::new(), pivot_row: HashMap::new() }
    }

    /// Span of `vectors` inside the sorted union of their supports.
    pub fn span<'a>(vectors: impl IntoIterator<Item = &'a FormalSum<K>>) -> Self
    where
        K: 'a,
    {
        let vectors: Vec<&FormalSum<K>> = vectors.into_iter().collect();
        let mut keys: Vec<K> = vectors.iter().flat_map(|v| v.keys().cloned()).collect();
        keys.sort();
        keys.dedup();
        let mut s = Self::new(keys);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    /// Span of `vectors` inside a prescribed ambient basis; keys outside it
    /// are appended as new ambient coordinates.
    pub fn span_in<'a>(ambient: Vec<K>, vectors: impl IntoIterator<Item = &'a FormalSum<K>>) -> Self
    where
        K: 'a,
    {
        let mut s = Self::new(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    /// The whole ambient space.
    pub fn full(ambient: Vec<K>) -> Self {
        let mut s = Self::new(ambient);
        for i in 0..s.ambient.len() {
            s.pivot_row.insert(i, s.rows.len());
            s.rows.push(vec![(i, Scalar::one())]);
        }
        s
    }

    pub fn ambient(&self) -> &[K] {
        &self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.len()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.ambient.len() - self.rows.len()
    }

    fn column(&mut self, key: &K) -> usize {
        if let Some(&i) = self.index.get(key) {
            return i;
        }
        let i = self.ambient.len();
        self.ambient.push(key.clone());
        self.index.insert(key.clone(), i);
        i
    }

    fn to_work(&mut self, v: &FormalSum<K>) -> BTreeMap<usize, Scalar> {
        v.iter().map(|(k, c)| (self.column(k), c.clone())).collect()
    }

    /// Clears every pivot column of `work`.
    fn reduce_work(&self, work: &mut BTreeMap<usize, Scalar>) {
        let mut cursor = 0;
        loop {
            let Some((&col, coeff)) = work.range(cursor..).find(|(c, _)| self.pivot_row.contains_key(c)) else {
                break;
            };
            let coeff = coeff.clone();
            let row = &self.rows[self.pivot_row[&col]];
            for (c, v) in row {
                let e = work.entry(*c).or_insert_with(Scalar::zero);
                e.sub_mul(&coeff, v);
                if e.is_zero() {
                    work.remove(c);
                }
            }
            cursor = col + 1;
        }
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: &FormalSum<K>) -> bool {
        if v.is_zero() || self.is_full() && v.keys().all(|k| self.index.contains_key(k)) {
            return false;
        }
        let mut work = self.to_work(v);
        self.reduce_work(&mut work);
        let Some((&lead, lead_coeff)) = work.iter().next() else {
            return false;
        };
        let inv = lead_coeff.recip().expect("nonzero");
        let row: Row = work.into_iter().map(|(c, x)| (c, &x * &inv)).collect();
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Membership test; vectors with support outside the ambient are never
    /// contained (the subspace lives inside the ambient span).
    pub fn contains(&self, v: &FormalSum<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Canonical representative of `v` modulo the subspace: the unique
    /// element of `v + self` vanishing on every pivot column.
    pub fn reduce(&self, v: &FormalSum<K>) -> FormalSum<K> {
        let mut outside = FormalSum::zero();
        let mut work = BTreeMap::new();
        for (k, c) in v {
            match self.index.get(k) {
                Some(&i) => {
                    work.insert(i, c.clone());
                }
                None => outside.add_term(k.clone(), c.clone()),
            }
        }
        self.reduce_work(&mut work);
        for (i, c) in work {
            outside.add_term(self.ambient[i].clone(), c);
        }
        outside
    }

    /// The reduced row echelon basis, rows ordered by pivot column.
    pub fn basis(&self) -> Vec<FormalSum<K>> {
        let mut pivots: Vec<usize> = self.pivot_row.keys().copied().collect();
        pivots.sort_unstable();
        pivots
            .iter()
            .rev()
            .fold(Vec::new(), |mut acc: Vec<(usize, BTreeMap<usize, Scalar>)>, &p| {
                // Back substitution against rows with larger pivots.
                let mut work: BTreeMap<usize, Scalar> = self.rows[self.pivot_row[&p]].iter().cloned().collect();
                for (q, row) in &acc {
                    if let Some(c) = work.get(q).cloned() {
                        for (col, x) in row {
                            let e = work.entry(*col).or_insert_with(Scalar::zero);
                            e.sub_mul(&c, x);
                            if e.is_zero() {
                                work.remove(col);
                            }
                        }
                    }
                }
                acc.push((p, work));
                acc
            })
            .into_iter()
            .rev()
            .map(|(_, row)| row.into_iter().map(|(c, x)| (self.ambient[c].clone(), x)).collect())
            .collect()
    }

    /// Rows as stored (echelon, not necessarily fully reduced).
    pub fn generators(&self) -> Vec<FormalSum<K>> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|(c, x)| (self.ambient[*c].clone(), x.clone())).collect())
            .collect()
    }

    /// Ambient keys that are not pivots: a basis of the quotient.
    pub fn non_pivot_keys(&self) -> Vec<K> {
        (0..self.ambient.len()).filter(|c| !self.pivot_row.contains_key(c)).map(|c| self.ambient[c].clone()).collect()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.generators().iter().all(|v| other.contains(v))
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.rank() == other.rank() && self.is_subspace_of(other)
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for v in other.generators() {
            out.insert(&v);
        }
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let a = self.generators();
        let b = other.generators();
        // (x, y) with Σ x_i a_i = Σ y_j b_j.
        let mut images = a.clone();
        images.extend(b.iter().map(|v| -v));
        let mut out = Self::new(self.ambient.clone());
        for combo in kernel(&images) {
            let mut v = FormalSum::zero();
            for (i, c) in combo.iter() {
                if *i < a.len() {
                    v.add_scaled(c, &a[*i]);
                }
            }
            out.insert(&v);
        }
        out
    }
}

/// Column tags for the augmented elimination in [`kernel`]; image columns sort
/// before tag columns so that rows with a tag pivot have zero image part.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Aug<K> {
    Image(K),
    Tag(usize),
}

/// Basis of `{x : Σ x_i · images[i] = 0}`, as sparse coefficient vectors over
/// the indices of `images`.
pub fn kernel<K: Ord + Clone + Hash>(images: &[FormalSum<K>]) -> Vec<FormalSum<usize>> {
    let mut keys: Vec<Aug<K>> = images.iter().flat_map(|v| v.keys().cloned().map(Aug::Image)).collect();
    keys.sort();
    keys.dedup();
    keys.extend((0..images.len()).map(Aug::Tag));
    let mut s = Subspace::new(keys);
    for (i, v) in images.iter().enumerate() {
        let mut row: FormalSum<Aug<K>> = v.map_keys(|k| Some(Aug::Image(k.clone())));
        row.add_term(Aug::Tag(i), Scalar::one());
        s.insert(&row);
    }
    s.generators()
        .into_iter()
        .filter(|row| row.keys().all(|k| matches!(k, Aug::Tag(_))))
        .map(|row| {
            row.map_keys(|k| match k {
                Aug::Tag(i) => Some(*i),
                Aug::Image(_) => None,
            })
        })
        .collect()
}

/// Rank of a list of vectors.
pub fn rank_of<K: Ord + Clone + Hash>(vectors: &[FormalSum<K>]) -> usize {
    Subspace::span(vectors.iter()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(terms: &[(u32, i64)]) -> FormalSum<u32> {
        terms.iter().map(|(k, c)| (*k, Scalar::from(*c))).collect()
    }

    #[test]
    fn dependent_vectors_have_rank_one() {
        let a = v(&[(1, 1), (2, 3)]);
        let s = Subspace::span([&a, &a.scale(&Scalar::from(2))]);
        assert_eq!(s.rank(), 1);
        assert_eq!(Subspace::<u32>::span([]).rank(), 0);
    }

    #[test]
    fn membership() {
        let a = v(&[(1, 1), (2, 3)]);
        let s = Subspace::span([&a]);
        assert!(s.contains(&a.scale(&Scalar::from(3))));
        assert!(!s.contains(&v(&[(1, 1)])));
        assert!(!s.contains(&v(&[(9, 1)])));
        assert!(s.contains(&FormalSum::zero()));
    }

    #[test]
    fn reduced_basis_is_rref() {
        let s = Subspace::span([&v(&[(1, 1), (2, 1), (3, 1)]), &v(&[(2, 1), (3, 2)])]);
        let b = s.basis();
        assert_eq!(b, vec![v(&[(1, 1), (3, -1)]), v(&[(2, 1), (3, 2)])]);
    }

    #[test]
    fn normal_form_is_canonical() {
        let s = Subspace::span([&v(&[(1, 1), (2, -1)])]);
        let x = s.reduce(&v(&[(1, 1)]));
        let y = s.reduce(&v(&[(2, 1)]));
        assert_eq!(x, y);
    }

    #[test]
    fn kernel_and_intersection() {
        let imgs = vec![v(&[(1, 1)]), v(&[(2, 1)]), v(&[(1, 1), (2, 1)])];
        let k = kernel(&imgs);
        assert_eq!(k.len(), 1);
        let combo = &k[0];
        let mut total = FormalSum::zero();
        for (i, c) in combo {
            total.add_scaled(c, &imgs[*i]);
        }
        assert!(total.is_zero());

        let amb: Vec<u32> = vec![1, 2, 3];
        let u = Subspace::span_in(amb.clone(), [&v(&[(1, 1)]), &v(&[(2, 1)])]);
        let w = Subspace::span_in(amb, [&v(&[(2, 1)]), &v(&[(3, 1)])]);
        let i = u.intersection(&w);
        assert_eq!(i.rank(), 1);
        assert!(i.contains(&v(&[(2, 5)])));
        assert_eq!(u.sum(&w).rank(), 3);
        assert_eq!(u.sum(&w).quotient_dim(), 0);
    }
}
