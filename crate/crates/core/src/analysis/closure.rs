//! Degreewise closure of `Der¹` under `⊲` (giving `derpl`) or under the
//! bracket (giving `derlie`), computed one (degree, weight) block at a time.

use std::collections::HashMap;
use std::sync::Arc;

use super::model::{Model, Weight};
use super::Budget;
use crate::error::Result;
use crate::linear::{FormalSum, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Product {
    PreLie,
    Lie,
}

impl Product {
    pub fn name(self) -> &'static str {
        match self {
            Product::PreLie => "derpl",
            Product::Lie => "derlie",
        }
    }
}

type Block<K> = Arc<Subspace<K>>;

pub struct Closure<M: Model> {
    model: M,
    product: Product,
    blocks: HashMap<(usize, Weight), Block<M::Basis>>,
    bases: HashMap<(usize, Weight), Arc<Vec<M::Basis>>>,
    weights: HashMap<usize, Arc<Vec<Weight>>>,
}

impl<M: Model> Closure<M> {
    pub fn new(model: M, product: Product) -> Self {
        Self { model, product, blocks: HashMap::new(), bases: HashMap::new(), weights: HashMap::new() }
    }

    pub fn model(&self) -> &M {
        &self.model
    }

    pub fn product(&self) -> Product {
        self.product
    }

    pub fn weights(&mut self, degree: usize) -> Arc<Vec<Weight>> {
        let m = &self.model;
        self.weights.entry(degree).or_insert_with(|| Arc::new(m.weights(degree))).clone()
    }

    pub fn basis(&mut self, degree: usize, weight: &Weight) -> Arc<Vec<M::Basis>> {
        if let Some(b) = self.bases.get(&(degree, weight.clone())) {
            return b.clone();
        }
        let b = Arc::new(self.model.basis(degree, weight));
        self.bases.insert((degree, weight.clone()), b.clone());
        b
    }

    /// The closure inside the block `(degree, weight)` of `Der^degree`.
    pub fn block(&mut self, degree: usize, weight: &Weight, budget: &Budget) -> Result<Block<M::Basis>> {
        if let Some(b) = self.blocks.get(&(degree, weight.clone())) {
            return Ok(b.clone());
        }
        budget.check()?;
        let ambient = self.basis(degree, weight);
        let mut space = Subspace::new(ambient.to_vec());
        if degree == 1 {
            space = Subspace::full(ambient.to_vec());
        } else if degree >= 2 && !ambient.is_empty() {
            let splits: Vec<usize> = match self.product {
                Product::Lie => vec![degree - 1],
                Product::PreLie => (1..degree).collect(),
            };
            'outer: for i in splits {
                let j = degree - i;
                for w1 in self.weights(j).iter() {
                    let w2: Weight = weight.iter().zip(w1).map(|(a, b)| a - b).collect();
                    if self.basis(i, &w2).is_empty() {
                        continue;
                    }
                    let left = self.block(i, &w2, budget)?;
                    let right = self.block(j, w1, budget)?;
                    let (lg, rg) = (left.generators(), right.generators());
                    for a in &lg {
                        for b in &rg {
                            let v = match self.product {
                                Product::Lie => super::model::product_sum(&self.model, a, b, |m, x, y| m.bracket(x, y)),
                                Product::PreLie => super::model::product_sum(&self.model, a, b, |m, x, y| m.prelie(x, y)),
                            };
                            space.insert(&v);
                            if space.is_full() {
                                break 'outer;
                            }
                        }
                    }
                    budget.check()?;
                }
            }
        }
        let space = Arc::new(space);
        self.blocks.insert((degree, weight.clone()), space.clone());
        Ok(space)
    }

    /// Membership of an arbitrary positive-degree combination, block by block.
    pub fn contains(&mut self, x: &FormalSum<M::Basis>, budget: &Budget) -> Result<bool> {
        for ((d, w), part) in super::model::split_blocks(&self.model, x) {
            if d == 0 || !self.block(d, &w, budget)?.contains(&part) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// (rank of the closure, rank of `Der^degree`) summed over all blocks.
    pub fn dims(&mut self, degree: usize, budget: &Budget) -> Result<(usize, usize)> {
        let mut inside = 0;
        let mut total = 0;
        for w in self.weights(degree).iter() {
            let b = self.block(degree, w, budget)?;
            inside += b.rank();
            total += b.ambient_dim();
        }
        Ok((inside, total))
    }
}
