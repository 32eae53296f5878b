//! Kernels, images and quotients of the divergence, block by block, and the
//! stabilization orders of classes that die after adding generators.

use super::closure::{Closure, Product};
use super::model::{div_of, pad, split_blocks, Model, Weight};
use super::Budget;
use crate::error::Result;
use crate::linear::{kernel, FormalSum, Subspace};

/// Which subspace of the trace space the middle homology is taken against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceTarget {
    /// The image of `derlie` under the divergence.
    ImDerLie,
    /// The image of the special pointed module.
    ImDerLieSpec,
}

fn combine<K: Ord + Clone>(gens: &[FormalSum<K>], coeffs: &FormalSum<usize>) -> FormalSum<K> {
    let mut out = FormalSum::zero();
    for (i, c) in coeffs {
        out.add_scaled(c, &gens[*i]);
    }
    out
}

/// Basis of `Ker Div` in a block of `Der`.
pub fn kernel_div<M: Model>(m: &M, degree: usize, weight: &Weight) -> Vec<FormalSum<M::Basis>> {
    let basis: Vec<FormalSum<M::Basis>> = m.basis(degree, weight).into_iter().map(FormalSum::basis).collect();
    let images: Vec<_> = basis.iter().map(|b| div_of(m, b)).collect();
    kernel(&images).iter().map(|k| combine(&basis, k)).collect()
}

/// `Div(derlie)` inside the trace block.
pub fn imderlie<M: Model>(c: &mut Closure<M>, degree: usize, weight: &Weight, budget: &Budget) -> Result<Subspace<M::Trace>> {
    let block = c.block(degree, weight, budget)?;
    let m = c.model();
    let mut s = Subspace::new(m.trace_basis(degree, weight));
    for g in block.generators() {
        s.insert(&div_of(m, &g));
    }
    Ok(s)
}

pub fn imderliespec<M: Model>(m: &M, degree: usize, weight: &Weight) -> Subspace<M::Trace> {
    let mut s = Subspace::new(m.trace_basis(degree, weight));
    for v in m.special_traces(degree, weight) {
        s.insert(&v);
    }
    s
}

/// Image of all of `Der` in a trace block.
pub fn image_div<M: Model>(m: &M, degree: usize, weight: &Weight) -> Subspace<M::Trace> {
    let mut s = Subspace::new(m.trace_basis(degree, weight));
    for b in m.basis(degree, weight) {
        s.insert(&m.div(&b));
    }
    s
}

/// `K^O = Ker Div ∩ derlie`, as combinations of basis derivations.
pub fn k_o<M: Model>(c: &mut Closure<M>, degree: usize, weight: &Weight, budget: &Budget) -> Result<Vec<FormalSum<M::Basis>>> {
    let gens = c.block(degree, weight, budget)?.generators();
    let images: Vec<_> = gens.iter().map(|g| div_of(c.model(), g)).collect();
    Ok(kernel(&images).iter().map(|k| combine(&gens, k)).collect())
}

pub fn target_space<M: Model>(
    c: &mut Closure<M>,
    target: TraceTarget,
    degree: usize,
    weight: &Weight,
    budget: &Budget,
) -> Result<Subspace<M::Trace>> {
    match target {
        TraceTarget::ImDerLie => imderlie(c, degree, weight, budget),
        TraceTarget::ImDerLieSpec => Ok(imderliespec(c.model(), degree, weight)),
    }
}

/// Representatives of a basis of `Div⁻¹(Q) / derlie` in one block, where
/// `Q` is the chosen trace target. With `Q = imderlie` this is the middle
/// homology `Ker Div / K^O` of the three-term complex.
pub fn middle_homology<M: Model>(
    c: &mut Closure<M>,
    target: TraceTarget,
    degree: usize,
    weight: &Weight,
    budget: &Budget,
) -> Result<Vec<FormalSum<M::Basis>>> {
    let q = target_space(c, target, degree, weight, budget)?;
    let derlie = c.block(degree, weight, budget)?;
    let m = c.model();
    let basis: Vec<FormalSum<M::Basis>> = m.basis(degree, weight).into_iter().map(FormalSum::basis).collect();
    let images: Vec<_> = basis.iter().map(|b| q.reduce(&div_of(m, b))).collect();
    let mut span = (*derlie).clone();
    let mut reps = Vec::new();
    for k in kernel(&images) {
        let v = combine(&basis, &k);
        if span.insert(&v) {
            reps.push(v);
        }
    }
    Ok(reps)
}

/// Trace basis elements representing a basis of `|·| / Div(Der)` in a block.
pub fn cokernel<M: Model>(m: &M, degree: usize, weight: &Weight) -> Vec<M::Trace> {
    let mut s = image_div(m, degree, weight);
    s.ambient().to_vec().into_iter().filter(|k| s.insert(&FormalSum::basis(k.clone()))).collect()
}

/// The stabilization tower `M, M⊔1, M⊔2, …` with one derlie closure each.
pub struct Ladder<M: Model> {
    base: M,
    closures: Vec<Closure<M>>,
}

impl<M: Model> Ladder<M> {
    pub fn new(base: M) -> Self {
        Self { base, closures: Vec::new() }
    }

    pub fn base(&self) -> &M {
        &self.base
    }

    pub fn closure(&mut self, n: usize) -> &mut Closure<M> {
        while self.closures.len() <= n {
            let k = self.closures.len();
            self.closures.push(Closure::new(self.base.stabilized(k), Product::Lie));
        }
        &mut self.closures[n]
    }

    /// Least `n ≤ max` with `x ∈ derlie(M⊔n)`.
    pub fn derlie_order(&mut self, x: &FormalSum<M::Basis>, max: usize, budget: &Budget) -> Result<Option<usize>> {
        for n in 0..=max {
            let c = self.closure(n);
            let size = c.model().size();
            let mut ok = true;
            for ((d, w), part) in split_blocks(&self.base, x) {
                if d == 0 || !self.closure(n).block(d, &pad(&w, size), budget)?.contains(&part) {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    /// Least `n ≤ max` with `τ ∈ Div(Der(M⊔n))`.
    pub fn cokernel_order(&mut self, tau: &M::Trace, degree: usize, weight: &Weight, max: usize) -> Option<usize> {
        (0..=max).find(|&n| {
            let m = self.base.stabilized(n);
            image_div(&m, degree, &pad(weight, m.size())).contains(&FormalSum::basis(tau.clone()))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::model::{ClassicalModel, FreeModel};
    use crate::classical::Operad;
    use crate::trees::{parse_label_set, GeneratorSet};

    fn free(s: &str) -> FreeModel {
        FreeModel::new(parse_label_set(s).unwrap(), GeneratorSet::binary())
    }

    #[test]
    fn kernel_and_k_o_are_consistent() {
        let budget = Budget::unlimited();
        let m = free("x,y");
        let mut c = Closure::new(m.clone(), Product::Lie);
        for d in 1..=2 {
            for w in m.weights(d) {
                let ker = kernel_div(&m, d, &w);
                for k in &ker {
                    assert!(div_of(&m, k).is_zero());
                }
                let ko = k_o(&mut c, d, &w, &budget).unwrap();
                let block = c.block(d, &w, &budget).unwrap();
                let ker_span = Subspace::span_in(m.basis(d, &w), ker.iter());
                for v in &ko {
                    assert!(block.contains(v) && ker_span.contains(v));
                }
                let mh = middle_homology(&mut c, TraceTarget::ImDerLie, d, &w, &budget).unwrap();
                // Ker Div / K^O and Div⁻¹(imderlie) / derlie have the same dimension.
                assert_eq!(mh.len(), ker.len() - ko.len(), "{d} {w:?}");
            }
        }
    }

    #[test]
    fn degree_one_is_all_of_derlie() {
        let budget = Budget::unlimited();
        let m = free("x,y");
        let mut c = Closure::new(m.clone(), Product::Lie);
        for w in m.weights(1) {
            assert!(middle_homology(&mut c, TraceTarget::ImDerLie, 1, &w, &budget).unwrap().is_empty());
        }
    }

    #[test]
    fn lie_imderlie_is_the_generators() {
        let budget = Budget::unlimited();
        let m = ClassicalModel::new(Operad::Lie, 2);
        let mut c = Closure::new(m.clone(), Product::Lie);
        for d in 1..=3 {
            for w in m.weights(d) {
                let s = imderlie(&mut c, d, &w, &budget).unwrap();
                assert_eq!(s.rank(), if d == 1 { s.ambient_dim() } else { 0 }, "{d} {w:?}");
            }
        }
    }

    #[test]
    fn trace_of_a_disjoint_class_dies_after_one_label() {
        let m = free("x");
        let mut ladder = Ladder::new(m.clone());
        for w in [vec![1], vec![2]] {
            let d = w[0] as usize;
            for tau in cokernel(&m, d, &w) {
                assert_eq!(ladder.cokernel_order(&tau, d, &w, 2), Some(1), "{tau}");
            }
        }
    }
}
