use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// Fusion coefficients N_{XY}^Z, stored flat as `n[(x * r + y) * r + z]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionTensor {
    rank: usize,
    n: Vec<u32>,
}

impl FusionTensor {
    pub fn from_fn(rank: usize, f: impl Fn(usize, usize, usize) -> u32) -> Self {
        let mut n = Vec::with_capacity(rank * rank * rank);
        for x in 0..rank {
            for y in 0..rank {
                for z in 0..rank {
                    n.push(f(x, y, z));
                }
            }
        }
        FusionTensor { rank, n }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, x: usize, y: usize, z: usize) -> u32 {
        self.n[(x * self.rank + y) * self.rank + z]
    }

    /// Fusion matrix of X: `(N_X)_{Y,Z} = N_{XY}^Z`.
    pub fn matrix(&self, x: usize) -> Vec<Vec<u32>> {
        (0..self.rank)
            .map(|y| (0..self.rank).map(|z| self.get(x, y, z)).collect())
            .collect()
    }

    /// Support of X ⊗ Y.
    pub fn product_support(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.rank).filter(|&z| self.get(x, y, z) > 0).collect()
    }

    /// The unique X* with N_{X X*}^1 = 1.
    pub fn dual(&self, x: usize) -> Result<usize> {
        let hits: Vec<usize> = (0..self.rank).filter(|&y| self.get(x, y, 0) > 0).collect();
        match hits.as_slice() {
            [y] if self.get(x, *y, 0) == 1 => Ok(*y),
            _ => Err(Error::NotModular(format!("object {x} has no unique dual"))),
        }
    }

    pub fn duals(&self) -> Result<Vec<usize>> {
        (0..self.rank).map(|x| self.dual(x)).collect()
    }

    /// First violation of the fusion ring axioms, if any.
    pub fn axiom_violation(&self) -> Option<String> {
        let r = self.rank;
        for x in 0..r {
            for y in 0..r {
                if self.get(0, x, y) != u32::from(x == y) {
                    return Some(format!("unit law fails at N[1][{x}][{y}]"));
                }
                for z in 0..r {
                    if self.get(x, y, z) != self.get(y, x, z) {
                        return Some(format!("N[{x}][{y}][{z}] != N[{y}][{x}][{z}]"));
                    }
                }
            }
        }
        if let Err(e) = self.duals() {
            return Some(e.to_string());
        }
        for x in 0..r {
            for y in 0..r {
                for z in 0..r {
                    for u in 0..r {
                        let lhs: u64 = (0..r)
                            .map(|w| self.get(x, y, w) as u64 * self.get(w, z, u) as u64)
                            .sum();
                        let rhs: u64 = (0..r)
                            .map(|w| self.get(y, z, w) as u64 * self.get(x, w, u) as u64)
                            .sum();
                        if lhs != rhs {
                            return Some(format!("associativity fails at ({x},{y},{z},{u})"));
                        }
                    }
                }
            }
        }
        None
    }

    /// Objects X with X ⊗ X* ≅ 1.
    pub fn invertibles(&self) -> Vec<usize> {
        (0..self.rank)
            .filter(|&x| match self.dual(x) {
                Ok(d) => (0..self.rank).map(|z| self.get(x, d, z)).sum::<u32>() == 1,
                Err(_) => false,
            })
            .collect()
    }

    /// Smallest fusion-closed, dual-closed set containing the seed and the unit.
    pub fn subcategory_generated(&self, seed: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = seed.iter().copied().collect();
        set.insert(0);
        loop {
            let mut next = set.clone();
            for &x in &set {
                if let Ok(d) = self.dual(x) {
                    next.insert(d);
                }
                for &y in &set {
                    next.extend(self.product_support(x, y));
                }
            }
            if next == set {
                return set.into_iter().collect();
            }
            set = next;
        }
    }

    /// Perron vector of Σ_X N_X by power iteration, normalised so the unit
    /// entry is 1. Its X-component is FPdim(X).
    pub fn fpdims(&self) -> Result<Vec<f64>> {
        let r = self.rank;
        let mut m = vec![vec![0f64; r]; r];
        for x in 0..r {
            for y in 0..r {
                for z in 0..r {
                    m[y][z] += self.get(x, y, z) as f64;
                }
            }
        }
        let mut v = vec![1f64; r];
        let mut lambda = 0f64;
        for _ in 0..100_000 {
            let w: Vec<f64> = (0..r)
                .map(|y| (0..r).map(|z| m[y][z] * v[z]).sum())
                .collect();
            let next = w[0] / v[0];
            let scale = w[0];
            v = w.into_iter().map(|c| c / scale).collect();
            if (next - lambda).abs() <= 1e-12 * next.abs().max(1.0) {
                return Ok(v);
            }
            lambda = next;
        }
        Err(Error::Numerical("power iteration did not converge".into()))
    }
}
