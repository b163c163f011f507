//! Exact rational grids over the simplex and over axis-aligned boxes.

use num_bigint::BigInt;

use crate::polynomial::{compositions, Rational};

/// All points `a / k` with `a ∈ ℕⁿ`, `Σa ≤ k`, in lexicographic order of `a`.
pub fn simplex_grid(n_vars: usize, k: u32) -> Vec<Vec<Rational>> {
    let den = BigInt::from(k);
    compositions(n_vars + 1, k)
        .into_iter()
        .map(|a| {
            a.0[..n_vars]
                .iter()
                .map(|&x| Rational::new(BigInt::from(x), den.clone()))
                .collect()
        })
        .collect()
}

/// Number of grid divisions `k` for a step `1/k`; `None` unless the step is
/// the reciprocal of an integer `k >= 2`.
pub fn step_divisions(step: &Rational) -> Option<u32> {
    use num_traits::{One, ToPrimitive};
    if !step.numer().is_one() || *step.denom() < BigInt::from(2) {
        return None;
    }
    step.denom().to_u32()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundingBox {
    pub lower: Vec<Rational>,
    pub upper: Vec<Rational>,
}

impl BoundingBox {
    pub fn unit(n_vars: usize) -> Self {
        BoundingBox {
            lower: vec![Rational::from_integer(0.into()); n_vars],
            upper: vec![Rational::from_integer(1.into()); n_vars],
        }
    }

    pub fn n_vars(&self) -> usize {
        self.lower.len()
    }

    /// Tensor grid with `divisions` equal steps per axis, row-major order.
    pub fn grid(&self, divisions: u32) -> Vec<Vec<Rational>> {
        let n = self.n_vars();
        let steps: Vec<Rational> = self
            .lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| (hi - lo) / Rational::from_integer(BigInt::from(divisions)))
            .collect();
        let mut out = Vec::new();
        let mut counter = vec![0u32; n];
        loop {
            out.push(
                (0..n)
                    .map(|i| &self.lower[i] + &steps[i] * Rational::from_integer(counter[i].into()))
                    .collect(),
            );
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if counter[i] < divisions {
                    counter[i] += 1;
                    break;
                }
                counter[i] = 0;
            }
        }
    }
}
