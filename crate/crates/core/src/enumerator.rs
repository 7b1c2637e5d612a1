//! Homogeneous Hamming weight enumerators.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::metric::hamming_weight;
use crate::word::CodeBook;

/// `A_w` counts for `w = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEnumerator {
    length: usize,
    coefficients: Vec<u64>,
}

impl WeightEnumerator {
    pub fn from_coefficients(length: usize, mut coefficients: Vec<u64>) -> Self {
        coefficients.resize(length + 1, 0);
        Self {
            length,
            coefficients,
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// `A_w`, zero outside `0..=n`.
    pub fn coefficient(&self, w: usize) -> u64 {
        self.coefficients.get(w).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    /// `sum_w A_w`.
    pub fn total(&self) -> u64 {
        self.coefficients.iter().sum()
    }

    /// `W(X, Y) = sum_w A_w X^(n-w) Y^w`, exactly.
    pub fn evaluate(&self, x: u64, y: u64) -> BigUint {
        let n = self.length as u32;
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0)
            .map(|(w, &a)| {
                BigUint::from(a)
                    * BigUint::from(x).pow(n - w as u32)
                    * BigUint::from(y).pow(w as u32)
            })
            .sum()
    }
}

pub fn weight_enumerator(c: &CodeBook) -> WeightEnumerator {
    let n = c.length();
    let mut coefficients = vec![0u64; n + 1];
    for w in c.iter() {
        coefficients[hamming_weight(w)] += 1;
    }
    WeightEnumerator {
        length: n,
        coefficients,
    }
}

pub fn evaluate_enumerator(w: &WeightEnumerator, x: u64, y: u64) -> BigUint {
    w.evaluate(x, y)
}
