//! Partial sums of a sequence and the variance objective.
//!
//! For a sequence `c_1..c_n` with partial sums `s_k = c_1 + ... + c_k` the
//! objective is the population variance of `s_1..s_n`:
//!
//! ```text
//! f(C) = (1/n) * sum(s_k^2) - mean^2
//! ```
//!
//! With integer inputs `n^2 * f(C) = n * sum(s_k^2) - (sum s_k)^2` is an
//! integer, so every comparison on that path is exact.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::number::Number;
use crate::sequence::Sequence;

#[derive(Clone, Debug, Serialize)]
pub struct PartialSumStats {
    pub n: usize,
    pub sums: Vec<Number>,
    pub mean: Number,
    pub variance: Number,
    /// `n^2 * f(C)`, present when all inputs are integers.
    pub exact_numerator: Option<i128>,
}

impl PartialSumStats {
    /// Sum of the partial sums, `n * mean`.
    pub fn total(&self) -> Number {
        self.sums.iter().copied().sum()
    }
}

/// `n * sum(s_k^2) - (sum s_k)^2` for integer entries.
pub fn variance_numerator(entries: &[i64]) -> i128 {
    let n = entries.len() as i128;
    let (mut s, mut total, mut squares) = (0i128, 0i128, 0i128);
    for &c in entries {
        s += c as i128;
        total += s;
        squares += s * s;
    }
    n * squares - total * total
}

/// Variance of partial sums for real entries, two-pass centered form.
pub fn variance_of_reals(entries: &[f64]) -> f64 {
    let n = entries.len() as f64;
    let sums: Vec<f64> = entries
        .iter()
        .scan(0.0, |acc, c| {
            *acc += c;
            Some(*acc)
        })
        .collect();
    let mean = sums.iter().sum::<f64>() / n;
    sums.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / n
}

pub fn partial_sums(seq: &Sequence) -> PartialSumStats {
    let n = seq.len();
    match seq.integer_entries() {
        Some(ints) => {
            let mut acc = 0i128;
            let raw: Vec<i128> = ints
                .iter()
                .map(|&c| {
                    acc += c as i128;
                    acc
                })
                .collect();
            let numerator = variance_numerator(&ints);
            let total: i128 = raw.iter().sum();
            let nn = n as i128;
            PartialSumStats {
                n,
                sums: raw.into_iter().map(Number::int).collect(),
                mean: Number::exact(total, nn),
                variance: Number::exact(numerator, nn * nn),
                exact_numerator: Some(numerator),
            }
        }
        None => {
            let entries = seq.entries();
            let mut acc = 0.0;
            let raw: Vec<f64> = entries
                .iter()
                .map(|c| {
                    acc += c;
                    acc
                })
                .collect();
            let mean = raw.iter().sum::<f64>() / n as f64;
            PartialSumStats {
                n,
                sums: raw.into_iter().map(Number::Float).collect(),
                mean: Number::Float(mean),
                variance: Number::Float(variance_of_reals(&entries)),
                exact_numerator: None,
            }
        }
    }
}

/// The objective `f(C)`.
pub fn variance(seq: &Sequence) -> Number {
    match seq.integer_entries() {
        Some(ints) => {
            let n = ints.len() as i128;
            Number::exact(variance_numerator(&ints), n * n)
        }
        None => Number::Float(variance_of_reals(&seq.entries())),
    }
}

/// Mean of `s_i .. s_{j-1}` (1-based, `1 <= i < j <= n + 1`).
pub fn partial_mean(stats: &PartialSumStats, i: usize, j: usize) -> Result<Number> {
    let n = stats.n;
    if !(1 <= i && i < j && j <= n + 1) {
        return Err(Error::IndexOutOfRange { i, j, n });
    }
    let window: Number = stats.sums[i - 1..j - 1].iter().copied().sum();
    let width = (j - i) as i128;
    Ok(match window {
        Number::Exact(r) => Number::Exact(r / width),
        Number::Float(x) => Number::Float(x / width as f64),
    })
}
