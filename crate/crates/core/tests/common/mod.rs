//! Reference implementations shared by the integration tests. These use
//! the definitional centered variance over rationals and a plain recursive
//! permutation generator, independent of the library's kernels.

#![allow(dead_code)]

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;

pub type Q = Ratio<i128>;

/// `(1/n) * sum((s_k - mean)^2)` over exact rationals.
pub fn reference_variance(entries: &[i64]) -> Q {
    let n = entries.len() as i128;
    let mut acc = 0i128;
    let sums: Vec<Q> = entries
        .iter()
        .map(|&c| {
            acc += c as i128;
            Q::from_integer(acc)
        })
        .collect();
    let mean = sums.iter().copied().fold(Q::from_integer(0), |a, b| a + b) / n;
    sums.iter()
        .map(|s| (*s - mean) * (*s - mean))
        .fold(Q::from_integer(0), |a, b| a + b)
        / n
}

pub fn all_permutations(items: &[i64]) -> Vec<Vec<i64>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in all_permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Every arrangement attaining the best reference variance, sorted.
pub fn reference_optima(items: &[i64], maximize: bool) -> (Q, Vec<Vec<i64>>) {
    let perms = all_permutations(items);
    let scored: Vec<(Q, Vec<i64>)> = perms
        .into_iter()
        .map(|p| (reference_variance(&p), p))
        .collect();
    let best = scored
        .iter()
        .map(|(v, _)| *v)
        .reduce(|a, b| if (b > a) == maximize { b } else { a })
        .unwrap();
    let mut optima: Vec<Vec<i64>> = scored
        .into_iter()
        .filter(|(v, _)| *v == best)
        .map(|(_, p)| p)
        .collect();
    optima.sort();
    optima.dedup();
    (best, optima)
}

pub fn distinct_set<R: Rng>(rng: &mut R, n: usize, max: i64) -> Vec<i64> {
    let mut pool: Vec<i64> = (1..=max).collect();
    pool.shuffle(rng);
    pool.truncate(n);
    pool.sort();
    pool
}

pub fn random_entries<R: Rng>(rng: &mut R, n: usize, max: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(1..=max)).collect()
}
