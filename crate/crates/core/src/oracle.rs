//! Exhaustive enumeration of every arrangement of a small set.
//!
//! Used as ground truth: it returns every optimal arrangement, not just
//! one, and on integer inputs compares objective values exactly.

use std::cmp::Ordering;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::number::{Number, FLOAT_REL_TOL};
use crate::sequence::{NumberSet, Sequence};
use crate::stats::variance_of_reals;

/// Enumeration is refused above this size regardless of options.
pub const HARD_LIMIT: usize = 11;
pub const DEFAULT_LIMIT: usize = 9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Objective {
    MaxVariance,
    MinVariance,
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    pub limit_n: usize,
    /// Fix `c_1 = a1` for `MaxVariance`, which every maximizer satisfies.
    /// Ignored for `MinVariance`.
    pub pin_first: bool,
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            limit_n: DEFAULT_LIMIT,
            pin_first: false,
            threads: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub objective: Objective,
    /// Every optimal arrangement, in lexicographic order.
    pub optima: Vec<Sequence>,
    pub best_value: Number,
    /// `n^2 * f` of the optima on the exact path.
    pub best_numerator: Option<i128>,
    /// Number of distinct arrangements evaluated (`n!` for distinct values).
    pub explored: u64,
    pub warnings: Vec<String>,
}

/// Enumerates all arrangements of `set` and returns every one attaining the
/// best objective.
pub fn brute_force(
    set: Arc<NumberSet>,
    objective: Objective,
    options: &OracleOptions,
) -> Result<OracleResult> {
    let n = set.len();
    let limit = options.limit_n.min(HARD_LIMIT);
    if n > limit {
        return Err(Error::InstanceTooLarge { n, limit });
    }
    let run = || enumerate(&set, objective, options.pin_first);
    let partial = match options.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .map(|pool| pool.install(run))
            .unwrap_or_else(|_| run()),
        None => run(),
    };

    let mut optima: Vec<Sequence> = partial
        .keepers
        .into_iter()
        .map(|(_, classes)| Sequence::from_ranks_unchecked(Arc::clone(&set), classes))
        .collect();
    optima.sort();
    optima.dedup();

    let mut warnings = Vec::new();
    let (best_value, best_numerator) = match partial.best {
        Key::Exact(num) => {
            let nn = (n * n) as i128;
            (Number::exact(num, nn), Some(num))
        }
        Key::Float(v) => {
            warnings.push(format!(
                "non-integer input: optima grouped with relative tolerance {FLOAT_REL_TOL:e}"
            ));
            (Number::Float(v), None)
        }
    };
    Ok(OracleResult {
        objective,
        optima,
        best_value,
        best_numerator,
        explored: partial.explored,
        warnings,
    })
}

#[derive(Clone, Copy, Debug)]
enum Key {
    Exact(i128),
    Float(f64),
}

impl Key {
    fn value(self) -> f64 {
        match self {
            Key::Exact(v) => v as f64,
            Key::Float(v) => v,
        }
    }

    /// `Greater` when `self` is strictly better than `other`.
    fn better(self, other: Key, objective: Objective) -> Ordering {
        let raw = match (self, other) {
            (Key::Exact(a), Key::Exact(b)) => a.cmp(&b),
            _ => {
                let (a, b) = (self.value(), other.value());
                let tol = FLOAT_REL_TOL * a.abs().max(b.abs());
                if (a - b).abs() <= tol {
                    Ordering::Equal
                } else {
                    a.partial_cmp(&b).expect("finite")
                }
            }
        };
        match objective {
            Objective::MaxVariance => raw,
            Objective::MinVariance => raw.reverse(),
        }
    }
}

struct Partial {
    best: Key,
    keepers: Vec<(Key, Vec<usize>)>,
    explored: u64,
}

impl Partial {
    fn offer(&mut self, key: Key, classes: &[usize], objective: Objective) {
        match key.better(self.best, objective) {
            Ordering::Greater => {
                self.best = key;
                self.keepers
                    .retain(|(k, _)| k.better(key, objective) == Ordering::Equal);
                self.keepers.push((key, classes.to_vec()));
            }
            Ordering::Equal => self.keepers.push((key, classes.to_vec())),
            Ordering::Less => {}
        }
    }

    fn merge(mut self, other: Partial, objective: Objective) -> Partial {
        self.explored += other.explored;
        if other.keepers.is_empty() {
            return self;
        }
        if self.keepers.is_empty() {
            return Partial {
                explored: self.explored,
                ..other
            };
        }
        for (key, classes) in other.keepers {
            self.offer(key, &classes, objective);
        }
        self
    }
}

/// Class of each rank: the index of the first equal value.
fn class_of_ranks(values: &[f64]) -> Vec<usize> {
    (0..values.len())
        .map(|r| values.partition_point(|v| *v < values[r]))
        .collect()
}

fn enumerate(set: &NumberSet, objective: Objective, pin_first: bool) -> Partial {
    let values = set.values();
    let classes = class_of_ranks(values);
    let mut firsts: Vec<usize> = classes.clone();
    firsts.dedup();
    if pin_first && objective == Objective::MaxVariance {
        firsts.truncate(1);
    }
    let ints = set.integers();

    firsts
        .par_iter()
        .map(|&first| {
            let mut rest = classes.clone();
            let at = rest
                .iter()
                .position(|&c| c == first)
                .expect("class present");
            rest.remove(at);
            let mut arrangement = Vec::with_capacity(classes.len());
            let seed = Key::Float(f64::NAN);
            let mut partial = Partial {
                best: seed,
                keepers: Vec::new(),
                explored: 0,
            };
            let mut entries_f = vec![0.0; classes.len()];
            loop {
                arrangement.clear();
                arrangement.push(first);
                arrangement.extend_from_slice(&rest);
                let key = match ints {
                    Some(ints) => Key::Exact(numerator_of_classes(ints, &arrangement)),
                    None => {
                        for (slot, &c) in entries_f.iter_mut().zip(&arrangement) {
                            *slot = values[c];
                        }
                        Key::Float(variance_of_reals(&entries_f))
                    }
                };
                partial.explored += 1;
                if partial.keepers.is_empty() {
                    partial.best = key;
                    partial.keepers.push((key, arrangement.clone()));
                } else {
                    partial.offer(key, &arrangement, objective);
                }
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            partial
        })
        .reduce_with(|a, b| a.merge(b, objective))
        .expect("at least one arrangement")
}

fn numerator_of_classes(ints: &[i64], classes: &[usize]) -> i128 {
    let n = classes.len() as i128;
    let (mut s, mut total, mut squares) = (0i128, 0i128, 0i128);
    for &c in classes {
        s += ints[c] as i128;
        total += s;
        squares += s * s;
    }
    n * squares - total * total
}

/// Advances to the next lexicographic arrangement; false after the last.
/// Repeated elements yield each distinct arrangement once.
fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    if items.len() < 2 {
        return false;
    }
    let mut i = items.len() - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = items.len() - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}
