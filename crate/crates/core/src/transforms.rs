//! Pairwise interchanges and the composite transforms built from them.
//!
//! Swapping positions `i < j` with `delta = c_j - c_i` shifts the partial
//! sums `s_i .. s_{j-1}` by `delta` and changes the objective by
//!
//! ```text
//! df = D1 * delta^2 + D2 * delta
//! D1 = (m/n) * (1 - m/n)            m = j - i
//! D2 = (2m/n) * (mu_ij - mean)
//! ```
//!
//! where `mu_ij` is the mean of `s_i .. s_{j-1}`. Sign analysis of this
//! quadratic decides whether a swap is favorable.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::number::Number;
use crate::sequence::Sequence;
use crate::stats::{partial_sums, variance, PartialSumStats};

/// Closed-form change of the objective under one `(i, j)` interchange.
#[derive(Clone, Debug, Serialize)]
pub struct InterchangeDelta {
    pub i: usize,
    pub j: usize,
    /// `c_j - c_i`.
    pub delta: Number,
    pub d1: Number,
    pub d2: Number,
    pub delta_f: Number,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TransformKind {
    Dual,
    SumN2,
    SumN1,
    Single,
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransformKind::Dual => "dual",
            TransformKind::SumN2 => "sum-n2",
            TransformKind::SumN1 => "sum-n1",
            TransformKind::Single => "interchange",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TransformStatus {
    Transformed,
    NoOp,
    GateNotMet,
}

/// Record of one transform: the interchanges applied in order and the
/// objective change each contributed.
#[derive(Clone, Debug, Serialize)]
pub struct TransformTrace {
    pub kind: TransformKind,
    pub applied: Vec<(usize, usize)>,
    pub f_before: Number,
    pub f_after: Number,
    pub per_step: Vec<Number>,
    pub status: TransformStatus,
}

impl TransformTrace {
    pub fn total_delta(&self) -> Number {
        self.per_step.iter().copied().sum::<Number>()
    }

    /// Checks `f_after - f_before == sum(per_step)` (exact on the integer
    /// path, relative tolerance otherwise).
    pub fn is_consistent(&self) -> bool {
        let observed = self.f_after - self.f_before;
        let scale = self
            .f_before
            .to_f64()
            .abs()
            .max(self.f_after.to_f64().abs());
        observed.compare_with_scale(&self.total_delta(), scale) == Ordering::Equal
    }
}

fn check_pair(n: usize, i: usize, j: usize) -> Result<()> {
    if 1 <= i && i < j && j <= n {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { i, j, n })
    }
}

/// Entry at a 1-based position as a [`Number`] on the sequence's path.
pub(crate) fn entry_number(seq: &Sequence, position: usize) -> Number {
    match seq.set().integers() {
        Some(ints) => Number::int(ints[seq.ranks()[position - 1]] as i128),
        None => Number::Float(seq.entry(position)),
    }
}

/// Swaps positions `i` and `j` (1-based, `i < j`).
pub fn interchange(seq: &Sequence, i: usize, j: usize) -> Result<Sequence> {
    check_pair(seq.len(), i, j)?;
    Ok(seq.swapped(i, j))
}

/// Closed-form objective change of the `(i, j)` interchange.
pub fn delta_f(seq: &Sequence, i: usize, j: usize) -> Result<InterchangeDelta> {
    check_pair(seq.len(), i, j)?;
    Ok(delta_with_stats(seq, &partial_sums(seq), i, j))
}

pub(crate) fn delta_with_stats(
    seq: &Sequence,
    stats: &PartialSumStats,
    i: usize,
    j: usize,
) -> InterchangeDelta {
    let n = seq.len() as i128;
    let m = (j - i) as i128;
    let delta = entry_number(seq, j) - entry_number(seq, i);
    let window: Number = stats.sums[i - 1..j - 1].iter().copied().sum();
    let total = stats.total();
    let (d1, d2) = match (window, total) {
        (Number::Exact(w), Number::Exact(t)) => {
            let nn = n * n;
            let d1 = Number::exact(m * (n - m), nn);
            // 2 * (n * W - m * T) / n^2
            let inner = w * n - t * m;
            let d2 = Number::Exact(inner * 2 / nn);
            (d1, d2)
        }
        _ => {
            let (nf, mf) = (n as f64, m as f64);
            let d1 = Number::Float(mf / nf * (1.0 - mf / nf));
            let mu = window.to_f64() / mf;
            let mean = total.to_f64() / nf;
            let d2 = Number::Float(2.0 * mf / nf * (mu - mean));
            (d1, d2)
        }
    };
    let delta_f = d1 * delta * delta + d2 * delta;
    InterchangeDelta {
        i,
        j,
        delta,
        d1,
        d2,
        delta_f,
    }
}

/// True iff the `(i, j)` interchange strictly increases the objective.
pub fn is_favorable(seq: &Sequence, i: usize, j: usize) -> Result<bool> {
    let d = delta_f(seq, i, j)?;
    let scale = variance(seq).to_f64().abs();
    Ok(d.delta_f.is_positive_with_scale(scale))
}

/// Positions `(k, n + 2 - k)` for `2 <= k <= ceil(n/2)`.
fn n2_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    let u = n.div_ceil(2);
    (2..=u).map(move |k| (k, n + 2 - k))
}

/// Positions `(k, n + 1 - k)` for `2 <= k <= floor(n/2)`.
fn n1_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    let u = n / 2;
    (2..=u).map(move |k| (k, n + 1 - k))
}

/// The dual arrangement `c_1, c_n, c_{n-1}, ..., c_2`. Has the same
/// objective value as `seq`.
pub fn dual(seq: &Sequence) -> Sequence {
    let mut order = seq.ranks().to_vec();
    if order.len() > 2 {
        order[1..].reverse();
    }
    Sequence::from_ranks_unchecked(seq.set().clone(), order)
}

/// The dual as a traced transform of `(k, n + 2 - k)` interchanges.
pub fn dual_transform(seq: &Sequence) -> (Sequence, TransformTrace) {
    let pairs: Vec<_> = n2_pairs(seq.len())
        .filter(|&(a, b)| seq.cmp_positions(a, b) != Ordering::Equal)
        .collect();
    apply_traced(seq, TransformKind::Dual, pairs, TransformStatus::NoOp)
}

fn apply_traced(
    seq: &Sequence,
    kind: TransformKind,
    pairs: Vec<(usize, usize)>,
    empty_status: TransformStatus,
) -> (Sequence, TransformTrace) {
    let f_before = variance(seq);
    let mut current = seq.clone();
    let mut per_step = Vec::with_capacity(pairs.len());
    for &(i, j) in &pairs {
        let stats = partial_sums(&current);
        per_step.push(delta_with_stats(&current, &stats, i, j).delta_f);
        current = current.swapped(i, j);
    }
    let status = if pairs.is_empty() {
        empty_status
    } else {
        TransformStatus::Transformed
    };
    let trace = TransformTrace {
        kind,
        applied: pairs,
        f_before,
        f_after: variance(&current),
        per_step,
        status,
    };
    (current, trace)
}

/// Index sets for the `(k, n + 2 - k)` pairing: `below` holds every `k`
/// with `c_k < c_{n+2-k}`, `above` every `k` with `c_k > c_{n+2-k}`.
/// Tied pairs belong to neither.
pub fn n2_partition(seq: &Sequence) -> (Vec<usize>, Vec<usize>) {
    let mut below = Vec::new();
    let mut above = Vec::new();
    for (k, partner) in n2_pairs(seq.len()) {
        match seq.cmp_positions(k, partner) {
            Ordering::Less => below.push(k),
            Ordering::Greater => above.push(k),
            Ordering::Equal => {}
        }
    }
    (below, above)
}

/// Swaps every pair `(k, n + 2 - k)` with `c_k < c_{n+2-k}`, provided some
/// pair is ordered each way. When all untied pairs already point the same
/// direction the sequence is returned unchanged with `GateNotMet`.
///
/// A transformed result has `c_k > c_{n+2-k}` for every untied pair and a
/// strictly larger objective.
pub fn sum_n2_transform(seq: &Sequence) -> (Sequence, TransformTrace) {
    let (below, above) = n2_partition(seq);
    let n = seq.len();
    if below.is_empty() || above.is_empty() {
        let f = variance(seq);
        let trace = TransformTrace {
            kind: TransformKind::SumN2,
            applied: Vec::new(),
            f_before: f,
            f_after: f,
            per_step: Vec::new(),
            status: TransformStatus::GateNotMet,
        };
        return (seq.clone(), trace);
    }
    let pairs = below.into_iter().map(|k| (k, n + 2 - k)).collect();
    apply_traced(seq, TransformKind::SumN2, pairs, TransformStatus::NoOp)
}

/// Swaps every pair `(k, n + 1 - k)`, `2 <= k <= floor(n/2)`, with
/// `c_k > c_{n+1-k}`. `NoOp` when there is no such pair; otherwise the
/// objective strictly increases.
pub fn sum_n1_transform(seq: &Sequence) -> (Sequence, TransformTrace) {
    let pairs: Vec<_> = n1_pairs(seq.len())
        .filter(|&(k, partner)| seq.cmp_positions(k, partner) == Ordering::Greater)
        .collect();
    apply_traced(seq, TransformKind::SumN1, pairs, TransformStatus::NoOp)
}

/// Per-step split of a sum-'n+2' transform into the part that cancels
/// across steps (`zero_terms`, summing to zero) and the residual part
/// (`residual_terms`, summing to the total change), all computed from the
/// original sequence.
#[derive(Clone, Debug, Serialize)]
pub struct SumN2Decomposition {
    pub swapped: Vec<usize>,
    pub zero_terms: Vec<Number>,
    pub residual_terms: Vec<Number>,
}

impl SumN2Decomposition {
    pub fn zero_total(&self) -> Number {
        self.zero_terms.iter().copied().sum()
    }

    pub fn residual_total(&self) -> Number {
        self.residual_terms.iter().copied().sum()
    }
}

/// Decomposes the sum-'n+2' improvement into cancelling and residual terms.
/// Returns `None` when the transform's gate is not met.
pub fn sum_n2_decomposition(seq: &Sequence) -> Option<SumN2Decomposition> {
    let (below, above) = n2_partition(seq);
    if below.is_empty() || above.is_empty() {
        return None;
    }
    let n = seq.len();
    let u = n.div_ceil(2);
    let c = |k: usize| entry_number(seq, k);
    let int = |x: usize| Number::int(x as i128);
    // Differences c_k - c_{n+2-k} on the original sequence.
    let diff = |k: usize| c(k) - c(n + 2 - k);
    let scale = Number::exact(2, (n * n) as i128);
    let zero = diff(2).zero_like();
    let in_set = |k: usize| below.binary_search(&k).is_ok();

    let mut zero_terms = Vec::with_capacity(below.len());
    let mut residual_terms = Vec::with_capacity(below.len());
    for &im in &below {
        let lead = -diff(im);
        let left_weight = int(n + 2 - 2 * im);
        let right_weight = int(im - 1);

        let (mut z_left, mut r_left) = (zero, zero);
        for k in 2..im {
            let w = int(k - 1);
            if in_set(k) {
                z_left = z_left + w * -diff(k);
            } else {
                r_left = r_left + w * diff(k);
            }
        }
        let (mut z_right, mut r_right) = (zero, zero);
        for k in im + 1..=u {
            let w = int(n + 2 - 2 * k);
            if in_set(k) {
                z_right = z_right + w * diff(k);
            } else {
                r_right = r_right + w * diff(k);
            }
        }
        zero_terms.push(scale * lead * (left_weight * z_left + right_weight * z_right));
        residual_terms.push(scale * lead * (left_weight * r_left + right_weight * r_right));
    }
    Some(SumN2Decomposition {
        swapped: below,
        zero_terms,
        residual_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[i64]) -> Sequence {
        Sequence::of_integers(v).unwrap()
    }

    fn ints(s: &Sequence) -> Vec<i64> {
        s.integer_entries().unwrap()
    }

    #[test]
    fn interchange_swaps_positions() {
        let c = seq(&[1, 6, 2, 3, 4, 8, 7, 5]);
        let once = interchange(&c, 3, 7).unwrap();
        assert_eq!(ints(&once), vec![1, 6, 7, 3, 4, 8, 2, 5]);
        assert_eq!(interchange(&once, 3, 7).unwrap(), c);
        let twice = interchange(&once, 4, 6).unwrap();
        assert_eq!(ints(&twice), vec![1, 6, 7, 8, 4, 3, 2, 5]);
    }

    #[test]
    fn interchange_bounds() {
        let c = seq(&[1, 2, 3]);
        for (i, j) in [(0, 1), (2, 2), (3, 2), (1, 4)] {
            assert_eq!(
                interchange(&c, i, j),
                Err(Error::IndexOutOfRange { i, j, n: 3 })
            );
            assert!(delta_f(&c, i, j).is_err());
            assert!(is_favorable(&c, i, j).is_err());
        }
    }

    #[test]
    fn delta_components_follow_the_quadratic() {
        let c = seq(&[1, 6, 2, 3, 4, 8, 7, 5]);
        let d = delta_f(&c, 3, 7).unwrap();
        assert_eq!(d.delta, Number::int(5));
        assert_eq!(d.d1, Number::exact(4 * 4, 64));
        assert_eq!(d.delta_f, d.d1 * d.delta * d.delta + d.d2 * d.delta);
        let direct = variance(&interchange(&c, 3, 7).unwrap()) - variance(&c);
        assert_eq!(d.delta_f, direct);
    }

    #[test]
    fn zero_delta_is_not_favorable() {
        let c = seq(&[1, 3, 3, 2]);
        let d = delta_f(&c, 2, 3).unwrap();
        assert_eq!(d.delta_f, Number::int(0));
        assert!(!is_favorable(&c, 2, 3).unwrap());
    }

    #[test]
    fn moving_minimum_to_front_is_favorable() {
        let c = seq(&[4, 2, 1, 3, 5]);
        assert!(is_favorable(&c, 1, 3).unwrap());
    }

    #[test]
    fn trailing_maximum_swap_is_favorable() {
        let c = seq(&[1, 3, 4, 2, 5]);
        assert!(is_favorable(&c, 4, 5).unwrap());
    }

    #[test]
    fn dual_reverses_tail() {
        let c = seq(&[1, 2, 3, 4, 5]);
        assert_eq!(ints(&dual(&c)), vec![1, 5, 4, 3, 2]);
        assert_eq!(dual(&dual(&c)), c);
        let e1 = seq(&[1, 6, 2, 3, 4, 8, 7, 5]);
        let d = dual(&e1);
        assert_eq!(ints(&d), vec![1, 5, 7, 8, 4, 3, 2, 6]);
        assert_eq!(variance(&d), variance(&e1));
        assert_eq!(variance(&d).to_string(), "131.5");
    }

    #[test]
    fn dual_transform_matches_dual() {
        let c = seq(&[3, 1, 4, 5, 9, 2, 6]);
        let (d, trace) = dual_transform(&c);
        assert_eq!(d, dual(&c));
        assert_eq!(trace.status, TransformStatus::Transformed);
        assert_eq!(trace.f_after, trace.f_before);
        assert!(trace.is_consistent());
        let (_, noop) = dual_transform(&seq(&[2, 1]));
        assert_eq!(noop.status, TransformStatus::NoOp);
    }

    #[test]
    fn sum_n2_on_eight_elements() {
        let c = seq(&[1, 6, 2, 3, 4, 8, 7, 5]);
        let (out, trace) = sum_n2_transform(&c);
        assert_eq!(ints(&out), vec![1, 6, 7, 8, 4, 3, 2, 5]);
        assert_eq!(trace.applied, vec![(3, 7), (4, 6)]);
        assert_eq!(trace.status, TransformStatus::Transformed);
        assert_eq!(trace.total_delta(), Number::exact(15, 16));
        assert_eq!(trace.f_before.to_string(), "131.5");
        assert_eq!(trace.f_after.to_string(), "132.4375");
        assert!(trace.is_consistent());
    }

    #[test]
    fn sum_n2_gate() {
        for v in [[1, 8, 7, 6, 5, 4, 3, 2], [1, 2, 3, 4, 5, 6, 7, 8]] {
            let c = seq(&v);
            let (out, trace) = sum_n2_transform(&c);
            assert_eq!(out, c);
            assert_eq!(trace.status, TransformStatus::GateNotMet);
            assert!(trace.applied.is_empty());
        }
        for v in [&[4][..], &[2, 1], &[3, 1, 2]] {
            assert_eq!(
                sum_n2_transform(&seq(v)).1.status,
                TransformStatus::GateNotMet
            );
        }
    }

    #[test]
    fn sum_n2_ties_are_never_swapped() {
        // n = 7 pairs: (2,7) 5 > 1, (3,6) 2 < 4, (4,5) tied
        let c = seq(&[1, 5, 2, 3, 3, 4, 1]);
        let (below, above) = n2_partition(&c);
        assert_eq!(below, vec![3]);
        assert_eq!(above, vec![2]);
        let (_, trace) = sum_n2_transform(&c);
        assert_eq!(trace.applied, vec![(3, 6)]);
        assert!(trace.f_after > trace.f_before);
    }

    #[test]
    fn sum_n1_after_sum_n2() {
        let c = seq(&[1, 6, 7, 8, 4, 3, 2, 5]);
        let (out, trace) = sum_n1_transform(&c);
        assert_eq!(ints(&out), vec![1, 2, 3, 4, 8, 7, 6, 5]);
        assert_eq!(trace.applied, vec![(2, 7), (3, 6), (4, 5)]);
        assert!(trace.f_after > trace.f_before);
        assert!(trace.is_consistent());
    }

    #[test]
    fn sum_n1_noop_cases() {
        let (_, t) = sum_n1_transform(&seq(&[1, 2, 3, 4, 8, 7, 6, 5]));
        assert_eq!(t.status, TransformStatus::NoOp);
        assert_eq!(t.f_after, t.f_before);
        for v in [[2, 1], [1, 2]] {
            assert_eq!(sum_n1_transform(&seq(&v)).1.status, TransformStatus::NoOp);
        }
    }

    #[test]
    fn eight_element_decomposition() {
        let c = seq(&[1, 6, 2, 3, 4, 8, 7, 5]);
        let dec = sum_n2_decomposition(&c).unwrap();
        assert_eq!(dec.swapped, vec![3, 4]);
        assert_eq!(dec.zero_total(), Number::int(0));
        assert_eq!(dec.residual_total(), Number::exact(15, 16));
        // 2/64 * (c7 - c3) * (8 + 2 - 6) * (c2 - c8), then the same for i = 4
        assert_eq!(dec.residual_terms[0], Number::exact(2 * 5 * 4, 64));
        assert_eq!(dec.residual_terms[1], Number::exact(2 * 5 * 2, 64));
        assert!(sum_n2_decomposition(&seq(&[1, 2, 3, 4])).is_none());
    }

    #[test]
    fn decomposition_terms_match_each_step() {
        let c = seq(&[2, 9, 1, 7, 3, 8, 4, 6, 5, 10]);
        let dec = sum_n2_decomposition(&c).unwrap();
        let (_, trace) = sum_n2_transform(&c);
        assert_eq!(trace.per_step.len(), dec.swapped.len());
        for (m, step) in trace.per_step.iter().enumerate() {
            assert_eq!(*step, dec.zero_terms[m] + dec.residual_terms[m]);
        }
        assert_eq!(dec.zero_total(), Number::int(0));
        assert_eq!(dec.residual_total(), trace.f_after - trace.f_before);
    }

    #[test]
    fn float_path_delta_matches_recompute() {
        let c = Sequence::of_values(&[0.5, 2.25, 1.125, 3.75, 0.8]).unwrap();
        for i in 1..5 {
            for j in i + 1..=5 {
                let d = delta_f(&c, i, j).unwrap();
                let direct = variance(&interchange(&c, i, j).unwrap()) - variance(&c);
                assert!((d.delta_f.to_f64() - direct.to_f64()).abs() < 1e-9);
            }
        }
    }
}
