//! Dominance between candidates for completion time variance (CTV).
//!
//! CTV minimizes the same partial-sum variance that the rest of this crate
//! maximizes, so the roles invert: when a transform maps `a` to `b` it
//! strictly increases the variance, which makes `a` the better CTV
//! candidate and `b` the dominated one.
//!
//! The screen below is a pairwise filter built on that single relation. It
//! only removes candidates that another candidate provably beats; it is not
//! a CTV solver.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::number::Number;
use crate::sequence::Sequence;
use crate::stats::variance;
use crate::transforms::{sum_n1_transform, sum_n2_transform, TransformStatus, TransformTrace};

/// Outcome of [`ctv_dominates`], named by which argument carries the larger
/// variance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dominance {
    /// `seq_a` is a transform of `seq_b`: `a` has the larger variance and
    /// `seq_b` is the better CTV candidate.
    AFirst,
    /// `seq_b` is a transform of `seq_a`: `b` has the larger variance and
    /// `seq_a` is the better CTV candidate.
    BFirst,
    /// Neither is a transform of the other.
    Incomparable,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CtvOptions {
    /// Also relate sequences through the sum-'n+1' transform.
    pub include_sum_n1: bool,
}

/// Dominance verdict together with the raw variances, which is all that can
/// be said when the verdict is `Incomparable`.
#[derive(Clone, Debug, Serialize)]
pub struct CtvComparison {
    pub dominance: Dominance,
    pub variance_a: Number,
    pub variance_b: Number,
}

fn reaches(from: &Sequence, to: &Sequence, options: CtvOptions) -> bool {
    let hit = |(next, trace): (Sequence, TransformTrace)| {
        trace.status == TransformStatus::Transformed && next == *to
    };
    hit(sum_n2_transform(from)) || (options.include_sum_n1 && hit(sum_n1_transform(from)))
}

pub fn ctv_dominates(seq_a: &Sequence, seq_b: &Sequence, options: CtvOptions) -> Result<Dominance> {
    if !seq_a.same_set(seq_b) {
        return Err(Error::MismatchedSets);
    }
    Ok(if reaches(seq_a, seq_b, options) {
        Dominance::BFirst
    } else if reaches(seq_b, seq_a, options) {
        Dominance::AFirst
    } else {
        Dominance::Incomparable
    })
}

pub fn ctv_compare(
    seq_a: &Sequence,
    seq_b: &Sequence,
    options: CtvOptions,
) -> Result<CtvComparison> {
    Ok(CtvComparison {
        dominance: ctv_dominates(seq_a, seq_b, options)?,
        variance_a: variance(seq_a),
        variance_b: variance(seq_b),
    })
}

/// Drops every candidate that is the transform of another candidate.
/// Survivors keep their input order. A candidate with the smallest variance
/// is never dropped, since a dominated candidate has strictly larger
/// variance than its dominator.
pub fn ctv_screen(candidates: &[Sequence], options: CtvOptions) -> Result<Vec<Sequence>> {
    if let Some(first) = candidates.first() {
        if candidates.iter().any(|c| !c.same_set(first)) {
            return Err(Error::MismatchedSets);
        }
    }
    let images: Vec<Vec<Sequence>> = candidates
        .iter()
        .map(|c| {
            let mut out = Vec::new();
            let (next, trace) = sum_n2_transform(c);
            if trace.status == TransformStatus::Transformed {
                out.push(next);
            }
            if options.include_sum_n1 {
                let (next, trace) = sum_n1_transform(c);
                if trace.status == TransformStatus::Transformed {
                    out.push(next);
                }
            }
            out
        })
        .collect();
    let dominated = |c: &Sequence| images.iter().any(|imgs| imgs.contains(c));
    Ok(candidates
        .iter()
        .filter(|c| !dominated(c))
        .cloned()
        .collect())
}

/// Orders two candidates by raw variance, smaller first.
pub fn ctv_order(a: &Sequence, b: &Sequence) -> Ordering {
    variance(a).compare(&variance(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::NumberSet;
    use std::sync::Arc;

    fn seq(v: &[i64]) -> Sequence {
        Sequence::of_integers(v).unwrap()
    }

    #[test]
    fn v_shaped_pair_direction() {
        let c = seq(&[9, 8, 6, 4, 2, 1, 3, 5, 7]);
        let c_prime = Sequence::from_entries(
            c.set().clone(),
            &[9.0, 8.0, 5.0, 3.0, 2.0, 1.0, 4.0, 6.0, 7.0],
        )
        .unwrap();
        let cmp = ctv_compare(&c, &c_prime, CtvOptions::default()).unwrap();
        assert_eq!(cmp.dominance, Dominance::AFirst);
        assert!(cmp.variance_b < cmp.variance_a);
        assert_eq!(
            ctv_dominates(&c_prime, &c, CtvOptions::default()).unwrap(),
            Dominance::BFirst
        );
        let kept = ctv_screen(&[c.clone(), c_prime.clone()], CtvOptions::default()).unwrap();
        assert_eq!(kept, vec![c_prime]);
    }

    #[test]
    fn identical_is_incomparable() {
        let c = seq(&[5, 3, 1, 2, 4]);
        assert_eq!(
            ctv_dominates(&c, &c, CtvOptions::default()).unwrap(),
            Dominance::Incomparable
        );
        assert_eq!(
            ctv_screen(std::slice::from_ref(&c), CtvOptions::default()).unwrap(),
            vec![c]
        );
    }

    #[test]
    fn mismatched_sets_rejected() {
        let a = seq(&[1, 2, 3]);
        let b = seq(&[1, 2, 4]);
        assert_eq!(
            ctv_dominates(&a, &b, CtvOptions::default()),
            Err(Error::MismatchedSets)
        );
        assert_eq!(
            ctv_screen(&[a, b], CtvOptions::default()),
            Err(Error::MismatchedSets)
        );
    }

    #[test]
    fn sum_n1_relation_behind_flag() {
        let a = seq(&[1, 6, 7, 8, 4, 3, 2, 5]);
        let set: Arc<NumberSet> = a.set().clone();
        let b = Sequence::from_entries(set, &[1.0, 2.0, 3.0, 4.0, 8.0, 7.0, 6.0, 5.0]).unwrap();
        assert_eq!(
            ctv_dominates(&a, &b, CtvOptions::default()).unwrap(),
            Dominance::Incomparable
        );
        let with_n1 = CtvOptions {
            include_sum_n1: true,
        };
        assert_eq!(ctv_dominates(&a, &b, with_n1).unwrap(), Dominance::BFirst);
        assert_eq!(ctv_order(&a, &b), Ordering::Less);
    }

    #[test]
    fn empty_screen() {
        assert!(ctv_screen(&[], CtvOptions::default()).unwrap().is_empty());
    }
}
