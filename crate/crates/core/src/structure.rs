//! Shape predicates and necessary conditions for optimality.

use std::cmp::Ordering;

use serde::Serialize;

use crate::sequence::Sequence;
use crate::stats::{partial_mean, partial_sums, PartialSumStats};
use crate::transforms::delta_with_stats;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    BeforeMax,
    AfterMax,
}

/// A necessary condition for a maximizer that `seq` fails, with an
/// interchange that strictly improves it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// `c_1` is not the smallest value; swapping it with the minimum helps.
    FirstNotMin { witness: (usize, usize) },
    /// `c_n` is the largest value (only checked for `n > 3`).
    LastIsMax { witness: (usize, usize) },
    /// A window of partial sums on one side of the maximum sits on the
    /// wrong side of the overall mean.
    PartialMeanOrder {
        side: Side,
        window: (usize, usize),
        witness: (usize, usize),
    },
    /// Entries do not rise to the maximum and fall after it. The witness is
    /// an improving swap of an out-of-order pair, when one exists.
    NotWedgeShaped { witness: Option<(usize, usize)> },
}

impl Violation {
    pub fn witness(&self) -> Option<(usize, usize)> {
        match self {
            Violation::FirstNotMin { witness }
            | Violation::LastIsMax { witness }
            | Violation::PartialMeanOrder { witness, .. } => Some(*witness),
            Violation::NotWedgeShaped { witness } => *witness,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Violation::FirstNotMin { .. } => "FirstNotMin",
            Violation::LastIsMax { .. } => "LastIsMax",
            Violation::PartialMeanOrder { .. } => "PartialMeanOrder",
            Violation::NotWedgeShaped { .. } => "NotWedgeShaped",
        }
    }
}

fn first_position_of(entries: &[f64], target: f64) -> usize {
    entries
        .iter()
        .position(|&v| v == target)
        .expect("value present")
        + 1
}

fn monotone(entries: &[f64], want: Ordering, strict: bool) -> bool {
    entries.windows(2).all(|w| {
        let o = w[0].partial_cmp(&w[1]).expect("finite values");
        o == want || (!strict && o == Ordering::Equal)
    })
}

/// Ascending up to the (first) maximum, descending after it. Comparisons
/// are strict for distinct values and non-strict when the set has ties.
pub fn is_wedge_shaped(seq: &Sequence) -> bool {
    let entries = seq.entries();
    let strict = seq.set().is_distinct();
    let peak = first_position_of(&entries, *seq.set().values().last().expect("non-empty"));
    monotone(&entries[..peak], Ordering::Less, strict)
        && monotone(&entries[peak - 1..], Ordering::Greater, strict)
}

/// Descending down to the (first) minimum, ascending after it.
pub fn is_v_shaped(seq: &Sequence) -> bool {
    let entries = seq.entries();
    let strict = seq.set().is_distinct();
    let trough = first_position_of(&entries, seq.set().values()[0]);
    monotone(&entries[..trough], Ordering::Greater, strict)
        && monotone(&entries[trough - 1..], Ordering::Less, strict)
}

struct Checker<'a> {
    seq: &'a Sequence,
    stats: PartialSumStats,
    f_scale: f64,
    mean_scale: f64,
}

impl Checker<'_> {
    fn favorable(&self, i: usize, j: usize) -> bool {
        delta_with_stats(self.seq, &self.stats, i, j)
            .delta_f
            .is_positive_with_scale(self.f_scale)
    }

    fn mean_cmp(&self, i: usize, j: usize) -> Ordering {
        let mu = partial_mean(&self.stats, i, j).expect("window in range");
        mu.compare_with_scale(&self.stats.mean, self.mean_scale)
    }
}

/// Every optimality condition from the interchange analysis that `seq`
/// violates. An empty result does not prove optimality.
///
/// Each reported violation carries a witness interchange with strictly
/// positive objective change; a condition whose only witnesses are tied
/// swaps (possible with duplicate values) is not reported.
pub fn violated_necessary_conditions(seq: &Sequence) -> Vec<Violation> {
    let n = seq.len();
    let entries = seq.entries();
    let values = seq.set().values();
    let stats = partial_sums(seq);
    let checker = Checker {
        seq,
        f_scale: stats.variance.to_f64().abs(),
        mean_scale: stats.mean.to_f64().abs(),
        stats,
    };
    let mut out = Vec::new();

    let a_min = values[0];
    if entries[0] != a_min {
        let j = first_position_of(&entries, a_min);
        if checker.favorable(1, j) {
            out.push(Violation::FirstNotMin { witness: (1, j) });
        }
    }

    let a_max = values[n - 1];
    if n > 3 && entries[n - 1] == a_max && checker.favorable(n - 1, n) {
        out.push(Violation::LastIsMax {
            witness: (n - 1, n),
        });
    }

    let peak = first_position_of(&entries, a_max);
    if 1 < peak && peak < n {
        'left: for i in 1..peak {
            for j in i + 1..=peak {
                if checker.mean_cmp(i, j) != Ordering::Less && checker.favorable(i, peak) {
                    out.push(Violation::PartialMeanOrder {
                        side: Side::BeforeMax,
                        window: (i, j),
                        witness: (i, peak),
                    });
                    break 'left;
                }
            }
        }
        'right: for i in peak..n {
            for j in i + 1..=n {
                if checker.mean_cmp(i, j) != Ordering::Greater && checker.favorable(peak, j) {
                    out.push(Violation::PartialMeanOrder {
                        side: Side::AfterMax,
                        window: (i, j),
                        witness: (peak, j),
                    });
                    break 'right;
                }
            }
        }
    }

    if !is_wedge_shaped(seq) {
        let strict = seq.set().is_distinct();
        let out_of_order = |i: usize, j: usize, want: Ordering| {
            let o = entries[i - 1].partial_cmp(&entries[j - 1]).expect("finite");
            !(o == want || (!strict && o == Ordering::Equal))
        };
        let mut witness = None;
        'search: for i in 1..=n {
            for j in i + 1..=n {
                let misplaced = (j <= peak && out_of_order(i, j, Ordering::Less))
                    || (i >= peak && out_of_order(i, j, Ordering::Greater));
                if misplaced && checker.favorable(i, j) {
                    witness = Some((i, j));
                    break 'search;
                }
            }
        }
        out.push(Violation::NotWedgeShaped { witness });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::is_favorable;

    fn seq(v: &[i64]) -> Sequence {
        Sequence::of_integers(v).unwrap()
    }

    #[test]
    fn wedge_shapes() {
        assert!(is_wedge_shaped(&seq(&[1, 3, 5, 7, 8, 6, 4, 2])));
        assert!(!is_wedge_shaped(&seq(&[1, 6, 2, 3, 4, 8, 7, 5])));
        assert!(is_wedge_shaped(&seq(&[1, 2, 3])));
        assert!(is_wedge_shaped(&seq(&[3, 2, 1])));
        assert!(is_wedge_shaped(&seq(&[7])));
        assert!(is_wedge_shaped(&seq(&[1, 3, 3, 2])));
        assert!(!is_wedge_shaped(&seq(&[1, 3, 2, 3])));
    }

    #[test]
    fn v_shapes() {
        assert!(is_v_shaped(&seq(&[9, 8, 6, 4, 2, 1, 3, 5, 7])));
        assert!(is_v_shaped(&seq(&[9, 8, 5, 3, 2, 1, 4, 6, 7])));
        assert!(!is_v_shaped(&seq(&[1, 3, 2])));
        assert!(is_v_shaped(&seq(&[2, 1, 1, 3])));
    }

    #[test]
    fn first_not_min() {
        let v = violated_necessary_conditions(&seq(&[2, 1, 3]));
        assert!(v.contains(&Violation::FirstNotMin { witness: (1, 2) }));
    }

    #[test]
    fn last_is_max() {
        let v = violated_necessary_conditions(&seq(&[1, 2, 3, 4, 5]));
        assert!(v.contains(&Violation::LastIsMax { witness: (4, 5) }));
        // not checked for n <= 3
        let v3 = violated_necessary_conditions(&seq(&[1, 2, 3]));
        assert!(!v3.iter().any(|x| matches!(x, Violation::LastIsMax { .. })));
    }

    #[test]
    fn partial_mean_order_detected() {
        // maximum at position 3; the window after it sits below the mean
        let s = seq(&[1, 2, 9, 8, 3, 7]);
        let v = violated_necessary_conditions(&s);
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::PartialMeanOrder { .. })));
        for x in &v {
            if let Some((i, j)) = x.witness() {
                assert!(is_favorable(&s, i, j).unwrap(), "{x:?}");
            }
        }
    }

    #[test]
    fn closed_form_optimum_is_clean() {
        let s = seq(&[1, 3, 5, 7, 8, 6, 4, 2]);
        assert!(violated_necessary_conditions(&s).is_empty());
    }

    #[test]
    fn not_wedge_has_favorable_witness() {
        let s = seq(&[1, 6, 2, 3, 4, 8, 7, 5]);
        let v = violated_necessary_conditions(&s);
        let nw = v
            .iter()
            .find(|x| matches!(x, Violation::NotWedgeShaped { .. }))
            .unwrap();
        let (i, j) = nw.witness().unwrap();
        assert!(is_favorable(&s, i, j).unwrap());
    }
}
