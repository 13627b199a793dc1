//! Local search over favorable interchanges.
//!
//! Every applied move strictly increases the objective, so the search ends
//! at an arrangement where no single interchange helps. That is a local
//! optimum only; the report says whether it matches a closed-form
//! maximizer but never claims global optimality by itself.

use std::cmp::Ordering;

use serde::Serialize;

use crate::construct::construct_optimal;
use crate::number::Number;
use crate::sequence::Sequence;
use crate::stats::{partial_sums, variance};
use crate::transforms::{
    delta_with_stats, sum_n1_transform, sum_n2_transform, InterchangeDelta, TransformKind,
    TransformStatus, TransformTrace,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strategy {
    /// Apply the first favorable `(i, j)` in lexicographic order.
    FirstImprovement,
    /// Apply the interchange with the largest gain; ties go to the
    /// lexicographically smallest pair.
    BestImprovement,
    /// Try the sum-'n+2' then the sum-'n+1' transform; fall back to first
    /// improvement when neither applies.
    TransformsFirst,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub strategy: Strategy,
    pub start: Sequence,
    pub end: Sequence,
    pub steps: Vec<TransformTrace>,
    /// Objective before the first step and after each step.
    pub f_trajectory: Vec<Number>,
    /// No favorable interchange remains at `end`.
    pub converged: bool,
    /// `end` equals one of the two closed-form maximizers.
    pub reached_closed_form: bool,
}

impl SearchReport {
    pub fn is_strictly_increasing(&self) -> bool {
        self.f_trajectory
            .windows(2)
            .all(|w| w[1].compare_with_scale(&w[0], w[0].to_f64().abs()) == Ordering::Greater)
    }
}

fn improving_moves(seq: &Sequence) -> impl Iterator<Item = InterchangeDelta> + '_ {
    let stats = partial_sums(seq);
    let scale = stats.variance.to_f64().abs();
    let n = seq.len();
    (1..=n)
        .flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
        .map(move |(i, j)| delta_with_stats(seq, &stats, i, j))
        .filter(move |d| d.delta_f.is_positive_with_scale(scale))
}

fn single_step(seq: &Sequence, strategy: Strategy) -> Option<(Sequence, TransformTrace)> {
    let chosen = match strategy {
        Strategy::BestImprovement => {
            improving_moves(seq).fold(None, |best: Option<InterchangeDelta>, d| {
                match &best {
                    // strictly greater keeps the earliest pair on ties
                    Some(b) if d.delta_f.compare(&b.delta_f) != Ordering::Greater => best,
                    _ => Some(d),
                }
            })
        }
        _ => improving_moves(seq).next(),
    }?;
    let next = seq.swapped(chosen.i, chosen.j);
    let trace = TransformTrace {
        kind: TransformKind::Single,
        applied: vec![(chosen.i, chosen.j)],
        f_before: variance(seq),
        f_after: variance(&next),
        per_step: vec![chosen.delta_f],
        status: TransformStatus::Transformed,
    };
    Some((next, trace))
}

fn transform_step(seq: &Sequence) -> Option<(Sequence, TransformTrace)> {
    for transform in [sum_n2_transform, sum_n1_transform] {
        let (next, trace) = transform(seq);
        let improved = trace
            .f_after
            .compare_with_scale(&trace.f_before, trace.f_before.to_f64().abs())
            == Ordering::Greater;
        if trace.status == TransformStatus::Transformed && improved {
            return Some((next, trace));
        }
    }
    None
}

/// Repeatedly applies improving moves from `start` until none remains.
pub fn local_search(start: &Sequence, strategy: Strategy) -> SearchReport {
    let mut current = start.clone();
    let mut steps = Vec::new();
    let mut f_trajectory = vec![variance(start)];
    loop {
        let step = match strategy {
            Strategy::TransformsFirst => transform_step(&current)
                .or_else(|| single_step(&current, Strategy::FirstImprovement)),
            other => single_step(&current, other),
        };
        let Some((next, trace)) = step else { break };
        // A move predicted favorable must not lose ground once re-evaluated.
        let last = *f_trajectory.last().expect("seeded");
        if trace.f_after.compare_with_scale(&last, last.to_f64().abs()) != Ordering::Greater {
            break;
        }
        f_trajectory.push(trace.f_after);
        steps.push(trace);
        current = next;
    }
    let converged = improving_moves(&current).next().is_none();
    let (primary, secondary) = construct_optimal(current.set().clone());
    let reached_closed_form = current == primary || current == secondary;
    SearchReport {
        strategy,
        start: start.clone(),
        end: current,
        steps,
        f_trajectory,
        converged,
        reached_closed_form,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    use crate::sequence::NumberSet;

    const ALL: [Strategy; 3] = [
        Strategy::FirstImprovement,
        Strategy::BestImprovement,
        Strategy::TransformsFirst,
    ];

    #[test]
    fn closed_form_start_converges_immediately() {
        let set = Arc::new(NumberSet::from_integers(&[1, 2, 3, 4, 5, 6, 7, 8]).unwrap());
        let (c, _) = construct_optimal(set);
        for s in ALL {
            let r = local_search(&c, s);
            assert!(r.steps.is_empty());
            assert!(r.converged);
            assert!(r.reached_closed_form);
        }
    }

    #[test]
    fn transforms_first_opens_with_sum_n2() {
        let c = Sequence::of_integers(&[1, 6, 2, 3, 4, 8, 7, 5]).unwrap();
        let r = local_search(&c, Strategy::TransformsFirst);
        assert_eq!(r.steps[0].kind, TransformKind::SumN2);
        assert_eq!(r.steps[0].total_delta(), Number::exact(15, 16));
        assert!(r.converged);
        assert!(r.is_strictly_increasing());
    }

    #[test]
    fn pair_takes_one_step() {
        let c = Sequence::of_integers(&[9, 4]).unwrap();
        for s in ALL {
            let r = local_search(&c, s);
            assert_eq!(r.steps.len(), 1);
            assert_eq!(r.end.integer_entries().unwrap(), vec![4, 9]);
            assert!(r.reached_closed_form);
        }
    }

    #[test]
    fn best_improvement_takes_largest_gain() {
        let c = Sequence::of_integers(&[5, 3, 1, 4, 2]).unwrap();
        let r = local_search(&c, Strategy::BestImprovement);
        let first = &r.steps[0];
        let (i, j) = first.applied[0];
        let stats = partial_sums(&c);
        for a in 1..=5 {
            for b in a + 1..=5 {
                let d = delta_with_stats(&c, &stats, a, b).delta_f;
                assert!(d <= first.per_step[0] || (a, b) == (i, j));
            }
        }
    }

    #[test]
    fn float_inputs_terminate() {
        let c = Sequence::of_values(&[2.5, 0.7, 3.1, 1.9, 0.2, 4.4]).unwrap();
        for s in ALL {
            let r = local_search(&c, s);
            assert!(r.converged);
            assert!(r.is_strictly_increasing());
        }
    }
}
