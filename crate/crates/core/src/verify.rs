//! Runs the library's property checks against a single instance.

use std::cmp::Ordering;

use serde::Serialize;

use crate::construct::{check_interleaved_structure, construct_optimal};
use crate::number::Number;
use crate::oracle::{brute_force, Objective, OracleOptions};
use crate::sequence::Sequence;
use crate::stats::{partial_mean, partial_sums, variance};
use crate::structure::{is_wedge_shaped, violated_necessary_conditions};
use crate::transforms::{
    delta_f, dual, interchange, n2_partition, sum_n1_transform, sum_n2_decomposition,
    sum_n2_transform, TransformStatus,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub sequence: Sequence,
    pub checks: Vec<PropertyCheck>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> PropertyCheck {
    PropertyCheck {
        name,
        status: if passed {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        detail: detail.into(),
    }
}

fn skipped(name: &'static str, detail: impl Into<String>) -> PropertyCheck {
    PropertyCheck {
        name,
        status: CheckStatus::Skipped,
        detail: detail.into(),
    }
}

fn same(a: &Number, b: &Number, scale: f64) -> bool {
    a.compare_with_scale(b, scale) == Ordering::Equal
}

/// Checks every instance-level property on `seq` and on the closed-form
/// optima of its set. The exhaustive comparison runs only for integer,
/// distinct sets with `n <= oracle_limit`.
pub fn verify_instance(seq: &Sequence, oracle_limit: usize) -> VerifyReport {
    let n = seq.len();
    let stats = partial_sums(seq);
    let f = stats.variance;
    let scale = f.to_f64().abs();
    let mut checks = Vec::new();

    // Centered form against the simplified form.
    let centered: Number = stats
        .sums
        .iter()
        .map(|s| (*s - stats.mean) * (*s - stats.mean))
        .sum::<Number>()
        * match f {
            Number::Exact(_) => Number::exact(1, n as i128),
            Number::Float(_) => Number::Float(1.0 / n as f64),
        };
    checks.push(check(
        "variance_forms_agree",
        same(&centered, &f, scale),
        format!("f = {f}"),
    ));

    let fd = variance(&dual(seq));
    checks.push(check(
        "dual_invariance",
        same(&fd, &f, scale),
        format!("f(dual) = {fd}"),
    ));

    let mut mismatches = 0;
    for i in 1..=n {
        for j in i + 1..=n {
            let closed = delta_f(seq, i, j).expect("pair in range").delta_f;
            let direct = variance(&interchange(seq, i, j).expect("pair in range")) - f;
            if !same(&closed, &direct, scale) {
                mismatches += 1;
            }
        }
    }
    checks.push(check(
        "interchange_delta_consistency",
        mismatches == 0,
        format!("{} pairs, {mismatches} mismatches", n * (n - 1) / 2),
    ));

    let mean_scale = stats.mean.to_f64().abs();
    let mut order_ok = true;
    let mut mixing_ok = true;
    for i in 1..=n {
        for j in i + 1..=n + 1 {
            let mu = partial_mean(&stats, i, j).expect("window in range");
            if j <= n {
                let wider = partial_mean(&stats, i, j + 1).expect("window in range");
                order_ok &= mu.compare_with_scale(&wider, mean_scale) == Ordering::Less;
            }
            if i + 1 < j {
                let shifted = partial_mean(&stats, i + 1, j).expect("window in range");
                order_ok &= mu.compare_with_scale(&shifted, mean_scale) == Ordering::Less;
            }
            for k in j + 1..=n + 1 {
                let left = mu * Number::int((j - i) as i128);
                let right = partial_mean(&stats, j, k).expect("window in range")
                    * Number::int((k - j) as i128);
                let whole = partial_mean(&stats, i, k).expect("window in range")
                    * Number::int((k - i) as i128);
                mixing_ok &= same(&(left + right), &whole, mean_scale * n as f64);
            }
        }
    }
    checks.push(check("partial_mean_monotone", order_ok, ""));
    checks.push(check("partial_mean_mixing", mixing_ok, ""));

    let (after, trace) = sum_n2_transform(seq);
    match trace.status {
        TransformStatus::Transformed => {
            let (below, _) = n2_partition(&after);
            let improved = trace.f_after > trace.f_before;
            let decomposition_ok = sum_n2_decomposition(seq).is_some_and(|d| {
                same(&d.zero_total(), &Number::int(0), scale)
                    && same(
                        &d.residual_total(),
                        &(trace.f_after - trace.f_before),
                        scale,
                    )
            });
            checks.push(check(
                "sum_n2_improves",
                improved && below.is_empty() && trace.is_consistent() && decomposition_ok,
                format!("df = {}", trace.total_delta()),
            ));
        }
        _ => checks.push(skipped("sum_n2_improves", "gate not met")),
    }

    let (after, trace) = sum_n1_transform(seq);
    match trace.status {
        TransformStatus::Transformed => {
            let improved = trace.f_after > trace.f_before;
            let settled = sum_n1_transform(&after).1.status == TransformStatus::NoOp;
            checks.push(check(
                "sum_n1_improves",
                improved && settled && trace.is_consistent(),
                format!("df = {}", trace.total_delta()),
            ));
        }
        _ => checks.push(skipped("sum_n1_improves", "no pair to swap")),
    }

    let violations = violated_necessary_conditions(seq);
    let sound = violations.iter().all(|v| match v.witness() {
        Some((i, j)) => delta_f(seq, i, j)
            .map(|d| d.delta_f.is_positive_with_scale(scale))
            .unwrap_or(false),
        None => true,
    });
    let names: Vec<&str> = violations.iter().map(|v| v.name()).collect();
    checks.push(check(
        "violation_witnesses_improve",
        sound,
        format!("violations: [{}]", names.join(", ")),
    ));

    let (primary, secondary) = construct_optimal(seq.set().clone());
    let structured = is_wedge_shaped(&primary)
        && is_wedge_shaped(&secondary)
        && violated_necessary_conditions(&primary).is_empty()
        && violated_necessary_conditions(&secondary).is_empty()
        && dual(&primary) == secondary
        && (n < 4 || !seq.set().is_distinct() || check_interleaved_structure(&primary).holds());
    checks.push(check(
        "closed_form_structure",
        structured,
        format!("C* = {primary}, C*d = {secondary}"),
    ));

    if !seq.set().is_integral() || !seq.set().is_distinct() {
        checks.push(skipped(
            "oracle_matches_closed_form",
            "needs distinct integer values",
        ));
    } else if n > oracle_limit {
        checks.push(skipped(
            "oracle_matches_closed_form",
            format!("n = {n} exceeds limit {oracle_limit}"),
        ));
    } else {
        let opts = OracleOptions {
            limit_n: oracle_limit,
            ..Default::default()
        };
        let result = brute_force(seq.set().clone(), Objective::MaxVariance, &opts)
            .expect("size checked above");
        let mut expected = vec![primary, secondary];
        expected.sort();
        expected.dedup();
        checks.push(check(
            "oracle_matches_closed_form",
            result.optima == expected,
            format!(
                "{} optima over {} arrangements",
                result.optima.len(),
                result.explored
            ),
        ));
    }

    VerifyReport {
        sequence: seq.clone(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_element_instance_passes_everything() {
        let seq = Sequence::of_integers(&[1, 6, 2, 3, 4, 8, 7, 5]).unwrap();
        let report = verify_instance(&seq, 9);
        assert!(report.all_passed(), "{:#?}", report.checks);
        let n1 = report
            .checks
            .iter()
            .find(|c| c.name == "sum_n1_improves")
            .unwrap();
        assert_eq!(n1.status, CheckStatus::Skipped);
    }

    #[test]
    fn float_instance_skips_oracle() {
        let seq = Sequence::of_values(&[0.5, 1.5, 0.25, 3.0, 2.0]).unwrap();
        let report = verify_instance(&seq, 9);
        assert!(report.all_passed(), "{:#?}", report.checks);
        let oracle = report
            .checks
            .iter()
            .find(|c| c.name == "oracle_matches_closed_form")
            .unwrap();
        assert_eq!(oracle.status, CheckStatus::Skipped);
    }
}
