//! Report documents. Each one serializes to JSON field-for-field and also
//! renders as plain text.

use std::fmt::Write;

use serde::Serialize;
use varseq::verify::{CheckStatus, VerifyReport};
use varseq::{
    variance, Number, OracleResult, PartialSumStats, SearchReport, Sequence, TransformStatus,
    TransformTrace,
};

pub trait Report: Serialize {
    fn text(&self) -> String;
}

/// A sequence together with its order spec and objective value.
#[derive(Serialize)]
pub struct Arrangement {
    pub sequence: Sequence,
    pub order: String,
    pub f: Number,
}

impl Arrangement {
    pub fn of(seq: &Sequence) -> Self {
        Arrangement {
            sequence: seq.clone(),
            order: seq.order_spec(),
            f: variance(seq),
        }
    }

    fn line(&self) -> String {
        format!("{}  f = {}  ({})", self.sequence, self.f, self.order)
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn pairs(applied: &[(usize, usize)]) -> String {
    if applied.is_empty() {
        return "none".into();
    }
    applied
        .iter()
        .map(|(i, j)| format!("({i},{j})"))
        .collect::<Vec<_>>()
        .join(",")
}

fn status_name(status: TransformStatus) -> &'static str {
    match status {
        TransformStatus::Transformed => "transformed",
        TransformStatus::NoOp => "no-op",
        TransformStatus::GateNotMet => "gate not met",
    }
}

#[derive(Serialize)]
pub struct EvaluateReport {
    pub sequence: Sequence,
    pub order: String,
    pub stats: PartialSumStats,
}

impl Report for EvaluateReport {
    fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "sequence: {}", self.sequence).unwrap();
        writeln!(out, "{}", self.order).unwrap();
        writeln!(out, "partial sums: {}", join(&self.stats.sums)).unwrap();
        writeln!(out, "mean = {}", self.stats.mean).unwrap();
        writeln!(out, "f = {}", self.stats.variance).unwrap();
        if let Some(num) = self.stats.exact_numerator {
            writeln!(out, "n^2 f = {num} (n = {})", self.stats.n).unwrap();
        }
        out
    }
}

#[derive(Serialize)]
pub struct OptimalReport {
    pub primary: Arrangement,
    pub secondary: Arrangement,
}

impl Report for OptimalReport {
    fn text(&self) -> String {
        format!(
            "C*   = {}\nC*d  = {}\n",
            self.primary.line(),
            self.secondary.line()
        )
    }
}

fn trace_text(out: &mut String, trace: &TransformTrace) {
    writeln!(out, "kind: {}", trace.kind).unwrap();
    writeln!(out, "status: {}", status_name(trace.status)).unwrap();
    writeln!(out, "interchanges: {}", pairs(&trace.applied)).unwrap();
    if !trace.per_step.is_empty() {
        writeln!(out, "per-step Δf: {}", join(&trace.per_step)).unwrap();
    }
    writeln!(out, "f: {} -> {}", trace.f_before, trace.f_after).unwrap();
    writeln!(out, "Δf = {}", trace.total_delta()).unwrap();
}

#[derive(Serialize)]
pub struct TransformReport {
    pub input: Arrangement,
    pub output: Arrangement,
    pub trace: TransformTrace,
}

impl Report for TransformReport {
    fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "input:  {}", self.input.line()).unwrap();
        writeln!(out, "output: {}", self.output.line()).unwrap();
        trace_text(&mut out, &self.trace);
        out
    }
}

#[derive(Serialize)]
pub struct SearchOutput {
    /// Seed of the random start; absent when the file fixed the order.
    pub seed: Option<u64>,
    pub report: SearchReport,
    pub end_order: String,
}

impl Report for SearchOutput {
    fn text(&self) -> String {
        let r = &self.report;
        let mut out = String::new();
        writeln!(out, "strategy: {:?}", r.strategy).unwrap();
        if let Some(seed) = self.seed {
            writeln!(out, "seed: {seed}").unwrap();
        }
        writeln!(out, "start: {}", r.start).unwrap();
        for (k, step) in r.steps.iter().enumerate() {
            writeln!(
                out,
                "step {}: {} {}  Δf = {}",
                k + 1,
                step.kind,
                pairs(&step.applied),
                step.total_delta()
            )
            .unwrap();
        }
        writeln!(out, "end: {}  ({})", r.end, self.end_order).unwrap();
        writeln!(out, "f trajectory: {}", join(&r.f_trajectory)).unwrap();
        writeln!(out, "converged: {}", r.converged).unwrap();
        writeln!(out, "reached closed form: {}", r.reached_closed_form).unwrap();
        out
    }
}

#[derive(Serialize)]
pub struct OracleOutput {
    pub result: OracleResult,
    pub orders: Vec<String>,
}

impl Report for OracleOutput {
    fn text(&self) -> String {
        let r = &self.result;
        let mut out = String::new();
        writeln!(out, "objective: {:?}", r.objective).unwrap();
        writeln!(out, "arrangements explored: {}", r.explored).unwrap();
        writeln!(out, "best f = {}", r.best_value).unwrap();
        if let Some(num) = r.best_numerator {
            writeln!(out, "best n^2 f = {num}").unwrap();
        }
        writeln!(out, "optima ({}):", r.optima.len()).unwrap();
        for (seq, order) in r.optima.iter().zip(&self.orders) {
            writeln!(out, "  {seq}  ({order})").unwrap();
        }
        for w in &r.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
        out
    }
}

#[derive(Serialize)]
pub struct ScreenReport {
    pub candidates: usize,
    pub survivors: Vec<Arrangement>,
}

impl Report for ScreenReport {
    fn text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{} of {} candidates survive",
            self.survivors.len(),
            self.candidates
        )
        .unwrap();
        for a in &self.survivors {
            writeln!(out, "  {}", a.line()).unwrap();
        }
        out
    }
}

impl Report for VerifyReport {
    fn text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "sequence: {}", self.sequence).unwrap();
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            if c.detail.is_empty() {
                writeln!(out, "{tag} {}", c.name).unwrap();
            } else {
                writeln!(out, "{tag} {}: {}", c.name, c.detail).unwrap();
            }
        }
        writeln!(
            out,
            "{}",
            if self.all_passed() {
                "all checks passed"
            } else {
                "some checks failed"
            }
        )
        .unwrap();
        out
    }
}
