//! Instance files: one number per line, `#` comments, and an optional
//! `order: r1,...,rn` line of 1-based ranks into the ascending set.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use varseq::{NumberSet, Sequence};

/// A malformed input file, reported with its 1-based line number.
#[derive(Debug)]
pub struct ParseError {
    pub path: String,
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "{}:{}: {}", self.path, line, self.message),
            None => write!(f, "{}: {}", self.path, self.message),
        }
    }
}

impl std::error::Error for ParseError {}

pub struct Instance {
    pub set: Arc<NumberSet>,
    /// The sequence selected by the order line, if present.
    pub order: Option<Sequence>,
    listed: Vec<f64>,
}

impl Instance {
    /// The order line's sequence, or the values in the order they were listed.
    pub fn sequence(&self) -> Sequence {
        match &self.order {
            Some(seq) => seq.clone(),
            None => Sequence::from_entries(self.set.clone(), &self.listed)
                .expect("listed values form the set"),
        }
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Parses the rank list of an order spec. The `order:` prefix is optional.
pub fn parse_ranks(spec: &str) -> Result<Vec<usize>, String> {
    let body = spec.trim();
    let body = body.strip_prefix("order:").unwrap_or(body).trim();
    if body.is_empty() {
        return Err("empty order spec".into());
    }
    body.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<usize>()
                .map_err(|_| format!("'{t}' is not a rank (expected a positive integer)"))
        })
        .collect()
}

pub fn read_instance(path: &Path) -> Result<Instance, ParseError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| ParseError {
        path: shown.clone(),
        line: None,
        message: e.to_string(),
    })?;
    parse_instance(&text, &shown)
}

pub fn parse_instance(text: &str, path: &str) -> Result<Instance, ParseError> {
    let fail = |line: Option<usize>, message: String| ParseError {
        path: path.to_string(),
        line,
        message,
    };
    let mut ints = Vec::new();
    let mut reals = Vec::new();
    let mut all_integral = true;
    let mut order: Option<(usize, Vec<usize>)> = None;

    for (k, raw) in text.lines().enumerate() {
        let lineno = k + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if line.starts_with("order:") {
            if order.is_some() {
                return Err(fail(Some(lineno), "duplicate order line".into()));
            }
            let ranks = parse_ranks(line).map_err(|m| fail(Some(lineno), m))?;
            order = Some((lineno, ranks));
            continue;
        }
        if let Ok(v) = line.parse::<i64>() {
            if v <= 0 {
                return Err(fail(Some(lineno), format!("{v} is not positive")));
            }
            ints.push(v);
            reals.push(v as f64);
            continue;
        }
        match line.parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 => {
                all_integral = false;
                reals.push(v);
            }
            Ok(v) => {
                return Err(fail(
                    Some(lineno),
                    format!("{v} is not a positive finite number"),
                ))
            }
            Err(_) => {
                return Err(fail(
                    Some(lineno),
                    format!("cannot parse '{line}' as a number"),
                ))
            }
        }
    }

    let set = if all_integral {
        NumberSet::from_integers(&ints)
    } else {
        NumberSet::new(reals.clone())
    }
    .map_err(|e| fail(None, e.to_string()))?;
    let set = Arc::new(set);
    let listed = reals;

    let order = match order {
        None => None,
        Some((lineno, ranks)) => Some(
            Sequence::from_one_based_ranks(set.clone(), &ranks)
                .map_err(|e| fail(Some(lineno), e.to_string()))?,
        ),
    };
    Ok(Instance { set, order, listed })
}

/// Reads a candidates file: one order spec per non-comment line.
pub fn read_candidates(path: &Path, set: &Arc<NumberSet>) -> Result<Vec<Sequence>, ParseError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| ParseError {
        path: shown.clone(),
        line: None,
        message: e.to_string(),
    })?;
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let fail = |message: String| ParseError {
            path: shown.clone(),
            line: Some(k + 1),
            message,
        };
        let ranks = parse_ranks(line).map_err(fail)?;
        let seq =
            Sequence::from_one_based_ranks(set.clone(), &ranks).map_err(|e| fail(e.to_string()))?;
        out.push(seq);
    }
    Ok(out)
}
