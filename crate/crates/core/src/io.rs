//! Text and JSON formats for weighted tournaments and solver results.
//!
//! A tournament file is
//!
//! ```text
//! 3
//! 1 1 7/3
//! -10
//! 0-1
//! 10-
//! ```
//!
//! the order, then the weights as reduced rationals separated by single
//! spaces, then one row per vertex where column `v` of row `u` is `1` if
//! `u -> v`, `0` if `v -> u` and `-` on the diagonal. The final newline may
//! be omitted; nothing may follow the last row.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::approx::{FvsResult, RoundingStep, Stage};
use crate::tournament::{Rational, Tournament, VertexSet, Weights};

/// Malformed input, with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub reason: String,
}

fn fail<T>(line: usize, column: usize, reason: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        column,
        reason: reason.into(),
    })
}

fn is_plain_number(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) && (s == "0" || !s.starts_with('0'))
}

/// Parses `p` or `p/q` in lowest terms with `q > 1`; the error is a reason.
pub fn parse_rational(token: &str) -> Result<Rational, String> {
    let (sign, body) = match token.strip_prefix('-') {
        Some(rest) => (-1i32, rest),
        None => (1i32, token),
    };
    let (numer, denom) = match body.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (body, None),
    };
    if !is_plain_number(numer) || denom.is_some_and(|q| !is_plain_number(q)) {
        return Err(format!("malformed rational {token:?}"));
    }
    let p: BigInt = numer.parse().expect("digits");
    let p = p * sign;
    let Some(q) = denom else {
        if sign < 0 && p.is_zero() {
            return Err(format!("malformed rational {token:?}"));
        }
        return Ok(Rational::from_integer(p));
    };
    let q: BigInt = q.parse().expect("digits");
    if q.is_zero() {
        return Err(format!("zero denominator in {token:?}"));
    }
    if q.is_one() {
        return Err(format!("denominator 1 in {token:?}; write the integer"));
    }
    let value = Rational::new(p.clone(), q.clone());
    if value.numer() != &p || value.denom() != &q {
        return Err(format!("{token:?} is not in lowest terms"));
    }
    Ok(value)
}

fn parse_order(line: &str) -> Result<usize, ParseError> {
    if !is_plain_number(line) {
        return fail(1, 1, format!("expected the order, found {line:?}"));
    }
    line.parse().or_else(|_| fail(1, 1, "order out of range"))
}

fn parse_weights(line: &str, n: usize, line_no: usize) -> Result<Weights, ParseError> {
    let mut values = Vec::with_capacity(n);
    if !line.is_empty() {
        let mut column = 1;
        for token in line.split(' ') {
            if token.is_empty() {
                return fail(line_no, column, "weights must be separated by single spaces");
            }
            let value = parse_rational(token).or_else(|reason| fail(line_no, column, reason))?;
            if value.is_negative() {
                return fail(line_no, column, format!("negative weight {value}"));
            }
            values.push(value);
            column += token.len() + 1;
        }
    }
    if values.len() != n {
        return fail(line_no, 1, format!("{} weights given for {n} vertices", values.len()));
    }
    Ok(Weights::new(values).expect("checked non-negative"))
}

/// Checks rows of `-`/`0`/`1` and builds the arc table. `first_line` is the
/// line number of row 0.
fn parse_rows(rows: &[&str], first_line: usize) -> Result<Tournament, ParseError> {
    let n = rows.len();
    let mut arcs = vec![false; n * n];
    for (u, row) in rows.iter().enumerate() {
        let line = first_line + u;
        let chars: Vec<char> = row.chars().collect();
        if chars.len() != n {
            return fail(line, 1, format!("row has {} entries, expected {n}", chars.len()));
        }
        for (v, &c) in chars.iter().enumerate() {
            let column = v + 1;
            match (u == v, c) {
                (true, '-') => {}
                (true, _) => return fail(line, column, format!("diagonal entry must be '-', found {c:?}")),
                (false, '0') | (false, '1') => arcs[u * n + v] = c == '1',
                (false, _) => return fail(line, column, format!("expected '0' or '1', found {c:?}")),
            }
            if v < u && arcs[u * n + v] == arcs[v * n + u] {
                return fail(
                    line,
                    column,
                    format!("entries ({u}, {v}) and ({v}, {u}) must differ"),
                );
            }
        }
    }
    Ok(Tournament::from_arcs(n, arcs).expect("validated"))
}

pub fn parse_tournament(text: &str) -> Result<(Tournament, Weights), ParseError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let lines: Vec<&str> = body.split('\n').collect();
    let n = parse_order(lines[0])?;
    if lines.len() < 2 {
        return fail(2, 1, "missing weight line");
    }
    let weights = parse_weights(lines[1], n, 2)?;
    let rows = &lines[2..];
    if rows.len() < n {
        return fail(lines.len() + 1, 1, format!("expected {n} rows, found {}", rows.len()));
    }
    if rows.len() > n {
        return fail(n + 3, 1, "unexpected content after the last row");
    }
    Ok((parse_rows(rows, 3)?, weights))
}

/// Inverse of [`parse_tournament`], ending in a newline.
pub fn write_tournament(t: &Tournament, w: &Weights) -> String {
    let mut out = format!("{}\n", t.n());
    let weights: Vec<String> = w.as_slice().iter().map(ToString::to_string).collect();
    out.push_str(&weights.join(" "));
    out.push('\n');
    for u in 0..t.n() {
        out.push_str(&t.row_string(u));
        out.push('\n');
    }
    out
}

/// The JSON form of a tournament file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TournamentJson {
    pub n: usize,
    pub weights: Vec<String>,
    pub rows: Vec<String>,
}

pub fn tournament_to_json(t: &Tournament, w: &Weights) -> String {
    let doc = TournamentJson {
        n: t.n(),
        weights: w.as_slice().iter().map(ToString::to_string).collect(),
        rows: (0..t.n()).map(|u| t.row_string(u)).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Positions in errors past the JSON syntax refer to the equivalent text
/// file (weights on line 2, row `u` on line `u + 3`).
pub fn tournament_from_json(text: &str) -> Result<(Tournament, Weights), ParseError> {
    let doc: TournamentJson = serde_json::from_str(text).or_else(|e| fail(e.line(), e.column(), e.to_string()))?;
    if doc.rows.len() != doc.n {
        return fail(3, 1, format!("expected {} rows, found {}", doc.n, doc.rows.len()));
    }
    let weights = parse_weights(&doc.weights.join(" "), doc.n, 2)?;
    let rows: Vec<&str> = doc.rows.iter().map(String::as_str).collect();
    Ok((parse_rows(&rows, 3)?, weights))
}

/// Reads either format, choosing JSON when the first non-blank byte is `{`.
pub fn parse_any(text: &str) -> Result<(Tournament, Weights), ParseError> {
    if text.trim_start().starts_with('{') {
        tournament_from_json(text)
    } else {
        parse_tournament(text)
    }
}

/// One rounding iteration with rationals as strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub iteration: usize,
    pub lp_value: String,
    pub rounded: VertexSet,
    pub pruned: VertexSet,
    pub residual_lp_value: String,
    pub accumulated_weight: String,
}

impl From<&RoundingStep> for TraceEntry {
    fn from(step: &RoundingStep) -> Self {
        TraceEntry {
            iteration: step.iteration,
            lp_value: step.lp_value.to_string(),
            rounded: step.rounded.clone(),
            pruned: step.pruned.clone(),
            residual_lp_value: step.residual_lp_value.to_string(),
            accumulated_weight: step.accumulated_weight.to_string(),
        }
    }
}

/// Solver output. `oracle_optimum` and `ratio` are filled by audits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub algorithm: String,
    pub n: usize,
    pub fvs: VertexSet,
    pub weight: String,
    pub stage_tags: BTreeMap<usize, Stage>,
    pub lp_trace: Vec<TraceEntry>,
    pub stall_restarts: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle_optimum: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ratio: Option<String>,
}

impl ResultDocument {
    pub fn new(algorithm: &str, n: usize, result: &FvsResult) -> Self {
        ResultDocument {
            algorithm: algorithm.to_string(),
            n,
            fvs: result.fvs.clone(),
            weight: result.weight.to_string(),
            stage_tags: result.stage_tags.clone(),
            lp_trace: result.trace.iter().map(TraceEntry::from).collect(),
            stall_restarts: result.stall_restarts,
            oracle_optimum: None,
            ratio: None,
        }
    }

    /// Records the optimum; the ratio is left out when it is undefined.
    pub fn with_optimum(mut self, optimum: &Rational) -> Self {
        let weight = parse_rational(&self.weight).expect("written by this module");
        self.ratio = crate::oracle::approximation_ratio(&weight, optimum).map(|r| r.to_string());
        self.oracle_optimum = Some(optimum.to_string());
        self
    }

    /// Whether `weight` is the sum of the listed vertices' weights.
    pub fn is_consistent(&self, w: &Weights) -> bool {
        self.fvs.check_range(w.len()).is_ok()
            && parse_rational(&self.weight).is_ok_and(|value| value == w.sum(&self.fvs))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        serde_json::from_str(text).or_else(|e| fail(e.line(), e.column(), e.to_string()))
    }

    /// `key: value` lines, one rounding iteration per `lp_trace` line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let tags: Vec<String> = self.stage_tags.iter().map(|(v, s)| format!("{v}={s}")).collect();
        writeln!(out, "algorithm: {}", self.algorithm).unwrap();
        writeln!(out, "n: {}", self.n).unwrap();
        writeln!(out, "fvs: {}", self.fvs).unwrap();
        writeln!(out, "weight: {}", self.weight).unwrap();
        writeln!(out, "stage_tags: {}", tags.join(" ")).unwrap();
        for e in &self.lp_trace {
            writeln!(
                out,
                "lp_trace: iteration={} lp_value={} rounded={} pruned={} residual_lp_value={} accumulated_weight={}",
                e.iteration, e.lp_value, e.rounded, e.pruned, e.residual_lp_value, e.accumulated_weight
            )
            .unwrap();
        }
        writeln!(out, "stall_restarts: {}", self.stall_restarts).unwrap();
        if let Some(opt) = &self.oracle_optimum {
            writeln!(out, "oracle_optimum: {opt}").unwrap();
        }
        if let Some(ratio) = &self.ratio {
            writeln!(out, "ratio: {ratio}").unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{random_tournament, random_weights};
    use crate::tournament::{integer, rational};
    use proptest::prelude::*;

    const THREE_CYCLE: &str = "3\n1 1 1\n-10\n0-1\n10-\n";

    #[test]
    fn three_cycle_fixture() {
        let (t, w) = parse_tournament(THREE_CYCLE).unwrap();
        assert_eq!(t.n(), 3);
        assert!(t.has_arc(0, 1) && t.has_arc(1, 2) && t.has_arc(2, 0));
        assert_eq!(w, Weights::unit(3));
        assert_eq!(write_tournament(&t, &w), THREE_CYCLE);
        assert_eq!(parse_tournament(THREE_CYCLE.trim_end()).unwrap(), (t, w));
    }

    #[test]
    fn rationals() {
        let (_, w) = parse_tournament("2\n7/3 0\n-1\n0-\n").unwrap();
        assert_eq!(w.get(0), &rational(7, 3));
        assert_eq!(w.get(1), &integer(0));
        assert_eq!(w.get(0).to_string(), "7/3");
        assert_eq!(parse_rational("12"), Ok(integer(12)));
        for bad in ["2/4", "3/1", "1/0", "01", "1/", "/2", "+1", "1.5", "", "-0", "a"] {
            assert!(parse_rational(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn positioned_errors() {
        let at = |text: &str| {
            let e = parse_tournament(text).unwrap_err();
            (e.line, e.column)
        };
        assert_eq!(at("3\n1 1 1\n-11\n0-1\n10-\n"), (5, 1));
        assert_eq!(at("3\n1 1 -1\n-10\n0-1\n10-\n"), (2, 5));
        assert_eq!(at("3\n1 1\n-10\n0-1\n10-\n"), (2, 1));
        assert_eq!(at("3\n1  1 1\n-10\n0-1\n10-\n"), (2, 3));
        assert_eq!(at("3\n1 2/4 1\n-10\n0-1\n10-\n"), (2, 3));
        assert_eq!(at("3\n1 1 1\n010\n0-1\n10-\n"), (3, 1));
        assert_eq!(at("3\n1 1 1\n-1x\n0-1\n10-\n"), (3, 3));
        assert_eq!(at("3\n1 1 1\n-10\n0-1\n"), (5, 1));
        assert_eq!(at("3\n1 1 1\n-10\n0-1\n10-\n\n"), (6, 1));
        assert_eq!(at("x\n"), (1, 1));
        let e = parse_tournament("3\n1 1 -1\n-10\n0-1\n10-\n").unwrap_err();
        assert!(e.reason.contains("negative"), "{e}");
    }

    #[test]
    fn empty_tournament() {
        let text = write_tournament(&Tournament::transitive(0), &Weights::unit(0));
        assert_eq!(text, "0\n\n");
        assert_eq!(parse_tournament(&text).unwrap().0.n(), 0);
    }

    #[test]
    fn json_matches_text() {
        let t = random_tournament(6, 3);
        let w = random_weights(6, 9, 3);
        let json = tournament_to_json(&t, &w);
        assert_eq!(parse_any(&json).unwrap(), (t.clone(), w.clone()));
        assert_eq!(parse_any(&write_tournament(&t, &w)).unwrap(), (t, w));
        assert!(tournament_from_json(r#"{"n": 1, "weights": ["1"], "rows": ["1"]}"#).is_err());
        assert!(tournament_from_json(r#"{"n": 1, "weights": ["1"], "rows": ["-"], "x": 0}"#).is_err());
    }

    #[test]
    fn result_document() {
        let t = Tournament::from_fn(3, |u, v| (u, v) != (0, 2));
        let w = Weights::unit(3);
        let r = crate::approx::seven_thirds_fvs(&t, &w).unwrap();
        let doc = ResultDocument::new("seven-thirds", 3, &r).with_optimum(&integer(1));
        assert!(doc.is_consistent(&w));
        assert_eq!(ResultDocument::from_json(&doc.to_json()).unwrap(), doc);
        assert_eq!(doc.ratio.as_deref(), Some(r.weight.to_string().as_str()));
        let text = doc.to_text();
        assert!(text.starts_with("algorithm: seven-thirds\nn: 3\n"));
        assert!(text.contains(&format!("weight: {}\n", r.weight)));
        let mut wrong = doc.clone();
        wrong.weight = "5".into();
        assert!(!wrong.is_consistent(&w));
    }

    fn weighted_tournament() -> impl Strategy<Value = (Tournament, Weights)> {
        (0usize..9).prop_flat_map(|n| {
            (
                prop::collection::vec(any::<bool>(), n * n),
                prop::collection::vec((0i64..50, 1i64..12), n),
            )
                .prop_map(move |(bits, ws)| {
                    let t = Tournament::from_fn(n, |u, v| bits[u * n + v]);
                    let w = Weights::new(ws.into_iter().map(|(p, q)| rational(p, q)).collect()).unwrap();
                    (t, w)
                })
        })
    }

    proptest! {
        #[test]
        fn text_round_trip((t, w) in weighted_tournament()) {
            let text = write_tournament(&t, &w);
            let parsed = parse_tournament(&text).unwrap();
            prop_assert_eq!(&parsed, &(t.clone(), w.clone()));
            prop_assert_eq!(write_tournament(&parsed.0, &parsed.1), text);
            prop_assert_eq!(tournament_from_json(&tournament_to_json(&t, &w)).unwrap(), (t, w));
        }
    }
}
