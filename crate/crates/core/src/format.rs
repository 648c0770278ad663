//! Text formats: function files, distribution files, tree files and
//! `key<TAB>value` reports. Rationals are always written `num/den`.
//!
//! Function file (lines starting with `#` are ignored):
//!
//! ```text
//! n k
//! <output labels, space separated>
//! <kⁿ label indices, space separated, coordinate 1 most significant>
//! ```
//!
//! Distribution file: `n` lines, line `j` holding the `k` probabilities of
//! coordinate `j` as `num/den`.
//!
//! Tree file: pre-order, one node per token pair, `L <label>` or
//! `Q <coordinate>` (1-based) followed by its `k` children.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::bounds::BoundReport;
use crate::distribution::ProductDistribution;
use crate::elimination::EliminationTranscript;
use crate::error::{Error, Result};
use crate::function::FiniteFunction;
use crate::limits::Limits;
use crate::measures::RatioValue;
use crate::scalar::format_rat;
use crate::tree::DecisionTree;
use crate::Rat;

fn parse_error(file: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        file: file.to_string(),
        line,
        msg: msg.into(),
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_numbers<T: FromStr>(file: &str, line: usize, text: &str, what: &str) -> Result<Vec<T>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<T>()
                .map_err(|_| parse_error(file, line, format!("invalid {what} '{tok}'")))
        })
        .collect()
}

/// Parses `num/den` (or a bare integer) as an exact rational.
pub fn parse_rational(text: &str) -> std::result::Result<Rat, String> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| format!("invalid rational '{text}'"))?;
    let d: BigInt = d.trim().parse().map_err(|_| format!("invalid rational '{text}'"))?;
    if d == BigInt::from(0) {
        return Err(format!("zero denominator in '{text}'"));
    }
    Ok(Rat::new(n, d))
}

pub fn parse_function(text: &str, file: &str, limits: &Limits) -> Result<FiniteFunction> {
    let mut lines = content_lines(text);
    let (l1, header) = lines
        .next()
        .ok_or_else(|| parse_error(file, 1, "missing 'n k' header"))?;
    let nk: Vec<usize> = parse_numbers(file, l1, header, "size")?;
    let [n, k] = nk[..] else {
        return Err(parse_error(file, l1, "header must be 'n k'"));
    };
    let (l2, labels) = lines
        .next()
        .ok_or_else(|| parse_error(file, l1 + 1, "missing output labels"))?;
    let labels: Vec<i64> = parse_numbers(file, l2, labels, "label")?;
    let (l3, table) = lines.next().ok_or_else(|| parse_error(file, l2 + 1, "missing table"))?;
    let table: Vec<usize> = parse_numbers(file, l3, table, "label index")?;
    if let Some((l, _)) = lines.next() {
        return Err(parse_error(file, l, "unexpected content after table"));
    }
    FiniteFunction::with_limits(n, k, labels, table, limits).map_err(|e| match e {
        Error::Shape(msg) | Error::Domain(msg) => parse_error(file, l3, msg),
        other => other,
    })
}

pub fn write_function(f: &FiniteFunction) -> String {
    let join = |v: Vec<String>| v.join(" ");
    format!(
        "{} {}\n{}\n{}\n",
        f.arity(),
        f.alphabet(),
        join(f.labels().iter().map(i64::to_string).collect()),
        join(f.table().iter().map(usize::to_string).collect())
    )
}

pub fn parse_distribution(text: &str, file: &str) -> Result<ProductDistribution<Rat>> {
    let mut marginals = Vec::new();
    let mut last = 1;
    for (l, line) in content_lines(text) {
        let row = line
            .split_whitespace()
            .map(|tok| parse_rational(tok).map_err(|m| parse_error(file, l, m)))
            .collect::<Result<Vec<_>>>()?;
        marginals.push(row);
        last = l;
    }
    ProductDistribution::new(marginals).map_err(|e| match e {
        Error::Shape(msg) | Error::Domain(msg) => parse_error(file, last, msg),
        other => other,
    })
}

pub fn write_distribution(mu: &ProductDistribution<Rat>) -> String {
    let mut out = String::new();
    for m in mu.marginals() {
        let row: Vec<String> = m.iter().map(format_rat).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a pre-order tree for alphabet size `k`. Structural validation
/// (read-once, ranges) is left to [`DecisionTree::validate`].
pub fn parse_tree(text: &str, file: &str, alphabet: usize) -> Result<DecisionTree> {
    let tokens: Vec<(usize, &str)> = content_lines(text)
        .flat_map(|(l, line)| line.split_whitespace().map(move |t| (l, t)))
        .collect();
    let mut pos = 0;
    let tree = parse_node(&tokens, &mut pos, file, alphabet, 0)?;
    if let Some((l, tok)) = tokens.get(pos) {
        return Err(parse_error(
            file,
            *l,
            format!("unexpected token '{tok}' after complete tree"),
        ));
    }
    Ok(tree)
}

const MAX_TREE_NESTING: usize = 4096;

fn parse_node(
    tokens: &[(usize, &str)],
    pos: &mut usize,
    file: &str,
    alphabet: usize,
    nesting: usize,
) -> Result<DecisionTree> {
    let last_line = tokens.last().map_or(1, |t| t.0);
    let mut next = |what: &str| -> Result<(usize, String)> {
        let t = tokens
            .get(*pos)
            .ok_or_else(|| parse_error(file, last_line, format!("tree ends early, expected {what}")))?;
        *pos += 1;
        Ok((t.0, t.1.to_string()))
    };
    let (l, kind) = next("'L' or 'Q'")?;
    if nesting > MAX_TREE_NESTING {
        return Err(parse_error(file, l, "tree nesting too deep"));
    }
    match kind.as_str() {
        "L" => {
            let (l, v) = next("a label")?;
            let z = v
                .parse()
                .map_err(|_| parse_error(file, l, format!("invalid label '{v}'")))?;
            Ok(DecisionTree::Leaf(z))
        }
        "Q" => {
            let (l, v) = next("a coordinate")?;
            let c: usize = v
                .parse()
                .ok()
                .filter(|&c| c >= 1)
                .ok_or_else(|| parse_error(file, l, format!("invalid coordinate '{v}' (1-based)")))?;
            let children = (0..alphabet)
                .map(|_| parse_node(tokens, pos, file, alphabet, nesting + 1))
                .collect::<Result<Vec<_>>>()?;
            Ok(DecisionTree::query(c - 1, children))
        }
        other => Err(parse_error(file, l, format!("expected 'L' or 'Q', found '{other}'"))),
    }
}

pub fn write_tree(t: &DecisionTree) -> String {
    fn go(t: &DecisionTree, out: &mut String) {
        match t {
            DecisionTree::Leaf(z) => {
                let _ = writeln!(out, "L {z}");
            }
            DecisionTree::Query { coordinate, children } => {
                let _ = writeln!(out, "Q {}", coordinate + 1);
                for c in children {
                    go(c, out);
                }
            }
        }
    }
    let mut out = String::new();
    go(t, &mut out);
    out
}

/// An ordered list of `key<TAB>value` lines.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn push_rat(&mut self, key: impl Into<String>, value: &Rat) -> &mut Self {
        self.push(key, format_rat(value))
    }

    pub fn extend(&mut self, other: Report) -> &mut Self {
        self.entries.extend(other.entries);
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k}\t{v}");
        }
        out
    }
}

pub fn format_ratio(r: &RatioValue<Rat>) -> String {
    match r {
        RatioValue::Finite(v) => format_rat(v),
        RatioValue::Infinite => "inf".to_string(),
    }
}

pub fn bound_report(r: &BoundReport<Rat>) -> Report {
    let mut out = Report::new();
    out.push_rat("plurality_error", &r.plurality_error)
        .push_rat("inf_max", &r.inf_max)
        .push("inf_argmax", r.inf_argmax + 1)
        .push_rat("epsilon", &r.epsilon)
        .push_rat("bound", &r.bound);
    if let Some((var, ratio)) = &r.variance_ratio {
        out.push_rat("variance", var)
            .push("variance_ratio", format_ratio(ratio));
    }
    out
}

pub fn transcript_report(tr: &EliminationTranscript<Rat>) -> Report {
    let mut out = Report::new();
    out.push_rat("epsilon", &tr.epsilon)
        .push("initial_depth", tr.initial_depth)
        .push_rat("initial_error", &tr.initial_error);
    for (n, s) in tr.steps.iter().enumerate() {
        out.push("step", n + 1)
            .push("eliminated_coordinate", s.eliminated_coordinate + 1)
            .push_rat("influence_of_coordinate", &s.influence_of_coordinate)
            .push_rat("error_before", &s.error_before)
            .push_rat("error_randomized", &s.error_randomized)
            .push("chosen_symbol", s.chosen_symbol)
            .push_rat("error_after", &s.error_after)
            .push("depth_after", s.depth_after);
    }
    let final_label = match &tr.final_tree {
        DecisionTree::Leaf(z) => z.to_string(),
        DecisionTree::Query { .. } => unreachable!("elimination ends at a leaf"),
    };
    out.push("steps", tr.steps.len())
        .push("final_label", final_label)
        .push_rat("final_error", &tr.final_error)
        .push_rat("plurality_error", &tr.plurality_error)
        .push_rat("inf_max", &tr.inf_max)
        .push_rat("influence_sum", &tr.influence_sum())
        .push_rat("implied_lower_bound", &tr.implied_lower_bound);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{standard, tribes, Standard};
    use crate::scalar::rat;

    #[test]
    fn function_file_round_trip() {
        let f = tribes(2, 2).unwrap();
        let text = write_function(&f);
        assert_eq!(text, "4 2\n0 1\n0 0 0 1 0 0 0 1 0 0 0 1 1 1 1 1\n");
        let back = parse_function(&text, "t", &Limits::default()).unwrap();
        assert_eq!(back, f);
        assert_eq!(write_function(&back), text);
    }

    #[test]
    fn function_file_comments_and_errors() {
        let text = "# AND\n2 2\n# labels\n0 1\n0 0 0 1\n";
        let f = parse_function(text, "and.fn", &Limits::default()).unwrap();
        assert_eq!(f, standard(Standard::And, 2).unwrap());
        let err = parse_function("2 2\n0 1\n0 0 1\n", "bad.fn", &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { ref file, line: 3, .. } if file == "bad.fn"));
        let err = parse_function("2 2\n0 x\n0 0 0 1\n", "bad.fn", &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_function("2\n", "bad.fn", &Limits::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let big = parse_function("30 2\n0 1\n0\n", "big.fn", &Limits::default()).unwrap_err();
        assert!(matches!(big, Error::Capacity { .. }));
    }

    #[test]
    fn distribution_file() {
        let text = "1/4 3/4\n1/2 1/2\n";
        let mu = parse_distribution(text, "d").unwrap();
        assert_eq!(mu.marginal(0), &[rat(1, 4), rat(3, 4)]);
        assert_eq!(write_distribution(&mu), text);
        let err = parse_distribution("1/4 1/4\n", "d").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_distribution("1/2 1/2\n1/0 1\n", "d").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn tree_file() {
        let text = "Q 1\nL 0\nQ 2\nL 0\nL 1\n";
        let t = parse_tree(text, "t", 2).unwrap();
        assert_eq!(
            t,
            DecisionTree::query(
                0,
                vec![
                    DecisionTree::Leaf(0),
                    DecisionTree::query(1, vec![DecisionTree::Leaf(0), DecisionTree::Leaf(1)])
                ]
            )
        );
        assert_eq!(write_tree(&t), text);
        assert_eq!(parse_tree("Q 1 L 0 Q 2 L 0 L 1", "t", 2).unwrap(), t);
        assert!(matches!(parse_tree("Q 1\nL 0\n", "t", 2), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_tree("L 0\nL 1\n", "t", 2),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_tree("Q 0\nL 0\nL 1\n", "t", 2),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn report_rendering() {
        let mut r = Report::new();
        r.push("n", 2).push_rat("inf 1", &rat(1, 4));
        assert_eq!(r.render(), "n\t2\ninf 1\t1/4\n");
        assert_eq!(r.get("inf 1"), Some("1/4"));
    }
}
