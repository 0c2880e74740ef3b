//! The line-based algebra file format.
//!
//! `#` starts a comment line and blank lines are skipped; the directives are
//!
//! ```text
//! name <identifier>
//! dim <n>
//! weights <w_1> … <w_n>
//! bracket <i> <j> <k> <c>
//! ```
//!
//! with rationals written `a/b` or as plain integers, bracket indices 1-based
//! and ordered i < j, and each of name/dim/weights appearing exactly once.
//! Parsing validates the resulting algebra; a failed validation is an error.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use lptorsion_core::algebra_core::AlgebraError;
use lptorsion_core::{GradedLieAlgebra, Rational, ValidationReport};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{message}")]
    Semantic { message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("algebra '{name}' fails validation:\n{report}")]
    Validation { name: String, report: ValidationReport },
}

fn syntax(line: usize, message: impl Into<String>) -> FileError {
    FileError::Syntax { line, message: message.into() }
}

fn parse_rational(line: usize, token: &str) -> Result<Rational, FileError> {
    Rational::from_str(token)
        .map_err(|_| syntax(line, format!("cannot parse '{token}' as a rational a/b")))
}

fn parse_index(line: usize, token: &str) -> Result<usize, FileError> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("cannot parse '{token}' as an index")))
}

/// Parses the file format and validates the algebra it describes.
pub fn parse_algebra(text: &str) -> Result<GradedLieAlgebra, FileError> {
    let mut name: Option<String> = None;
    let mut dim: Option<usize> = None;
    let mut weights: Option<Vec<Rational>> = None;
    let mut brackets: Vec<(usize, usize, usize, Rational)> = Vec::new();
    let mut seen_keys: BTreeSet<(usize, usize, usize)> = BTreeSet::new();

    for (offset, raw) in text.lines().enumerate() {
        let line = offset + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens[0] {
            "name" => {
                if name.is_some() {
                    return Err(syntax(line, "duplicate 'name' directive"));
                }
                let [_, value] = tokens[..] else {
                    return Err(syntax(line, "'name' takes exactly one identifier"));
                };
                name = Some(value.to_string());
            }
            "dim" => {
                if dim.is_some() {
                    return Err(syntax(line, "duplicate 'dim' directive"));
                }
                let [_, value] = tokens[..] else {
                    return Err(syntax(line, "'dim' takes exactly one integer"));
                };
                dim = Some(parse_index(line, value)?);
            }
            "weights" => {
                if weights.is_some() {
                    return Err(syntax(line, "duplicate 'weights' directive"));
                }
                let values = tokens[1..]
                    .iter()
                    .map(|token| parse_rational(line, token))
                    .collect::<Result<Vec<_>, _>>()?;
                weights = Some(values);
            }
            "bracket" => {
                let [_, i, j, k, c] = tokens[..] else {
                    return Err(syntax(line, "'bracket' takes exactly four values: i j k c"));
                };
                let i = parse_index(line, i)?;
                let j = parse_index(line, j)?;
                let k = parse_index(line, k)?;
                let c = parse_rational(line, c)?;
                if i >= j {
                    return Err(syntax(
                        line,
                        format!("'bracket' requires i < j (got i = {i}, j = {j})"),
                    ));
                }
                if !seen_keys.insert((i, j, k)) {
                    return Err(syntax(line, format!("duplicate bracket key ({i}, {j}, {k})")));
                }
                brackets.push((i, j, k, c));
            }
            other => {
                return Err(syntax(
                    line,
                    format!("unknown directive '{other}'; expected name, dim, weights or bracket"),
                ));
            }
        }
    }

    let name = name.ok_or(FileError::Semantic { message: "missing 'name' directive".into() })?;
    let dim = dim.ok_or(FileError::Semantic { message: "missing 'dim' directive".into() })?;
    let weights =
        weights.ok_or(FileError::Semantic { message: "missing 'weights' directive".into() })?;
    if weights.len() != dim {
        return Err(FileError::Semantic {
            message: format!(
                "'weights' lists {} value(s) but 'dim' is {dim}",
                weights.len()
            ),
        });
    }

    let alg = GradedLieAlgebra::new(name, weights, brackets)?;
    let report = alg.validate();
    if !report.is_valid() {
        return Err(FileError::Validation { name: alg.name().to_string(), report });
    }
    Ok(alg)
}

/// Canonical renderer; `parse_algebra(render_algebra(alg))` reproduces `alg`.
pub fn render_algebra(alg: &GradedLieAlgebra) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name {}", alg.name());
    let _ = writeln!(out, "dim {}", alg.dim());
    let weights: Vec<String> = alg.weights().iter().map(|w| w.to_string()).collect();
    let _ = writeln!(out, "weights {}", weights.join(" "));
    for (i, j, k, c) in alg.bracket_entries() {
        let _ = writeln!(out, "bracket {i} {j} {k} {c}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use lptorsion_core::catalog::build_complex_heisenberg;

    #[test]
    fn parses_the_heisenberg_example() {
        let text = "# complex hyperbolic plane\nname heis3\ndim 3\nweights 1 1 2\nbracket 1 2 3 1\n";
        let alg = parse_algebra(text).unwrap();
        assert_eq!(alg, build_complex_heisenberg(2));
    }

    #[test]
    fn count_mismatch_is_semantic() {
        let text = "name x\ndim 3\nweights 1 1\n";
        assert!(matches!(parse_algebra(text), Err(FileError::Semantic { .. })));
    }

    #[test]
    fn unordered_bracket_is_syntax_with_line_number() {
        let text = "name x\ndim 3\nweights 1 1 2\nbracket 2 1 3 1\n";
        match parse_algebra(text) {
            Err(FileError::Syntax { line: 4, message }) => {
                assert!(message.contains("i < j"), "unexpected message: {message}")
            }
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_bracket_key_is_rejected() {
        let text = "name x\ndim 3\nweights 1 1 2\nbracket 1 2 3 1\nbracket 1 2 3 4\n";
        match parse_algebra(text) {
            Err(FileError::Syntax { line: 5, message }) => {
                assert!(message.contains("duplicate bracket"), "unexpected message: {message}")
            }
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn invalid_jacobi_fails_with_report() {
        let text = "name bad\ndim 5\nweights 1 1 1 2 3\n\
                    bracket 1 2 4 1\nbracket 2 3 4 1\nbracket 3 4 5 1\n";
        assert!(matches!(parse_algebra(text), Err(FileError::Validation { .. })));
    }

    #[test]
    fn round_trip_is_identity() {
        let alg = build_complex_heisenberg(3);
        assert_eq!(parse_algebra(&render_algebra(&alg)).unwrap(), alg);
    }
}
