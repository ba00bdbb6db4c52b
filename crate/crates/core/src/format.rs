//! Plain-text serialization of automata.
//!
//! The format is line-oriented UTF-8. Blank lines and lines whose first
//! non-space character is `#` are ignored (comments are whole-line only, so
//! `#` can still serve as an alphabet letter). Every other line is
//! `key: fields`:
//!
//! ```text
//! # cheapest way to read the suffix after the last b
//! semiring: min-plus
//! states: wait count
//! alphabet: a b
//! init: wait 0
//! final: count 0
//! trans: wait a 0 wait
//! trans: wait b 0 wait
//! trans: wait b 0 count
//! trans: count a 1 count
//! ```
//!
//! * `semiring:` — one of `min-plus`, `max-plus`, `plus-times`, `bool`,
//!   `bool-inf`; exactly once.
//! * `states:` — whitespace-separated distinct names; exactly once.
//! * `alphabet:` — whitespace-separated distinct single-character letters;
//!   exactly once.
//! * `init:` / `final:` — state and weight; one line per non-𝟘 entry, at
//!   most one per state.
//! * `trans:` — source, letter, weight, target; at most one line per
//!   (source, letter, target) triple.
//!
//! Weights are decimal naturals or `inf` (−∞ under `max-plus`). Unlisted
//! entries are 𝟘. A listed weight equal to 𝟘 is legal and also means
//! "absent" — note that weight 0 in the tropical semirings is 𝟙, not 𝟘,
//! so zero-cost transitions are real transitions.

use crate::automaton::{Automaton, AutomatonError};
use crate::semiring::Semiring;
use crate::semiring::Weight;
use std::collections::HashSet;
use std::fmt::Write as _;
use thiserror::Error;

/// Errors raised while reading the text format.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing required line {0:?}")]
    Missing(&'static str),
    #[error("line {line}: {key:?} given more than once")]
    Duplicate { key: &'static str, line: usize },
    #[error("line {line}: {source}")]
    Automaton {
        line: usize,
        source: AutomatonError,
    },
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Parse the text format into an automaton.
pub fn parse(text: &str) -> Result<Automaton, FormatError> {
    let mut semiring: Option<(usize, Semiring)> = None;
    let mut states: Option<(usize, Vec<String>)> = None;
    let mut alphabet: Option<(usize, Vec<char>)> = None;
    let mut initial: Vec<(usize, String, String)> = Vec::new();
    let mut final_: Vec<(usize, String, String)> = Vec::new();
    let mut trans: Vec<(usize, String, char, String, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| syntax(line_no, "expected `key: fields`"))?;
        let fields: Vec<&str> = rest.split_whitespace().collect();
        match key.trim() {
            "semiring" => {
                if semiring.is_some() {
                    return Err(FormatError::Duplicate {
                        key: "semiring",
                        line: line_no,
                    });
                }
                let [name] = fields[..] else {
                    return Err(syntax(line_no, "expected one semiring name"));
                };
                let sr = Semiring::from_name(name)
                    .ok_or_else(|| syntax(line_no, format!("unknown semiring {name:?}")))?;
                semiring = Some((line_no, sr));
            }
            "states" => {
                if states.is_some() {
                    return Err(FormatError::Duplicate {
                        key: "states",
                        line: line_no,
                    });
                }
                if fields.is_empty() {
                    return Err(syntax(line_no, "expected at least one state name"));
                }
                states = Some((line_no, fields.iter().map(|s| s.to_string()).collect()));
            }
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(FormatError::Duplicate {
                        key: "alphabet",
                        line: line_no,
                    });
                }
                if fields.is_empty() {
                    return Err(syntax(line_no, "expected at least one letter"));
                }
                let mut letters = Vec::new();
                for tok in &fields {
                    let mut chars = tok.chars();
                    let (Some(c), None) = (chars.next(), chars.next()) else {
                        return Err(syntax(
                            line_no,
                            format!("letter {tok:?} must be one character"),
                        ));
                    };
                    letters.push(c);
                }
                alphabet = Some((line_no, letters));
            }
            "init" | "final" => {
                let [state, weight] = fields[..] else {
                    return Err(syntax(line_no, "expected `state weight`"));
                };
                let entry = (line_no, state.to_string(), weight.to_string());
                if key.trim() == "init" {
                    initial.push(entry);
                } else {
                    final_.push(entry);
                }
            }
            "trans" => {
                let [src, letter, weight, dst] = fields[..] else {
                    return Err(syntax(line_no, "expected `src letter weight dst`"));
                };
                let mut chars = letter.chars();
                let (Some(c), None) = (chars.next(), chars.next()) else {
                    return Err(syntax(
                        line_no,
                        format!("letter {letter:?} must be one character"),
                    ));
                };
                trans.push((
                    line_no,
                    src.to_string(),
                    c,
                    dst.to_string(),
                    weight.to_string(),
                ));
            }
            other => return Err(syntax(line_no, format!("unknown key {other:?}"))),
        }
    }

    let (_, sr) = semiring.ok_or(FormatError::Missing("semiring"))?;
    let (states_line, state_names) = states.ok_or(FormatError::Missing("states"))?;
    let (alpha_line, letters) = alphabet.ok_or(FormatError::Missing("alphabet"))?;

    let state_refs: Vec<&str> = state_names.iter().map(String::as_str).collect();
    let mut auto = Automaton::new(sr, &state_refs, &letters).map_err(|e| {
        let line = match e {
            AutomatonError::DuplicateLetter(_) => alpha_line,
            _ => states_line,
        };
        FormatError::Automaton { line, source: e }
    })?;

    let parse_weight =
        |line: usize, s: &str| Weight::parse(sr, s).map_err(|e| syntax(line, e.to_string()));

    let mut seen = HashSet::new();
    for (line, state, weight) in initial {
        if !seen.insert(state.clone()) {
            return Err(syntax(line, format!("init weight of {state:?} given twice")));
        }
        let w = parse_weight(line, &weight)?;
        auto.set_initial(&state, w)
            .map_err(|e| FormatError::Automaton { line, source: e })?;
    }
    let mut seen = HashSet::new();
    for (line, state, weight) in final_ {
        if !seen.insert(state.clone()) {
            return Err(syntax(line, format!("final weight of {state:?} given twice")));
        }
        let w = parse_weight(line, &weight)?;
        auto.set_final(&state, w)
            .map_err(|e| FormatError::Automaton { line, source: e })?;
    }
    let mut seen = HashSet::new();
    for (line, src, letter, dst, weight) in trans {
        if !seen.insert((src.clone(), letter, dst.clone())) {
            return Err(syntax(
                line,
                format!("transition {src:?} {letter} {dst:?} given twice"),
            ));
        }
        let w = parse_weight(line, &weight)?;
        auto.set_transition(&src, letter, &dst, w)
            .map_err(|e| FormatError::Automaton { line, source: e })?;
    }
    Ok(auto)
}

/// Serialize an automaton in the text format, omitting 𝟘 weights. Parsing
/// the result reproduces the automaton exactly (state order included).
pub fn serialize(a: &Automaton) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "semiring: {}", a.semiring().name());
    let _ = writeln!(out, "states: {}", a.states().join(" "));
    let letters: Vec<String> = a.alphabet().iter().map(|c| c.to_string()).collect();
    let _ = writeln!(out, "alphabet: {}", letters.join(" "));
    for (i, w) in a.initial_weights().iter().enumerate() {
        if !w.is_zero() {
            let _ = writeln!(out, "init: {} {w}", a.states()[i]);
        }
    }
    for (i, w) in a.final_weights().iter().enumerate() {
        if !w.is_zero() {
            let _ = writeln!(out, "final: {} {w}", a.states()[i]);
        }
    }
    for &c in a.alphabet() {
        let m = a.letter_matrix(c).expect("letter from own alphabet");
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let w = m.get(i, j);
                if !w.is_zero() {
                    let _ = writeln!(out, "trans: {} {c} {w} {}", a.states()[i], a.states()[j]);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# suffix cost machine
semiring: min-plus
states: wait count
alphabet: a b

init: wait 0
final: count 0
trans: wait a 0 wait
trans: wait b 0 wait
trans: wait b 0 count
trans: count a 1 count
";

    #[test]
    fn parse_then_evaluate() {
        let a = parse(SAMPLE).unwrap();
        assert_eq!(a.semiring(), Semiring::MinPlus);
        assert_eq!(
            a.evaluate("baa").unwrap(),
            Weight::nat(Semiring::MinPlus, 2).unwrap()
        );
        assert!(a.evaluate("aaa").unwrap().is_zero());
    }

    #[test]
    fn round_trip_is_identity() {
        let a = parse(SAMPLE).unwrap();
        let b = parse(&serialize(&a)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn hash_letter_survives_round_trip() {
        let text = "\
semiring: max-plus
states: s
alphabet: a #
init: s 0
final: s 0
trans: s # 1 s
";
        let a = parse(text).unwrap();
        assert_eq!(
            a.evaluate("#").unwrap(),
            Weight::nat(Semiring::MaxPlus, 1).unwrap()
        );
        assert_eq!(parse(&serialize(&a)).unwrap(), a);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "semiring: min-plus\nstates: p\nalphabet: a\nbogus: 1\n";
        let err = parse(text).unwrap_err();
        assert!(matches!(err, FormatError::Syntax { line: 4, .. }), "{err}");

        let text = "semiring: min-plus\nstates: p\nalphabet: a\ntrans: p b 1 p\n";
        let err = parse(text).unwrap_err();
        assert!(
            matches!(err, FormatError::Automaton { line: 4, .. }),
            "{err}"
        );
    }

    #[test]
    fn missing_sections_are_reported() {
        assert!(matches!(
            parse("states: p\nalphabet: a\n").unwrap_err(),
            FormatError::Missing("semiring")
        ));
        assert!(matches!(
            parse("semiring: bool\nalphabet: a\n").unwrap_err(),
            FormatError::Missing("states")
        ));
        assert!(matches!(
            parse("semiring: bool\nstates: p\n").unwrap_err(),
            FormatError::Missing("alphabet")
        ));
    }

    #[test]
    fn duplicate_definitions_are_rejected() {
        let text = "semiring: min-plus\nstates: p\nalphabet: a\ninit: p 0\ninit: p 1\n";
        assert!(parse(text).is_err());
        let text = "semiring: min-plus\nstates: p\nalphabet: a\nsemiring: bool\n";
        assert!(matches!(
            parse(text).unwrap_err(),
            FormatError::Duplicate {
                key: "semiring",
                ..
            }
        ));
        let text =
            "semiring: min-plus\nstates: p\nalphabet: a\ntrans: p a 1 p\ntrans: p a 2 p\n";
        assert!(parse(text).is_err());
    }

    #[test]
    fn max_plus_inf_parses_as_bottom() {
        let text = "\
semiring: max-plus
states: p
alphabet: a
init: p 0
final: p inf
trans: p a 1 p
";
        let a = parse(text).unwrap();
        // final weight −∞ is 𝟘: the state is not accepting.
        assert!(a.evaluate("a").unwrap().is_zero());
    }
}
