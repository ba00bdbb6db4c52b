//! The worked-example corpus: eleven automata and ten plain-arithmetic
//! reference functions, cross-validated against each other.
//!
//! Every machine computes a simple word statistic; every oracle computes
//! the same statistic directly on the word, with no automata involved. The
//! pairing is the backbone of the test-suite: machine and oracle must agree
//! exactly on every word up to the sweep length.
//!
//! | machine | semiring   | statistic                                            | oracle |
//! |---------|------------|------------------------------------------------------|--------|
//! | `w1`    | min-plus   | # trailing a's; ∞ on b-free words                    | `f1`   |
//! | `w1p`   | plus-times | same function as `w1`, via run counting              | `f1`   |
//! | `w2`    | min-plus   | min(#a, #b)                                          | `f2`   |
//! | `w3`    | min-plus   | min over splits of (#a before) + (#b after)          | `f3`   |
//! | `w4`    | min-plus   | shortest maximal b-block; ∞ without b                | `f4`   |
//! | `w5`    | min-plus   | Σ over #-sections of min(#a, #b)                     | `f5`   |
//! | `f6a`   | min-plus   | Σ over #-sections of the `w4` statistic              | `f6`   |
//! | `g3`    | max-plus   | max over splits of (#a before) + (#b after)          | `g3`   |
//! | `g4`    | max-plus   | longest maximal b-block; −∞ without b                | `g4`   |
//! | `g5`    | max-plus   | Σ over #-sections of max(#a, #b)                     | `g5`   |
//! | `g6`    | max-plus   | Σ over #-sections of the `g3` statistic              | `g6`   |

pub mod machines;
pub mod oracles;

use crate::ambiguity::Degree;
use crate::automaton::Automaton;
use crate::semiring::{Semiring, Weight};

/// A reference implementation of a word statistic.
pub type OracleFn = fn(&str) -> Weight;

/// Names accepted by [`machine`], in listing order.
pub const MACHINES: &[&str] = &[
    "w1", "w1p", "w2", "w3", "w4", "w5", "f6a", "g3", "g4", "g5", "g6",
];

/// Names accepted by [`oracle`], in listing order.
pub const ORACLES: &[&str] = &[
    "f1", "f2", "f3", "f4", "f5", "f6", "g3", "g4", "g5", "g6",
];

/// Build a corpus automaton by name (case-insensitive).
pub fn machine(name: &str) -> Option<Automaton> {
    match name.to_ascii_lowercase().as_str() {
        "w1" => Some(machines::w1()),
        "w1p" => Some(machines::w1p()),
        "w2" => Some(machines::w2()),
        "w3" => Some(machines::w3()),
        "w4" => Some(machines::w4()),
        "w5" => Some(machines::w5()),
        "f6a" => Some(machines::f6a()),
        "g3" => Some(machines::g3()),
        "g4" => Some(machines::g4()),
        "g5" => Some(machines::g5()),
        "g6" => Some(machines::g6()),
        _ => None,
    }
}

/// Look up a reference oracle by name (case-insensitive).
pub fn oracle(name: &str) -> Option<OracleFn> {
    match name.to_ascii_lowercase().as_str() {
        "f1" => Some(oracles::f1 as OracleFn),
        "f2" => Some(oracles::f2 as OracleFn),
        "f3" => Some(oracles::f3 as OracleFn),
        "f4" => Some(oracles::f4 as OracleFn),
        "f5" => Some(oracles::f5 as OracleFn),
        "f6" => Some(oracles::f6 as OracleFn),
        "g3" => Some(oracles::g3 as OracleFn),
        "g4" => Some(oracles::g4 as OracleFn),
        "g5" => Some(oracles::g5 as OracleFn),
        "g6" => Some(oracles::g6 as OracleFn),
        _ => None,
    }
}

/// The oracle a machine is validated against. For `w1p` the values agree
/// while the semiring tags differ (plus-times vs min-plus), so agreement is
/// checked on [`crate::semiring::Value`]s.
pub fn paired_oracle(machine_name: &str) -> Option<&'static str> {
    match machine_name.to_ascii_lowercase().as_str() {
        "w1" | "w1p" => Some("f1"),
        "w2" => Some("f2"),
        "w3" => Some("f3"),
        "w4" => Some("f4"),
        "w5" => Some("f5"),
        "f6a" => Some("f6"),
        "g3" => Some("g3"),
        "g4" => Some("g4"),
        "g5" => Some("g5"),
        "g6" => Some("g6"),
        _ => None,
    }
}

/// Ambiguity degree each machine is known to have.
pub fn expected_degree(machine_name: &str) -> Option<Degree> {
    match machine_name.to_ascii_lowercase().as_str() {
        "w1" => Some(Degree::Unambiguous),
        "w2" => Some(Degree::FinitelyAmbiguous),
        "w1p" | "w3" | "w4" | "g3" | "g4" => Some(Degree::PolynomiallyAmbiguous),
        "w5" | "f6a" | "g5" | "g6" => Some(Degree::ExponentiallyAmbiguous),
        _ => None,
    }
}

/// One-line description for listings.
pub fn describe(name: &str) -> Option<&'static str> {
    match name.to_ascii_lowercase().as_str() {
        "w1" => Some("min-plus: number of trailing a's, infinite on b-free words"),
        "w1p" => Some("plus-times: same function as w1, computed by run counting"),
        "w2" => Some("min-plus: min of the letter counts #a and #b"),
        "w3" => Some("min-plus: min over split points of a's before plus b's after"),
        "w4" => Some("min-plus: length of the shortest maximal b-block, infinite without b"),
        "w5" => Some("min-plus: sum over #-sections of the w2 statistic"),
        "f6a" => Some("min-plus: sum over #-sections of the w4 statistic"),
        "f1" => Some("number of trailing a's, infinite on b-free words"),
        "f2" => Some("min of the letter counts #a and #b"),
        "f3" => Some("min over split points of a's before plus b's after"),
        "f4" => Some("length of the shortest maximal b-block, infinite without b"),
        "f5" => Some("sum over #-sections of f2"),
        "f6" => Some("sum over #-sections of f4"),
        "g3" => Some("max over split points of a's before plus b's after"),
        "g4" => Some("length of the longest maximal b-block, -inf without b"),
        "g5" => Some("sum over #-sections of max(#a, #b)"),
        "g6" => Some("sum over #-sections of g3"),
        _ => None,
    }
}

/// Semiring of a corpus oracle's values.
pub fn oracle_semiring(name: &str) -> Option<Semiring> {
    match name.to_ascii_lowercase().as_str() {
        "f1" | "f2" | "f3" | "f4" | "f5" | "f6" => Some(Semiring::MinPlus),
        "g3" | "g4" | "g5" | "g6" => Some(Semiring::MaxPlus),
        _ => None,
    }
}
