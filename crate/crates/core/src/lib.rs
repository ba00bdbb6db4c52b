//! Exact weighted-automata toolkit: evaluation, ambiguity degree, and
//! pumping-based expressiveness checks over tropical and counting semirings.
//!
//! The crate revolves around three questions about a function computed by a
//! weighted automaton over `min-plus`, `max-plus`, or `plus-times` weights:
//!
//! 1. **What does it compute?** [`automaton::Automaton::evaluate`] runs the
//!    linear-algebra semantics exactly (big-integer weights, no overflow),
//!    and [`automaton::Automaton::count_runs`] counts accepting runs.
//! 2. **How ambiguous is it?** [`ambiguity`] classifies a trimmed automaton
//!    as unambiguous, finitely, polynomially, or exponentially ambiguous by
//!    structural criteria on products of its boolean abstraction.
//! 3. **Could *any* automaton of a given class compute it?** [`pump`]
//!    implements executable pumping tests: factor a witness word into loops
//!    with stable shapes, pump every selection of loops, and test the
//!    resulting value sequences against the growth patterns each automaton
//!    class can produce. A function that fails a test for every refinement
//!    of the factorization is certifiably outside the class.
//!
//! [`corpus`] ships the worked examples the test-suite freezes: machines for
//! trailing-block counts, min/max of letter counts, block statistics and
//! their section-wise sums, together with plain-arithmetic oracles for each.
//! [`hierarchy`] bundles the separations between unambiguous, finitely
//! ambiguous, polynomially ambiguous, and unrestricted automata that those
//! examples witness; [`convert`] turns an unambiguous min-plus/max-plus
//! automaton into a counting automaton with the same support behavior.

pub mod ambiguity;
pub mod automaton;
pub mod convert;
pub mod corpus;
pub mod format;
pub mod hierarchy;
pub mod matrix;
pub mod pump;
pub mod semiring;

pub use automaton::{Automaton, AutomatonError};
pub use matrix::{Matrix, MatrixError};
pub use semiring::{Semiring, Value, Weight, WeightError};
