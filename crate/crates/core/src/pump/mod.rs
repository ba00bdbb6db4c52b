//! Pumping machinery: function handles, pumping representations, factor
//! refinement, eventual behaviors, and the five executable checkers.
//!
//! The objects here make pumping arguments runnable. A *function handle*
//! wraps something that maps words to weights — an automaton, a finite min
//! or max of automata, or a plain arithmetic oracle. A *pumping
//! representation* `u₀ v₁ u₁ … vₙ uₙ` marks n factors of a word as pumpable.
//! *Refining* it splits every factor `vₖ = xₖ yₖ zₖ` so that each kept
//! infix `yₖ` acts idempotently on the handle's state spaces, which is what
//! entitles the checkers to reason about `yₖ^i` for all exponents at once.
//!
//! Factor indices are 1-based throughout (`k = 1..=n`), matching the
//! sets-and-partitions syntax accepted on the command line.

pub mod behavior;
pub mod checks;
pub mod factorize;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::automaton::{Automaton, AutomatonError};
use crate::semiring::{Semiring, Weight, WeightError};

/// Set of pumpable-factor indices (1-based).
pub type FactorSet = BTreeSet<usize>;

/// Errors shared by the pumping machinery.
#[derive(Debug, Error)]
pub enum PumpError {
    /// A word could not be evaluated (unknown letter, size guard, …).
    #[error(transparent)]
    Eval(#[from] AutomatonError),
    /// Weight-level misuse (cross-semiring arithmetic and the like).
    #[error(transparent)]
    Weight(#[from] WeightError),
    /// Matrix-level failure while probing idempotence.
    #[error(transparent)]
    Matrix(#[from] crate::matrix::MatrixError),
    /// Invalid arguments: shapes, index ranges, semiring gates.
    #[error("{0}")]
    Params(String),
    /// No infix of factor `factor` acts idempotently, so the factor cannot
    /// be refined.
    #[error("factor {factor} ({word:?}) has no infix with an idempotent action")]
    NoIdempotentInfix { word: String, factor: usize },
}

impl PumpError {
    pub(crate) fn params(msg: impl Into<String>) -> PumpError {
        PumpError::Params(msg.into())
    }
}

/// What a [`FunctionHandle`] evaluates with.
pub enum Backing {
    /// A single weighted automaton.
    Wa(Automaton),
    /// Pointwise min of finitely many min-plus automata.
    FiniteMin(Vec<Automaton>),
    /// Pointwise max of finitely many max-plus automata.
    FiniteMax(Vec<Automaton>),
    /// A plain arithmetic function; no automaton structure available.
    Oracle { eval: fn(&str) -> Weight },
}

/// A named word-to-weight function that the checkers evaluate and refine.
pub struct FunctionHandle {
    name: String,
    semiring: Semiring,
    backing: Backing,
}

impl FunctionHandle {
    /// Wrap a single automaton.
    pub fn from_automaton(name: impl Into<String>, a: Automaton) -> FunctionHandle {
        FunctionHandle {
            name: name.into(),
            semiring: a.semiring(),
            backing: Backing::Wa(a),
        }
    }

    /// Pointwise min of min-plus automata (at least one).
    pub fn min_of(
        name: impl Into<String>,
        components: Vec<Automaton>,
    ) -> Result<FunctionHandle, PumpError> {
        if components.is_empty() {
            return Err(PumpError::params("min-of needs at least one automaton"));
        }
        if let Some(c) = components
            .iter()
            .find(|c| c.semiring() != Semiring::MinPlus)
        {
            return Err(PumpError::params(format!(
                "min-of needs min-plus automata, got {}",
                c.semiring()
            )));
        }
        Ok(FunctionHandle {
            name: name.into(),
            semiring: Semiring::MinPlus,
            backing: Backing::FiniteMin(components),
        })
    }

    /// Pointwise max of max-plus automata (at least one).
    pub fn max_of(
        name: impl Into<String>,
        components: Vec<Automaton>,
    ) -> Result<FunctionHandle, PumpError> {
        if components.is_empty() {
            return Err(PumpError::params("max-of needs at least one automaton"));
        }
        if let Some(c) = components
            .iter()
            .find(|c| c.semiring() != Semiring::MaxPlus)
        {
            return Err(PumpError::params(format!(
                "max-of needs max-plus automata, got {}",
                c.semiring()
            )));
        }
        Ok(FunctionHandle {
            name: name.into(),
            semiring: Semiring::MaxPlus,
            backing: Backing::FiniteMax(components),
        })
    }

    /// Wrap a plain arithmetic function returning weights tagged `semiring`.
    pub fn from_oracle(
        name: impl Into<String>,
        semiring: Semiring,
        eval: fn(&str) -> Weight,
    ) -> FunctionHandle {
        FunctionHandle {
            name: name.into(),
            semiring,
            backing: Backing::Oracle { eval },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Semiring the returned weights are tagged with.
    pub fn semiring(&self) -> Semiring {
        self.semiring
    }

    /// Automata whose state spaces constrain refinement: the wrapped
    /// automaton, the min/max components, or nothing for an oracle (every
    /// split of a factor is then admissible).
    pub fn components(&self) -> Option<&[Automaton]> {
        match &self.backing {
            Backing::Wa(a) => Some(std::slice::from_ref(a)),
            Backing::FiniteMin(v) | Backing::FiniteMax(v) => Some(v),
            Backing::Oracle { .. } => None,
        }
    }

    /// Value of the function on `word`.
    pub fn evaluate(&self, word: &str) -> Result<Weight, PumpError> {
        match &self.backing {
            Backing::Wa(a) => Ok(a.evaluate(word)?),
            Backing::FiniteMin(v) | Backing::FiniteMax(v) => {
                let mut acc = Weight::zero(self.semiring);
                for a in v {
                    acc = acc.add(&a.evaluate(word)?)?;
                }
                Ok(acc)
            }
            Backing::Oracle { eval } => Ok(eval(word)),
        }
    }
}

/// A word split as `u₀ v₁ u₁ … vₙ uₙ` with pumpable factors `vₖ`.
///
/// `segments` holds `u₀..uₙ` (n+1 entries, possibly empty) and `factors`
/// holds `v₁..vₙ` (n ≥ 1 entries, each non-empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PumpingRep {
    segments: Vec<String>,
    factors: Vec<String>,
}

impl PumpingRep {
    pub fn new(segments: Vec<String>, factors: Vec<String>) -> Result<PumpingRep, PumpError> {
        if factors.is_empty() {
            return Err(PumpError::params(
                "a pumping representation needs at least one factor",
            ));
        }
        if segments.len() != factors.len() + 1 {
            return Err(PumpError::params(format!(
                "expected {} segments around {} factors, got {}",
                factors.len() + 1,
                factors.len(),
                segments.len()
            )));
        }
        if let Some(k) = factors.iter().position(String::is_empty) {
            return Err(PumpError::params(format!("factor {} is empty", k + 1)));
        }
        Ok(PumpingRep { segments, factors })
    }

    /// Convenience constructor for the one-factor shape `u v w`.
    pub fn single(u: &str, v: &str, w: &str) -> Result<PumpingRep, PumpError> {
        PumpingRep::new(
            vec![u.to_string(), w.to_string()],
            vec![v.to_string()],
        )
    }

    /// Number of pumpable factors n.
    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn segments(&self) -> &[String] {
        &self.segments
    }

    pub fn factors(&self) -> &[String] {
        &self.factors
    }

    /// The underlying word `u₀ v₁ u₁ … vₙ uₙ`.
    pub fn word(&self) -> String {
        let mut out = self.segments[0].clone();
        for k in 0..self.factors.len() {
            out.push_str(&self.factors[k]);
            out.push_str(&self.segments[k + 1]);
        }
        out
    }

    /// Everything strictly before factor k (1-based).
    pub(crate) fn prefix_before(&self, k: usize) -> String {
        let mut out = self.segments[0].clone();
        for m in 0..k - 1 {
            out.push_str(&self.factors[m]);
            out.push_str(&self.segments[m + 1]);
        }
        out
    }

    /// Everything strictly after factor k (1-based).
    pub(crate) fn suffix_after(&self, k: usize) -> String {
        let mut out = self.segments[k].clone();
        for m in k..self.factors.len() {
            out.push_str(&self.factors[m]);
            out.push_str(&self.segments[m + 1]);
        }
        out
    }
}

/// A refinement of a [`PumpingRep`]: each factor `vₖ` is split as
/// `xₖ yₖ zₖ`, the kept infixes `yₖ` act idempotently, and the discarded
/// parts are folded into the segments (`u′ₖ = zₖ uₖ xₖ₊₁`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedRep {
    segments: Vec<String>,
    kept: Vec<String>,
    splits: Vec<(usize, usize)>,
}

impl RefinedRep {
    pub(crate) fn from_splits(rep: &PumpingRep, splits: &[(usize, usize)]) -> RefinedRep {
        let n = rep.factor_count();
        assert_eq!(splits.len(), n, "one split per factor");
        let mut parts: Vec<(String, String, String)> = Vec::with_capacity(n);
        for (k, &(i, j)) in splits.iter().enumerate() {
            let chars: Vec<char> = rep.factors[k].chars().collect();
            assert!(i < j && j <= chars.len(), "split inside the factor");
            let x: String = chars[..i].iter().collect();
            let y: String = chars[i..j].iter().collect();
            let z: String = chars[j..].iter().collect();
            parts.push((x, y, z));
        }
        let mut segments = Vec::with_capacity(n + 1);
        let mut first = rep.segments[0].clone();
        first.push_str(&parts[0].0);
        segments.push(first);
        for k in 1..n {
            let mut seg = parts[k - 1].2.clone();
            seg.push_str(&rep.segments[k]);
            seg.push_str(&parts[k].0);
            segments.push(seg);
        }
        let mut last = parts[n - 1].2.clone();
        last.push_str(&rep.segments[n]);
        segments.push(last);
        RefinedRep {
            segments,
            kept: parts.into_iter().map(|(_, y, _)| y).collect(),
            splits: splits.to_vec(),
        }
    }

    /// Number of pumpable factors n (same as in the original).
    pub fn factor_count(&self) -> usize {
        self.kept.len()
    }

    pub fn segments(&self) -> &[String] {
        &self.segments
    }

    /// The kept idempotent infixes `y₁..yₙ`.
    pub fn kept(&self) -> &[String] {
        &self.kept
    }

    /// Char positions `(i, j)` of each kept infix inside its factor.
    pub fn splits(&self) -> &[(usize, usize)] {
        &self.splits
    }

    /// The represented word; identical to the original rep's word.
    pub fn word(&self) -> String {
        self.pumped(&FactorSet::new(), 1)
    }

    /// The pumped word `w(S, i)`: factor k is repeated `i` times if
    /// `k ∈ S`, and kept once otherwise. `i = 0` deletes the selected
    /// factors; `w(S, 1)` is the original word for every S.
    pub fn pumped(&self, set: &FactorSet, exponent: u64) -> String {
        let mut capacity: usize = self.segments.iter().map(String::len).sum();
        for k in 1..=self.kept.len() {
            let reps = if set.contains(&k) { exponent } else { 1 };
            capacity += self.kept[k - 1].len() * reps as usize;
        }
        let mut out = String::with_capacity(capacity);
        out.push_str(&self.segments[0]);
        for k in 1..=self.kept.len() {
            let y = &self.kept[k - 1];
            let reps = if set.contains(&k) { exponent } else { 1 };
            for _ in 0..reps {
                out.push_str(y);
            }
            out.push_str(&self.segments[k]);
        }
        out
    }
}

/// The pumped word `w(S, i)` of a refined representation.
pub fn pump_word(refined: &RefinedRep, set: &FactorSet, exponent: u64) -> String {
    refined.pumped(set, exponent)
}

/// Validate that `set` is a non-empty subset of `1..=n`.
pub(crate) fn check_factor_set(set: &FactorSet, n: usize) -> Result<(), PumpError> {
    if set.is_empty() {
        return Err(PumpError::params("factor sets must be non-empty"));
    }
    if let Some(&k) = set.iter().find(|&&k| k == 0 || k > n) {
        return Err(PumpError::params(format!(
            "factor index {k} out of range 1..={n}"
        )));
    }
    Ok(())
}
