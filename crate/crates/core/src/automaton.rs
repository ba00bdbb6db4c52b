//! Weighted finite automata and their linear-algebra semantics.
//!
//! An automaton over a semiring S is an initial weight vector I, a final
//! weight vector F, and one transition matrix M_a per letter a. The value of
//! a word w = a₁…aₙ is
//!
//! ```text
//! ⟦A⟧(w) = I ⊙ M_{a₁} ⊙ ⋯ ⊙ M_{aₙ} ⊙ F
//! ```
//!
//! computed by folding the word through vector–matrix products, so a single
//! evaluation is O(|w| · n²) semiring operations.
//!
//! A *run* on w is a state sequence whose initial weight, every step weight,
//! and final weight are all ≠ 𝟘; [`Automaton::count_runs`] counts them
//! exactly. States that no run ever uses are removed by
//! [`Automaton::trimmed`], which keeps exactly the states that are both
//! reachable from an initial state and able to reach a final state through
//! non-𝟘 transitions.

use crate::matrix::{dot, vec_mat, Matrix, MatrixError};
use crate::semiring::{Semiring, Weight};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// Errors raised while building or running an automaton.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("duplicate state {0:?}")]
    DuplicateState(String),
    #[error("unknown letter {0:?}")]
    UnknownLetter(char),
    #[error("duplicate letter {0:?}")]
    DuplicateLetter(char),
    #[error("word of length {len} exceeds the run-enumeration limit {limit}")]
    WordTooLong { len: usize, limit: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// One accepting run: a state sequence with one more state than the word
/// has letters, every step weight ≠ 𝟘, and non-𝟘 initial/final weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub states: Vec<String>,
    pub word: String,
    /// I(q₀) ⊙ step weights ⊙ F(qₙ).
    pub weight: Weight,
}

/// A weighted automaton with named states over a fixed semiring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    semiring: Semiring,
    states: Vec<String>,
    alphabet: Vec<char>,
    initial: Vec<Weight>,
    final_: Vec<Weight>,
    letters: Vec<Matrix>,
}

impl Automaton {
    /// A fresh automaton with all weights 𝟘. State names and letters must be
    /// distinct.
    pub fn new(
        semiring: Semiring,
        states: &[&str],
        alphabet: &[char],
    ) -> Result<Automaton, AutomatonError> {
        let mut seen = std::collections::HashSet::new();
        for s in states {
            if !seen.insert(*s) {
                return Err(AutomatonError::DuplicateState((*s).into()));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for c in alphabet {
            if !seen.insert(*c) {
                return Err(AutomatonError::DuplicateLetter(*c));
            }
        }
        let n = states.len();
        Ok(Automaton {
            semiring,
            states: states.iter().map(|s| s.to_string()).collect(),
            alphabet: alphabet.to_vec(),
            initial: vec![Weight::zero(semiring); n],
            final_: vec![Weight::zero(semiring); n],
            letters: vec![Matrix::zero(semiring, n); alphabet.len()],
        })
    }

    pub fn semiring(&self) -> Semiring {
        self.semiring
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn state_index(&self, name: &str) -> Result<usize, AutomatonError> {
        self.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| AutomatonError::UnknownState(name.into()))
    }

    pub fn letter_index(&self, letter: char) -> Result<usize, AutomatonError> {
        self.alphabet
            .iter()
            .position(|&c| c == letter)
            .ok_or(AutomatonError::UnknownLetter(letter))
    }

    pub fn initial_weights(&self) -> &[Weight] {
        &self.initial
    }

    pub fn final_weights(&self) -> &[Weight] {
        &self.final_
    }

    pub fn letter_matrix(&self, letter: char) -> Result<&Matrix, AutomatonError> {
        Ok(&self.letters[self.letter_index(letter)?])
    }

    pub fn set_initial(&mut self, state: &str, w: Weight) -> Result<(), AutomatonError> {
        let i = self.state_index(state)?;
        self.check_tag(&w)?;
        self.initial[i] = w;
        Ok(())
    }

    pub fn set_final(&mut self, state: &str, w: Weight) -> Result<(), AutomatonError> {
        let i = self.state_index(state)?;
        self.check_tag(&w)?;
        self.final_[i] = w;
        Ok(())
    }

    /// Set the weight of the transition src --letter/w--> dst (𝟘 removes it).
    pub fn set_transition(
        &mut self,
        src: &str,
        letter: char,
        dst: &str,
        w: Weight,
    ) -> Result<(), AutomatonError> {
        let i = self.state_index(src)?;
        let j = self.state_index(dst)?;
        let a = self.letter_index(letter)?;
        self.letters[a].set(i, j, w)?;
        Ok(())
    }

    fn check_tag(&self, w: &Weight) -> Result<(), AutomatonError> {
        if w.semiring() != self.semiring {
            return Err(AutomatonError::Matrix(
                crate::semiring::WeightError::Mismatch {
                    left: self.semiring,
                    right: w.semiring(),
                    op: "automaton weight",
                }
                .into(),
            ));
        }
        Ok(())
    }

    /// Product of the word's letter matrices (identity for ε).
    pub fn word_matrix(&self, word: &str) -> Result<Matrix, AutomatonError> {
        let mut m = Matrix::identity(self.semiring, self.dim());
        for c in word.chars() {
            m = m.mul(&self.letters[self.letter_index(c)?])?;
        }
        Ok(m)
    }

    /// The value ⟦A⟧(w), folding left-to-right so long words never build an
    /// intermediate matrix.
    pub fn evaluate(&self, word: &str) -> Result<Weight, AutomatonError> {
        if self.dim() == 0 {
            return Ok(Weight::zero(self.semiring));
        }
        let mut v = self.initial.clone();
        for c in word.chars() {
            v = vec_mat(&v, &self.letters[self.letter_index(c)?])?;
        }
        Ok(dot(&v, &self.final_)?)
    }

    /// All accepting runs on the word, in lexicographic order of their
    /// state-index sequences, each with its ⊙-weight. Exponentially
    /// ambiguous automata can have astronomically many runs, so words
    /// longer than `limit` are refused outright.
    pub fn enumerate_runs(&self, word: &str, limit: usize) -> Result<Vec<Run>, AutomatonError> {
        let letters: Vec<usize> = word
            .chars()
            .map(|c| self.letter_index(c))
            .collect::<Result<_, _>>()?;
        if letters.len() > limit {
            return Err(AutomatonError::WordTooLong {
                len: letters.len(),
                limit,
            });
        }
        let mut runs = Vec::new();
        // Depth-first, trying states in index order: the emitted run list is
        // lexicographic in state indices.
        let mut path: Vec<usize> = Vec::with_capacity(letters.len() + 1);
        for q0 in 0..self.dim() {
            if self.initial[q0].is_zero() {
                continue;
            }
            path.push(q0);
            self.extend_runs(&letters, word, &mut path, &mut runs);
            path.pop();
        }
        Ok(runs)
    }

    fn extend_runs(
        &self,
        letters: &[usize],
        word: &str,
        path: &mut Vec<usize>,
        runs: &mut Vec<Run>,
    ) {
        let pos = path.len() - 1;
        let here = *path.last().expect("path holds the start state");
        if pos == letters.len() {
            if self.final_[here].is_zero() {
                return;
            }
            let mut weight = self.initial[path[0]].clone();
            for (k, &a) in letters.iter().enumerate() {
                weight = weight
                    .mul(self.letters[a].get(path[k], path[k + 1]))
                    .expect("run weights share the automaton's semiring");
            }
            weight = weight
                .mul(&self.final_[here])
                .expect("run weights share the automaton's semiring");
            runs.push(Run {
                states: path.iter().map(|&i| self.states[i].clone()).collect(),
                word: word.to_string(),
                weight,
            });
            return;
        }
        let m = &self.letters[letters[pos]];
        for next in 0..self.dim() {
            if m.get(here, next).is_zero() {
                continue;
            }
            path.push(next);
            self.extend_runs(letters, word, path, runs);
            path.pop();
        }
    }

    /// Exact number of accepting runs on the word: state sequences whose
    /// initial, step, and final weights are all ≠ 𝟘.
    pub fn count_runs(&self, word: &str) -> Result<BigUint, AutomatonError> {
        let n = self.dim();
        let mut v: Vec<BigUint> = self
            .initial
            .iter()
            .map(|w| {
                if w.is_zero() {
                    BigUint::zero()
                } else {
                    BigUint::one()
                }
            })
            .collect();
        for c in word.chars() {
            let m = &self.letters[self.letter_index(c)?];
            let mut next = vec![BigUint::zero(); n];
            for (j, count) in v.iter().enumerate() {
                if count.is_zero() {
                    continue;
                }
                for (k, slot) in next.iter_mut().enumerate() {
                    if !m.get(j, k).is_zero() {
                        *slot += count;
                    }
                }
            }
            v = next;
        }
        let mut total = BigUint::zero();
        for (j, count) in v.iter().enumerate() {
            if !self.final_[j].is_zero() {
                total += count;
            }
        }
        Ok(total)
    }

    /// Indices of states reachable from a non-𝟘 initial weight through
    /// non-𝟘 transitions.
    pub fn accessible(&self) -> Vec<bool> {
        self.closure(
            self.initial.iter().map(|w| !w.is_zero()).collect(),
            |m, from, to| !m.get(from, to).is_zero(),
        )
    }

    /// Indices of states from which a non-𝟘 final weight is reachable.
    pub fn co_accessible(&self) -> Vec<bool> {
        self.closure(
            self.final_.iter().map(|w| !w.is_zero()).collect(),
            |m, from, to| !m.get(to, from).is_zero(),
        )
    }

    fn closure(
        &self,
        mut mark: Vec<bool>,
        step: impl Fn(&Matrix, usize, usize) -> bool,
    ) -> Vec<bool> {
        let mut queue: Vec<usize> = (0..self.dim()).filter(|&i| mark[i]).collect();
        while let Some(i) = queue.pop() {
            for m in &self.letters {
                for j in 0..self.dim() {
                    if !mark[j] && step(m, i, j) {
                        mark[j] = true;
                        queue.push(j);
                    }
                }
            }
        }
        mark
    }

    /// The sub-automaton on states that are both accessible and
    /// co-accessible. Values of all words are unchanged; the result may have
    /// zero states when the automaton accepts nothing.
    pub fn trimmed(&self) -> Automaton {
        let acc = self.accessible();
        let co = self.co_accessible();
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| acc[i] && co[i]).collect();
        let mut out = Automaton {
            semiring: self.semiring,
            states: keep.iter().map(|&i| self.states[i].clone()).collect(),
            alphabet: self.alphabet.clone(),
            initial: keep.iter().map(|&i| self.initial[i].clone()).collect(),
            final_: keep.iter().map(|&i| self.final_[i].clone()).collect(),
            letters: vec![Matrix::zero(self.semiring, keep.len()); self.alphabet.len()],
        };
        for (a, m) in self.letters.iter().enumerate() {
            for (new_i, &old_i) in keep.iter().enumerate() {
                for (new_j, &old_j) in keep.iter().enumerate() {
                    let w = m.get(old_i, old_j).clone();
                    if !w.is_zero() {
                        out.letters[a]
                            .set(new_i, new_j, w)
                            .expect("trim preserves tags and bounds");
                    }
                }
            }
        }
        out
    }

    /// The same automaton with every weight pushed through the quantity
    /// abstraction (`MinPlus`/`MaxPlus` → `Bool`, `PlusTimes` → `BoolInf`).
    pub fn abstracted(&self) -> Automaton {
        Automaton {
            semiring: self.semiring.abstraction_target(),
            states: self.states.clone(),
            alphabet: self.alphabet.clone(),
            initial: self.initial.iter().map(Weight::abstracted).collect(),
            final_: self.final_.iter().map(Weight::abstracted).collect(),
            letters: self.letters.iter().map(Matrix::abstracted).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(n: u64) -> Weight {
        Weight::nat(Semiring::MinPlus, n).unwrap()
    }

    /// Min-plus machine computing the number of trailing a's, defined only on
    /// words containing at least one b: stay on the start state for free,
    /// jump on the final b, then pay 1 per a.
    fn trailing_a_counter() -> Automaton {
        let sr = Semiring::MinPlus;
        let mut a = Automaton::new(sr, &["wait", "count"], &['a', 'b']).unwrap();
        a.set_initial("wait", mp(0)).unwrap();
        a.set_final("count", mp(0)).unwrap();
        a.set_transition("wait", 'a', "wait", mp(0)).unwrap();
        a.set_transition("wait", 'b', "wait", mp(0)).unwrap();
        a.set_transition("wait", 'b', "count", mp(0)).unwrap();
        a.set_transition("count", 'a', "count", mp(1)).unwrap();
        a
    }

    #[test]
    fn evaluation_matches_hand_computation() {
        let a = trailing_a_counter();
        assert_eq!(a.evaluate("baa").unwrap(), mp(2));
        assert_eq!(a.evaluate("ab").unwrap(), mp(0));
        assert_eq!(a.evaluate("abab").unwrap(), mp(0));
        // No b: no run reaches the final state.
        assert_eq!(a.evaluate("aaa").unwrap(), Weight::zero(Semiring::MinPlus));
        assert_eq!(a.evaluate("").unwrap(), Weight::zero(Semiring::MinPlus));
    }

    #[test]
    fn word_matrix_agrees_with_folding() {
        let a = trailing_a_counter();
        for word in ["", "a", "ba", "abba", "bbaab"] {
            let m = a.word_matrix(word).unwrap();
            let v = vec_mat(a.initial_weights(), &m).unwrap();
            assert_eq!(
                dot(&v, a.final_weights()).unwrap(),
                a.evaluate(word).unwrap()
            );
        }
    }

    #[test]
    fn run_enumeration_is_exhaustive_and_ordered() {
        let a = trailing_a_counter();
        // "bba": runs must jump at the second b, then pay 1 for the a.
        let runs = a.enumerate_runs("bba", 12).unwrap();
        assert_eq!(runs.len(), 1);
        assert_eq!(runs[0].states, vec!["wait", "wait", "count", "count"]);
        assert_eq!(runs[0].weight, mp(1));
        // Aggregating run weights with ⊕ reproduces evaluate.
        for word in ["", "a", "ba", "bb", "abba"] {
            let runs = a.enumerate_runs(word, 12).unwrap();
            let agg = runs.iter().fold(Weight::zero(a.semiring()), |acc, r| {
                acc.add(&r.weight).unwrap()
            });
            assert_eq!(agg, a.evaluate(word).unwrap(), "word {word:?}");
            assert_eq!(
                BigUint::from(runs.len()),
                a.count_runs(word).unwrap(),
                "word {word:?}"
            );
        }
    }

    #[test]
    fn run_enumeration_respects_the_limit() {
        let a = trailing_a_counter();
        assert!(matches!(
            a.enumerate_runs("babababababab", 12),
            Err(AutomatonError::WordTooLong { len: 13, limit: 12 })
        ));
    }

    #[test]
    fn run_counting_is_exact() {
        let a = trailing_a_counter();
        // On "bb" the runs are wait-wait-wait, wait-wait-count: only those
        // ending in "count" accept, plus the run jumping at the first b and
        // looping... which does not exist (count has no b-loop). So: jump at
        // the second b = 1 accepting run.
        assert_eq!(a.count_runs("bb").unwrap(), BigUint::from(1u32));
        assert_eq!(a.count_runs("ba").unwrap(), BigUint::from(1u32));
        assert_eq!(a.count_runs("aaa").unwrap(), BigUint::from(0u32));
    }

    #[test]
    fn unknown_letters_are_errors() {
        let a = trailing_a_counter();
        assert!(matches!(
            a.evaluate("abc"),
            Err(AutomatonError::UnknownLetter('c'))
        ));
    }

    #[test]
    fn trimming_drops_useless_states() {
        let sr = Semiring::MinPlus;
        let mut a = Automaton::new(sr, &["p", "dead", "q"], &['a']).unwrap();
        a.set_initial("p", mp(0)).unwrap();
        a.set_final("q", mp(0)).unwrap();
        a.set_transition("p", 'a', "q", mp(1)).unwrap();
        // "dead" is reachable but cannot reach a final state.
        a.set_transition("p", 'a', "dead", mp(0)).unwrap();
        let t = a.trimmed();
        assert_eq!(t.states(), &["p".to_string(), "q".to_string()]);
        for word in ["", "a", "aa"] {
            assert_eq!(t.evaluate(word).unwrap(), a.evaluate(word).unwrap());
        }
    }

    #[test]
    fn trimming_can_empty_the_automaton() {
        let sr = Semiring::MaxPlus;
        let mut a = Automaton::new(sr, &["p"], &['a']).unwrap();
        a.set_initial("p", Weight::one(sr)).unwrap();
        // No final weight: nothing is co-accessible.
        let t = a.trimmed();
        assert_eq!(t.dim(), 0);
        assert_eq!(t.evaluate("a").unwrap(), Weight::zero(sr));
    }

    #[test]
    fn abstraction_preserves_support() {
        let a = trailing_a_counter();
        let b = a.abstracted();
        assert_eq!(b.semiring(), Semiring::Bool);
        for word in ["", "b", "ba", "aaa"] {
            let defined = !a.evaluate(word).unwrap().is_zero();
            let accepted = !b.evaluate(word).unwrap().is_zero();
            assert_eq!(defined, accepted);
        }
    }
}
