//! Conversion of unambiguous tropical automata into plus-times automata
//! computing the same values.
//!
//! An unambiguous min-plus or max-plus automaton has at most one accepting
//! run per word, so its value on an accepted word is the plain sum
//! `num(I) + num(t₁) + … + num(tₙ) + num(F)` of that run's weights. The
//! conversion realises this sum as a *count* of weighted runs in the
//! plus-times semiring:
//!
//! * **Value part** — two copies `q.lo` / `q.hi` of every state. A run
//!   starts low and crosses to the high layer at exactly one point; the
//!   crossing carries the numeric weight of the component it crosses at
//!   (initial weight, one transition, or final weight) and everything else
//!   carries 1. Summing over the crossing points of the unique accepting
//!   run reproduces the tropical value.
//! * **Gap part** — a determinisation `co.0, co.1, …` of the support with
//!   final weight ∞ on the subsets containing no accepting state. It
//!   contributes ∞ exactly on the words the tropical automaton maps to its
//!   infinite absorbing value, and nothing elsewhere.
//!
//! The two parts are joined as a disjoint union. Generated state names use
//! the `.lo` / `.hi` / `co.` scheme; input states that already use those
//! exact names are rejected as duplicates when the output is assembled.

use std::collections::HashMap;

use num_bigint::BigUint;
use thiserror::Error;

use crate::ambiguity;
use crate::automaton::{Automaton, AutomatonError};
use crate::semiring::{Semiring, Weight};

/// Largest number of reachable support subsets the gap part may contain.
const SUBSET_CAP: usize = 1 << 16;

/// Failures of [`unambiguous_to_plus_times`].
#[derive(Debug, Error)]
pub enum ConvertError {
    /// Input is not over a tropical semiring.
    #[error("conversion needs a min-plus or max-plus automaton, got {0}")]
    NotTropical(Semiring),
    /// Input has a word with two accepting runs.
    #[error("conversion needs an unambiguous automaton")]
    NotUnambiguous,
    /// The determinised support grew past [`SUBSET_CAP`] subsets.
    #[error("support determinisation exceeded {cap} subsets")]
    TooLarge { cap: usize },
    /// State bookkeeping failed (for example a name clash with generated
    /// `.lo`/`.hi`/`co.` states).
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

fn numeric(w: &Weight) -> BigUint {
    w.as_finite()
        .expect("non-absorbing tropical weights are finite")
        .clone()
}

/// Convert an unambiguous tropical automaton into a plus-times automaton
/// with the same values (reading both infinite absorbing values as ∞).
pub fn unambiguous_to_plus_times(a: &Automaton) -> Result<Automaton, ConvertError> {
    match a.semiring() {
        Semiring::MinPlus | Semiring::MaxPlus => {}
        other => return Err(ConvertError::NotTropical(other)),
    }
    if !ambiguity::is_unambiguous(a)? {
        return Err(ConvertError::NotUnambiguous);
    }

    let n = a.dim();
    let pt = Semiring::PlusTimes;
    let alphabet: Vec<char> = a.alphabet().to_vec();

    // Discover the reachable support subsets for the gap part.
    let start: Vec<usize> = (0..n)
        .filter(|&q| !a.initial_weights()[q].is_zero())
        .collect();
    let mut subset_index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subsets: Vec<Vec<usize>> = vec![start.clone()];
    subset_index.insert(start, 0);
    let mut subset_steps: Vec<(usize, char, usize)> = Vec::new();
    let mut frontier = 0;
    while frontier < subsets.len() {
        let current = subsets[frontier].clone();
        for &letter in &alphabet {
            let m = a.letter_matrix(letter).expect("alphabet letter");
            let mut next: Vec<usize> = Vec::new();
            for q in 0..n {
                if current.iter().any(|&p| !m.get(p, q).is_zero()) {
                    next.push(q);
                }
            }
            let target = match subset_index.get(&next) {
                Some(&i) => i,
                None => {
                    if subsets.len() >= SUBSET_CAP {
                        return Err(ConvertError::TooLarge { cap: SUBSET_CAP });
                    }
                    subsets.push(next.clone());
                    subset_index.insert(next, subsets.len() - 1);
                    subsets.len() - 1
                }
            };
            subset_steps.push((frontier, letter, target));
        }
        frontier += 1;
    }

    let lo: Vec<String> = a.states().iter().map(|q| format!("{q}.lo")).collect();
    let hi: Vec<String> = a.states().iter().map(|q| format!("{q}.hi")).collect();
    let co: Vec<String> = (0..subsets.len()).map(|i| format!("co.{i}")).collect();
    let names: Vec<&str> = lo
        .iter()
        .chain(hi.iter())
        .chain(co.iter())
        .map(String::as_str)
        .collect();
    let mut b = Automaton::new(pt, &names, &alphabet)?;

    let one = Weight::one(pt);
    let fin = |m: BigUint| Weight::finite(pt, m).expect("plus-times natural");

    // Value part: weights of the original become layer-crossing weights.
    for q in 0..n {
        let iw = &a.initial_weights()[q];
        if !iw.is_zero() {
            b.set_initial(&lo[q], one.clone())?;
            b.set_initial(&hi[q], fin(numeric(iw)))?;
        }
        let fw = &a.final_weights()[q];
        if !fw.is_zero() {
            b.set_final(&lo[q], fin(numeric(fw)))?;
            b.set_final(&hi[q], one.clone())?;
        }
    }
    for &letter in &alphabet {
        let m = a.letter_matrix(letter).expect("alphabet letter");
        for p in 0..n {
            for q in 0..n {
                let w = m.get(p, q);
                if w.is_zero() {
                    continue;
                }
                b.set_transition(&lo[p], letter, &lo[q], one.clone())?;
                b.set_transition(&hi[p], letter, &hi[q], one.clone())?;
                b.set_transition(&lo[p], letter, &hi[q], fin(numeric(w)))?;
            }
        }
    }

    // Gap part: deterministic on subsets, ∞ on co-final-free subsets.
    b.set_initial(&co[0], one.clone())?;
    for (i, subset) in subsets.iter().enumerate() {
        let accepting = subset.iter().any(|&q| !a.final_weights()[q].is_zero());
        if !accepting {
            b.set_final(&co[i], Weight::infinite(pt).expect("plus-times inf"))?;
        }
    }
    for (src, letter, dst) in subset_steps {
        b.set_transition(&co[src], letter, &co[dst], one.clone())?;
    }

    Ok(b)
}
