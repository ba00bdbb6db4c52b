//! Idempotent factorization of pumpable factors and enumeration of
//! refinement universes.
//!
//! A split `(i, j)` of a factor `v` keeps the infix `y = v[i..j]` (char
//! positions, 0-based, `0 ≤ i < j ≤ |v|`). The split is *admissible* for a
//! handle when the abstraction of `y`'s transition matrix is idempotent in
//! every component automaton — which guarantees that every power `yᵏ` has
//! the same abstract action, the property all pumping arguments lean on.
//! Oracle-backed handles carry no state space, so every split is admissible
//! for them.
//!
//! Splits of one factor are ordered by ascending end `j`, then descending
//! start `i`; the first admissible split is the *canonical* one — the
//! earliest-ending admissible infix, and the shortest such infix on ties.
//! The canonical split heads every per-factor list, so the first element of
//! the enumerated universe is the canonical refinement.
//!
//! Ramsey-style bounds guarantee such splits exist for long factors, but
//! they are astronomically large; [`ramsey_bound`] is exposed for reporting
//! only and never used as a search budget.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::automaton::Automaton;
use crate::matrix::Matrix;

use super::{FunctionHandle, PumpError, PumpingRep, RefinedRep};

/// Hard cap on the number of refinements materialized per universe.
pub const REFINEMENT_CAP: usize = 10_000;

/// `3 · m!` — the guaranteed-factorization length bound for a transition
/// monoid of size `m`. Reporting only: the factorizer searches all splits
/// directly instead of assuming words this long.
pub fn ramsey_bound(monoid_size: u64) -> BigUint {
    let mut acc = BigUint::from(3u32);
    for k in 2..=monoid_size {
        acc *= k;
    }
    acc
}

/// Size of the abstract transition monoid of `a` (matrices of all words,
/// including the identity), stopping at `cap` elements. Returns the count
/// and whether it was truncated by the cap.
pub fn transition_monoid_size(a: &Automaton, cap: usize) -> (usize, bool) {
    let identity = Matrix::identity(a.semiring().abstraction_target(), a.dim());
    let generators: Vec<Matrix> = a
        .alphabet()
        .iter()
        .map(|&c| a.letter_matrix(c).expect("alphabet letter").abstracted())
        .collect();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut queue: Vec<Matrix> = Vec::new();
    let push = |m: Matrix, queue: &mut Vec<Matrix>, seen: &mut HashSet<Vec<u8>>| {
        let key: Vec<u8> = m.fingerprint();
        if seen.insert(key) {
            queue.push(m);
        }
    };
    push(identity, &mut queue, &mut seen);
    let mut next = 0;
    while next < queue.len() {
        if seen.len() >= cap {
            return (seen.len(), true);
        }
        let current = queue[next].clone();
        next += 1;
        for g in &generators {
            let product = current.mul(g).expect("same dimension");
            push(product, &mut queue, &mut seen);
        }
    }
    (seen.len(), false)
}

/// Char-position split list of `v` admissible for `components`, ordered by
/// ascending `j` then descending `i`. `None` components admit every split.
fn admissible_splits(
    components: Option<&[Automaton]>,
    v: &str,
    factor: usize,
) -> Result<Vec<(usize, usize)>, PumpError> {
    let chars: Vec<char> = v.chars().collect();
    let len = chars.len();
    let mut out = Vec::new();
    match components {
        None => {
            for j in 1..=len {
                for i in (0..j).rev() {
                    out.push((i, j));
                }
            }
        }
        Some(comps) => {
            // Grow each infix one letter at a time so testing all O(|v|²)
            // splits costs one matrix product per step instead of a full
            // word-matrix rebuild per split.
            for i in 0..len {
                let mut running: Vec<Matrix> = comps
                    .iter()
                    .map(|c| Matrix::identity(c.semiring(), c.dim()))
                    .collect();
                for j in i + 1..=len {
                    for (c, comp) in comps.iter().enumerate() {
                        let step = comp
                            .letter_matrix(chars[j - 1])
                            .map_err(PumpError::Eval)?;
                        running[c] = running[c].mul(step)?;
                    }
                    let mut all = true;
                    for m in &running {
                        if !m.is_abstract_idempotent()? {
                            all = false;
                            break;
                        }
                    }
                    if all {
                        out.push((i, j));
                    }
                }
            }
            // Canonical enumeration order: earliest end first, and on ties
            // the latest start (shortest infix) first.
            out.sort_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)));
        }
    }
    if out.is_empty() {
        return Err(PumpError::NoIdempotentInfix {
            word: v.to_string(),
            factor,
        });
    }
    Ok(out)
}

/// The canonical idempotent split of `v` for a single automaton: smallest
/// end `j`, then largest start `i`, such that the abstraction of the infix
/// `v[i..j]`'s matrix is idempotent.
pub fn factorize_idempotent(a: &Automaton, v: &str) -> Result<(usize, usize), PumpError> {
    if v.is_empty() {
        return Err(PumpError::params("cannot factorize an empty word"));
    }
    let splits = admissible_splits(Some(std::slice::from_ref(a)), v, 1)?;
    Ok(splits[0])
}

/// All refinements of `rep` admissible for `handle`, deduplicated and
/// deterministically ordered.
pub struct RefinementUniverse {
    /// Refinements in enumeration order; index 0 is the canonical one.
    pub refinements: Vec<RefinedRep>,
    /// Total number of distinct refinements (may exceed what was kept).
    pub total: BigUint,
    /// True when the cap cut enumeration short of `total`.
    pub truncated: bool,
}

/// Distinct pumping behaviors of factor k are determined by the probe words
/// `w({k}, 0)`, `w({k}, 2)`, `w({k}, 3)` — the word with the kept infix
/// deleted, squared, and cubed. Splits with equal probes are
/// interchangeable in every check, so only the first of each probe class is
/// kept (e.g. all single-letter infixes of `bbb` pump identically).
fn dedup_by_probes(
    rep: &PumpingRep,
    factor: usize,
    splits: Vec<(usize, usize)>,
) -> Vec<(usize, usize)> {
    let prefix = rep.prefix_before(factor);
    let suffix = rep.suffix_after(factor);
    let chars: Vec<char> = rep.factors()[factor - 1].chars().collect();
    let mut seen: HashSet<String> = HashSet::new();
    let mut kept = Vec::new();
    for (i, j) in splits {
        let x: String = chars[..i].iter().collect();
        let y: String = chars[i..j].iter().collect();
        let z: String = chars[j..].iter().collect();
        let mut key = String::new();
        for reps in [0usize, 2, 3] {
            key.push_str(&prefix);
            key.push_str(&x);
            for _ in 0..reps {
                key.push_str(&y);
            }
            key.push_str(&z);
            key.push_str(&suffix);
            key.push('\u{1}');
        }
        if seen.insert(key) {
            kept.push((i, j));
        }
    }
    kept
}

/// The canonical refinement of `rep` for `handle`: every factor is split at
/// its canonical admissible position.
pub fn refine_rep(handle: &FunctionHandle, rep: &PumpingRep) -> Result<RefinedRep, PumpError> {
    let mut splits = Vec::with_capacity(rep.factor_count());
    for k in 1..=rep.factor_count() {
        let admissible = admissible_splits(handle.components(), &rep.factors()[k - 1], k)?;
        splits.push(admissible[0]);
    }
    Ok(RefinedRep::from_splits(rep, &splits))
}

/// Enumerate the refinement universe of `rep` for `handle`.
///
/// Per factor, admissible splits are listed canonically-first and
/// deduplicated by probe words; the universe is the cartesian product in
/// lexicographic order (factor 1 most significant), truncated at `cap`.
pub fn refinement_universe(
    handle: &FunctionHandle,
    rep: &PumpingRep,
    cap: usize,
) -> Result<RefinementUniverse, PumpError> {
    let n = rep.factor_count();
    let mut per_factor: Vec<Vec<(usize, usize)>> = Vec::with_capacity(n);
    for k in 1..=n {
        let admissible = admissible_splits(handle.components(), &rep.factors()[k - 1], k)?;
        per_factor.push(dedup_by_probes(rep, k, admissible));
    }
    let mut total = BigUint::one();
    for list in &per_factor {
        total *= list.len();
    }
    let keep: usize = if total <= BigUint::from(cap) {
        total.to_usize().expect("total fits when below the cap")
    } else {
        cap
    };
    let truncated = total > BigUint::from(keep);

    let mut refinements = Vec::with_capacity(keep);
    let mut odometer = vec![0usize; n];
    for _ in 0..keep {
        let splits: Vec<(usize, usize)> = odometer
            .iter()
            .enumerate()
            .map(|(k, &d)| per_factor[k][d])
            .collect();
        refinements.push(RefinedRep::from_splits(rep, &splits));
        // Advance the odometer, least significant digit last.
        for k in (0..n).rev() {
            odometer[k] += 1;
            if odometer[k] < per_factor[k].len() {
                break;
            }
            odometer[k] = 0;
        }
    }
    Ok(RefinementUniverse {
        refinements,
        total,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::semiring::Semiring;

    #[test]
    fn ramsey_bound_is_three_factorial() {
        assert_eq!(ramsey_bound(1), BigUint::from(3u32));
        assert_eq!(ramsey_bound(4), BigUint::from(72u32)); // 3·24
        // 3·20! has 19 digits; sanity-check the magnitude only.
        assert!(ramsey_bound(20).to_string().len() >= 19);
    }

    #[test]
    fn monoid_size_of_w3_is_small() {
        let (size, capped) = transition_monoid_size(&corpus::machine("w3").unwrap(), 1000);
        assert!(!capped);
        // Identity, M_a-support, and their products: upper-triangular
        // reflexive matrices stabilize quickly.
        assert!((2..=8).contains(&size), "got {size}");
    }

    #[test]
    fn canonical_split_prefers_small_end_then_late_start() {
        let w3 = corpus::machine("w3").unwrap();
        // Every letter of w3 acts idempotently, so (0, 1) wins.
        assert_eq!(factorize_idempotent(&w3, "ab").unwrap(), (0, 1));
        assert_eq!(factorize_idempotent(&w3, "bbb").unwrap(), (0, 1));
    }

    #[test]
    fn non_idempotent_single_letter_forces_longer_infix() {
        // Letter rotation: a maps 0→1, 1→0; abstraction of M_a is not
        // idempotent, but M_aa is the identity support, which is.
        let mut a = Automaton::new(Semiring::MinPlus, &["s0", "s1"], &['a']).unwrap();
        let w = |n| crate::semiring::Weight::nat(Semiring::MinPlus, n).unwrap();
        a.set_initial("s0", w(0)).unwrap();
        a.set_final("s0", w(0)).unwrap();
        a.set_transition("s0", 'a', "s1", w(0)).unwrap();
        a.set_transition("s1", 'a', "s0", w(0)).unwrap();
        assert!(matches!(
            factorize_idempotent(&a, "a"),
            Err(PumpError::NoIdempotentInfix { .. })
        ));
        assert_eq!(factorize_idempotent(&a, "aa").unwrap(), (0, 2));
        // For aaa the earliest end with an idempotent infix is j = 2.
        assert_eq!(factorize_idempotent(&a, "aaa").unwrap(), (0, 2));
    }

    #[test]
    fn oracle_universe_dedups_uniform_factors() {
        let f2 = FunctionHandle::from_oracle("f2", Semiring::MinPlus, corpus::oracles::f2);
        let rep = PumpingRep::single("aaaa", "bbb", "").unwrap();
        let universe = refinement_universe(&f2, &rep, REFINEMENT_CAP).unwrap();
        // Splits of bbb pump identically per kept length: 3 classes.
        assert_eq!(universe.refinements.len(), 3);
        assert_eq!(universe.total, BigUint::from(3u32));
        assert!(!universe.truncated);
        assert_eq!(universe.refinements[0].kept(), &["b".to_string()]);
    }

    #[test]
    fn universe_is_a_lexicographic_product() {
        let f5 = FunctionHandle::from_oracle("f5", Semiring::MinPlus, corpus::oracles::f5);
        let rep = PumpingRep::new(
            vec!["".into(), "".into(), "#".into()],
            vec!["aaa".into(), "bbb".into()],
        )
        .unwrap();
        let universe = refinement_universe(&f5, &rep, REFINEMENT_CAP).unwrap();
        assert_eq!(universe.refinements.len(), 9);
        // Canonical first: both factors keep their first single letter.
        assert_eq!(
            universe.refinements[0].kept(),
            &["a".to_string(), "b".to_string()]
        );
        // Least significant factor varies fastest.
        assert_eq!(
            universe.refinements[1].kept(),
            &["a".to_string(), "bb".to_string()]
        );
        assert_eq!(
            universe.refinements[3].kept(),
            &["aa".to_string(), "b".to_string()]
        );
    }

    #[test]
    fn cap_marks_exhaustion() {
        let f2 = FunctionHandle::from_oracle("f2", Semiring::MinPlus, corpus::oracles::f2);
        let rep = PumpingRep::single("", "bbbb", "").unwrap();
        let universe = refinement_universe(&f2, &rep, 2).unwrap();
        assert_eq!(universe.refinements.len(), 2);
        assert_eq!(universe.total, BigUint::from(4u32));
        assert!(universe.truncated);
    }

    #[test]
    fn wa_backing_filters_inadmissible_splits() {
        // Rotation automaton again: only even-length infixes of a⁴ are
        // idempotent, so the universe over a⁴ has kept lengths {2, 4}.
        let mut a = Automaton::new(Semiring::MinPlus, &["s0", "s1"], &['a']).unwrap();
        let w = |n| crate::semiring::Weight::nat(Semiring::MinPlus, n).unwrap();
        a.set_initial("s0", w(0)).unwrap();
        a.set_final("s0", w(0)).unwrap();
        a.set_transition("s0", 'a', "s1", w(0)).unwrap();
        a.set_transition("s1", 'a', "s0", w(0)).unwrap();
        let h = FunctionHandle::from_automaton("rot", a);
        let rep = PumpingRep::single("", "aaaa", "").unwrap();
        let universe = refinement_universe(&h, &rep, REFINEMENT_CAP).unwrap();
        let lens: Vec<usize> = universe
            .refinements
            .iter()
            .map(|r| r.kept()[0].chars().count())
            .collect();
        assert_eq!(lens, vec![2, 4]);
    }
}
