//! Plain-arithmetic reference implementations of the corpus statistics.
//!
//! Each oracle computes its value directly from the word — counting letters,
//! scanning blocks, or folding over `#`-separated sections — with no automata
//! involved. Min-plus oracles use ∞ where no witness exists (for example no
//! b-block); max-plus oracles use −∞, which prints as `inf` under the
//! max-plus tag because it is that semiring's infinite absorbing value.

use crate::semiring::{Semiring, Weight};

fn fin(semiring: Semiring, n: u64) -> Weight {
    Weight::nat(semiring, n).expect("oracle value")
}

fn inf(semiring: Semiring) -> Weight {
    Weight::infinite(semiring).expect("oracle value")
}

fn count(w: &str, letter: char) -> u64 {
    w.chars().filter(|&c| c == letter).count() as u64
}

/// Streams the length of each maximal b-block of `w`, in order.
fn fold_b_blocks(w: &str, mut visit: impl FnMut(u64)) {
    let mut run = 0u64;
    for c in w.chars() {
        if c == 'b' {
            run += 1;
        } else if run > 0 {
            visit(run);
            run = 0;
        }
    }
    if run > 0 {
        visit(run);
    }
}

/// Lengths of the maximal b-blocks of `w`, in order.
#[cfg(test)]
fn b_blocks(w: &str) -> Vec<u64> {
    let mut blocks = Vec::new();
    fold_b_blocks(w, |run| blocks.push(run));
    blocks
}

/// Streams (#a in the prefix) + (#b in the suffix) over all split points.
fn fold_split_values(w: &str, mut visit: impl FnMut(u64)) {
    let total_b = count(w, 'b');
    let mut a_before = 0u64;
    let mut b_before = 0u64;
    visit(total_b);
    for c in w.chars() {
        if c == 'a' {
            a_before += 1;
        } else if c == 'b' {
            b_before += 1;
        }
        visit(a_before + (total_b - b_before));
    }
}

/// Values of (#a in the prefix) + (#b in the suffix) over all split points.
#[cfg(test)]
fn split_values(w: &str) -> Vec<u64> {
    let mut values = Vec::with_capacity(w.len() + 1);
    fold_split_values(w, |v| values.push(v));
    values
}

/// Number of trailing a's; ∞ on words with no b.
pub fn f1(w: &str) -> Weight {
    match w.chars().rev().position(|c| c == 'b') {
        Some(tail) => fin(Semiring::MinPlus, tail as u64),
        None => inf(Semiring::MinPlus),
    }
}

/// min(#a, #b).
pub fn f2(w: &str) -> Weight {
    fin(Semiring::MinPlus, count(w, 'a').min(count(w, 'b')))
}

/// Min over split points of (#a before the split) + (#b after it).
pub fn f3(w: &str) -> Weight {
    let mut best = u64::MAX;
    fold_split_values(w, |v| best = best.min(v));
    fin(Semiring::MinPlus, best)
}

/// Length of the shortest maximal b-block; ∞ without any b.
pub fn f4(w: &str) -> Weight {
    let mut best: Option<u64> = None;
    fold_b_blocks(w, |run| best = Some(best.map_or(run, |b| b.min(run))));
    match best {
        Some(n) => fin(Semiring::MinPlus, n),
        None => inf(Semiring::MinPlus),
    }
}

/// Sum over `#`-sections of [`f2`].
pub fn f5(w: &str) -> Weight {
    let mut total = 0u64;
    for section in w.split('#') {
        total += count(section, 'a').min(count(section, 'b'));
    }
    fin(Semiring::MinPlus, total)
}

/// Sum over `#`-sections of [`f4`]; ∞ as soon as one section has no b.
pub fn f6(w: &str) -> Weight {
    let mut total = 0u64;
    for section in w.split('#') {
        let mut shortest: Option<u64> = None;
        fold_b_blocks(section, |run| {
            shortest = Some(shortest.map_or(run, |b| b.min(run)));
        });
        match shortest {
            Some(n) => total += n,
            None => return inf(Semiring::MinPlus),
        }
    }
    fin(Semiring::MinPlus, total)
}

/// Max over split points of (#a before the split) + (#b after it).
pub fn g3(w: &str) -> Weight {
    let mut best = 0u64;
    fold_split_values(w, |v| best = best.max(v));
    fin(Semiring::MaxPlus, best)
}

/// Length of the longest maximal b-block; −∞ without any b.
pub fn g4(w: &str) -> Weight {
    let mut best: Option<u64> = None;
    fold_b_blocks(w, |run| best = Some(best.map_or(run, |b| b.max(run))));
    match best {
        Some(n) => fin(Semiring::MaxPlus, n),
        None => inf(Semiring::MaxPlus),
    }
}

/// Sum over `#`-sections of max(#a, #b).
pub fn g5(w: &str) -> Weight {
    let mut total = 0u64;
    for section in w.split('#') {
        total += count(section, 'a').max(count(section, 'b'));
    }
    fin(Semiring::MaxPlus, total)
}

/// Sum over `#`-sections of [`g3`].
pub fn g6(w: &str) -> Weight {
    let mut total = 0u64;
    for section in w.split('#') {
        let mut best = 0u64;
        fold_split_values(section, |v| best = best.max(v));
        total += best;
    }
    fin(Semiring::MaxPlus, total)
}
