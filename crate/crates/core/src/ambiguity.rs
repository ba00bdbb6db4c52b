//! Degree of ambiguity of a weighted automaton.
//!
//! The number of accepting runs an automaton admits, as a function of the
//! input word's length, is either bounded (the automaton is *unambiguous*
//! when the bound is 1, *finitely ambiguous* otherwise), *polynomially
//! ambiguous*, or *exponentially ambiguous* — no other growth regimes exist.
//! Which regime holds is decidable from two structural criteria on the
//! trimmed automaton's transition support (weights only matter through
//! being 𝟘 or not):
//!
//! * **Doubling cycle** (exponential growth): some useful state p carries
//!   two *distinct* cycles labelled by the same word. Detected on the
//!   2-fold self-product: a diagonal pair (p, p) shares a strongly
//!   connected component with an off-diagonal pair.
//! * **Drift pattern** (at least polynomial growth): useful states p ≠ q
//!   and a word v with p →v→ p, p →v→ q and q →v→ q simultaneously.
//!   Detected on the 3-fold self-product: (p, p, q) reaches (p, q, q).
//!
//! A doubling cycle implies exponential ambiguity; otherwise a drift
//! pattern implies polynomial ambiguity; otherwise ambiguity is finite,
//! and an automaton with no two accepting runs on any word (checked on the
//! 2-fold product with an "already diverged" flag) is unambiguous.
//!
//! All searches run in breadth-first order over state indices, so reported
//! witnesses are deterministic and shortest-first.

use crate::automaton::{Automaton, AutomatonError};
use serde::Serialize;
use std::collections::VecDeque;
use std::fmt;

/// Growth regime of the number of accepting runs per word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Degree {
    Unambiguous,
    FinitelyAmbiguous,
    PolynomiallyAmbiguous,
    ExponentiallyAmbiguous,
}

impl Degree {
    pub fn name(self) -> &'static str {
        match self {
            Degree::Unambiguous => "unambiguous",
            Degree::FinitelyAmbiguous => "finitely-ambiguous",
            Degree::PolynomiallyAmbiguous => "polynomially-ambiguous",
            Degree::ExponentiallyAmbiguous => "exponentially-ambiguous",
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A state with two distinct cycles on the same word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoublingCycle {
    /// State carrying both cycles.
    pub state: String,
    /// Word labelling both cycles.
    pub word: String,
}

/// States p ≠ q with p →v→ p, p →v→ q, q →v→ q on one word v.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DriftPattern {
    pub from: String,
    pub to: String,
    /// The word v realizing all three paths.
    pub word: String,
}

/// Everything the classifier establishes about one automaton.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub degree: Degree,
    /// States of the trimmed automaton the criteria were evaluated on.
    pub trimmed_states: Vec<String>,
    /// Shortest word with at least two accepting runs, when one exists.
    pub ambiguous_word: Option<String>,
    pub doubling_cycle: Option<DoublingCycle>,
    pub drift_pattern: Option<DriftPattern>,
}

/// Per-state successor lists of the trimmed support graph.
struct Support {
    states: Vec<String>,
    alphabet: Vec<char>,
    /// succ[p] = (letter index, q) for every non-𝟘 transition p → q.
    succ: Vec<Vec<(usize, usize)>>,
    initial: Vec<bool>,
    final_: Vec<bool>,
}

impl Support {
    fn of(t: &Automaton) -> Result<Support, AutomatonError> {
        let n = t.dim();
        let mut succ = vec![Vec::new(); n];
        for (a, &c) in t.alphabet().iter().enumerate() {
            let m = t.letter_matrix(c)?;
            for (p, row) in succ.iter_mut().enumerate() {
                for q in 0..n {
                    if !m.get(p, q).is_zero() {
                        row.push((a, q));
                    }
                }
            }
        }
        Ok(Support {
            states: t.states().to_vec(),
            alphabet: t.alphabet().to_vec(),
            succ,
            initial: t.initial_weights().iter().map(|w| !w.is_zero()).collect(),
            final_: t.final_weights().iter().map(|w| !w.is_zero()).collect(),
        })
    }

    fn n(&self) -> usize {
        self.states.len()
    }

    fn word(&self, letters: &[usize]) -> String {
        letters.iter().map(|&a| self.alphabet[a]).collect()
    }
}

/// Classify a weighted automaton's ambiguity; the automaton is trimmed
/// first, so useless states never influence the verdict.
pub fn classify(a: &Automaton) -> Result<Classification, AutomatonError> {
    let t = a.trimmed();
    let sup = Support::of(&t)?;
    if sup.n() == 0 {
        return Ok(Classification {
            degree: Degree::Unambiguous,
            trimmed_states: Vec::new(),
            ambiguous_word: None,
            doubling_cycle: None,
            drift_pattern: None,
        });
    }
    let doubling_cycle = find_doubling_cycle(&sup);
    let drift_pattern = find_drift_pattern(&sup);
    let ambiguous_word = find_ambiguous_word(&sup);
    let degree = if doubling_cycle.is_some() {
        Degree::ExponentiallyAmbiguous
    } else if drift_pattern.is_some() {
        Degree::PolynomiallyAmbiguous
    } else if ambiguous_word.is_some() {
        Degree::FinitelyAmbiguous
    } else {
        Degree::Unambiguous
    };
    Ok(Classification {
        degree,
        trimmed_states: sup.states.clone(),
        ambiguous_word,
        doubling_cycle,
        drift_pattern,
    })
}

/// Whether no word has two distinct accepting runs.
pub fn is_unambiguous(a: &Automaton) -> Result<bool, AutomatonError> {
    let t = a.trimmed();
    let sup = Support::of(&t)?;
    Ok(find_ambiguous_word(&sup).is_none())
}

/// BFS through `succ` from `start`, recording (parent node, letter) links;
/// returns the predecessor array (usize::MAX for unreached, start maps to
/// itself with letter usize::MAX).
fn bfs(
    node_count: usize,
    start: &[usize],
    succ: impl Fn(usize, &mut Vec<(usize, usize)>),
) -> Vec<Option<(usize, usize)>> {
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; node_count];
    let mut seen = vec![false; node_count];
    let mut queue = VecDeque::new();
    for &s in start {
        if !seen[s] {
            seen[s] = true;
            parent[s] = Some((s, usize::MAX));
            queue.push_back(s);
        }
    }
    let mut buf = Vec::new();
    while let Some(u) = queue.pop_front() {
        buf.clear();
        succ(u, &mut buf);
        for &(v, a) in &buf {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some((u, a));
                queue.push_back(v);
            }
        }
    }
    parent
}

/// Read the letter sequence leading from a BFS start node to `target`.
fn unwind(parent: &[Option<(usize, usize)>], mut target: usize) -> Vec<usize> {
    let mut letters = Vec::new();
    while let Some((prev, a)) = parent[target] {
        if a == usize::MAX {
            break;
        }
        letters.push(a);
        target = prev;
    }
    letters.reverse();
    letters
}

/// Shortest word with two distinct accepting runs, via the 2-fold product
/// with a "runs have diverged" flag.
fn find_ambiguous_word(sup: &Support) -> Option<String> {
    let n = sup.n();
    // Node encoding: ((p * n) + q) * 2 + diverged.
    let node = |p: usize, q: usize, d: usize| (p * n + q) * 2 + d;
    let mut starts = Vec::new();
    for p in 0..n {
        if !sup.initial[p] {
            continue;
        }
        for q in 0..n {
            if sup.initial[q] {
                starts.push(node(p, q, usize::from(p != q)));
            }
        }
    }
    let parent = bfs(n * n * 2, &starts, |u, out| {
        let d = u % 2;
        let pq = u / 2;
        let (p, q) = (pq / n, pq % n);
        for &(a, p2) in &sup.succ[p] {
            for &(b, q2) in &sup.succ[q] {
                if a == b {
                    let d2 = if p2 != q2 { 1 } else { d };
                    out.push((node(p2, q2, d2), a));
                }
            }
        }
    });
    // Accept at any final pair that has diverged; BFS order makes the first
    // reached target the shortest witness.
    let mut best: Option<Vec<usize>> = None;
    for p in 0..n {
        if !sup.final_[p] {
            continue;
        }
        for q in 0..n {
            if !sup.final_[q] {
                continue;
            }
            let t = node(p, q, 1);
            if parent[t].is_some() {
                let letters = unwind(&parent, t);
                if best.as_ref().map_or(true, |b| letters.len() < b.len()) {
                    best = Some(letters);
                }
            }
        }
    }
    best.map(|letters| sup.word(&letters))
}

/// Strongly connected components of the 2-fold product (Kosaraju); returns
/// a component id per node.
fn pair_sccs(sup: &Support) -> Vec<usize> {
    let n = sup.n();
    let nodes = n * n;
    let mut fwd = vec![Vec::new(); nodes];
    let mut rev = vec![Vec::new(); nodes];
    for p in 0..n {
        for &(a, p2) in &sup.succ[p] {
            for q in 0..n {
                for &(b, q2) in &sup.succ[q] {
                    if a == b {
                        fwd[p * n + q].push(p2 * n + q2);
                        rev[p2 * n + q2].push(p * n + q);
                    }
                }
            }
        }
    }
    // Iterative DFS post-order on the forward graph.
    let mut order = Vec::with_capacity(nodes);
    let mut seen = vec![false; nodes];
    for s in 0..nodes {
        if seen[s] {
            continue;
        }
        let mut stack = vec![(s, 0usize)];
        seen[s] = true;
        while let Some(&mut (u, ref mut i)) = stack.last_mut() {
            if *i < fwd[u].len() {
                let v = fwd[u][*i];
                *i += 1;
                if !seen[v] {
                    seen[v] = true;
                    stack.push((v, 0));
                }
            } else {
                order.push(u);
                stack.pop();
            }
        }
    }
    // Assign components on the reverse graph in reverse post-order.
    let mut comp = vec![usize::MAX; nodes];
    let mut next = 0;
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = next;
        while let Some(u) = stack.pop() {
            for &v in &rev[u] {
                if comp[v] == usize::MAX {
                    comp[v] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    comp
}

/// Find a state with two distinct same-word cycles: a diagonal product pair
/// sharing its strongly connected component with an off-diagonal pair.
fn find_doubling_cycle(sup: &Support) -> Option<DoublingCycle> {
    let n = sup.n();
    let comp = pair_sccs(sup);
    for p in 0..n {
        let c = comp[p * n + p];
        // Deterministic choice: smallest off-diagonal (r, s) in index order.
        let off = (0..n * n).find(|&rs| comp[rs] == c && rs / n != rs % n);
        if let Some(target) = off {
            return Some(doubling_witness(sup, &comp, p, target));
        }
    }
    None
}

/// Build the witness for a diagonal pair (p, p) sharing its component with
/// the off-diagonal pair `target`: walk to the off-diagonal pair and back,
/// staying inside the component so both legs exist.
fn doubling_witness(
    sup: &Support,
    comp: &[usize],
    p: usize,
    target: usize,
) -> DoublingCycle {
    let n = sup.n();
    let diag = p * n + p;
    let within = |u: usize, out: &mut Vec<(usize, usize)>| {
        let (x, y) = (u / n, u % n);
        for &(a, x2) in &sup.succ[x] {
            for &(b, y2) in &sup.succ[y] {
                if a == b && comp[x2 * n + y2] == comp[diag] {
                    out.push((x2 * n + y2, a));
                }
            }
        }
    };
    // Both legs stay inside the component, so both BFS searches succeed.
    let there = bfs(n * n, &[diag], within);
    let mut letters = unwind(&there, target);
    let back = bfs(n * n, &[target], within);
    letters.extend(unwind(&back, diag));
    DoublingCycle {
        state: sup.states[p].clone(),
        word: sup.word(&letters),
    }
}

/// Find p ≠ q and v with p →v→ p, p →v→ q, q →v→ q via 3-fold product
/// reachability from (p, p, q) to (p, q, q).
fn find_drift_pattern(sup: &Support) -> Option<DriftPattern> {
    let n = sup.n();
    let node = |x: usize, y: usize, z: usize| (x * n + y) * n + z;
    for p in 0..n {
        for q in 0..n {
            if p == q {
                continue;
            }
            let parent = bfs(n * n * n, &[node(p, p, q)], |u, out| {
                let (xy, z) = (u / n, u % n);
                let (x, y) = (xy / n, xy % n);
                for &(a, x2) in &sup.succ[x] {
                    for &(b, y2) in &sup.succ[y] {
                        if a != b {
                            continue;
                        }
                        for &(c, z2) in &sup.succ[z] {
                            if a == c {
                                out.push((node(x2, y2, z2), a));
                            }
                        }
                    }
                }
            });
            let target = node(p, q, q);
            if parent[target].is_some() {
                let letters = unwind(&parent, target);
                // The empty word trivially satisfies all three paths but
                // witnesses nothing; it can only appear here if p = q,
                // which the loop already excludes.
                return Some(DriftPattern {
                    from: sup.states[p].clone(),
                    to: sup.states[q].clone(),
                    word: sup.word(&letters),
                });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Semiring, Weight};
    use num_bigint::BigUint;

    fn mp(n: u64) -> Weight {
        Weight::nat(Semiring::MinPlus, n).unwrap()
    }

    /// Deterministic single-state machine: trivially unambiguous.
    fn deterministic_loop() -> Automaton {
        let sr = Semiring::MinPlus;
        let mut a = Automaton::new(sr, &["s"], &['a']).unwrap();
        a.set_initial("s", mp(0)).unwrap();
        a.set_final("s", mp(0)).unwrap();
        a.set_transition("s", 'a', "s", mp(1)).unwrap();
        a
    }

    /// Two disjoint loops, both initial and final: every word has exactly
    /// two accepting runs, so ambiguity is finite (bounded by 2).
    fn two_parallel_loops() -> Automaton {
        let sr = Semiring::MinPlus;
        let mut a = Automaton::new(sr, &["x", "y"], &['a', 'b']).unwrap();
        for s in ["x", "y"] {
            a.set_initial(s, mp(0)).unwrap();
            a.set_final(s, mp(0)).unwrap();
            a.set_transition(s, 'a', s, mp(0)).unwrap();
            a.set_transition(s, 'b', s, mp(0)).unwrap();
        }
        a
    }

    /// Guess-the-split machine: loop on the first state, nondeterministic
    /// hop to the second, loop there. One run per split point.
    fn split_guesser() -> Automaton {
        let sr = Semiring::MinPlus;
        let mut a = Automaton::new(sr, &["l", "r"], &['a']).unwrap();
        a.set_initial("l", mp(0)).unwrap();
        a.set_final("l", mp(0)).unwrap();
        a.set_final("r", mp(0)).unwrap();
        a.set_transition("l", 'a', "l", mp(1)).unwrap();
        a.set_transition("l", 'a', "r", mp(0)).unwrap();
        a.set_transition("r", 'a', "r", mp(0)).unwrap();
        a
    }

    /// Two distinct cycles on the same word at one state: the number of
    /// runs doubles with every repetition.
    fn doubling_machine() -> Automaton {
        let sr = Semiring::MinPlus;
        let mut a = Automaton::new(sr, &["h", "u", "v"], &['a', 'c']).unwrap();
        a.set_initial("h", mp(0)).unwrap();
        a.set_final("h", mp(0)).unwrap();
        a.set_transition("h", 'a', "u", mp(0)).unwrap();
        a.set_transition("h", 'a', "v", mp(0)).unwrap();
        a.set_transition("u", 'c', "h", mp(0)).unwrap();
        a.set_transition("v", 'c', "h", mp(1)).unwrap();
        a
    }

    #[test]
    fn deterministic_machine_is_unambiguous() {
        let c = classify(&deterministic_loop()).unwrap();
        assert_eq!(c.degree, Degree::Unambiguous);
        assert_eq!(c.ambiguous_word, None);
        assert!(is_unambiguous(&deterministic_loop()).unwrap());
    }

    #[test]
    fn parallel_loops_are_finitely_ambiguous() {
        let c = classify(&two_parallel_loops()).unwrap();
        assert_eq!(c.degree, Degree::FinitelyAmbiguous);
        // The empty word already has two runs (two initial+final states).
        assert_eq!(c.ambiguous_word.as_deref(), Some(""));
        assert_eq!(c.doubling_cycle, None);
        assert_eq!(c.drift_pattern, None);
    }

    #[test]
    fn split_guessing_is_polynomially_ambiguous() {
        let c = classify(&split_guesser()).unwrap();
        assert_eq!(c.degree, Degree::PolynomiallyAmbiguous);
        let d = c.drift_pattern.expect("drift pattern found");
        assert_eq!((d.from.as_str(), d.to.as_str()), ("l", "r"));
        assert_eq!(d.word, "a");
        // aⁿ has n+1 accepting runs.
        assert_eq!(
            split_guesser().count_runs("aaaa").unwrap(),
            BigUint::from(5u32)
        );
    }

    #[test]
    fn cycle_doubling_is_exponentially_ambiguous() {
        let a = doubling_machine();
        let c = classify(&a).unwrap();
        assert_eq!(c.degree, Degree::ExponentiallyAmbiguous);
        let w = c.doubling_cycle.expect("doubling cycle found");
        assert_eq!(w.state, "h");
        // Validate the witness semantically: the word, repeated k times,
        // multiplies the runs by 2ᵏ.
        let once = a.count_runs(&w.word).unwrap();
        let twice = a.count_runs(&w.word.repeat(2)).unwrap();
        assert_eq!(once, BigUint::from(2u32));
        assert_eq!(twice, BigUint::from(4u32));
    }

    #[test]
    fn useless_states_do_not_affect_the_verdict() {
        let sr = Semiring::MinPlus;
        let mut a = Automaton::new(sr, &["s", "dead1", "dead2"], &['a']).unwrap();
        a.set_initial("s", mp(0)).unwrap();
        a.set_final("s", mp(0)).unwrap();
        a.set_transition("s", 'a', "s", mp(0)).unwrap();
        // A doubling pattern among dead states must be ignored.
        a.set_transition("s", 'a', "dead1", mp(0)).unwrap();
        a.set_transition("s", 'a', "dead2", mp(0)).unwrap();
        a.set_transition("dead1", 'a', "dead1", mp(0)).unwrap();
        a.set_transition("dead2", 'a', "dead1", mp(0)).unwrap();
        let c = classify(&a).unwrap();
        assert_eq!(c.degree, Degree::Unambiguous);
        assert_eq!(c.trimmed_states, vec!["s".to_string()]);
    }

    #[test]
    fn empty_automaton_is_unambiguous() {
        let sr = Semiring::MinPlus;
        let a = Automaton::new(sr, &["s"], &['a']).unwrap();
        // No initial/final weights at all.
        let c = classify(&a).unwrap();
        assert_eq!(c.degree, Degree::Unambiguous);
        assert!(c.trimmed_states.is_empty());
    }
}
