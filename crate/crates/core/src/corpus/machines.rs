//! Constructors for the corpus automata.
//!
//! Each machine is written out as a literal table: initial weights, final
//! weights, and one `(src, letter, weight, dst)` row per transition. The
//! tables are deliberately explicit — they are the ground truth the rest of
//! the suite validates against, so nothing here is computed.

use crate::automaton::Automaton;
use crate::semiring::{Semiring, Weight};

/// Weight entry used by the table helper: `None` encodes the infinite value.
type W = Option<u64>;

const INF: W = None;

fn build(
    semiring: Semiring,
    states: &[&str],
    alphabet: &[char],
    initial: &[(&str, W)],
    finals: &[(&str, W)],
    trans: &[(&str, char, W, &str)],
) -> Automaton {
    let mut a = Automaton::new(semiring, states, alphabet).expect("corpus states/alphabet");
    let mk = |w: &W| -> Weight {
        match w {
            Some(n) => Weight::nat(semiring, *n).expect("corpus weight"),
            None => Weight::infinite(semiring).expect("corpus weight"),
        }
    };
    for (q, w) in initial {
        a.set_initial(q, mk(w)).expect("corpus init row");
    }
    for (q, w) in finals {
        a.set_final(q, mk(w)).expect("corpus final row");
    }
    for (src, letter, w, dst) in trans {
        a.set_transition(src, *letter, dst, mk(w))
            .expect("corpus trans row");
    }
    a
}

/// Min-plus, unambiguous: counts the trailing a's of any word containing a
/// `b`, and returns ∞ on b-free words (no accepting run exists for those).
pub fn w1() -> Automaton {
    build(
        Semiring::MinPlus,
        &["n0", "n1"],
        &['a', 'b'],
        &[("n0", Some(0))],
        &[("n1", Some(0))],
        &[
            ("n0", 'a', Some(0), "n0"),
            ("n1", 'a', Some(1), "n1"),
            ("n0", 'b', Some(0), "n0"),
            ("n0", 'b', Some(0), "n1"),
        ],
    )
}

/// Plus-times twin of [`w1`]: computes the same values by counting weighted
/// runs. The `m3` component contributes the ∞ branch on b-free words, and
/// `m2` is an isolated accepting state kept to exercise trimming.
pub fn w1p() -> Automaton {
    build(
        Semiring::PlusTimes,
        &["m0", "m1", "m2", "m3"],
        &['a', 'b'],
        &[("m0", Some(1)), ("m3", Some(1))],
        &[("m1", Some(1)), ("m2", Some(1)), ("m3", INF)],
        &[
            ("m0", 'a', Some(1), "m0"),
            ("m0", 'a', Some(1), "m1"),
            ("m1", 'a', Some(1), "m1"),
            ("m3", 'a', Some(1), "m3"),
            ("m0", 'b', Some(1), "m0"),
        ],
    )
}

/// Min-plus, finitely ambiguous: two parallel counters, one per letter;
/// the value is min(#a, #b).
pub fn w2() -> Automaton {
    build(
        Semiring::MinPlus,
        &["q0", "q1"],
        &['a', 'b'],
        &[("q0", Some(0)), ("q1", Some(0))],
        &[("q0", Some(0)), ("q1", Some(0))],
        &[
            ("q0", 'a', Some(1), "q0"),
            ("q1", 'a', Some(0), "q1"),
            ("q0", 'b', Some(0), "q0"),
            ("q1", 'b', Some(1), "q1"),
        ],
    )
}

/// Min-plus, polynomially ambiguous: guesses a split point, charges a's
/// before it and b's after it; the value is the min over all splits.
pub fn w3() -> Automaton {
    build(
        Semiring::MinPlus,
        &["q0", "q1"],
        &['a', 'b'],
        &[("q0", Some(0))],
        &[("q0", Some(0)), ("q1", Some(0))],
        &[
            ("q0", 'a', Some(1), "q0"),
            ("q0", 'a', Some(0), "q1"),
            ("q1", 'a', Some(0), "q1"),
            ("q0", 'b', Some(0), "q0"),
            ("q0", 'b', Some(0), "q1"),
            ("q1", 'b', Some(1), "q1"),
        ],
    )
}

/// Min-plus, polynomially ambiguous: guesses one maximal b-block and counts
/// its length; the value is the length of the shortest maximal b-block, and
/// ∞ when the word has no b at all.
pub fn w4() -> Automaton {
    build(
        Semiring::MinPlus,
        &["p5", "p0", "p1", "p2"],
        &['a', 'b'],
        &[("p5", Some(0)), ("p0", Some(0))],
        &[("p1", Some(0)), ("p2", Some(0))],
        &[
            ("p5", 'a', Some(0), "p5"),
            ("p5", 'a', Some(0), "p0"),
            ("p1", 'a', Some(0), "p2"),
            ("p2", 'a', Some(0), "p2"),
            ("p5", 'b', Some(0), "p5"),
            ("p0", 'b', Some(1), "p1"),
            ("p1", 'b', Some(1), "p1"),
            ("p2", 'b', Some(0), "p2"),
        ],
    )
}

/// Min-plus, exponentially ambiguous: words are `#`-separated sections, and
/// each section independently runs one of the two [`w2`] counters; the value
/// is the sum over sections of min(#a, #b).
pub fn w5() -> Automaton {
    build(
        Semiring::MinPlus,
        &["r0", "r1", "r2"],
        &['a', 'b', '#'],
        &[("r1", Some(0))],
        &[("r0", Some(0)), ("r1", Some(0)), ("r2", Some(0))],
        &[
            ("r0", 'a', Some(1), "r0"),
            ("r1", 'a', Some(1), "r0"),
            ("r1", 'a', Some(0), "r2"),
            ("r2", 'a', Some(0), "r2"),
            ("r0", 'b', Some(0), "r0"),
            ("r1", 'b', Some(0), "r0"),
            ("r1", 'b', Some(1), "r2"),
            ("r2", 'b', Some(1), "r2"),
            ("r0", '#', Some(0), "r1"),
            ("r1", '#', Some(0), "r1"),
            ("r2", '#', Some(0), "r1"),
        ],
    )
}

/// Min-plus, exponentially ambiguous: per `#`-section it runs the [`w4`]
/// block-guesser, summing the chosen block lengths; ∞ as soon as one
/// section has no b.
pub fn f6a() -> Automaton {
    build(
        Semiring::MinPlus,
        &["s0", "s1", "s2", "s3"],
        &['a', 'b', '#'],
        &[("s0", Some(0)), ("s1", Some(0))],
        &[("s2", Some(0)), ("s3", Some(0))],
        &[
            ("s0", 'a', Some(0), "s0"),
            ("s0", 'a', Some(0), "s1"),
            ("s2", 'a', Some(0), "s3"),
            ("s3", 'a', Some(0), "s3"),
            ("s0", 'b', Some(0), "s0"),
            ("s1", 'b', Some(1), "s2"),
            ("s2", 'b', Some(1), "s2"),
            ("s3", 'b', Some(0), "s3"),
            ("s2", '#', Some(0), "s0"),
            ("s2", '#', Some(0), "s1"),
            ("s3", '#', Some(0), "s0"),
            ("s3", '#', Some(0), "s1"),
        ],
    )
}

/// Max-plus mirror of [`w3`]: the value is the max over split points of
/// (#a before) + (#b after). State-changing transitions carry weight 1.
pub fn g3() -> Automaton {
    build(
        Semiring::MaxPlus,
        &["q0", "q1"],
        &['a', 'b'],
        &[("q0", Some(0))],
        &[("q0", Some(0)), ("q1", Some(0))],
        &[
            ("q0", 'a', Some(1), "q0"),
            ("q0", 'a', Some(1), "q1"),
            ("q1", 'a', Some(0), "q1"),
            ("q0", 'b', Some(0), "q0"),
            ("q0", 'b', Some(1), "q1"),
            ("q1", 'b', Some(1), "q1"),
        ],
    )
}

/// Max-plus block-guesser on the same support as [`w4`]: the value is the
/// length of the longest maximal b-block, −∞ when the word has no b.
pub fn g4() -> Automaton {
    build(
        Semiring::MaxPlus,
        &["p5", "p0", "p1", "p2"],
        &['a', 'b'],
        &[("p5", Some(0)), ("p0", Some(0))],
        &[("p1", Some(0)), ("p2", Some(0))],
        &[
            ("p5", 'a', Some(0), "p5"),
            ("p5", 'a', Some(0), "p0"),
            ("p1", 'a', Some(0), "p2"),
            ("p2", 'a', Some(0), "p2"),
            ("p5", 'b', Some(0), "p5"),
            ("p0", 'b', Some(1), "p1"),
            ("p1", 'b', Some(1), "p1"),
            ("p2", 'b', Some(0), "p2"),
        ],
    )
}

/// Max-plus section machine on the same support as [`w5`]: the value is the
/// sum over `#`-sections of max(#a, #b).
pub fn g5() -> Automaton {
    build(
        Semiring::MaxPlus,
        &["r0", "r1", "r2"],
        &['a', 'b', '#'],
        &[("r1", Some(0))],
        &[("r0", Some(0)), ("r1", Some(0)), ("r2", Some(0))],
        &[
            ("r0", 'a', Some(1), "r0"),
            ("r1", 'a', Some(1), "r0"),
            ("r1", 'a', Some(0), "r2"),
            ("r2", 'a', Some(0), "r2"),
            ("r0", 'b', Some(0), "r0"),
            ("r1", 'b', Some(0), "r0"),
            ("r1", 'b', Some(1), "r2"),
            ("r2", 'b', Some(1), "r2"),
            ("r0", '#', Some(0), "r1"),
            ("r1", '#', Some(0), "r1"),
            ("r2", '#', Some(0), "r1"),
        ],
    )
}

/// Max-plus section machine: per `#`-section it runs the [`g3`] split
/// guesser from the hub state `h`, summing the per-section maxima.
pub fn g6() -> Automaton {
    build(
        Semiring::MaxPlus,
        &["h", "q0", "q1"],
        &['a', 'b', '#'],
        &[("h", Some(0))],
        &[("h", Some(0)), ("q0", Some(0)), ("q1", Some(0))],
        &[
            ("h", 'a', Some(1), "q0"),
            ("h", 'a', Some(1), "q1"),
            ("q0", 'a', Some(1), "q0"),
            ("q0", 'a', Some(1), "q1"),
            ("q1", 'a', Some(0), "q1"),
            ("h", 'b', Some(0), "q0"),
            ("h", 'b', Some(1), "q1"),
            ("q0", 'b', Some(0), "q0"),
            ("q0", 'b', Some(1), "q1"),
            ("q1", 'b', Some(1), "q1"),
            ("h", '#', Some(0), "h"),
            ("q0", '#', Some(0), "h"),
            ("q1", '#', Some(0), "h"),
        ],
    )
}

/// Single-state counter: every listed letter loops with the given weight,
/// initial and final weights are 𝟙. Used to assemble min-of / max-of
/// function handles such as min(#a, #b) from one-letter counters.
pub fn letter_counter(semiring: Semiring, costs: &[(char, u64)]) -> Automaton {
    let alphabet: Vec<char> = costs.iter().map(|(c, _)| *c).collect();
    let mut a = Automaton::new(semiring, &["c0"], &alphabet).expect("counter alphabet");
    a.set_initial("c0", Weight::one(semiring)).unwrap();
    a.set_final("c0", Weight::one(semiring)).unwrap();
    for (letter, cost) in costs {
        let w = Weight::nat(semiring, *cost).expect("counter weight");
        a.set_transition("c0", *letter, "c0", w).unwrap();
    }
    a
}
