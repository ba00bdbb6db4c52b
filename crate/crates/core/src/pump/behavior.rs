//! Eventual behavior of pumped-value sequences, growth deltas,
//! decomposability, and linear stabilization of idempotent matrix powers.
//!
//! The checkers never reason symbolically: they evaluate a handle on the
//! pumped words `w(S, 0), w(S, 1), …, w(S, horizon)` and classify the tail
//! of that number sequence. A sequence *stabilizes* when its last `window`
//! successive differences are one constant K — then it is `Equal` (K = 0,
//! including a tail that is constantly the absorbing value) or
//! `StrictIncrease` (K > 0). Anything else is reported as `NotStabilized`,
//! a first-class outcome that poisons a verdict rather than being silently
//! dropped.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::matrix::{bilinear, Matrix};
use crate::semiring::{Semiring, Value, Weight};

use super::{check_factor_set, FactorSet, FunctionHandle, PumpError, RefinedRep};

/// Tail classification of the values `f(w(S, i))` for growing `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EventualBehavior {
    /// The values are constant from exponent `onset` on.
    Equal { onset: u64 },
    /// The values grow by `slope` per exponent from `onset` on.
    StrictIncrease {
        onset: u64,
        #[serde(serialize_with = "crate::semiring::serialize_biguint")]
        slope: BigUint,
    },
    /// The tail did not settle into either pattern within the horizon.
    NotStabilized { reason: String },
}

impl EventualBehavior {
    pub fn is_equal(&self) -> bool {
        matches!(self, EventualBehavior::Equal { .. })
    }

    pub fn is_strict(&self) -> bool {
        matches!(self, EventualBehavior::StrictIncrease { .. })
    }

    pub fn is_stabilized(&self) -> bool {
        !matches!(self, EventualBehavior::NotStabilized { .. })
    }
}

/// One successive difference of the value sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
enum DiffClass {
    /// Both values are the infinite absorbing value.
    InfPair,
    /// Both values finite, next − previous = step (never negative).
    Step(BigUint),
}

fn classify_diff(prev: &Weight, next: &Weight) -> Result<DiffClass, String> {
    match (prev.value(), next.value()) {
        (Value::Infinite, Value::Infinite) => Ok(DiffClass::InfPair),
        (Value::Finite(a), Value::Finite(b)) => {
            if b >= a {
                Ok(DiffClass::Step(b - a))
            } else {
                Err(format!("value decreases from {a} to {b}"))
            }
        }
        (a, b) => Err(format!("value changes finiteness from {a} to {b}")),
    }
}

/// Classify the tail of `i ↦ f(w(S, i))` for `i ∈ [0, horizon]`.
///
/// The tail must show `window` equal successive differences; `onset` is the
/// earliest exponent from which that constant difference already holds.
/// Max-plus handles must stay away from their absorbing value −∞ on pumped
/// words: hitting it makes growth comparisons meaningless, so it reports
/// `NotStabilized` with the offending exponent.
pub fn eventual_behavior(
    f: &FunctionHandle,
    refined: &RefinedRep,
    set: &FactorSet,
    horizon: u64,
    window: u64,
) -> Result<EventualBehavior, PumpError> {
    if window == 0 {
        return Err(PumpError::params("window must be at least 1"));
    }
    if horizon < window {
        return Err(PumpError::params(format!(
            "horizon {horizon} is smaller than window {window}"
        )));
    }
    check_factor_set(set, refined.factor_count())?;

    let mut values: Vec<Weight> = Vec::with_capacity(horizon as usize + 1);
    for i in 0..=horizon {
        let value = f.evaluate(&refined.pumped(set, i))?;
        if f.semiring() == Semiring::MaxPlus && value.is_zero() {
            return Ok(EventualBehavior::NotStabilized {
                reason: format!(
                    "max-plus value is the absorbing -inf at exponent {i}; growth is undefined"
                ),
            });
        }
        values.push(value);
    }

    let diffs: Vec<Result<DiffClass, String>> = values
        .windows(2)
        .map(|pair| classify_diff(&pair[0], &pair[1]))
        .collect();

    // The tail window is the last `window` differences.
    let tail_start = diffs.len() - window as usize;
    let constant = match &diffs[tail_start] {
        Ok(k) => k.clone(),
        Err(reason) => {
            return Ok(EventualBehavior::NotStabilized {
                reason: format!("at exponent {tail_start}: {reason}"),
            })
        }
    };
    for (offset, d) in diffs[tail_start..].iter().enumerate() {
        match d {
            Ok(k) if *k == constant => {}
            Ok(k) => {
                return Ok(EventualBehavior::NotStabilized {
                    reason: format!(
                        "differences still vary inside the window: {:?} then {:?} at exponent {}",
                        constant,
                        k,
                        tail_start + offset
                    ),
                })
            }
            Err(reason) => {
                return Ok(EventualBehavior::NotStabilized {
                    reason: format!("at exponent {}: {reason}", tail_start + offset),
                })
            }
        }
    }

    // Walk the constant run back to its earliest start.
    let mut onset = tail_start;
    while onset > 0 && matches!(&diffs[onset - 1], Ok(k) if *k == constant) {
        onset -= 1;
    }
    let onset = onset as u64;
    Ok(match constant {
        DiffClass::InfPair => EventualBehavior::Equal { onset },
        DiffClass::Step(k) if k.is_zero() => EventualBehavior::Equal { onset },
        DiffClass::Step(k) => EventualBehavior::StrictIncrease { onset, slope: k },
    })
}

/// Growth rate Δ(S): the eventual per-exponent slope of `f(w(S, i))`
/// (zero for an eventually constant sequence).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Delta {
    Stable {
        #[serde(serialize_with = "crate::semiring::serialize_biguint")]
        slope: BigUint,
    },
    Unstable { reason: String },
}

/// Δ(S) for a single factor set.
pub fn delta(
    f: &FunctionHandle,
    refined: &RefinedRep,
    set: &FactorSet,
    horizon: u64,
    window: u64,
) -> Result<Delta, PumpError> {
    Ok(match eventual_behavior(f, refined, set, horizon, window)? {
        EventualBehavior::Equal { .. } => Delta::Stable {
            slope: BigUint::zero(),
        },
        EventualBehavior::StrictIncrease { slope, .. } => Delta::Stable { slope },
        EventualBehavior::NotStabilized { reason } => Delta::Unstable { reason },
    })
}

/// Outcome of the additivity test Δ(S) = Σ_{k∈S} Δ({k}).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Decomposability {
    Decomposable {
        #[serde(serialize_with = "crate::semiring::serialize_biguint")]
        slope: BigUint,
    },
    NonDecomposable {
        #[serde(serialize_with = "crate::semiring::serialize_biguint")]
        whole: BigUint,
        #[serde(serialize_with = "crate::semiring::serialize_biguint")]
        parts: BigUint,
    },
    Unstable { reason: String },
}

impl Decomposability {
    pub fn is_decomposable(&self) -> bool {
        matches!(self, Decomposability::Decomposable { .. })
    }
}

/// Whether Δ(S) equals the sum of its singleton deltas. Singletons are
/// trivially decomposable. Computed without shared caching; the checkers
/// use [`BehaviorCache`] to reuse singleton deltas across queries.
pub fn is_decomposable(
    f: &FunctionHandle,
    refined: &RefinedRep,
    set: &FactorSet,
    horizon: u64,
    window: u64,
) -> Result<Decomposability, PumpError> {
    let mut cache = BehaviorCache::new(f, refined, horizon, window);
    cache.decomposable(set)
}

/// Memoizing wrapper around [`eventual_behavior`] for one refinement — each
/// factor set is evaluated at most once per check.
pub(crate) struct BehaviorCache<'a> {
    f: &'a FunctionHandle,
    refined: &'a RefinedRep,
    horizon: u64,
    window: u64,
    map: HashMap<Vec<usize>, EventualBehavior>,
}

impl<'a> BehaviorCache<'a> {
    pub(crate) fn new(
        f: &'a FunctionHandle,
        refined: &'a RefinedRep,
        horizon: u64,
        window: u64,
    ) -> BehaviorCache<'a> {
        BehaviorCache {
            f,
            refined,
            horizon,
            window,
            map: HashMap::new(),
        }
    }

    pub(crate) fn behavior(&mut self, set: &FactorSet) -> Result<EventualBehavior, PumpError> {
        let key: Vec<usize> = set.iter().copied().collect();
        if let Some(b) = self.map.get(&key) {
            return Ok(b.clone());
        }
        let b = eventual_behavior(self.f, self.refined, set, self.horizon, self.window)?;
        self.map.insert(key, b.clone());
        Ok(b)
    }

    pub(crate) fn delta(&mut self, set: &FactorSet) -> Result<Delta, PumpError> {
        Ok(match self.behavior(set)? {
            EventualBehavior::Equal { .. } => Delta::Stable {
                slope: BigUint::zero(),
            },
            EventualBehavior::StrictIncrease { slope, .. } => Delta::Stable { slope },
            EventualBehavior::NotStabilized { reason } => Delta::Unstable { reason },
        })
    }

    pub(crate) fn decomposable(&mut self, set: &FactorSet) -> Result<Decomposability, PumpError> {
        let whole = match self.delta(set)? {
            Delta::Stable { slope } => slope,
            Delta::Unstable { reason } => return Ok(Decomposability::Unstable { reason }),
        };
        let mut parts = BigUint::zero();
        for &k in set.iter() {
            let singleton: FactorSet = [k].into_iter().collect();
            match self.delta(&singleton)? {
                Delta::Stable { slope } => parts += slope,
                Delta::Unstable { reason } => {
                    return Ok(Decomposability::Unstable {
                        reason: format!("singleton {{{k}}}: {reason}"),
                    })
                }
            }
        }
        Ok(if whole == parts {
            Decomposability::Decomposable { slope: whole }
        } else {
            Decomposability::NonDecomposable { whole, parts }
        })
    }
}

/// Linear description of one entry of the powers of an idempotent-abstraction
/// tropical matrix: `D^{base+i}[p,q] = slope·i + offset` for all `i ≥ 0`,
/// where an infinite `slope`/`offset` pair means the entry is the absorbing
/// value from `base` on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearConstants {
    pub base: u64,
    pub slope: Value,
    pub offset: Value,
}

impl LinearConstants {
    /// The value this description predicts for `D^{base+i}[p,q]`.
    pub fn predict(&self, i: u64) -> Value {
        match (&self.slope, &self.offset) {
            (Value::Infinite, _) | (_, Value::Infinite) => Value::Infinite,
            (Value::Finite(c), Value::Finite(d)) => Value::Finite(c * i + d),
        }
    }
}

/// Exponents the verification pass re-checks after a window is found.
const LINEAR_VERIFY_RANGE: u64 = 50;

/// Find the linear description of entry `(p, q)` of the powers of `d`.
///
/// Searches for the smallest `base` whose next `dim² + 2` powers have the
/// entry either constantly infinite or finite with one constant difference,
/// then verifies the prediction on `i ∈ [0, 50]`. Fails with a
/// stabilization error when no `base ≤ budget` works.
pub fn linear_constants(
    d: &Matrix,
    p: usize,
    q: usize,
    budget: u64,
) -> Result<LinearConstants, PumpError> {
    match d.semiring() {
        Semiring::MinPlus | Semiring::MaxPlus => {}
        other => {
            return Err(PumpError::params(format!(
                "linear stabilization is a tropical notion, got {other}"
            )))
        }
    }
    if p >= d.dim() || q >= d.dim() {
        return Err(PumpError::params(format!(
            "entry ({p},{q}) out of range for dimension {}",
            d.dim()
        )));
    }
    if !d.is_abstract_idempotent()? {
        return Err(PumpError::params(
            "matrix is not abstractly idempotent; its powers need not stabilize linearly",
        ));
    }

    let window_len = (d.dim() * d.dim() + 2) as u64;
    let mut powers: Vec<Matrix> = vec![Matrix::identity(d.semiring(), d.dim())];
    let entry = |e: u64, powers: &mut Vec<Matrix>| -> Value {
        while (powers.len() as u64) <= e {
            let next = powers.last().unwrap().mul(d).expect("same dimension");
            powers.push(next);
        }
        powers[e as usize].get(p, q).value().clone()
    };

    'search: for base in 0..=budget {
        // Probe the window for a consistent pattern.
        let first = entry(base, &mut powers);
        let (slope, offset) = match first {
            Value::Infinite => {
                for e in base + 1..base + window_len {
                    if entry(e, &mut powers) != Value::Infinite {
                        continue 'search;
                    }
                }
                (Value::Infinite, Value::Infinite)
            }
            Value::Finite(d0) => {
                let mut diff: Option<BigUint> = None;
                let mut prev = d0.clone();
                for e in base + 1..base + window_len {
                    match entry(e, &mut powers) {
                        Value::Finite(v) if v >= prev => {
                            let step = &v - &prev;
                            match &diff {
                                None => diff = Some(step),
                                Some(k) if *k == step => {}
                                Some(_) => continue 'search,
                            }
                            prev = v;
                        }
                        _ => continue 'search,
                    }
                }
                (
                    Value::Finite(diff.expect("window has at least one diff")),
                    Value::Finite(d0),
                )
            }
        };
        let candidate = LinearConstants {
            base,
            slope,
            offset,
        };
        for i in 0..=LINEAR_VERIFY_RANGE {
            if entry(base + i, &mut powers) != candidate.predict(i) {
                continue 'search;
            }
        }
        return Ok(candidate);
    }
    Err(PumpError::params(format!(
        "entry ({p},{q}) did not stabilize to linear growth within budget {budget}"
    )))
}

/// Growth shape of plus-times values along powers of an idempotent matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Growth {
    Equal,
    StrictIncrease,
}

/// Exponent window compared by [`idempotent_growth`].
const GROWTH_WINDOW: u64 = 8;

/// Compare consecutive values `xᵀ · Dⁱ · y` for `i ∈ [dim, dim + 8]` over
/// plus-times: they are either all equal or all strictly increasing — the
/// dichotomy that powers the conversion arguments. Requires `D` abstractly
/// idempotent and `x`, `D` free of ∞ (`y` may contain ∞). A mixed pattern
/// is a broken precondition and reported as an error.
pub fn idempotent_growth(
    x: &[Weight],
    d: &Matrix,
    y: &[Weight],
) -> Result<Growth, PumpError> {
    if d.semiring() != Semiring::PlusTimes {
        return Err(PumpError::params(format!(
            "growth dichotomy is a plus-times notion, got {}",
            d.semiring()
        )));
    }
    if !d.is_abstract_idempotent()? {
        return Err(PumpError::params("matrix is not abstractly idempotent"));
    }
    if x.iter().any(Weight::is_infinite) {
        return Err(PumpError::params("left vector must be free of inf"));
    }
    for i in 0..d.dim() {
        for j in 0..d.dim() {
            if d.get(i, j).is_infinite() {
                return Err(PumpError::params("matrix must be free of inf"));
            }
        }
    }

    let dim = d.dim() as u64;
    let mut power = d.pow(dim as usize)?;
    let mut values = vec![bilinear(x, &power, y)?];
    for _ in 0..GROWTH_WINDOW {
        power = power.mul(d)?;
        values.push(bilinear(x, &power, y)?);
    }
    let mut all_equal = true;
    let mut all_strict = true;
    for pair in values.windows(2) {
        if pair[0] == pair[1] {
            all_strict = false;
        } else if pair[0].lt(&pair[1])? {
            all_equal = false;
        } else {
            all_equal = false;
            all_strict = false;
        }
    }
    match (all_equal, all_strict) {
        (true, false) => Ok(Growth::Equal),
        (false, true) => Ok(Growth::StrictIncrease),
        _ => Err(PumpError::params(
            "mixed growth along idempotent powers; dichotomy precondition broken",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::pump::factorize::refine_rep;
    use crate::pump::PumpingRep;

    fn set(ks: &[usize]) -> FactorSet {
        ks.iter().copied().collect()
    }

    fn f2_refined() -> (FunctionHandle, RefinedRep) {
        let f = FunctionHandle::from_oracle("f2", Semiring::MinPlus, corpus::oracles::f2);
        let rep = PumpingRep::single("aaaa", "b", "").unwrap();
        let refined = refine_rep(&f, &rep).unwrap();
        (f, refined)
    }

    #[test]
    fn growing_then_capped_sequence() {
        // f2(a⁴ bⁱ) = min(4, i): strictly grows, then plateaus at 4.
        let (f, refined) = f2_refined();
        let b = eventual_behavior(&f, &refined, &set(&[1]), 16, 4).unwrap();
        assert_eq!(b, EventualBehavior::Equal { onset: 4 });
    }

    #[test]
    fn unbounded_growth_is_strict() {
        // f2(a^i b^i)…: pump both letters via two factors around a seam.
        let f = FunctionHandle::from_oracle("f2", Semiring::MinPlus, corpus::oracles::f2);
        let rep = PumpingRep::new(
            vec!["".into(), "".into(), "".into()],
            vec!["a".into(), "b".into()],
        )
        .unwrap();
        let refined = refine_rep(&f, &rep).unwrap();
        let b = eventual_behavior(&f, &refined, &set(&[1, 2]), 16, 4).unwrap();
        assert_eq!(
            b,
            EventualBehavior::StrictIncrease {
                onset: 0,
                slope: BigUint::from(1u32)
            }
        );
        assert_eq!(
            delta(&f, &refined, &set(&[1, 2]), 16, 4).unwrap(),
            Delta::Stable {
                slope: BigUint::from(1u32)
            }
        );
        // Pumping only the a's leaves min(i, 1) eventually constant.
        assert!(matches!(
            eventual_behavior(&f, &refined, &set(&[1]), 16, 4).unwrap(),
            EventualBehavior::Equal { .. }
        ));
    }

    #[test]
    fn min_plus_infinite_tail_is_equal() {
        // f1(bⁱ a…a) with the b's deleted is infinite; pumping the b factor
        // to zero occurs only at i = 0, so instead pump an a-factor of a
        // b-free word: f1(aⁱ) = ∞ for every i.
        let f = FunctionHandle::from_oracle("f1", Semiring::MinPlus, corpus::oracles::f1);
        let rep = PumpingRep::single("", "a", "aa").unwrap();
        let refined = refine_rep(&f, &rep).unwrap();
        let b = eventual_behavior(&f, &refined, &set(&[1]), 12, 4).unwrap();
        assert_eq!(b, EventualBehavior::Equal { onset: 0 });
    }

    #[test]
    fn finiteness_flip_in_tail_is_not_stabilized() {
        // f4(bⁱ) = i for i ≥ 1 but ∞ at i = 0; with horizon = window the
        // flip sits inside the examined tail.
        let f = FunctionHandle::from_oracle("f4", Semiring::MinPlus, corpus::oracles::f4);
        let rep = PumpingRep::single("", "b", "").unwrap();
        let refined = refine_rep(&f, &rep).unwrap();
        let b = eventual_behavior(&f, &refined, &set(&[1]), 4, 4).unwrap();
        assert!(matches!(b, EventualBehavior::NotStabilized { .. }));
        // A longer horizon pushes the flip out of the tail window.
        let b = eventual_behavior(&f, &refined, &set(&[1]), 12, 4).unwrap();
        assert_eq!(
            b,
            EventualBehavior::StrictIncrease {
                onset: 1,
                slope: BigUint::from(1u32)
            }
        );
    }

    #[test]
    fn max_plus_absorbing_value_poisons() {
        // g4 on a b-free pumped word is −∞.
        let f = FunctionHandle::from_oracle("g4", Semiring::MaxPlus, corpus::oracles::g4);
        let rep = PumpingRep::single("", "a", "").unwrap();
        let refined = refine_rep(&f, &rep).unwrap();
        let b = eventual_behavior(&f, &refined, &set(&[1]), 8, 4).unwrap();
        assert!(matches!(b, EventualBehavior::NotStabilized { .. }));
    }

    #[test]
    fn max_coupling_defeats_decomposability() {
        // g4 over two pumpable b-blocks: pumping both together grows the
        // max by 1 per exponent, but each singleton also grows by 1, so the
        // singleton sum (2) overshoots the joint slope.
        let f = FunctionHandle::from_oracle("g4", Semiring::MaxPlus, corpus::oracles::g4);
        let rep = PumpingRep::new(
            vec!["".into(), "a".into(), "".into()],
            vec!["bbbb".into(), "bbbb".into()],
        )
        .unwrap();
        let refined = refine_rep(&f, &rep).unwrap();
        let mut cache = BehaviorCache::new(&f, &refined, 16, 4);
        // Singletons are trivially decomposable.
        assert!(cache.decomposable(&set(&[1])).unwrap().is_decomposable());
        // Pumping both blocks together still grows like one block (the max),
        // but the singleton sum says 2: non-decomposable.
        match cache.decomposable(&set(&[1, 2])).unwrap() {
            Decomposability::NonDecomposable { whole, parts } => {
                assert_eq!(whole, BigUint::from(1u32));
                assert_eq!(parts, BigUint::from(2u32));
            }
            other => panic!("expected non-decomposable, got {other:?}"),
        }
    }

    #[test]
    fn linear_constants_match_the_frozen_tables() {
        let w3 = corpus::machine("w3").unwrap();
        let ma = w3.word_matrix("a").unwrap();
        let lc = |p: usize, q: usize| linear_constants(&ma, p, q, 16).unwrap();
        let fin = |n: u64| Value::nat(n);
        // (q0,q0): 0,1,2,3… from the start.
        assert_eq!(
            lc(0, 0),
            LinearConstants { base: 0, slope: fin(1), offset: fin(0) }
        );
        // (q0,q1): ∞ at the identity, then constant 0.
        assert_eq!(
            lc(0, 1),
            LinearConstants { base: 1, slope: fin(0), offset: fin(0) }
        );
        // (q1,q0): never reachable.
        assert_eq!(
            lc(1, 0),
            LinearConstants { base: 0, slope: Value::Infinite, offset: Value::Infinite }
        );
        assert_eq!(
            lc(1, 1),
            LinearConstants { base: 0, slope: fin(0), offset: fin(0) }
        );
    }

    #[test]
    fn linear_constants_on_w4_block_matrix() {
        let w4 = corpus::machine("w4").unwrap();
        let mb = w4.word_matrix("b").unwrap();
        let idx = |name: &str| w4.state_index(name).unwrap();
        let lc =
            |p: &str, q: &str| linear_constants(&mb, idx(p), idx(q), 16).unwrap();
        let fin = |n: u64| Value::nat(n);
        assert_eq!(
            lc("p0", "p0"),
            LinearConstants { base: 1, slope: Value::Infinite, offset: Value::Infinite }
        );
        assert_eq!(
            lc("p0", "p1"),
            LinearConstants { base: 1, slope: fin(1), offset: fin(1) }
        );
        assert_eq!(
            lc("p1", "p1"),
            LinearConstants { base: 0, slope: fin(1), offset: fin(0) }
        );
        assert_eq!(
            lc("p5", "p5"),
            LinearConstants { base: 0, slope: fin(0), offset: fin(0) }
        );
        assert_eq!(
            lc("p5", "p1"),
            LinearConstants { base: 0, slope: Value::Infinite, offset: Value::Infinite }
        );
    }

    #[test]
    fn non_idempotent_matrix_is_rejected() {
        let w3 = corpus::machine("w3").unwrap();
        let ma = w3.word_matrix("a").unwrap();
        assert!(linear_constants(&ma, 0, 0, 16).is_ok());
        let mut rot = Matrix::zero(Semiring::MinPlus, 2);
        rot.set(0, 1, Weight::nat(Semiring::MinPlus, 0).unwrap())
            .unwrap();
        rot.set(1, 0, Weight::nat(Semiring::MinPlus, 0).unwrap())
            .unwrap();
        assert!(linear_constants(&rot, 0, 0, 16).is_err());
    }

    #[test]
    fn growth_dichotomy_on_plus_times_powers() {
        // D = [[1,1],[0,1]] (support upper-triangular reflexive, idempotent
        // abstraction): entry (0,1) of Dⁱ is i, so x=(1,0), y=(0,1)ᵀ grows.
        let pt = Semiring::PlusTimes;
        let w = |n: u64| Weight::nat(pt, n).unwrap();
        let mut d = Matrix::zero(pt, 2);
        d.set(0, 0, w(1)).unwrap();
        d.set(0, 1, w(1)).unwrap();
        d.set(1, 1, w(1)).unwrap();
        let grow = idempotent_growth(&[w(1), w(0)], &d, &[w(0), w(1)]).unwrap();
        assert_eq!(grow, Growth::StrictIncrease);
        let flat = idempotent_growth(&[w(1), w(0)], &d, &[w(1), w(0)]).unwrap();
        assert_eq!(flat, Growth::Equal);
        // An infinite y entry pins the form to ∞ everywhere: Equal.
        let infy = idempotent_growth(
            &[w(1), w(0)],
            &d,
            &[Weight::infinite(pt).unwrap(), w(0)],
        )
        .unwrap();
        assert_eq!(infy, Growth::Equal);
    }
}
