//! The five executable pumping checks.
//!
//! Every check quantifies over the whole refinement universe of its pumping
//! representation: the conclusion it tests is promised for *some* refinement,
//! so a single refinement that satisfies it makes the check hold, and a
//! violation is only reported when every enumerated refinement cleanly fails
//! both of the check's clauses.
//!
//! Outcomes are three-valued. `Holds…` names the clause that succeeded and
//! for which refinement. `Violated` carries per-refinement witnesses —
//! concrete split positions, exponents, and values. `NotStabilized` means
//! at least one queried value sequence had not settled by the horizon while
//! no refinement held, so neither conclusion is safe; it is reported rather
//! than silently resolved in either direction.

use num_bigint::BigUint;
use serde::Serialize;

use crate::semiring::{Semiring, Weight};

use super::behavior::{BehaviorCache, Decomposability, EventualBehavior};
use super::factorize::refinement_universe;
use super::{check_factor_set, FactorSet, FunctionHandle, PumpError, PumpingRep, RefinedRep};

/// Shared tuning knobs for all checks.
#[derive(Debug, Clone)]
pub struct CheckParams {
    /// Largest pumping exponent evaluated.
    pub horizon: u64,
    /// Number of trailing differences that must agree for stabilization.
    pub window: u64,
    /// Cap on materialized refinements per universe.
    pub refinement_cap: usize,
    /// Cap on per-refinement witnesses carried by a `Violated` verdict.
    pub witness_limit: usize,
}

impl Default for CheckParams {
    fn default() -> CheckParams {
        CheckParams {
            horizon: 64,
            window: 8,
            refinement_cap: super::factorize::REFINEMENT_CAP,
            witness_limit: 12,
        }
    }
}

/// Cap on the number of selection sets enumerated per partition.
const SELECTION_CAP: u64 = 1_000_000;

/// How a check ended, independent of which clause or witness carried it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Holds,
    Violated,
    NotStabilized,
}

/// Identifies one refinement inside its universe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinementDesc {
    /// Position in enumeration order; 0 is the canonical refinement.
    pub index: usize,
    /// Char split positions `(i, j)` per factor.
    pub splits: Vec<(usize, usize)>,
    /// The kept idempotent infixes `y₁..yₙ`.
    pub kept: Vec<String>,
}

fn desc(index: usize, refined: &RefinedRep) -> RefinementDesc {
    RefinementDesc {
        index,
        splits: refined.splits().to_vec(),
        kept: refined.kept().to_vec(),
    }
}

/// Behavior of one queried factor set, for witness reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetBehavior {
    /// 1-based position of the set in the query.
    pub set_index: usize,
    pub set: Vec<usize>,
    pub behavior: EventualBehavior,
}

/// Decomposability of one queried factor set, for witness reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetDecomposability {
    pub set_index: usize,
    pub set: Vec<usize>,
    pub outcome: Decomposability,
}

fn validate_sets(sets: &[FactorSet], n: usize) -> Result<(), PumpError> {
    if sets.is_empty() {
        return Err(PumpError::params("at least one factor set is required"));
    }
    for s in sets {
        check_factor_set(s, n)?;
    }
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            if sets[a] == sets[b] {
                return Err(PumpError::params(format!(
                    "factor sets {} and {} are identical",
                    a + 1,
                    b + 1
                )));
            }
        }
    }
    Ok(())
}

fn validate_partition(blocks: &[FactorSet], n: usize) -> Result<(), PumpError> {
    validate_sets(blocks, n)?;
    let mut seen = vec![false; n + 1];
    for block in blocks {
        for &k in block {
            if seen[k] {
                return Err(PumpError::params(format!(
                    "factor {k} appears in two partition blocks"
                )));
            }
            seen[k] = true;
        }
    }
    if let Some(k) = (1..=n).find(|&k| !seen[k]) {
        return Err(PumpError::params(format!(
            "factor {k} is missing from the partition"
        )));
    }
    Ok(())
}

/// All selection sets (one element per block) in lexicographic order of
/// their element tuples.
fn selections(blocks: &[FactorSet]) -> Result<Vec<FactorSet>, PumpError> {
    let choices: Vec<Vec<usize>> = blocks
        .iter()
        .map(|b| b.iter().copied().collect())
        .collect();
    let mut count: u64 = 1;
    for c in &choices {
        count = count.saturating_mul(c.len() as u64);
        if count > SELECTION_CAP {
            return Err(PumpError::params(format!(
                "partition admits more than {SELECTION_CAP} selection sets"
            )));
        }
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut odometer = vec![0usize; choices.len()];
    for _ in 0..count {
        out.push(
            odometer
                .iter()
                .enumerate()
                .map(|(b, &d)| choices[b][d])
                .collect::<FactorSet>(),
        );
        for b in (0..choices.len()).rev() {
            odometer[b] += 1;
            if odometer[b] < choices[b].len() {
                break;
            }
            odometer[b] = 0;
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Natural-growth check (single factor, exact comparisons on a range)
// ---------------------------------------------------------------------------

/// Failure of one exact clause: the first exponent where it breaks, with the
/// two compared values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseFailure {
    pub at: u64,
    pub value: Weight,
    pub next: Weight,
}

/// Witness that one refinement fails both exact clauses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NatWitness {
    pub refinement: RefinementDesc,
    pub equality: ClauseFailure,
    pub strictness: ClauseFailure,
}

/// Verdict of [`check_nat`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum NatVerdict {
    /// Some refinement pumps to equal values on the whole range.
    HoldsEqual { refinement: RefinementDesc, from: u64 },
    /// Some refinement pumps to strictly increasing values on the range.
    HoldsStrict { refinement: RefinementDesc, from: u64 },
    /// Every refinement breaks both clauses.
    Violated {
        witnesses: Vec<NatWitness>,
        witnesses_truncated: bool,
        refinements_checked: usize,
        /// True when the whole refinement universe was checked (no cap cut).
        refinements_exhausted: bool,
    },
}

impl NatVerdict {
    pub fn outcome(&self) -> Outcome {
        match self {
            NatVerdict::Violated { .. } => Outcome::Violated,
            _ => Outcome::Holds,
        }
    }
}

/// For every refinement `û ŷⁱ ŵ` of `u v w`, compare the values at
/// consecutive exponents exactly on `i ∈ [threshold, horizon]`: they must
/// all be equal, or all strictly increasing, for some refinement.
pub fn check_nat(
    f: &FunctionHandle,
    u: &str,
    v: &str,
    w: &str,
    threshold: u64,
    params: &CheckParams,
) -> Result<NatVerdict, PumpError> {
    if (v.chars().count() as u64) < threshold {
        return Err(PumpError::params(format!(
            "factor {v:?} is shorter than the threshold {threshold}"
        )));
    }
    if threshold > params.horizon {
        return Err(PumpError::params(format!(
            "threshold {threshold} exceeds horizon {}",
            params.horizon
        )));
    }
    let rep = PumpingRep::single(u, v, w)?;
    let universe = refinement_universe(f, &rep, params.refinement_cap)?;
    let whole: FactorSet = [1].into_iter().collect();

    let mut witnesses = Vec::new();
    let mut truncated = false;
    for (index, refined) in universe.refinements.iter().enumerate() {
        let mut values = Vec::new();
        for i in threshold..=params.horizon + 1 {
            values.push(f.evaluate(&refined.pumped(&whole, i))?);
        }
        let mut eq_fail = None;
        let mut lt_fail = None;
        for (offset, pair) in values.windows(2).enumerate() {
            let at = threshold + offset as u64;
            if eq_fail.is_none() && pair[0] != pair[1] {
                eq_fail = Some(ClauseFailure {
                    at,
                    value: pair[0].clone(),
                    next: pair[1].clone(),
                });
            }
            if lt_fail.is_none() && !pair[0].lt(&pair[1])? {
                lt_fail = Some(ClauseFailure {
                    at,
                    value: pair[0].clone(),
                    next: pair[1].clone(),
                });
            }
            if eq_fail.is_some() && lt_fail.is_some() {
                break;
            }
        }
        match (eq_fail, lt_fail) {
            (None, _) => {
                return Ok(NatVerdict::HoldsEqual {
                    refinement: desc(index, refined),
                    from: threshold,
                })
            }
            (_, None) => {
                return Ok(NatVerdict::HoldsStrict {
                    refinement: desc(index, refined),
                    from: threshold,
                })
            }
            (Some(eq), Some(lt)) => {
                if witnesses.len() < params.witness_limit {
                    witnesses.push(NatWitness {
                        refinement: desc(index, refined),
                        equality: eq,
                        strictness: lt,
                    });
                } else {
                    truncated = true;
                }
            }
        }
    }
    Ok(NatVerdict::Violated {
        witnesses,
        witnesses_truncated: truncated,
        refinements_checked: universe.refinements.len(),
        refinements_exhausted: !universe.truncated,
    })
}

// ---------------------------------------------------------------------------
// Finite-min check (sets of factors; strict single or equal union)
// ---------------------------------------------------------------------------

/// Witness that one refinement fails both finite-min clauses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteMinWitness {
    pub refinement: RefinementDesc,
    /// Behavior of every queried set S_j (none strict).
    pub singles: Vec<SetBehavior>,
    /// Behavior of every pairwise union (none equal).
    pub unions: Vec<UnionBehavior>,
}

/// Behavior of S_{j₁} ∪ S_{j₂}, for witness reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnionBehavior {
    pub set_indices: (usize, usize),
    pub behavior: EventualBehavior,
}

/// Verdict of [`check_finite_min`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum FiniteMinVerdict {
    /// Some set pumps to strictly increasing values.
    HoldsStrictSingle {
        refinement: RefinementDesc,
        set_index: usize,
        set: Vec<usize>,
        #[serde(serialize_with = "crate::semiring::serialize_biguint")]
        slope: BigUint,
        onset: u64,
    },
    /// Some pairwise union pumps to eventually constant values.
    HoldsEqualUnion {
        refinement: RefinementDesc,
        set_indices: (usize, usize),
        union: Vec<usize>,
        onset: u64,
    },
    /// A queried sequence did not settle and nothing held.
    NotStabilized {
        refinement: RefinementDesc,
        reason: String,
    },
    /// Every refinement cleanly fails both clauses.
    Violated {
        witnesses: Vec<FiniteMinWitness>,
        witnesses_truncated: bool,
        refinements_checked: usize,
        /// True when the whole refinement universe was checked (no cap cut).
        refinements_exhausted: bool,
    },
}

impl FiniteMinVerdict {
    pub fn outcome(&self) -> Outcome {
        match self {
            FiniteMinVerdict::Violated { .. } => Outcome::Violated,
            FiniteMinVerdict::NotStabilized { .. } => Outcome::NotStabilized,
            _ => Outcome::Holds,
        }
    }
}

/// Functions that are finite minima of unambiguous parts satisfy: for every
/// family of at least `threshold` factor sets (refinement-quantified), either
/// some S_j pumps strictly, or two sets pump jointly to an eventually
/// constant sequence. The guarantee needs more sets than the function has
/// parts, which is what `threshold` encodes.
pub fn check_finite_min(
    f: &FunctionHandle,
    rep: &PumpingRep,
    sets: &[FactorSet],
    threshold: usize,
    params: &CheckParams,
) -> Result<FiniteMinVerdict, PumpError> {
    if f.semiring() != Semiring::MinPlus {
        return Err(PumpError::params(format!(
            "the finite-min check applies to min-plus functions, got {}",
            f.semiring()
        )));
    }
    if sets.len() < threshold {
        return Err(PumpError::params(format!(
            "got {} factor sets but the threshold requires at least {threshold}",
            sets.len()
        )));
    }
    validate_sets(sets, rep.factor_count())?;
    let universe = refinement_universe(f, rep, params.refinement_cap)?;

    let mut witnesses = Vec::new();
    let mut truncated = false;
    let mut poisoned: Option<(RefinementDesc, String)> = None;
    for (index, refined) in universe.refinements.iter().enumerate() {
        let mut cache = BehaviorCache::new(f, refined, params.horizon, params.window);
        let mut singles = Vec::new();
        let mut refinement_poison: Option<String> = None;
        for (j, set) in sets.iter().enumerate() {
            let behavior = cache.behavior(set)?;
            if let EventualBehavior::StrictIncrease { onset, slope } = &behavior {
                return Ok(FiniteMinVerdict::HoldsStrictSingle {
                    refinement: desc(index, refined),
                    set_index: j + 1,
                    set: set.iter().copied().collect(),
                    slope: slope.clone(),
                    onset: *onset,
                });
            }
            if let EventualBehavior::NotStabilized { reason } = &behavior {
                refinement_poison.get_or_insert_with(|| {
                    format!("set {}: {reason}", j + 1)
                });
            }
            singles.push(SetBehavior {
                set_index: j + 1,
                set: set.iter().copied().collect(),
                behavior,
            });
        }
        let mut unions = Vec::new();
        for j1 in 0..sets.len() {
            for j2 in j1 + 1..sets.len() {
                let union: FactorSet = sets[j1].union(&sets[j2]).copied().collect();
                let behavior = cache.behavior(&union)?;
                if let EventualBehavior::Equal { onset } = &behavior {
                    return Ok(FiniteMinVerdict::HoldsEqualUnion {
                        refinement: desc(index, refined),
                        set_indices: (j1 + 1, j2 + 1),
                        union: union.iter().copied().collect(),
                        onset: *onset,
                    });
                }
                if let EventualBehavior::NotStabilized { reason } = &behavior {
                    refinement_poison.get_or_insert_with(|| {
                        format!("union of sets {} and {}: {reason}", j1 + 1, j2 + 1)
                    });
                }
                unions.push(UnionBehavior {
                    set_indices: (j1 + 1, j2 + 1),
                    behavior,
                });
            }
        }
        match refinement_poison {
            Some(reason) => {
                poisoned.get_or_insert((desc(index, refined), reason));
            }
            None => {
                if witnesses.len() < params.witness_limit {
                    witnesses.push(FiniteMinWitness {
                        refinement: desc(index, refined),
                        singles,
                        unions,
                    });
                } else {
                    truncated = true;
                }
            }
        }
    }
    if let Some((refinement, reason)) = poisoned {
        return Ok(FiniteMinVerdict::NotStabilized { refinement, reason });
    }
    Ok(FiniteMinVerdict::Violated {
        witnesses,
        witnesses_truncated: truncated,
        refinements_checked: universe.refinements.len(),
        refinements_exhausted: !universe.truncated,
    })
}

// ---------------------------------------------------------------------------
// Polynomial-ambiguity min-plus check (partition; equal block or strict
// selection)
// ---------------------------------------------------------------------------

/// Behavior of one selection set, for witness reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelectionBehavior {
    pub selection: Vec<usize>,
    pub behavior: EventualBehavior,
}

/// Witness that one refinement fails both polynomial-min clauses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaMinWitness {
    pub refinement: RefinementDesc,
    pub blocks: Vec<SetBehavior>,
    pub selections: Vec<SelectionBehavior>,
    pub selections_truncated: bool,
}

/// Verdict of [`check_pa_min`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum PaMinVerdict {
    /// Some partition block pumps to eventually constant values.
    HoldsEqualBlock {
        refinement: RefinementDesc,
        block_index: usize,
        block: Vec<usize>,
        onset: u64,
    },
    /// Some selection (one factor per block) pumps strictly.
    HoldsStrictSelection {
        refinement: RefinementDesc,
        selection: Vec<usize>,
        #[serde(serialize_with = "crate::semiring::serialize_biguint")]
        slope: BigUint,
        onset: u64,
    },
    NotStabilized {
        refinement: RefinementDesc,
        reason: String,
    },
    Violated {
        witnesses: Vec<PaMinWitness>,
        witnesses_truncated: bool,
        refinements_checked: usize,
        /// True when the whole refinement universe was checked (no cap cut).
        refinements_exhausted: bool,
    },
}

impl PaMinVerdict {
    pub fn outcome(&self) -> Outcome {
        match self {
            PaMinVerdict::Violated { .. } => Outcome::Violated,
            PaMinVerdict::NotStabilized { .. } => Outcome::NotStabilized,
            _ => Outcome::Holds,
        }
    }
}

/// Functions of polynomially ambiguous min-plus automata satisfy: for every
/// partition of the factors (refinement-quantified), either some block pumps
/// to an eventually constant sequence, or some selection set picking one
/// factor per block pumps strictly.
pub fn check_pa_min(
    f: &FunctionHandle,
    rep: &PumpingRep,
    partition: &[FactorSet],
    params: &CheckParams,
) -> Result<PaMinVerdict, PumpError> {
    if f.semiring() != Semiring::MinPlus {
        return Err(PumpError::params(format!(
            "the polynomial min-plus check applies to min-plus functions, got {}",
            f.semiring()
        )));
    }
    validate_partition(partition, rep.factor_count())?;
    let all_selections = selections(partition)?;
    let universe = refinement_universe(f, rep, params.refinement_cap)?;

    let mut witnesses = Vec::new();
    let mut truncated = false;
    let mut poisoned: Option<(RefinementDesc, String)> = None;
    for (index, refined) in universe.refinements.iter().enumerate() {
        let mut cache = BehaviorCache::new(f, refined, params.horizon, params.window);
        let mut blocks = Vec::new();
        let mut refinement_poison: Option<String> = None;
        for (j, block) in partition.iter().enumerate() {
            let behavior = cache.behavior(block)?;
            if let EventualBehavior::Equal { onset } = &behavior {
                return Ok(PaMinVerdict::HoldsEqualBlock {
                    refinement: desc(index, refined),
                    block_index: j + 1,
                    block: block.iter().copied().collect(),
                    onset: *onset,
                });
            }
            if let EventualBehavior::NotStabilized { reason } = &behavior {
                refinement_poison
                    .get_or_insert_with(|| format!("block {}: {reason}", j + 1));
            }
            blocks.push(SetBehavior {
                set_index: j + 1,
                set: block.iter().copied().collect(),
                behavior,
            });
        }
        let mut selection_behaviors = Vec::new();
        let mut selections_truncated = false;
        for selection in &all_selections {
            let behavior = cache.behavior(selection)?;
            if let EventualBehavior::StrictIncrease { onset, slope } = &behavior {
                return Ok(PaMinVerdict::HoldsStrictSelection {
                    refinement: desc(index, refined),
                    selection: selection.iter().copied().collect(),
                    slope: slope.clone(),
                    onset: *onset,
                });
            }
            if let EventualBehavior::NotStabilized { reason } = &behavior {
                refinement_poison.get_or_insert_with(|| {
                    format!("selection {:?}: {reason}", selection.iter().collect::<Vec<_>>())
                });
            }
            if selection_behaviors.len() < params.witness_limit {
                selection_behaviors.push(SelectionBehavior {
                    selection: selection.iter().copied().collect(),
                    behavior,
                });
            } else {
                selections_truncated = true;
            }
        }
        match refinement_poison {
            Some(reason) => {
                poisoned.get_or_insert((desc(index, refined), reason));
            }
            None => {
                if witnesses.len() < params.witness_limit {
                    witnesses.push(PaMinWitness {
                        refinement: desc(index, refined),
                        blocks,
                        selections: selection_behaviors,
                        selections_truncated,
                    });
                } else {
                    truncated = true;
                }
            }
        }
    }
    if let Some((refinement, reason)) = poisoned {
        return Ok(PaMinVerdict::NotStabilized { refinement, reason });
    }
    Ok(PaMinVerdict::Violated {
        witnesses,
        witnesses_truncated: truncated,
        refinements_checked: universe.refinements.len(),
        refinements_exhausted: !universe.truncated,
    })
}

// ---------------------------------------------------------------------------
// Finite-max check (sets; non-decomposable set or cross-decomposable pair)
// ---------------------------------------------------------------------------

/// A cross pair between two sets that failed to decompose.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossFailure {
    pub set_indices: (usize, usize),
    pub pair: (usize, usize),
    pub outcome: Decomposability,
}

/// Witness that one refinement fails both finite-max clauses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaMaxWitness {
    pub refinement: RefinementDesc,
    /// Every queried set decomposes (clause one fails).
    pub sets: Vec<SetDecomposability>,
    /// For every pair of sets, one cross pair that does not decompose
    /// (clause two fails).
    pub cross_failures: Vec<CrossFailure>,
}

/// Verdict of [`check_fa_max`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum FaMaxVerdict {
    /// Some set's joint growth is not the sum of its singleton growths.
    HoldsNonDecomposable {
        refinement: RefinementDesc,
        set_index: usize,
        set: Vec<usize>,
        #[serde(serialize_with = "crate::semiring::serialize_biguint")]
        whole: BigUint,
        #[serde(serialize_with = "crate::semiring::serialize_biguint")]
        parts: BigUint,
    },
    /// Two sets whose cross pairs all decompose.
    HoldsCrossDecomposable {
        refinement: RefinementDesc,
        set_indices: (usize, usize),
    },
    NotStabilized {
        refinement: RefinementDesc,
        reason: String,
    },
    Violated {
        witnesses: Vec<FaMaxWitness>,
        witnesses_truncated: bool,
        refinements_checked: usize,
        /// True when the whole refinement universe was checked (no cap cut).
        refinements_exhausted: bool,
    },
}

impl FaMaxVerdict {
    pub fn outcome(&self) -> Outcome {
        match self {
            FaMaxVerdict::Violated { .. } => Outcome::Violated,
            FaMaxVerdict::NotStabilized { .. } => Outcome::NotStabilized,
            _ => Outcome::Holds,
        }
    }
}

/// Functions that are finite maxima of unambiguous parts satisfy: for every
/// refinement-quantified family of factor sets, either some set fails to
/// decompose into its singleton growths, or some two sets have all cross
/// pairs decomposable.
pub fn check_fa_max(
    f: &FunctionHandle,
    rep: &PumpingRep,
    sets: &[FactorSet],
    params: &CheckParams,
) -> Result<FaMaxVerdict, PumpError> {
    if f.semiring() != Semiring::MaxPlus {
        return Err(PumpError::params(format!(
            "the finite-max check applies to max-plus functions, got {}",
            f.semiring()
        )));
    }
    validate_sets(sets, rep.factor_count())?;
    let universe = refinement_universe(f, rep, params.refinement_cap)?;

    let mut witnesses = Vec::new();
    let mut truncated = false;
    let mut poisoned: Option<(RefinementDesc, String)> = None;
    for (index, refined) in universe.refinements.iter().enumerate() {
        let mut cache = BehaviorCache::new(f, refined, params.horizon, params.window);
        let mut set_outcomes = Vec::new();
        let mut refinement_poison: Option<String> = None;
        for (j, set) in sets.iter().enumerate() {
            let outcome = cache.decomposable(set)?;
            match &outcome {
                Decomposability::NonDecomposable { whole, parts } => {
                    return Ok(FaMaxVerdict::HoldsNonDecomposable {
                        refinement: desc(index, refined),
                        set_index: j + 1,
                        set: set.iter().copied().collect(),
                        whole: whole.clone(),
                        parts: parts.clone(),
                    });
                }
                Decomposability::Unstable { reason } => {
                    refinement_poison
                        .get_or_insert_with(|| format!("set {}: {reason}", j + 1));
                }
                Decomposability::Decomposable { .. } => {}
            }
            set_outcomes.push(SetDecomposability {
                set_index: j + 1,
                set: set.iter().copied().collect(),
                outcome,
            });
        }
        let mut cross_failures = Vec::new();
        for j1 in 0..sets.len() {
            for j2 in j1 + 1..sets.len() {
                let mut found_bad: Option<CrossFailure> = None;
                for &l1 in &sets[j1] {
                    for &l2 in &sets[j2] {
                        let pair: FactorSet = [l1, l2].into_iter().collect();
                        let outcome = cache.decomposable(&pair)?;
                        match &outcome {
                            Decomposability::NonDecomposable { .. } => {
                                found_bad = Some(CrossFailure {
                                    set_indices: (j1 + 1, j2 + 1),
                                    pair: (l1, l2),
                                    outcome,
                                });
                                break;
                            }
                            Decomposability::Unstable { reason } => {
                                refinement_poison.get_or_insert_with(|| {
                                    format!("cross pair ({l1},{l2}): {reason}")
                                });
                                found_bad = Some(CrossFailure {
                                    set_indices: (j1 + 1, j2 + 1),
                                    pair: (l1, l2),
                                    outcome,
                                });
                                break;
                            }
                            Decomposability::Decomposable { .. } => {}
                        }
                    }
                    if found_bad.is_some() {
                        break;
                    }
                }
                match found_bad {
                    None => {
                        return Ok(FaMaxVerdict::HoldsCrossDecomposable {
                            refinement: desc(index, refined),
                            set_indices: (j1 + 1, j2 + 1),
                        });
                    }
                    Some(failure) => cross_failures.push(failure),
                }
            }
        }
        match refinement_poison {
            Some(reason) => {
                poisoned.get_or_insert((desc(index, refined), reason));
            }
            None => {
                if witnesses.len() < params.witness_limit {
                    witnesses.push(FaMaxWitness {
                        refinement: desc(index, refined),
                        sets: set_outcomes,
                        cross_failures,
                    });
                } else {
                    truncated = true;
                }
            }
        }
    }
    if let Some((refinement, reason)) = poisoned {
        return Ok(FaMaxVerdict::NotStabilized { refinement, reason });
    }
    Ok(FaMaxVerdict::Violated {
        witnesses,
        witnesses_truncated: truncated,
        refinements_checked: universe.refinements.len(),
        refinements_exhausted: !universe.truncated,
    })
}

// ---------------------------------------------------------------------------
// Polynomial-ambiguity max-plus check (partition; decomposable block or
// non-decomposable selection)
// ---------------------------------------------------------------------------

/// Decomposability of one selection set, for witness reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelectionDecomposability {
    pub selection: Vec<usize>,
    pub outcome: Decomposability,
}

/// Witness that one refinement fails both polynomial-max clauses.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PaMaxWitness {
    pub refinement: RefinementDesc,
    pub blocks: Vec<SetDecomposability>,
    pub selections: Vec<SelectionDecomposability>,
    pub selections_truncated: bool,
}

/// Verdict of [`check_pa_max`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum PaMaxVerdict {
    /// Some partition block decomposes into its singleton growths.
    HoldsDecomposableBlock {
        refinement: RefinementDesc,
        block_index: usize,
        block: Vec<usize>,
        #[serde(serialize_with = "crate::semiring::serialize_biguint")]
        slope: BigUint,
    },
    /// Some selection (one factor per block) fails to decompose.
    HoldsNonDecompSelection {
        refinement: RefinementDesc,
        selection: Vec<usize>,
        #[serde(serialize_with = "crate::semiring::serialize_biguint")]
        whole: BigUint,
        #[serde(serialize_with = "crate::semiring::serialize_biguint")]
        parts: BigUint,
    },
    NotStabilized {
        refinement: RefinementDesc,
        reason: String,
    },
    Violated {
        witnesses: Vec<PaMaxWitness>,
        witnesses_truncated: bool,
        refinements_checked: usize,
        /// True when the whole refinement universe was checked (no cap cut).
        refinements_exhausted: bool,
    },
}

impl PaMaxVerdict {
    pub fn outcome(&self) -> Outcome {
        match self {
            PaMaxVerdict::Violated { .. } => Outcome::Violated,
            PaMaxVerdict::NotStabilized { .. } => Outcome::NotStabilized,
            _ => Outcome::Holds,
        }
    }
}

/// Functions of polynomially ambiguous max-plus automata satisfy: for every
/// partition of the factors (refinement-quantified), either some block
/// decomposes into its singleton growths, or some selection set picking one
/// factor per block fails to decompose.
pub fn check_pa_max(
    f: &FunctionHandle,
    rep: &PumpingRep,
    partition: &[FactorSet],
    params: &CheckParams,
) -> Result<PaMaxVerdict, PumpError> {
    if f.semiring() != Semiring::MaxPlus {
        return Err(PumpError::params(format!(
            "the polynomial max-plus check applies to max-plus functions, got {}",
            f.semiring()
        )));
    }
    validate_partition(partition, rep.factor_count())?;
    let all_selections = selections(partition)?;
    let universe = refinement_universe(f, rep, params.refinement_cap)?;

    let mut witnesses = Vec::new();
    let mut truncated = false;
    let mut poisoned: Option<(RefinementDesc, String)> = None;
    for (index, refined) in universe.refinements.iter().enumerate() {
        let mut cache = BehaviorCache::new(f, refined, params.horizon, params.window);
        let mut blocks = Vec::new();
        let mut refinement_poison: Option<String> = None;
        for (j, block) in partition.iter().enumerate() {
            let outcome = cache.decomposable(block)?;
            match &outcome {
                Decomposability::Decomposable { slope } => {
                    return Ok(PaMaxVerdict::HoldsDecomposableBlock {
                        refinement: desc(index, refined),
                        block_index: j + 1,
                        block: block.iter().copied().collect(),
                        slope: slope.clone(),
                    });
                }
                Decomposability::Unstable { reason } => {
                    refinement_poison
                        .get_or_insert_with(|| format!("block {}: {reason}", j + 1));
                }
                Decomposability::NonDecomposable { .. } => {}
            }
            blocks.push(SetDecomposability {
                set_index: j + 1,
                set: block.iter().copied().collect(),
                outcome,
            });
        }
        let mut selection_outcomes = Vec::new();
        let mut selections_truncated = false;
        for selection in &all_selections {
            let outcome = cache.decomposable(selection)?;
            match &outcome {
                Decomposability::NonDecomposable { whole, parts } => {
                    return Ok(PaMaxVerdict::HoldsNonDecompSelection {
                        refinement: desc(index, refined),
                        selection: selection.iter().copied().collect(),
                        whole: whole.clone(),
                        parts: parts.clone(),
                    });
                }
                Decomposability::Unstable { reason } => {
                    refinement_poison.get_or_insert_with(|| {
                        format!(
                            "selection {:?}: {reason}",
                            selection.iter().collect::<Vec<_>>()
                        )
                    });
                }
                Decomposability::Decomposable { .. } => {}
            }
            if selection_outcomes.len() < params.witness_limit {
                selection_outcomes.push(SelectionDecomposability {
                    selection: selection.iter().copied().collect(),
                    outcome,
                });
            } else {
                selections_truncated = true;
            }
        }
        match refinement_poison {
            Some(reason) => {
                poisoned.get_or_insert((desc(index, refined), reason));
            }
            None => {
                if witnesses.len() < params.witness_limit {
                    witnesses.push(PaMaxWitness {
                        refinement: desc(index, refined),
                        blocks,
                        selections: selection_outcomes,
                        selections_truncated,
                    });
                } else {
                    truncated = true;
                }
            }
        }
    }
    if let Some((refinement, reason)) = poisoned {
        return Ok(PaMaxVerdict::NotStabilized { refinement, reason });
    }
    Ok(PaMaxVerdict::Violated {
        witnesses,
        witnesses_truncated: truncated,
        refinements_checked: universe.refinements.len(),
        refinements_exhausted: !universe.truncated,
    })
}
