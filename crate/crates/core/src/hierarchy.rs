//! Executable demonstration that the ambiguity hierarchy is strict over
//! both tropical semirings.
//!
//! Functions computed by weighted automata stratify by how many accepting
//! runs a word can have: unambiguous (U-WA), finitely ambiguous (FA-WA),
//! polynomially ambiguous (PA-WA), and unrestricted (WA). Each row of the
//! demonstration pins one function *inside* a class — a corpus machine of
//! that ambiguity computes it — and *outside* the class below it, by running
//! the pumping check that every function of the smaller class must pass and
//! obtaining `Violated`. Five rows per semiring make both chains
//! U-WA ⊊ FA-WA ⊊ PA-WA ⊊ WA strict, each inclusion witnessed twice where
//! the corpus provides two separating functions.

use serde::Serialize;

use crate::ambiguity::{classify, Degree};
use crate::corpus;
use crate::semiring::Semiring;

use super::pump::checks::{
    check_fa_max, check_finite_min, check_nat, check_pa_max, check_pa_min, CheckParams,
    FaMaxVerdict, FiniteMinVerdict, NatVerdict, Outcome, PaMaxVerdict, PaMinVerdict,
};
use super::pump::{FactorSet, FunctionHandle, PumpError, PumpingRep};

/// One strictness witness: a function, the class it belongs to, and the
/// check separating it from the class below.
#[derive(Debug, Clone, Serialize)]
pub struct HierarchyRow {
    pub semiring: Semiring,
    /// Name of the separating function.
    pub function: &'static str,
    /// What the function computes.
    pub describes: &'static str,
    /// The class the function belongs to.
    pub member_class: &'static str,
    /// The class the violation excludes it from.
    pub excluded_class: &'static str,
    /// CLI name of the check that was violated.
    pub check: &'static str,
    /// Base word of the pumping representation used.
    pub word: String,
    /// How membership in `member_class` was established.
    pub membership_evidence: String,
    /// Whether the membership evidence checked out when recomputed.
    pub membership_verified: bool,
    /// Result of running the check; a strict row shows `Violated`.
    pub outcome: Outcome,
    pub violation_summary: String,
}

impl HierarchyRow {
    /// A row separates its two classes when the function provably sits in
    /// the larger class and the smaller class's check is violated.
    pub fn separates(&self) -> bool {
        self.membership_verified && self.outcome == Outcome::Violated
    }
}

fn rep(segments: &[&str], factors: &[&str]) -> Result<PumpingRep, PumpError> {
    PumpingRep::new(
        segments.iter().map(|s| s.to_string()).collect(),
        factors.iter().map(|s| s.to_string()).collect(),
    )
}

fn factor_sets(list: &[&[usize]]) -> Vec<FactorSet> {
    list.iter()
        .map(|s| s.iter().copied().collect())
        .collect()
}

/// Blocks {1,2}, {3,4}, … pairing consecutive factors.
fn pair_blocks(factor_count: usize) -> Vec<FactorSet> {
    (0..factor_count / 2)
        .map(|j| [2 * j + 1, 2 * j + 2].into_iter().collect())
        .collect()
}

/// Establishes `handle ∈ member_class` through the corpus machine that
/// computes the same function: the machine's classified ambiguity degree
/// must match, and machine and handle must agree on the row's base word.
fn machine_membership(
    machine_name: &str,
    expected: Degree,
    handle: &FunctionHandle,
    word: &str,
) -> Result<(String, bool), PumpError> {
    let machine = corpus::machine(machine_name).expect("corpus machine");
    let classification = classify(&machine)?;
    let machine_value = machine.evaluate(word)?;
    let handle_value = handle.evaluate(word)?;
    let degree_ok = classification.degree == expected;
    let value_ok = machine_value.value() == handle_value.value();
    let evidence = format!(
        "computed by machine {machine_name} (value {machine_value} on the base word), which classifies as {}",
        classification.degree.name()
    );
    Ok((evidence, degree_ok && value_ok))
}

fn summarize(checked: usize, complete: bool, first: Option<String>) -> String {
    let scope = if complete {
        format!("all {checked} refinements")
    } else {
        format!("the first {checked} refinements (universe capped)")
    };
    match first {
        Some(first) => format!("violated across {scope}; canonical refinement: {first}"),
        None => format!("violated across {scope}"),
    }
}

fn nat_outcome(v: &NatVerdict) -> (Outcome, String) {
    match v {
        NatVerdict::Violated {
            witnesses,
            refinements_checked,
            refinements_exhausted,
            ..
        } => (
            Outcome::Violated,
            summarize(
                *refinements_checked,
                *refinements_exhausted,
                witnesses.first().map(|w| {
                    format!(
                        "equality breaks at i={} ({} then {}), strictness at i={} ({} then {})",
                        w.equality.at,
                        w.equality.value,
                        w.equality.next,
                        w.strictness.at,
                        w.strictness.value,
                        w.strictness.next
                    )
                }),
            ),
        ),
        other => (other.outcome(), format!("unexpected: {other:?}")),
    }
}

fn finite_min_outcome(v: &FiniteMinVerdict) -> (Outcome, String) {
    match v {
        FiniteMinVerdict::Violated {
            witnesses,
            refinements_checked,
            refinements_exhausted,
            ..
        } => (
            Outcome::Violated,
            summarize(
                *refinements_checked,
                *refinements_exhausted,
                witnesses
                    .first()
                    .map(|w| format!("no strict single set, no stabilizing union ({} sets)", w.singles.len())),
            ),
        ),
        other => (other.outcome(), format!("unexpected: {other:?}")),
    }
}

fn pa_min_outcome(v: &PaMinVerdict) -> (Outcome, String) {
    match v {
        PaMinVerdict::Violated {
            witnesses,
            refinements_checked,
            refinements_exhausted,
            ..
        } => (
            Outcome::Violated,
            summarize(
                *refinements_checked,
                *refinements_exhausted,
                witnesses.first().map(|w| {
                    format!(
                        "every block pumps strictly, every selection stabilizes ({} blocks)",
                        w.blocks.len()
                    )
                }),
            ),
        ),
        other => (other.outcome(), format!("unexpected: {other:?}")),
    }
}

fn fa_max_outcome(v: &FaMaxVerdict) -> (Outcome, String) {
    match v {
        FaMaxVerdict::Violated {
            witnesses,
            refinements_checked,
            refinements_exhausted,
            ..
        } => (
            Outcome::Violated,
            summarize(
                *refinements_checked,
                *refinements_exhausted,
                witnesses.first().map(|w| {
                    format!(
                        "all {} sets decompose, yet every pair of sets has a non-decomposable cross pair",
                        w.sets.len()
                    )
                }),
            ),
        ),
        other => (other.outcome(), format!("unexpected: {other:?}")),
    }
}

fn pa_max_outcome(v: &PaMaxVerdict) -> (Outcome, String) {
    match v {
        PaMaxVerdict::Violated {
            witnesses,
            refinements_checked,
            refinements_exhausted,
            ..
        } => (
            Outcome::Violated,
            summarize(
                *refinements_checked,
                *refinements_exhausted,
                witnesses.first().map(|w| {
                    format!(
                        "no block decomposes, yet every selection does ({} blocks)",
                        w.blocks.len()
                    )
                }),
            ),
        ),
        other => (other.outcome(), format!("unexpected: {other:?}")),
    }
}

/// Runs all ten strictness rows. Every row is expected to come back with
/// `membership_verified` and a `Violated` outcome; anything else means the
/// demonstration failed and is reported as-is in the row.
pub fn demonstrate(params: &CheckParams) -> Result<Vec<HierarchyRow>, PumpError> {
    let mut rows = Vec::with_capacity(10);

    // ---- min-plus chain -------------------------------------------------

    // U-WA ⊊ FA-WA: min(#a, #b) is finitely ambiguous but pumping b³ after
    // a¹⁶ first grows and then plateaus, breaking the exact dichotomy.
    {
        let f = FunctionHandle::from_oracle("f2", Semiring::MinPlus, corpus::oracles::f2);
        let u = "a".repeat(16);
        let (evidence, verified) =
            machine_membership("w2", Degree::FinitelyAmbiguous, &f, &format!("{u}bbb"))?;
        let verdict = check_nat(&f, &u, "bbb", "", 3, params)?;
        let (outcome, summary) = nat_outcome(&verdict);
        rows.push(HierarchyRow {
            semiring: Semiring::MinPlus,
            function: "f2",
            describes: "min(#a, #b)",
            member_class: "FA-WA",
            excluded_class: "U-WA",
            check: "nat",
            word: format!("{u}bbb"),
            membership_evidence: evidence,
            membership_verified: verified,
            outcome,
            violation_summary: summary,
        });
    }

    // FA-WA ⊊ PA-WA: the best-split statistic of f3 keeps every section
    // set flat at the base value while every union grows.
    {
        let f = FunctionHandle::from_oracle("f3", Semiring::MinPlus, corpus::oracles::f3);
        let r = rep(
            &["", "", "", "", "", "", ""],
            &["bbb", "aaa", "bbb", "aaa", "bbb", "aaa"],
        )?;
        let sets = factor_sets(&[&[1, 2], &[3, 4], &[5, 6]]);
        let (evidence, verified) =
            machine_membership("w3", Degree::PolynomiallyAmbiguous, &f, &r.word())?;
        let verdict = check_finite_min(&f, &r, &sets, 3, params)?;
        let (outcome, summary) = finite_min_outcome(&verdict);
        rows.push(HierarchyRow {
            semiring: Semiring::MinPlus,
            function: "f3",
            describes: "min over cuts of #a before + #b after",
            member_class: "PA-WA",
            excluded_class: "FA-WA",
            check: "finmin",
            word: r.word(),
            membership_evidence: evidence,
            membership_verified: verified,
            outcome,
            violation_summary: summary,
        });
    }

    // FA-WA ⊊ PA-WA again: the shortest b-block plateaus on every
    // complement set yet grows on their unions.
    {
        let f = FunctionHandle::from_oracle("f4", Semiring::MinPlus, corpus::oracles::f4);
        let r = rep(&["", "a", "a", "a"], &["bbb", "bbb", "bbb"])?;
        let sets = factor_sets(&[&[2, 3], &[1, 3], &[1, 2]]);
        let (evidence, verified) =
            machine_membership("w4", Degree::PolynomiallyAmbiguous, &f, &r.word())?;
        let verdict = check_finite_min(&f, &r, &sets, 3, params)?;
        let (outcome, summary) = finite_min_outcome(&verdict);
        rows.push(HierarchyRow {
            semiring: Semiring::MinPlus,
            function: "f4",
            describes: "length of the shortest maximal b-block",
            member_class: "PA-WA",
            excluded_class: "FA-WA",
            check: "finmin",
            word: r.word(),
            membership_evidence: evidence,
            membership_verified: verified,
            outcome,
            violation_summary: summary,
        });
    }

    // PA-WA ⊊ WA: the per-section sum of min(#a, #b) pumps strictly on
    // every block of a section partition while every selection stabilizes.
    {
        let f = FunctionHandle::from_oracle("f5", Semiring::MinPlus, corpus::oracles::f5);
        let r = rep(
            &["", "", "#", "", "#", "", "#", "", ""],
            &["aaa", "bbb", "aaa", "bbb", "aaa", "bbb", "aaa", "bbb"],
        )?;
        let (evidence, verified) =
            machine_membership("w5", Degree::ExponentiallyAmbiguous, &f, &r.word())?;
        let verdict = check_pa_min(&f, &r, &pair_blocks(8), params)?;
        let (outcome, summary) = pa_min_outcome(&verdict);
        rows.push(HierarchyRow {
            semiring: Semiring::MinPlus,
            function: "f5",
            describes: "sum over #-sections of min(#a, #b)",
            member_class: "WA",
            excluded_class: "PA-WA",
            check: "pa-min",
            word: r.word(),
            membership_evidence: evidence,
            membership_verified: verified,
            outcome,
            violation_summary: summary,
        });
    }

    // PA-WA ⊊ WA again, with the sectionwise shortest b-block.
    {
        let f = FunctionHandle::from_oracle("f6", Semiring::MinPlus, corpus::oracles::f6);
        let r = rep(
            &["", "a", "#", "a", "#", "a", "#", "a", ""],
            &["bbb", "bbb", "bbb", "bbb", "bbb", "bbb", "bbb", "bbb"],
        )?;
        let (evidence, verified) =
            machine_membership("f6a", Degree::ExponentiallyAmbiguous, &f, &r.word())?;
        let verdict = check_pa_min(&f, &r, &pair_blocks(8), params)?;
        let (outcome, summary) = pa_min_outcome(&verdict);
        rows.push(HierarchyRow {
            semiring: Semiring::MinPlus,
            function: "f6",
            describes: "sum over #-sections of the shortest maximal b-block",
            member_class: "WA",
            excluded_class: "PA-WA",
            check: "pa-min",
            word: r.word(),
            membership_evidence: evidence,
            membership_verified: verified,
            outcome,
            violation_summary: summary,
        });
    }

    // ---- max-plus chain -------------------------------------------------

    // U-WA ⊊ FA-WA: max(#a, #b) as a maximum of two unambiguous counters;
    // pumping b³ after a¹⁶ first plateaus and then grows.
    {
        let count_a = corpus::machines::letter_counter(Semiring::MaxPlus, &[('a', 1), ('b', 0)]);
        let count_b = corpus::machines::letter_counter(Semiring::MaxPlus, &[('a', 0), ('b', 1)]);
        let parts_unambiguous = classify(&count_a)?.degree == Degree::Unambiguous
            && classify(&count_b)?.degree == Degree::Unambiguous;
        let f = FunctionHandle::max_of("g2", vec![count_a, count_b])?;
        let u = "a".repeat(16);
        let verdict = check_nat(&f, &u, "bbb", "", 3, params)?;
        let (outcome, summary) = nat_outcome(&verdict);
        rows.push(HierarchyRow {
            semiring: Semiring::MaxPlus,
            function: "g2",
            describes: "max(#a, #b)",
            member_class: "FA-WA",
            excluded_class: "U-WA",
            check: "nat",
            word: format!("{u}bbb"),
            membership_evidence:
                "maximum of two single-state letter counters, each classified unambiguous"
                    .to_string(),
            membership_verified: parts_unambiguous,
            outcome,
            violation_summary: summary,
        });
    }

    // FA-WA ⊊ PA-WA: the best-cut statistic of g3 decomposes on every
    // section set, yet every pair of sets has a non-decomposable cross pair.
    {
        let f = FunctionHandle::from_oracle("g3", Semiring::MaxPlus, corpus::oracles::g3);
        let r = rep(
            &["", "", "", "", "", "", "", "", ""],
            &[
                "aaaa", "bbbb", "aaaa", "bbbb", "aaaa", "bbbb", "aaaa", "bbbb",
            ],
        )?;
        let sets = factor_sets(&[&[1, 2], &[3, 4], &[5, 6], &[7, 8]]);
        let (evidence, verified) =
            machine_membership("g3", Degree::PolynomiallyAmbiguous, &f, &r.word())?;
        let verdict = check_fa_max(&f, &r, &sets, params)?;
        let (outcome, summary) = fa_max_outcome(&verdict);
        rows.push(HierarchyRow {
            semiring: Semiring::MaxPlus,
            function: "g3",
            describes: "max over cuts of #a before + #b after",
            member_class: "PA-WA",
            excluded_class: "FA-WA",
            check: "fa-max",
            word: r.word(),
            membership_evidence: evidence,
            membership_verified: verified,
            outcome,
            violation_summary: summary,
        });
    }

    // FA-WA ⊊ PA-WA again: the longest b-block makes singleton sets
    // decomposable but couples every pair through the shared maximum.
    {
        let f = FunctionHandle::from_oracle("g4", Semiring::MaxPlus, corpus::oracles::g4);
        let r = rep(&["", "a", "a", "a", "a"], &["bbbb", "bbbb", "bbbb", "bbbb"])?;
        let sets = factor_sets(&[&[1], &[2], &[3], &[4]]);
        let (evidence, verified) =
            machine_membership("g4", Degree::PolynomiallyAmbiguous, &f, &r.word())?;
        let verdict = check_fa_max(&f, &r, &sets, params)?;
        let (outcome, summary) = fa_max_outcome(&verdict);
        rows.push(HierarchyRow {
            semiring: Semiring::MaxPlus,
            function: "g4",
            describes: "length of the longest maximal b-block",
            member_class: "PA-WA",
            excluded_class: "FA-WA",
            check: "fa-max",
            word: r.word(),
            membership_evidence: evidence,
            membership_verified: verified,
            outcome,
            violation_summary: summary,
        });
    }

    // PA-WA ⊊ WA: the per-section sum of max(#a, #b) has no decomposable
    // block, yet every selection decomposes.
    {
        let f = FunctionHandle::from_oracle("g5", Semiring::MaxPlus, corpus::oracles::g5);
        let r = rep(
            &["", "", "#", "", "#", "", "#", "", ""],
            &["aaa", "bbb", "aaa", "bbb", "aaa", "bbb", "aaa", "bbb"],
        )?;
        let (evidence, verified) =
            machine_membership("g5", Degree::ExponentiallyAmbiguous, &f, &r.word())?;
        let verdict = check_pa_max(&f, &r, &pair_blocks(8), params)?;
        let (outcome, summary) = pa_max_outcome(&verdict);
        rows.push(HierarchyRow {
            semiring: Semiring::MaxPlus,
            function: "g5",
            describes: "sum over #-sections of max(#a, #b)",
            member_class: "WA",
            excluded_class: "PA-WA",
            check: "pa-max",
            word: r.word(),
            membership_evidence: evidence,
            membership_verified: verified,
            outcome,
            violation_summary: summary,
        });
    }

    // PA-WA ⊊ WA again, with the sectionwise best-cut statistic.
    {
        let f = FunctionHandle::from_oracle("g6", Semiring::MaxPlus, corpus::oracles::g6);
        let r = rep(
            &["", "", "#", "", "#", "", "#", "", ""],
            &["bbb", "aaa", "bbb", "aaa", "bbb", "aaa", "bbb", "aaa"],
        )?;
        let (evidence, verified) =
            machine_membership("g6", Degree::ExponentiallyAmbiguous, &f, &r.word())?;
        let verdict = check_pa_max(&f, &r, &pair_blocks(8), params)?;
        let (outcome, summary) = pa_max_outcome(&verdict);
        rows.push(HierarchyRow {
            semiring: Semiring::MaxPlus,
            function: "g6",
            describes: "sum over #-sections of the best-cut statistic",
            member_class: "WA",
            excluded_class: "PA-WA",
            check: "pa-max",
            word: r.word(),
            membership_evidence: evidence,
            membership_verified: verified,
            outcome,
            violation_summary: summary,
        });
    }

    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_row_separates_its_classes() {
        // A reduced horizon and a tight refinement cap keep this unit test
        // quick; the full-parameter run lives in the acceptance suite.
        let params = CheckParams {
            horizon: 24,
            window: 4,
            refinement_cap: 50,
            witness_limit: 4,
        };
        let rows = demonstrate(&params).unwrap();
        assert_eq!(rows.len(), 10);
        for row in &rows {
            assert!(
                row.separates(),
                "row {} ({}) failed: membership_verified={}, outcome={:?}, {}",
                row.function,
                row.check,
                row.membership_verified,
                row.outcome,
                row.violation_summary
            );
        }
        // Both chains are covered: each semiring excludes each smaller class.
        for semiring in [Semiring::MinPlus, Semiring::MaxPlus] {
            for excluded in ["U-WA", "FA-WA", "PA-WA"] {
                assert!(
                    rows.iter()
                        .any(|r| r.semiring == semiring && r.excluded_class == excluded),
                    "no row excludes {excluded} over {semiring}"
                );
            }
        }
    }
}
