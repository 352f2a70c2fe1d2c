//! Witness search for left-veering monodromy.
//!
//! For each cut arc and each starting sheet, the lift of the boundary word is
//! reduced exhaustively; a pair witnesses left-veering when every irreducible
//! form is a nonempty word that does not begin with a positive letter of the
//! designated cut. The first such pair (cuts outermost, sheets innermost)
//! is reported, so the sequential and parallel searches agree exactly.
//!
//! The reduction runs over sign-flip classes and expands the survivors, which
//! gives the same verdict and witness as the exact closure but stays small on
//! covers built from 2-cycles, where the exact closure repeats every sign
//! pattern of the flippable letters.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{artin_image, detail, expand_classes, reduce_classes, DetailedBranchingWord};
use crate::braid::BraidWord;
use crate::cover::{Coloring, SurfaceCover};
use crate::error::CoreError;
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Verdict {
    LeftVeering,
    NoWitnessFound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub cut: usize,
    pub sheet: usize,
    #[serde(serialize_with = "crate::veering::serialize_word_set")]
    pub irreducible: BTreeSet<DetailedBranchingWord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VeeringReport {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub explored_cuts: Vec<usize>,
}

enum PairOutcome {
    Qualifies(BTreeSet<DetailedBranchingWord>),
    Disqualified,
    Exhausted,
}

fn assess_pair(
    lift: &DetailedBranchingWord,
    sc: &SurfaceCover,
    cut: usize,
    budget: usize,
) -> Result<PairOutcome, CoreError> {
    let classes = match reduce_classes(lift, sc, budget) {
        Ok(classes) => classes,
        Err(CoreError::BudgetExhausted { .. }) => return Ok(PairOutcome::Exhausted),
        Err(e) => return Err(e),
    };
    // representatives keep flippable letters positive, so a class contains a
    // word opening with a positive designated-cut letter exactly when its
    // representative does, and the exact predicate transfers unchanged
    let qualifies = classes
        .iter()
        .all(|f| !f.is_empty() && !f.starts_with_positive_cut(cut));
    if !qualifies {
        return Ok(PairOutcome::Disqualified);
    }
    match expand_classes(&classes, sc, budget) {
        Ok(forms) => Ok(PairOutcome::Qualifies(forms)),
        Err(CoreError::BudgetExhausted { .. }) => Ok(PairOutcome::Exhausted),
        Err(e) => Err(e),
    }
}

fn prepare(braid: &BraidWord, c: &Coloring) -> Result<SurfaceCover, CoreError> {
    if !crate::cover::is_valid_cover(braid, c)? {
        return Err(CoreError::InvalidCover);
    }
    Ok(c.as_surface_cover())
}

/// On a single sheet every letter crosses from sheet 1 to sheet 1, so type-0
/// erases any letter and the only irreducible form is the empty word, which
/// never qualifies. Skips the search, which would otherwise walk the whole
/// subword lattice to reach the same verdict.
fn single_sheet_report(strands: usize) -> VeeringReport {
    VeeringReport {
        verdict: Verdict::NoWitnessFound,
        witness: None,
        explored_cuts: (1..=strands).collect(),
    }
}

fn conclude(
    verdict_witness: Option<Witness>,
    explored_cuts: Vec<usize>,
    first_exhausted: Option<(usize, usize)>,
    budget: usize,
) -> Result<VeeringReport, CoreError> {
    if let Some(witness) = verdict_witness {
        return Ok(VeeringReport {
            verdict: Verdict::LeftVeering,
            witness: Some(witness),
            explored_cuts,
        });
    }
    if let Some((cut, sheet)) = first_exhausted {
        return Err(CoreError::WitnessInconclusive { budget, cut, sheet });
    }
    Ok(VeeringReport {
        verdict: Verdict::NoWitnessFound,
        witness: None,
        explored_cuts,
    })
}

/// Single-threaded witness search over all (cut, sheet) pairs.
pub fn left_veering_witness_seq(
    braid: &BraidWord,
    c: &Coloring,
    budget: usize,
) -> Result<VeeringReport, CoreError> {
    let sc = prepare(braid, c)?;
    if c.k() == 1 {
        return Ok(single_sheet_report(braid.strands()));
    }
    let mut explored_cuts = Vec::new();
    let mut first_exhausted = None;
    for cut in 1..=braid.strands() {
        explored_cuts.push(cut);
        let image = artin_image(braid, cut)?;
        for sheet in 1..=c.k() {
            let lift = detail(&image, &sc, sheet)?;
            match assess_pair(&lift, &sc, cut, budget)? {
                PairOutcome::Qualifies(irreducible) => {
                    return conclude(
                        Some(Witness { cut, sheet, irreducible }),
                        explored_cuts,
                        first_exhausted,
                        budget,
                    );
                }
                PairOutcome::Disqualified => {}
                PairOutcome::Exhausted => {
                    first_exhausted.get_or_insert((cut, sheet));
                }
            }
        }
    }
    conclude(None, explored_cuts, first_exhausted, budget)
}

/// Witness search with an explicit reduction budget; fans the starting sheets
/// of each cut out across threads when the parallel feature is on.
pub fn left_veering_witness_with_budget(
    braid: &BraidWord,
    c: &Coloring,
    budget: usize,
) -> Result<VeeringReport, CoreError> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;

        let sc = prepare(braid, c)?;
        if c.k() == 1 {
            return Ok(single_sheet_report(braid.strands()));
        }
        let mut explored_cuts = Vec::new();
        let mut first_exhausted = None;
        for cut in 1..=braid.strands() {
            explored_cuts.push(cut);
            let image = artin_image(braid, cut)?;
            let outcomes: Vec<Result<PairOutcome, CoreError>> = (1..=c.k())
                .into_par_iter()
                .map(|sheet| {
                    let lift = detail(&image, &sc, sheet)?;
                    assess_pair(&lift, &sc, cut, budget)
                })
                .collect();
            for (sheet, outcome) in (1..=c.k()).zip(outcomes) {
                match outcome? {
                    PairOutcome::Qualifies(irreducible) => {
                        return conclude(
                            Some(Witness { cut, sheet, irreducible }),
                            explored_cuts,
                            first_exhausted,
                            budget,
                        );
                    }
                    PairOutcome::Disqualified => {}
                    PairOutcome::Exhausted => {
                        first_exhausted.get_or_insert((cut, sheet));
                    }
                }
            }
        }
        conclude(None, explored_cuts, first_exhausted, budget)
    }
    #[cfg(not(feature = "parallel"))]
    {
        left_veering_witness_seq(braid, c, budget)
    }
}

/// Witness search with the default reduction budget.
pub fn left_veering_witness(braid: &BraidWord, c: &Coloring) -> Result<VeeringReport, CoreError> {
    left_veering_witness_with_budget(braid, c, super::DEFAULT_BUDGET)
}

/// The coloring that sends every strand to the full cycle (1 2 .. k). All
/// strands carry the same permutation, so it is fixed by propagation and
/// valid for every braid on these strands.
pub fn cyclic_coloring(strands: usize, k: usize) -> Result<Coloring, CoreError> {
    let cycle: Vec<usize> = (1..=k).collect();
    let full = Permutation::from_cycles(k, &[&cycle]);
    Coloring::new(k, vec![full; strands])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twist::{twist_braid, TwistKnotSpec};

    fn braid(m: i64) -> BraidWord {
        twist_braid(&TwistKnotSpec::new(m, None).unwrap())
    }

    #[test]
    fn double_cover_of_the_trefoil_side_is_left_veering() {
        let b = braid(2);
        let c = cyclic_coloring(b.strands(), 2).unwrap();
        let report = left_veering_witness(&b, &c).unwrap();
        assert_eq!(report.verdict, Verdict::LeftVeering);
        let w = report.witness.expect("witness accompanies the verdict");
        assert!(!w.irreducible.is_empty());
        assert!(w
            .irreducible
            .iter()
            .all(|f| !f.is_empty() && !f.starts_with_positive_cut(w.cut)));
    }

    #[test]
    fn single_sheet_never_witnesses() {
        let b = braid(2);
        let c = Coloring::trivial(b.strands());
        let report = left_veering_witness(&b, &c).unwrap();
        assert_eq!(report.verdict, Verdict::NoWitnessFound);
        assert!(report.witness.is_none());
        assert_eq!(report.explored_cuts, vec![1, 2, 3]);
    }

    #[test]
    fn quasipositive_side_finds_no_witness() {
        let b = braid(-4);
        let c = cyclic_coloring(b.strands(), 2).unwrap();
        let report = left_veering_witness(&b, &c).unwrap();
        assert_eq!(report.verdict, Verdict::NoWitnessFound);
    }

    #[test]
    fn starved_budget_is_inconclusive() {
        let b = braid(2);
        let c = cyclic_coloring(b.strands(), 2).unwrap();
        match left_veering_witness_with_budget(&b, &c, 1) {
            Err(CoreError::WitnessInconclusive { budget: 1, cut: 1, sheet: 1 }) => {}
            other => panic!("expected inconclusive search, got {other:?}"),
        }
    }

    #[test]
    fn invalid_colorings_are_rejected() {
        let b = braid(2);
        let c = Coloring::new(
            2,
            vec![
                Permutation::from_cycles(2, &[&[1, 2]]),
                Permutation::identity(2),
                Permutation::identity(2),
            ],
        )
        .unwrap();
        assert!(matches!(
            left_veering_witness(&b, &c),
            Err(CoreError::InvalidCover)
        ));
    }

    #[test]
    fn parallel_and_sequential_agree() {
        for m in [2i64, -4] {
            let b = braid(m);
            for k in 2..=3 {
                let c = cyclic_coloring(b.strands(), k).unwrap();
                let par = left_veering_witness(&b, &c).unwrap();
                let seq = left_veering_witness_seq(&b, &c, crate::veering::DEFAULT_BUDGET).unwrap();
                assert_eq!(par, seq);
            }
        }
    }
}
