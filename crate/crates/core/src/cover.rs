//! Branched covers of the disk: strand colorings, closure checking, cover
//! enumeration, the per-family sheet conditions, and lifted-page invariants.
//!
//! A `k`-sheeted cover branched over a braid closure is presented by the
//! tuple of permutations attached to the top arcs of the diagram (the
//! meridian images of the strands on the initial page). Pushing the tuple
//! through every crossing must reproduce it, and the tuple must generate a
//! transitive subgroup for the total space to be connected.
//!
//! Group products are read left to right everywhere: `x y x^{-1}` means
//! "apply `x`, then `y`, then `x^{-1}`", matching [`Permutation::then`].

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::braid::{BraidWord, Sign};
use crate::error::CoreError;
use crate::perm::{all_permutations, transitive, Permutation};
use crate::twist::Family;

/// Assignment of a permutation in `S_k` to each top arc of a braid diagram.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Coloring {
    k: usize,
    initial: Vec<Permutation>,
}

impl Coloring {
    pub fn new(k: usize, initial: Vec<Permutation>) -> Result<Self, CoreError> {
        if k < 1 {
            return Err(CoreError::InvalidCover);
        }
        for p in &initial {
            if p.degree() != k {
                return Err(CoreError::DegreeMismatch { k, got: p.degree() });
            }
        }
        Ok(Coloring { k, initial })
    }

    /// The degree-1 coloring of a braid: one trivial sheet.
    pub fn trivial(strands: usize) -> Self {
        Coloring {
            k: 1,
            initial: vec![Permutation::identity(1); strands],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn strands(&self) -> usize {
        self.initial.len()
    }

    pub fn initial(&self) -> &[Permutation] {
        &self.initial
    }

    /// Reinterprets the strand permutations as branch-cut monodromies.
    pub fn as_surface_cover(&self) -> SurfaceCover {
        SurfaceCover {
            k: self.k,
            cuts: self.initial.clone(),
        }
    }
}

/// A branched cover of the disk presented by the monodromy around each
/// branch cut, independent of any braid.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct SurfaceCover {
    k: usize,
    cuts: Vec<Permutation>,
}

impl SurfaceCover {
    pub fn new(k: usize, cuts: Vec<Permutation>) -> Result<Self, CoreError> {
        if k < 1 {
            return Err(CoreError::InvalidCover);
        }
        for p in &cuts {
            if p.degree() != k {
                return Err(CoreError::DegreeMismatch { k, got: p.degree() });
            }
        }
        Ok(SurfaceCover { k, cuts })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cut_count(&self) -> usize {
        self.cuts.len()
    }

    pub fn cuts(&self) -> &[Permutation] {
        &self.cuts
    }

    /// Monodromy at the 1-based cut `j`.
    pub fn cut(&self, j: usize) -> Result<&Permutation, CoreError> {
        self.cuts.get(j.wrapping_sub(1)).ok_or(CoreError::CutOutOfRange {
            cut: j,
            cuts: self.cuts.len(),
        })
    }
}

/// Strand tuples at every horizontal level of the diagram: `levels[t]` is the
/// tuple after the first `t` crossings, so `levels[0]` is the initial one.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PropagationTrace {
    pub levels: Vec<Vec<Permutation>>,
}

impl PropagationTrace {
    pub fn final_tuple(&self) -> &[Permutation] {
        self.levels.last().expect("levels nonempty by construction")
    }
}

/// Meridian update at one crossing. At a positive crossing the left strand
/// dives under and emerges conjugated: `(x, y) -> (y, y^{-1} x y)`. A negative
/// crossing is the inverse map, `(x, y) -> (x y x^{-1}, x)`. The orientation
/// (this rule rather than its mirror) is pinned by the equivalence tests
/// against the per-family relation systems in `tests/cover_oracle.rs`.
fn cross(x: &Permutation, y: &Permutation, sign: Sign) -> (Permutation, Permutation) {
    match sign {
        Sign::Pos => (y.clone(), y.inverse().then(x).then(y)),
        Sign::Neg => (x.then(y).then(&x.inverse()), x.clone()),
    }
}

/// Pushes the coloring through every crossing of the braid.
pub fn propagate(braid: &BraidWord, c: &Coloring) -> Result<PropagationTrace, CoreError> {
    if c.strands() != braid.strands() {
        return Err(CoreError::ColoringShape {
            expected: braid.strands(),
            got: c.strands(),
        });
    }
    let mut levels = Vec::with_capacity(braid.len() + 1);
    let mut current = c.initial.clone();
    levels.push(current.clone());
    for letter in braid.letters() {
        let i = letter.index - 1;
        let (left, right) = cross(&current[i], &current[i + 1], letter.sign);
        current[i] = left;
        current[i + 1] = right;
        levels.push(current.clone());
    }
    Ok(PropagationTrace { levels })
}

/// Whether the coloring closes up around the braid closure and presents a
/// connected cover.
pub fn is_valid_cover(braid: &BraidWord, c: &Coloring) -> Result<bool, CoreError> {
    let trace = propagate(braid, c)?;
    Ok(trace.final_tuple() == c.initial() && transitive(&c.initial, c.k))
}

/// Lexicographically least simultaneous conjugate of the tuple, the
/// canonical representative of its equivalence class.
fn canonical_tuple(perms: &[Permutation], k: usize) -> Vec<Permutation> {
    let mut best: Option<Vec<Permutation>> = None;
    for g in all_permutations(k) {
        let image: Vec<Permutation> = perms.iter().map(|p| p.conjugated_by(&g)).collect();
        if best.as_ref().map_or(true, |b| image < *b) {
            best = Some(image);
        }
    }
    best.expect("S_k is nonempty")
}

struct SearchSpace {
    k: usize,
    strands: usize,
    /// All of `S_k` grouped by cycle type, each group sorted.
    classes: BTreeMap<Vec<usize>, Vec<Permutation>>,
    /// For each 0-based strand: `None` marks the least strand of its cycle
    /// under the braid's permutation, `Some(l)` points at that leader.
    leader: Vec<Option<usize>>,
}

impl SearchSpace {
    fn new(braid: &BraidWord, k: usize) -> Self {
        let mut classes: BTreeMap<Vec<usize>, Vec<Permutation>> = BTreeMap::new();
        for p in all_permutations(k) {
            classes.entry(p.cycle_type()).or_default().push(p);
        }
        let pi = braid.underlying_permutation();
        let strands = braid.strands();
        let mut leader = vec![None; strands];
        for cycle in pi.cycles() {
            let lead = *cycle.iter().min().expect("cycles are nonempty") - 1;
            for &member in &cycle {
                if member - 1 != lead {
                    leader[member - 1] = Some(lead);
                }
            }
        }
        SearchSpace {
            k,
            strands,
            classes,
            leader,
        }
    }

    /// Class representatives, the candidates for strand 1. Valid tuples are
    /// closed under simultaneous conjugation, so strand 1 can be normalized
    /// to the least member of its class before searching the rest.
    fn first_candidates(&self) -> Vec<Permutation> {
        self.classes.values().map(|c| c[0].clone()).collect()
    }

    /// Depth-first fill of strands `from..`, collecting canonical forms of
    /// every valid completion. Strands sharing a braid-permutation cycle are
    /// conjugate in any valid cover, which cuts each such slot to one
    /// conjugacy class.
    fn extend(
        &self,
        braid: &BraidWord,
        current: &mut Vec<Permutation>,
        found: &mut BTreeSet<Vec<Permutation>>,
    ) {
        let j = current.len();
        if j == self.strands {
            let c = Coloring {
                k: self.k,
                initial: current.clone(),
            };
            if is_valid_cover(braid, &c).expect("shape checked by construction") {
                found.insert(canonical_tuple(current, self.k));
            }
            return;
        }
        match self.leader[j] {
            Some(l) => {
                let ty = current[l].cycle_type();
                let members = self.classes[&ty].clone();
                for p in members {
                    current.push(p);
                    self.extend(braid, current, found);
                    current.pop();
                }
            }
            None => {
                for members in self.classes.clone().values() {
                    for p in members {
                        current.push(p.clone());
                        self.extend(braid, current, found);
                        current.pop();
                    }
                }
            }
        }
    }
}

fn collect_covers(
    braid: &BraidWord,
    space: &SearchSpace,
    first: Permutation,
) -> BTreeSet<Vec<Permutation>> {
    let mut found = BTreeSet::new();
    let mut current = vec![first];
    space.extend(braid, &mut current, &mut found);
    found
}

fn finish(found: BTreeSet<Vec<Permutation>>, k: usize) -> Vec<Coloring> {
    found
        .into_iter()
        .map(|initial| Coloring { k, initial })
        .collect()
}

/// All connected `k`-sheeted covers branched over the closure, one canonical
/// representative per simultaneous-conjugation class, in sorted order.
pub fn enumerate_covers_seq(braid: &BraidWord, k: usize) -> Result<Vec<Coloring>, CoreError> {
    if k < 1 {
        return Err(CoreError::InvalidCover);
    }
    let space = SearchSpace::new(braid, k);
    let mut found = BTreeSet::new();
    for first in space.first_candidates() {
        found.append(&mut collect_covers(braid, &space, first));
    }
    Ok(finish(found, k))
}

/// Parallel version of [`enumerate_covers_seq`]; identical output.
pub fn enumerate_covers(braid: &BraidWord, k: usize) -> Result<Vec<Coloring>, CoreError> {
    #[cfg(feature = "parallel")]
    {
        if k < 1 {
            return Err(CoreError::InvalidCover);
        }
        let space = SearchSpace::new(braid, k);
        let found = space
            .first_candidates()
            .into_par_iter()
            .map(|first| collect_covers(braid, &space, first))
            .reduce(BTreeSet::new, |mut a, mut b| {
                a.append(&mut b);
                a
            });
        Ok(finish(found, k))
    }
    #[cfg(not(feature = "parallel"))]
    {
        enumerate_covers_seq(braid, k)
    }
}

/// Sheet condition attached to one of the three knot families whose
/// branching word is known in closed form.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ConditionSpec {
    pub family: Family,
    pub n: usize,
}

/// Smallest sheet on which the family's two inequalities hold, if any.
///
/// Writing `a_j` for the strand permutations, the designated-cut arc of each
/// family branches at its first cut (`a_j(i) != i` for the cut `j` opening
/// the branching word) and again after traversing the word's middle loop.
pub fn check_condition(c: &Coloring, spec: &ConditionSpec) -> Result<Option<usize>, CoreError> {
    let n = spec.n;
    let expected_strands = n + 2;
    if c.strands() != expected_strands {
        return Err(CoreError::ColoringShape {
            expected: expected_strands,
            got: c.strands(),
        });
    }
    let a = |j: usize| &c.initial[j - 1];
    // the permutation accumulated along the word's middle loop, first cut first
    let mut acc = Permutation::identity(c.k);
    let (opening, loop_perm, closing) = match spec.family {
        Family::EvenPositive => {
            for j in 1..=n + 1 {
                acc = acc.then(a(j));
            }
            (a(n + 1), acc, a(n + 2).inverse())
        }
        Family::OddNegative => {
            acc = acc.then(a(n + 2));
            for j in 1..=n {
                acc = acc.then(a(j));
            }
            (a(n), acc, a(n + 1).inverse())
        }
        Family::OddPositive => {
            for j in (1..=n).rev() {
                acc = acc.then(&a(j).inverse());
            }
            acc = acc.then(&a(n + 2).inverse());
            (a(n + 1), acc, a(n + 1).inverse())
        }
        Family::EvenNegative => {
            return Err(CoreError::UnsupportedFamily {
                family: Family::EvenNegative.name(),
            })
        }
    };
    for i in 1..=c.k {
        let mid = loop_perm.apply(i);
        if opening.apply(i) != i && closing.apply(mid) != mid {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Euler characteristic, boundary components and genus of the surface the
/// disk lifts to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct PageInvariants {
    pub euler: i64,
    pub boundary: usize,
    pub genus: i64,
}

/// Branched-cover invariants of the lifted page: the Euler characteristic by
/// sheet-and-branching count, boundary components as cycles of the full
/// boundary monodromy (cuts multiplied first to last), and the genus they
/// force. A non-integral or negative genus signals inconsistent data.
pub fn lifted_page_invariants(sc: &SurfaceCover) -> Result<PageInvariants, CoreError> {
    let k = sc.k as i64;
    let euler = k - sc
        .cuts
        .iter()
        .map(|p| k - p.cycle_count() as i64)
        .sum::<i64>();
    let boundary_monodromy = sc
        .cuts
        .iter()
        .fold(Permutation::identity(sc.k), |acc, p| acc.then(p));
    let boundary = boundary_monodromy.cycle_count();
    let two_genus = 2 - boundary as i64 - euler;
    if two_genus < 0 || two_genus % 2 != 0 {
        return Err(CoreError::BadSurfaceData { euler, boundary });
    }
    Ok(PageInvariants {
        euler,
        boundary,
        genus: two_genus / 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(k: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(k, cycles)
    }

    fn braid(text: &str) -> BraidWord {
        BraidWord::parse(text, None).unwrap()
    }

    /// Branch data of the seven-sheet disk cover used as the running example.
    pub fn seven_sheet_cover() -> SurfaceCover {
        SurfaceCover::new(
            7,
            vec![
                perm(7, &[&[1, 6], &[2, 4], &[3, 7]]),
                perm(7, &[&[1, 2], &[3, 4], &[5, 6]]),
                perm(7, &[&[2, 3], &[4, 5], &[6, 7]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn propagation_levels_and_shape() {
        let b = braid("2 -1 -1 -2 1 2");
        let t = perm(2, &[&[1, 2]]);
        let c = Coloring::new(2, vec![t.clone(), t.clone(), t.clone()]).unwrap();
        let trace = propagate(&b, &c).unwrap();
        assert_eq!(trace.levels.len(), 7);
        assert_eq!(trace.levels[0], c.initial());
        assert_eq!(trace.final_tuple(), c.initial());

        let wrong = Coloring::new(2, vec![t.clone(), t]).unwrap();
        assert!(matches!(
            propagate(&b, &wrong),
            Err(CoreError::ColoringShape { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn identity_braid_propagates_to_itself() {
        let b = BraidWord::parse("", Some(3)).unwrap();
        let c = Coloring::new(
            3,
            vec![
                perm(3, &[&[1, 2, 3]]),
                perm(3, &[&[1, 2]]),
                perm(3, &[&[2, 3]]),
            ],
        )
        .unwrap();
        let trace = propagate(&b, &c).unwrap();
        assert_eq!(trace.levels.len(), 1);
        assert_eq!(trace.final_tuple(), c.initial());
    }

    #[test]
    fn single_positive_crossing_rule() {
        let b = BraidWord::parse("1", Some(2)).unwrap();
        let x = perm(3, &[&[1, 2, 3]]);
        let y = perm(3, &[&[1, 2]]);
        let c = Coloring::new(3, vec![x.clone(), y.clone()]).unwrap();
        let trace = propagate(&b, &c).unwrap();
        let expected_right = y.inverse().then(&x).then(&y);
        assert_eq!(trace.final_tuple(), &[y.clone(), expected_right]);

        // the negative crossing undoes it
        let b2 = BraidWord::parse("1 -1", Some(2)).unwrap();
        let trace2 = propagate(&b2, &c).unwrap();
        assert_eq!(trace2.final_tuple(), c.initial());
    }

    #[test]
    fn validity_needs_closure_and_transitivity() {
        let b = braid("2 -1 -1 -2 1 2");
        let t = perm(2, &[&[1, 2]]);
        let id = Permutation::identity(2);
        let all = Coloring::new(2, vec![t.clone(), t.clone(), t.clone()]).unwrap();
        assert!(is_valid_cover(&b, &all).unwrap());
        let broken = Coloring::new(2, vec![t, id.clone(), id]).unwrap();
        assert!(!is_valid_cover(&b, &broken).unwrap());
        assert!(is_valid_cover(&b, &Coloring::trivial(3)).unwrap());
    }

    #[test]
    fn degree_one_and_two_enumeration() {
        let b = braid("2 -1 -1 -2 1 2");
        let deg1 = enumerate_covers(&b, 1).unwrap();
        assert_eq!(deg1, vec![Coloring::trivial(3)]);

        let deg2 = enumerate_covers(&b, 2).unwrap();
        let t = perm(2, &[&[1, 2]]);
        assert_eq!(
            deg2,
            vec![Coloring::new(2, vec![t.clone(), t.clone(), t]).unwrap()]
        );
    }

    #[test]
    fn enumeration_is_deterministic_and_matches_seq() {
        let b = braid("2 -1 -1 -2 1 2");
        for k in 1..=4 {
            let par = enumerate_covers(&b, k).unwrap();
            let seq = enumerate_covers_seq(&b, k).unwrap();
            assert_eq!(par, seq, "k={k}");
            assert_eq!(par, enumerate_covers(&b, k).unwrap(), "k={k} rerun");
        }
    }

    #[test]
    fn three_sheet_covers_have_no_transpositions() {
        let b = braid("2 -1 -1 -2 1 2");
        for c in enumerate_covers(&b, 3).unwrap() {
            assert!(c.initial().iter().all(|p| p.cycle_type() != vec![1, 2]));
        }
    }

    #[test]
    fn condition_on_the_double_cover() {
        let t = perm(2, &[&[1, 2]]);
        let c = Coloring::new(2, vec![t.clone(), t.clone(), t]).unwrap();
        let spec = ConditionSpec {
            family: Family::EvenPositive,
            n: 1,
        };
        assert_eq!(check_condition(&c, &spec).unwrap(), Some(1));
        assert_eq!(
            check_condition(
                &Coloring::trivial(3),
                &ConditionSpec {
                    family: Family::EvenPositive,
                    n: 1
                }
            )
            .unwrap(),
            None
        );
    }

    #[test]
    fn page_invariants_of_the_seven_sheet_cover() {
        let inv = lifted_page_invariants(&seven_sheet_cover()).unwrap();
        assert_eq!(
            inv,
            PageInvariants {
                euler: -2,
                boundary: 4,
                genus: 0
            }
        );
    }

    #[test]
    fn page_invariants_of_disks() {
        let trivial = SurfaceCover::new(1, vec![Permutation::identity(1); 3]).unwrap();
        let inv = lifted_page_invariants(&trivial).unwrap();
        assert_eq!((inv.euler, inv.boundary, inv.genus), (1, 1, 0));

        let double = SurfaceCover::new(2, vec![perm(2, &[&[1, 2]])]).unwrap();
        let inv = lifted_page_invariants(&double).unwrap();
        assert_eq!((inv.euler, inv.boundary, inv.genus), (1, 1, 0));
    }

    #[test]
    fn cover_json_schema() {
        let t = perm(2, &[&[1, 2]]);
        let c = Coloring::new(2, vec![t.clone(), t.clone(), t]).unwrap();
        let js = serde_json::to_string(&c).unwrap();
        assert_eq!(js, r#"{"k":2,"initial":[[2,1],[2,1],[2,1]]}"#);
        let back: Coloring = serde_json::from_str(&js).unwrap();
        assert_eq!(back, c);
    }
}
