//! Exhaustive closure of the rewrite rules.
//!
//! No rule ever lengthens a word (a legal run covers more than half of its
//! cycle, so its complement is no longer), so the set of words reachable
//! from a starting word is finite and breadth-first search with memoization
//! terminates. A word counts as irreducible when no rewrite sequence from it
//! reaches a strictly shorter word; length-preserving rewrites alone (sign
//! flips across a half cycle) do not make a word reducible.
//!
//! A letter whose sheet sits on a 2-cycle of its cut flips sign freely (a run
//! of one covers half that cycle), so the exact closure carries every sign
//! pattern of such letters: 2^f words per class. `reduce_classes` walks the
//! quotient instead, keeping one representative per class, and
//! `expand_classes` restores the exact set afterwards.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{rewrite_type0, rewrite_type1, rewrite_type2, DetailedBranchingWord, Sign};
use crate::cover::SurfaceCover;
use crate::error::CoreError;

/// Visited-word limit that makes runaway searches an explicit error rather
/// than a hang.
pub const DEFAULT_BUDGET: usize = 1_000_000;

fn neighbors(dw: &DetailedBranchingWord, sc: &SurfaceCover) -> Vec<DetailedBranchingWord> {
    let mut out = Vec::new();
    let letters = dw.letters();
    for position in 0..letters.len() {
        if let Ok(w) = rewrite_type0(dw, position) {
            out.push(w);
        }
        if let Ok(w) = rewrite_type1(dw, position) {
            out.push(w);
        }
        let first = letters[position];
        let mut run_length = 1;
        while position + run_length <= letters.len() {
            let l = letters[position + run_length - 1];
            if l.cut != first.cut || l.sign != first.sign {
                break;
            }
            if let Ok(w) = rewrite_type2(dw, position, run_length, sc) {
                out.push(w);
            }
            run_length += 1;
        }
    }
    out
}

/// Which (cut, sheet) pairs sit on a 2-cycle, precomputed so canonicalizing
/// inside the search loop stays cheap.
struct FlipTable {
    by_cut: Vec<Vec<bool>>,
}

impl FlipTable {
    fn new(sc: &SurfaceCover) -> Self {
        let by_cut = sc
            .cuts()
            .iter()
            .map(|p| (1..=sc.k()).map(|s| p.cycle_of(s).len() == 2).collect())
            .collect();
        FlipTable { by_cut }
    }

    fn flippable(&self, cut: usize, from: usize) -> bool {
        self.by_cut
            .get(cut - 1)
            .and_then(|c| c.get(from - 1))
            .copied()
            .unwrap_or(false)
    }

    /// The class representative: every flippable letter positive. Flipping
    /// never moves the sheets (both directions around a 2-cycle agree).
    fn canonicalize(&self, dw: &DetailedBranchingWord) -> DetailedBranchingWord {
        let mut letters = dw.letters().to_vec();
        for l in &mut letters {
            if l.sign == Sign::Neg && self.flippable(l.cut, l.from) {
                l.sign = Sign::Pos;
            }
        }
        DetailedBranchingWord { letters }
    }
}

struct Closure {
    nodes: Vec<DetailedBranchingWord>,
    edges: Vec<Vec<usize>>,
}

fn explore(
    dw: &DetailedBranchingWord,
    sc: &SurfaceCover,
    budget: usize,
    flips: Option<&FlipTable>,
) -> Result<Closure, CoreError> {
    let start = match flips {
        Some(t) => t.canonicalize(dw),
        None => dw.clone(),
    };
    let mut ids: HashMap<DetailedBranchingWord, usize> = HashMap::new();
    let mut nodes = vec![start.clone()];
    ids.insert(start, 0);
    let mut edges: Vec<Vec<usize>> = vec![Vec::new()];
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(id) = queue.pop_front() {
        for next in neighbors(&nodes[id].clone(), sc) {
            let next = match flips {
                Some(t) => {
                    let canonical = t.canonicalize(&next);
                    // a bare sign flip lands back in its own class
                    if canonical == nodes[id] {
                        continue;
                    }
                    canonical
                }
                None => next,
            };
            let next_id = match ids.get(&next) {
                Some(&existing) => existing,
                None => {
                    let new_id = nodes.len();
                    if new_id >= budget {
                        return Err(CoreError::BudgetExhausted { budget });
                    }
                    ids.insert(next.clone(), new_id);
                    nodes.push(next);
                    edges.push(Vec::new());
                    queue.push_back(new_id);
                    new_id
                }
            };
            edges[id].push(next_id);
        }
    }
    Ok(Closure { nodes, edges })
}

fn irreducible_forms(closure: Closure) -> BTreeSet<DetailedBranchingWord> {
    let Closure { nodes, edges } = closure;

    // a node is reducible when some edge path strictly shortens it; seed with
    // direct shortening edges and walk backwards across length-preserving ones
    let mut reducible = vec![false; nodes.len()];
    let mut back: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
    let mut work: Vec<usize> = Vec::new();
    for (id, outgoing) in edges.iter().enumerate() {
        for &next in outgoing {
            if nodes[next].len() < nodes[id].len() {
                if !reducible[id] {
                    reducible[id] = true;
                    work.push(id);
                }
            } else {
                back[next].push(id);
            }
        }
    }
    while let Some(id) = work.pop() {
        for &prev in &back[id] {
            if !reducible[prev] {
                reducible[prev] = true;
                work.push(prev);
            }
        }
    }
    nodes
        .into_iter()
        .zip(reducible)
        .filter_map(|(node, r)| (!r).then_some(node))
        .collect()
}

/// All irreducible words reachable from `dw` by rewrite sequences. Errors if
/// the word does not fit the cover or the visited-word budget runs out.
pub fn reduce_all(
    dw: &DetailedBranchingWord,
    sc: &SurfaceCover,
    budget: usize,
) -> Result<BTreeSet<DetailedBranchingWord>, CoreError> {
    dw.validate_against(sc)?;
    Ok(irreducible_forms(explore(dw, sc, budget, None)?))
}

/// Irreducible sign-flip classes reachable from `dw`, one representative per
/// class with its flippable letters positive. Every exact rewrite projects to
/// a class rewrite: removals and runs on cycles of length 3 or more never
/// involve flippable letters, an opposite-sign pair on a 2-cycle becomes the
/// representative's full two-step run, and a bare flip stays inside its class.
/// Length is constant across a class, so a class is irreducible exactly when
/// its members are, and the search shrinks by a factor of 2^f. Budget and
/// errors as in `reduce_all`.
pub fn reduce_classes(
    dw: &DetailedBranchingWord,
    sc: &SurfaceCover,
    budget: usize,
) -> Result<BTreeSet<DetailedBranchingWord>, CoreError> {
    dw.validate_against(sc)?;
    let flips = FlipTable::new(sc);
    Ok(irreducible_forms(explore(dw, sc, budget, Some(&flips))?))
}

/// Every sign pattern of the flippable letters across the given class
/// representatives: applied to `reduce_classes` output this is exactly the
/// `reduce_all` set. Errors with an exhausted budget when the expansion would
/// exceed `cap` words, which is when the exact search would have blown the
/// same budget.
pub fn expand_classes(
    forms: &BTreeSet<DetailedBranchingWord>,
    sc: &SurfaceCover,
    cap: usize,
) -> Result<BTreeSet<DetailedBranchingWord>, CoreError> {
    let flips = FlipTable::new(sc);
    let mut out = BTreeSet::new();
    for form in forms {
        let positions: Vec<usize> = form
            .letters()
            .iter()
            .enumerate()
            .filter_map(|(i, l)| flips.flippable(l.cut, l.from).then_some(i))
            .collect();
        if positions.len() >= usize::BITS as usize
            || (1usize << positions.len()) > cap.saturating_sub(out.len())
        {
            return Err(CoreError::BudgetExhausted { budget: cap });
        }
        for mask in 0usize..(1 << positions.len()) {
            let mut letters = form.letters().to_vec();
            for (bit, &p) in positions.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    letters[p].sign = letters[p].sign.flip();
                }
            }
            out.insert(DetailedBranchingWord { letters });
        }
    }
    Ok(out)
}

/// One shortest rewrite path from `dw` to `target`, if the target is in the
/// closure. Used to print worked reductions.
pub fn reduction_chain(
    dw: &DetailedBranchingWord,
    sc: &SurfaceCover,
    target: &DetailedBranchingWord,
    budget: usize,
) -> Result<Option<Vec<DetailedBranchingWord>>, CoreError> {
    dw.validate_against(sc)?;
    let mut parent: HashMap<DetailedBranchingWord, Option<DetailedBranchingWord>> = HashMap::new();
    parent.insert(dw.clone(), None);
    let mut queue = VecDeque::from([dw.clone()]);
    while let Some(word) = queue.pop_front() {
        if word == *target {
            let mut chain = vec![word.clone()];
            let mut cursor = word;
            while let Some(Some(prev)) = parent.get(&cursor) {
                chain.push(prev.clone());
                cursor = prev.clone();
            }
            chain.reverse();
            return Ok(Some(chain));
        }
        for next in neighbors(&word, sc) {
            if !parent.contains_key(&next) {
                if parent.len() >= budget {
                    return Err(CoreError::BudgetExhausted { budget });
                }
                parent.insert(next.clone(), Some(word.clone()));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}
