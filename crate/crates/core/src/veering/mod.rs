//! The branching-word calculus: images of boundary arcs under a braid's
//! action on the punctured disk, sheet-decorated words over a branched
//! cover, the three local simplification rules, exhaustive reduction, and
//! the left-veering witness detector built on them.

pub mod artin;
mod reduce;
mod witness;

pub use artin::artin_image;
pub use reduce::{expand_classes, reduce_all, reduce_classes, reduction_chain, DEFAULT_BUDGET};
pub use witness::{
    cyclic_coloring, left_veering_witness, left_veering_witness_seq,
    left_veering_witness_with_budget, Verdict, VeeringReport, Witness,
};

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

pub use crate::braid::Sign;
use crate::cover::SurfaceCover;
use crate::error::CoreError;
use crate::perm::Permutation;

/// One signed crossing of a branch cut.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CutLetter {
    pub cut: usize,
    pub sign: Sign,
}

impl fmt::Display for CutLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}", self.cut)?;
        if self.sign == Sign::Neg {
            write!(f, "'")?;
        }
        Ok(())
    }
}

/// The ordered record of an arc's crossings through the branch cuts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct BranchingWord {
    letters: Vec<CutLetter>,
}

impl BranchingWord {
    pub fn new(letters: Vec<CutLetter>) -> Result<Self, CoreError> {
        for l in &letters {
            if l.cut < 1 {
                return Err(CoreError::CutOutOfRange { cut: l.cut, cuts: 0 });
            }
        }
        Ok(BranchingWord { letters })
    }

    pub fn empty() -> Self {
        BranchingWord::default()
    }

    /// Letters as signed cut indices, sign −1 marking an inverse crossing.
    pub fn from_signed(values: &[i64]) -> Result<Self, CoreError> {
        let letters = values
            .iter()
            .map(|&v| {
                if v == 0 {
                    Err(CoreError::CutOutOfRange { cut: 0, cuts: 0 })
                } else {
                    Ok(CutLetter {
                        cut: v.unsigned_abs() as usize,
                        sign: if v > 0 { Sign::Pos } else { Sign::Neg },
                    })
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(BranchingWord { letters })
    }

    pub fn parse(text: &str) -> Result<Self, CoreError> {
        let letters = text
            .split_whitespace()
            .map(parse_cut_letter)
            .collect::<Result<_, _>>()?;
        Ok(BranchingWord { letters })
    }

    pub fn letters(&self) -> &[CutLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn signed_letters(&self) -> Vec<i64> {
        self.letters
            .iter()
            .map(|l| l.cut as i64 * l.sign.as_i64())
            .collect()
    }

    /// Cancels adjacent mutually inverse crossings until none remain.
    pub fn free_reduced(&self) -> Self {
        let mut out: Vec<CutLetter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&top) if top.cut == l.cut && top.sign == l.sign.flip() => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        BranchingWord { letters: out }
    }

    pub fn starts_with_cut(&self, cut: usize) -> bool {
        self.letters
            .first()
            .is_some_and(|l| l.cut == cut && l.sign == Sign::Pos)
    }
}

impl fmt::Display for BranchingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for BranchingWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn parse_cut_letter(token: &str) -> Result<CutLetter, CoreError> {
    let bad = || CoreError::DetailedParse {
        token: token.to_string(),
    };
    let body = token.strip_prefix('A').ok_or_else(bad)?;
    let (digits, sign) = match body.strip_suffix('\'') {
        Some(rest) => (rest, Sign::Neg),
        None => (body, Sign::Pos),
    };
    let cut: usize = digits.parse().map_err(|_| bad())?;
    if cut < 1 {
        return Err(bad());
    }
    Ok(CutLetter { cut, sign })
}

/// A cut crossing decorated with the sheets it connects in a cover.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DetailedLetter {
    pub cut: usize,
    pub sign: Sign,
    pub from: usize,
    pub to: usize,
}

impl fmt::Display for DetailedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}{{{}->{}}}", self.cut, self.from, self.to)?;
        if self.sign == Sign::Neg {
            write!(f, "'")?;
        }
        Ok(())
    }
}

/// A branching word lifted to the cover: consecutive letters chain through
/// sheets (each `from` equals the previous `to`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct DetailedBranchingWord {
    letters: Vec<DetailedLetter>,
}

impl DetailedBranchingWord {
    pub fn new(letters: Vec<DetailedLetter>) -> Result<Self, CoreError> {
        for pos in 1..letters.len() {
            if letters[pos].from != letters[pos - 1].to {
                return Err(CoreError::BrokenChain {
                    position: pos,
                    expected: letters[pos - 1].to,
                    got: letters[pos].from,
                });
            }
        }
        Ok(DetailedBranchingWord { letters })
    }

    pub fn empty() -> Self {
        DetailedBranchingWord::default()
    }

    pub fn parse(text: &str) -> Result<Self, CoreError> {
        let letters = text
            .split_whitespace()
            .map(parse_detailed_letter)
            .collect::<Result<Vec<_>, _>>()?;
        DetailedBranchingWord::new(letters)
    }

    pub fn letters(&self) -> &[DetailedLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn start_sheet(&self) -> Option<usize> {
        self.letters.first().map(|l| l.from)
    }

    pub fn end_sheet(&self) -> Option<usize> {
        self.letters.last().map(|l| l.to)
    }

    /// Drops the sheet decorations.
    pub fn strip(&self) -> BranchingWord {
        BranchingWord {
            letters: self
                .letters
                .iter()
                .map(|l| CutLetter {
                    cut: l.cut,
                    sign: l.sign,
                })
                .collect(),
        }
    }

    pub fn starts_with_positive_cut(&self, cut: usize) -> bool {
        self.letters
            .first()
            .is_some_and(|l| l.cut == cut && l.sign == Sign::Pos)
    }

    /// Checks every sheet transition against the cover's cut permutations.
    pub fn validate_against(&self, sc: &SurfaceCover) -> Result<(), CoreError> {
        for (position, l) in self.letters.iter().enumerate() {
            let perm = sc.cut(l.cut)?;
            if l.from < 1 || l.from > sc.k() {
                return Err(CoreError::SheetOutOfRange {
                    sheet: l.from,
                    k: sc.k(),
                });
            }
            if step(perm, l.sign, l.from) != l.to {
                return Err(CoreError::BadTransition {
                    position,
                    cut: l.cut,
                    from: l.from,
                    to: l.to,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for DetailedBranchingWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for DetailedBranchingWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Serializes a collection of detailed words as their text forms.
pub(crate) fn serialize_word_set<S: Serializer>(
    words: &std::collections::BTreeSet<DetailedBranchingWord>,
    s: S,
) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(words.len()))?;
    for w in words {
        seq.serialize_element(&w.to_string())?;
    }
    seq.end()
}

fn parse_detailed_letter(token: &str) -> Result<DetailedLetter, CoreError> {
    let bad = || CoreError::DetailedParse {
        token: token.to_string(),
    };
    let body = token.strip_prefix('A').ok_or_else(bad)?;
    let (body, sign) = match body.strip_suffix('\'') {
        Some(rest) => (rest, Sign::Neg),
        None => (body, Sign::Pos),
    };
    let body = body.strip_suffix('}').ok_or_else(bad)?;
    let (cut_digits, transition) = body.split_once('{').ok_or_else(bad)?;
    let (from_digits, to_digits) = transition.split_once("->").ok_or_else(bad)?;
    let cut = cut_digits.parse().map_err(|_| bad())?;
    let from = from_digits.parse().map_err(|_| bad())?;
    let to = to_digits.parse().map_err(|_| bad())?;
    if cut < 1 || from < 1 || to < 1 {
        return Err(bad());
    }
    Ok(DetailedLetter {
        cut,
        sign,
        from,
        to,
    })
}

fn step(perm: &Permutation, sign: Sign, sheet: usize) -> usize {
    match sign {
        Sign::Pos => perm.apply(sheet),
        Sign::Neg => perm.inverse().apply(sheet),
    }
}

/// Lifts the word to the cover starting on the given sheet: a positive
/// crossing of cut j moves sheet s to a_j(s), a negative one to a_j^{-1}(s).
pub fn detail(
    bw: &BranchingWord,
    sc: &SurfaceCover,
    start_sheet: usize,
) -> Result<DetailedBranchingWord, CoreError> {
    if start_sheet < 1 || start_sheet > sc.k() {
        return Err(CoreError::SheetOutOfRange {
            sheet: start_sheet,
            k: sc.k(),
        });
    }
    let mut sheet = start_sheet;
    let mut letters = Vec::with_capacity(bw.len());
    for l in bw.letters() {
        let to = step(sc.cut(l.cut)?, l.sign, sheet);
        letters.push(DetailedLetter {
            cut: l.cut,
            sign: l.sign,
            from: sheet,
            to,
        });
        sheet = to;
    }
    Ok(DetailedBranchingWord { letters })
}

fn rule_mismatch(position: usize, reason: &str) -> CoreError {
    CoreError::RuleMismatch {
        position,
        reason: reason.to_string(),
    }
}

/// Removes the letter at `position`, legal when it returns to its own sheet
/// (the crossing retracts off the branch point).
pub fn rewrite_type0(
    dw: &DetailedBranchingWord,
    position: usize,
) -> Result<DetailedBranchingWord, CoreError> {
    let l = dw
        .letters
        .get(position)
        .ok_or_else(|| rule_mismatch(position, "position out of range"))?;
    if l.from != l.to {
        return Err(rule_mismatch(position, "letter does not fix its sheet"));
    }
    let mut letters = dw.letters.clone();
    letters.remove(position);
    Ok(DetailedBranchingWord { letters })
}

/// Removes the back-to-back pair at `position`, `position + 1`: same cut,
/// opposite signs, mirrored sheets.
pub fn rewrite_type1(
    dw: &DetailedBranchingWord,
    position: usize,
) -> Result<DetailedBranchingWord, CoreError> {
    if position + 1 >= dw.letters.len() {
        return Err(rule_mismatch(position, "no adjacent pair at position"));
    }
    let (a, b) = (dw.letters[position], dw.letters[position + 1]);
    if a.cut != b.cut {
        return Err(rule_mismatch(position, "pair uses different cuts"));
    }
    if a.sign != b.sign.flip() {
        return Err(rule_mismatch(position, "pair has equal signs"));
    }
    if b.from != a.to || b.to != a.from {
        return Err(rule_mismatch(position, "sheets are not mirrored"));
    }
    let mut letters = dw.letters.clone();
    letters.drain(position..position + 2);
    Ok(DetailedBranchingWord { letters })
}

/// Replaces the run of `run_length` same-cut same-sign letters starting at
/// `position` by the complementary walk around the cut's sheet cycle, in the
/// opposite direction and sign. With n the cycle length, the run must cover
/// more than half the cycle (run_length ≥ ⌈n/2⌉, i.e. the visited-sheet
/// count exceeds ⌈n/2⌉) and at most all of it; the replacement has
/// n − run_length letters, so the word never grows.
pub fn rewrite_type2(
    dw: &DetailedBranchingWord,
    position: usize,
    run_length: usize,
    sc: &SurfaceCover,
) -> Result<DetailedBranchingWord, CoreError> {
    if run_length < 1 {
        return Err(rule_mismatch(position, "empty run"));
    }
    let end = position + run_length;
    if end > dw.letters.len() {
        return Err(rule_mismatch(position, "run exceeds the word"));
    }
    let run = &dw.letters[position..end];
    let first = run[0];
    let perm = sc.cut(first.cut)?;
    if first.from < 1 || first.from > sc.k() {
        return Err(CoreError::SheetOutOfRange {
            sheet: first.from,
            k: sc.k(),
        });
    }
    let mut sheet = first.from;
    for (offset, l) in run.iter().enumerate() {
        if l.cut != first.cut {
            return Err(rule_mismatch(position + offset, "run changes cut"));
        }
        if l.sign != first.sign {
            return Err(rule_mismatch(position + offset, "run changes sign"));
        }
        if l.from != sheet {
            return Err(rule_mismatch(position + offset, "run breaks the sheet chain"));
        }
        if step(perm, l.sign, l.from) != l.to {
            return Err(CoreError::BadTransition {
                position: position + offset,
                cut: l.cut,
                from: l.from,
                to: l.to,
            });
        }
        sheet = l.to;
    }
    let cycle_length = perm.cycle_of(first.from).len();
    if run_length > cycle_length {
        return Err(rule_mismatch(position, "run wraps past the full cycle"));
    }
    if run_length < cycle_length.div_ceil(2) {
        return Err(rule_mismatch(
            position,
            "run covers at most half of the cycle",
        ));
    }
    let sign = first.sign.flip();
    let mut letters: Vec<DetailedLetter> = dw.letters[..position].to_vec();
    let mut sheet = first.from;
    for _ in 0..cycle_length - run_length {
        let to = step(perm, sign, sheet);
        letters.push(DetailedLetter {
            cut: first.cut,
            sign,
            from: sheet,
            to,
        });
        sheet = to;
    }
    debug_assert_eq!(sheet, run[run_length - 1].to);
    letters.extend_from_slice(&dw.letters[end..]);
    Ok(DetailedBranchingWord { letters })
}

/// The seven-sheet disk cover used as the running worked example, with the
/// branching word of the studied arc and its start sheet.
pub fn worked_example() -> (SurfaceCover, BranchingWord, usize) {
    let cover = SurfaceCover::new(
        7,
        vec![
            Permutation::from_cycles(7, &[&[1, 6], &[2, 4], &[3, 7]]),
            Permutation::from_cycles(7, &[&[1, 2], &[3, 4], &[5, 6]]),
            Permutation::from_cycles(7, &[&[2, 3], &[4, 5], &[6, 7]]),
        ],
    )
    .expect("fixture data is well formed");
    let word = BranchingWord::from_signed(&[2, 3, 1, 2, 3, -2, -1, 2, 1, 2, -3])
        .expect("fixture data is well formed");
    (cover, word, 6)
}
