//! Action of a braid on arcs in the punctured disk, reported as branching
//! words over the cuts.
//!
//! Loops around the punctures generate a free group; crossing i sends the
//! i-th generator to the conjugate `x_i x_{i+1} x_i^{-1}` and the (i+1)-st
//! to `x_i`, its inverse acting inversely. The arc enclosing the j-th
//! puncture at its right side is rooted on the boundary; its image under the
//! braid is the image of the loop `x_1 .. x_{j-1} (x_1 .. x_j)^{-1}`
//! re-rooted along the base path, which reads off the crossing sequence
//! through the cuts.

use super::BranchingWord;
use crate::braid::{BraidLetter, BraidWord, Sign};
use crate::error::CoreError;

/// Free words over the cut letters: sign carries inversion.
fn free_reduce(word: impl IntoIterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for g in word {
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

fn substitute(letter: &BraidLetter, word: &[i32]) -> Vec<i32> {
    let i = letter.index as i32;
    let mut out = Vec::with_capacity(word.len() * 3);
    for &g in word {
        let image: &[i32] = match (letter.sign, g.abs()) {
            (Sign::Pos, a) if a == i => &[i, i + 1, -i],
            (Sign::Pos, a) if a == i + 1 => &[i],
            (Sign::Neg, a) if a == i => &[i + 1],
            (Sign::Neg, a) if a == i + 1 => &[-(i + 1), i, i + 1],
            _ => {
                out.push(g);
                continue;
            }
        };
        if g > 0 {
            out.extend_from_slice(image);
        } else {
            out.extend(image.iter().rev().map(|p| -p));
        }
    }
    free_reduce(out)
}

/// Branching word of the image of the arc enclosing the j-th puncture under
/// the braid's diffeomorphism. Freely reduced; empty for the identity braid.
pub fn artin_image(w: &BraidWord, j: usize) -> Result<BranchingWord, CoreError> {
    if j < 1 || j > w.strands() {
        return Err(CoreError::CutOutOfRange {
            cut: j,
            cuts: w.strands(),
        });
    }
    let j = j as i32;
    let mut loop_word: Vec<i32> = (1..j).collect();
    loop_word.extend((1..=j).rev().map(|g| -g));
    for letter in w.letters() {
        loop_word = substitute(letter, &loop_word);
    }
    let rooted = (1..j)
        .rev()
        .map(|g| -g)
        .chain(loop_word)
        .chain(1..=j);
    let reduced = free_reduce(rooted);
    let signed: Vec<i64> = reduced.into_iter().map(i64::from).collect();
    BranchingWord::from_signed(&signed)
}
