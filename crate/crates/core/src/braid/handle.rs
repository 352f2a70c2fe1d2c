//! Handle reduction, the word-problem engine behind [`braid_equal`].
//!
//! A `sigma_i`-handle is a subword `sigma_i^e v sigma_i^{-e}` whose interior
//! `v` contains no letter of index `i` or `i - 1`. Reducing it drops the two
//! outer letters and conjugates the interior through: letters of index
//! `i + 1` pick up the braid relation, everything else commutes past.
//! Reduction sequences always terminate, and a nonempty word with no handle
//! uses its lowest generator with a single sign, so it cannot be trivial.
//! Hence: trivial iff reduction reaches the empty word.
//!
//! We always reduce the handle whose closing letter is leftmost. That handle
//! contains no nested handle (one would close even earlier), which keeps the
//! interior from blowing up.
//!
//! [`braid_equal`]: super::braid_equal

use super::BraidLetter;

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(letters: &[BraidLetter]) -> Vec<BraidLetter> {
    let mut out: Vec<BraidLetter> = Vec::with_capacity(letters.len());
    for &l in letters {
        match out.last() {
            Some(&top) if top == l.inverse() => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

/// Leftmost-closing handle as `(open, close)` positions, or `None` if the
/// word is handle-free.
fn find_handle(word: &[BraidLetter]) -> Option<(usize, usize)> {
    for t in 1..word.len() {
        let close = word[t];
        for s in (0..t).rev() {
            let cand = word[s];
            if cand.index == close.index {
                if cand.sign != close.sign {
                    return Some((s, t));
                }
                break;
            }
            if cand.index + 1 == close.index {
                break;
            }
        }
    }
    None
}

fn reduce_handle(word: &[BraidLetter], open: usize, close: usize) -> Vec<BraidLetter> {
    let i = word[open].index;
    let e = word[open].sign;
    let mut out = Vec::with_capacity(word.len() + 2 * (close - open));
    out.extend_from_slice(&word[..open]);
    for &l in &word[open + 1..close] {
        if l.index == i + 1 {
            out.push(BraidLetter::new(i + 1, e.flip()));
            out.push(BraidLetter::new(i, l.sign));
            out.push(BraidLetter::new(i + 1, e));
        } else {
            out.push(l);
        }
    }
    out.extend_from_slice(&word[close + 1..]);
    free_reduce(&out)
}

/// Fully handle-reduced form of `letters`.
pub fn reduce(letters: &[BraidLetter]) -> Vec<BraidLetter> {
    let mut word = free_reduce(letters);
    while let Some((open, close)) = find_handle(&word) {
        word = reduce_handle(&word, open, close);
    }
    word
}

pub fn reduces_to_empty(letters: &[BraidLetter]) -> bool {
    reduce(letters).is_empty()
}
