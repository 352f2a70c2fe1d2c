//! Braid words in Artin generators and exact word-problem equality.
//!
//! A word on `strands` strands is a sequence of letters `sigma_i^{+-1}`,
//! `1 <= i <= strands - 1`, written in the text format `"2 -1 -1 -2 1 2"`
//! (signed indices, whitespace or commas between letters). Strand positions,
//! letter indices and permutation points are all 1-based.

mod handle;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::error::CoreError;
use crate::perm::Permutation;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BraidLetter {
    pub index: usize,
    pub sign: Sign,
}

impl BraidLetter {
    pub fn new(index: usize, sign: Sign) -> Self {
        BraidLetter { index, sign }
    }

    pub fn inverse(self) -> Self {
        BraidLetter {
            index: self.index,
            sign: self.sign.flip(),
        }
    }

    pub fn to_signed(self) -> i64 {
        self.index as i64 * self.sign.as_i64()
    }

    fn from_signed(v: i64, strands: usize) -> Result<Self, CoreError> {
        let index = v.unsigned_abs() as usize;
        if v == 0 || index > strands.saturating_sub(1) {
            return Err(CoreError::LetterOutOfRange { index, strands });
        }
        Ok(BraidLetter {
            index,
            sign: if v > 0 { Sign::Pos } else { Sign::Neg },
        })
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self, CoreError> {
        if strands < 1 {
            return Err(CoreError::InvalidStrandCount);
        }
        for l in &letters {
            if l.index < 1 || l.index > strands - 1 {
                return Err(CoreError::LetterOutOfRange {
                    index: l.index,
                    strands,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    /// Convenience constructor from signed indices; strand count is inferred
    /// as `max |i| + 1` (at least 1).
    pub fn from_signed(letters: &[i64]) -> Result<Self, CoreError> {
        let strands = letters
            .iter()
            .map(|v| v.unsigned_abs() as usize + 1)
            .max()
            .unwrap_or(1);
        let letters = letters
            .iter()
            .map(|&v| BraidLetter::from_signed(v, strands))
            .collect::<Result<_, _>>()?;
        Ok(BraidWord { strands, letters })
    }

    /// As [`BraidWord::from_signed`] with an explicit strand count.
    pub fn from_signed_with_strands(letters: &[i64], strands: usize) -> Result<Self, CoreError> {
        if strands < 1 {
            return Err(CoreError::InvalidStrandCount);
        }
        let letters = letters
            .iter()
            .map(|&v| BraidLetter::from_signed(v, strands))
            .collect::<Result<_, _>>()?;
        Ok(BraidWord { strands, letters })
    }

    /// Parses the signed-integer text format. With `strands = None` the strand
    /// count is inferred from the largest index used.
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self, CoreError> {
        let mut values = Vec::new();
        for token in text.split(|c: char| c.is_whitespace() || c == ',') {
            if token.is_empty() {
                continue;
            }
            let v: i64 = token.parse().map_err(|_| CoreError::BraidParse {
                token: token.to_string(),
            })?;
            if v == 0 {
                return Err(CoreError::BraidParse {
                    token: token.to_string(),
                });
            }
            values.push(v);
        }
        match strands {
            None => BraidWord::from_signed(&values),
            Some(b) => {
                if b < 1 {
                    return Err(CoreError::InvalidStrandCount);
                }
                let letters = values
                    .iter()
                    .map(|&v| BraidLetter::from_signed(v, b))
                    .collect::<Result<_, _>>()?;
                Ok(BraidWord {
                    strands: b,
                    letters,
                })
            }
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_text(&self) -> String {
        self.letters
            .iter()
            .map(|l| l.to_signed().to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn signed_letters(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.to_signed()).collect()
    }

    pub fn positive_count(&self) -> usize {
        self.letters.iter().filter(|l| l.sign == Sign::Pos).count()
    }

    pub fn negative_count(&self) -> usize {
        self.len() - self.positive_count()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.positive_count() as i64 - self.negative_count() as i64
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<Self, CoreError> {
        if self.strands != other.strands {
            return Err(CoreError::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// Cancels adjacent `sigma_i^e sigma_i^{-e}` pairs until none remain.
    pub fn free_reduced(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: handle::free_reduce(&self.letters),
        }
    }

    /// Position permutation of the braid: letters act in word order, the first
    /// letter first, each `sigma_i^{+-1}` as the transposition `(i, i+1)`.
    pub fn underlying_permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (1..=self.strands).collect();
        // track where each starting position currently sits; swapping adjacent
        // occupants per letter is the same fold as composing transpositions
        for l in &self.letters {
            images.swap(l.index - 1, l.index);
        }
        let mut final_pos = vec![0; self.strands];
        for (pos, &start) in images.iter().enumerate() {
            final_pos[start - 1] = pos + 1;
        }
        Permutation::from_images(final_pos).expect("swaps preserve bijectivity")
    }

    pub fn closure_component_count(&self) -> usize {
        self.underlying_permutation().cycle_count()
    }

    /// `positives - negatives - strands`; defined only when the closure is a knot.
    pub fn self_linking(&self) -> Result<i64, CoreError> {
        let components = self.closure_component_count();
        if components != 1 {
            return Err(CoreError::MultiComponentClosure { components });
        }
        Ok(self.exponent_sum() - self.strands as i64)
    }

    /// Adds one strand and appends `sigma_strands^{sign}`. Negative
    /// stabilization lowers self-linking by 2, positive leaves it unchanged.
    pub fn markov_stabilize(&self, sign: Sign) -> Self {
        let mut letters = self.letters.clone();
        letters.push(BraidLetter::new(self.strands, sign));
        BraidWord {
            strands: self.strands + 1,
            letters,
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl Serialize for BraidWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            braid: &'a [i64],
            strands: usize,
        }
        Repr {
            braid: &self.signed_letters(),
            strands: self.strands,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BraidWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            braid: Vec<i64>,
            strands: usize,
        }
        let repr = Repr::deserialize(deserializer)?;
        let letters = repr
            .braid
            .iter()
            .map(|&v| BraidLetter::from_signed(v, repr.strands))
            .collect::<Result<_, _>>()
            .map_err(D::Error::custom)?;
        BraidWord::new(repr.strands, letters).map_err(D::Error::custom)
    }
}

/// Exact equality in the braid group, decided by handle reduction of
/// `w1 w2^{-1}`: the word reduces to the empty word iff the braids coincide.
/// Every handle-free nonempty word has all occurrences of its lowest
/// generator with one sign, hence is nontrivial, so this is a complete
/// decision procedure, not a heuristic.
pub fn braid_equal(w1: &BraidWord, w2: &BraidWord) -> Result<bool, CoreError> {
    if w1.strands != w2.strands {
        return Err(CoreError::StrandMismatch {
            left: w1.strands,
            right: w2.strands,
        });
    }
    if w1.exponent_sum() != w2.exponent_sum() {
        return Ok(false);
    }
    if w1.underlying_permutation() != w2.underlying_permutation() {
        return Ok(false);
    }
    let diff = w1.concat(&w2.inverse())?;
    Ok(handle::reduces_to_empty(&diff.letters))
}

/// One quasipositive factor: the conjugate `conjugator sigma_generator conjugator^{-1}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Factor {
    pub conjugator: BraidWord,
    pub generator: usize,
}

/// A product of conjugates of positive Artin generators.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct QuasipositiveFactorization {
    strands: usize,
    factors: Vec<Factor>,
}

impl QuasipositiveFactorization {
    pub fn new(strands: usize, factors: Vec<Factor>) -> Result<Self, CoreError> {
        if strands < 1 {
            return Err(CoreError::InvalidStrandCount);
        }
        for f in &factors {
            if f.conjugator.strands() != strands {
                return Err(CoreError::StrandMismatch {
                    left: strands,
                    right: f.conjugator.strands(),
                });
            }
            if f.generator < 1 || f.generator > strands - 1 {
                return Err(CoreError::LetterOutOfRange {
                    index: f.generator,
                    strands,
                });
            }
        }
        Ok(QuasipositiveFactorization { strands, factors })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }
}

/// Concatenates `w sigma w^{-1}` over all factors; no free reduction.
pub fn expand_factorization(f: &QuasipositiveFactorization) -> BraidWord {
    let mut letters = Vec::new();
    for factor in &f.factors {
        letters.extend_from_slice(factor.conjugator.letters());
        letters.push(BraidLetter::new(factor.generator, Sign::Pos));
        letters.extend_from_slice(factor.conjugator.inverse().letters());
    }
    BraidWord {
        strands: f.strands,
        letters,
    }
}

/// Whether `f` expands to a word equal to `w` in the braid group.
pub fn verify_quasipositive(
    w: &BraidWord,
    f: &QuasipositiveFactorization,
) -> Result<bool, CoreError> {
    braid_equal(w, &expand_factorization(f))
}
