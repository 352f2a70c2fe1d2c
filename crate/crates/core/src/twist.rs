//! Transverse braid representatives of twist knots at maximal self-linking
//! number, the classification data they must match, and the branching-word
//! and quasipositive-factorization templates attached to each family.

use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Factor, QuasipositiveFactorization};
use crate::error::CoreError;
use crate::veering::BranchingWord;

/// The four families of twist parameters with known maximal representatives.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Family {
    /// m >= 2 even
    EvenPositive,
    /// m <= -3 odd
    OddNegative,
    /// m >= 3 odd
    OddPositive,
    /// m <= -4 even; the quasipositive family with several representatives
    EvenNegative,
}

impl Family {
    pub fn classify(m: i64) -> Result<Family, CoreError> {
        let even = m.rem_euclid(2) == 0;
        match (even, m) {
            (true, 2..) => Ok(Family::EvenPositive),
            (false, ..=-3) => Ok(Family::OddNegative),
            (false, 3..) => Ok(Family::OddPositive),
            (true, ..=-4) => Ok(Family::EvenNegative),
            _ => Err(CoreError::UnsupportedTwist { m }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::EvenPositive => "EvenPositive",
            Family::OddNegative => "OddNegative",
            Family::OddPositive => "OddPositive",
            Family::EvenNegative => "EvenNegative",
        }
    }
}

/// Row of the EvenNegative representative table: counts of the four crossing
/// blocks in the maximal Legendrian front, `zPlus + sPlus = zMinus + sMinus
/// = n - 1` for m = -2n.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RepresentativeCode {
    pub z_plus: usize,
    pub s_plus: usize,
    pub z_minus: usize,
    pub s_minus: usize,
}

/// A twist parameter together with a choice of representative where the
/// family has several.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct TwistKnotSpec {
    m: i64,
    family: Family,
    /// 1-based representative index; always 1 outside EvenNegative
    rep: usize,
}

impl TwistKnotSpec {
    /// `rep` picks the EvenNegative representative (default the first); it
    /// is rejected for the single-representative families.
    pub fn new(m: i64, rep: Option<usize>) -> Result<Self, CoreError> {
        let family = Family::classify(m)?;
        if family == Family::EvenNegative {
            let n = (-m / 2) as usize;
            let max = n.div_ceil(2);
            let l = rep.unwrap_or(1);
            if l < 1 || l > max {
                return Err(CoreError::RepOutOfRange { m, rep: l, max });
            }
            Ok(TwistKnotSpec { m, family, rep: l })
        } else {
            if let Some(l) = rep {
                return Err(CoreError::RepOutOfRange { m, rep: l, max: 0 });
            }
            Ok(TwistKnotSpec { m, family, rep: 1 })
        }
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// The size parameter of the family's word formulas.
    pub fn n(&self) -> usize {
        match self.family {
            Family::EvenPositive => (self.m / 2) as usize,
            Family::OddNegative => ((-self.m - 1) / 2) as usize,
            Family::OddPositive => ((self.m - 1) / 2) as usize,
            Family::EvenNegative => (-self.m / 2) as usize,
        }
    }

    /// Representative index, meaningful only for EvenNegative.
    pub fn rep(&self) -> Option<usize> {
        (self.family == Family::EvenNegative).then_some(self.rep)
    }

    pub fn code(&self) -> Option<RepresentativeCode> {
        self.rep().map(|l| {
            let n = self.n();
            RepresentativeCode {
                z_plus: l - 1,
                s_plus: n - l,
                z_minus: l - 1,
                s_minus: n - l,
            }
        })
    }

    pub fn strands(&self) -> usize {
        match self.family {
            Family::EvenNegative => self.n() + 1,
            _ => self.n() + 2,
        }
    }
}

fn desc(hi: i64, lo: i64, sign: i64) -> impl Iterator<Item = i64> {
    (lo..=hi).rev().map(move |i| sign * i)
}

fn asc(lo: i64, hi: i64, sign: i64) -> impl Iterator<Item = i64> {
    (lo..=hi).map(move |i| sign * i)
}

/// The family's braid word at maximal self-linking number.
pub fn twist_braid(spec: &TwistKnotSpec) -> BraidWord {
    let n = spec.n() as i64;
    let mut w: Vec<i64> = Vec::new();
    match spec.family {
        Family::EvenPositive => {
            w.push(n + 1);
            w.extend(desc(n, 2, -1));
            w.extend([-1, -1]);
            w.extend(asc(2, n + 1, -1));
            w.extend(asc(1, n + 1, 1));
        }
        Family::OddNegative => {
            w.push(-(n + 1));
            w.extend(desc(n, 2, 1));
            w.push(1);
            w.extend(asc(2, n + 1, -1));
            w.extend(asc(1, n, 1));
        }
        Family::OddPositive => {
            w.extend(desc(n + 1, 2, -1));
            w.extend([-1, -1]);
            w.extend(asc(2, n + 1, -1));
            w.extend(asc(1, n, 1));
            w.push(-(n + 1));
        }
        Family::EvenNegative => {
            let a = (spec.rep - 1) as i64;
            let b = n - 1 - a;
            match a {
                0 => {
                    w.push(b + 1);
                    w.extend(desc(b, 1, -1));
                    w.extend(desc(b + 1, 1, 1));
                    w.extend(asc(1, b + 1, 1));
                }
                1 => {
                    w.push(b + 2);
                    w.extend(desc(b + 1, 2, -1));
                    w.extend([1, 1]);
                    w.extend(desc(b + 2, 2, 1));
                    w.push(-1);
                    w.extend(asc(2, b + 2, 1));
                }
                _ => {
                    w.push(a + b + 1);
                    w.extend(desc(a + b, a + 1, -1));
                    w.extend(desc(a, 1, 1));
                    w.extend(asc(1, a, 1));
                    w.extend(desc(a + b + 1, a + 1, 1));
                    w.extend(asc(1, a, -1));
                    w.extend(asc(a + 1, a + b + 1, 1));
                }
            }
        }
    }
    let word = BraidWord::from_signed(&w).expect("family words are nonempty and in range");
    debug_assert_eq!(word.strands(), spec.strands());
    word
}

/// Maximal self-linking number of the twist knot, per the classification.
pub fn expected_max_sl(m: i64) -> i64 {
    if m.rem_euclid(2) == 1 {
        match m {
            0.. => -m - 4,
            -1 => -1,
            _ => -3,
        }
    } else if m >= -2 {
        -m - 1
    } else {
        1
    }
}

/// true iff every 3-manifold is a cover branched over the knot.
pub fn is_universal_range(m: i64) -> bool {
    m >= 2 || m <= -3
}

/// The EvenNegative representatives for m = -2n: one row per l with
/// zPlus = zMinus = l - 1 and sPlus = sMinus = n - l.
pub fn representative_table(m: i64) -> Result<Vec<RepresentativeCode>, CoreError> {
    if Family::classify(m)? != Family::EvenNegative {
        return Err(CoreError::UnsupportedTwist { m });
    }
    let n = (-m / 2) as usize;
    Ok((1..=n.div_ceil(2))
        .map(|l| RepresentativeCode {
            z_plus: l - 1,
            s_plus: n - l,
            z_minus: l - 1,
            s_minus: n - l,
        })
        .collect())
}

/// Closed-form image of the arc around the designated cut, where known.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BranchingWordTemplate {
    pub word: BranchingWord,
    pub designated_cut: usize,
}

/// The family's branching word for the arc enclosing its designated cut.
/// Not available for EvenNegative.
pub fn expected_branching_word(spec: &TwistKnotSpec) -> Result<BranchingWordTemplate, CoreError> {
    let n = spec.n() as i64;
    let mut w: Vec<i64> = Vec::new();
    let cut = match spec.family {
        Family::EvenPositive => {
            w.push(-(n + 1));
            w.extend(asc(1, n + 1, 1));
            w.push(-(n + 2));
            w.extend(desc(n + 1, 1, -1));
            w.push(n + 1);
            w.push(1);
            1
        }
        Family::OddNegative => {
            w.push(-n);
            w.push(n + 2);
            w.extend(asc(1, n, 1));
            w.push(-(n + 1));
            w.extend(desc(n, 1, -1));
            w.push(-(n + 2));
            w.push(n);
            w.push(n + 2);
            n as usize + 2
        }
        Family::OddPositive => {
            w.push(-(n + 1));
            w.extend(desc(n, 1, -1));
            w.push(-(n + 2));
            w.push(-(n + 1));
            w.push(n + 2);
            w.extend(asc(1, n, 1));
            w.push(n + 1);
            w.push(n + 2);
            n as usize + 2
        }
        Family::EvenNegative => {
            return Err(CoreError::UnsupportedFamily {
                family: Family::EvenNegative.name(),
            })
        }
    };
    Ok(BranchingWordTemplate {
        word: BranchingWord::from_signed(&w)?,
        designated_cut: cut,
    })
}

/// The EvenNegative word written as a product of conjugated positive
/// generators, making quasipositivity explicit.
pub fn quasipositive_factorization(
    spec: &TwistKnotSpec,
) -> Result<QuasipositiveFactorization, CoreError> {
    if spec.family != Family::EvenNegative {
        return Err(CoreError::UnsupportedTwist { m: spec.m });
    }
    let a = (spec.rep - 1) as i64;
    let b = spec.n() as i64 - 1 - a;
    let strands = spec.strands();
    let top = (a + b + 1) as usize;

    // conjugator y and the generators inside the bracketed block
    let (y, inner): (Vec<i64>, Vec<i64>) = match a {
        0 => (
            asc(1, b, 1).collect(),
            desc(b + 1, 1, 1).collect(),
        ),
        1 => (
            std::iter::once(-1).chain(asc(2, b + 1, 1)).collect(),
            std::iter::once(1).chain(desc(b + 2, 2, 1)).collect(),
        ),
        _ => (
            asc(1, a, -1).chain(asc(a + 1, a + b, 1)).collect(),
            asc(1, a, 1).chain(desc(a + b + 1, a + 1, 1)).collect(),
        ),
    };
    let y_inv = BraidWord::from_signed_with_strands(&y, strands)?.inverse();
    let plain = BraidWord::empty(strands);

    let mut factors = vec![Factor {
        conjugator: plain.clone(),
        generator: top,
    }];
    for g in inner {
        factors.push(Factor {
            conjugator: y_inv.clone(),
            generator: g as usize,
        });
    }
    factors.push(Factor {
        conjugator: plain,
        generator: top,
    });
    QuasipositiveFactorization::new(strands, factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{expand_factorization, verify_quasipositive};

    fn spec(m: i64) -> TwistKnotSpec {
        TwistKnotSpec::new(m, None).unwrap()
    }

    fn spec_l(m: i64, l: usize) -> TwistKnotSpec {
        TwistKnotSpec::new(m, Some(l)).unwrap()
    }

    fn all_desk_specs() -> Vec<TwistKnotSpec> {
        let mut out = Vec::new();
        for m in [2, 3, 4, 5, 7, -3, -5, -7] {
            out.push(spec(m));
        }
        for m in [-4, -6, -8, -10] {
            for l in 1..=representative_table(m).unwrap().len() {
                out.push(spec_l(m, l));
            }
        }
        out
    }

    #[test]
    fn family_classification_and_rejections() {
        assert_eq!(Family::classify(2).unwrap(), Family::EvenPositive);
        assert_eq!(Family::classify(3).unwrap(), Family::OddPositive);
        assert_eq!(Family::classify(-3).unwrap(), Family::OddNegative);
        assert_eq!(Family::classify(-4).unwrap(), Family::EvenNegative);
        for m in [0, 1, -1, -2] {
            assert!(matches!(
                Family::classify(m),
                Err(CoreError::UnsupportedTwist { .. })
            ));
            assert!(TwistKnotSpec::new(m, None).is_err());
        }
        assert!(matches!(
            TwistKnotSpec::new(-4, Some(2)),
            Err(CoreError::RepOutOfRange { max: 1, .. })
        ));
        assert!(TwistKnotSpec::new(2, Some(1)).is_err());
        assert!(TwistKnotSpec::new(-6, Some(2)).is_ok());
    }

    #[test]
    fn frozen_braid_words() {
        let fixtures: &[(i64, Option<usize>, &[i64])] = &[
            (2, None, &[2, -1, -1, -2, 1, 2]),
            (-3, None, &[-2, 1, -2, 1]),
            (3, None, &[-2, -1, -1, -2, 1, -2]),
            (4, None, &[3, -2, -1, -1, -2, -3, 1, 2, 3]),
            (-5, None, &[-3, 2, 1, -2, -3, 1, 2]),
            (5, None, &[-3, -2, -1, -1, -2, -3, 1, 2, -3]),
            (-4, Some(1), &[2, -1, 2, 1, 1, 2]),
            (-6, Some(1), &[3, -2, -1, 3, 2, 1, 1, 2, 3]),
            (-6, Some(2), &[3, -2, 1, 1, 3, 2, -1, 2, 3]),
            (-10, Some(3), &[5, -4, -3, 2, 1, 1, 2, 5, 4, 3, -1, -2, 3, 4, 5]),
        ];
        for (m, rep, letters) in fixtures {
            let w = twist_braid(&TwistKnotSpec::new(*m, *rep).unwrap());
            assert_eq!(w.signed_letters(), *letters, "m={m} rep={rep:?}");
        }
    }

    #[test]
    fn words_are_knots_with_expected_sl_and_size() {
        for s in all_desk_specs() {
            let w = twist_braid(&s);
            let label = format!("m={} rep={:?}", s.m(), s.rep());
            assert_eq!(w.closure_component_count(), 1, "{label}");
            assert_eq!(w.self_linking().unwrap(), expected_max_sl(s.m()), "{label}");
            assert_eq!(w.strands(), s.strands(), "{label}");
            let expected_len = match s.family() {
                Family::EvenPositive | Family::OddPositive => 3 * s.n() + 3,
                Family::OddNegative => 3 * s.n() + 1,
                Family::EvenNegative => 3 * s.n(),
            };
            assert_eq!(w.len(), expected_len, "{label}");
        }
    }

    #[test]
    fn classification_values() {
        assert_eq!(expected_max_sl(2), -3);
        assert_eq!(expected_max_sl(-1), -1);
        assert_eq!(expected_max_sl(-6), 1);
        assert_eq!(expected_max_sl(0), -1);
        assert_eq!(expected_max_sl(-2), 1);
        assert_eq!(expected_max_sl(3), -7);
        assert_eq!(expected_max_sl(-7), -3);
        assert_eq!(expected_max_sl(7), -11);
    }

    #[test]
    fn universal_range() {
        for (m, want) in [(2, true), (-2, false), (-3, true), (1, false), (0, false), (-1, false)] {
            assert_eq!(is_universal_range(m), want, "m={m}");
        }
    }

    #[test]
    fn representative_rows() {
        let row = |z: usize, s: usize| RepresentativeCode {
            z_plus: z,
            s_plus: s,
            z_minus: z,
            s_minus: s,
        };
        assert_eq!(representative_table(-4).unwrap(), vec![row(0, 1)]);
        assert_eq!(representative_table(-6).unwrap(), vec![row(0, 2), row(1, 1)]);
        let ten = representative_table(-10).unwrap();
        assert_eq!(ten.len(), 3);
        assert_eq!(
            ten.iter().map(|r| r.z_plus).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
        assert!(representative_table(2).is_err());
        assert!(representative_table(-3).is_err());
    }

    #[test]
    fn branching_word_templates() {
        let t = expected_branching_word(&spec(2)).unwrap();
        assert_eq!(t.word.signed_letters(), vec![-2, 1, 2, -3, -2, -1, 2, 1]);
        assert_eq!(t.designated_cut, 1);

        let t = expected_branching_word(&spec(-3)).unwrap();
        assert_eq!(t.word.signed_letters(), vec![-1, 3, 1, -2, -1, -3, 1, 3]);
        assert_eq!(t.designated_cut, 3);

        let t = expected_branching_word(&spec(3)).unwrap();
        assert_eq!(t.word.signed_letters(), vec![-2, -1, -3, -2, 3, 1, 2, 3]);
        assert_eq!(t.designated_cut, 3);

        for m in [2, 3, 4, 5, -3, -5, -7] {
            let s = spec(m);
            let t = expected_branching_word(&s).unwrap();
            assert_eq!(t.word.len(), 2 * s.n() + 6, "m={m}");
            assert!(t.designated_cut <= s.strands());
        }
        assert!(expected_branching_word(&spec_l(-4, 1)).is_err());
    }

    #[test]
    fn factorizations_expand_to_the_words() {
        for s in all_desk_specs() {
            if s.family() != Family::EvenNegative {
                assert!(quasipositive_factorization(&s).is_err());
                continue;
            }
            let label = format!("m={} rep={:?}", s.m(), s.rep());
            let f = quasipositive_factorization(&s).unwrap();
            let w = twist_braid(&s);
            assert_eq!(
                expand_factorization(&f).free_reduced().signed_letters(),
                w.signed_letters(),
                "{label}"
            );
            assert!(verify_quasipositive(&w, &f).unwrap(), "{label}");
        }
    }

    #[test]
    fn representative_codes_on_specs() {
        assert_eq!(spec(2).code(), None);
        let c = spec_l(-6, 2).code().unwrap();
        assert_eq!((c.z_plus, c.s_plus), (1, 1));
        let js = serde_json::to_string(&c).unwrap();
        assert_eq!(js, r#"{"zPlus":1,"sPlus":1,"zMinus":1,"sMinus":1}"#);
    }
}
