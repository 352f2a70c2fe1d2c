use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("not a permutation of 1..{}: {images:?}", images.len())]
    NotAPermutation { images: Vec<usize> },

    #[error("strand count must be at least 1")]
    InvalidStrandCount,

    #[error("malformed braid token {token:?}")]
    BraidParse { token: String },

    #[error("letter index {index} out of range for {strands} strands")]
    LetterOutOfRange { index: usize, strands: usize },

    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("closure has {components} components; self-linking needs a knot")]
    MultiComponentClosure { components: usize },

    #[error("coloring has {got} permutations for a braid on {expected} strands")]
    ColoringShape { expected: usize, got: usize },

    #[error("permutation degree {got} does not match cover degree {k}")]
    DegreeMismatch { k: usize, got: usize },

    #[error("sheet {sheet} out of range for a {k}-sheeted cover")]
    SheetOutOfRange { sheet: usize, k: usize },

    #[error("cut index {cut} out of range: cover has {cuts} cuts")]
    CutOutOfRange { cut: usize, cuts: usize },

    #[error("malformed detailed-word token {token:?}")]
    DetailedParse { token: String },

    #[error("broken sheet chain at letter {position}: expected from = {expected}, got {got}")]
    BrokenChain {
        position: usize,
        expected: usize,
        got: usize,
    },

    #[error("letter {position}: sheet transition {from}->{to} does not match cut {cut}")]
    BadTransition {
        position: usize,
        cut: usize,
        from: usize,
        to: usize,
    },

    #[error("rewrite does not apply at position {position}: {reason}")]
    RuleMismatch { position: usize, reason: String },

    #[error("reduction budget of {budget} visited words exhausted")]
    BudgetExhausted { budget: usize },

    #[error("inconclusive: reduction budget {budget} exhausted at cut {cut}, start sheet {sheet}")]
    WitnessInconclusive {
        budget: usize,
        cut: usize,
        sheet: usize,
    },

    #[error("coloring is not a valid cover for this braid")]
    InvalidCover,

    #[error("no surface with these cuts: computed euler {euler}, boundary {boundary}")]
    BadSurfaceData { euler: i64, boundary: usize },

    #[error("m = {m} is outside the supported twist-knot families")]
    UnsupportedTwist { m: i64 },

    #[error("representative index {rep} out of range; m = {m} admits 1..={max}")]
    RepOutOfRange { m: i64, rep: usize, max: usize },

    #[error("operation not defined for the {family} family")]
    UnsupportedFamily { family: &'static str },
}
