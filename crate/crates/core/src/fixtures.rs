//! Small hand-checked contexts shared by unit tests, integration tests and
//! the CLI self-checks.

use crate::bitmatrix::{BooleanMatrix, IndexSet};
use crate::concepts::FormalConcept;

fn from_strings(rows: &[&str]) -> BooleanMatrix {
    let cols = rows.first().map_or(0, |r| r.len());
    BooleanMatrix::from_fn(rows.len(), cols, |i, j| rows[i].as_bytes()[j] == b'1')
}

/// 3 objects x 4 attributes (`a..d`), 7 ones, 5 concepts.
pub fn context_3x4() -> BooleanMatrix {
    from_strings(&["1011", "0110", "0011"])
}

/// All concepts of [`context_3x4`] in the reference indexing used by the
/// GreCon2 state tests (index 2 is the empty-extent concept).
pub fn context_3x4_concepts() -> Vec<FormalConcept> {
    vec![
        FormalConcept::new([0, 1, 2].into(), [2].into()),
        FormalConcept::new([0].into(), [0, 2, 3].into()),
        FormalConcept::new(IndexSet::new(), [0, 1, 2, 3].into()),
        FormalConcept::new([1].into(), [1, 2].into()),
        FormalConcept::new([0, 2].into(), [2, 3].into()),
    ]
}

/// 5 objects x 7 attributes (`a..g`), 22 ones, 4 concepts.
pub fn context_5x7() -> BooleanMatrix {
    from_strings(&["1111000", "1111000", "1111111", "0011111", "0011000"])
}

/// The four concepts of [`context_5x7`] as `[c1, c2, c3, c4]`:
/// sizes 12, 10, 10 and 7.
pub fn context_5x7_concepts() -> [FormalConcept; 4] {
    [
        FormalConcept::new([0, 1, 2].into(), [0, 1, 2, 3].into()),
        FormalConcept::new([2, 3].into(), [2, 3, 4, 5, 6].into()),
        FormalConcept::new([0, 1, 2, 3, 4].into(), [2, 3].into()),
        FormalConcept::new([2].into(), [0, 1, 2, 3, 4, 5, 6].into()),
    ]
}

/// A 5x6 matrix together with a three-factor exact decomposition
/// `(I, A, B)` where `I = A ∘ B`.
pub fn product_5x6() -> (BooleanMatrix, BooleanMatrix, BooleanMatrix) {
    let i = from_strings(&["111000", "111000", "011110", "011111", "001101"]);
    let a = from_strings(&["100", "100", "010", "011", "001"]);
    let b = from_strings(&["111000", "011110", "001101"]);
    (i, a, b)
}
