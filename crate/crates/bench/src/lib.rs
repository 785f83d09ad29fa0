//! Deterministic fixtures shared by the criterion benches.

use weyr_core::random::{random_integer_pencil, random_matrix, random_regular_pencil, trial_rng};
use weyr_core::{Matrix, OperatorPencil};

/// A scrambled Weierstrass-form pencil of dimension at most `max_dim`.
pub fn regular_pencil(seed: u64, max_dim: usize) -> OperatorPencil {
    let mut rng = trial_rng(seed, 0);
    random_regular_pencil(&mut rng, max_dim, 3).3
}

/// Pencil with independent integer entries in `[-3, 3]`.
pub fn integer_pencil(seed: u64, n: usize) -> OperatorPencil {
    random_integer_pencil(&mut trial_rng(seed, 1), n, 3)
}

pub fn integer_matrix(seed: u64, rows: usize, cols: usize) -> Matrix {
    random_matrix(&mut trial_rng(seed, 2), rows, cols, 5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_deterministic() {
        assert_eq!(regular_pencil(3, 6), regular_pencil(3, 6));
        assert!(regular_pencil(3, 6).is_regular());
        assert_eq!(integer_matrix(1, 4, 5).rows(), 4);
        assert_eq!(integer_pencil(2, 5).n(), 5);
    }
}
