//! Seeded generators for test pencils, relations and perturbations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{GaussianRational, Matrix, Subspace};
use crate::pencil::{CanonicalSpec, OperatorPencil};
use crate::perturb::{PerturbationKind, PerturbationSpec};
use crate::relation::LinearRelation;

pub type TrialRng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent stream for trial `trial_id` under `master_seed`.
pub fn trial_rng(master_seed: u64, trial_id: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(splitmix64(master_seed ^ splitmix64(trial_id)))
}

pub fn small_int<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

/// Small integers, occasionally zero-heavy so that sparse data appears.
pub fn random_vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<GaussianRational> {
    let density: f64 = if rng.gen_bool(0.3) { 0.4 } else { 1.0 };
    (0..n)
        .map(|_| {
            if rng.gen_bool(density) {
                GaussianRational::from_int(small_int(rng, bound))
            } else {
                GaussianRational::zero()
            }
        })
        .collect()
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix {
    let data = (0..rows * cols)
        .map(|_| GaussianRational::from_int(small_int(rng, bound)))
        .collect();
    Matrix::new(rows, cols, data).expect("sized")
}

/// A small rational `p/q`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> GaussianRational {
    let den = rng.gen_range(1..=3);
    GaussianRational::from_frac(small_int(rng, 2 * bound.max(1)), den)
}

/// A small rational, now and then with an imaginary part.
pub fn random_point<R: Rng>(rng: &mut R, bound: i64) -> GaussianRational {
    let re = random_rational(rng, bound);
    if rng.gen_bool(0.2) {
        &re + &(&GaussianRational::i() * &GaussianRational::from_int(small_int(rng, 2)))
    } else {
        re
    }
}

/// `L U` with unit triangular factors: integer entries, determinant one.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix {
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower[(i, j)] = GaussianRational::from_int(small_int(rng, bound));
            upper[(j, i)] = GaussianRational::from_int(small_int(rng, bound));
        }
    }
    lower.mul(&upper)
}

const EIGENVALUE_POOL: [&str; 10] = ["0", "1", "-1", "2", "1/2", "-3", "0+1*i", "1-1*i", "3", "-1/3"];

/// Weierstrass block structure of total size in `1..=max_dim`, with a few
/// eigenvalues shared by several blocks.
pub fn random_canonical_spec<R: Rng>(rng: &mut R, max_dim: usize) -> CanonicalSpec {
    let n = rng.gen_range(1..=max_dim.max(1));
    let distinct = rng.gen_range(1..=3);
    let mut pool: Vec<GaussianRational> = EIGENVALUE_POOL
        .choose_multiple(rng, distinct)
        .map(|s| s.parse().expect("pool literal"))
        .collect();
    pool.sort();
    let mut spec = CanonicalSpec::default();
    let mut left = n;
    while left > 0 {
        let size = rng.gen_range(1..=left.min(3));
        if rng.gen_bool(0.25) {
            spec.infinite_blocks.push(size);
        } else {
            let lam = pool.choose(rng).expect("nonempty pool").clone();
            spec.finite_blocks.push((lam, size));
        }
        left -= size;
    }
    spec
}

/// Canonical pencil scrambled by unimodular `S`, `T`; returns `(spec, S, T, pencil)`.
pub fn random_regular_pencil<R: Rng>(
    rng: &mut R,
    max_dim: usize,
    bound: i64,
) -> (CanonicalSpec, Matrix, Matrix, OperatorPencil) {
    let spec = random_canonical_spec(rng, max_dim);
    let n = spec.dim();
    let s = random_unimodular(rng, n, bound);
    let t = random_unimodular(rng, n, bound);
    let p = OperatorPencil::from_canonical(&spec)
        .apply_equivalence(&s, &t)
        .expect("unimodular");
    (spec, s, t, p)
}

/// Integer pencil with random entries, possibly singular.
pub fn random_integer_pencil<R: Rng>(rng: &mut R, n: usize, bound: i64) -> OperatorPencil {
    let mut e = random_matrix(rng, n, n, bound);
    let a = random_matrix(rng, n, n, bound);
    // drop the rank of E now and then so infinite eigenvalues appear
    if n > 1 && rng.gen_bool(0.5) {
        let r = rng.gen_range(0..n);
        for j in 0..n {
            e[(r, j)] = GaussianRational::zero();
        }
    }
    OperatorPencil::new(e, a).expect("square")
}

/// `(E P, A P)` with singular `P`: the determinant vanishes identically.
pub fn random_singular_pencil<R: Rng>(rng: &mut R, n: usize, bound: i64) -> OperatorPencil {
    let base = random_integer_pencil(rng, n, bound);
    let mut p = random_matrix(rng, n, n, bound);
    let c = rng.gen_range(0..n);
    for i in 0..n {
        p[(i, c)] = GaussianRational::zero();
    }
    OperatorPencil::new(base.e().mul(&p), base.a().mul(&p)).expect("square")
}

pub fn random_perturbation<R: Rng>(
    rng: &mut R,
    kind: PerturbationKind,
    n: usize,
    bound: i64,
) -> PerturbationSpec {
    let mut v = || random_vector(rng, n, bound);
    match kind {
        PerturbationKind::TypeV => PerturbationSpec::TypeV {
            u: v(),
            w: v(),
            v_func: v(),
        },
        PerturbationKind::TypeU => PerturbationSpec::TypeU {
            u: v(),
            v_func: v(),
            w_func: v(),
        },
    }
}

/// Square relation on `F^n` spanned by `d` random pairs.
pub fn random_relation<R: Rng>(rng: &mut R, n: usize, d: usize, bound: i64) -> LinearRelation {
    let vectors: Vec<_> = (0..d).map(|_| random_vector(rng, 2 * n, bound)).collect();
    let span = Subspace::from_vectors(2 * n, &vectors).expect("sized");
    LinearRelation::from_subspace(n, n, span).expect("sized")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular_has_unit_determinant() {
        let mut rng = trial_rng(1, 2);
        for n in 1..6 {
            let m = random_unimodular(&mut rng, n, 3);
            assert!(m.det().unwrap().is_one());
        }
    }

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<i64> = (0..5).map(|_| small_int(&mut trial_rng(9, 3), 100)).collect();
        let b: Vec<i64> = (0..5).map(|_| small_int(&mut trial_rng(9, 3), 100)).collect();
        assert_eq!(a, b);
        assert_ne!(
            trial_rng(9, 3).gen::<u64>(),
            trial_rng(9, 4).gen::<u64>()
        );
    }

    #[test]
    fn canonical_specs_fit_bound() {
        let mut rng = trial_rng(5, 0);
        for _ in 0..50 {
            let spec = random_canonical_spec(&mut rng, 6);
            assert!((1..=6).contains(&spec.dim()));
        }
    }
}
