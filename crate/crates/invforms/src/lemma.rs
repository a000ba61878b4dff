//! Seeded random instances of the pair-of-projectors lemma.

use invforms_core::linalg::Matrix;
use invforms_core::scalar::{int, Scalar, Vector};
use invforms_core::structure::{projector_lemma_check, LemmaWitness};
use invforms_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const AMBIENT_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub f1: Vec<Vector>,
    pub f2: Vec<Vector>,
    pub gram: Matrix,
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into())
}

fn random_vectors(rng: &mut ChaCha8Rng, count: usize, dim: usize) -> Vec<Vector> {
    (0..count)
        .map(|_| (0..dim).map(|_| random_scalar(rng)).collect())
        .collect()
}

/// `A^T A + I` for a random integer `A`: symmetric positive definite.
fn random_gram(rng: &mut ChaCha8Rng, dim: usize) -> Matrix {
    let mut a = Matrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            a[(i, j)] = int(rng.gen_range(-2..=2));
        }
    }
    a.transpose().mul(&a).expect("square").add(&Matrix::identity(dim))
}

/// `count` instances in `Q^dim`; the same seed always gives the same list.
pub fn random_instances(seed: u64, count: usize, dim: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let d1 = rng.gen_range(1..=dim);
            let d2 = rng.gen_range(1..=dim);
            let f1 = random_vectors(&mut rng, d1, dim);
            let f2 = random_vectors(&mut rng, d2, dim);
            let gram = random_gram(&mut rng, dim);
            Instance { f1, f2, gram }
        })
        .collect()
}

pub fn check(instance: &Instance) -> Result<LemmaWitness, Error> {
    projector_lemma_check(instance.gram.rows(), &instance.f1, &instance.f2, &instance.gram)
}
