#![allow(dead_code)]

use dissipative_pencil::gallery::{random_dissipative_pencil, DissipativeRecipe};
use dissipative_pencil::linalg::max_abs;
use dissipative_pencil::{CMatrix, Pencil};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn dissipative(seed: u64, n: usize) -> Pencil {
    random_dissipative_pencil(&mut rng(seed), n, &DissipativeRecipe::default())
}

pub fn rel_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs(&(a - b)) / max_abs(a).max(max_abs(b)).max(1.0)
}
