#![allow(dead_code)]

use std::collections::BTreeMap;

use isozero::{GaussInt, MultiPoly, SquareMatrix, VarId};
use rand::Rng;

pub fn g(re: i64, im: i64) -> GaussInt {
    GaussInt::new(re, im)
}

/// `(1+i, 1−i, −1+i, −1−i)` assigned to `v_1..v_4`.
pub fn four_slot_values() -> BTreeMap<VarId, GaussInt> {
    [g(1, 1), g(1, -1), g(-1, 1), g(-1, -1)]
        .into_iter()
        .enumerate()
        .map(|(i, z)| (VarId::v(i as u32 + 1), z))
        .collect()
}

/// A square matrix of constant polynomials; each entry is nonzero with
/// probability `density` and has parts in `-bound..=bound`.
pub fn random_matrix(rng: &mut impl Rng, n: usize, density: f64, bound: i64) -> SquareMatrix<MultiPoly> {
    SquareMatrix::from_fn(n, |_, _| {
        if rng.gen_bool(density) {
            let z = loop {
                let z = g(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
                if z != g(0, 0) {
                    break z;
                }
            };
            MultiPoly::constant(z)
        } else {
            MultiPoly::zero()
        }
    })
}

/// Leibniz determinant over all permutations, with the sign taken from the
/// inversion count.
pub fn det_leibniz(m: &SquareMatrix<MultiPoly>) -> MultiPoly {
    let n = m.dim();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = MultiPoly::zero();
    loop {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let term = (0..n).fold(MultiPoly::one(), |acc, i| acc * m[(i, perm[i])].clone());
        if inversions % 2 == 0 {
            total += &term;
        } else {
            total -= &term;
        }
        if !next_permutation(&mut perm) {
            return total;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Inversion-count sign of the permutation `i ↦ succ[i]` (0-based).
pub fn inversion_sign(succ: &[usize]) -> i8 {
    let n = succ.len();
    let inv = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| succ[i] > succ[j])
        .count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}
