//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use vecpart::{
    certify_pointed, ratio, scalar, ConeCertificate, LatticeVector, Scalar, StepMatrix,
    WeightFunction, WeightTable,
};

pub fn matrix(rows: &[&[i64]]) -> StepMatrix {
    StepMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn certified(a: StepMatrix) -> (StepMatrix, ConeCertificate) {
    let cert = certify_pointed(&a).unwrap();
    (a, cert)
}

pub fn lv(c: &[i64]) -> LatticeVector {
    LatticeVector::new(c.to_vec())
}

/// A random pointed 2x4 matrix with entries in [-2, 3], fixed by `seed`.
pub fn random_pointed(rows: usize, cols: usize, seed: u64) -> StepMatrix {
    let mut rng = StdRng::seed_from_u64(seed);
    loop {
        let data: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-2..=3)).collect())
            .collect();
        if let Ok(a) = StepMatrix::from_rows(&data) {
            if certify_pointed(&a).is_ok() {
                return a;
            }
        }
    }
}

/// The five named test matrices.
pub fn test_matrices() -> Vec<(&'static str, StepMatrix)> {
    vec![
        ("[1]", matrix(&[&[1]])),
        ("basis2", matrix(&[&[1, 0], &[0, 1]])),
        ("delannoy", matrix(&[&[1, 0, 1], &[0, 1, 1]])),
        ("skew", matrix(&[&[2, -1], &[-1, 2]])),
        ("random2x4", random_pointed(2, 4, 20_240_917)),
    ]
}

pub fn random_ratio(rng: &mut StdRng, span: i64, max_den: i64) -> Scalar {
    ratio(rng.gen_range(-span..=span), rng.gen_range(1..=max_den))
}

/// Random rational table on `[0, extent]^nvars`.
pub fn random_table(nvars: usize, extent: usize, seed: u64) -> WeightFunction {
    let mut rng = StdRng::seed_from_u64(seed);
    let table = WeightTable::from_fn(vec![extent + 1; nvars], |_| {
        Ok(random_ratio(&mut rng, 9, 4))
    })
    .unwrap();
    WeightFunction::Table(table)
}

/// Odometer over the box `0 <= x_j <= upper_j`, lexicographic.
pub fn box_scan(upper: &[i64]) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if upper.iter().any(|&u| u < 0) {
        return out;
    }
    let mut x = vec![0i64; upper.len()];
    loop {
        out.push(x.clone());
        let mut k = upper.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if x[k] < upper[k] {
                x[k] += 1;
                for v in x.iter_mut().skip(k + 1) {
                    *v = 0;
                }
                break;
            }
        }
    }
}

/// Naive solution list: scan the box `x_j <= ell(lambda) / deg_j` and keep `A x = lambda`.
pub fn naive_solutions(
    a: &StepMatrix,
    cert: &ConeCertificate,
    lambda: &LatticeVector,
) -> Vec<LatticeVector> {
    let d: i64 = cert
        .ell()
        .coords()
        .iter()
        .zip(lambda.coords())
        .map(|(p, q)| p * q)
        .sum();
    if d < 0 {
        return Vec::new();
    }
    let upper: Vec<i64> = cert.step_degrees().iter().map(|s| d / s).collect();
    box_scan(&upper)
        .into_iter()
        .map(LatticeVector::new)
        .filter(|x| {
            let mut acc = vec![0i64; a.nrows()];
            for (j, &xj) in x.coords().iter().enumerate() {
                for (i, v) in acc.iter_mut().enumerate() {
                    *v += a.column(j).coords()[i] * xj;
                }
            }
            acc == lambda.coords()
        })
        .collect()
}

/// Every point of `[-r, r]^n` with ell-degree at most `bound`.
pub fn slab_box(cert: &ConeCertificate, r: i64, bound: i64) -> Vec<LatticeVector> {
    let n = cert.ell().dim();
    box_scan(&vec![2 * r; n])
        .into_iter()
        .map(|p| LatticeVector::new(p.into_iter().map(|c| c - r).collect()))
        .filter(|p| cert.ell_degree(p).unwrap() <= bound)
        .collect()
}

/// Delannoy numbers by their recurrence, memoized.
pub fn delannoy(a: i64, b: i64) -> u64 {
    fn go(a: i64, b: i64, memo: &mut BTreeMap<(i64, i64), u64>) -> u64 {
        if a < 0 || b < 0 {
            return 0;
        }
        if a == 0 && b == 0 {
            return 1;
        }
        if let Some(&v) = memo.get(&(a, b)) {
            return v;
        }
        let v = go(a - 1, b, memo) + go(a, b - 1, memo) + go(a - 1, b - 1, memo);
        memo.insert((a, b), v);
        v
    }
    go(a, b, &mut BTreeMap::new())
}

/// Binomial coefficient by Pascal's triangle.
pub fn pascal(n: i64, k: i64) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    if k < 0 || k > n {
        0
    } else {
        row[k as usize]
    }
}

/// Number of step sequences from 0 to `target` using the columns of `a`,
/// found by recursive search pruned by the functional.
pub fn paths_to(a: &StepMatrix, cert: &ConeCertificate, target: &LatticeVector) -> u64 {
    fn go(
        a: &StepMatrix,
        cert: &ConeCertificate,
        at: Vec<i64>,
        target: &[i64],
        budget: i64,
    ) -> u64 {
        let mut count = u64::from(at == target);
        for (col, &s) in a.columns().iter().zip(cert.step_degrees()) {
            if s <= budget {
                let next: Vec<i64> = at.iter().zip(col.coords()).map(|(p, q)| p + q).collect();
                count += go(a, cert, next, target, budget - s);
            }
        }
        count
    }
    let d = cert.ell_degree(target).unwrap();
    if d < 0 {
        return 0;
    }
    go(a, cert, vec![0; a.nrows()], target.coords(), d)
}

/// Number of unit-step lattice paths from 0 to `x`, by exhaustive search.
pub fn unit_paths(x: &[i64]) -> u64 {
    if x.iter().all(|&c| c == 0) {
        return 1;
    }
    let mut total = 0;
    for j in 0..x.len() {
        if x[j] > 0 {
            let mut y = x.to_vec();
            y[j] -= 1;
            total += unit_paths(&y);
        }
    }
    total
}

/// Searches `[-b, b]^n` for an integer functional positive on every column.
pub fn brute_force_functional(a: &StepMatrix, b: i64) -> Option<Vec<i64>> {
    let n = a.nrows();
    box_scan(&vec![2 * b; n])
        .into_iter()
        .map(|p| p.into_iter().map(|c| c - b).collect::<Vec<_>>())
        .find(|y| {
            a.columns()
                .iter()
                .all(|col| col.coords().iter().zip(y).map(|(p, q)| p * q).sum::<i64>() > 0)
        })
}

pub fn int(n: i64) -> Scalar {
    scalar(n)
}
