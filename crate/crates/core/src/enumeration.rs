//! Nonnegative integer solutions of `A x = lambda` and (generalized) vector
//! partition functions.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::cone::ConeCertificate;
use crate::error::Result;
use crate::types::{evaluate_weight, LatticeVector, Scalar, StepMatrix, WeightFunction};

/// All `x >= 0` with `A x = target`, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSet {
    pub matrix: StepMatrix,
    pub target: LatticeVector,
    pub solutions: Vec<LatticeVector>,
}

impl SolutionSet {
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }
}

/// Backtracking over `x_1, ..., x_N`. The residual's ell-degree bounds each
/// coordinate, so the search is finite.
pub fn enumerate_solutions(
    a: &StepMatrix,
    cert: &ConeCertificate,
    lambda: &LatticeVector,
) -> Result<SolutionSet> {
    cert.check_matrix(a)?;
    let degree = cert.ell_degree(lambda)?;
    let mut solutions = Vec::new();
    if degree >= 0 {
        let mut x = vec![0i64; a.ncols()];
        let mut residual = lambda.coords().to_vec();
        search(a, cert, 0, degree, &mut residual, &mut x, &mut solutions);
    }
    Ok(SolutionSet {
        matrix: a.clone(),
        target: lambda.clone(),
        solutions,
    })
}

fn search(
    a: &StepMatrix,
    cert: &ConeCertificate,
    j: usize,
    residual_degree: i64,
    residual: &mut Vec<i64>,
    x: &mut Vec<i64>,
    out: &mut Vec<LatticeVector>,
) {
    if j == a.ncols() {
        if residual.iter().all(|&r| r == 0) {
            out.push(LatticeVector::new(x.clone()));
        }
        return;
    }
    let step = cert.step_degrees()[j];
    let col = a.column(j).coords();
    let max = residual_degree / step;
    for k in 0..=max {
        x[j] = k;
        search(a, cert, j + 1, residual_degree - k * step, residual, x, out);
        for (r, &c) in residual.iter_mut().zip(col) {
            *r -= c;
        }
    }
    // undo the max + 1 subtractions
    for (r, &c) in residual.iter_mut().zip(col) {
        *r += c * (max + 1);
    }
    x[j] = 0;
}

/// Classical vector partition function `P_A(lambda)`.
pub fn vector_partition(
    a: &StepMatrix,
    cert: &ConeCertificate,
    lambda: &LatticeVector,
) -> Result<Scalar> {
    let set = enumerate_solutions(a, cert, lambda)?;
    Ok(Scalar::from_integer(set.len().into()))
}

/// `P_A(lambda; phi) = sum of phi(x) over A x = lambda, x >= 0`.
pub fn generalized_vp(
    a: &StepMatrix,
    cert: &ConeCertificate,
    lambda: &LatticeVector,
    phi: &WeightFunction,
) -> Result<Scalar> {
    phi.check_arity(a.ncols())?;
    let set = enumerate_solutions(a, cert, lambda)?;
    let mut total = Scalar::zero();
    for x in &set.solutions {
        total += evaluate_weight(phi, x)?;
    }
    Ok(total)
}

/// Sort key for graded-lex order under the certificate's grading.
fn graded_key(cert: &ConeCertificate, v: &LatticeVector) -> (i64, LatticeVector) {
    (cert.ell_degree(v).expect("dimension checked"), v.clone())
}

/// `P_A(lambda; phi)` for every `lambda = A x` (`x >= 0`) with ell-degree at
/// most `bound`, in graded-lex order. Entries whose weights cancel are kept
/// with value zero.
pub fn generalized_vp_table(
    a: &StepMatrix,
    cert: &ConeCertificate,
    phi: &WeightFunction,
    bound: i64,
) -> Result<Vec<(LatticeVector, Scalar)>> {
    cert.check_matrix(a)?;
    phi.check_arity(a.ncols())?;
    let mut acc: BTreeMap<(i64, LatticeVector), Scalar> = BTreeMap::new();
    if bound >= 0 {
        let mut x = vec![0i64; a.ncols()];
        let mut err = None;
        walk_bounded(cert.step_degrees(), 0, bound, &mut x, &mut |x| {
            if err.is_some() {
                return;
            }
            let x = LatticeVector::new(x.to_vec());
            let lambda = a.apply(&x).expect("arity checked");
            match evaluate_weight(phi, &x) {
                Ok(v) => {
                    *acc.entry(graded_key(cert, &lambda))
                        .or_insert_with(Scalar::zero) += v
                }
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(acc.into_iter().map(|((_, l), v)| (l, v)).collect())
}

// Visits every x >= 0 with sum_j x_j * degrees[j] <= budget.
fn walk_bounded<F: FnMut(&[i64])>(
    degrees: &[i64],
    j: usize,
    budget: i64,
    x: &mut Vec<i64>,
    visit: &mut F,
) {
    if j == degrees.len() {
        visit(x);
        return;
    }
    for k in 0..=budget / degrees[j] {
        x[j] = k;
        walk_bounded(degrees, j + 1, budget - k * degrees[j], x, visit);
    }
    x[j] = 0;
}

/// The lattice points of `K` with ell-degree at most `bound`, graded-lex.
///
/// Built by closing `{0}` under adding columns, independent of the solution
/// enumerator.
pub fn cone_points(
    a: &StepMatrix,
    cert: &ConeCertificate,
    bound: i64,
) -> Result<Vec<LatticeVector>> {
    cert.check_matrix(a)?;
    let mut seen: BTreeSet<(i64, LatticeVector)> = BTreeSet::new();
    if bound < 0 {
        return Ok(Vec::new());
    }
    let origin = LatticeVector::zeros(a.nrows());
    let mut frontier = vec![origin.clone()];
    seen.insert((0, origin));
    while let Some(p) = frontier.pop() {
        for col in a.columns() {
            let q = p.checked_add(col)?;
            let d = cert.ell_degree(&q)?;
            if d <= bound && seen.insert((d, q.clone())) {
                frontier.push(q);
            }
        }
    }
    Ok(seen.into_iter().map(|(_, p)| p).collect())
}

/// Largest number of solutions any target of ell-degree `degree` can have.
pub fn solution_count_bound(cert: &ConeCertificate, degree: i64) -> u128 {
    if degree < 0 {
        return 0;
    }
    cert.step_degrees()
        .iter()
        .map(|&s| 1 + (degree / s) as u128)
        .product()
}
