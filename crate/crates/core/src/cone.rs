//! Pointedness certificates for the cone spanned by the step vectors.
//!
//! A cone `K = A R^N_>=` is pointed exactly when some linear functional `ell`
//! is strictly positive on every column. We find one by an exact phase-one
//! simplex on `A^T y >= 1`; when that system is infeasible the phase-one
//! duals give a Farkas certificate `w >= 0, w != 0, A w = 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::types::{LatticeVector, Scalar, StepMatrix};

/// An integer functional `ell` with `<ell, alpha^j> >= 1` for every column.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConeCertificate {
    ell: LatticeVector,
    step_degrees: Vec<i64>,
}

impl ConeCertificate {
    /// Validates a caller-supplied functional against `a`.
    pub fn from_functional(a: &StepMatrix, ell: LatticeVector) -> Result<Self> {
        let mut step_degrees = Vec::with_capacity(a.ncols());
        for (j, col) in a.columns().iter().enumerate() {
            let d = ell.dot(col)?;
            if d < 1 {
                return Err(Error::NotCertifying { ell, column: j });
            }
            step_degrees.push(d);
        }
        Ok(ConeCertificate { ell, step_degrees })
    }

    pub fn ell(&self) -> &LatticeVector {
        &self.ell
    }

    /// `<ell, alpha^j>` for each column.
    pub fn step_degrees(&self) -> &[i64] {
        &self.step_degrees
    }

    pub fn ell_degree(&self, lambda: &LatticeVector) -> Result<i64> {
        ell_degree(self, lambda)
    }

    /// Certificate for `A_j` (column `j` removed); the same functional works.
    pub fn without_column(&self, j: usize) -> ConeCertificate {
        let mut step_degrees = self.step_degrees.clone();
        step_degrees.remove(j);
        ConeCertificate {
            ell: self.ell.clone(),
            step_degrees,
        }
    }

    pub(crate) fn check_matrix(&self, a: &StepMatrix) -> Result<()> {
        if self.ell.dim() != a.nrows() {
            return Err(Error::DimensionMismatch {
                expected: a.nrows(),
                found: self.ell.dim(),
            });
        }
        if self.step_degrees.len() != a.ncols() {
            return Err(Error::DimensionMismatch {
                expected: a.ncols(),
                found: self.step_degrees.len(),
            });
        }
        Ok(())
    }
}

/// `<ell, lambda>`.
pub fn ell_degree(cert: &ConeCertificate, lambda: &LatticeVector) -> Result<i64> {
    cert.ell.dot(lambda)
}

/// Decides pointedness of the cone spanned by the columns of `a`.
///
/// The returned functional is the simplex solution scaled to integers and
/// divided by the gcd of its entries. It is deterministic for a fixed `a`
/// but not minimal in any sense.
pub fn certify_pointed(a: &StepMatrix) -> Result<ConeCertificate> {
    let n = a.nrows();
    let big_n = a.ncols();
    // One row per column alpha^j:  <alpha^j, u> - <alpha^j, v> - s_j = 1.
    let width = 2 * n + big_n;
    let rows: Vec<Vec<Scalar>> = a
        .columns()
        .iter()
        .enumerate()
        .map(|(j, col)| {
            let mut row = vec![Scalar::zero(); width];
            for (i, &c) in col.coords().iter().enumerate() {
                row[i] = Scalar::from_integer(BigInt::from(c));
                row[n + i] = Scalar::from_integer(BigInt::from(-c));
            }
            row[2 * n + j] = -Scalar::one();
            row
        })
        .collect();
    let rhs = vec![Scalar::one(); big_n];

    match simplex::phase_one(&rows, &rhs) {
        simplex::Outcome::Feasible(z) => {
            let y: Vec<Scalar> = (0..n).map(|i| &z[i] - &z[n + i]).collect();
            let ell = LatticeVector::new(integer_direction(&y));
            ConeCertificate::from_functional(a, ell)
        }
        simplex::Outcome::Infeasible(duals) => {
            let certificate = LatticeVector::new(integer_direction(&duals));
            debug_assert!(certificate.is_nonnegative() && !certificate.is_zero());
            debug_assert!(a.apply(&certificate).map(|v| v.is_zero()).unwrap_or(false));
            Err(Error::NotPointed { certificate })
        }
    }
}

/// Scales a rational vector by the lcm of its denominators, then divides by
/// the gcd of the resulting integers. Direction and sign are preserved.
fn integer_direction(v: &[Scalar]) -> Vec<i64> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Scalar::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter()
        .map(|x| {
            let x = if gcd.is_zero() { x } else { x / &gcd };
            i64::try_from(x).expect("functional entry fits in i64")
        })
        .collect()
}

mod simplex {
    //! Dense exact tableau, phase one only, Bland's smallest-index rule.

    use super::*;

    pub(super) enum Outcome {
        /// A point `z >= 0` with `M z = b`.
        Feasible(Vec<Scalar>),
        /// Duals `w` with `w^T M <= 0` and `w^T b > 0`.
        Infeasible(Vec<Scalar>),
    }

    /// Feasibility of `{ z >= 0 : M z = b }` for `b >= 0`.
    pub(super) fn phase_one(m: &[Vec<Scalar>], b: &[Scalar]) -> Outcome {
        let rows = m.len();
        let cols = m.first().map(Vec::len).unwrap_or(0);
        let total = cols + rows;
        debug_assert!(b.iter().all(|x| !x.is_negative()));

        // Tableau columns: originals, then one artificial per row, then rhs.
        let mut tab: Vec<Vec<Scalar>> = (0..rows)
            .map(|i| {
                let mut row = m[i].clone();
                row.extend((0..rows).map(|k| {
                    if k == i {
                        Scalar::one()
                    } else {
                        Scalar::zero()
                    }
                }));
                row.push(b[i].clone());
                row
            })
            .collect();
        let mut basis: Vec<usize> = (cols..total).collect();
        let cost = |k: usize| {
            if k >= cols {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        };

        let reduced = |tab: &[Vec<Scalar>], basis: &[usize], k: usize| -> Scalar {
            let mut r = cost(k);
            for (i, &bi) in basis.iter().enumerate() {
                if bi >= cols {
                    r -= &tab[i][k];
                }
            }
            r
        };

        loop {
            let entering = (0..total).find(|&k| reduced(&tab, &basis, k).is_negative());
            let Some(e) = entering else { break };

            let mut leave: Option<(usize, Scalar)> = None;
            for i in 0..rows {
                if tab[i][e].is_positive() {
                    let ratio = &tab[i][total] / &tab[i][e];
                    let better = match &leave {
                        None => true,
                        Some((li, best)) => {
                            ratio < *best || (ratio == *best && basis[i] < basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            // Phase one is bounded below by zero, so a pivot row always exists.
            let (r, _) = leave.expect("phase-one objective is bounded");
            pivot(&mut tab, r, e);
            basis[r] = e;
        }

        let objective: Scalar = basis
            .iter()
            .enumerate()
            .filter(|(_, &bi)| bi >= cols)
            .map(|(i, _)| tab[i][total].clone())
            .sum();

        if objective.is_zero() {
            let mut z = vec![Scalar::zero(); cols];
            for (i, &bi) in basis.iter().enumerate() {
                if bi < cols {
                    z[bi] = tab[i][total].clone();
                }
            }
            Outcome::Feasible(z)
        } else {
            // Reduced cost of artificial i is 1 - w_i.
            let duals = (0..rows)
                .map(|i| Scalar::one() - reduced(&tab, &basis, cols + i))
                .collect();
            Outcome::Infeasible(duals)
        }
    }

    fn pivot(tab: &mut [Vec<Scalar>], r: usize, e: usize) {
        let p = tab[r][e].clone();
        for v in tab[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = tab[r].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i == r || row[e].is_zero() {
                continue;
            }
            let f = row[e].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * pv;
            }
        }
    }
}
