//! Exact scalars, lattice vectors, step matrices and the weight-function family.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar. Always normalized (lowest terms, positive denominator).
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` with `0^0 = 1`.
pub fn pow(base: &Scalar, exp: usize) -> Scalar {
    num_traits::pow(base.clone(), exp)
}

/// Renders a scalar as `numerator/denominator`, keeping the denominator even
/// when it is 1.
pub fn render_fraction(value: &Scalar) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Integer point of `Z^dim`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        LatticeVector(vec![0; dim])
    }

    pub fn ones(dim: usize) -> Self {
        LatticeVector(vec![1; dim])
    }

    /// Unit vector `e^j` (0-based `j`).
    pub fn unit(dim: usize, j: usize) -> Self {
        let mut v = vec![0; dim];
        v[j] = 1;
        LatticeVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// `|x| = x_1 + ... + x_dim`.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    fn check_dim(&self, other: &LatticeVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn dot(&self, other: &LatticeVector) -> Result<i64> {
        self.check_dim(other)?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    pub fn checked_add(&self, other: &LatticeVector) -> Result<LatticeVector> {
        self.check_dim(other)?;
        Ok(LatticeVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn checked_sub(&self, other: &LatticeVector) -> Result<LatticeVector> {
        self.check_dim(other)?;
        Ok(LatticeVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Component-wise `self <= other`.
    pub fn le_componentwise(&self, other: &LatticeVector) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Compact rendering `(a,b,c)` used by series listings.
    pub fn compact(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(coords: Vec<i64>) -> Self {
        LatticeVector(coords)
    }
}

impl<const K: usize> From<[i64; K]> for LatticeVector {
    fn from(coords: [i64; K]) -> Self {
        LatticeVector(coords.to_vec())
    }
}

/// The `n x N` integer matrix whose columns are the step vectors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StepMatrix {
    n: usize,
    columns: Vec<LatticeVector>,
}

impl StepMatrix {
    /// Builds the matrix from its columns. Columns may repeat; the zero
    /// column is rejected.
    pub fn from_columns(columns: Vec<LatticeVector>) -> Result<Self> {
        let n = columns.first().map(LatticeVector::dim).unwrap_or(0);
        if columns.is_empty() || n == 0 {
            return Err(Error::EmptyMatrix);
        }
        for (j, col) in columns.iter().enumerate() {
            if col.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: col.dim(),
                });
            }
            if col.is_zero() {
                return Err(Error::ZeroColumn(j));
            }
        }
        Ok(StepMatrix { n, columns })
    }

    /// Builds the matrix from row-major data (`rows.len() == n`).
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let width = rows.first().map(Vec::len).unwrap_or(0);
        if rows.is_empty() || width == 0 {
            return Err(Error::EmptyMatrix);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::RaggedMatrix {
                    row: i,
                    expected: width,
                    found: row.len(),
                });
            }
        }
        let columns = (0..width)
            .map(|j| LatticeVector::new(rows.iter().map(|r| r[j]).collect()))
            .collect();
        Self::from_columns(columns)
    }

    /// The `N` unit steps `e^1, ..., e^N` in `Z^N`.
    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_columns((0..dim).map(|j| LatticeVector::unit(dim, j)).collect())
    }

    /// Ambient dimension `n`.
    pub fn nrows(&self) -> usize {
        self.n
    }

    /// Number of steps `N`.
    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &LatticeVector {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[LatticeVector] {
        &self.columns
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| self.columns.iter().map(|c| c.coords()[i]).collect())
            .collect()
    }

    /// `A x`.
    pub fn apply(&self, x: &LatticeVector) -> Result<LatticeVector> {
        if x.dim() != self.ncols() {
            return Err(Error::DimensionMismatch {
                expected: self.ncols(),
                found: x.dim(),
            });
        }
        let mut out = vec![0i64; self.n];
        for (col, &xj) in self.columns.iter().zip(x.coords()) {
            for (o, &a) in out.iter_mut().zip(col.coords()) {
                *o += a * xj;
            }
        }
        Ok(LatticeVector::new(out))
    }

    /// `A I`, the sum of all columns.
    pub fn column_sum(&self) -> LatticeVector {
        self.apply(&LatticeVector::ones(self.ncols()))
            .expect("ones vector has N entries")
    }

    /// `A_j`: the matrix with column `j` deleted, or `None` when `N = 1`.
    pub fn without_column(&self, j: usize) -> Option<StepMatrix> {
        if self.ncols() <= 1 || j >= self.ncols() {
            return None;
        }
        let mut columns = self.columns.clone();
        columns.remove(j);
        Some(StepMatrix { n: self.n, columns })
    }
}

/// Dense table of weights on the box `0 <= x_i < shape_i`; zero elsewhere.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightTable {
    shape: Vec<usize>,
    values: Vec<Scalar>,
}

impl WeightTable {
    /// `values` are row-major with the last coordinate varying fastest.
    pub fn new(shape: Vec<usize>, values: Vec<Scalar>) -> Result<Self> {
        if shape.is_empty() {
            return Err(Error::InvalidArgument(
                "table needs at least one axis".into(),
            ));
        }
        let expected = shape.iter().product();
        if values.len() != expected {
            return Err(Error::TableSize {
                expected,
                found: values.len(),
            });
        }
        Ok(WeightTable { shape, values })
    }

    /// Tabulates `f` over the box.
    pub fn from_fn<F>(shape: Vec<usize>, mut f: F) -> Result<Self>
    where
        F: FnMut(&LatticeVector) -> Result<Scalar>,
    {
        let total: usize = shape.iter().product();
        let mut values = Vec::with_capacity(total);
        for flat in 0..total {
            let point = unflatten(&shape, flat);
            values.push(f(&point)?);
        }
        Self::new(shape, values)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn arity(&self) -> usize {
        self.shape.len()
    }

    fn get(&self, x: &LatticeVector) -> Scalar {
        let mut flat = 0usize;
        for (&c, &extent) in x.coords().iter().zip(&self.shape) {
            if c < 0 || c as usize >= extent {
                return Scalar::zero();
            }
            flat = flat * extent + c as usize;
        }
        self.values[flat].clone()
    }
}

fn unflatten(shape: &[usize], mut flat: usize) -> LatticeVector {
    let mut coords = vec![0i64; shape.len()];
    for (c, &extent) in coords.iter_mut().zip(shape).rev() {
        *c = (flat % extent) as i64;
        flat /= extent;
    }
    LatticeVector::new(coords)
}

/// A function `phi: Z^N_>= -> Q`, extended by zero off the orthant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WeightFunction {
    ConstantOne,
    /// `q_1^{x_1} ... q_N^{x_N}`.
    GeometricWeights(Vec<Scalar>),
    /// `(|x|!/x!) c^{x + e^j}`, with `j` 0-based.
    MultinomialMonomial {
        c: Vec<Scalar>,
        j: usize,
    },
    /// Number of unit-step lattice paths from the origin to `x`.
    LatticePathCount,
    Table(WeightTable),
}

impl WeightFunction {
    /// Fixed arity, if the variant carries one.
    pub fn arity(&self) -> Option<usize> {
        match self {
            WeightFunction::ConstantOne | WeightFunction::LatticePathCount => None,
            WeightFunction::GeometricWeights(q) => Some(q.len()),
            WeightFunction::MultinomialMonomial { c, .. } => Some(c.len()),
            WeightFunction::Table(t) => Some(t.arity()),
        }
    }

    pub fn check_arity(&self, n: usize) -> Result<()> {
        match self.arity() {
            Some(a) if a != n => Err(Error::DimensionMismatch {
                expected: a,
                found: n,
            }),
            _ => Ok(()),
        }
    }

    pub fn multinomial_monomial(c: Vec<Scalar>, j: usize) -> Result<Self> {
        if j >= c.len() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: c.len(),
            });
        }
        Ok(WeightFunction::MultinomialMonomial { c, j })
    }

    pub fn evaluate(&self, x: &LatticeVector) -> Result<Scalar> {
        evaluate_weight(self, x)
    }
}

/// Exact value `phi(x)`; zero whenever `x` has a negative coordinate.
pub fn evaluate_weight(phi: &WeightFunction, x: &LatticeVector) -> Result<Scalar> {
    phi.check_arity(x.dim())?;
    if !x.is_nonnegative() {
        return Ok(Scalar::zero());
    }
    let value = match phi {
        WeightFunction::ConstantOne => Scalar::one(),
        WeightFunction::GeometricWeights(q) => monomial_power(q, x),
        WeightFunction::MultinomialMonomial { c, j } => {
            let mut shifted = x.clone().into_coords();
            shifted[*j] += 1;
            multinomial(x)? * monomial_power(c, &LatticeVector::new(shifted))
        }
        WeightFunction::LatticePathCount => multinomial(x)?,
        WeightFunction::Table(t) => t.get(x),
    };
    Ok(value)
}

/// `c^x = c_1^{x_1} ... c_N^{x_N}` for `x >= 0`.
pub(crate) fn monomial_power(c: &[Scalar], x: &LatticeVector) -> Scalar {
    c.iter()
        .zip(x.coords())
        .fold(Scalar::one(), |acc, (ci, &xi)| acc * pow(ci, xi as usize))
}

/// Multinomial coefficient `|x|! / (x_1! ... x_N!)`.
pub fn multinomial(x: &LatticeVector) -> Result<Scalar> {
    if !x.is_nonnegative() {
        return Err(Error::NegativeCoordinate(x.clone()));
    }
    let mut acc = BigInt::one();
    let mut partial = 0i64;
    for &xi in x.coords() {
        partial += xi;
        acc *= binomial(BigInt::from(partial), BigInt::from(xi));
    }
    Ok(Scalar::from_integer(acc))
}

/// Every `x in Z^N_>=` with `|x| <= bound`, in graded-lex order.
pub fn orthant_points(nvars: usize, bound: i64) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    for degree in 0..=bound.max(-1) {
        let mut current = vec![0i64; nvars];
        compositions(&mut current, 0, degree, &mut out);
    }
    out
}

// Weak compositions of `remaining` into the slots from `slot` on, in lex order.
fn compositions(current: &mut Vec<i64>, slot: usize, remaining: i64, out: &mut Vec<LatticeVector>) {
    if current.is_empty() {
        if remaining == 0 {
            out.push(LatticeVector::new(Vec::new()));
        }
        return;
    }
    if slot + 1 == current.len() {
        current[slot] = remaining;
        out.push(LatticeVector::new(current.clone()));
        current[slot] = 0;
        return;
    }
    for v in 0..=remaining {
        current[slot] = v;
        compositions(current, slot + 1, remaining - v, out);
    }
    current[slot] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::new(c.to_vec())
    }

    #[test]
    fn constant_one_is_one() {
        assert_eq!(
            evaluate_weight(&WeightFunction::ConstantOne, &lv(&[5, 0, 2])).unwrap(),
            scalar(1)
        );
    }

    #[test]
    fn multinomial_monomial_value() {
        let phi = WeightFunction::multinomial_monomial(vec![ratio(1, 2), ratio(1, 2)], 0).unwrap();
        // 2!/(1!1!) * (1/2)^2 * (1/2)
        assert_eq!(phi.evaluate(&lv(&[1, 1])).unwrap(), ratio(1, 4));
    }

    #[test]
    fn lattice_path_count_value() {
        assert_eq!(
            WeightFunction::LatticePathCount
                .evaluate(&lv(&[2, 2]))
                .unwrap(),
            scalar(6)
        );
    }

    #[test]
    fn off_orthant_is_zero() {
        let phi = WeightFunction::GeometricWeights(vec![ratio(1, 3)]);
        assert_eq!(phi.evaluate(&lv(&[-1])).unwrap(), scalar(0));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let phi = WeightFunction::GeometricWeights(vec![ratio(1, 3)]);
        assert!(matches!(
            phi.evaluate(&lv(&[1, 1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(&lv(&[0, 0, 0])).unwrap(), scalar(1));
        assert_eq!(multinomial(&lv(&[2, 2])).unwrap(), scalar(6));
        assert_eq!(multinomial(&lv(&[1, 1, 1])).unwrap(), scalar(6));
        assert!(matches!(
            multinomial(&lv(&[1, -1])),
            Err(Error::NegativeCoordinate(_))
        ));
    }

    #[test]
    fn zero_to_the_zero_is_one() {
        assert_eq!(pow(&scalar(0), 0), scalar(1));
        assert_eq!(pow(&scalar(0), 3), scalar(0));
    }

    #[test]
    fn step_matrix_rejects_zero_column() {
        assert_eq!(
            StepMatrix::from_rows(&[vec![1, 0], vec![0, 0]]),
            Err(Error::ZeroColumn(1))
        );
        assert_eq!(StepMatrix::from_rows(&[]), Err(Error::EmptyMatrix));
        assert!(matches!(
            StepMatrix::from_rows(&[vec![1, 0], vec![1]]),
            Err(Error::RaggedMatrix { row: 1, .. })
        ));
    }

    #[test]
    fn step_matrix_rows_and_columns() {
        let a = StepMatrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        assert_eq!(a.nrows(), 2);
        assert_eq!(a.ncols(), 3);
        assert_eq!(a.column(2), &lv(&[1, 1]));
        assert_eq!(a.apply(&lv(&[1, 0, 2])).unwrap(), lv(&[3, 2]));
        assert_eq!(a.column_sum(), lv(&[2, 2]));
        assert_eq!(
            a.without_column(2).unwrap(),
            StepMatrix::identity(2).unwrap()
        );
        assert_eq!(a.rows(), vec![vec![1, 0, 1], vec![0, 1, 1]]);
        assert!(StepMatrix::identity(1).unwrap().without_column(0).is_none());
    }

    #[test]
    fn table_reads_and_zero_outside() {
        let t = WeightTable::from_fn(vec![2, 3], |x| {
            Ok(scalar(10 * x.coords()[0] + x.coords()[1]))
        })
        .unwrap();
        let phi = WeightFunction::Table(t);
        assert_eq!(phi.evaluate(&lv(&[1, 2])).unwrap(), scalar(12));
        assert_eq!(phi.evaluate(&lv(&[2, 0])).unwrap(), scalar(0));
        assert_eq!(phi.evaluate(&lv(&[0, -1])).unwrap(), scalar(0));
        assert!(matches!(
            WeightTable::new(vec![2, 2], vec![scalar(1)]),
            Err(Error::TableSize {
                expected: 4,
                found: 1
            })
        ));
    }

    #[test]
    fn orthant_points_are_graded_lex() {
        let pts: Vec<_> = orthant_points(2, 2)
            .into_iter()
            .map(LatticeVector::into_coords)
            .collect();
        assert_eq!(
            pts,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![0, 2],
                vec![1, 1],
                vec![2, 0]
            ]
        );
        assert_eq!(orthant_points(3, 4).len(), 35);
    }

    #[test]
    fn lattice_path_count_obeys_recurrence() {
        let phi = WeightFunction::LatticePathCount;
        for x in orthant_points(3, 6) {
            if x.is_zero() {
                continue;
            }
            let mut sum = scalar(0);
            for j in 0..3 {
                sum += phi
                    .evaluate(&x.checked_sub(&LatticeVector::unit(3, j)).unwrap())
                    .unwrap();
            }
            assert_eq!(phi.evaluate(&x).unwrap(), sum, "at {x}");
        }
    }

    #[test]
    fn vector_arithmetic_checks_dims() {
        assert!(lv(&[1]).checked_add(&lv(&[1, 2])).is_err());
        assert_eq!(lv(&[1, 2]).checked_sub(&lv(&[3, 1])).unwrap(), lv(&[-2, 1]));
        assert_eq!(lv(&[1, 1]).dot(&lv(&[3, 2])).unwrap(), 5);
        assert_eq!(lv(&[1, 1]).to_string(), "(1, 1)");
        assert_eq!(lv(&[2, 2]).compact(), "(2,2)");
    }
}
