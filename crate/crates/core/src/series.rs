//! Sparse truncated multivariate power series with exact coefficients.
//!
//! A series carries a grading vector `g` and a bound `D`; only exponents `e`
//! with `0 <= <g, e> <= D` are representable. Series in the `xi` variables
//! use `g = (1, ..., 1)` (total degree). Series in `z` obtained through the
//! substitution `xi = z^A` use the cone certificate's functional, so their
//! exponents may have negative coordinates.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::cone::ConeCertificate;
use crate::enumeration::cone_points;
use crate::error::{Error, Result};
use crate::types::{
    evaluate_weight, orthant_points, LatticeVector, Scalar, StepMatrix, WeightFunction,
};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    grading: LatticeVector,
    bound: i64,
    coeffs: BTreeMap<LatticeVector, Scalar>,
}

impl TruncatedSeries {
    pub fn zero(grading: LatticeVector, bound: i64) -> Self {
        TruncatedSeries {
            grading,
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    /// Zero series in `nvars` variables graded by total degree.
    pub fn xi_zero(nvars: usize, bound: i64) -> Self {
        Self::zero(LatticeVector::ones(nvars), bound)
    }

    /// Sums the given terms; terms beyond the bound are truncated away.
    pub fn from_terms<I>(grading: LatticeVector, bound: i64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (LatticeVector, Scalar)>,
    {
        let mut s = Self::zero(grading, bound);
        for (e, c) in terms {
            s.add_term(e, c)?;
        }
        Ok(s)
    }

    pub fn constant(grading: LatticeVector, bound: i64, c: Scalar) -> Self {
        let origin = LatticeVector::zeros(grading.dim());
        let mut s = Self::zero(grading, bound);
        if bound >= 0 && !c.is_zero() {
            s.coeffs.insert(origin, c);
        }
        s
    }

    pub fn one(grading: LatticeVector, bound: i64) -> Self {
        Self::constant(grading, bound, Scalar::one())
    }

    /// The variable `xi_j` (0-based) in the total-degree grading.
    pub fn variable(nvars: usize, bound: i64, j: usize) -> Result<Self> {
        if j >= nvars {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: nvars,
            });
        }
        Self::from_terms(
            LatticeVector::ones(nvars),
            bound,
            [(LatticeVector::unit(nvars, j), Scalar::one())],
        )
    }

    /// `1 - <c, xi>`.
    pub fn one_minus_linear(c: &[Scalar], bound: i64) -> Result<Self> {
        let nvars = c.len();
        let mut terms = vec![(LatticeVector::zeros(nvars), Scalar::one())];
        terms.extend(
            c.iter()
                .enumerate()
                .map(|(j, cj)| (LatticeVector::unit(nvars, j), -cj.clone())),
        );
        Self::from_terms(LatticeVector::ones(nvars), bound, terms)
    }

    pub fn nvars(&self) -> usize {
        self.grading.dim()
    }

    pub fn grading(&self) -> &LatticeVector {
        &self.grading
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: &LatticeVector) -> Scalar {
        self.coeffs.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree_of(&self, e: &LatticeVector) -> Result<i64> {
        self.grading.dot(e)
    }

    /// Nonzero terms in graded-lex order.
    pub fn terms(&self) -> Vec<(&LatticeVector, &Scalar)> {
        let mut out: Vec<_> = self.coeffs.iter().collect();
        out.sort_by_cached_key(|(e, _)| (self.grading.dot(e).unwrap_or(0), (*e).clone()));
        out
    }

    fn add_term(&mut self, e: LatticeVector, c: Scalar) -> Result<()> {
        let d = self.grading.dot(&e)?;
        if d < 0 {
            return Err(Error::InvalidArgument(format!(
                "exponent {e} has negative degree {d}"
            )));
        }
        if d > self.bound || c.is_zero() {
            return Ok(());
        }
        match self.coeffs.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.grading != other.grading {
            return Err(Error::IncompatibleSeries(format!(
                "gradings {} and {}",
                self.grading, other.grading
            )));
        }
        if self.bound != other.bound {
            return Err(Error::IncompatibleSeries(format!(
                "bounds {} and {}",
                self.bound, other.bound
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let mut out = Self::zero(self.grading.clone(), self.bound);
        if !k.is_zero() {
            out.coeffs = self
                .coeffs
                .iter()
                .map(|(e, c)| (e.clone(), c * k))
                .collect();
        }
        out
    }

    /// Truncated Cauchy product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut acc: BTreeMap<LatticeVector, Scalar> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            let da = self.grading.dot(ea)?;
            for (eb, cb) in &other.coeffs {
                if da + self.grading.dot(eb)? > self.bound {
                    continue;
                }
                *acc.entry(ea.checked_add(eb)?).or_insert_with(Scalar::zero) += ca * cb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(TruncatedSeries {
            grading: self.grading.clone(),
            bound: self.bound,
            coeffs: acc,
        })
    }

    /// Multiplicative inverse. Needs a nonzero constant term and every other
    /// term of positive degree.
    pub fn inverse(&self) -> Result<Self> {
        let origin = LatticeVector::zeros(self.nvars());
        let c0 = self.coeff(&origin);
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        for e in self.coeffs.keys() {
            if e != &origin && self.grading.dot(e)? == 0 {
                return Err(Error::NotInvertible);
            }
        }
        let inv0 = c0.recip();
        let one = Self::one(self.grading.clone(), self.bound);
        let mut rest = self.clone();
        rest.coeffs.remove(&origin);
        // Each pass fixes at least one more degree.
        let mut g = one.scale(&inv0);
        for _ in 0..self.bound.max(0) {
            g = one.try_sub(&rest.try_mul(&g)?)?.scale(&inv0);
        }
        Ok(g)
    }

    /// `pi_j`: sets variable `j` (0-based) to zero.
    pub fn project(&self, j: usize) -> Result<Self> {
        if j >= self.nvars() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.nvars(),
            });
        }
        let mut out = self.clone();
        out.coeffs.retain(|e, _| e.coords()[j] == 0);
        Ok(out)
    }

    /// `pi_J` for a strictly increasing index set; the empty set is the identity.
    pub fn project_set(&self, set: &[usize]) -> Result<Self> {
        if set.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::MalformedIndexSet(set.to_vec()));
        }
        let mut out = self.clone();
        for &j in set {
            out = out.project(j)?;
        }
        Ok(out)
    }

    /// `Pi = sum over J of (-1)^{#J} pi_J`, evaluated as the signed sum over
    /// all `2^N` index sets.
    pub fn pi_operator(&self) -> Result<Self> {
        self.signed_projection_sum(None)
    }

    /// `Pi_j`: the signed sum over index sets avoiding `j`.
    pub fn pi_operator_except(&self, j: usize) -> Result<Self> {
        if j >= self.nvars() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: self.nvars(),
            });
        }
        self.signed_projection_sum(Some(j))
    }

    fn signed_projection_sum(&self, skip: Option<usize>) -> Result<Self> {
        let nvars = self.nvars();
        let mut acc = Self::zero(self.grading.clone(), self.bound);
        for mask in 0u64..(1u64 << nvars) {
            if let Some(j) = skip {
                if mask & (1 << j) != 0 {
                    continue;
                }
            }
            let set: Vec<usize> = (0..nvars).filter(|&k| mask & (1 << k) != 0).collect();
            let term = self.project_set(&set)?;
            acc = if set.len().is_multiple_of(2) {
                acc.try_add(&term)?
            } else {
                acc.try_sub(&term)?
            };
        }
        Ok(acc)
    }

    /// The sub-series supported on exponents `>= (1, ..., 1)`.
    pub fn pi_filter(&self) -> Self {
        let mut out = self.clone();
        out.coeffs.retain(|e, _| e.coords().iter().all(|&c| c >= 1));
        out
    }

    /// One line per term, `(e1,e2,...) : p/q`, graded-lex order.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for (e, c) in self.terms() {
            s.push_str(&format!("{} : {}/{}\n", e.compact(), c.numer(), c.denom()));
        }
        s
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Generating series `Phi(xi) = sum phi(x) xi^x` over `|x| <= bound`.
pub fn weight_series(phi: &WeightFunction, nvars: usize, bound: i64) -> Result<TruncatedSeries> {
    phi.check_arity(nvars)?;
    let terms = orthant_points(nvars, bound)
        .into_iter()
        .map(|x| {
            let v = evaluate_weight(phi, &x)?;
            Ok((x, v))
        })
        .collect::<Result<Vec<_>>>()?;
    TruncatedSeries::from_terms(LatticeVector::ones(nvars), bound, terms)
}

/// Substitutes `xi_j = z^{alpha^j}`, so `xi^x` becomes `z^{A x}`.
///
/// The result is graded by the certificate and truncated at `out_bound`.
/// Every `x` with `ell(A x) <= out_bound` has `|x| <= out_bound`, so an input
/// bound of at least `out_bound` is enough.
pub fn substitute_monomial(
    s: &TruncatedSeries,
    a: &StepMatrix,
    cert: &ConeCertificate,
    out_bound: i64,
) -> Result<TruncatedSeries> {
    cert.check_matrix(a)?;
    if s.nvars() != a.ncols() {
        return Err(Error::DimensionMismatch {
            expected: a.ncols(),
            found: s.nvars(),
        });
    }
    if s.grading != LatticeVector::ones(s.nvars()) {
        return Err(Error::IncompatibleSeries(
            "substitution expects a total-degree graded series".into(),
        ));
    }
    if s.bound < out_bound {
        return Err(Error::InsufficientBound {
            have: s.bound,
            need: out_bound,
        });
    }
    let mut out = TruncatedSeries::zero(cert.ell().clone(), out_bound);
    for (x, c) in &s.coeffs {
        out.add_term(a.apply(x)?, c.clone())?;
    }
    Ok(out)
}

/// `1 / (1 - z^{alpha^1} - ... - z^{alpha^N})` up to ell-degree `bound`.
pub fn geometric_inverse(
    a: &StepMatrix,
    cert: &ConeCertificate,
    bound: i64,
) -> Result<TruncatedSeries> {
    let points = cone_points(a, cert, bound)?;
    // Graded order: every lambda - alpha^j is settled before lambda.
    let mut values: BTreeMap<LatticeVector, Scalar> = BTreeMap::new();
    for lambda in points {
        let mut v = if lambda.is_zero() {
            Scalar::one()
        } else {
            Scalar::zero()
        };
        for col in a.columns() {
            if let Some(prev) = values.get(&lambda.checked_sub(col)?) {
                v += prev;
            }
        }
        values.insert(lambda, v);
    }
    TruncatedSeries::from_terms(cert.ell().clone(), bound, values)
}
