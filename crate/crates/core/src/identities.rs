//! Shift operators on weight functions and exact verifiers for the summation
//! identities over pointed cones.
//!
//! Every verifier computes the two sides of its identity along separate code
//! paths (series manipulation versus direct enumeration, or two independent
//! enumerations) and compares them coefficient by coefficient. A report only
//! ever speaks for its stated window.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cone::ConeCertificate;
use crate::enumeration::{cone_points, generalized_vp, vector_partition};
use crate::error::{Error, Result};
use crate::series::{geometric_inverse, substitute_monomial, weight_series, TruncatedSeries};
use crate::types::{
    evaluate_weight, monomial_power, multinomial, orthant_points, pow, render_fraction,
    LatticeVector, Scalar, StepMatrix, WeightFunction, WeightTable,
};

/// First location where the two sides of an identity differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub location: LatticeVector,
    #[serde(serialize_with = "serialize_scalar")]
    pub lhs: Scalar,
    #[serde(serialize_with = "serialize_scalar")]
    pub rhs: Scalar,
}

/// Outcome of an identity check over a finite window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub holds: bool,
    pub window: String,
    pub first_violation: Option<Violation>,
    pub residual_terms: usize,
}

fn serialize_scalar<S: serde::Serializer>(
    v: &Scalar,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&render_fraction(v))
}

impl VerificationReport {
    /// Compares `(location, lhs, rhs)` triples in the order given.
    pub fn from_pairs<I>(identity: &str, window: String, pairs: I) -> Self
    where
        I: IntoIterator<Item = (LatticeVector, Scalar, Scalar)>,
    {
        let mut first_violation = None;
        let mut residual_terms = 0;
        for (location, lhs, rhs) in pairs {
            if lhs != rhs {
                residual_terms += 1;
                if first_violation.is_none() {
                    first_violation = Some(Violation { location, lhs, rhs });
                }
            }
        }
        VerificationReport {
            identity: identity.to_string(),
            holds: residual_terms == 0,
            window,
            first_violation,
            residual_terms,
        }
    }

    /// Coefficient-wise comparison of two series over the union of their
    /// supports, in graded-lex order.
    pub fn compare_series(
        identity: &str,
        window: String,
        lhs: &TruncatedSeries,
        rhs: &TruncatedSeries,
    ) -> Self {
        let grading = lhs.grading().clone();
        let keys: BTreeSet<(i64, LatticeVector)> = lhs
            .terms()
            .into_iter()
            .chain(rhs.terms())
            .map(|(e, _)| (grading.dot(e).unwrap_or(0), e.clone()))
            .collect();
        Self::from_pairs(
            identity,
            window,
            keys.into_iter().map(|(_, e)| {
                let l = lhs.coeff(&e);
                let r = rhs.coeff(&e);
                (e, l, r)
            }),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn render(&self) -> String {
        let mut s = format!(
            "identity: {}\nstatus: {}\nwindow: {}\nresidual_terms: {}\n",
            self.identity,
            if self.holds { "holds" } else { "violated" },
            self.window,
            self.residual_terms
        );
        if let Some(v) = &self.first_violation {
            s.push_str(&format!(
                "first_violation: {} lhs={} rhs={}\n",
                v.location.compact(),
                render_fraction(&v.lhs),
                render_fraction(&v.rhs)
            ));
        }
        s
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn check_len(c: &[Scalar], n: usize) -> Result<()> {
    if c.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: c.len(),
        });
    }
    Ok(())
}

fn check_unit_sum(c: &[Scalar]) -> Result<()> {
    let sum: Scalar = c.iter().cloned().sum();
    if !sum.is_one() {
        return Err(Error::CoefficientSum(sum));
    }
    Ok(())
}

/// `delta^mu phi: x -> phi(x + mu)`, tabulated on `[0, extent]^N`.
pub fn shift_apply(
    phi: &WeightFunction,
    mu: &LatticeVector,
    extent: usize,
) -> Result<WeightFunction> {
    let nvars = mu.dim();
    phi.check_arity(nvars)?;
    let table = WeightTable::from_fn(vec![extent + 1; nvars], |x| {
        evaluate_weight(phi, &x.checked_add(mu)?)
    })?;
    Ok(WeightFunction::Table(table))
}

/// `Q(delta) phi: x -> phi(x + I) - sum_j c_j phi(x + I - e^j)`, tabulated on
/// `[0, extent]^N`.
pub fn q_delta_apply(phi: &WeightFunction, c: &[Scalar], extent: usize) -> Result<WeightFunction> {
    let nvars = c.len();
    phi.check_arity(nvars)?;
    let ones = LatticeVector::ones(nvars);
    let table = WeightTable::from_fn(vec![extent + 1; nvars], |x| {
        let top = x.checked_add(&ones)?;
        let mut v = evaluate_weight(phi, &top)?;
        for (j, cj) in c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let below = top.checked_sub(&LatticeVector::unit(nvars, j))?;
            v -= cj * evaluate_weight(phi, &below)?;
        }
        Ok(v)
    })?;
    Ok(WeightFunction::Table(table))
}

/// Both sides of the main generating-series identity, truncated at
/// ell-degree `bound`.
///
/// Left: `Pi[(1 - <c, xi>) Phi(xi)]` with `xi = z^A`, built in series
/// arithmetic. Right: `sum_lambda P_A(lambda; Q(delta) phi) z^{lambda + A I}`,
/// built by enumerating solutions. The factor `z^{A I}` accounts for `Pi`
/// keeping only exponents `x >= I`, so `xi^x = z^{A(x - I)} z^{A I}`.
pub fn theorem1_sides(
    a: &StepMatrix,
    cert: &ConeCertificate,
    phi: &WeightFunction,
    c: &[Scalar],
    bound: i64,
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let nvars = a.ncols();
    check_len(c, nvars)?;
    phi.check_arity(nvars)?;
    cert.check_matrix(a)?;

    let phi_series = weight_series(phi, nvars, bound)?;
    let product = TruncatedSeries::one_minus_linear(c, bound)?.try_mul(&phi_series)?;
    let lhs = substitute_monomial(&product.pi_operator()?, a, cert, bound)?;

    let q_phi = q_delta_apply(phi, c, bound.max(0) as usize)?;
    let shift = a.column_sum();
    let mut rhs_terms = Vec::new();
    for target in cone_points(a, cert, bound)? {
        let lambda = target.checked_sub(&shift)?;
        rhs_terms.push((target, generalized_vp(a, cert, &lambda, &q_phi)?));
    }
    let rhs = TruncatedSeries::from_terms(cert.ell().clone(), bound, rhs_terms)?;
    Ok((lhs, rhs))
}

pub fn verify_theorem1(
    a: &StepMatrix,
    cert: &ConeCertificate,
    phi: &WeightFunction,
    c: &[Scalar],
    bound: i64,
) -> Result<VerificationReport> {
    let (lhs, rhs) = theorem1_sides(a, cert, phi, c, bound)?;
    Ok(VerificationReport::compare_series(
        "theorem1",
        format!("ell_degree <= {bound}"),
        &lhs,
        &rhs,
    ))
}

/// Checks `phi(x) = sum_j phi(x - e^j)` for `x >= I`, `|x| <= bound`.
pub fn verify_basic_recurrence(
    phi: &WeightFunction,
    nvars: usize,
    bound: i64,
) -> Result<VerificationReport> {
    phi.check_arity(nvars)?;
    let pairs = recurrence_pairs(phi, nvars, bound, |x| x.coords().iter().all(|&c| c >= 1))?;
    Ok(VerificationReport::from_pairs(
        "recurrence",
        format!("x >= (1,...,1), |x| <= {bound}"),
        pairs,
    ))
}

fn recurrence_pairs<F>(
    phi: &WeightFunction,
    nvars: usize,
    bound: i64,
    keep: F,
) -> Result<Vec<(LatticeVector, Scalar, Scalar)>>
where
    F: Fn(&LatticeVector) -> bool,
{
    let mut pairs = Vec::new();
    for x in orthant_points(nvars, bound) {
        if !keep(&x) {
            continue;
        }
        let mut rhs = Scalar::zero();
        for j in 0..nvars {
            rhs += evaluate_weight(phi, &x.checked_sub(&LatticeVector::unit(nvars, j))?)?;
        }
        let lhs = evaluate_weight(phi, &x)?;
        pairs.push((x, lhs, rhs));
    }
    Ok(pairs)
}

/// Which targets the difference equation for `P_A(lambda; phi)` is checked on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prop1Window {
    /// `lambda in A I + K`: the image of `x >= I`. Requires the recurrence
    /// only on `x >= I`.
    ShiftedCone,
    /// Every `lambda in K` except the origin. Requires the recurrence at
    /// every nonzero `x >= 0`, which holds for lattice path counts.
    PuncturedCone,
}

/// Checks `P_A(lambda; phi) = sum_j P_A(lambda - alpha^j; phi)` on the window.
///
/// The recurrence on `phi` is checked first; if it fails the result is
/// `Error::PreconditionFailed`, distinct from a violated report.
pub fn verify_prop1(
    a: &StepMatrix,
    cert: &ConeCertificate,
    phi: &WeightFunction,
    bound: i64,
    window: Prop1Window,
) -> Result<VerificationReport> {
    let nvars = a.ncols();
    phi.check_arity(nvars)?;
    cert.check_matrix(a)?;

    let (pre, targets, label) = match window {
        Prop1Window::ShiftedCone => {
            let pre = verify_basic_recurrence(phi, nvars, bound)?;
            let shift = a.column_sum();
            let slack = bound - cert.ell_degree(&shift)?;
            let targets = cone_points(a, cert, slack)?
                .into_iter()
                .map(|k| k.checked_add(&shift))
                .collect::<Result<Vec<_>>>()?;
            (
                pre,
                targets,
                format!("lambda in A*I + K, ell_degree <= {bound}"),
            )
        }
        Prop1Window::PuncturedCone => {
            let pairs = recurrence_pairs(phi, nvars, bound, |x| !x.is_zero())?;
            let pre = VerificationReport::from_pairs(
                "recurrence",
                format!("x >= 0, x != 0, |x| <= {bound}"),
                pairs,
            );
            let targets = cone_points(a, cert, bound)?
                .into_iter()
                .filter(|l| !l.is_zero())
                .collect();
            (
                pre,
                targets,
                format!("lambda in K \\ {{0}}, ell_degree <= {bound}"),
            )
        }
    };
    if !pre.holds {
        return Err(Error::PreconditionFailed(format!(
            "weight does not satisfy the basic recurrence\n{}",
            pre.render()
        )));
    }

    let mut pairs = Vec::with_capacity(targets.len());
    for lambda in targets {
        let lhs = generalized_vp(a, cert, &lambda, phi)?;
        let mut rhs = Scalar::zero();
        for col in a.columns() {
            rhs += generalized_vp(a, cert, &lambda.checked_sub(col)?, phi)?;
        }
        pairs.push((lambda, lhs, rhs));
    }
    Ok(VerificationReport::from_pairs("prop1", label, pairs))
}

/// Number of step sequences from the origin ending at each `lambda` with
/// ell-degree at most `bound`, by depth-first search over the sequences.
pub fn count_step_sequences(
    a: &StepMatrix,
    cert: &ConeCertificate,
    bound: i64,
) -> Result<BTreeMap<LatticeVector, u64>> {
    cert.check_matrix(a)?;
    let mut counts = BTreeMap::new();
    if bound < 0 {
        return Ok(counts);
    }
    let mut stack = vec![(LatticeVector::zeros(a.nrows()), 0i64)];
    while let Some((p, d)) = stack.pop() {
        for (col, &step) in a.columns().iter().zip(cert.step_degrees()) {
            if d + step <= bound {
                stack.push((p.checked_add(col)?, d + step));
            }
        }
        *counts.entry(p).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Generalized lattice paths: the weighted partition function with lattice
/// path weights, the series `1 / (1 - sum_j z^{alpha^j})`, and a brute-force
/// count of step sequences must all agree.
pub fn verify_prop2(
    a: &StepMatrix,
    cert: &ConeCertificate,
    bound: i64,
) -> Result<VerificationReport> {
    let points = cone_points(a, cert, bound)?;
    let inverse = geometric_inverse(a, cert, bound)?;
    let brute = count_step_sequences(a, cert, bound)?;

    let mut partition_terms = Vec::with_capacity(points.len());
    for lambda in &points {
        let v = generalized_vp(a, cert, lambda, &WeightFunction::LatticePathCount)?;
        partition_terms.push((lambda.clone(), v));
    }
    let partition = TruncatedSeries::from_terms(cert.ell().clone(), bound, partition_terms)?;
    let window = format!("ell_degree <= {bound}");

    let first = VerificationReport::compare_series("prop2", window.clone(), &partition, &inverse);
    let second = VerificationReport::from_pairs(
        "prop2",
        window.clone(),
        points.iter().map(|l| {
            let count = brute.get(l).copied().unwrap_or(0);
            (
                l.clone(),
                inverse.coeff(l),
                Scalar::from_integer(BigInt::from(count)),
            )
        }),
    );
    Ok(VerificationReport {
        identity: "prop2".into(),
        holds: first.holds && second.holds,
        window,
        first_violation: first.first_violation.or(second.first_violation),
        residual_terms: first.residual_terms + second.residual_terms,
    })
}

/// Per-`j` contributions `sum_{nu in K_j} P_{A_j}(nu) P_A(mu - nu; phi_j)` to
/// the left side of the partition-of-unity identity.
pub fn prop3_terms(
    a: &StepMatrix,
    cert: &ConeCertificate,
    c: &[Scalar],
    mu: &LatticeVector,
) -> Result<Vec<Scalar>> {
    let nvars = a.ncols();
    check_len(c, nvars)?;
    check_unit_sum(c)?;
    cert.check_matrix(a)?;
    let reach = cert.ell_degree(mu)?;

    let mut terms = Vec::with_capacity(nvars);
    for j in 0..nvars {
        let phi_j = WeightFunction::multinomial_monomial(c.to_vec(), j)?;
        // K_j with multiplicities P_{A_j}(nu); for N = 1 it is just the origin.
        let sub_points: Vec<(LatticeVector, Scalar)> = match a.without_column(j) {
            Some(sub) => {
                let sub_cert = cert.without_column(j);
                cone_points(&sub, &sub_cert, reach)?
                    .into_iter()
                    .map(|nu| {
                        let count = vector_partition(&sub, &sub_cert, &nu)?;
                        Ok((nu, count))
                    })
                    .collect::<Result<_>>()?
            }
            None if reach >= 0 => vec![(LatticeVector::zeros(a.nrows()), Scalar::one())],
            None => Vec::new(),
        };
        let mut total = Scalar::zero();
        for (nu, count) in sub_points {
            let w = generalized_vp(a, cert, &mu.checked_sub(&nu)?, &phi_j)?;
            total += count * w;
        }
        terms.push(total);
    }
    Ok(terms)
}

/// `sum_j sum_{nu in K_j} P_{A_j}(nu) P_A(mu - nu; phi_j) = P_A(mu)` for
/// `sum c_j = 1`.
pub fn verify_prop3(
    a: &StepMatrix,
    cert: &ConeCertificate,
    c: &[Scalar],
    mu: &LatticeVector,
) -> Result<VerificationReport> {
    let lhs: Scalar = prop3_terms(a, cert, c, mu)?.into_iter().sum();
    let rhs = vector_partition(a, cert, mu)?;
    Ok(VerificationReport::from_pairs(
        "prop3",
        format!("mu = {}", mu.compact()),
        [(mu.clone(), lhs, rhs)],
    ))
}

/// Per-`j` sums `sum_{0 <= nu <= mu, nu_j = 0} (|mu - nu|! / (mu - nu)!) c^{mu - nu + e^j}`.
pub fn cb_multidim_terms(c: &[Scalar], mu: &LatticeVector) -> Result<Vec<Scalar>> {
    check_len(c, mu.dim())?;
    check_unit_sum(c)?;
    if !mu.is_nonnegative() {
        return Err(Error::NegativeCoordinate(mu.clone()));
    }
    let nvars = mu.dim();
    let mut terms = Vec::with_capacity(nvars);
    for j in 0..nvars {
        let mut total = Scalar::zero();
        for nu in box_points(mu) {
            if nu.coords()[j] != 0 {
                continue;
            }
            let diff = mu.checked_sub(&nu)?;
            let mut exp = diff.clone().into_coords();
            exp[j] += 1;
            total += multinomial(&diff)? * monomial_power(c, &LatticeVector::new(exp));
        }
        terms.push(total);
    }
    Ok(terms)
}

// All nu with 0 <= nu <= upper, lexicographic.
fn box_points(upper: &LatticeVector) -> Vec<LatticeVector> {
    let mut out = vec![Vec::new()];
    for &u in upper.coords() {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (0..=u).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(LatticeVector::new).collect()
}

pub fn verify_cb_multidim(c: &[Scalar], mu: &LatticeVector) -> Result<VerificationReport> {
    let lhs: Scalar = cb_multidim_terms(c, mu)?.into_iter().sum();
    Ok(VerificationReport::from_pairs(
        "cb",
        format!("mu = {}", mu.compact()),
        [(mu.clone(), lhs, Scalar::one())],
    ))
}

/// Left side of the two-variable Chaundy-Bullard identity.
pub fn cb_1d_value(c1: &Scalar, c2: &Scalar, mu1: i64, mu2: i64) -> Result<Scalar> {
    if mu1 < 0 || mu2 < 0 {
        return Err(Error::NegativeCoordinate(LatticeVector::from([mu1, mu2])));
    }
    check_unit_sum(&[c1.clone(), c2.clone()])?;
    let tail = |own: &Scalar, own_mu: i64, other_mu: i64| -> Scalar {
        (0..=own_mu)
            .map(|nu| {
                let k = own_mu - nu;
                let b = binomial(BigInt::from(other_mu + k), BigInt::from(k));
                Scalar::from_integer(b) * pow(own, k as usize)
            })
            .sum()
    };
    Ok(pow(c2, (mu2 + 1) as usize) * tail(c1, mu1, mu2)
        + pow(c1, (mu1 + 1) as usize) * tail(c2, mu2, mu1))
}

pub fn verify_cb_1d(c1: &Scalar, c2: &Scalar, mu1: i64, mu2: i64) -> Result<VerificationReport> {
    let lhs = cb_1d_value(c1, c2, mu1, mu2)?;
    Ok(VerificationReport::from_pairs(
        "cb1d",
        format!("mu = ({mu1},{mu2})"),
        [(LatticeVector::from([mu1, mu2]), lhs, Scalar::one())],
    ))
}

/// `(I - xi)^{-1} - sum_j c_j pi_j[(I - xi)^{-1}] (1 - <c, xi>)^{-1}`, which
/// vanishes when `sum c_j = 1`.
pub fn lemma4_residual(c: &[Scalar], bound: i64) -> Result<TruncatedSeries> {
    check_unit_sum(c)?;
    let nvars = c.len();
    let box_inverse = weight_series(&WeightFunction::ConstantOne, nvars, bound)?;
    let linear_inverse = TruncatedSeries::one_minus_linear(c, bound)?.inverse()?;
    let mut rhs = TruncatedSeries::xi_zero(nvars, bound);
    for (j, cj) in c.iter().enumerate() {
        let term = box_inverse.project(j)?.try_mul(&linear_inverse)?.scale(cj);
        rhs = rhs.try_add(&term)?;
    }
    box_inverse.try_sub(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::certify_pointed;
    use crate::types::{ratio, scalar};

    fn setup(rows: &[Vec<i64>]) -> (StepMatrix, ConeCertificate) {
        let a = StepMatrix::from_rows(rows).unwrap();
        let cert = certify_pointed(&a).unwrap();
        (a, cert)
    }

    fn delannoy() -> (StepMatrix, ConeCertificate) {
        setup(&[vec![1, 0, 1], vec![0, 1, 1]])
    }

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::new(c.to_vec())
    }

    #[test]
    fn zero_shift_is_identity() {
        let phi = WeightFunction::LatticePathCount;
        let shifted = shift_apply(&phi, &lv(&[0, 0]), 4).unwrap();
        for x in orthant_points(2, 4) {
            assert_eq!(shifted.evaluate(&x).unwrap(), phi.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn geometric_shift_scales() {
        let q = vec![ratio(1, 3), ratio(2, 5)];
        let phi = WeightFunction::GeometricWeights(q.clone());
        let shifted = shift_apply(&phi, &lv(&[1, 0]), 3).unwrap();
        for x in orthant_points(2, 3) {
            assert_eq!(
                shifted.evaluate(&x).unwrap(),
                &q[0] * phi.evaluate(&x).unwrap()
            );
        }
    }

    #[test]
    fn negative_shift_reads_zero_off_orthant() {
        let shifted = shift_apply(&WeightFunction::LatticePathCount, &lv(&[-1, 0]), 2).unwrap();
        assert_eq!(shifted.evaluate(&lv(&[0, 0])).unwrap(), scalar(0));
        assert_eq!(shifted.evaluate(&lv(&[1, 1])).unwrap(), scalar(1));
    }

    #[test]
    fn q_delta_kills_lattice_paths() {
        let q = q_delta_apply(
            &WeightFunction::LatticePathCount,
            &[scalar(1), scalar(1), scalar(1)],
            4,
        )
        .unwrap();
        for x in orthant_points(3, 4) {
            assert_eq!(q.evaluate(&x).unwrap(), scalar(0));
        }
    }

    #[test]
    fn q_delta_one_variable_is_forward_difference() {
        let table =
            WeightTable::from_fn(vec![10], |x| Ok(scalar(x.coords()[0] * x.coords()[0]))).unwrap();
        let phi = WeightFunction::Table(table);
        let q = q_delta_apply(&phi, &[scalar(1)], 5).unwrap();
        for k in 0..=5 {
            assert_eq!(q.evaluate(&lv(&[k])).unwrap(), scalar(2 * k + 1));
        }
    }

    #[test]
    fn q_delta_constant_with_unit_sum() {
        let q = q_delta_apply(
            &WeightFunction::ConstantOne,
            &[ratio(3, 2), ratio(-1, 2)],
            3,
        )
        .unwrap();
        for x in orthant_points(2, 3) {
            assert_eq!(q.evaluate(&x).unwrap(), scalar(0));
        }
    }

    #[test]
    fn theorem1_one_variable() {
        let (a, cert) = setup(&[vec![1]]);
        let table = WeightTable::from_fn(vec![12], |x| Ok(scalar(3 - x.coords()[0] * 2))).unwrap();
        let report =
            verify_theorem1(&a, &cert, &WeightFunction::Table(table), &[scalar(1)], 8).unwrap();
        assert!(report.holds, "{report}");
    }

    #[test]
    fn theorem1_delannoy_lattice_paths_vanish() {
        let (a, cert) = delannoy();
        let c = [scalar(1), scalar(1), scalar(1)];
        let (lhs, rhs) =
            theorem1_sides(&a, &cert, &WeightFunction::LatticePathCount, &c, 5).unwrap();
        assert!(lhs.is_zero());
        assert!(rhs.is_zero());
    }

    #[test]
    fn theorem1_skewed_matrix_geometric() {
        let (a, cert) = setup(&[vec![2, -1], vec![-1, 2]]);
        let phi = WeightFunction::GeometricWeights(vec![ratio(1, 2), ratio(-2, 3)]);
        let report = verify_theorem1(&a, &cert, &phi, &[ratio(1, 7), scalar(3)], 6).unwrap();
        assert!(report.holds, "{report}");
    }

    #[test]
    fn unshifted_right_side_disagrees() {
        // Without the z^{A I} factor the one-variable case fails: phi(x) = x
        // gives z/(1-z) on the left but 1/(1-z) on the right.
        let (a, cert) = setup(&[vec![1]]);
        let phi = WeightFunction::Table(
            WeightTable::from_fn(vec![10], |x| Ok(scalar(x.coords()[0]))).unwrap(),
        );
        let (lhs, _) = theorem1_sides(&a, &cert, &phi, &[scalar(1)], 5).unwrap();
        assert_eq!(lhs.coeff(&lv(&[0])), scalar(0));
        let q = q_delta_apply(&phi, &[scalar(1)], 5).unwrap();
        assert_eq!(generalized_vp(&a, &cert, &lv(&[0]), &q).unwrap(), scalar(1));
    }

    #[test]
    fn basic_recurrence_cases() {
        assert!(
            verify_basic_recurrence(&WeightFunction::LatticePathCount, 3, 6)
                .unwrap()
                .holds
        );

        let r = verify_basic_recurrence(&WeightFunction::ConstantOne, 2, 3).unwrap();
        assert!(!r.holds);
        let v = r.first_violation.unwrap();
        assert_eq!(v.location, lv(&[1, 1]));
        assert_eq!(&v.lhs - &v.rhs, scalar(-1));

        // q^x - q^{x-e1} - q^{x-e2} = q^{x-I}(q1 q2 - q2 - q1) = -3/4 q^{x-I} != 0
        let geo = WeightFunction::GeometricWeights(vec![ratio(1, 2), ratio(1, 2)]);
        let r = verify_basic_recurrence(&geo, 2, 4).unwrap();
        assert!(!r.holds);
        let v = r.first_violation.unwrap();
        assert_eq!(v.location, lv(&[1, 1]));
        assert_eq!(&v.lhs - &v.rhs, ratio(-3, 4));
    }

    #[test]
    fn prop1_examples() {
        for rows in [
            vec![vec![1, 0, 1], vec![0, 1, 1]],
            vec![vec![1, 0], vec![0, 1]],
        ] {
            let (a, cert) = setup(&rows);
            for window in [Prop1Window::ShiftedCone, Prop1Window::PuncturedCone] {
                let r =
                    verify_prop1(&a, &cert, &WeightFunction::LatticePathCount, 5, window).unwrap();
                assert!(r.holds, "{r}");
            }
        }
        let (a, cert) = setup(&[vec![1]]);
        for window in [Prop1Window::ShiftedCone, Prop1Window::PuncturedCone] {
            assert!(
                verify_prop1(&a, &cert, &WeightFunction::ConstantOne, 5, window)
                    .unwrap()
                    .holds
            );
        }
    }

    #[test]
    fn prop1_precondition_is_distinct() {
        let (a, cert) = delannoy();
        let err = verify_prop1(
            &a,
            &cert,
            &WeightFunction::ConstantOne,
            4,
            Prop1Window::ShiftedCone,
        );
        assert!(matches!(err, Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn prop2_examples() {
        let (a, cert) = delannoy();
        assert!(verify_prop2(&a, &cert, 4).unwrap().holds);
        assert_eq!(
            geometric_inverse(&a, &cert, 4).unwrap().coeff(&lv(&[2, 2])),
            scalar(13)
        );

        let (a, cert) = setup(&[vec![1, 0], vec![0, 1]]);
        assert!(verify_prop2(&a, &cert, 4).unwrap().holds);
        assert_eq!(
            geometric_inverse(&a, &cert, 4).unwrap().coeff(&lv(&[2, 2])),
            scalar(6)
        );

        let (a, cert) = setup(&[vec![1, 1]]);
        assert!(verify_prop2(&a, &cert, 3).unwrap().holds);
        let g = geometric_inverse(&a, &cert, 3).unwrap();
        for k in 0..=3 {
            assert_eq!(g.coeff(&lv(&[k])), scalar(1 << k));
        }
    }

    #[test]
    fn prop3_basis_hand_expansion() {
        let (a, cert) = setup(&[vec![1, 0], vec![0, 1]]);
        let c = [ratio(1, 2), ratio(1, 2)];
        let terms = prop3_terms(&a, &cert, &c, &lv(&[1, 1])).unwrap();
        assert_eq!(terms, vec![ratio(1, 2), ratio(1, 2)]);
        assert!(verify_prop3(&a, &cert, &c, &lv(&[1, 1])).unwrap().holds);
    }

    #[test]
    fn prop3_outside_cone_is_zero() {
        let (a, cert) = delannoy();
        let c = [ratio(1, 4), ratio(1, 4), ratio(1, 2)];
        let mu = lv(&[-1, -2]);
        let terms = prop3_terms(&a, &cert, &c, &mu).unwrap();
        assert!(terms.iter().all(Zero::is_zero));
        let r = verify_prop3(&a, &cert, &c, &mu).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn prop3_delannoy() {
        let (a, cert) = delannoy();
        let c = [ratio(1, 4), ratio(1, 4), ratio(1, 2)];
        assert!(verify_prop3(&a, &cert, &c, &lv(&[2, 1])).unwrap().holds);
    }

    #[test]
    fn prop3_rejects_bad_sum() {
        let (a, cert) = delannoy();
        let c = [ratio(1, 4), ratio(1, 4), ratio(1, 4)];
        assert!(matches!(
            verify_prop3(&a, &cert, &c, &lv(&[1, 1])),
            Err(Error::CoefficientSum(_))
        ));
    }

    #[test]
    fn cb_multidim_examples() {
        let r = verify_cb_multidim(&[ratio(1, 2), ratio(1, 2)], &lv(&[1, 1])).unwrap();
        assert!(r.holds);
        assert_eq!(
            cb_multidim_terms(&[ratio(1, 2), ratio(1, 2)], &lv(&[1, 1])).unwrap(),
            vec![ratio(1, 2), ratio(1, 2)]
        );
        assert!(
            verify_cb_multidim(&[ratio(1, 2), ratio(1, 3), ratio(1, 6)], &lv(&[2, 1, 3]))
                .unwrap()
                .holds
        );
        for m in 0..5 {
            assert!(verify_cb_multidim(&[scalar(1)], &lv(&[m])).unwrap().holds);
        }
        assert!(matches!(
            verify_cb_multidim(&[scalar(1)], &lv(&[-1])),
            Err(Error::NegativeCoordinate(_))
        ));
    }

    #[test]
    fn cb_1d_examples() {
        assert_eq!(
            cb_1d_value(&ratio(1, 2), &ratio(1, 2), 0, 0).unwrap(),
            scalar(1)
        );
        assert!(
            verify_cb_1d(&ratio(3, 5), &ratio(2, 5), 4, 7)
                .unwrap()
                .holds
        );
        assert_eq!(
            cb_1d_value(&scalar(1), &scalar(0), 2, 3).unwrap(),
            scalar(1)
        );
        assert!(matches!(
            cb_1d_value(&ratio(1, 2), &ratio(1, 3), 1, 1),
            Err(Error::CoefficientSum(_))
        ));
    }

    #[test]
    fn lemma4_vanishes() {
        for c in [
            vec![ratio(1, 2), ratio(1, 2)],
            vec![ratio(3, 2), ratio(-1, 2)],
            vec![ratio(1, 4), ratio(0, 1), ratio(3, 4)],
        ] {
            assert!(lemma4_residual(&c, 6).unwrap().is_zero());
        }
    }

    #[test]
    fn report_rendering() {
        let r = VerificationReport::from_pairs(
            "demo",
            "box".into(),
            [
                (lv(&[0]), scalar(1), scalar(1)),
                (lv(&[1]), ratio(1, 2), scalar(0)),
            ],
        );
        assert!(!r.holds);
        assert_eq!(r.residual_terms, 1);
        assert_eq!(
            r.render(),
            "identity: demo\nstatus: violated\nwindow: box\nresidual_terms: 1\nfirst_violation: (1) lhs=1/2 rhs=0/1\n"
        );
        let json = r.to_json();
        assert_eq!(json["first_violation"]["lhs"], "1/2");
        assert_eq!(json["holds"], false);
    }
}
