//! Measurement-dependence machinery: the coefficient transform to joint
//! functionals, feasibility of the box constraint, strong measurement
//! dependence bounds, critical q, and the visibility sweep.

use crate::behavior::Behavior;
use crate::bounds::{local_bound, quantum_parts};
use crate::error::{Error, Result};
use crate::fmt::sig12;
use crate::functional::{pm_functional, BellFunctional, Kind};
use crate::quantum::{behavior_from_strategy, pm_strategy, NoisySpec};
use crate::scan::ScanOptions;
use crate::scenario::Scenario;

/// Feasibility comparisons tolerate this much rounding.
const FEAS_TOL: f64 = 1e-12;

/// Measurement-dependence parameters: for a fraction `q` of rounds the
/// hidden variable's input distribution obeys `xi <= p(x|lambda) <= eta`;
/// in the remaining fraction `1 - q` it may pick inputs outright.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MdlParams {
    pub xi: f64,
    pub eta: f64,
    pub q: f64,
}

impl MdlParams {
    pub fn new(xi: f64, eta: f64, q: f64) -> Result<Self> {
        if !(xi > 0.0 && xi <= eta && eta < 1.0) {
            return Err(Error::InvalidParams(format!(
                "need 0 < xi <= eta < 1, got xi = {xi}, eta = {eta}"
            )));
        }
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::InvalidParams(format!("need 0 <= q <= 1, got q = {q}")));
        }
        Ok(MdlParams { xi, eta, q })
    }
}

/// A box-constrained input distribution over K input tuples exists iff
/// K * xi <= 1 <= K * eta.
pub fn check_feasible(params: &MdlParams, scenario: &Scenario) -> Result<()> {
    check_feasible_box(params.xi, params.eta, scenario.input_tuple_count())
}

/// Same feasibility check from raw (xi, eta, K).
pub fn check_feasible_box(xi: f64, eta: f64, k: usize) -> Result<()> {
    let k_f = k as f64;
    if k_f * xi > 1.0 + FEAS_TOL {
        return Err(Error::Infeasible(format!(
            "K*xi = {} > 1 leaves no normalized input distribution",
            k_f * xi
        )));
    }
    if k_f * eta < 1.0 - FEAS_TOL {
        return Err(Error::Infeasible(format!(
            "K*eta = {} < 1 leaves no normalized input distribution",
            k_f * eta
        )));
    }
    Ok(())
}

/// Turn a conditional functional into the joint measurement-dependent one:
/// each positive coefficient w becomes xi * w, each negative coefficient
/// becomes eta * w, zeros stay zero.
pub fn md_transform(f: &BellFunctional, xi: f64, eta: f64) -> Result<BellFunctional> {
    if xi <= 0.0 || eta <= 0.0 {
        return Err(Error::NonPositiveParams { xi, eta });
    }
    if f.kind() != Kind::Conditional {
        return Err(Error::KindMismatch {
            expected: "conditional",
            got: "joint",
        });
    }
    let coeffs = f
        .coeffs()
        .iter()
        .map(|&w| {
            if w > 0.0 {
                xi * w
            } else if w < 0.0 {
                eta * w
            } else {
                0.0
            }
        })
        .collect();
    BellFunctional::new(f.scenario().clone(), Kind::Joint, coeffs)
}

/// Local bound of a measurement-dependent functional under the pure box
/// constraint (every round constrained): xi * eta * beta_loc.
pub fn putz_local_bound(xi: f64, eta: f64, beta_loc: f64) -> f64 {
    xi * eta * beta_loc
}

/// Local bound under strong measurement dependence:
/// (1 - q) * xi * beta_alg_tilde + q * xi * eta * beta_loc.
pub fn smd_local_bound(params: &MdlParams, beta_alg_tilde: f64, beta_loc: f64) -> f64 {
    (1.0 - params.q) * params.xi * beta_alg_tilde
        + params.q * putz_local_bound(params.xi, params.eta, beta_loc)
}

/// Quantum value of the measurement-dependent functional under uniform
/// inputs: (xi * bq_plus - eta * bq_minus) / K.
///
/// Uniform inputs are baked in; other input distributions go through
/// `md_transform` plus `evaluate_joint` instead.
pub fn smd_quantum_value(f: &BellFunctional, b: &Behavior, xi: f64, eta: f64) -> Result<f64> {
    if xi <= 0.0 || eta <= 0.0 {
        return Err(Error::NonPositiveParams { xi, eta });
    }
    if f.kind() != Kind::Conditional {
        return Err(Error::KindMismatch {
            expected: "conditional",
            got: "joint",
        });
    }
    let (plus, minus) = quantum_parts(f, b)?;
    let k = f.scenario().input_tuple_count() as f64;
    Ok((xi * plus - eta * minus) / k)
}

/// Result of a critical-q computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriticalQ {
    /// Violation for every q above this threshold (0 means all q > 0).
    Value(f64),
    /// No q in (0, 1] yields a violation.
    NoViolation,
}

impl CriticalQ {
    pub fn value(self) -> Option<f64> {
        match self {
            CriticalQ::Value(q) => Some(q),
            CriticalQ::NoViolation => None,
        }
    }

    /// CSV field: the value, or the literal `inf` sentinel.
    pub fn csv_field(self) -> String {
        match self {
            CriticalQ::Value(q) => sig12(q),
            CriticalQ::NoViolation => "inf".to_string(),
        }
    }
}

/// Closed-form critical q from precomputed bounds.
///
/// The strong-MD local bound is affine in q, from xi * beta_alg_tilde at
/// q = 0 down to xi * eta * beta_loc at q = 1; the quantum side is constant.
/// The threshold is where they cross, clamped to [0, 1].
pub fn critical_q_from_bounds(
    beta_alg_tilde: f64,
    beta_loc: f64,
    smd_quantum: f64,
    xi: f64,
    eta: f64,
) -> Result<CriticalQ> {
    if xi <= 0.0 || eta <= 0.0 {
        return Err(Error::NonPositiveParams { xi, eta });
    }
    let at_q0 = xi * beta_alg_tilde;
    let at_q1 = putz_local_bound(xi, eta, beta_loc);
    if smd_quantum >= at_q0 {
        return Ok(CriticalQ::Value(0.0));
    }
    let denom = at_q0 - at_q1;
    if denom == 0.0 {
        return Err(Error::DegenerateDenominator(at_q0));
    }
    let q0 = (at_q0 - smd_quantum) / denom;
    if q0 >= 1.0 {
        Ok(CriticalQ::NoViolation)
    } else {
        Ok(CriticalQ::Value(q0.max(0.0)))
    }
}

/// Independent route to the same threshold: bisect the sign change of
/// quantum minus local over q in [0, 1].
pub fn critical_q_bisection(
    beta_alg_tilde: f64,
    beta_loc: f64,
    smd_quantum: f64,
    xi: f64,
    eta: f64,
) -> CriticalQ {
    let margin = |q: f64| {
        let params = MdlParams { xi, eta, q };
        smd_quantum - smd_local_bound(&params, beta_alg_tilde, beta_loc)
    };
    if margin(0.0) >= 0.0 {
        return CriticalQ::Value(0.0);
    }
    if margin(1.0) <= 0.0 {
        return CriticalQ::NoViolation;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if margin(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    CriticalQ::Value(0.5 * (lo + hi))
}

/// Smallest q for which `b` violates the strong-MD bound of `f`.
///
/// Enumerates the local bound of `f`, so the deterministic strategy count
/// must stay under the cap.
pub fn critical_q(
    f: &BellFunctional,
    b: &Behavior,
    xi: f64,
    eta: f64,
    opts: &ScanOptions,
) -> Result<CriticalQ> {
    let beta_alg_tilde = f.max_coeff();
    let beta_loc = local_bound(f, opts)?.value;
    let smd_quantum = smd_quantum_value(f, b, xi, eta)?;
    critical_q_from_bounds(beta_alg_tilde, beta_loc, smd_quantum, xi, eta)
}

/// One row of the visibility sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub v: f64,
    pub xi: f64,
    pub eta: f64,
    pub q_crit: CriticalQ,
}

/// Critical-q table for the noisy Peres-Mermin strategy on the
/// eta = 1/9 + xi family, one row per (v, xi) pair in input order.
pub fn visibility_sweep(
    visibilities: &[f64],
    xi_grid: &[f64],
    opts: &ScanOptions,
) -> Result<Vec<SweepRow>> {
    for &xi in xi_grid {
        if xi <= 0.0 || !xi.is_finite() || 9.0 * xi > 1.0 + FEAS_TOL {
            return Err(Error::InfeasibleXi(xi));
        }
    }
    for &v in visibilities {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::InvalidParams(format!(
                "visibility must lie in [0, 1], got {v}"
            )));
        }
    }

    let f = pm_functional();
    let beta_alg_tilde = f.max_coeff();
    let beta_loc = local_bound(&f, opts)?.value;
    let k = f.scenario().input_tuple_count() as f64;

    let mut rows = Vec::with_capacity(visibilities.len() * xi_grid.len());
    for &v in visibilities {
        let behavior = behavior_from_strategy(&pm_strategy(NoisySpec::new(v)?))?;
        let (plus, minus) = quantum_parts(&f, &behavior)?;
        for &xi in xi_grid {
            let eta = 1.0 / 9.0 + xi;
            let smd_quantum = (xi * plus - eta * minus) / k;
            let q_crit = critical_q_from_bounds(beta_alg_tilde, beta_loc, smd_quantum, xi, eta)?;
            rows.push(SweepRow {
                v,
                xi,
                eta,
                q_crit,
            });
        }
    }
    Ok(rows)
}

/// Render sweep rows as CSV with header `v,xi,eta,q_crit` and Unix line
/// endings; `inf` marks rows without violation.
pub fn sweep_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("v,xi,eta,q_crit\n");
    for row in rows {
        out.push_str(&sig12(row.v));
        out.push(',');
        out.push_str(&sig12(row.xi));
        out.push(',');
        out.push_str(&sig12(row.eta));
        out.push(',');
        out.push_str(&row.q_crit.csv_field());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::DeterministicStrategy;
    use crate::functional::{pm_md_functional, pm_terms};

    #[test]
    fn params_validation() {
        assert!(MdlParams::new(0.05, 0.16, 0.5).is_ok());
        assert!(MdlParams::new(0.0, 0.5, 0.5).is_err());
        assert!(MdlParams::new(0.3, 0.2, 0.5).is_err());
        assert!(MdlParams::new(0.1, 1.0, 0.5).is_err());
        assert!(MdlParams::new(0.1, 0.2, 1.5).is_err());
    }

    #[test]
    fn feasibility_examples() {
        let pm = Scenario::peres_mermin();
        // 9 * 0.2 = 1.8 > 1: no distribution fits in the box.
        let p = MdlParams::new(0.2, 0.5, 0.5).unwrap();
        assert!(matches!(check_feasible(&p, &pm), Err(Error::Infeasible(_))));
        // xi = eta = 1/9 admits exactly the uniform distribution.
        let p = MdlParams::new(1.0 / 9.0, 1.0 / 9.0, 0.5).unwrap();
        assert!(check_feasible(&p, &pm).is_ok());
        // The Fig.-2 family eta = 1/9 + xi is always feasible for xi <= 1/9.
        let p = MdlParams::new(0.05, 1.0 / 9.0 + 0.05, 0.5).unwrap();
        assert!(check_feasible(&p, &pm).is_ok());
    }

    #[test]
    fn md_transform_matches_pm_md_builder() {
        let pm = pm_functional();
        for (xi, eta) in [(1.0, 1.0), (0.05, 0.1611), (0.3, 0.9), (0.01, 1.0 / 9.0 + 0.01)] {
            let a = md_transform(&pm, xi, eta).unwrap();
            let b = pm_md_functional(xi, eta);
            assert_eq!(a.kind(), Kind::Joint);
            for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
                assert!((x - y).abs() < 1e-15, "{x} vs {y} at ({xi},{eta})");
            }
        }
    }

    #[test]
    fn md_transform_identity_at_unit_params() {
        let pm = pm_functional();
        let t = md_transform(&pm, 1.0, 1.0).unwrap();
        assert_eq!(t.coeffs(), pm.coeffs());
        assert_eq!(t.kind(), Kind::Joint);
    }

    #[test]
    fn md_transform_rejects_bad_input() {
        let pm = pm_functional();
        assert!(matches!(
            md_transform(&pm, 0.0, 0.5),
            Err(Error::NonPositiveParams { .. })
        ));
        let joint = pm_md_functional(0.1, 0.2);
        assert!(matches!(
            md_transform(&joint, 0.1, 0.2),
            Err(Error::KindMismatch { .. })
        ));
    }

    #[test]
    fn putz_bound_examples() {
        assert_eq!(putz_local_bound(0.3, 0.7, 0.0), 0.0);
        assert_eq!(putz_local_bound(1.0, 1.0, 2.0), 2.0);
    }

    #[test]
    fn smd_local_bound_edges() {
        // q = 1 collapses to the box-only bound, q = 0 to xi * beta_alg_tilde.
        let p = MdlParams::new(0.05, 0.2, 1.0).unwrap();
        assert_eq!(
            smd_local_bound(&p, 2.0, 3.0),
            putz_local_bound(0.05, 0.2, 3.0)
        );
        let p = MdlParams::new(0.05, 0.2, 0.0).unwrap();
        assert_eq!(smd_local_bound(&p, 2.0, 3.0), 0.05 * 2.0);
        // Peres-Mermin numbers: beta_alg_tilde = 2, beta_loc = 0.
        let p = MdlParams::new(0.05, 1.0 / 9.0 + 0.05, 0.25).unwrap();
        assert!((smd_local_bound(&p, 2.0, 0.0) - 2.0 * 0.75 * 0.05).abs() < 1e-15);
    }

    #[test]
    fn smd_quantum_value_on_uniform_pm() {
        let f = pm_functional();
        let b = Behavior::uniform(f.scenario().clone());
        let (xi, eta) = (0.05, 1.0 / 9.0 + 0.05);
        let got = smd_quantum_value(&f, &b, xi, eta).unwrap();
        // quantum parts (9, 72) under uniform give (9 xi - 72 eta) / 9.
        assert!((got - (xi - 8.0 * eta)).abs() < 1e-12);
    }

    #[test]
    fn smd_quantum_matches_joint_evaluation() {
        // The uniform-input joint contraction is the same linear form.
        let f = pm_functional();
        let b = Behavior::uniform(f.scenario().clone());
        let (xi, eta) = (0.07, 0.19);
        let direct = smd_quantum_value(&f, &b, xi, eta).unwrap();
        let joint = md_transform(&f, xi, eta)
            .unwrap()
            .evaluate_joint(&b.to_joint_uniform())
            .unwrap();
        assert!((direct - joint).abs() < 1e-12);
    }

    #[test]
    fn critical_q_deterministic_behavior_never_violates() {
        let f = pm_functional();
        let strategy = DeterministicStrategy::from_index(f.scenario(), 0);
        let b = strategy.behavior(f.scenario());
        let got = critical_q(&f, &b, 0.05, 1.0 / 9.0 + 0.05, &ScanOptions::default()).unwrap();
        assert_eq!(got, CriticalQ::NoViolation);
    }

    #[test]
    fn critical_q_degenerate_denominator() {
        // beta_alg_tilde = eta * beta_loc makes the local bound constant in q.
        let got = critical_q_from_bounds(1.0, 2.0, 0.1, 0.5, 0.5);
        assert!(matches!(got, Err(Error::DegenerateDenominator(_))));
    }

    #[test]
    fn critical_q_closed_form_vs_bisection() {
        for smd_q in [-0.5, 0.0, 0.02, 0.05, 0.099, 0.1, 0.3] {
            let closed = critical_q_from_bounds(2.0, 0.3, smd_q, 0.05, 0.16).unwrap();
            let bisect = critical_q_bisection(2.0, 0.3, smd_q, 0.05, 0.16);
            match (closed, bisect) {
                (CriticalQ::Value(a), CriticalQ::Value(b)) => {
                    assert!((a - b).abs() < 1e-9, "{a} vs {b} at {smd_q}")
                }
                (a, b) => assert_eq!(a, b, "at smd_q = {smd_q}"),
            }
        }
    }

    #[test]
    fn pm_evaluation_is_sum_of_nine_correlators() {
        // Random-ish behavior: normalized rows built from a fixed pattern.
        let scenario = Scenario::peres_mermin();
        let mut probs = Vec::with_capacity(scenario.cell_count());
        for input in 0..9 {
            let mut row: Vec<f64> = (0..16)
                .map(|output| 1.0 + ((input * 31 + output * 7) % 11) as f64)
                .collect();
            let sum: f64 = row.iter().sum();
            row.iter_mut().for_each(|p| *p /= sum);
            probs.extend(row);
        }
        let b = Behavior::new(scenario, probs).unwrap();
        let f = pm_functional();
        let direct = f.evaluate(&b).unwrap();
        let from_terms: f64 = pm_terms()
            .iter()
            .map(|(spec, sign)| sign * spec.correlator(&b).unwrap())
            .sum();
        assert!((direct - from_terms).abs() < 1e-9);
    }

    #[test]
    fn sweep_csv_shape_and_sentinel() {
        let rows = visibility_sweep(&[1.0, 0.0], &[0.01, 0.05], &ScanOptions::default()).unwrap();
        assert_eq!(rows.len(), 4);
        // v = 1: violation for all q > 0; v = 0: never.
        assert_eq!(rows[0].q_crit, CriticalQ::Value(0.0));
        assert_eq!(rows[1].q_crit, CriticalQ::Value(0.0));
        assert_eq!(rows[2].q_crit, CriticalQ::NoViolation);
        assert_eq!(rows[3].q_crit, CriticalQ::NoViolation);
        let csv = sweep_to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("v,xi,eta,q_crit"));
        assert!(csv.lines().count() == 5);
        assert!(csv.ends_with('\n'));
        assert!(csv.contains(",inf\n"));
    }

    #[test]
    fn sweep_rejects_bad_grid() {
        assert!(matches!(
            visibility_sweep(&[0.5], &[0.2], &ScanOptions::default()),
            Err(Error::InfeasibleXi(_))
        ));
        assert!(visibility_sweep(&[1.5], &[0.01], &ScanOptions::default()).is_err());
    }
}
