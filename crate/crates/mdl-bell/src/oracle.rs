//! Ground-truth maximization of joint measurement-dependent functionals by
//! exhaustive enumeration.
//!
//! For a fixed hidden variable the model behavior is a product of one input
//! distribution and per-party deterministic responses, and the functional is
//! linear in each factor, so the model maximum is attained at a box-polytope
//! vertex paired with deterministic responses. The scans enumerate exactly
//! those pairs.

use crate::bounds::{algebraic_bound, local_bound, BoundReport, DeterministicStrategy, Witness};
use crate::error::{Error, Result};
use crate::functional::{BellFunctional, Kind};
use crate::mdl::{check_feasible_box, md_transform, putz_local_bound, smd_local_bound, MdlParams};
use crate::scan::{parallel_argmax, ScanOptions};
use crate::scenario::Scenario;

/// Vertex coordinates may miss their bounds by this much before snapping.
const VERTEX_TOL: f64 = 1e-12;
/// A closed-form bound counts as attained when the oracle gets this close.
pub const GAP_TOL: f64 = 1e-9;

/// An extreme point of the strong measurement-dependence model: an input
/// distribution (a point mass, or a box vertex) paired with deterministic
/// responses.
#[derive(Debug, Clone, PartialEq)]
pub enum StrongMdlVertex {
    /// The hidden variable picks one input tuple outright.
    Determined {
        input: Vec<usize>,
        responses: DeterministicStrategy,
    },
    /// The input distribution sits at a vertex of the (xi, eta) box.
    Constrained {
        input_dist: Vec<f64>,
        responses: DeterministicStrategy,
    },
}

impl StrongMdlVertex {
    pub fn responses(&self) -> &DeterministicStrategy {
        match self {
            StrongMdlVertex::Determined { responses, .. } => responses,
            StrongMdlVertex::Constrained { responses, .. } => responses,
        }
    }

    /// The input distribution as a dense vector over input tuples.
    pub fn input_dist(&self, scenario: &Scenario) -> Vec<f64> {
        match self {
            StrongMdlVertex::Determined { input, .. } => {
                let mut dist = vec![0.0; scenario.input_tuple_count()];
                dist[scenario.input_index(input).expect("witness input in range")] = 1.0;
                dist
            }
            StrongMdlVertex::Constrained { input_dist, .. } => input_dist.clone(),
        }
    }

    /// Objective value of this vertex under a joint functional.
    pub fn evaluate(&self, f: &BellFunctional) -> f64 {
        let scenario = f.scenario();
        let responses = self.responses();
        match self {
            StrongMdlVertex::Determined { input, .. } => {
                let x = scenario.input_index(input).expect("witness input in range");
                f.coeff(x, responses.response(scenario, x))
            }
            StrongMdlVertex::Constrained { input_dist, .. } => {
                let mut value = 0.0;
                for (x, &weight) in input_dist.iter().enumerate() {
                    value += weight * f.coeff(x, responses.response(scenario, x));
                }
                value
            }
        }
    }
}

/// Vertices of `{p : xi <= p_k <= eta, sum_k p_k = 1}` for `k` coordinates:
/// every coordinate at a bound, or all but one at bounds with the free
/// coordinate fixed by normalization. Sorted lexicographically, duplicates
/// removed.
pub fn box_vertices(k: usize, xi: f64, eta: f64) -> Result<Vec<Vec<f64>>> {
    if xi <= 0.0 || eta <= 0.0 {
        return Err(Error::NonPositiveParams { xi, eta });
    }
    check_feasible_box(xi, eta, k)?;
    if k >= 32 {
        return Err(Error::TooLarge {
            required: 1u128 << k,
            cap: 1u128 << 31,
        });
    }

    let mut vertices: Vec<Vec<f64>> = Vec::new();

    // All coordinates at bounds; bit 1 in `pattern` means eta.
    for pattern in 0u64..(1 << k) {
        let mut sum = 0.0;
        for bit in 0..k {
            sum += if pattern >> bit & 1 == 1 { eta } else { xi };
        }
        if (sum - 1.0).abs() <= VERTEX_TOL {
            let v: Vec<f64> = (0..k)
                .map(|bit| if pattern >> bit & 1 == 1 { eta } else { xi })
                .collect();
            vertices.push(v);
        }
    }

    // One free coordinate, the rest at bounds.
    for free in 0..k {
        for pattern in 0u64..(1 << (k - 1)) {
            let mut v = Vec::with_capacity(k);
            let mut sum = 0.0;
            let mut bit = 0;
            for slot in 0..k {
                if slot == free {
                    v.push(0.0);
                } else {
                    let value = if pattern >> bit & 1 == 1 { eta } else { xi };
                    v.push(value);
                    sum += value;
                    bit += 1;
                }
            }
            let mut rest = 1.0 - sum;
            if rest < xi - VERTEX_TOL || rest > eta + VERTEX_TOL {
                continue;
            }
            if (rest - xi).abs() <= VERTEX_TOL {
                rest = xi;
            } else if (rest - eta).abs() <= VERTEX_TOL {
                rest = eta;
            }
            v[free] = rest;
            vertices.push(v);
        }
    }

    vertices.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    vertices.dedup_by(|a, b| {
        a.iter()
            .zip(b.iter())
            .all(|(x, y)| (*x - *y).abs() <= VERTEX_TOL)
    });
    Ok(vertices)
}

/// `box_vertices` over a scenario's input tuples.
pub fn enumerate_box_vertices(scenario: &Scenario, xi: f64, eta: f64) -> Result<Vec<Vec<f64>>> {
    box_vertices(scenario.input_tuple_count(), xi, eta)
}

/// Exact maximum over one family of model vertices, with the attaining
/// vertex as witness.
#[derive(Debug, Clone, PartialEq)]
pub struct MdlOracleReport {
    pub value: f64,
    pub witness: StrongMdlVertex,
}

impl MdlOracleReport {
    /// Recompute the objective at the stored witness.
    pub fn reevaluate(&self, f: &BellFunctional) -> f64 {
        self.witness.evaluate(f)
    }
}

/// Per-response coefficient rows: row r holds, for every input tuple, the
/// coefficient at the cell that response strategy r selects.
fn response_rows(f: &BellFunctional) -> Vec<f64> {
    let scenario = f.scenario();
    let k = scenario.input_tuple_count();
    let total = DeterministicStrategy::count(scenario) as usize;
    let mut rows = vec![0.0; total * k];
    for r in 0..total {
        let strategy = DeterministicStrategy::from_index(scenario, r as u64);
        for input in 0..k {
            rows[r * k + input] = f.coeff(input, strategy.response(scenario, input));
        }
    }
    rows
}

/// Exact maximum of a joint functional over the box-constrained model
/// (every round obeys `xi <= p(x|lambda) <= eta`). This is the quantity the
/// `xi * eta * beta_loc` bound caps.
pub fn oracle_mdl_max(
    f: &BellFunctional,
    xi: f64,
    eta: f64,
    opts: &ScanOptions,
) -> Result<MdlOracleReport> {
    if f.kind() != Kind::Joint {
        return Err(Error::KindMismatch {
            expected: "joint",
            got: "conditional",
        });
    }
    let scenario = f.scenario();
    let k = scenario.input_tuple_count();
    let responses = DeterministicStrategy::count(scenario);
    let vertices = box_vertices(k, xi, eta)?;
    let candidates = (vertices.len() as u128).saturating_mul(responses);
    opts.check_cap(candidates)?;

    let rows = response_rows(f);
    let r_total = responses as u64;
    let best = parallel_argmax(vertices.len() as u64 * r_total, opts.workers, |index| {
        let vertex = &vertices[(index / r_total) as usize];
        let row = &rows[(index % r_total) as usize * k..][..k];
        vertex.iter().zip(row).map(|(p, w)| p * w).sum()
    });

    let vertex = vertices[(best.index / r_total) as usize].clone();
    let responses = DeterministicStrategy::from_index(scenario, best.index % r_total);
    Ok(MdlOracleReport {
        value: best.value,
        witness: StrongMdlVertex::Constrained {
            input_dist: vertex,
            responses,
        },
    })
}

/// Exact maximum over the strong measurement-dependence model: weight
/// `1 - q` on the best input-determining vertex (the largest coefficient
/// cell) plus weight `q` on the best box-constrained vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct SmdOracleReport {
    pub value: f64,
    /// Largest-coefficient part.
    pub determined: MdlOracleReport,
    /// Box-constrained part.
    pub constrained: MdlOracleReport,
}

pub fn oracle_smd_max(
    f: &BellFunctional,
    params: &MdlParams,
    opts: &ScanOptions,
) -> Result<SmdOracleReport> {
    if f.kind() != Kind::Joint {
        return Err(Error::KindMismatch {
            expected: "joint",
            got: "conditional",
        });
    }
    let determined = best_determined_vertex(f);
    let constrained = oracle_mdl_max(f, params.xi, params.eta, opts)?;
    let value = (1.0 - params.q) * determined.value + params.q * constrained.value;
    Ok(SmdOracleReport {
        value,
        determined,
        constrained,
    })
}

/// The best input-determining vertex: all input mass on the cell with the
/// largest coefficient, responses answering with that cell's outputs
/// everywhere.
fn best_determined_vertex(f: &BellFunctional) -> MdlOracleReport {
    let scenario = f.scenario();
    let report = algebraic_bound(f);
    let (inputs, outputs) = match &report.witness {
        Witness::Cell { inputs, outputs } => (inputs.clone(), outputs.clone()),
        other => unreachable!("joint algebraic bound yields a cell witness, got {other:?}"),
    };
    let responses = DeterministicStrategy {
        outputs: outputs
            .iter()
            .zip(scenario.inputs())
            .map(|(&a, &m)| vec![a; m])
            .collect(),
    };
    MdlOracleReport {
        value: report.value,
        witness: StrongMdlVertex::Determined { input: inputs, responses },
    }
}

/// Side-by-side comparison of the closed-form bounds with the exhaustive
/// oracle for a conditional functional.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub params: MdlParams,
    /// Enumerated local bound of the conditional functional.
    pub beta_loc: BoundReport,
    /// Algebraic bound of the sign-split joint form: the largest coefficient.
    pub beta_alg_tilde: f64,
    /// Closed-form strong-MD local bound from the two betas.
    pub formula_smd: f64,
    pub oracle_smd: SmdOracleReport,
    /// formula_smd - oracle value; nonnegative whenever the formula is a
    /// valid upper bound.
    pub gap_smd: f64,
    /// Box-only bound xi * eta * beta_loc.
    pub putz: f64,
    pub oracle_mdl: MdlOracleReport,
    pub gap_mdl: f64,
}

impl VerificationReport {
    pub fn smd_tight(&self) -> bool {
        self.gap_smd.abs() <= GAP_TOL
    }

    pub fn mdl_tight(&self) -> bool {
        self.gap_mdl.abs() <= GAP_TOL
    }

    /// TIGHT only when both oracle values attain their closed forms.
    pub fn flag(&self) -> &'static str {
        if self.smd_tight() && self.mdl_tight() {
            "TIGHT"
        } else {
            "GAP"
        }
    }
}

/// Run both oracles against the closed-form bounds of `f` at `params`.
/// Gaps are reported, never errors.
pub fn verify_bounds(
    f: &BellFunctional,
    params: &MdlParams,
    opts: &ScanOptions,
) -> Result<VerificationReport> {
    if f.kind() != Kind::Conditional {
        return Err(Error::KindMismatch {
            expected: "conditional",
            got: "joint",
        });
    }
    check_feasible_box(params.xi, params.eta, f.scenario().input_tuple_count())?;
    let beta_loc = local_bound(f, opts)?;
    let beta_alg_tilde = f.max_coeff();
    let joint = md_transform(f, params.xi, params.eta)?;

    let formula_smd = smd_local_bound(params, beta_alg_tilde, beta_loc.value);
    let oracle_smd = oracle_smd_max(&joint, params, opts)?;
    let gap_smd = formula_smd - oracle_smd.value;

    let putz = putz_local_bound(params.xi, params.eta, beta_loc.value);
    let oracle_mdl = oracle_mdl_max(&joint, params.xi, params.eta, opts)?;
    let gap_mdl = putz - oracle_mdl.value;

    Ok(VerificationReport {
        params: *params,
        beta_loc,
        beta_alg_tilde,
        formula_smd,
        oracle_smd,
        gap_smd,
        putz,
        oracle_mdl,
        gap_mdl,
    })
}
