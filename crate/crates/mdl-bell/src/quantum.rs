//! Minimal dense complex linear algebra and the built-in quantum strategies:
//! the Peres-Mermin magic square on two ququarts (with isotropic noise) and
//! the GHZ state with Pauli X/Y measurements.

use num_complex::Complex64;

use crate::behavior::Behavior;
use crate::error::{Error, Result};
use crate::scenario::Scenario;

/// Matrix identities must hold entrywise within this tolerance.
pub const MAT_TOL: f64 = 1e-9;
/// The power-method eigenvalue bound carries this much slack.
pub const PSD_TOL: f64 = 1e-7;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![c(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, c(1.0, 0.0));
        }
        m
    }

    /// Build from a row-major entry list.
    pub fn from_entries(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {dim}x{dim} matrix",
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParams("non-finite matrix entry".into()));
        }
        Ok(ComplexMatrix { dim, data })
    }

    /// Pure-state density matrix |psi><psi| from an unnormalized vector.
    pub fn from_state_vector(psi: &[Complex64]) -> Self {
        let dim = psi.len();
        let norm_sq: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, psi[i] * psi[j].conj() / norm_sq);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix {
            dim: self.dim,
            data,
        }
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn mul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == c(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Kronecker product, `self` as the most significant factor.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let (n, m) = (self.dim, other.dim);
        let mut out = ComplexMatrix::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a == c(0.0, 0.0) {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out.set(i * m + k, j * m + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn dagger(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Tr[self * other] without forming the product.
    pub fn trace_product(&self, other: &ComplexMatrix) -> Complex64 {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut sum = c(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                sum += self.get(i, j) * other.get(j, i);
            }
        }
        sum
    }

    /// Largest entrywise distance to another matrix.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.dagger()) <= tol
    }

    /// Maximum absolute row sum; bounds the spectral radius.
    pub fn inf_norm(&self) -> f64 {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Lower estimate of the smallest eigenvalue of a Hermitian matrix via
    /// power iteration on the shifted matrix c*I - self; accurate to roughly
    /// `PSD_TOL` for the well-conditioned states handled here.
    pub fn min_eigenvalue_estimate(&self) -> f64 {
        let n = self.dim;
        let shift = self.inf_norm() + 1.0;
        // Deterministic start with a mild ramp so no eigenvector is missed.
        let mut v: Vec<Complex64> = (0..n)
            .map(|i| c(1.0 + i as f64 / (n as f64 + 1.0), 0.0))
            .collect();
        normalize(&mut v);
        let mut lambda = 0.0;
        for _ in 0..500 {
            // w = (shift * I - self) v
            let mut w = vec![c(0.0, 0.0); n];
            for (i, slot) in w.iter_mut().enumerate() {
                let mut acc = v[i] * shift;
                for (j, vj) in v.iter().enumerate() {
                    acc -= self.get(i, j) * vj;
                }
                *slot = acc;
            }
            let next: f64 = v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum();
            let advanced = (next - lambda).abs() > 1e-13;
            lambda = next;
            normalize(&mut w);
            v = w;
            if !advanced {
                break;
            }
        }
        shift - lambda
    }
}

fn normalize(v: &mut [Complex64]) {
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in v.iter_mut() {
            *z /= norm;
        }
    }
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_entries(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
        .unwrap()
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_entries(2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
        .unwrap()
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_entries(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
        .unwrap()
}

/// Joint eigenspace projectors of a list of commuting +/-1 observables.
///
/// The result is indexed by output symbol: bit k of the symbol is 0 when
/// observable k has outcome +1. Each projector is prod_k (I + s_k O_k) / 2.
pub fn projectors(observables: &[ComplexMatrix]) -> Result<Vec<ComplexMatrix>> {
    if observables.is_empty() {
        return Err(Error::InvalidSpec("no observables given".into()));
    }
    let dim = observables[0].dim();
    let identity = ComplexMatrix::identity(dim);
    for (i, o) in observables.iter().enumerate() {
        if o.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "observable {i} has dimension {} instead of {dim}",
                o.dim()
            )));
        }
        let herm_dev = o.max_abs_diff(&o.dagger());
        let invol_dev = o.mul(o).max_abs_diff(&identity);
        let dev = herm_dev.max(invol_dev);
        if dev > MAT_TOL {
            return Err(Error::NotInvolutive { i, dev });
        }
    }
    for i in 0..observables.len() {
        for j in (i + 1)..observables.len() {
            let ab = observables[i].mul(&observables[j]);
            let ba = observables[j].mul(&observables[i]);
            let dev = ab.max_abs_diff(&ba);
            if dev > MAT_TOL {
                return Err(Error::NotCommuting { i, j, dev });
            }
        }
    }

    let count = 1usize << observables.len();
    let mut projs = Vec::with_capacity(count);
    for symbol in 0..count {
        let mut p = identity.clone();
        for (k, o) in observables.iter().enumerate() {
            let sign = if symbol >> k & 1 == 0 { 1.0 } else { -1.0 };
            let factor = identity.add(&o.scale(c(sign, 0.0))).scale(c(0.5, 0.0));
            p = p.mul(&factor);
        }
        projs.push(p);
    }

    // Construction guarantees these; a violation means broken arithmetic.
    let mut sum = ComplexMatrix::zeros(dim);
    for (s, p) in projs.iter().enumerate() {
        assert!(
            p.mul(p).max_abs_diff(p) <= MAT_TOL,
            "projector {s} not idempotent"
        );
        for (t, q) in projs.iter().enumerate().skip(s + 1) {
            assert!(
                p.mul(q).max_abs_diff(&ComplexMatrix::zeros(dim)) <= MAT_TOL,
                "projectors {s} and {t} not orthogonal"
            );
        }
        sum = sum.add(p);
    }
    assert!(
        sum.max_abs_diff(&identity) <= MAT_TOL,
        "projectors do not sum to identity"
    );
    Ok(projs)
}

/// One measurement: commuting +/-1 observables whose joint eigenspaces
/// label the outputs.
#[derive(Debug, Clone)]
pub struct Measurement {
    observables: Vec<ComplexMatrix>,
    projectors: Vec<ComplexMatrix>,
}

impl Measurement {
    pub fn new(observables: Vec<ComplexMatrix>) -> Result<Self> {
        let projectors = projectors(&observables)?;
        Ok(Measurement {
            observables,
            projectors,
        })
    }

    pub fn observables(&self) -> &[ComplexMatrix] {
        &self.observables
    }

    /// Projector for an output symbol.
    pub fn projector(&self, output: usize) -> &ComplexMatrix {
        &self.projectors[output]
    }

    pub fn output_count(&self) -> usize {
        self.projectors.len()
    }

    pub fn dim(&self) -> usize {
        self.observables[0].dim()
    }
}

/// Isotropic-noise visibility: rho = v * target + (1 - v) * I / d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisySpec {
    pub visibility: f64,
}

impl NoisySpec {
    pub fn new(visibility: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&visibility) {
            return Err(Error::InvalidParams(format!(
                "visibility must lie in [0, 1], got {visibility}"
            )));
        }
        Ok(NoisySpec { visibility })
    }

    pub fn ideal() -> Self {
        NoisySpec { visibility: 1.0 }
    }
}

/// A shared state plus per-party, per-input measurements.
#[derive(Debug, Clone)]
pub struct QuantumStrategy {
    state: ComplexMatrix,
    /// measurements[party][input]
    measurements: Vec<Vec<Measurement>>,
}

impl QuantumStrategy {
    pub fn new(state: ComplexMatrix, measurements: Vec<Vec<Measurement>>) -> Result<Self> {
        if !state.is_hermitian(MAT_TOL) {
            return Err(Error::InvalidState("state is not Hermitian".into()));
        }
        let trace = state.trace();
        if (trace.re - 1.0).abs() > MAT_TOL || trace.im.abs() > MAT_TOL {
            return Err(Error::InvalidState(format!(
                "state trace is {trace} instead of 1"
            )));
        }
        let min_eig = state.min_eigenvalue_estimate();
        if min_eig < -PSD_TOL {
            return Err(Error::InvalidState(format!(
                "state has a negative eigenvalue near {min_eig:.3e}"
            )));
        }
        if measurements.is_empty() || measurements.iter().any(|inputs| inputs.is_empty()) {
            return Err(Error::InvalidSpec(
                "every party needs at least one measurement".into(),
            ));
        }
        let mut dim_product = 1usize;
        for (party, inputs) in measurements.iter().enumerate() {
            let dim = inputs[0].dim();
            let outputs = inputs[0].output_count();
            for m in inputs {
                if m.dim() != dim || m.output_count() != outputs {
                    return Err(Error::DimensionMismatch(format!(
                        "party {party} mixes measurement dimensions or output counts"
                    )));
                }
            }
            dim_product *= dim;
        }
        if dim_product != state.dim() {
            return Err(Error::DimensionMismatch(format!(
                "party dimensions multiply to {dim_product}, state is {}",
                state.dim()
            )));
        }
        Ok(QuantumStrategy {
            state,
            measurements,
        })
    }

    pub fn state(&self) -> &ComplexMatrix {
        &self.state
    }

    pub fn measurements(&self) -> &[Vec<Measurement>] {
        &self.measurements
    }

    /// The Bell scenario this strategy generates.
    pub fn scenario(&self) -> Scenario {
        let inputs: Vec<usize> = self.measurements.iter().map(Vec::len).collect();
        let outputs: Vec<usize> = self
            .measurements
            .iter()
            .map(|inputs| inputs[0].output_count())
            .collect();
        Scenario::new(inputs, outputs).expect("validated alphabet sizes")
    }
}

/// Born-rule behavior of a strategy:
/// p(outputs | inputs) = Tr[(P_1 x ... x P_N) rho].
pub fn behavior_from_strategy(strategy: &QuantumStrategy) -> Result<Behavior> {
    let scenario = strategy.scenario();
    let mut probs = vec![0.0; scenario.cell_count()];
    for input in 0..scenario.input_tuple_count() {
        let inputs = scenario.input_tuple(input);
        for output in 0..scenario.output_tuple_count() {
            let outputs = scenario.output_tuple(output);
            let mut joint: Option<ComplexMatrix> = None;
            for (party, (&x, &a)) in inputs.iter().zip(&outputs).enumerate() {
                let p = strategy.measurements()[party][x].projector(a);
                joint = Some(match joint {
                    None => p.clone(),
                    Some(acc) => acc.kron(p),
                });
            }
            let joint = joint.expect("at least one party");
            probs[scenario.cell_index(input, output)] =
                joint.trace_product(strategy.state()).re;
        }
    }
    Behavior::new(scenario, probs)
}

/// The 3x3 magic-square grid of two-qubit observables used by the
/// Peres-Mermin strategy. Every row multiplies to +I; the columns multiply
/// to +I, -I, +I, which is the sign pattern the nine correlator terms need.
fn magic_square_grid() -> [[ComplexMatrix; 3]; 3] {
    let x = pauli_x();
    let y = pauli_y();
    let z = pauli_z();
    let i2 = ComplexMatrix::identity(2);
    [
        [z.kron(&i2), z.kron(&z), i2.kron(&z)],
        [i2.kron(&x), x.kron(&x), x.kron(&i2)],
        [z.kron(&x), y.kron(&y), x.kron(&z)],
    ]
}

/// Peres-Mermin strategy with isotropic noise.
///
/// The shared state is v |phi+><phi+| + (1 - v) I/16 with
/// |phi+> = sum_j |jj> / 2. On input x Alice measures the first two entries
/// of grid row x; on input y Bob measures the transposes of the first two
/// entries of grid column y, which lines his outcomes up with Alice's
/// through the |phi+> correlations.
pub fn pm_strategy(noise: NoisySpec) -> QuantumStrategy {
    let grid = magic_square_grid();
    let v = noise.visibility;

    let mut psi = vec![c(0.0, 0.0); 16];
    for j in 0..4 {
        psi[j * 4 + j] = c(0.5, 0.0);
    }
    let pure = ComplexMatrix::from_state_vector(&psi);
    let state = pure
        .scale(c(v, 0.0))
        .add(&ComplexMatrix::identity(16).scale(c((1.0 - v) / 16.0, 0.0)));

    let alice: Vec<Measurement> = (0..3)
        .map(|x| {
            Measurement::new(vec![grid[x][0].clone(), grid[x][1].clone()])
                .expect("magic-square row observables commute")
        })
        .collect();
    let bob: Vec<Measurement> = (0..3)
        .map(|y| {
            Measurement::new(vec![grid[0][y].transpose(), grid[1][y].transpose()])
                .expect("magic-square column observables commute")
        })
        .collect();

    QuantumStrategy::new(state, vec![alice, bob]).expect("valid built-in strategy")
}

/// GHZ strategy: state (|000> + |111>)/sqrt(2), input 0 measures Pauli X,
/// input 1 measures Pauli Y, for each of the three parties.
pub fn ghz_strategy() -> QuantumStrategy {
    let mut psi = vec![c(0.0, 0.0); 8];
    psi[0] = c(1.0, 0.0);
    psi[7] = c(1.0, 0.0);
    let state = ComplexMatrix::from_state_vector(&psi);

    let party = || -> Vec<Measurement> {
        vec![
            Measurement::new(vec![pauli_x()]).expect("single observable"),
            Measurement::new(vec![pauli_y()]).expect("single observable"),
        ]
    };
    QuantumStrategy::new(state, vec![party(), party(), party()])
        .expect("valid built-in strategy")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::{pm_functional, pm_terms, CorrelatorFlavor, CorrelatorSpec};

    #[test]
    fn single_qubit_z_projectors() {
        let projs = projectors(&[pauli_z()]).unwrap();
        assert_eq!(projs.len(), 2);
        // Outcome +1 (symbol 0) projects onto |0>.
        assert!((projs[0].get(0, 0) - c(1.0, 0.0)).norm() < 1e-12);
        assert!(projs[0].get(1, 1).norm() < 1e-12);
        assert!((projs[1].get(1, 1) - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn product_basis_projectors() {
        let i2 = ComplexMatrix::identity(2);
        let projs = projectors(&[pauli_z().kron(&i2), i2.kron(&pauli_z())]).unwrap();
        assert_eq!(projs.len(), 4);
        for p in &projs {
            assert!((p.trace().re - 1.0).abs() < 1e-12, "rank-1 projectors");
        }
    }

    #[test]
    fn pm_row_projectors_are_rank_four() {
        let grid = magic_square_grid();
        // Row-0 pair lifted to the full 16-dimensional space.
        let row_on_full = vec![
            grid[0][0].kron(&ComplexMatrix::identity(4)),
            grid[0][1].kron(&ComplexMatrix::identity(4)),
        ];
        let projs = projectors(&row_on_full).unwrap();
        assert_eq!(projs.len(), 4);
        for p in &projs {
            assert!((p.trace().re - 4.0).abs() < 1e-9);
        }
    }

    #[test]
    fn non_commuting_rejected() {
        assert!(matches!(
            projectors(&[pauli_x(), pauli_z()]),
            Err(Error::NotCommuting { .. })
        ));
    }

    #[test]
    fn non_involutive_rejected() {
        let half = pauli_x().scale(c(0.5, 0.0));
        assert!(matches!(
            projectors(&[half]),
            Err(Error::NotInvolutive { .. })
        ));
    }

    #[test]
    fn magic_square_row_and_column_products() {
        let grid = magic_square_grid();
        let id = ComplexMatrix::identity(4);
        for row in &grid {
            let prod = row[0].mul(&row[1]).mul(&row[2]);
            assert!(prod.max_abs_diff(&id) < 1e-12, "rows multiply to +I");
        }
        let col_signs = [1.0, -1.0, 1.0];
        for (col, &sign) in col_signs.iter().enumerate() {
            let prod = grid[0][col].mul(&grid[1][col]).mul(&grid[2][col]);
            assert!(
                prod.max_abs_diff(&id.scale(c(sign, 0.0))) < 1e-12,
                "column {col} multiplies to {sign} I"
            );
        }
    }

    #[test]
    fn fully_mixed_pm_behavior_is_uniform() {
        let b = behavior_from_strategy(&pm_strategy(NoisySpec::new(0.0).unwrap())).unwrap();
        for &p in b.probs() {
            assert!((p - 1.0 / 16.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ideal_pm_reaches_18_with_nine_terms_of_2() {
        let b = behavior_from_strategy(&pm_strategy(NoisySpec::ideal())).unwrap();
        assert!(b.validate().is_ok());
        let f = pm_functional();
        assert!((f.evaluate(&b).unwrap() - 18.0).abs() < 1e-9);
        for (spec, sign) in pm_terms() {
            let value = sign * spec.correlator(&b).unwrap();
            assert!(
                (value - 2.0).abs() < 1e-9,
                "term at {:?} gives {value}",
                spec.inputs
            );
        }
    }

    #[test]
    fn pm_noise_linearity() {
        let f = pm_functional();
        for v in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let b = behavior_from_strategy(&pm_strategy(NoisySpec::new(v).unwrap())).unwrap();
            let got = f.evaluate(&b).unwrap();
            let want = 18.0 * v - 63.0 * (1.0 - v);
            assert!((got - want).abs() < 1e-9, "v = {v}: {got} vs {want}");
        }
    }

    #[test]
    fn ghz_parity_correlators() {
        let b = behavior_from_strategy(&ghz_strategy()).unwrap();
        let scenario = b.scenario().clone();
        let spec = |inputs: [usize; 3]| {
            CorrelatorSpec::new(
                &scenario,
                inputs.to_vec(),
                vec![1, 1, 1],
                CorrelatorFlavor::Mermin,
            )
            .unwrap()
        };
        // <XXX> = +1: even parity with certainty.
        assert!((spec([0, 0, 0]).correlator(&b).unwrap() - 3.0).abs() < 1e-9);
        // <YYX> = -1: odd parity with certainty.
        assert!((spec([1, 1, 0]).correlator(&b).unwrap() + 1.0).abs() < 1e-9);
        // <XXY> = 0: parity is uniform.
        assert!((spec([0, 0, 1]).correlator(&b).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn invalid_states_rejected() {
        let not_normalized = ComplexMatrix::identity(2);
        assert!(matches!(
            QuantumStrategy::new(
                not_normalized,
                vec![vec![Measurement::new(vec![pauli_z()]).unwrap()]],
            ),
            Err(Error::InvalidState(_))
        ));

        // Hermitian, trace one, but indefinite.
        let mut indefinite = ComplexMatrix::zeros(2);
        indefinite.set(0, 0, c(1.5, 0.0));
        indefinite.set(1, 1, c(-0.5, 0.0));
        assert!(matches!(
            QuantumStrategy::new(
                indefinite,
                vec![vec![Measurement::new(vec![pauli_z()]).unwrap()]],
            ),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let state = ComplexMatrix::from_state_vector(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let four_dim = Measurement::new(vec![pauli_z().kron(&ComplexMatrix::identity(2))]).unwrap();
        assert!(matches!(
            QuantumStrategy::new(state, vec![vec![four_dim]]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn min_eigenvalue_estimate_on_known_spectra() {
        let mut m = ComplexMatrix::zeros(3);
        m.set(0, 0, c(2.0, 0.0));
        m.set(1, 1, c(0.25, 0.0));
        m.set(2, 2, c(-0.75, 0.0));
        assert!((m.min_eigenvalue_estimate() + 0.75).abs() < 1e-7);
        let id = ComplexMatrix::identity(4).scale(c(0.25, 0.0));
        assert!((id.min_eigenvalue_estimate() - 0.25).abs() < 1e-7);
    }
}
