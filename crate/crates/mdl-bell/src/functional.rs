//! Bell functionals as dense coefficient tables, the weighted correlators
//! they are assembled from, and builders for the built-in inequalities.

use std::fmt;
use std::str::FromStr;

use crate::behavior::{Behavior, JointBehavior};
use crate::error::{Error, Result};
use crate::scenario::Scenario;

/// Whether a functional contracts against p(a|x) or p(a,x).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Conditional,
    Joint,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Conditional => "conditional",
            Kind::Joint => "joint",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A linear functional sum_cells w * p with real coefficients.
///
/// The positive part `w+` and negative part `w-` (absolute values of the
/// negative coefficients) partition the nonzero cells: w = w+ - w-.
#[derive(Debug, Clone, PartialEq)]
pub struct BellFunctional {
    scenario: Scenario,
    kind: Kind,
    /// Dense coefficients indexed by `scenario.cell_index(input, output)`.
    coeffs: Vec<f64>,
}

impl BellFunctional {
    pub fn new(scenario: Scenario, kind: Kind, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.len() != scenario.cell_count() {
            return Err(Error::MissingCell {
                expected: scenario.cell_count(),
                got: coeffs.len(),
            });
        }
        if coeffs.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidParams("non-finite coefficient".into()));
        }
        Ok(BellFunctional {
            scenario,
            kind,
            coeffs,
        })
    }

    /// All-zero functional.
    pub fn zero(scenario: Scenario, kind: Kind) -> Self {
        let coeffs = vec![0.0; scenario.cell_count()];
        BellFunctional {
            scenario,
            kind,
            coeffs,
        }
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, input: usize, output: usize) -> f64 {
        self.coeffs[self.scenario.cell_index(input, output)]
    }

    /// Positive part of a cell coefficient: w if w > 0 else 0.
    pub fn coeff_plus(&self, cell: usize) -> f64 {
        self.coeffs[cell].max(0.0)
    }

    /// Negative part of a cell coefficient: |w| if w < 0 else 0.
    pub fn coeff_minus(&self, cell: usize) -> f64 {
        (-self.coeffs[cell]).max(0.0)
    }

    /// Largest coefficient over all cells (the joint-kind algebraic bound).
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Number of nonzero coefficients.
    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|w| **w != 0.0).count()
    }

    /// Contract a conditional functional against a conditional behavior.
    pub fn evaluate(&self, behavior: &Behavior) -> Result<f64> {
        if self.kind != Kind::Conditional {
            return Err(Error::KindMismatch {
                expected: "joint",
                got: "conditional",
            });
        }
        if behavior.scenario() != &self.scenario {
            return Err(Error::ScenarioMismatch(
                "functional and behavior disagree".into(),
            ));
        }
        Ok(dot(&self.coeffs, behavior.probs()))
    }

    /// Contract a joint functional against a joint behavior.
    pub fn evaluate_joint(&self, behavior: &JointBehavior) -> Result<f64> {
        if self.kind != Kind::Joint {
            return Err(Error::KindMismatch {
                expected: "conditional",
                got: "joint",
            });
        }
        if behavior.scenario() != &self.scenario {
            return Err(Error::ScenarioMismatch(
                "functional and behavior disagree".into(),
            ));
        }
        Ok(dot(&self.coeffs, behavior.probs()))
    }

    /// Reinterpret the same coefficients as a joint-kind functional.
    pub fn as_joint_kind(&self) -> BellFunctional {
        BellFunctional {
            scenario: self.scenario.clone(),
            kind: Kind::Joint,
            coeffs: self.coeffs.clone(),
        }
    }

    fn add_term(&mut self, term: &CorrelatorSpec, w_plus: f64, w_minus: f64, sign: f64) {
        self.add_masked_term(&term.inputs, &term.bit_masks, w_plus, w_minus, sign);
    }

    fn add_masked_term(
        &mut self,
        inputs: &[usize],
        masks: &[u32],
        w_plus: f64,
        w_minus: f64,
        sign: f64,
    ) {
        let input = self
            .scenario
            .input_index(inputs)
            .expect("term input validated");
        for output in 0..self.scenario.output_tuple_count() {
            let tuple = self.scenario.output_tuple(output);
            let w = if parity_sign(&tuple, masks) > 0 {
                w_plus
            } else {
                w_minus
            };
            self.coeffs[self.scenario.cell_index(input, output)] += sign * w;
        }
    }
}

/// +/-1 product of the selected output bits, with bit value 0 meaning +1.
fn parity_sign(outputs: &[usize], masks: &[u32]) -> i32 {
    let mut parity = 0u32;
    for (&symbol, &mask) in outputs.iter().zip(masks) {
        parity ^= (symbol as u32 & mask).count_ones() & 1;
    }
    if parity == 0 {
        1
    } else {
        -1
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The three weighted-correlator flavors used by the built-in inequalities.
///
/// Weights are the cell coefficients for f = +1 and f = -1: tilde is
/// (2, -16) with range [-16, 2], bar is (16, -2) with range [-2, 16], and
/// mermin is (3, -1) with range [-1, 3], where f = +1 on even parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelatorFlavor {
    Tilde,
    Bar,
    Mermin,
}

impl CorrelatorFlavor {
    /// (weight on f = +1, weight on f = -1).
    pub fn weights(self) -> (f64, f64) {
        match self {
            CorrelatorFlavor::Tilde => (2.0, -16.0),
            CorrelatorFlavor::Bar => (16.0, -2.0),
            CorrelatorFlavor::Mermin => (3.0, -1.0),
        }
    }

    /// Attainable value range (all mass on f = -1, all mass on f = +1).
    pub fn range(self) -> (f64, f64) {
        let (plus, minus) = self.weights();
        (minus, plus)
    }
}

/// One correlator term: an input tuple plus, per party, a bit mask selecting
/// which output bits enter the +/-1 product f.
///
/// Output symbols encode sign tuples bitwise: bit k of the symbol is 0 when
/// the k-th sign is +1. Bit 0 is the first bit (a1 for the Peres-Mermin
/// encoding), bit 1 the second (a2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelatorSpec {
    pub inputs: Vec<usize>,
    pub bit_masks: Vec<u32>,
    pub flavor: CorrelatorFlavor,
}

impl CorrelatorSpec {
    pub fn new(
        scenario: &Scenario,
        inputs: Vec<usize>,
        bit_masks: Vec<u32>,
        flavor: CorrelatorFlavor,
    ) -> Result<Self> {
        scenario.input_index(&inputs)?;
        if bit_masks.len() != scenario.parties() {
            return Err(Error::InvalidSpec(format!(
                "{} bit masks for {} parties",
                bit_masks.len(),
                scenario.parties()
            )));
        }
        for (party, &mask) in bit_masks.iter().enumerate() {
            let n = scenario.outputs()[party];
            let mut bits = mask;
            while bits != 0 {
                let k = bits.trailing_zeros();
                if (1usize << (k + 1)) > n {
                    return Err(Error::InvalidSpec(format!(
                        "bit {k} does not exist for party {party} with {n} outputs"
                    )));
                }
                bits &= bits - 1;
            }
        }
        Ok(CorrelatorSpec {
            inputs,
            bit_masks,
            flavor,
        })
    }

    /// The +/-1 product f over the selected bits of an output tuple.
    pub fn sign_of(&self, outputs: &[usize]) -> i32 {
        parity_sign(outputs, &self.bit_masks)
    }

    /// Weighted correlator value against a conditional behavior.
    pub fn correlator(&self, behavior: &Behavior) -> Result<f64> {
        let scenario = behavior.scenario();
        let input = scenario.input_index(&self.inputs)?;
        if self.bit_masks.len() != scenario.parties() {
            return Err(Error::InvalidSpec(
                "bit mask count does not match scenario".into(),
            ));
        }
        let (w_plus, w_minus) = self.flavor.weights();
        let mut value = 0.0;
        for output in 0..scenario.output_tuple_count() {
            let tuple = scenario.output_tuple(output);
            let w = if self.sign_of(&tuple) > 0 {
                w_plus
            } else {
                w_minus
            };
            value += w * behavior.prob(input, output);
        }
        Ok(value)
    }
}

/// Weighted correlator of `spec` against `behavior`.
pub fn correlator(spec: &CorrelatorSpec, behavior: &Behavior) -> Result<f64> {
    spec.correlator(behavior)
}

/// Names of the built-in functionals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinName {
    Pm,
    PmMd,
    Mermin,
    MerminMd,
    Chsh,
    ChshMd,
}

impl BuiltinName {
    pub fn as_str(self) -> &'static str {
        match self {
            BuiltinName::Pm => "pm",
            BuiltinName::PmMd => "pm_md",
            BuiltinName::Mermin => "mermin",
            BuiltinName::MerminMd => "mermin_md",
            BuiltinName::Chsh => "chsh",
            BuiltinName::ChshMd => "chsh_md",
        }
    }

    pub fn needs_params(self) -> bool {
        matches!(
            self,
            BuiltinName::PmMd | BuiltinName::MerminMd | BuiltinName::ChshMd
        )
    }
}

impl FromStr for BuiltinName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pm" => Ok(BuiltinName::Pm),
            "pm_md" => Ok(BuiltinName::PmMd),
            "mermin" => Ok(BuiltinName::Mermin),
            "mermin_md" => Ok(BuiltinName::MerminMd),
            "chsh" => Ok(BuiltinName::Chsh),
            "chsh_md" => Ok(BuiltinName::ChshMd),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

/// Build a built-in functional; `params = (xi, eta)` is required exactly for
/// the `_md` variants.
pub fn builtin_functional(
    name: BuiltinName,
    params: Option<(f64, f64)>,
) -> Result<BellFunctional> {
    match (name.needs_params(), params) {
        (true, None) => return Err(Error::MissingParams("xi and eta required for _md builtins")),
        (false, Some(_)) => {
            return Err(Error::InvalidParams(format!(
                "{} takes no (xi, eta) parameters",
                name.as_str()
            )))
        }
        _ => {}
    }
    if let Some((xi, eta)) = params {
        if xi <= 0.0 || eta <= 0.0 {
            return Err(Error::NonPositiveParams { xi, eta });
        }
    }
    Ok(match name {
        BuiltinName::Pm => pm_functional(),
        BuiltinName::PmMd => {
            let (xi, eta) = params.unwrap();
            pm_md_functional(xi, eta)
        }
        BuiltinName::Mermin => mermin_functional(),
        BuiltinName::MerminMd => {
            let (xi, eta) = params.unwrap();
            mermin_md_functional(xi, eta)
        }
        BuiltinName::Chsh => chsh_functional(),
        BuiltinName::ChshMd => {
            let (xi, eta) = params.unwrap();
            chsh_md_functional(xi, eta)
        }
    })
}

/// The nine Peres-Mermin terms: (spec, sign). The eight tilde correlators
/// enter with +1 and the bar correlator at inputs (2,1) with -1.
pub fn pm_terms() -> Vec<(CorrelatorSpec, f64)> {
    let scenario = Scenario::peres_mermin();
    // (x, y, alice mask, bob mask, flavor, sign); masks select output bits,
    // bit 0 = a1/b1, bit 1 = a2/b2.
    let table: [(usize, usize, u32, u32, CorrelatorFlavor, f64); 9] = [
        (0, 0, 0b01, 0b01, CorrelatorFlavor::Tilde, 1.0),
        (0, 1, 0b10, 0b01, CorrelatorFlavor::Tilde, 1.0),
        (1, 0, 0b01, 0b10, CorrelatorFlavor::Tilde, 1.0),
        (1, 1, 0b10, 0b10, CorrelatorFlavor::Tilde, 1.0),
        (0, 2, 0b11, 0b01, CorrelatorFlavor::Tilde, 1.0),
        (1, 2, 0b11, 0b10, CorrelatorFlavor::Tilde, 1.0),
        (2, 2, 0b11, 0b11, CorrelatorFlavor::Tilde, 1.0),
        (2, 0, 0b01, 0b11, CorrelatorFlavor::Tilde, 1.0),
        (2, 1, 0b10, 0b11, CorrelatorFlavor::Bar, -1.0),
    ];
    table
        .into_iter()
        .map(|(x, y, ma, mb, flavor, sign)| {
            let spec = CorrelatorSpec::new(&scenario, vec![x, y], vec![ma, mb], flavor)
                .expect("valid builtin term");
            (spec, sign)
        })
        .collect()
}

/// The four tripartite Mermin terms: (spec, sign).
pub fn mermin_terms() -> Vec<(CorrelatorSpec, f64)> {
    let scenario = Scenario::mermin();
    let table: [([usize; 3], f64); 4] = [
        ([0, 0, 0], 1.0),
        ([1, 1, 0], -1.0),
        ([1, 0, 1], -1.0),
        ([0, 1, 1], -1.0),
    ];
    table
        .into_iter()
        .map(|(inputs, sign)| {
            let spec = CorrelatorSpec::new(
                &scenario,
                inputs.to_vec(),
                vec![1, 1, 1],
                CorrelatorFlavor::Mermin,
            )
            .expect("valid builtin term");
            (spec, sign)
        })
        .collect()
}

/// The modified Peres-Mermin functional: algebraic bound 18, local bound 0.
pub fn pm_functional() -> BellFunctional {
    let mut f = BellFunctional::zero(Scenario::peres_mermin(), Kind::Conditional);
    for (spec, sign) in pm_terms() {
        let (w_plus, w_minus) = spec.flavor.weights();
        f.add_term(&spec, w_plus, w_minus, sign);
    }
    f
}

/// The measurement-dependent Peres-Mermin functional over joint
/// distributions: positive cells carry 2*xi, negative cells -16*eta.
///
/// Coefficient-by-coefficient this equals `md_transform(pm, xi, eta)`; it is
/// built here from its own weighted-correlator rule so the two routes stay
/// independent.
pub fn pm_md_functional(xi: f64, eta: f64) -> BellFunctional {
    let mut f = BellFunctional::zero(Scenario::peres_mermin(), Kind::Joint);
    for (spec, sign) in pm_terms() {
        let (w_plus, w_minus) = match spec.flavor {
            CorrelatorFlavor::Tilde => (2.0 * xi, -16.0 * eta),
            CorrelatorFlavor::Bar => (16.0 * eta, -2.0 * xi),
            CorrelatorFlavor::Mermin => unreachable!("no mermin term in pm"),
        };
        f.add_term(&spec, w_plus, w_minus, sign);
    }
    f
}

/// The tripartite weighted Mermin functional: one positive and three negated
/// parity correlators.
pub fn mermin_functional() -> BellFunctional {
    let mut f = BellFunctional::zero(Scenario::mermin(), Kind::Conditional);
    for (spec, sign) in mermin_terms() {
        let (w_plus, w_minus) = spec.flavor.weights();
        f.add_term(&spec, w_plus, w_minus, sign);
    }
    f
}

/// The measurement-dependent tripartite Mermin functional with the weighted
/// correlator (3*eta on even parity, -xi on odd parity), kept exactly in its
/// printed form.
///
/// Note this is not `md_transform(mermin, xi, eta)`: the positive term's
/// weights come out as (3*eta, -xi) rather than (3*xi, -eta). The oracle
/// measures both variants.
pub fn mermin_md_functional(xi: f64, eta: f64) -> BellFunctional {
    let mut f = BellFunctional::zero(Scenario::mermin(), Kind::Joint);
    for (spec, sign) in mermin_terms() {
        f.add_term(&spec, 3.0 * eta, -xi, sign);
    }
    f
}

/// CHSH in probability form: E00 + E01 + E10 - E11 with E = sum (-1)^(a+b) p.
pub fn chsh_functional() -> BellFunctional {
    let mut f = BellFunctional::zero(Scenario::chsh(), Kind::Conditional);
    for (x, y, sign) in [(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, -1.0f64)] {
        f.add_masked_term(&[x, y], &[1, 1], 1.0, -1.0, sign);
    }
    f
}

/// CHSH pushed through the measurement-dependence transform.
pub fn chsh_md_functional(xi: f64, eta: f64) -> BellFunctional {
    crate::mdl::md_transform(&chsh_functional(), xi, eta).expect("positive params")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn correlator_weights_and_ranges() {
        assert_eq!(CorrelatorFlavor::Tilde.weights(), (2.0, -16.0));
        assert_eq!(CorrelatorFlavor::Bar.weights(), (16.0, -2.0));
        assert_eq!(CorrelatorFlavor::Mermin.weights(), (3.0, -1.0));
        assert_eq!(CorrelatorFlavor::Tilde.range(), (-16.0, 2.0));
        assert_eq!(CorrelatorFlavor::Bar.range(), (-2.0, 16.0));
        assert_eq!(CorrelatorFlavor::Mermin.range(), (-1.0, 3.0));
    }

    #[test]
    fn correlators_on_uniform_behavior() {
        let scenario = Scenario::peres_mermin();
        let b = Behavior::uniform(scenario.clone());
        for flavor in [CorrelatorFlavor::Tilde, CorrelatorFlavor::Bar] {
            let spec =
                CorrelatorSpec::new(&scenario, vec![0, 0], vec![0b01, 0b01], flavor).unwrap();
            let want = match flavor {
                CorrelatorFlavor::Tilde => -7.0,
                CorrelatorFlavor::Bar => 7.0,
                CorrelatorFlavor::Mermin => unreachable!(),
            };
            assert!((spec.correlator(&b).unwrap() - want).abs() < 1e-12);
        }
        let s3 = Scenario::mermin();
        let spec =
            CorrelatorSpec::new(&s3, vec![0, 0, 0], vec![1, 1, 1], CorrelatorFlavor::Mermin)
                .unwrap();
        let b3 = Behavior::uniform(s3);
        assert!((spec.correlator(&b3).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_all_plus_behavior_hits_tilde_endpoint() {
        // All parties output symbol 0 (both bits +1) with certainty: f = +1.
        let scenario = Scenario::peres_mermin();
        let mut probs = vec![0.0; scenario.cell_count()];
        for input in 0..scenario.input_tuple_count() {
            probs[scenario.cell_index(input, 0)] = 1.0;
        }
        let b = Behavior::new(scenario.clone(), probs).unwrap();
        let spec = CorrelatorSpec::new(
            &scenario,
            vec![0, 0],
            vec![0b11, 0b11],
            CorrelatorFlavor::Tilde,
        )
        .unwrap();
        assert_eq!(spec.correlator(&b).unwrap(), 2.0);
    }

    #[test]
    fn pm_has_144_nonzero_coefficients() {
        let f = pm_functional();
        assert_eq!(f.nonzero_count(), 144);
        for input in 0..9 {
            for output in 0..16 {
                let w = f.coeff(input, output);
                assert!(
                    w == 2.0 || w == -16.0,
                    "unexpected coefficient {w} at ({input},{output})"
                );
            }
        }
    }

    #[test]
    fn pm_md_at_unit_params_matches_pm() {
        let pm = pm_functional();
        let pm_md = pm_md_functional(1.0, 1.0);
        assert_eq!(pm_md.kind(), Kind::Joint);
        assert_eq!(pm.coeffs(), pm_md.coeffs());
    }

    #[test]
    fn mermin_coefficient_signs() {
        let f = mermin_functional();
        assert_eq!(f.nonzero_count(), 32);
        let scenario = f.scenario().clone();
        for (inputs, sign) in [
            ([0usize, 0, 0], 1.0f64),
            ([1, 1, 0], -1.0),
            ([1, 0, 1], -1.0),
            ([0, 1, 1], -1.0),
        ] {
            let x = scenario.input_index(&inputs).unwrap();
            for output in 0..8 {
                let tuple = scenario.output_tuple(output);
                let parity = tuple.iter().sum::<usize>() % 2;
                let want = if parity == 0 { 3.0 * sign } else { -sign };
                assert_eq!(f.coeff(x, output), want);
            }
        }
    }

    #[test]
    fn evaluate_pm_on_uniform_is_minus_63() {
        let f = pm_functional();
        let b = Behavior::uniform(f.scenario().clone());
        assert!((f.evaluate(&b).unwrap() + 63.0).abs() < 1e-12);
    }

    #[test]
    fn zero_functional_evaluates_to_zero() {
        let s = Scenario::chsh();
        let f = BellFunctional::zero(s.clone(), Kind::Conditional);
        let b = Behavior::uniform(s);
        assert_eq!(f.evaluate(&b).unwrap(), 0.0);
    }

    #[test]
    fn kind_mismatch_rejected() {
        let f = pm_md_functional(0.1, 0.2);
        let b = Behavior::uniform(f.scenario().clone());
        assert!(matches!(f.evaluate(&b), Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn builtin_param_policy() {
        assert!(matches!(
            builtin_functional(BuiltinName::PmMd, None),
            Err(Error::MissingParams(_))
        ));
        assert!(matches!(
            builtin_functional(BuiltinName::Pm, Some((0.1, 0.2))),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            builtin_functional(BuiltinName::ChshMd, Some((0.0, 0.2))),
            Err(Error::NonPositiveParams { .. })
        ));
        assert!("nope".parse::<BuiltinName>().is_err());
    }

    #[test]
    fn chsh_coefficients() {
        let f = chsh_functional();
        let s = f.scenario().clone();
        for x in 0..4 {
            let sign = if s.input_tuple(x) == vec![1, 1] { -1.0 } else { 1.0 };
            for a in 0..4 {
                let tuple = s.output_tuple(a);
                let parity = (tuple[0] + tuple[1]) % 2;
                let want = sign * if parity == 0 { 1.0 } else { -1.0 };
                assert_eq!(f.coeff(x, a), want);
            }
        }
    }

    #[test]
    fn invalid_bit_mask_rejected() {
        let s = Scenario::mermin();
        assert!(matches!(
            CorrelatorSpec::new(&s, vec![0, 0, 0], vec![2, 1, 1], CorrelatorFlavor::Mermin),
            Err(Error::InvalidSpec(_))
        ));
    }
}
