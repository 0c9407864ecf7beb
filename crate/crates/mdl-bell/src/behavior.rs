//! Probability tables: conditional behaviors p(a|x), joint behaviors p(a,x),
//! and input distributions p(x).

use crate::error::{Error, Result};
use crate::scenario::Scenario;

/// Entries may dip this far below 0 or above 1 before they count as invalid.
pub const ENTRY_TOL: f64 = 1e-12;
/// Normalization sums must match 1 this closely.
pub const NORM_TOL: f64 = 1e-9;

/// Conditional behavior: p(outputs | inputs), one normalized distribution per
/// input tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct Behavior {
    scenario: Scenario,
    /// Dense table indexed by `scenario.cell_index(input, output)`.
    probs: Vec<f64>,
}

/// Joint behavior: p(outputs, inputs), one normalized distribution over all
/// cells.
#[derive(Debug, Clone, PartialEq)]
pub struct JointBehavior {
    scenario: Scenario,
    probs: Vec<f64>,
}

/// Distribution over input tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct InputDistribution {
    scenario: Scenario,
    probs: Vec<f64>,
}

impl Behavior {
    /// Wrap a dense table and check its invariants.
    pub fn new(scenario: Scenario, probs: Vec<f64>) -> Result<Self> {
        let b = Behavior::new_unchecked(scenario, probs)?;
        b.validate()?;
        Ok(b)
    }

    /// Wrap a dense table checking only its shape (for tests of `validate`).
    pub fn new_unchecked(scenario: Scenario, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != scenario.cell_count() {
            return Err(Error::MissingCell {
                expected: scenario.cell_count(),
                got: probs.len(),
            });
        }
        Ok(Behavior { scenario, probs })
    }

    /// Uniform behavior: every output tuple equally likely for every input.
    pub fn uniform(scenario: Scenario) -> Self {
        let p = 1.0 / scenario.output_tuple_count() as f64;
        let probs = vec![p; scenario.cell_count()];
        Behavior { scenario, probs }
    }

    /// Check entry range and per-input normalization.
    pub fn validate(&self) -> Result<()> {
        for input in 0..self.scenario.input_tuple_count() {
            let mut sum = 0.0;
            for output in 0..self.scenario.output_tuple_count() {
                let p = self.probs[self.scenario.cell_index(input, output)];
                check_entry(p, &self.scenario, input, output)?;
                sum += p;
            }
            if (sum - 1.0).abs() > NORM_TOL {
                return Err(Error::NotNormalized {
                    input: self.scenario.input_tuple(input),
                    sum,
                });
            }
        }
        Ok(())
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    /// p(output | input) by flat indices.
    pub fn prob(&self, input: usize, output: usize) -> f64 {
        self.probs[self.scenario.cell_index(input, output)]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Attach an input distribution: p(a,x) = p(x) * p(a|x).
    pub fn to_joint(&self, dist: &InputDistribution) -> Result<JointBehavior> {
        if dist.scenario != self.scenario {
            return Err(Error::ScenarioMismatch(
                "behavior and input distribution disagree".into(),
            ));
        }
        let mut probs = vec![0.0; self.scenario.cell_count()];
        for input in 0..self.scenario.input_tuple_count() {
            let weight = dist.probs[input];
            for output in 0..self.scenario.output_tuple_count() {
                let cell = self.scenario.cell_index(input, output);
                probs[cell] = weight * self.probs[cell];
            }
        }
        Ok(JointBehavior {
            scenario: self.scenario.clone(),
            probs,
        })
    }

    /// Convenience for the equal-weight input distribution.
    pub fn to_joint_uniform(&self) -> JointBehavior {
        let dist = InputDistribution::uniform(self.scenario.clone());
        self.to_joint(&dist).expect("same scenario")
    }
}

impl JointBehavior {
    pub fn new(scenario: Scenario, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != scenario.cell_count() {
            return Err(Error::MissingCell {
                expected: scenario.cell_count(),
                got: probs.len(),
            });
        }
        let b = JointBehavior { scenario, probs };
        b.validate()?;
        Ok(b)
    }

    /// Check entry range and global normalization.
    pub fn validate(&self) -> Result<()> {
        let mut sum = 0.0;
        for input in 0..self.scenario.input_tuple_count() {
            for output in 0..self.scenario.output_tuple_count() {
                let p = self.probs[self.scenario.cell_index(input, output)];
                check_entry(p, &self.scenario, input, output)?;
                sum += p;
            }
        }
        if (sum - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                input: vec![],
                sum,
            });
        }
        Ok(())
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    /// p(output, input) by flat indices.
    pub fn prob(&self, input: usize, output: usize) -> f64 {
        self.probs[self.scenario.cell_index(input, output)]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Marginal over outputs: recovers the input distribution.
    pub fn input_marginal(&self) -> InputDistribution {
        let mut probs = vec![0.0; self.scenario.input_tuple_count()];
        for (input, slot) in probs.iter_mut().enumerate() {
            for output in 0..self.scenario.output_tuple_count() {
                *slot += self.probs[self.scenario.cell_index(input, output)];
            }
        }
        InputDistribution {
            scenario: self.scenario.clone(),
            probs,
        }
    }
}

impl InputDistribution {
    pub fn new(scenario: Scenario, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != scenario.input_tuple_count() {
            return Err(Error::MissingCell {
                expected: scenario.input_tuple_count(),
                got: probs.len(),
            });
        }
        let sum: f64 = probs.iter().sum();
        if let Some(&p) = probs.iter().find(|&&p| p < -ENTRY_TOL) {
            return Err(Error::NegativeEntry {
                output: vec![],
                input: vec![],
                value: p,
            });
        }
        if (sum - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { input: vec![], sum });
        }
        Ok(InputDistribution { scenario, probs })
    }

    /// Every input tuple with probability 1/K.
    pub fn uniform(scenario: Scenario) -> Self {
        let k = scenario.input_tuple_count();
        InputDistribution {
            probs: vec![1.0 / k as f64; k],
            scenario,
        }
    }

    /// All mass on one input tuple.
    pub fn point_mass(scenario: Scenario, input: &[usize]) -> Result<Self> {
        let index = scenario.input_index(input)?;
        let mut probs = vec![0.0; scenario.input_tuple_count()];
        probs[index] = 1.0;
        Ok(InputDistribution { scenario, probs })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// p(a,x) = p(x) * p(a|x) over matching scenarios.
pub fn conditional_to_joint(
    behavior: &Behavior,
    dist: &InputDistribution,
) -> Result<JointBehavior> {
    behavior.to_joint(dist)
}

fn check_entry(p: f64, scenario: &Scenario, input: usize, output: usize) -> Result<()> {
    if !p.is_finite() || p < -ENTRY_TOL {
        return Err(Error::NegativeEntry {
            output: scenario.output_tuple(output),
            input: scenario.input_tuple(input),
            value: p,
        });
    }
    if p > 1.0 + ENTRY_TOL {
        return Err(Error::NotNormalized {
            input: scenario.input_tuple(input),
            sum: p,
        });
    }
    Ok(())
}
