//! Bell scenarios: party count and per-party input/output alphabet sizes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Bell scenario: how many parties there are and how many inputs and
/// outputs each party has.
///
/// Input tuples and output tuples are flattened to indices in mixed-radix
/// order with party 0 as the most significant digit; all dense tables in
/// this crate share that layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    parties: usize,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
}

impl Scenario {
    /// Build a scenario from per-party input and output alphabet sizes.
    pub fn new(inputs: Vec<usize>, outputs: Vec<usize>) -> Result<Self> {
        if inputs.is_empty() || inputs.len() != outputs.len() {
            return Err(Error::InvalidParams(format!(
                "need matching non-empty alphabets, got {} input and {} output entries",
                inputs.len(),
                outputs.len()
            )));
        }
        if inputs.iter().chain(outputs.iter()).any(|&n| n == 0) {
            return Err(Error::InvalidParams(
                "alphabet sizes must be at least 1".into(),
            ));
        }
        let parties = inputs.len();
        let scenario = Scenario {
            parties,
            inputs,
            outputs,
        };
        // Tuple counts must stay representable; checked_product errors out
        // on overflow instead of wrapping.
        checked_product(&scenario.inputs)?;
        checked_product(&scenario.outputs)?;
        Ok(scenario)
    }

    /// Two parties with `m` inputs and `n` outputs each.
    pub fn bipartite(m: usize, n: usize) -> Self {
        Scenario::new(vec![m, m], vec![n, n]).expect("positive alphabet sizes")
    }

    /// The Peres-Mermin scenario: 2 parties, 3 inputs, 4 outputs each.
    pub fn peres_mermin() -> Self {
        Scenario::bipartite(3, 4)
    }

    /// The tripartite Mermin scenario: 3 parties, 2 inputs, 2 outputs each.
    pub fn mermin() -> Self {
        Scenario::new(vec![2, 2, 2], vec![2, 2, 2]).expect("positive alphabet sizes")
    }

    /// The CHSH scenario: 2 parties, 2 inputs, 2 outputs each.
    pub fn chsh() -> Self {
        Scenario::bipartite(2, 2)
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    /// Per-party input alphabet sizes.
    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    /// Per-party output alphabet sizes.
    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    /// Number of joint input tuples, K.
    pub fn input_tuple_count(&self) -> usize {
        self.inputs.iter().product()
    }

    /// Number of joint output tuples.
    pub fn output_tuple_count(&self) -> usize {
        self.outputs.iter().product()
    }

    /// Number of cells in a dense (outputs x inputs) table.
    pub fn cell_count(&self) -> usize {
        self.input_tuple_count() * self.output_tuple_count()
    }

    /// Flat index of an input tuple.
    pub fn input_index(&self, tuple: &[usize]) -> Result<usize> {
        tuple_index(tuple, &self.inputs).ok_or_else(|| {
            Error::InvalidSpec(format!("input tuple {tuple:?} outside scenario {self:?}"))
        })
    }

    /// Flat index of an output tuple.
    pub fn output_index(&self, tuple: &[usize]) -> Result<usize> {
        tuple_index(tuple, &self.outputs).ok_or_else(|| {
            Error::InvalidSpec(format!("output tuple {tuple:?} outside scenario {self:?}"))
        })
    }

    /// Input tuple for a flat index.
    pub fn input_tuple(&self, index: usize) -> Vec<usize> {
        tuple_of_index(index, &self.inputs)
    }

    /// Output tuple for a flat index.
    pub fn output_tuple(&self, index: usize) -> Vec<usize> {
        tuple_of_index(index, &self.outputs)
    }

    /// Flat cell index for an (input, output) pair of flat indices.
    pub fn cell_index(&self, input: usize, output: usize) -> usize {
        input * self.output_tuple_count() + output
    }

    /// All input tuples in flat-index order.
    pub fn input_tuples(&self) -> Vec<Vec<usize>> {
        (0..self.input_tuple_count())
            .map(|k| self.input_tuple(k))
            .collect()
    }

    /// All output tuples in flat-index order.
    pub fn output_tuples(&self) -> Vec<Vec<usize>> {
        (0..self.output_tuple_count())
            .map(|k| self.output_tuple(k))
            .collect()
    }
}

fn checked_product(sizes: &[usize]) -> Result<usize> {
    sizes.iter().try_fold(1usize, |acc, &n| {
        acc.checked_mul(n).ok_or(Error::TooLarge {
            required: u128::MAX,
            cap: usize::MAX as u128,
        })
    })
}

fn tuple_index(tuple: &[usize], radices: &[usize]) -> Option<usize> {
    if tuple.len() != radices.len() {
        return None;
    }
    let mut index = 0usize;
    for (&digit, &radix) in tuple.iter().zip(radices) {
        if digit >= radix {
            return None;
        }
        index = index * radix + digit;
    }
    Some(index)
}

fn tuple_of_index(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut tuple = vec![0usize; radices.len()];
    for i in (0..radices.len()).rev() {
        tuple[i] = index % radices[i];
        index /= radices[i];
    }
    tuple
}
