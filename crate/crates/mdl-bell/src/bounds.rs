//! Exact local and algebraic bounds by exhaustive enumeration, plus the
//! positive/negative quantum parts of a functional on a behavior.

use crate::behavior::Behavior;
use crate::error::{Error, Result};
use crate::functional::{BellFunctional, Kind};
use crate::scan::{parallel_argmax, ScanOptions};
use crate::scenario::Scenario;

/// A deterministic response strategy: for each party, a map from input
/// symbol to output symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterministicStrategy {
    pub outputs: Vec<Vec<usize>>,
}

impl DeterministicStrategy {
    /// Number of strategies for a scenario: prod over parties of n^m.
    pub fn count(scenario: &Scenario) -> u128 {
        scenario
            .inputs()
            .iter()
            .zip(scenario.outputs())
            .fold(1u128, |acc, (&m, &n)| {
                acc.saturating_mul((n as u128).saturating_pow(m as u32))
            })
    }

    /// Decode an enumeration index. Indices order strategies
    /// lexicographically by their flattened (party, input) -> output digits,
    /// party 0 / input 0 most significant.
    pub fn from_index(scenario: &Scenario, index: u64) -> Self {
        let mut digits = Vec::new();
        for (&m, &n) in scenario.inputs().iter().zip(scenario.outputs()) {
            for _ in 0..m {
                digits.push(n);
            }
        }
        let mut rest = index as u128;
        let mut flat = vec![0usize; digits.len()];
        for (slot, &radix) in flat.iter_mut().zip(&digits).rev() {
            *slot = (rest % radix as u128) as usize;
            rest /= radix as u128;
        }
        let mut outputs = Vec::with_capacity(scenario.parties());
        let mut offset = 0;
        for &m in scenario.inputs() {
            outputs.push(flat[offset..offset + m].to_vec());
            offset += m;
        }
        DeterministicStrategy { outputs }
    }

    /// Re-encode to the enumeration index (inverse of `from_index`).
    pub fn to_index(&self, scenario: &Scenario) -> u64 {
        let mut index = 0u128;
        for (party, &m) in scenario.inputs().iter().enumerate() {
            let n = scenario.outputs()[party] as u128;
            for input in 0..m {
                index = index * n + self.outputs[party][input] as u128;
            }
        }
        index as u64
    }

    /// Joint output tuple index for a joint input tuple index.
    pub fn response(&self, scenario: &Scenario, input_index: usize) -> usize {
        let inputs = scenario.input_tuple(input_index);
        let tuple: Vec<usize> = inputs
            .iter()
            .enumerate()
            .map(|(party, &x)| self.outputs[party][x])
            .collect();
        scenario.output_index(&tuple).expect("in-range outputs")
    }

    /// The deterministic conditional behavior this strategy induces.
    pub fn behavior(&self, scenario: &Scenario) -> Behavior {
        let mut probs = vec![0.0; scenario.cell_count()];
        for input in 0..scenario.input_tuple_count() {
            let output = self.response(scenario, input);
            probs[scenario.cell_index(input, output)] = 1.0;
        }
        Behavior::new(scenario.clone(), probs).expect("deterministic table is normalized")
    }
}

/// Where a bound is attained.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// A deterministic strategy (local bounds).
    Strategy(DeterministicStrategy),
    /// A single cell (algebraic bounds): (input tuple, output tuple).
    Cell {
        inputs: Vec<usize>,
        outputs: Vec<usize>,
    },
    /// One cell per input tuple (conditional algebraic bound).
    CellPerInput(Vec<Vec<usize>>),
}

/// A bound value together with a witness that attains it.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub value: f64,
    pub witness: Witness,
}

/// Exact local bound: maximum of a conditional functional over all
/// deterministic strategies. The witness is the lexicographically smallest
/// maximizer, so results do not depend on worker count.
pub fn local_bound(f: &BellFunctional, opts: &ScanOptions) -> Result<BoundReport> {
    if f.kind() != Kind::Conditional {
        return Err(Error::KindMismatch {
            expected: "conditional",
            got: "joint",
        });
    }
    let scenario = f.scenario();
    let total = DeterministicStrategy::count(scenario);
    opts.check_cap(total)?;
    let n = total as u64;

    let best = parallel_argmax(n, opts.workers, |index| {
        let strategy = DeterministicStrategy::from_index(scenario, index);
        strategy_value(f, &strategy)
    });
    let strategy = DeterministicStrategy::from_index(scenario, best.index);
    Ok(BoundReport {
        value: best.value,
        witness: Witness::Strategy(strategy),
    })
}

/// Value of a conditional functional on a deterministic strategy:
/// sum over inputs of the coefficient at the strategy's response cell.
pub fn strategy_value(f: &BellFunctional, strategy: &DeterministicStrategy) -> f64 {
    let scenario = f.scenario();
    let mut value = 0.0;
    for input in 0..scenario.input_tuple_count() {
        let output = strategy.response(scenario, input);
        value += f.coeff(input, output);
    }
    value
}

/// Exact algebraic bound.
///
/// Conditional kind: each input's distribution is free, so the bound is the
/// sum over inputs of the largest cell coefficient. Joint kind: one global
/// distribution can sit on a single cell, so the bound is the largest
/// coefficient overall.
pub fn algebraic_bound(f: &BellFunctional) -> BoundReport {
    let scenario = f.scenario();
    match f.kind() {
        Kind::Conditional => {
            let mut value = 0.0;
            let mut cells = Vec::with_capacity(scenario.input_tuple_count());
            for input in 0..scenario.input_tuple_count() {
                let (mut best_w, mut best_out) = (f.coeff(input, 0), 0usize);
                for output in 1..scenario.output_tuple_count() {
                    let w = f.coeff(input, output);
                    if w > best_w {
                        best_w = w;
                        best_out = output;
                    }
                }
                value += best_w;
                cells.push(scenario.output_tuple(best_out));
            }
            BoundReport {
                value,
                witness: Witness::CellPerInput(cells),
            }
        }
        Kind::Joint => {
            let (mut best_w, mut best_cell) = (f.coeffs()[0], 0usize);
            for (cell, &w) in f.coeffs().iter().enumerate() {
                if w > best_w {
                    best_w = w;
                    best_cell = cell;
                }
            }
            let outs = scenario.output_tuple_count();
            BoundReport {
                value: best_w,
                witness: Witness::Cell {
                    inputs: scenario.input_tuple(best_cell / outs),
                    outputs: scenario.output_tuple(best_cell % outs),
                },
            }
        }
    }
}

/// Positive and negative quantum parts (sum of w+ * p, sum of w- * p).
/// Their difference equals the plain evaluation.
pub fn quantum_parts(f: &BellFunctional, b: &Behavior) -> Result<(f64, f64)> {
    if f.scenario() != b.scenario() {
        return Err(Error::ScenarioMismatch(
            "functional and behavior disagree".into(),
        ));
    }
    let mut plus = 0.0;
    let mut minus = 0.0;
    for (cell, &p) in b.probs().iter().enumerate() {
        plus += f.coeff_plus(cell) * p;
        minus += f.coeff_minus(cell) * p;
    }
    Ok((plus, minus))
}
