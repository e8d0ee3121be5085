use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rsrepair_core::scheme::{AccessCounter, RepairPlan};
use rsrepair_core::{FieldTower, RepairScheme};
use serde::Serialize;

use crate::error::AppResult;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimulationReport {
    pub trials: usize,
    pub successes: usize,
    pub seed: u64,
    /// Subsymbols read, summed over all trials.
    pub accessed_total: u64,
    /// Subsymbols sent, summed over all trials.
    pub transmitted_total: u64,
    pub io_cost: u64,
    pub bandwidth: u64,
    /// Every trial read exactly `io_cost` subsymbols.
    pub accessed_matches: bool,
    /// Every trial sent exactly `bandwidth` subsymbols.
    pub transmitted_matches: bool,
}

impl SimulationReport {
    pub fn passed(&self) -> bool {
        self.successes == self.trials && self.accessed_matches && self.transmitted_matches
    }
}

/// Encodes `trials` random messages, erases the target, and repairs it from
/// the helpers' subsymbols.
pub fn run(tower: &FieldTower, scheme: &RepairScheme, trials: usize, seed: u64) -> AppResult<SimulationReport> {
    let metrics = scheme.metrics_direct(tower);
    let plan = RepairPlan::new(tower, scheme)?;
    let code = scheme.code();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SimulationReport {
        trials,
        successes: 0,
        seed,
        accessed_total: 0,
        transmitted_total: 0,
        io_cost: metrics.io_cost,
        bandwidth: metrics.bandwidth,
        accessed_matches: true,
        transmitted_matches: true,
    };
    for _ in 0..trials {
        let message = code.random_message(tower, &mut rng);
        let mut word = code.encode(tower, &message)?;
        let lost = std::mem::replace(&mut word[scheme.target()], rsrepair_core::Element::ZERO);
        let mut counter = AccessCounter::new(code.n());
        let got = plan.repair(tower, scheme.basis(), &word, &mut counter)?;
        report.successes += usize::from(got == lost);
        let (a, t) = (counter.total_accessed(), counter.total_transmitted());
        report.accessed_total += a;
        report.transmitted_total += t;
        report.accessed_matches &= a == metrics.io_cost;
        report.transmitted_matches &= t == metrics.bandwidth;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rsrepair_core::constructions::{construction1, ThetaStrategy};

    #[test]
    fn gf16_example() {
        let f = FieldTower::new(2, 1, 4).unwrap();
        let s = construction1(&f, ThetaStrategy::PaperExample).unwrap().scheme;
        let r = run(&f, &s, 100, 7).unwrap();
        assert!(r.passed());
        assert_eq!((r.successes, r.accessed_total, r.transmitted_total), (100, 4400, 4100));
        let empty = run(&f, &s, 0, 7).unwrap();
        assert_eq!((empty.successes, empty.accessed_total), (0, 0));
        assert!(empty.passed());
    }
}
