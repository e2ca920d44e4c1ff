//! Exact expectations by enumerating all 2^n survival scenarios.
//!
//! The sweep is partitioned into fixed-size chunks. Chunks may be evaluated
//! in parallel, each accumulating into compensated sums, and the partial
//! results are folded in chunk order, so the output is bit-identical no
//! matter how many worker threads run.

use rayon::prelude::*;

use crate::allocation::ShareAllocation;
use crate::error::{Error, Result};
use crate::model::{Pool, Scenario, SurvivalModel};
use crate::numeric::KahanSum;
use crate::payout::{payouts, PayoutVector};

/// Largest pool enumerated exactly by default (2^20 scenarios); larger pools
/// should be estimated by Monte Carlo.
pub const DEFAULT_MAX_EXACT_N: usize = 20;

const CHUNK_SCENARIOS: u64 = 1 << 12;

/// Probability-weighted payout summary of a fund.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationReport {
    /// Expected payout per party, administrator last.
    pub expected_payout: Vec<f64>,
    /// Expected payout per party given at least one survivor; the
    /// administrator's entry is zero by construction.
    pub conditional_expected_payout: Vec<f64>,
    /// Probability that every participant dies.
    pub prob_all_dead: f64,
    /// Expected total paid to the participants as a group.
    pub group_expected_payout: f64,
}

fn check_dimensions(pool: &Pool, allocation: &ShareAllocation, model: &SurvivalModel) -> Result<()> {
    let n = pool.n();
    if allocation.n() != n || model.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "pool has {n} participants, allocation {}, model {}",
            allocation.n(),
            model.n()
        )));
    }
    Ok(())
}

fn check_enumerable(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::EnumerationTooLarge { n, limit });
    }
    Ok(())
}

/// Exact expected payouts under the default enumeration limit.
pub fn enumerate(
    pool: &Pool,
    allocation: &ShareAllocation,
    model: &SurvivalModel,
) -> Result<ExpectationReport> {
    enumerate_with_limit(pool, allocation, model, DEFAULT_MAX_EXACT_N)
}

/// Exact expected payouts, enumerating all 2^n scenarios.
pub fn enumerate_with_limit(
    pool: &Pool,
    allocation: &ShareAllocation,
    model: &SurvivalModel,
    max_n: usize,
) -> Result<ExpectationReport> {
    check_dimensions(pool, allocation, model)?;
    let n = pool.n();
    check_enumerable(n, max_n)?;

    let total_scenarios = 1u64 << n;
    let chunks = total_scenarios.div_ceil(CHUNK_SCENARIOS);
    let partials: Vec<Vec<KahanSum>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * CHUNK_SCENARIOS;
            let hi = (lo + CHUNK_SCENARIOS).min(total_scenarios);
            let mut acc = vec![KahanSum::new(); n + 1];
            for index in lo..hi {
                let scenario = Scenario::new(index, n).expect("index below 2^n");
                let prob = model
                    .scenario_probability(scenario)
                    .expect("dimensions checked");
                let pv = payouts(pool, allocation, scenario);
                for (sum, w) in acc.iter_mut().zip(&pv.payouts) {
                    sum.add(prob * w);
                }
            }
            acc
        })
        .collect();

    let mut totals = vec![KahanSum::new(); n + 1];
    for partial in partials {
        for (total, part) in totals.iter_mut().zip(partial) {
            total.merge(part);
        }
    }
    let expected_payout: Vec<f64> = totals.iter().map(KahanSum::value).collect();

    let prob_all_dead = model.prob_all_dead();
    let prob_some_survive = 1.0 - prob_all_dead;
    let mut conditional_expected_payout: Vec<f64> = expected_payout
        .iter()
        .map(|e| e / prob_some_survive)
        .collect();
    // nobody pays the administrator while a participant lives
    conditional_expected_payout[n] = 0.0;

    let group_expected_payout = expected_payout[..n]
        .iter()
        .copied()
        .collect::<KahanSum>()
        .value();

    Ok(ExpectationReport {
        expected_payout,
        conditional_expected_payout,
        prob_all_dead,
        group_expected_payout,
    })
}

/// Conditional expected share fractions
/// `E[f_i 1{i survives} / (surviving shares) | at least one survivor]`
/// for every participant at once.
pub fn expected_share_fractions(
    allocation: &ShareAllocation,
    model: &SurvivalModel,
) -> Result<Vec<f64>> {
    expected_share_fractions_with_limit(allocation, model, DEFAULT_MAX_EXACT_N)
}

pub fn expected_share_fractions_with_limit(
    allocation: &ShareAllocation,
    model: &SurvivalModel,
    max_n: usize,
) -> Result<Vec<f64>> {
    let n = allocation.n();
    if model.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "allocation covers {n} participants, model {}",
            model.n()
        )));
    }
    check_enumerable(n, max_n)?;

    let total_scenarios = 1u64 << n;
    let chunks = total_scenarios.div_ceil(CHUNK_SCENARIOS);
    let partials: Vec<Vec<KahanSum>> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * CHUNK_SCENARIOS;
            let hi = (lo + CHUNK_SCENARIOS).min(total_scenarios);
            let mut acc = vec![KahanSum::new(); n];
            for index in lo.max(1)..hi {
                let scenario = Scenario::new(index, n).expect("index below 2^n");
                let prob = model
                    .scenario_probability(scenario)
                    .expect("dimensions checked");
                let surviving = allocation.surviving_shares(scenario);
                for (i, sum) in acc.iter_mut().enumerate() {
                    if scenario.survives(i) {
                        sum.add(prob * allocation.shares[i] / surviving);
                    }
                }
            }
            acc
        })
        .collect();

    let mut totals = vec![KahanSum::new(); n];
    for partial in partials {
        for (total, part) in totals.iter_mut().zip(partial) {
            total.merge(part);
        }
    }
    let prob_some_survive = model.prob_some_survive();
    Ok(totals
        .iter()
        .map(|t| t.value() / prob_some_survive)
        .collect())
}

/// Conditional expected share fraction of a single participant (0-based).
pub fn expected_share_fraction(
    allocation: &ShareAllocation,
    model: &SurvivalModel,
    participant: usize,
) -> Result<f64> {
    if participant >= allocation.n() {
        return Err(Error::InvalidInput(format!(
            "participant index {participant} out of range for {} participants",
            allocation.n()
        )));
    }
    Ok(expected_share_fractions(allocation, model)?[participant])
}

/// One row of the scenario-by-scenario payout table.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionRow {
    pub scenario: Scenario,
    pub probability: f64,
    pub payouts: PayoutVector,
}

/// The full finite payout distribution, one row per scenario in ascending
/// bitmask order.
pub fn payout_distribution(
    pool: &Pool,
    allocation: &ShareAllocation,
    model: &SurvivalModel,
) -> Result<Vec<DistributionRow>> {
    payout_distribution_with_limit(pool, allocation, model, DEFAULT_MAX_EXACT_N)
}

pub fn payout_distribution_with_limit(
    pool: &Pool,
    allocation: &ShareAllocation,
    model: &SurvivalModel,
    max_n: usize,
) -> Result<Vec<DistributionRow>> {
    check_dimensions(pool, allocation, model)?;
    check_enumerable(pool.n(), max_n)?;
    Scenario::all(pool.n())
        .map(|scenario| {
            Ok(DistributionRow {
                scenario,
                probability: model.scenario_probability(scenario)?,
                payouts: payouts(pool, allocation, scenario),
            })
        })
        .collect()
}
