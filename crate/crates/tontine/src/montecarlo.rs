//! Seeded Monte Carlo estimation of expected payouts.
//!
//! Every sample draws its own generator, keyed by the run seed and the
//! sample index (a ChaCha stream per sample). Samples are processed in
//! fixed-size chunks whose running moments are merged in chunk order, so a
//! run is bit-identical for a given seed regardless of how many worker
//! threads participate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::allocation::ShareAllocation;
use crate::error::{Error, Result};
use crate::model::{Pool, Scenario, SurvivalModel};
use crate::payout::payouts;

/// Fewest samples accepted for an estimate.
pub const MIN_SAMPLES: u64 = 1000;
/// Joint tables are sampled through an alias table, kept to 2^24 entries.
pub const MAX_JOINT_SAMPLING_N: usize = 24;
/// Above this all-dead fraction, rejection makes conditional estimates wasteful.
pub const REJECTION_WARNING_THRESHOLD: f64 = 0.2;

const CHUNK_SAMPLES: u64 = 4096;

/// Monte Carlo estimate of the expected payouts.
#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    /// Estimated expected payout per party, administrator last.
    pub mean: Vec<f64>,
    /// Standard error of each mean.
    pub std_error: Vec<f64>,
    /// Estimated expected payout given at least one survivor, over the
    /// accepted subsample. Absent when every draw was all-dead.
    pub conditional_mean: Option<Vec<f64>>,
    /// Standard errors of the conditional means; absent when fewer than two
    /// draws were accepted.
    pub conditional_std_error: Option<Vec<f64>>,
    /// Total samples drawn; all of them feed the unconditional estimate.
    pub samples_used: u64,
    /// All-dead draws, rejected from the conditional estimate only.
    pub samples_rejected: u64,
    /// Seed that reproduces this estimate bit for bit.
    pub seed: u64,
    /// Set when the all-dead fraction exceeds the rejection threshold.
    pub high_rejection_rate: bool,
}

/// Running first and second moments, mergeable in fixed order.
#[derive(Debug, Clone)]
struct Moments {
    count: u64,
    mean: Vec<f64>,
    m2: Vec<f64>,
}

impl Moments {
    fn new(dim: usize) -> Self {
        Self {
            count: 0,
            mean: vec![0.0; dim],
            m2: vec![0.0; dim],
        }
    }

    fn push(&mut self, values: &[f64]) {
        self.count += 1;
        let k = self.count as f64;
        for (i, &x) in values.iter().enumerate() {
            let delta = x - self.mean[i];
            self.mean[i] += delta / k;
            self.m2[i] += delta * (x - self.mean[i]);
        }
    }

    fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            self.count = other.count;
            self.mean.copy_from_slice(&other.mean);
            self.m2.copy_from_slice(&other.m2);
            return;
        }
        let na = self.count as f64;
        let nb = other.count as f64;
        let nab = na + nb;
        for i in 0..self.mean.len() {
            let delta = other.mean[i] - self.mean[i];
            self.mean[i] += delta * nb / nab;
            self.m2[i] += other.m2[i] + delta * delta * na * nb / nab;
        }
        self.count += other.count;
    }

    fn std_errors(&self) -> Vec<f64> {
        let n = self.count as f64;
        self.m2
            .iter()
            .map(|m2| (m2 / (n - 1.0)).sqrt() / n.sqrt())
            .collect()
    }
}

/// Walker alias table for sampling a finite distribution in O(1).
struct AliasTable {
    prob: Vec<f64>,
    alias: Vec<u32>,
}

impl AliasTable {
    fn new(weights: &[f64]) -> Self {
        let k = weights.len();
        let total: f64 = weights.iter().sum();
        let mut scaled: Vec<f64> = weights.iter().map(|w| w * k as f64 / total).collect();
        let mut prob = vec![1.0; k];
        let mut alias: Vec<u32> = (0..k as u32).collect();
        let mut small: Vec<usize> = Vec::new();
        let mut large: Vec<usize> = Vec::new();
        for (i, &s) in scaled.iter().enumerate() {
            if s < 1.0 {
                small.push(i);
            } else {
                large.push(i);
            }
        }
        while let (Some(s), Some(l)) = (small.pop(), large.pop()) {
            prob[s] = scaled[s];
            alias[s] = l as u32;
            scaled[l] = (scaled[l] + scaled[s]) - 1.0;
            if scaled[l] < 1.0 {
                small.push(l);
            } else {
                large.push(l);
            }
        }
        // leftovers are numerically 1
        Self { prob, alias }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> usize {
        let i = rng.gen_range(0..self.prob.len());
        if rng.gen::<f64>() < self.prob[i] {
            i
        } else {
            self.alias[i] as usize
        }
    }
}

enum ScenarioSampler<'a> {
    Independent(&'a [f64]),
    Joint(AliasTable),
}

impl ScenarioSampler<'_> {
    fn draw<R: Rng>(&self, rng: &mut R, n: usize) -> Scenario {
        let index = match self {
            ScenarioSampler::Independent(probs) => {
                let mut index = 0u64;
                for (i, &p) in probs.iter().enumerate() {
                    if rng.gen::<f64>() < p {
                        index |= 1 << i;
                    }
                }
                index
            }
            ScenarioSampler::Joint(alias) => alias.sample(rng) as u64,
        };
        Scenario::new(index, n).expect("sampled index below 2^n")
    }
}

/// Estimates expected payouts from `n_samples` seeded draws.
pub fn simulate(
    pool: &Pool,
    allocation: &ShareAllocation,
    model: &SurvivalModel,
    n_samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    let n = pool.n();
    if allocation.n() != n || model.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "pool has {n} participants, allocation {}, model {}",
            allocation.n(),
            model.n()
        )));
    }
    if n_samples < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            min: MIN_SAMPLES,
            got: n_samples,
        });
    }
    let sampler = match model {
        SurvivalModel::Independent { survival_probs } => {
            ScenarioSampler::Independent(survival_probs)
        }
        SurvivalModel::JointTable { n, probs } => {
            if *n > MAX_JOINT_SAMPLING_N {
                return Err(Error::JointSamplingTooLarge {
                    n: *n,
                    max: MAX_JOINT_SAMPLING_N,
                });
            }
            ScenarioSampler::Joint(AliasTable::new(probs))
        }
    };

    let base_rng = ChaCha8Rng::seed_from_u64(seed);
    let chunks = n_samples.div_ceil(CHUNK_SAMPLES);
    let partials: Vec<(Moments, Moments, u64)> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * CHUNK_SAMPLES;
            let hi = (lo + CHUNK_SAMPLES).min(n_samples);
            let mut all = Moments::new(n + 1);
            let mut accepted = Moments::new(n + 1);
            let mut rejected = 0u64;
            for sample in lo..hi {
                let mut rng = base_rng.clone();
                rng.set_stream(sample);
                let scenario = sampler.draw(&mut rng, n);
                let pv = payouts(pool, allocation, scenario);
                all.push(&pv.payouts);
                if scenario.all_dead() {
                    rejected += 1;
                } else {
                    accepted.push(&pv.payouts);
                }
            }
            (all, accepted, rejected)
        })
        .collect();

    let mut all = Moments::new(n + 1);
    let mut accepted = Moments::new(n + 1);
    let mut samples_rejected = 0u64;
    for (part_all, part_accepted, part_rejected) in &partials {
        all.merge(part_all);
        accepted.merge(part_accepted);
        samples_rejected += part_rejected;
    }

    let conditional_mean = (accepted.count > 0).then(|| accepted.mean.clone());
    let conditional_std_error = (accepted.count > 1).then(|| accepted.std_errors());
    let rejection_rate = samples_rejected as f64 / n_samples as f64;

    Ok(McEstimate {
        mean: all.mean.clone(),
        std_error: all.std_errors(),
        conditional_mean,
        conditional_std_error,
        samples_used: n_samples,
        samples_rejected,
        seed,
        high_rejection_rate: rejection_rate > REJECTION_WARNING_THRESHOLD,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocation::{dm_scheme, dr_scheme};
    use crate::expectation::enumerate;
    use crate::model::Pool;
    use approx::assert_abs_diff_eq;

    fn example_pool() -> Pool {
        Pool::from_slices(&[80.0, 50.0, 20.0], &[0.2, 0.5, 0.8], 0.0, 0.0)
    }

    #[test]
    fn estimates_land_within_four_standard_errors_of_the_exact_values() {
        let pool = example_pool();
        let f = dm_scheme(&pool);
        let model = pool.independent_model();
        let exact = enumerate(&pool, &f, &model).unwrap();
        let estimate = simulate(&pool, &f, &model, 200_000, 42).unwrap();
        for i in 0..4 {
            let err = estimate.std_error[i].max(1e-12);
            assert!(
                (estimate.mean[i] - exact.expected_payout[i]).abs() <= 4.0 * err,
                "party {i}: mean {} vs exact {} (se {err})",
                estimate.mean[i],
                exact.expected_payout[i]
            );
        }
    }

    #[test]
    fn estimated_means_sum_to_the_accumulated_total() {
        // payouts conserve the fund sample by sample, so the means do too
        let pool = Pool::from_slices(&[80.0, 50.0, 20.0], &[0.2, 0.5, 0.8], 13.0, 0.04);
        let f = dm_scheme(&pool);
        let estimate = simulate(&pool, &f, &pool.independent_model(), 10_000, 7).unwrap();
        let sum: f64 = estimate.mean.iter().sum();
        assert_abs_diff_eq!(
            sum,
            pool.accumulated_total(),
            epsilon = 1e-9 * pool.accumulated_total()
        );
    }

    #[test]
    fn identical_seeds_reproduce_identical_estimates() {
        let pool = example_pool();
        let f = dm_scheme(&pool);
        let model = pool.independent_model();
        let a = simulate(&pool, &f, &model, 50_000, 12345).unwrap();
        let b = simulate(&pool, &f, &model, 50_000, 12345).unwrap();
        assert_eq!(a, b);
        let c = simulate(&pool, &f, &model, 50_000, 54321).unwrap();
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn joint_table_sampling_matches_the_exact_expectation() {
        let pool = Pool::from_slices(&[10.0, 20.0], &[0.3, 0.6], 1.0, 0.0);
        // a correlated table: both die more often than independence implies
        let model = SurvivalModel::joint_table(2, vec![0.38, 0.12, 0.32, 0.18]);
        let f = dr_scheme(2).unwrap();
        let exact = enumerate(&pool, &f, &model).unwrap();
        let estimate = simulate(&pool, &f, &model, 400_000, 9).unwrap();
        for i in 0..3 {
            let err = estimate.std_error[i].max(1e-12);
            assert!((estimate.mean[i] - exact.expected_payout[i]).abs() <= 4.0 * err);
        }
        assert!(estimate.high_rejection_rate);
    }

    #[test]
    fn conditional_estimates_are_absent_when_every_draw_is_all_dead() {
        let pool = Pool::from_slices(&[1.0, 1.0], &[1e-12, 1e-12], 0.0, 0.0);
        let estimate = simulate(
            &pool,
            &dr_scheme(2).unwrap(),
            &pool.independent_model(),
            1000,
            3,
        )
        .unwrap();
        assert_eq!(estimate.samples_rejected, 1000);
        assert!(estimate.conditional_mean.is_none());
        assert!(estimate.conditional_std_error.is_none());
        assert!(estimate.high_rejection_rate);
    }

    #[test]
    fn joint_tables_wider_than_the_alias_cap_are_refused() {
        let n = 25;
        let pool = Pool::from_slices(&vec![1.0; n], &vec![0.5; n], 0.0, 0.0);
        let model = SurvivalModel::JointTable {
            n,
            probs: Vec::new(),
        };
        let err = simulate(&pool, &dr_scheme(n).unwrap(), &model, 1000, 1).unwrap_err();
        assert!(matches!(err, Error::JointSamplingTooLarge { n: 25, max: 24 }));
    }

    #[test]
    fn too_few_samples_are_refused() {
        let pool = example_pool();
        let err = simulate(
            &pool,
            &dm_scheme(&pool),
            &pool.independent_model(),
            999,
            1,
        )
        .unwrap_err();
        assert!(matches!(err, Error::TooFewSamples { .. }));
    }

    #[test]
    fn conditional_means_track_the_exact_conditional_expectation() {
        let pool = example_pool();
        let f = dm_scheme(&pool);
        let model = pool.independent_model();
        let exact = enumerate(&pool, &f, &model).unwrap();
        let estimate = simulate(&pool, &f, &model, 200_000, 8).unwrap();
        let cond = estimate.conditional_mean.as_ref().unwrap();
        let cond_se = estimate.conditional_std_error.as_ref().unwrap();
        for i in 0..3 {
            let err = cond_se[i].max(1e-12);
            assert!((cond[i] - exact.conditional_expected_payout[i]).abs() <= 4.0 * err);
        }
    }
}
