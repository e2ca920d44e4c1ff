//! Shared helpers for the integration suites: definition-level oracles
//! written from scratch against primitive slices, plus seeded generators for
//! random funds.

#![allow(dead_code)]
// the oracles below stay in primitive index arithmetic on purpose
#![allow(clippy::needless_range_loop)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tontine::allocation::AllocationScheme;
use tontine::model::Pool;

/// Payout vector computed straight from the defining rule, using nothing but
/// primitive arithmetic: survivors split the accumulated total in proportion
/// to their shares; the administrator takes everything when nobody survives.
pub fn oracle_payouts(
    investments: &[f64],
    admin_investment: f64,
    period_return: f64,
    shares: &[f64],
    scenario_bits: u64,
) -> Vec<f64> {
    let n = investments.len();
    let total =
        (1.0 + period_return) * (investments.iter().sum::<f64>() + admin_investment);
    let mut w = vec![0.0; n + 1];
    if scenario_bits == 0 {
        w[n] = total;
        return w;
    }
    let mut surviving_shares = 0.0;
    for j in 0..n {
        if scenario_bits >> j & 1 == 1 {
            surviving_shares += shares[j];
        }
    }
    for i in 0..n {
        if scenario_bits >> i & 1 == 1 {
            w[i] = total * shares[i] / surviving_shares;
        }
    }
    w
}

/// Scenario probability under independence, computed inline.
pub fn oracle_scenario_probability(survival_probs: &[f64], scenario_bits: u64) -> f64 {
    let mut prob = 1.0;
    for (j, &p) in survival_probs.iter().enumerate() {
        prob *= if scenario_bits >> j & 1 == 1 { p } else { 1.0 - p };
    }
    prob
}

/// Expected payouts by the naive double loop: probability times payout,
/// summed in plain order over every scenario.
pub fn oracle_expected_payouts(
    investments: &[f64],
    survival_probs: &[f64],
    admin_investment: f64,
    period_return: f64,
    shares: &[f64],
) -> Vec<f64> {
    let n = investments.len();
    let mut acc = vec![0.0; n + 1];
    for bits in 0..1u64 << n {
        let prob = oracle_scenario_probability(survival_probs, bits);
        let w = oracle_payouts(investments, admin_investment, period_return, shares, bits);
        for (a, wi) in acc.iter_mut().zip(&w) {
            *a += prob * wi;
        }
    }
    acc
}

/// A random pool drawn from the documented acceptance ranges.
pub fn random_pool(
    rng: &mut ChaCha8Rng,
    n_range: std::ops::RangeInclusive<usize>,
    admin_max: f64,
) -> Pool {
    let n = rng.gen_range(n_range);
    let investments: Vec<f64> = (0..n).map(|_| rng.gen_range(1.0..100.0)).collect();
    let survival_probs: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..0.95)).collect();
    let admin_investment = if admin_max > 0.0 {
        rng.gen_range(0.0..admin_max)
    } else {
        0.0
    };
    let period_return = rng.gen_range(0.0..0.1);
    Pool::from_slices(&investments, &survival_probs, admin_investment, period_return)
}

/// One of the named schemes, drawn uniformly.
pub fn random_scheme(rng: &mut ChaCha8Rng, n: usize) -> AllocationScheme {
    match rng.gen_range(0..5) {
        0 => AllocationScheme::Dm,
        1 => AllocationScheme::T,
        2 => AllocationScheme::Dr,
        3 => AllocationScheme::Reciprocal,
        _ => AllocationScheme::Literal((0..n).map(|_| rng.gen_range(0.1..10.0)).collect()),
    }
}

pub fn max_relative_difference(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()).max(1.0))
        .fold(0.0, f64::max)
}
