//! End-to-end acceptance checks, one test per advertised guarantee.
//!
//! Run `cargo test -p tontine --test acceptance -- --nocapture` to see one
//! PASS line per criterion; a failed assertion marks the criterion red.

mod common;

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{max_relative_difference, random_pool, random_scheme};
use tontine::allocation::{dm_scheme, dr_scheme, AllocationScheme, ShareAllocation};
use tontine::drs::{
    compensation_to_contribution, contribution_to_compensation, proportional_compensation,
    tontine_claims, uniform_contribution, ClaimsDistribution, Outcome, PremiumVector,
};
use tontine::expectation::{enumerate, payout_distribution};
use tontine::fairness::{
    check_fairness, solve_fair_investments, solve_fair_investments_internal,
    uniform_exchangeable_fair_investment, DEFAULT_FAIRNESS_TOLERANCE, DEFAULT_MAX_ITERATIONS,
    DEFAULT_SOLVER_TOLERANCE,
};
use tontine::irr::{annuity_irr, annuity_future_value};
use tontine::model::{Pool, Scenario, SurvivalModel};
use tontine::montecarlo::simulate;
use tontine::payout::payouts;

fn pass(criterion: &str) {
    println!("PASS: {criterion}");
}

fn example_pool() -> Pool {
    Pool::from_slices(&[80.0, 50.0, 20.0], &[0.2, 0.5, 0.8], 0.0, 0.0)
}

/// The published three-person table: bitmask index, probability, payouts.
const PUBLISHED_TABLE: [(u64, f64, [f64; 4]); 8] = [
    (7, 0.08, [114.29, 28.57, 7.14, 0.0]),
    (6, 0.32, [0.0, 120.0, 30.0, 0.0]),
    (4, 0.32, [0.0, 0.0, 150.0, 0.0]),
    (5, 0.08, [141.18, 0.0, 8.82, 0.0]),
    (3, 0.02, [120.0, 30.0, 0.0, 0.0]),
    (1, 0.02, [150.0, 0.0, 0.0, 0.0]),
    (2, 0.08, [0.0, 150.0, 0.0, 0.0]),
    (0, 0.08, [0.0, 0.0, 0.0, 150.0]),
];

#[test]
fn criterion_1_three_person_table_reproduction() {
    let started = Instant::now();
    let pool = example_pool();
    let rows = payout_distribution(&pool, &dm_scheme(&pool), &pool.independent_model()).unwrap();
    assert_eq!(rows.len(), 8);

    for (index, probability, expected_payouts) in PUBLISHED_TABLE {
        let row = &rows[index as usize];
        assert!(
            (row.probability - probability).abs() <= 1e-15,
            "scenario {index}: probability {} != {probability}",
            row.probability
        );
        // every participant entry, zero or not, against the printed table
        for (party, want) in expected_payouts.iter().enumerate() {
            let got = row.payouts.payouts[party];
            assert!(
                (got - want).abs() <= 0.005,
                "scenario {index}, party {party}: {got} vs {want}"
            );
        }
    }

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    pass(&format!(
        "criterion 1: three-person table matches all 32 entries within 0.005 and all 8 probabilities exactly ({elapsed:?})"
    ));
}

#[test]
fn criterion_2_group_expectation_and_game_odds() {
    let pool = example_pool();
    let report = enumerate(&pool, &dm_scheme(&pool), &pool.independent_model()).unwrap();
    assert!(
        (report.group_expected_payout - 138.0).abs() <= 1e-9 * 138.0,
        "group expectation {}",
        report.group_expected_payout
    );

    // coin-versus-die game: the administrator wins with probability 5/12
    let game = Pool::from_slices(&[1.0, 1.0], &[0.5, 1.0 / 6.0], 0.0, 0.0);
    let game_report = enumerate(&game, &dr_scheme(2).unwrap(), &game.independent_model()).unwrap();
    assert_eq!(game_report.prob_all_dead, 5.0 / 12.0);

    pass("criterion 2: group expectation 138.00 within 1e-9 and coin/die administrator odds exactly 5/12");
}

#[test]
fn criterion_3_internal_rate_of_return() {
    let cases = [(20u32, 0.01f64), (10, -0.016), (30, 0.02)];
    for (benefit_years, quoted) in cases {
        let rate = annuity_irr(10_000.0, 40, 27_000.0, benefit_years).unwrap();
        assert!(
            (rate - quoted).abs() <= 5e-4,
            "{benefit_years}-year benefit: rate {rate} vs quoted {quoted}"
        );
    }
    let rate_20 = annuity_irr(10_000.0, 40, 27_000.0, 20).unwrap();
    let accumulated = annuity_future_value(10_000.0, 40, rate_20);
    assert!(
        (accumulated - 487_766.0).abs() / 487_766.0 <= 1e-3,
        "accumulated contributions {accumulated}"
    );
    pass("criterion 3: save-then-draw rates within 0.0005 of 1%, -1.6%, 2%; contribution value matches 487,766 within 0.1%");
}

#[test]
fn criterion_4_fairness_theorems_on_random_pools() {
    let mut rng = ChaCha8Rng::seed_from_u64(400);
    let scale_grid = [0.5, 2.0, 10.0];

    for trial in 0..1000 {
        let pool = random_pool(&mut rng, 2..=10, 50.0);
        let scheme = random_scheme(&mut rng, pool.n());
        let allocation = scheme.evaluate(&pool).unwrap();
        let model = pool.independent_model();

        // self-financing in every scenario
        let total = pool.accumulated_total();
        for s in Scenario::all(pool.n()) {
            let pv = payouts(&pool, &allocation, s);
            assert!(
                (pv.total() - total).abs() <= 1e-9 * total,
                "trial {trial}: scenario {} leaks {}",
                s.index(),
                pv.total() - total
            );
        }

        let report =
            check_fairness(&pool, &allocation, &model, DEFAULT_FAIRNESS_TOLERANCE).unwrap();
        // fairness for all implies fairness for the administrator
        if report.participant_fair {
            assert!(report.admin_fair, "trial {trial}: implication violated");
        }
        // administrator fairness and collective fairness are one verdict
        assert_eq!(
            report.admin_fair, report.collectively_fair,
            "trial {trial}: biconditional violated"
        );

        // fairness verdicts are invariant under joint scaling
        for &alpha in &scale_grid {
            for &beta in &scale_grid {
                let scaled_investments: Vec<f64> =
                    pool.investments().iter().map(|x| alpha * x).collect();
                let scaled_pool = Pool::from_slices(
                    &scaled_investments,
                    &pool.survival_probs(),
                    alpha * pool.admin_investment,
                    pool.period_return,
                );
                let scaled_shares = ShareAllocation::new(
                    allocation.shares.iter().map(|x| beta * x).collect(),
                )
                .unwrap();
                let scaled = check_fairness(
                    &scaled_pool,
                    &scaled_shares,
                    &model,
                    DEFAULT_FAIRNESS_TOLERANCE,
                )
                .unwrap();
                assert_eq!(
                    (scaled.participant_fair, scaled.admin_fair, scaled.collectively_fair),
                    (report.participant_fair, report.admin_fair, report.collectively_fair),
                    "trial {trial}: verdicts changed under scaling ({alpha}, {beta})"
                );
            }
        }

        // with a free-riding administrator someone always falls short
        let mut free_riding = pool.clone();
        free_riding.admin_investment = 0.0;
        let unfair = check_fairness(
            &free_riding,
            &allocation,
            &free_riding.independent_model(),
            DEFAULT_FAIRNESS_TOLERANCE,
        )
        .unwrap();
        assert!(
            unfair.participant_residuals.iter().any(|r| *r < 0.0),
            "trial {trial}: nobody short-changed despite a zero administrator stake"
        );
    }
    pass("criterion 4: 1,000 random pools — self-financing at 1e-9, both theorem implications, scaling invariance, and the zero-stake impossibility");
}

#[test]
fn criterion_5_fair_investment_solvers() {
    // 100 random investment-independent allocations solve to fair funds
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    for trial in 0..100 {
        let n = rng.gen_range(2..=10usize);
        let probs: Vec<f64> = (0..n).map(|_| rng.gen_range(0.05..0.95)).collect();
        let model = SurvivalModel::independent(probs.clone());
        let shares: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..10.0)).collect();
        let allocation = ShareAllocation::new(shares).unwrap();
        let admin = rng.gen_range(0.1..25.0);

        let investments = solve_fair_investments(&allocation, admin, &model).unwrap();
        let pool = Pool::from_slices(&investments, &probs, admin, 0.0);
        let report =
            check_fairness(&pool, &allocation, &model, DEFAULT_FAIRNESS_TOLERANCE).unwrap();
        assert!(
            report.participant_fair && report.admin_fair,
            "trial {trial}: solver output is not fair: {:?}",
            report.participant_residuals
        );
    }

    // homogeneous case: three lives at even odds, unit administrator stake
    let model = SurvivalModel::independent(vec![0.5; 3]);
    let solved = solve_fair_investments(&dr_scheme(3).unwrap(), 1.0, &model).unwrap();
    for pi in &solved {
        assert!((pi - 7.0 / 3.0).abs() <= 1e-12, "solved {pi}");
    }
    let closed_form =
        uniform_exchangeable_fair_investment(3, model.prob_all_dead(), model.prob_some_survive(), 1.0)
            .unwrap();
    assert!((closed_form - 7.0 / 3.0).abs() <= 1e-12);

    // investment-dependent scheme: fixed point on the worked example's odds
    let model = SurvivalModel::independent(vec![0.2, 0.5, 0.8]);
    let solve = solve_fair_investments_internal(
        &AllocationScheme::Dm,
        13.0435,
        &model,
        DEFAULT_SOLVER_TOLERANCE,
        DEFAULT_MAX_ITERATIONS,
    )
    .unwrap();
    assert!(solve.converged, "fixed point did not converge");
    let pool = Pool::from_slices(&solve.investments, &[0.2, 0.5, 0.8], 13.0435, 0.0);
    let report = check_fairness(
        &pool,
        &dm_scheme(&pool),
        &model,
        DEFAULT_FAIRNESS_TOLERANCE,
    )
    .unwrap();
    assert!(report.participant_fair && report.admin_fair);

    pass("criterion 5: 100 solver outputs pass the fairness check at 1e-9; homogeneous case returns 7/3 within 1e-12; the money-at-risk fixed point converges fair");
}

#[test]
fn criterion_6_monte_carlo_agreement_reproducibility_coverage() {
    let mut rng = ChaCha8Rng::seed_from_u64(600);
    let pool = random_pool(&mut rng, 10..=10, 10.0);
    let allocation = dm_scheme(&pool);
    let model = pool.independent_model();
    let exact = enumerate(&pool, &allocation, &model).unwrap();

    // a million samples on one worker thread, timed
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let started = Instant::now();
    let estimate = single
        .install(|| simulate(&pool, &allocation, &model, 1_000_000, 2024))
        .unwrap();
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");

    for i in 0..=pool.n() {
        let err = estimate.std_error[i].max(1e-12);
        assert!(
            (estimate.mean[i] - exact.expected_payout[i]).abs() <= 4.0 * err,
            "party {i}: {} vs exact {} (se {err})",
            estimate.mean[i],
            exact.expected_payout[i]
        );
    }

    // bit-identical reruns, also across worker counts
    let again = simulate(&pool, &allocation, &model, 1_000_000, 2024).unwrap();
    assert_eq!(estimate, again);

    // normal-approximation coverage of the first participant's expectation
    let mut hits = 0;
    for seed in 0..200 {
        let run = simulate(&pool, &allocation, &model, 20_000, seed).unwrap();
        let half_width = 1.96 * run.std_error[0];
        if (run.mean[0] - exact.expected_payout[0]).abs() <= half_width {
            hits += 1;
        }
    }
    assert!(hits >= 180, "95% interval covered only {hits}/200 runs");

    pass(&format!(
        "criterion 6: 10^6-sample estimates within 4 standard errors ({elapsed:?} single-threaded), bit-identical reruns, and {hits}/200 interval coverage"
    ));
}

#[test]
fn criterion_7_risk_sharing_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(700);

    for _ in 0..50 {
        let parties = rng.gen_range(2..=6usize);
        let n_outcomes = rng.gen_range(1..=8usize);
        let mut outcomes = Vec::with_capacity(n_outcomes);
        let weights: Vec<f64> = (0..n_outcomes).map(|_| rng.gen_range(0.05..1.0)).collect();
        let total_weight: f64 = weights.iter().sum();
        for w in &weights {
            let mut claims: Vec<f64> = (0..parties).map(|_| rng.gen_range(0.0..10.0)).collect();
            if claims.iter().sum::<f64>() <= 0.0 {
                claims[0] = 1.0;
            }
            outcomes.push(Outcome {
                probability: w / total_weight,
                claims,
            });
        }
        let dist = ClaimsDistribution::new(outcomes).unwrap();
        let premiums =
            PremiumVector::new((0..parties).map(|_| rng.gen_range(0.1..10.0)).collect()).unwrap();
        let rate = rng.gen_range(0.0..0.2);
        let pot = (1.0 + rate) * premiums.total();

        // duality round trips are the identity
        let lifted = contribution_to_compensation(uniform_contribution, premiums.clone(), rate);
        let recovered = compensation_to_contribution(lifted, premiums.clone(), rate);
        let inner = premiums.clone();
        let prop_rule = move |claims: &[f64]| {
            proportional_compensation(&inner, claims, rate).expect("positive claims")
        };
        let lowered = compensation_to_contribution(prop_rule, premiums.clone(), rate);
        let lifted_back = contribution_to_compensation(lowered, premiums.clone(), rate);

        for outcome in dist.outcomes() {
            let uniform_direct = uniform_contribution(&outcome.claims);
            assert!(
                max_relative_difference(&recovered(&outcome.claims), &uniform_direct) <= 1e-12
            );
            let prop_direct =
                proportional_compensation(&premiums, &outcome.claims, rate).unwrap();
            assert!(
                max_relative_difference(&lifted_back(&outcome.claims), &prop_direct) <= 1e-12
            );

            // solvency on both sides
            let paid: f64 = prop_direct.iter().sum();
            assert!((paid - pot).abs() <= 1e-12 * pot);
            let collected: f64 = uniform_direct.iter().sum();
            let claimed: f64 = outcome.claims.iter().sum();
            assert!((collected - claimed).abs() <= 1e-12 * claimed.max(1.0));
        }
    }

    // the tontine embedding reproduces the payout rule across all scenarios
    let mut rng = ChaCha8Rng::seed_from_u64(701);
    for _ in 0..50 {
        let pool = random_pool(&mut rng, 2..=10, 20.0);
        let scheme = random_scheme(&mut rng, pool.n());
        let allocation = scheme.evaluate(&pool).unwrap();
        let mut premium_values = pool.investments();
        premium_values.push(pool.admin_investment);
        let premiums = PremiumVector::new(premium_values).unwrap();
        for s in Scenario::all(pool.n()) {
            let claims = tontine_claims(&pool, &allocation, s);
            let w = proportional_compensation(&premiums, &claims, pool.period_return).unwrap();
            let pv = payouts(&pool, &allocation, s);
            assert!(max_relative_difference(&w, &pv.payouts) <= 1e-12);
        }
    }

    pass("criterion 7: duality round trips are the identity at 1e-12, both solvency conditions hold, and the tontine embeds into proportional sharing");
}

#[test]
fn criterion_8_admin_slot_invariance() {
    // same corpus as the fairness-theorem criterion
    let mut rng = ChaCha8Rng::seed_from_u64(400);
    for _ in 0..1000 {
        let pool = random_pool(&mut rng, 2..=10, 50.0);
        let scheme = random_scheme(&mut rng, pool.n());
        let base = scheme.evaluate(&pool).unwrap();
        for s in Scenario::all(pool.n()) {
            let reference = payouts(&pool, &base, s);
            for slot in [1e-6, 1.0, 1e6] {
                let allocation =
                    ShareAllocation::with_admin_slot(base.shares.clone(), slot).unwrap();
                let pv = payouts(&pool, &allocation, s);
                assert!(
                    max_relative_difference(&pv.payouts, &reference.payouts) <= 1e-12,
                    "slot {slot} changed a payout"
                );
            }
        }
    }
    pass("criterion 8: payouts identical within 1e-12 for administrator slots 1e-6, 1 and 1e6 across the random corpus");
}
