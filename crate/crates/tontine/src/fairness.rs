//! Actuarial fairness: checks and fair-investment solvers.
//!
//! A fund is fair for a participant when the accumulated value of their
//! investment equals their expected payout, fair for the administrator when
//! the same holds for the administrator's stake, and collectively fair when
//! it holds for the participants' aggregate. Administrator fairness and
//! collective fairness are equivalent, and fairness for every participant
//! forces both.
//!
//! Fair investments are only determined up to scale, so the solvers anchor
//! everything to the administrator's contribution and return the per-ratio
//! investments implied by the conditional expected share fractions.

use crate::allocation::{AllocationScheme, ShareAllocation};
use crate::error::{Error, Result};
use crate::expectation::{enumerate, expected_share_fractions};
use crate::model::{Participant, Pool, SurvivalModel};

/// Default relative tolerance for declaring a residual zero.
pub const DEFAULT_FAIRNESS_TOLERANCE: f64 = 1e-9;

/// Default maximum fixed-point iterations.
pub const DEFAULT_MAX_ITERATIONS: usize = 10_000;

/// Default relative convergence tolerance of the fixed-point solver.
pub const DEFAULT_SOLVER_TOLERANCE: f64 = 1e-12;

/// Residuals between expected payouts and accumulated investments, with the
/// three fairness verdicts.
#[derive(Debug, Clone, PartialEq)]
pub struct FairnessReport {
    /// Expected payout minus accumulated investment, per participant.
    pub participant_residuals: Vec<f64>,
    /// The same residual for the administrator.
    pub admin_residual: f64,
    /// Every participant's residual vanishes within tolerance.
    pub participant_fair: bool,
    /// The administrator's residual vanishes within tolerance.
    pub admin_fair: bool,
    /// The participants' aggregate residual vanishes within tolerance.
    pub collectively_fair: bool,
    /// Relative tolerance the verdicts used.
    pub tolerance: f64,
}

/// Compares expected payouts with accumulated investments.
///
/// Participant verdicts are relative to each accumulated stake; the
/// administrator and collective verdicts are relative to the accumulated
/// fund, which keeps the two equivalent verdicts on a common scale.
pub fn check_fairness(
    pool: &Pool,
    allocation: &ShareAllocation,
    model: &SurvivalModel,
    tolerance: f64,
) -> Result<FairnessReport> {
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "tolerance must be strictly positive (got {tolerance})"
        )));
    }
    let report = enumerate(pool, allocation, model)?;
    let growth = 1.0 + pool.period_return;
    let n = pool.n();

    let participant_residuals: Vec<f64> = pool
        .participants
        .iter()
        .zip(&report.expected_payout)
        .map(|(p, e)| e - growth * p.investment)
        .collect();
    let admin_residual = report.expected_payout[n] - growth * pool.admin_investment;

    let participant_fair = pool
        .participants
        .iter()
        .zip(&participant_residuals)
        .all(|(p, r)| r.abs() <= tolerance * growth * p.investment);

    let fund_scale = growth * pool.total_investment();
    let admin_fair = admin_residual.abs() <= tolerance * fund_scale;

    let collective_residual = report.group_expected_payout - growth * pool.participant_total();
    let collectively_fair = collective_residual.abs() <= tolerance * fund_scale;

    Ok(FairnessReport {
        participant_residuals,
        admin_residual,
        participant_fair,
        admin_fair,
        collectively_fair,
        tolerance,
    })
}

/// The administrator contribution that makes the fund fair for the
/// administrator (equivalently, collectively fair): the participants' total
/// scaled by the odds of the all-dead scenario.
pub fn admin_fair_contribution(
    participant_investments: &[f64],
    model: &SurvivalModel,
) -> Result<f64> {
    if participant_investments.len() != model.n() {
        return Err(Error::DimensionMismatch(format!(
            "{} investments against a model of {} participants",
            participant_investments.len(),
            model.n()
        )));
    }
    let prob_all_dead = model.prob_all_dead();
    if !(prob_all_dead > 0.0 && prob_all_dead < 1.0) {
        return Err(Error::InvalidInput(format!(
            "the all-dead probability must lie strictly between 0 and 1 (got {prob_all_dead})"
        )));
    }
    let total: f64 = participant_investments.iter().sum();
    Ok(total * prob_all_dead / (1.0 - prob_all_dead))
}

/// Solves the fair-investment conditions for a share allocation that does
/// not depend on the investments: each participant pays the administrator's
/// stake scaled by their conditional expected share fraction and the odds of
/// at least one survivor.
pub fn solve_fair_investments(
    allocation: &ShareAllocation,
    admin_investment: f64,
    model: &SurvivalModel,
) -> Result<Vec<f64>> {
    if !(admin_investment > 0.0 && admin_investment.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "the administrator investment anchors the scale and must be strictly positive (got {admin_investment})"
        )));
    }
    let fractions = expected_share_fractions(allocation, model)?;
    let prob_all_dead = model.prob_all_dead();
    let odds_some_survive = (1.0 - prob_all_dead) / prob_all_dead;
    Ok(fractions
        .iter()
        .map(|fraction| admin_investment * fraction * odds_some_survive)
        .collect())
}

/// Result of the fixed-point iteration for investment-dependent schemes.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointSolve {
    /// Final investment vector (the best iterate when not converged).
    pub investments: Vec<f64>,
    pub converged: bool,
    /// Number of fixed-point updates performed.
    pub iterations: usize,
    /// Relative change of the final update.
    pub max_relative_change: f64,
    /// Every iterate, starting with the initial guess.
    pub trajectory: Vec<Vec<f64>>,
}

/// Solves the fair-investment conditions when the scheme makes the shares a
/// function of the investments, by plain fixed-point iteration on the
/// conditions themselves.
///
/// Nothing guarantees convergence for an arbitrary scheme; a non-converged
/// result is returned as such, with its trajectory, rather than patched over.
pub fn solve_fair_investments_internal(
    scheme: &AllocationScheme,
    admin_investment: f64,
    model: &SurvivalModel,
    tolerance: f64,
    max_iterations: usize,
) -> Result<FixedPointSolve> {
    if !(admin_investment > 0.0 && admin_investment.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "the administrator investment anchors the scale and must be strictly positive (got {admin_investment})"
        )));
    }
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "tolerance must be strictly positive (got {tolerance})"
        )));
    }
    let n = model.n();
    let survival_probs = model.marginal_survival_probs();

    let mut investments = vec![admin_investment; n];
    let mut trajectory = vec![investments.clone()];
    let mut max_relative_change = f64::INFINITY;

    for iteration in 1..=max_iterations {
        let candidate = Pool::new(
            investments
                .iter()
                .zip(&survival_probs)
                .map(|(&investment, &survival_prob)| Participant {
                    investment,
                    survival_prob,
                })
                .collect(),
            admin_investment,
            0.0,
        );
        let allocation = scheme.evaluate(&candidate)?;
        let next = solve_fair_investments(&allocation, admin_investment, model)?;

        max_relative_change = investments
            .iter()
            .zip(&next)
            .map(|(old, new)| ((new - old) / old).abs())
            .fold(0.0, f64::max);
        trajectory.push(next.clone());
        investments = next;

        if max_relative_change <= tolerance {
            return Ok(FixedPointSolve {
                investments,
                converged: true,
                iterations: iteration,
                max_relative_change,
                trajectory,
            });
        }
    }

    Ok(FixedPointSolve {
        investments,
        converged: false,
        iterations: max_iterations,
        max_relative_change,
        trajectory,
    })
}

/// Fair per-head investment for an exchangeable pool under a uniform share
/// allocation: everybody pays the same amount, the administrator's stake per
/// head scaled by the odds of at least one survivor.
pub fn uniform_exchangeable_fair_investment(
    n: usize,
    prob_all_dead: f64,
    prob_some_survive: f64,
    admin_investment: f64,
) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "a pool needs at least 2 participants (got {n})"
        )));
    }
    if !(prob_all_dead > 0.0 && prob_all_dead < 1.0)
        || !(prob_some_survive > 0.0 && prob_some_survive < 1.0)
        || (prob_all_dead + prob_some_survive - 1.0).abs() > crate::model::PROBABILITY_SUM_TOLERANCE
    {
        return Err(Error::InvalidInput(format!(
            "probabilities must lie in (0,1) and sum to 1 (got {prob_all_dead} and {prob_some_survive})"
        )));
    }
    if !(admin_investment > 0.0 && admin_investment.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "the administrator investment must be strictly positive (got {admin_investment})"
        )));
    }
    Ok(admin_investment / n as f64 * prob_some_survive / prob_all_dead)
}
