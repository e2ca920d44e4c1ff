//! Scenario payouts of a tontine fund.
//!
//! In any scenario with survivors, each survivor receives the accumulated
//! fund scaled by their share of the surviving shares; the administrator
//! receives nothing. If every participant dies, the administrator owns the
//! whole accumulated fund. The payout vector therefore always adds up to the
//! accumulated total: the fund is self-financing and cannot default.

use crate::allocation::ShareAllocation;
use crate::error::{Error, Result};
use crate::model::{Pool, Scenario};

/// Terminal payouts, one per participant plus the administrator in the last
/// position.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoutVector {
    pub payouts: Vec<f64>,
}

impl PayoutVector {
    /// Number of participants (one less than the stored length).
    pub fn n(&self) -> usize {
        self.payouts.len() - 1
    }

    pub fn participant(&self, i: usize) -> f64 {
        self.payouts[i]
    }

    pub fn admin(&self) -> f64 {
        *self.payouts.last().expect("payout vector is never empty")
    }

    pub fn participant_total(&self) -> f64 {
        self.payouts[..self.n()].iter().sum()
    }

    pub fn total(&self) -> f64 {
        self.payouts.iter().sum()
    }
}

/// Value of one tontine share at inception: the whole fund (administrator
/// included) divided by the shares allocated to participants.
pub fn share_value_initial(pool: &Pool, allocation: &ShareAllocation) -> f64 {
    pool.total_investment() / allocation.total_shares()
}

/// Value of one surviving share at the horizon. Undefined when nobody
/// survives, since no surviving shares exist.
pub fn share_value_terminal(
    pool: &Pool,
    allocation: &ShareAllocation,
    scenario: Scenario,
) -> Result<f64> {
    if scenario.all_dead() {
        return Err(Error::NoSurvivors);
    }
    Ok(pool.accumulated_total() / allocation.surviving_shares(scenario))
}

/// Payout vector for one scenario.
///
/// Survivor `i` receives `accumulated_total * f_i / (surviving shares)`; in
/// the all-dead scenario the administrator receives the accumulated total.
/// The administrator's slot weight cancels out of its own payout, which is
/// why its value never matters.
pub fn payouts(pool: &Pool, allocation: &ShareAllocation, scenario: Scenario) -> PayoutVector {
    let n = pool.n();
    debug_assert_eq!(allocation.n(), n);
    debug_assert_eq!(scenario.n(), n);
    let total = pool.accumulated_total();
    let mut payouts = vec![0.0; n + 1];
    if scenario.all_dead() {
        payouts[n] = total;
    } else {
        let surviving = allocation.surviving_shares(scenario);
        for (i, (slot, share)) in payouts.iter_mut().zip(&allocation.shares).enumerate() {
            if scenario.survives(i) {
                *slot = total * share / surviving;
            }
        }
    }
    PayoutVector { payouts }
}

/// The three factors a survivor's return decomposes into: the fund return,
/// a deterministic per-participant risk adjustment, and the scenario's
/// mortality credit from inheriting the dead participants' shares.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnDecomposition {
    /// The fund return R, common to everyone.
    pub fund_return: f64,
    /// Per-participant adjustment: share value times shares per unit
    /// invested, minus one. May be negative.
    pub risk_adjustments: Vec<f64>,
    /// Extra return from the shares of the deceased, never negative.
    pub mortality_credit: f64,
}

/// Splits each survivor's gross return into fund return, risk adjustment and
/// mortality credit, so that
/// `investment * (1+R) * (1+R'_i) * (1+R'') = payout` for every survivor.
pub fn return_decomposition(
    pool: &Pool,
    allocation: &ShareAllocation,
    scenario: Scenario,
) -> Result<ReturnDecomposition> {
    if scenario.all_dead() {
        return Err(Error::NoSurvivors);
    }
    let share_value = share_value_initial(pool, allocation);
    let risk_adjustments = pool
        .participants
        .iter()
        .zip(&allocation.shares)
        .map(|(p, &f)| share_value * f / p.investment - 1.0)
        .collect();
    let surviving = allocation.surviving_shares(scenario);
    let dead = allocation
        .shares
        .iter()
        .enumerate()
        .filter(|(i, _)| !scenario.survives(*i))
        .map(|(_, &f)| f)
        .sum::<f64>();
    Ok(ReturnDecomposition {
        fund_return: pool.period_return,
        risk_adjustments,
        mortality_credit: dead / surviving,
    })
}
