//! Decentralized risk sharing over finite outcome spaces.
//!
//! Two ways to share a pool of claims without a capitalized guarantor:
//!
//! - compensation-based: premiums are paid up front and each party receives
//!   a compensation at the horizon; the compensations always add up to the
//!   accumulated premium pool, so nothing can default.
//! - contribution-based: each party is reimbursed their full claim but pays
//!   an ex-post contribution; contributions always add up to the claims.
//!
//! The two are duals: moving the accumulated premium across the equation
//! turns one into the other while every party's net time-1 position stays
//! the same, whatever premium vector is chosen. A tontine is the special
//! case of proportional compensation applied to the claims vector
//! `share_i * survival indicator_i`.

use crate::allocation::ShareAllocation;
use crate::error::{Error, Result};
use crate::model::{Pool, Scenario, PROBABILITY_SUM_TOLERANCE};

/// Grouping tolerance when conditioning on the realized claims total.
pub const TOTAL_GROUPING_TOLERANCE: f64 = 1e-12;

/// Premiums paid at time 0, administrator last. Entries are non-negative and
/// at least one is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct PremiumVector {
    premiums: Vec<f64>,
}

impl PremiumVector {
    pub fn new(premiums: Vec<f64>) -> Result<Self> {
        if premiums.is_empty() {
            return Err(Error::InvalidInput("premium vector is empty".into()));
        }
        for (i, &p) in premiums.iter().enumerate() {
            if !(p >= 0.0 && p.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "premium {} must be non-negative (got {p})",
                    i + 1
                )));
            }
        }
        if premiums.iter().sum::<f64>() <= 0.0 {
            return Err(Error::InvalidInput(
                "premiums must not all be zero".into(),
            ));
        }
        Ok(Self { premiums })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.premiums
    }

    pub fn len(&self) -> usize {
        self.premiums.len()
    }

    pub fn is_empty(&self) -> bool {
        self.premiums.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.premiums.iter().sum()
    }
}

/// One realization of the claims vector with its probability.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub probability: f64,
    pub claims: Vec<f64>,
}

/// A finite table of claim outcomes. Every outcome keeps a strictly positive
/// claims total: the administrator's claim slot is mutually exclusive with
/// the others, which is what keeps proportional compensation well defined.
#[derive(Debug, Clone, PartialEq)]
pub struct ClaimsDistribution {
    outcomes: Vec<Outcome>,
}

impl ClaimsDistribution {
    pub fn new(outcomes: Vec<Outcome>) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(Error::InvalidInput("no outcomes given".into()));
        }
        let parties = outcomes[0].claims.len();
        if parties == 0 {
            return Err(Error::InvalidInput("outcomes carry no claims".into()));
        }
        let mut mass = 0.0;
        for (k, outcome) in outcomes.iter().enumerate() {
            if outcome.claims.len() != parties {
                return Err(Error::DimensionMismatch(format!(
                    "outcome {} lists {} claims, expected {parties}",
                    k + 1,
                    outcome.claims.len()
                )));
            }
            if !(outcome.probability >= 0.0 && outcome.probability.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "outcome {} probability must be non-negative (got {})",
                    k + 1,
                    outcome.probability
                )));
            }
            for (i, &x) in outcome.claims.iter().enumerate() {
                if !(x >= 0.0 && x.is_finite()) {
                    return Err(Error::InvalidInput(format!(
                        "claim {} of outcome {} must be non-negative (got {x})",
                        i + 1,
                        k + 1
                    )));
                }
            }
            if outcome.claims.iter().sum::<f64>() <= 0.0 {
                return Err(Error::ZeroTotalClaims);
            }
            mass += outcome.probability;
        }
        if (mass - 1.0).abs() > PROBABILITY_SUM_TOLERANCE {
            return Err(Error::InvalidInput(format!(
                "outcome probabilities must sum to 1 within 1e-12 (got {mass})"
            )));
        }
        Ok(Self { outcomes })
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    /// Number of parties (administrator included).
    pub fn parties(&self) -> usize {
        self.outcomes[0].claims.len()
    }
}

/// Proportional compensation: each party receives the accumulated premium
/// pool scaled by their share of the realized claims total.
pub fn proportional_compensation(
    premiums: &PremiumVector,
    claims: &[f64],
    period_return: f64,
) -> Result<Vec<f64>> {
    if premiums.len() != claims.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} premiums against {} claims",
            premiums.len(),
            claims.len()
        )));
    }
    let total_claims: f64 = claims.iter().sum();
    if total_claims <= 0.0 {
        return Err(Error::ZeroTotalClaims);
    }
    let pot = (1.0 + period_return) * premiums.total();
    Ok(claims.iter().map(|x| pot * x / total_claims).collect())
}

/// Uniform contribution: everyone pays an equal split of the claims total.
pub fn uniform_contribution(claims: &[f64]) -> Vec<f64> {
    let split = claims.iter().sum::<f64>() / claims.len() as f64;
    vec![split; claims.len()]
}

/// Conditional mean contribution: each party pays the expected value of
/// their own claim given the realized claims total, conditioning exactly
/// over the finite table (totals grouped within an absolute tolerance).
pub fn conditional_mean_contribution(
    distribution: &ClaimsDistribution,
    outcome_index: usize,
) -> Result<Vec<f64>> {
    let outcomes = distribution.outcomes();
    let realized = outcomes.get(outcome_index).ok_or_else(|| {
        Error::InvalidInput(format!(
            "outcome index {outcome_index} out of range for {} outcomes",
            outcomes.len()
        ))
    })?;
    let realized_total: f64 = realized.claims.iter().sum();

    let parties = distribution.parties();
    let mut group_mass = 0.0;
    let mut weighted = vec![0.0; parties];
    for outcome in outcomes {
        let total: f64 = outcome.claims.iter().sum();
        if (total - realized_total).abs() <= TOTAL_GROUPING_TOLERANCE {
            group_mass += outcome.probability;
            for (w, &x) in weighted.iter_mut().zip(&outcome.claims) {
                *w += outcome.probability * x;
            }
        }
    }
    if group_mass <= 0.0 {
        // conditioning on a zero-probability total degenerates to the point
        return Ok(realized.claims.clone());
    }
    Ok(weighted.into_iter().map(|w| w / group_mass).collect())
}

/// Turns a contribution rule into the equivalent compensation rule for a
/// chosen premium vector: pay the accumulated premium plus the claim, net of
/// the contribution. Net time-1 positions are unchanged.
pub fn contribution_to_compensation<C>(
    rule: C,
    premiums: PremiumVector,
    period_return: f64,
) -> impl Fn(&[f64]) -> Vec<f64>
where
    C: Fn(&[f64]) -> Vec<f64>,
{
    move |claims: &[f64]| {
        let contributions = rule(claims);
        premiums
            .as_slice()
            .iter()
            .zip(claims)
            .zip(&contributions)
            .map(|((&premium, &claim), &contribution)| {
                (1.0 + period_return) * premium + claim - contribution
            })
            .collect()
    }
}

/// Turns a compensation rule into the equivalent contribution rule: pay the
/// accumulated premium plus the claim, net of the compensation.
pub fn compensation_to_contribution<W>(
    rule: W,
    premiums: PremiumVector,
    period_return: f64,
) -> impl Fn(&[f64]) -> Vec<f64>
where
    W: Fn(&[f64]) -> Vec<f64>,
{
    move |claims: &[f64]| {
        let compensations = rule(claims);
        premiums
            .as_slice()
            .iter()
            .zip(claims)
            .zip(&compensations)
            .map(|((&premium, &claim), &compensation)| {
                (1.0 + period_return) * premium + claim - compensation
            })
            .collect()
    }
}

/// The claims vector that embeds a tontine scenario into the risk-sharing
/// frame: each participant claims their shares when alive, and the
/// administrator's slot claims only when everyone is dead. Proportional
/// compensation of this vector reproduces the tontine payouts.
pub fn tontine_claims(pool: &Pool, allocation: &ShareAllocation, scenario: Scenario) -> Vec<f64> {
    let n = pool.n();
    debug_assert_eq!(allocation.n(), n);
    let mut claims: Vec<f64> = (0..n)
        .map(|i| {
            if scenario.survives(i) {
                allocation.shares[i]
            } else {
                0.0
            }
        })
        .collect();
    claims.push(if scenario.all_dead() {
        allocation.admin_slot
    } else {
        0.0
    });
    claims
}
