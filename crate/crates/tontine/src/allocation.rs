//! Tontine share allocation schemes.
//!
//! A share allocation assigns every participant a strictly positive number of
//! tontine shares; survivors split the fund in proportion to their shares.
//! The administrator's slot carries a positive placeholder weight that only
//! matters in the all-dead scenario, where it cancels out of the payout, so
//! any positive value gives identical payouts.
//!
//! Schemes implemented here:
//! - `dm`: shares equal investment divided by survival probability, i.e. the
//!   money-at-risk rule. Equivalently the payout of a fairly priced pure
//!   endowment bought with the same money.
//! - `t`: shares equal the investment alone, favouring likely survivors.
//! - `dr`: one share each, splitting proceeds equally among survivors.
//! - `reciprocal`: shares equal the reciprocal survival probability,
//!   favouring smaller investors.
//! - linear schemes: investment times an arbitrary positive weight of the
//!   survival probability, which generalizes `dm` and `t`.

use crate::error::{Error, Result};
use crate::model::{Pool, Scenario};

/// Number of tontine shares per participant, plus the administrator's
/// placeholder slot.
#[derive(Debug, Clone, PartialEq)]
pub struct ShareAllocation {
    /// Strictly positive share counts, one per participant.
    pub shares: Vec<f64>,
    /// Strictly positive placeholder for the administrator; payouts do not
    /// depend on its value.
    pub admin_slot: f64,
}

impl ShareAllocation {
    /// Wraps explicit share counts, defaulting the administrator slot to 1.
    pub fn new(shares: Vec<f64>) -> Result<Self> {
        Self::with_admin_slot(shares, 1.0)
    }

    pub fn with_admin_slot(shares: Vec<f64>, admin_slot: f64) -> Result<Self> {
        if shares.len() < 2 {
            return Err(Error::InvalidInput(
                "a share allocation needs at least 2 participants".into(),
            ));
        }
        for (i, &s) in shares.iter().enumerate() {
            if !(s > 0.0 && s.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "share count for participant {} must be strictly positive (got {s})",
                    i + 1
                )));
            }
        }
        if !(admin_slot > 0.0 && admin_slot.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "administrator slot must be strictly positive (got {admin_slot})"
            )));
        }
        Ok(Self { shares, admin_slot })
    }

    pub fn n(&self) -> usize {
        self.shares.len()
    }

    /// Total allocated shares, administrator slot excluded.
    pub fn total_shares(&self) -> f64 {
        self.shares.iter().sum()
    }

    /// Shares still alive in a scenario, administrator slot excluded.
    pub fn surviving_shares(&self, scenario: Scenario) -> f64 {
        self.shares
            .iter()
            .enumerate()
            .filter(|(i, _)| scenario.survives(*i))
            .map(|(_, &f)| f)
            .sum()
    }
}

/// Survival benefits of the pure endowments each participant could have
/// bought instead, plus an arbitrary positive administrator slot.
#[derive(Debug, Clone, PartialEq)]
pub struct EndowmentBenefits {
    pub benefits: Vec<f64>,
    pub admin_slot: f64,
}

impl EndowmentBenefits {
    pub fn new(benefits: Vec<f64>) -> Result<Self> {
        Self::with_admin_slot(benefits, 1.0)
    }

    pub fn with_admin_slot(benefits: Vec<f64>, admin_slot: f64) -> Result<Self> {
        // same positivity shape as a share allocation
        let allocation = ShareAllocation::with_admin_slot(benefits, admin_slot)?;
        Ok(Self {
            benefits: allocation.shares,
            admin_slot: allocation.admin_slot,
        })
    }

    pub fn n(&self) -> usize {
        self.benefits.len()
    }
}

/// Money-at-risk rule: investment divided by survival probability.
pub fn dm_scheme(pool: &Pool) -> ShareAllocation {
    ShareAllocation {
        shares: pool
            .participants
            .iter()
            .map(|p| p.investment / p.survival_prob)
            .collect(),
        admin_slot: 1.0,
    }
}

/// Stake-only rule: shares equal the investment.
pub fn t_scheme(pool: &Pool) -> ShareAllocation {
    ShareAllocation {
        shares: pool.investments(),
        admin_slot: 1.0,
    }
}

/// Uniform rule: one share per participant.
pub fn dr_scheme(n: usize) -> Result<ShareAllocation> {
    ShareAllocation::new(vec![1.0; n])
}

/// Reciprocal rule: one over the survival probability, regardless of stake.
pub fn reciprocal_scheme(pool: &Pool) -> ShareAllocation {
    ShareAllocation {
        shares: pool
            .participants
            .iter()
            .map(|p| 1.0 / p.survival_prob)
            .collect(),
        admin_slot: 1.0,
    }
}

/// Linear rule: investment times a strictly positive weight of the survival
/// probability. The weight may be decreasing, increasing, or anything else.
pub fn linear_scheme<G>(pool: &Pool, weight: G) -> Result<ShareAllocation>
where
    G: Fn(f64) -> f64,
{
    let mut shares = Vec::with_capacity(pool.n());
    for p in &pool.participants {
        let w = weight(p.survival_prob);
        if !(w > 0.0 && w.is_finite()) {
            return Err(Error::NonPositiveShareWeight {
                prob: p.survival_prob,
                value: w,
            });
        }
        shares.push(p.investment * w);
    }
    ShareAllocation::new(shares)
}

/// Survival benefit of a pure endowment bought at the net premium: the
/// benefit that makes `investment = benefit * survival_prob / (1 + rate)`
/// under an agreed technical rate.
pub fn benefits_from_net_premium(pool: &Pool, technical_rate: f64) -> Result<EndowmentBenefits> {
    if !(technical_rate >= 0.0 && technical_rate.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "technical rate must be non-negative (got {technical_rate})"
        )));
    }
    Ok(EndowmentBenefits {
        benefits: pool
            .participants
            .iter()
            .map(|p| p.investment * (1.0 + technical_rate) / p.survival_prob)
            .collect(),
        admin_slot: 1.0,
    })
}

/// Treats endowment benefits directly as tontine shares; the resulting
/// payouts scale each survivor's benefit by the common solvency coefficient.
pub fn allocation_from_benefits(benefits: &EndowmentBenefits) -> ShareAllocation {
    ShareAllocation {
        shares: benefits.benefits.clone(),
        admin_slot: benefits.admin_slot,
    }
}

/// The scenario-dependent coefficient scaling every surviving benefit so the
/// fund pays out exactly its accumulated value: accumulated total divided by
/// the surviving aggregate claim. The administrator slot fills the all-dead
/// scenario, so the denominator never vanishes.
pub fn alpha_coefficient(pool: &Pool, benefits: &EndowmentBenefits, scenario: Scenario) -> f64 {
    let surviving_claim: f64 = if scenario.all_dead() {
        benefits.admin_slot
    } else {
        benefits
            .benefits
            .iter()
            .enumerate()
            .filter(|(i, _)| scenario.survives(*i))
            .map(|(_, &l)| l)
            .sum()
    };
    pool.accumulated_total() / surviving_claim
}

/// A named share allocation rule, as selected on the command line or fed to
/// the fair-investment solvers.
#[derive(Debug, Clone, PartialEq)]
pub enum AllocationScheme {
    Dm,
    T,
    Dr,
    Reciprocal,
    /// Benefits priced at the net premium for a technical rate.
    Benefits { technical_rate: f64 },
    /// An explicit share vector.
    Literal(Vec<f64>),
}

impl AllocationScheme {
    /// Materializes the share allocation for a pool.
    pub fn evaluate(&self, pool: &Pool) -> Result<ShareAllocation> {
        match self {
            AllocationScheme::Dm => Ok(dm_scheme(pool)),
            AllocationScheme::T => Ok(t_scheme(pool)),
            AllocationScheme::Dr => dr_scheme(pool.n()),
            AllocationScheme::Reciprocal => Ok(reciprocal_scheme(pool)),
            AllocationScheme::Benefits { technical_rate } => Ok(allocation_from_benefits(
                &benefits_from_net_premium(pool, *technical_rate)?,
            )),
            AllocationScheme::Literal(shares) => {
                if shares.len() != pool.n() {
                    return Err(Error::DimensionMismatch(format!(
                        "{} literal shares for a pool of {}",
                        shares.len(),
                        pool.n()
                    )));
                }
                ShareAllocation::new(shares.clone())
            }
        }
    }

    /// Whether the share vector depends on the investments. Schemes that do
    /// turn the fair-investment conditions into a fixed-point problem.
    pub fn depends_on_investments(&self) -> bool {
        matches!(
            self,
            AllocationScheme::Dm | AllocationScheme::T | AllocationScheme::Benefits { .. }
        )
    }
}

impl std::str::FromStr for AllocationScheme {
    type Err = Error;

    /// Parses `dm | t | dr | reciprocal | benefits` or a literal
    /// `shares=[f1,f2,...]`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dm" => Ok(AllocationScheme::Dm),
            "t" => Ok(AllocationScheme::T),
            "dr" => Ok(AllocationScheme::Dr),
            "reciprocal" => Ok(AllocationScheme::Reciprocal),
            "benefits" => Ok(AllocationScheme::Benefits {
                technical_rate: 0.0,
            }),
            _ => {
                let literal = s
                    .strip_prefix("shares=[")
                    .and_then(|rest| rest.strip_suffix(']'))
                    .ok_or_else(|| {
                        Error::InvalidInput(format!(
                            "unknown scheme '{s}' (expected dm, t, dr, reciprocal, benefits or shares=[...])"
                        ))
                    })?;
                let shares = literal
                    .split(',')
                    .map(|tok| {
                        tok.trim().parse::<f64>().map_err(|_| {
                            Error::InvalidInput(format!("bad share value '{}'", tok.trim()))
                        })
                    })
                    .collect::<Result<Vec<f64>>>()?;
                Ok(AllocationScheme::Literal(shares))
            }
        }
    }
}

impl std::fmt::Display for AllocationScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AllocationScheme::Dm => write!(f, "dm"),
            AllocationScheme::T => write!(f, "t"),
            AllocationScheme::Dr => write!(f, "dr"),
            AllocationScheme::Reciprocal => write!(f, "reciprocal"),
            AllocationScheme::Benefits { technical_rate } => {
                write!(f, "benefits (technical rate {technical_rate})")
            }
            AllocationScheme::Literal(shares) => {
                write!(f, "shares=[")?;
                for (i, s) in shares.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, "]")
            }
        }
    }
}
