//! JSON file formats for pools and claims distributions.
//!
//! Both formats are versioned with a `"version": 1` field and reject unknown
//! keys, so typos fail loudly instead of being silently ignored.

use serde::{Deserialize, Serialize};

use crate::drs::{ClaimsDistribution, Outcome, PremiumVector};
use crate::error::{Error, Result};
use crate::model::{Participant, Pool, SurvivalModel};

pub const FORMAT_VERSION: u32 = 1;

/// On-disk description of a pool.
///
/// ```json
/// {
///   "version": 1,
///   "participants": [{"investment": 80.0, "survival_prob": 0.2}],
///   "admin_investment": 0.0,
///   "return": 0.0,
///   "joint_table": [0.08, ...]
/// }
/// ```
///
/// `joint_table` is optional; when present it lists one probability per
/// scenario bitmask and overrides the independent survival model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoolFile {
    pub version: u32,
    pub participants: Vec<ParticipantEntry>,
    pub admin_investment: f64,
    #[serde(rename = "return")]
    pub period_return: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub joint_table: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticipantEntry {
    pub investment: f64,
    pub survival_prob: f64,
}

impl PoolFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: PoolFile = serde_json::from_str(text)?;
        if file.version != FORMAT_VERSION {
            return Err(Error::UnsupportedVersion(file.version));
        }
        Ok(file)
    }

    pub fn pool(&self) -> Pool {
        Pool::new(
            self.participants
                .iter()
                .map(|p| Participant::new(p.investment, p.survival_prob))
                .collect(),
            self.admin_investment,
            self.period_return,
        )
    }

    pub fn survival_model(&self) -> SurvivalModel {
        match &self.joint_table {
            Some(probs) => SurvivalModel::joint_table(self.participants.len(), probs.clone()),
            None => SurvivalModel::Independent {
                survival_probs: self
                    .participants
                    .iter()
                    .map(|p| p.survival_prob)
                    .collect(),
            },
        }
    }

    pub fn from_pool(pool: &Pool, model: &SurvivalModel) -> Self {
        PoolFile {
            version: FORMAT_VERSION,
            participants: pool
                .participants
                .iter()
                .map(|p| ParticipantEntry {
                    investment: p.investment,
                    survival_prob: p.survival_prob,
                })
                .collect(),
            admin_investment: pool.admin_investment,
            period_return: pool.period_return,
            joint_table: match model {
                SurvivalModel::JointTable { probs, .. } => Some(probs.clone()),
                SurvivalModel::Independent { .. } => None,
            },
        }
    }

    /// Canonical JSON emission; parsing it back yields an identical value.
    pub fn to_normalized_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("plain data serializes");
        text.push('\n');
        text
    }
}

/// On-disk description of a claims distribution for the risk-sharing
/// transforms, sharing the pool format's conventions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimsFile {
    pub version: u32,
    /// Premiums per party, administrator last.
    pub premiums: Vec<f64>,
    #[serde(rename = "return")]
    pub period_return: f64,
    pub outcomes: Vec<OutcomeEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeEntry {
    pub probability: f64,
    pub claims: Vec<f64>,
}

impl ClaimsFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ClaimsFile = serde_json::from_str(text)?;
        if file.version != FORMAT_VERSION {
            return Err(Error::UnsupportedVersion(file.version));
        }
        Ok(file)
    }

    pub fn distribution(&self) -> Result<ClaimsDistribution> {
        ClaimsDistribution::new(
            self.outcomes
                .iter()
                .map(|o| Outcome {
                    probability: o.probability,
                    claims: o.claims.clone(),
                })
                .collect(),
        )
    }

    pub fn premium_vector(&self) -> Result<PremiumVector> {
        PremiumVector::new(self.premiums.clone())
    }
}
