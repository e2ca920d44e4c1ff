//! Pool, survival model, and scenario primitives.
//!
//! A pool is `n` participants plus an administrator. Each participant makes a
//! strictly positive investment and carries an agreed survival probability in
//! (0, 1). Survival outcomes over one period form 2^n scenarios, encoded as a
//! bitmask with participant 1 in the least-significant bit. The administrator
//! collects the whole fund exactly when every participant dies.

use crate::error::{Error, Result};

/// One member of the pool.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Participant {
    /// Initial investment, strictly positive.
    pub investment: f64,
    /// Agreed one-period survival probability, strictly inside (0, 1).
    /// "Agreed" because the pool contracts on it; it need not equal the
    /// participant's real survival probability.
    pub survival_prob: f64,
}

impl Participant {
    pub fn new(investment: f64, survival_prob: f64) -> Self {
        Self {
            investment,
            survival_prob,
        }
    }
}

/// A single-period tontine pool: participants, the administrator's stake and
/// the deterministic period return.
#[derive(Debug, Clone, PartialEq)]
pub struct Pool {
    pub participants: Vec<Participant>,
    /// Administrator investment, non-negative.
    pub admin_investment: f64,
    /// Deterministic period return R >= 0.
    pub period_return: f64,
}

impl Pool {
    pub fn new(participants: Vec<Participant>, admin_investment: f64, period_return: f64) -> Self {
        Self {
            participants,
            admin_investment,
            period_return,
        }
    }

    /// Builds a pool from parallel investment/probability slices.
    pub fn from_slices(investments: &[f64], survival_probs: &[f64], admin_investment: f64, period_return: f64) -> Self {
        let participants = investments
            .iter()
            .zip(survival_probs)
            .map(|(&investment, &survival_prob)| Participant {
                investment,
                survival_prob,
            })
            .collect();
        Self::new(participants, admin_investment, period_return)
    }

    /// Number of participants (the administrator not included).
    pub fn n(&self) -> usize {
        self.participants.len()
    }

    /// Sum of the participants' investments.
    pub fn participant_total(&self) -> f64 {
        self.participants.iter().map(|p| p.investment).sum()
    }

    /// Total fund value at time 0, administrator included.
    pub fn total_investment(&self) -> f64 {
        self.participant_total() + self.admin_investment
    }

    /// Fund value accumulated to the end of the period.
    pub fn accumulated_total(&self) -> f64 {
        (1.0 + self.period_return) * self.total_investment()
    }

    pub fn investments(&self) -> Vec<f64> {
        self.participants.iter().map(|p| p.investment).collect()
    }

    pub fn survival_probs(&self) -> Vec<f64> {
        self.participants.iter().map(|p| p.survival_prob).collect()
    }

    /// Survival model treating participants as independent with their agreed
    /// probabilities.
    pub fn independent_model(&self) -> SurvivalModel {
        SurvivalModel::Independent {
            survival_probs: self.survival_probs(),
        }
    }
}

/// Joint law of the participants' survival indicators.
#[derive(Debug, Clone, PartialEq)]
pub enum SurvivalModel {
    /// Independent survival; the probability of a scenario is the product of
    /// each participant's marginal factor.
    Independent { survival_probs: Vec<f64> },
    /// Explicit probability for each of the 2^n scenarios, indexed by the
    /// scenario bitmask.
    JointTable { n: usize, probs: Vec<f64> },
}

impl SurvivalModel {
    pub fn independent(survival_probs: Vec<f64>) -> Self {
        SurvivalModel::Independent { survival_probs }
    }

    pub fn joint_table(n: usize, probs: Vec<f64>) -> Self {
        SurvivalModel::JointTable { n, probs }
    }

    pub fn n(&self) -> usize {
        match self {
            SurvivalModel::Independent { survival_probs } => survival_probs.len(),
            SurvivalModel::JointTable { n, .. } => *n,
        }
    }

    /// Probability of one survival scenario.
    pub fn scenario_probability(&self, scenario: Scenario) -> Result<f64> {
        if scenario.n() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "scenario over {} participants queried against a model of {}",
                scenario.n(),
                self.n()
            )));
        }
        match self {
            SurvivalModel::Independent { survival_probs } => {
                let mut prob = 1.0;
                for (i, &p) in survival_probs.iter().enumerate() {
                    prob *= if scenario.survives(i) { p } else { 1.0 - p };
                }
                Ok(prob)
            }
            SurvivalModel::JointTable { probs, .. } => {
                probs
                    .get(scenario.index() as usize)
                    .copied()
                    .ok_or(Error::ScenarioOutOfRange {
                        index: scenario.index(),
                        n: self.n(),
                    })
            }
        }
    }

    /// Probability that every participant dies.
    pub fn prob_all_dead(&self) -> f64 {
        match self {
            SurvivalModel::Independent { survival_probs } => {
                survival_probs.iter().map(|p| 1.0 - p).product()
            }
            SurvivalModel::JointTable { probs, .. } => probs.first().copied().unwrap_or(0.0),
        }
    }

    /// Probability that at least one participant survives.
    pub fn prob_some_survive(&self) -> f64 {
        1.0 - self.prob_all_dead()
    }

    /// Marginal survival probability of each participant.
    pub fn marginal_survival_probs(&self) -> Vec<f64> {
        match self {
            SurvivalModel::Independent { survival_probs } => survival_probs.clone(),
            SurvivalModel::JointTable { n, probs } => {
                let mut marginals = vec![0.0; *n];
                for (index, &p) in probs.iter().enumerate() {
                    for (i, marginal) in marginals.iter_mut().enumerate() {
                        if index >> i & 1 == 1 {
                            *marginal += p;
                        }
                    }
                }
                marginals
            }
        }
    }
}

/// One survival outcome for `n` participants, encoded as a bitmask.
/// Bit `i` of the index is 1 exactly when participant `i + 1` survives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scenario {
    index: u64,
    n: usize,
}

/// Widest pool for which scenarios fit the bitmask encoding.
pub const MAX_SCENARIO_PARTICIPANTS: usize = 63;

impl Scenario {
    pub fn new(index: u64, n: usize) -> Result<Self> {
        if n == 0 || n > MAX_SCENARIO_PARTICIPANTS || index >= 1u64 << n {
            return Err(Error::ScenarioOutOfRange { index, n });
        }
        Ok(Self { index, n })
    }

    /// Encodes an explicit survival pattern, participant 1 first.
    pub fn from_survivals(survivals: &[bool]) -> Result<Self> {
        let mut index = 0u64;
        for (i, &alive) in survivals.iter().enumerate() {
            if alive {
                index |= 1 << i;
            }
        }
        Self::new(index, survivals.len())
    }

    /// All 2^n scenarios in ascending index order.
    pub fn all(n: usize) -> impl Iterator<Item = Scenario> {
        (0..1u64 << n).map(move |index| Scenario { index, n })
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Survival indicator of participant `i` (0-based).
    pub fn survives(&self, i: usize) -> bool {
        debug_assert!(i < self.n);
        self.index >> i & 1 == 1
    }

    /// True when no participant survives.
    pub fn all_dead(&self) -> bool {
        self.index == 0
    }

    /// The administrator's indicator: 1 exactly when every participant dies.
    pub fn admin_indicator(&self) -> bool {
        self.all_dead()
    }

    pub fn survivor_count(&self) -> u32 {
        self.index.count_ones()
    }
}

/// A violated pool or model invariant, reported as data rather than an error
/// so that a single validation pass can surface every problem at once.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    TooFewParticipants { n: usize },
    NonPositiveInvestment { participant: usize, value: f64 },
    SurvivalProbOutOfRange { participant: usize, value: f64 },
    NegativeAdminInvestment { value: f64 },
    NegativeReturn { value: f64 },
    NonFiniteField { field: String },
    NonPositiveTotalInvestment { total: f64 },
    ModelDimensionMismatch { pool_n: usize, model_n: usize },
    JointTableWrongLength { expected: usize, actual: usize },
    NegativeJointProbability { scenario: u64, value: f64 },
    JointTableSumNotOne { sum: f64 },
    DegenerateAllDeadProbability { prob: f64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::TooFewParticipants { n } => {
                write!(f, "a pool needs at least 2 participants (got {n})")
            }
            Violation::NonPositiveInvestment { participant, value } => write!(
                f,
                "participant {participant}: investment must be strictly positive (got {value})"
            ),
            Violation::SurvivalProbOutOfRange { participant, value } => write!(
                f,
                "participant {participant}: survival probability must lie strictly between 0 and 1 (got {value})"
            ),
            Violation::NegativeAdminInvestment { value } => write!(
                f,
                "administrator investment must be non-negative (got {value})"
            ),
            Violation::NegativeReturn { value } => {
                write!(f, "period return must be non-negative (got {value})")
            }
            Violation::NonFiniteField { field } => write!(f, "{field} must be finite"),
            Violation::NonPositiveTotalInvestment { total } => {
                write!(f, "total investment must be strictly positive (got {total})")
            }
            Violation::ModelDimensionMismatch { pool_n, model_n } => write!(
                f,
                "survival model covers {model_n} participants but the pool has {pool_n}"
            ),
            Violation::JointTableWrongLength { expected, actual } => write!(
                f,
                "joint table must list {expected} scenario probabilities (got {actual})"
            ),
            Violation::NegativeJointProbability { scenario, value } => write!(
                f,
                "joint table entry for scenario {scenario} must be non-negative (got {value})"
            ),
            Violation::JointTableSumNotOne { sum } => write!(
                f,
                "joint table probabilities must sum to 1 within 1e-12 (got {sum})"
            ),
            Violation::DegenerateAllDeadProbability { prob } => write!(
                f,
                "the probability that every participant dies must lie strictly between 0 and 1 (got {prob})"
            ),
        }
    }
}

/// Outcome of validating a pool against a survival model.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_ok() {
            write!(f, "OK")
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

/// Tolerance for probability mass checks.
pub const PROBABILITY_SUM_TOLERANCE: f64 = 1e-12;

/// Checks every pool and model invariant, collecting all violations.
pub fn validate_pool(pool: &Pool, model: &SurvivalModel) -> ValidationReport {
    let mut violations = Vec::new();
    let n = pool.n();

    if n < 2 {
        violations.push(Violation::TooFewParticipants { n });
    }
    for (i, p) in pool.participants.iter().enumerate() {
        let participant = i + 1;
        if !p.investment.is_finite() {
            violations.push(Violation::NonFiniteField {
                field: format!("participant {participant} investment"),
            });
        } else if p.investment <= 0.0 {
            violations.push(Violation::NonPositiveInvestment {
                participant,
                value: p.investment,
            });
        }
        if !p.survival_prob.is_finite() {
            violations.push(Violation::NonFiniteField {
                field: format!("participant {participant} survival probability"),
            });
        } else if p.survival_prob <= 0.0 || p.survival_prob >= 1.0 {
            violations.push(Violation::SurvivalProbOutOfRange {
                participant,
                value: p.survival_prob,
            });
        }
    }
    if !pool.admin_investment.is_finite() {
        violations.push(Violation::NonFiniteField {
            field: "administrator investment".to_string(),
        });
    } else if pool.admin_investment < 0.0 {
        violations.push(Violation::NegativeAdminInvestment {
            value: pool.admin_investment,
        });
    }
    if !pool.period_return.is_finite() {
        violations.push(Violation::NonFiniteField {
            field: "period return".to_string(),
        });
    } else if pool.period_return < 0.0 {
        violations.push(Violation::NegativeReturn {
            value: pool.period_return,
        });
    }
    let total = pool.total_investment();
    if !total.is_finite() || total <= 0.0 {
        violations.push(Violation::NonPositiveTotalInvestment { total });
    }

    if model.n() != n {
        violations.push(Violation::ModelDimensionMismatch {
            pool_n: n,
            model_n: model.n(),
        });
        // Dimensions disagree; the distribution checks below would be misleading.
        return ValidationReport { violations };
    }

    match model {
        SurvivalModel::Independent { survival_probs } => {
            for (i, &p) in survival_probs.iter().enumerate() {
                if !p.is_finite() || p <= 0.0 || p >= 1.0 {
                    violations.push(Violation::SurvivalProbOutOfRange {
                        participant: i + 1,
                        value: p,
                    });
                }
            }
        }
        SurvivalModel::JointTable { n: model_n, probs } => {
            let expected = 1usize << model_n;
            if probs.len() != expected {
                violations.push(Violation::JointTableWrongLength {
                    expected,
                    actual: probs.len(),
                });
            } else {
                for (scenario, &p) in probs.iter().enumerate() {
                    if !p.is_finite() || p < 0.0 {
                        violations.push(Violation::NegativeJointProbability {
                            scenario: scenario as u64,
                            value: p,
                        });
                    }
                }
                let sum: f64 = probs.iter().sum();
                if (sum - 1.0).abs() > PROBABILITY_SUM_TOLERANCE {
                    violations.push(Violation::JointTableSumNotOne { sum });
                }
            }
        }
    }

    let prob_all_dead = model.prob_all_dead();
    if !(prob_all_dead > 0.0 && prob_all_dead < 1.0) {
        violations.push(Violation::DegenerateAllDeadProbability {
            prob: prob_all_dead,
        });
    }

    ValidationReport { violations }
}
