//! Command-line front end for the tontine engine.
//!
//! Subcommands map onto the library one to one: `validate`, `table`,
//! `expect`, `simulate`, `fair check|admin|solve`, `drs
//! compensate|contribute` and `irr`. Pool and claims files are the versioned
//! JSON formats from `tontine::poolfile`. Output is byte-stable for
//! identical inputs and seeds.
//!
//! Exit codes: 0 success, 1 validation failure, 2 solver non-convergence,
//! 3 I/O or parse errors.

pub mod fmt;

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use tontine::allocation::AllocationScheme;
use tontine::drs::{conditional_mean_contribution, proportional_compensation, uniform_contribution};
use tontine::expectation::{enumerate_with_limit, payout_distribution};
use tontine::fairness::{
    admin_fair_contribution, check_fairness, solve_fair_investments_internal,
    DEFAULT_FAIRNESS_TOLERANCE, DEFAULT_MAX_ITERATIONS, DEFAULT_SOLVER_TOLERANCE,
};
use tontine::irr::annuity_irr;
use tontine::model::{validate_pool, Pool, SurvivalModel};
use tontine::montecarlo::simulate;
use tontine::poolfile::{ClaimsFile, PoolFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_NO_CONVERGENCE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Row order that matches the published three-participant example table.
const PAPER_COLUMN_ORDER: [usize; 8] = [7, 6, 4, 5, 3, 1, 2, 0];

#[derive(Parser, Debug)]
#[command(
    name = "tontine",
    version,
    about = "Single-period tontine funds: payout tables, expectations, simulation, fairness and risk sharing"
)]
pub struct Cli {
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a pool file against every invariant.
    Validate {
        #[arg(long, value_name = "PATH")]
        pool: PathBuf,
        /// Emit the canonical JSON form of a valid pool.
        #[arg(long)]
        emit_normalized: bool,
    },
    /// Emit the scenario-by-scenario payout table as CSV.
    Table {
        #[arg(long, value_name = "PATH")]
        pool: PathBuf,
        /// dm | t | dr | reciprocal | benefits | shares=[...]
        #[arg(long, default_value = "dm", value_parser = parse_scheme)]
        scheme: AllocationScheme,
        /// Technical rate for the benefits scheme.
        #[arg(long, default_value_t = 0.0)]
        technical_rate: f64,
        /// Order the rows of a three-participant table like the published
        /// worked example instead of by ascending bitmask.
        #[arg(long)]
        paper_order: bool,
    },
    /// Exact expected payouts by full scenario enumeration; pools beyond the
    /// exact limit are estimated by Monte Carlo instead.
    Expect {
        #[arg(long, value_name = "PATH")]
        pool: PathBuf,
        #[arg(long, default_value = "dm", value_parser = parse_scheme)]
        scheme: AllocationScheme,
        #[arg(long, default_value_t = 0.0)]
        technical_rate: f64,
        /// Largest pool enumerated exactly.
        #[arg(long, default_value_t = tontine::DEFAULT_MAX_EXACT_N)]
        exact_limit: usize,
        /// Sample count for the Monte Carlo fallback.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Seed for the Monte Carlo fallback.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Seeded Monte Carlo estimates of the expected payouts.
    Simulate {
        #[arg(long, value_name = "PATH")]
        pool: PathBuf,
        #[arg(long, default_value = "dm", value_parser = parse_scheme)]
        scheme: AllocationScheme,
        #[arg(long, default_value_t = 0.0)]
        technical_rate: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Fairness checks and fair-investment solvers.
    Fair {
        #[command(subcommand)]
        command: FairCommand,
    },
    /// Decentralized risk-sharing rules and their dual transforms.
    Drs {
        #[command(subcommand)]
        command: DrsCommand,
    },
    /// Internal rate of return of saving a level contribution and then
    /// drawing a level benefit.
    Irr {
        contribution: f64,
        contribution_years: u32,
        benefit: f64,
        benefit_years: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum FairCommand {
    /// Residuals and verdicts for a given pool and scheme.
    Check {
        #[arg(long, value_name = "PATH")]
        pool: PathBuf,
        #[arg(long, default_value = "dm", value_parser = parse_scheme)]
        scheme: AllocationScheme,
        #[arg(long, default_value_t = 0.0)]
        technical_rate: f64,
        #[arg(long, default_value_t = DEFAULT_FAIRNESS_TOLERANCE)]
        tolerance: f64,
    },
    /// The administrator contribution that makes the fund collectively fair.
    Admin {
        #[arg(long, value_name = "PATH")]
        pool: PathBuf,
    },
    /// Solve for the investments that make the fund fair for everyone,
    /// anchored to the administrator's contribution.
    Solve {
        #[arg(long, value_name = "PATH")]
        pool: PathBuf,
        #[arg(long, default_value = "dm", value_parser = parse_scheme)]
        scheme: AllocationScheme,
        #[arg(long, default_value_t = 0.0)]
        technical_rate: f64,
        /// Administrator investment anchoring the scale.
        #[arg(long)]
        admin: f64,
        #[arg(long, default_value_t = DEFAULT_SOLVER_TOLERANCE)]
        tolerance: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_ITERATIONS)]
        max_iter: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum DrsCommand {
    /// Compensation vectors per outcome.
    Compensate {
        #[arg(long, value_name = "PATH")]
        claims: PathBuf,
        #[arg(long, value_enum, default_value_t = CompensationRule::Proportional)]
        rule: CompensationRule,
        /// Contribution rule lifted by from-contribution.
        #[arg(long, value_enum, default_value_t = ContributionBase::Uniform)]
        via: ContributionBase,
    },
    /// Contribution vectors per outcome.
    Contribute {
        #[arg(long, value_name = "PATH")]
        claims: PathBuf,
        #[arg(long, value_enum, default_value_t = ContributionRule::Uniform)]
        rule: ContributionRule,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum OutputFormat {
    Text,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum CompensationRule {
    Proportional,
    FromContribution,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum ContributionRule {
    Uniform,
    Cmean,
    FromCompensation,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
pub enum ContributionBase {
    Uniform,
    Cmean,
}

fn parse_scheme(s: &str) -> Result<AllocationScheme, String> {
    s.parse::<AllocationScheme>().map_err(|e| e.to_string())
}

/// Caps the rayon worker count from the TONTINE_THREADS environment
/// variable. Results do not depend on the count; only the wall time does.
pub fn configure_thread_pool() {
    if let Ok(value) = std::env::var("TONTINE_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

struct Failure {
    code: i32,
    message: String,
    /// Diagnostics that should still reach the output stream (for example a
    /// non-converged solver report).
    output: Option<String>,
}

impl Failure {
    fn io(message: String) -> Self {
        Failure {
            code: EXIT_IO,
            message,
            output: None,
        }
    }

    fn validation(message: String) -> Self {
        Failure {
            code: EXIT_VALIDATION,
            message,
            output: None,
        }
    }
}

fn domain_failure(error: tontine::Error) -> Failure {
    let code = match &error {
        tontine::Error::Parse(_) | tontine::Error::UnsupportedVersion(_) => EXIT_IO,
        _ => EXIT_VALIDATION,
    };
    Failure {
        code,
        message: error.to_string(),
        output: None,
    }
}

type CommandOutput = Result<String, Failure>;

/// Executes a parsed command line, writing the artifact to `out` (or the
/// `--out` path) and diagnostics to `err`, and returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (code, output, message) = match execute(&cli.command) {
        Ok(text) => (EXIT_OK, Some(text), None),
        Err(failure) => (failure.code, failure.output, Some(failure.message)),
    };
    if let Some(message) = message {
        let _ = writeln!(err, "error: {message}");
    }
    if let Some(text) = output {
        match &cli.out {
            Some(path) => {
                if let Err(e) = fs::write(path, &text) {
                    let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
                    return EXIT_IO;
                }
            }
            None => {
                if out.write_all(text.as_bytes()).is_err() {
                    return EXIT_IO;
                }
            }
        }
    }
    code
}

fn execute(command: &Command) -> CommandOutput {
    match command {
        Command::Validate {
            pool,
            emit_normalized,
        } => run_validate(pool, *emit_normalized),
        Command::Table {
            pool,
            scheme,
            technical_rate,
            paper_order,
        } => run_table(pool, scheme, *technical_rate, *paper_order),
        Command::Expect {
            pool,
            scheme,
            technical_rate,
            exact_limit,
            samples,
            seed,
        } => run_expect(pool, scheme, *technical_rate, *exact_limit, *samples, *seed),
        Command::Simulate {
            pool,
            scheme,
            technical_rate,
            samples,
            seed,
            format,
        } => run_simulate(pool, scheme, *technical_rate, *samples, *seed, *format),
        Command::Fair { command } => match command {
            FairCommand::Check {
                pool,
                scheme,
                technical_rate,
                tolerance,
            } => run_fair_check(pool, scheme, *technical_rate, *tolerance),
            FairCommand::Admin { pool } => run_fair_admin(pool),
            FairCommand::Solve {
                pool,
                scheme,
                technical_rate,
                admin,
                tolerance,
                max_iter,
            } => run_fair_solve(pool, scheme, *technical_rate, *admin, *tolerance, *max_iter),
        },
        Command::Drs { command } => match command {
            DrsCommand::Compensate { claims, rule, via } => {
                run_drs_compensate(claims, *rule, *via)
            }
            DrsCommand::Contribute { claims, rule } => run_drs_contribute(claims, *rule),
        },
        Command::Irr {
            contribution,
            contribution_years,
            benefit,
            benefit_years,
        } => run_irr(*contribution, *contribution_years, *benefit, *benefit_years),
    }
}

fn load_pool_file(path: &Path) -> Result<PoolFile, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))?;
    PoolFile::from_json(&text).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn load_validated_pool(path: &Path) -> Result<(Pool, SurvivalModel), Failure> {
    let file = load_pool_file(path)?;
    let pool = file.pool();
    let model = file.survival_model();
    let report = validate_pool(&pool, &model);
    if !report.is_ok() {
        return Err(Failure::validation(format!(
            "invalid pool {}:\n{report}",
            path.display()
        )));
    }
    Ok((pool, model))
}

fn resolve_scheme(scheme: &AllocationScheme, technical_rate: f64) -> AllocationScheme {
    match scheme {
        AllocationScheme::Benefits { .. } => AllocationScheme::Benefits { technical_rate },
        other => other.clone(),
    }
}

fn party_label(i: usize, n: usize) -> String {
    if i == n {
        "admin".to_string()
    } else {
        (i + 1).to_string()
    }
}

fn run_validate(path: &Path, emit_normalized: bool) -> CommandOutput {
    let file = load_pool_file(path)?;
    let pool = file.pool();
    let model = file.survival_model();
    let report = validate_pool(&pool, &model);
    if !report.is_ok() {
        return Err(Failure::validation(format!(
            "invalid pool {}:\n{report}",
            path.display()
        )));
    }
    if emit_normalized {
        Ok(file.to_normalized_json())
    } else {
        Ok("OK\n".to_string())
    }
}

fn run_table(
    path: &Path,
    scheme: &AllocationScheme,
    technical_rate: f64,
    paper_order: bool,
) -> CommandOutput {
    let (pool, model) = load_validated_pool(path)?;
    let scheme = resolve_scheme(scheme, technical_rate);
    let allocation = scheme.evaluate(&pool).map_err(domain_failure)?;
    let rows = payout_distribution(&pool, &allocation, &model).map_err(domain_failure)?;

    let order: Vec<usize> = if paper_order {
        if pool.n() != 3 {
            return Err(Failure::validation(
                "--paper-order applies only to three-participant pools".to_string(),
            ));
        }
        PAPER_COLUMN_ORDER.to_vec()
    } else {
        (0..rows.len()).collect()
    };

    let mut text = String::from("scenario,probability");
    for i in 0..=pool.n() {
        write!(text, ",W_{}", i + 1).unwrap();
    }
    text.push('\n');
    for index in order {
        let row = &rows[index];
        write!(
            text,
            "{},{}",
            row.scenario.index(),
            fmt::probability(row.probability)
        )
        .unwrap();
        for w in &row.payouts.payouts {
            write!(text, ",{}", fmt::currency(*w)).unwrap();
        }
        text.push('\n');
    }
    Ok(text)
}

fn run_expect(
    path: &Path,
    scheme: &AllocationScheme,
    technical_rate: f64,
    exact_limit: usize,
    samples: u64,
    seed: u64,
) -> CommandOutput {
    let (pool, model) = load_validated_pool(path)?;
    let scheme = resolve_scheme(scheme, technical_rate);
    let allocation = scheme.evaluate(&pool).map_err(domain_failure)?;
    let report = match enumerate_with_limit(&pool, &allocation, &model, exact_limit) {
        Ok(report) => report,
        Err(tontine::Error::EnumerationTooLarge { .. }) => {
            // too wide for exact mode; estimate instead
            let estimate =
                simulate(&pool, &allocation, &model, samples, seed).map_err(domain_failure)?;
            return Ok(format_simulation(&pool, &scheme, &estimate, OutputFormat::Text, true));
        }
        Err(e) => return Err(domain_failure(e)),
    };

    let n = pool.n();
    let mut text = String::new();
    writeln!(text, "mode: exact").unwrap();
    writeln!(text, "scheme: {scheme}").unwrap();
    writeln!(text, "participants: {n}").unwrap();
    writeln!(text, "prob_all_dead: {}", fmt::probability(report.prob_all_dead)).unwrap();
    writeln!(
        text,
        "prob_some_survive: {}",
        fmt::probability(1.0 - report.prob_all_dead)
    )
    .unwrap();
    writeln!(
        text,
        "group_expected_payout: {}",
        fmt::currency(report.group_expected_payout)
    )
    .unwrap();
    writeln!(text, "party,expected_payout,conditional_expected_payout").unwrap();
    for i in 0..=n {
        writeln!(
            text,
            "{},{},{}",
            party_label(i, n),
            fmt::currency(report.expected_payout[i]),
            fmt::currency(report.conditional_expected_payout[i]),
        )
        .unwrap();
    }
    Ok(text)
}

fn run_simulate(
    path: &Path,
    scheme: &AllocationScheme,
    technical_rate: f64,
    samples: u64,
    seed: u64,
    format: OutputFormat,
) -> CommandOutput {
    let (pool, model) = load_validated_pool(path)?;
    let scheme = resolve_scheme(scheme, technical_rate);
    let allocation = scheme.evaluate(&pool).map_err(domain_failure)?;
    let estimate = simulate(&pool, &allocation, &model, samples, seed).map_err(domain_failure)?;
    Ok(format_simulation(&pool, &scheme, &estimate, format, false))
}

fn format_simulation(
    pool: &Pool,
    scheme: &AllocationScheme,
    estimate: &tontine::McEstimate,
    format: OutputFormat,
    exact_fallback: bool,
) -> String {
    let n = pool.n();
    let mut table = String::from("party,mean,std_error,conditional_mean,conditional_std_error\n");
    for i in 0..=n {
        let conditional_mean = estimate
            .conditional_mean
            .as_ref()
            .map(|m| fmt::currency(m[i]))
            .unwrap_or_default();
        let conditional_std_error = estimate
            .conditional_std_error
            .as_ref()
            .map(|m| fmt::currency(m[i]))
            .unwrap_or_default();
        writeln!(
            table,
            "{},{},{},{},{}",
            party_label(i, n),
            fmt::currency(estimate.mean[i]),
            fmt::currency(estimate.std_error[i]),
            conditional_mean,
            conditional_std_error,
        )
        .unwrap();
    }

    match format {
        OutputFormat::Csv => table,
        OutputFormat::Text => {
            let mut text = String::new();
            writeln!(text, "mode: monte-carlo").unwrap();
            if exact_fallback {
                writeln!(text, "note: pool exceeds the exact enumeration limit").unwrap();
            }
            writeln!(text, "scheme: {scheme}").unwrap();
            writeln!(text, "samples_used: {}", estimate.samples_used).unwrap();
            writeln!(text, "samples_rejected: {}", estimate.samples_rejected).unwrap();
            writeln!(text, "seed: {}", estimate.seed).unwrap();
            writeln!(text, "high_rejection_rate: {}", estimate.high_rejection_rate).unwrap();
            text.push_str(&table);
            text
        }
    }
}

fn run_fair_check(
    path: &Path,
    scheme: &AllocationScheme,
    technical_rate: f64,
    tolerance: f64,
) -> CommandOutput {
    let (pool, model) = load_validated_pool(path)?;
    let scheme = resolve_scheme(scheme, technical_rate);
    let allocation = scheme.evaluate(&pool).map_err(domain_failure)?;
    let report = check_fairness(&pool, &allocation, &model, tolerance).map_err(domain_failure)?;

    let n = pool.n();
    let mut text = String::new();
    writeln!(text, "scheme: {scheme}").unwrap();
    writeln!(text, "tolerance: {}", fmt::rate(report.tolerance)).unwrap();
    writeln!(text, "participant_fair: {}", report.participant_fair).unwrap();
    writeln!(text, "admin_fair: {}", report.admin_fair).unwrap();
    writeln!(text, "collectively_fair: {}", report.collectively_fair).unwrap();
    writeln!(text, "party,residual").unwrap();
    for (i, residual) in report.participant_residuals.iter().enumerate() {
        writeln!(text, "{},{}", party_label(i, n), fmt::currency(*residual)).unwrap();
    }
    writeln!(text, "admin,{}", fmt::currency(report.admin_residual)).unwrap();
    Ok(text)
}

fn run_fair_admin(path: &Path) -> CommandOutput {
    let (pool, model) = load_validated_pool(path)?;
    let contribution =
        admin_fair_contribution(&pool.investments(), &model).map_err(domain_failure)?;
    Ok(format!("{}\n", fmt::currency(contribution)))
}

fn run_fair_solve(
    path: &Path,
    scheme: &AllocationScheme,
    technical_rate: f64,
    admin: f64,
    tolerance: f64,
    max_iter: usize,
) -> CommandOutput {
    let (pool, model) = load_validated_pool(path)?;
    let scheme = resolve_scheme(scheme, technical_rate);
    let solve = solve_fair_investments_internal(&scheme, admin, &model, tolerance, max_iter)
        .map_err(domain_failure)?;

    let mut text = String::new();
    writeln!(text, "scheme: {scheme}").unwrap();
    writeln!(text, "converged: {}", solve.converged).unwrap();
    writeln!(text, "iterations: {}", solve.iterations).unwrap();
    writeln!(
        text,
        "max_relative_change: {}",
        fmt::rate(solve.max_relative_change)
    )
    .unwrap();

    if !solve.converged {
        writeln!(text, "participant,investment").unwrap();
        for (i, investment) in solve.investments.iter().enumerate() {
            writeln!(text, "{},{}", i + 1, fmt::currency(*investment)).unwrap();
        }
        writeln!(text, "admin,{}", fmt::currency(admin)).unwrap();
        return Err(Failure {
            code: EXIT_NO_CONVERGENCE,
            message: format!(
                "fixed-point solver did not converge after {} iterations (last change {})",
                solve.iterations,
                fmt::rate(solve.max_relative_change)
            ),
            output: Some(text),
        });
    }

    // verify the solved fund end to end before reporting it
    let solved_pool = Pool::from_slices(
        &solve.investments,
        &model.marginal_survival_probs(),
        admin,
        pool.period_return,
    );
    let allocation = scheme.evaluate(&solved_pool).map_err(domain_failure)?;
    let fairness = check_fairness(
        &solved_pool,
        &allocation,
        &model,
        DEFAULT_FAIRNESS_TOLERANCE,
    )
    .map_err(domain_failure)?;
    writeln!(text, "participant_fair: {}", fairness.participant_fair).unwrap();
    writeln!(text, "admin_fair: {}", fairness.admin_fair).unwrap();
    writeln!(text, "participant,investment").unwrap();
    for (i, investment) in solve.investments.iter().enumerate() {
        writeln!(text, "{},{}", i + 1, fmt::currency(*investment)).unwrap();
    }
    writeln!(text, "admin,{}", fmt::currency(admin)).unwrap();
    Ok(text)
}

fn load_claims(path: &Path) -> Result<ClaimsFile, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))?;
    ClaimsFile::from_json(&text).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn run_drs_compensate(
    path: &Path,
    rule: CompensationRule,
    via: ContributionBase,
) -> CommandOutput {
    let file = load_claims(path)?;
    let distribution = file.distribution().map_err(domain_failure)?;
    let premiums = file.premium_vector().map_err(domain_failure)?;
    if premiums.len() != distribution.parties() {
        return Err(Failure::validation(format!(
            "{} premiums against {} parties",
            premiums.len(),
            distribution.parties()
        )));
    }
    let rate = file.period_return;
    let growth = 1.0 + rate;

    let mut text = header_for(distribution.parties(), "W");
    for (k, outcome) in distribution.outcomes().iter().enumerate() {
        let compensations = match rule {
            CompensationRule::Proportional => {
                proportional_compensation(&premiums, &outcome.claims, rate)
                    .map_err(domain_failure)?
            }
            CompensationRule::FromContribution => {
                let contributions = match via {
                    ContributionBase::Uniform => uniform_contribution(&outcome.claims),
                    ContributionBase::Cmean => conditional_mean_contribution(&distribution, k)
                        .map_err(domain_failure)?,
                };
                premiums
                    .as_slice()
                    .iter()
                    .zip(&outcome.claims)
                    .zip(&contributions)
                    .map(|((&premium, &claim), &contribution)| {
                        growth * premium + claim - contribution
                    })
                    .collect()
            }
        };
        push_row(&mut text, k, outcome.probability, &compensations);
    }
    Ok(text)
}

fn run_drs_contribute(path: &Path, rule: ContributionRule) -> CommandOutput {
    let file = load_claims(path)?;
    let distribution = file.distribution().map_err(domain_failure)?;
    let rate = file.period_return;

    let mut text = header_for(distribution.parties(), "C");
    for (k, outcome) in distribution.outcomes().iter().enumerate() {
        let contributions = match rule {
            ContributionRule::Uniform => uniform_contribution(&outcome.claims),
            ContributionRule::Cmean => {
                conditional_mean_contribution(&distribution, k).map_err(domain_failure)?
            }
            ContributionRule::FromCompensation => {
                let premiums = file.premium_vector().map_err(domain_failure)?;
                if premiums.len() != distribution.parties() {
                    return Err(Failure::validation(format!(
                        "{} premiums against {} parties",
                        premiums.len(),
                        distribution.parties()
                    )));
                }
                let compensations =
                    proportional_compensation(&premiums, &outcome.claims, rate)
                        .map_err(domain_failure)?;
                premiums
                    .as_slice()
                    .iter()
                    .zip(&outcome.claims)
                    .zip(&compensations)
                    .map(|((&premium, &claim), &compensation)| {
                        (1.0 + rate) * premium + claim - compensation
                    })
                    .collect()
            }
        };
        push_row(&mut text, k, outcome.probability, &contributions);
    }
    Ok(text)
}

fn header_for(parties: usize, prefix: &str) -> String {
    let mut text = String::from("outcome,probability");
    for i in 0..parties {
        write!(text, ",{prefix}_{}", i + 1).unwrap();
    }
    text.push('\n');
    text
}

fn push_row(text: &mut String, index: usize, probability: f64, values: &[f64]) {
    write!(text, "{index},{}", fmt::probability(probability)).unwrap();
    for v in values {
        write!(text, ",{}", fmt::currency(*v)).unwrap();
    }
    text.push('\n');
}

fn run_irr(
    contribution: f64,
    contribution_years: u32,
    benefit: f64,
    benefit_years: u32,
) -> CommandOutput {
    let rate = annuity_irr(contribution, contribution_years, benefit, benefit_years)
        .map_err(domain_failure)?;
    Ok(format!("{rate:.6}\n"))
}
