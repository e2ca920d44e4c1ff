//! Internal rate of return for a save-then-draw annuity pattern.
//!
//! A saver pays a level contribution for a number of years, then draws a
//! level benefit for another number of years. The internal rate of return is
//! the rate at which the accumulated value of the contributions, taken at the
//! retirement instant, equals the discounted value of the benefits taken at
//! the same instant. Both legs are ordinary annuities.

use crate::error::{Error, Result};

/// Lower end of the search bracket.
pub const IRR_BRACKET_LO: f64 = -0.99;
/// Upper end of the search bracket.
pub const IRR_BRACKET_HI: f64 = 1.0;
/// The balance at the solved rate is below this fraction of the leg values.
pub const IRR_RELATIVE_TOLERANCE: f64 = 1e-10;

/// Accumulated value of an ordinary annuity at the instant of its last payment.
pub fn annuity_future_value(payment: f64, years: u32, rate: f64) -> f64 {
    payment * accumulation_factor(years, rate)
}

/// Value of an ordinary annuity one period before its first payment.
pub fn annuity_present_value(payment: f64, years: u32, rate: f64) -> f64 {
    payment * discount_factor(years, rate)
}

fn accumulation_factor(years: u32, rate: f64) -> f64 {
    if rate == 0.0 {
        return years as f64;
    }
    // ((1+r)^n - 1) / r via expm1/ln_1p, stable for tiny |r|
    (years as f64 * rate.ln_1p()).exp_m1() / rate
}

fn discount_factor(years: u32, rate: f64) -> f64 {
    if rate == 0.0 {
        return years as f64;
    }
    -(-(years as f64) * rate.ln_1p()).exp_m1() / rate
}

/// Solves for the rate equating the contributions' accumulated value with the
/// benefits' discounted value at the retirement instant, by bisection on
/// (-0.99, 1.0).
pub fn annuity_irr(
    contribution: f64,
    contribution_years: u32,
    benefit: f64,
    benefit_years: u32,
) -> Result<f64> {
    if !(contribution > 0.0 && contribution.is_finite()) || !(benefit > 0.0 && benefit.is_finite())
    {
        return Err(Error::InvalidInput(
            "contribution and benefit must be strictly positive".into(),
        ));
    }
    if contribution_years == 0 || benefit_years == 0 {
        return Err(Error::InvalidInput(
            "contribution and benefit periods must cover at least one year".into(),
        ));
    }

    let balance = |rate: f64| {
        annuity_future_value(contribution, contribution_years, rate)
            - annuity_present_value(benefit, benefit_years, rate)
    };
    let scale = |rate: f64| {
        annuity_future_value(contribution, contribution_years, rate)
            .abs()
            .max(annuity_present_value(benefit, benefit_years, rate).abs())
            .max(1.0)
    };

    let mut lo = IRR_BRACKET_LO;
    let mut hi = IRR_BRACKET_HI;
    let mut f_lo = balance(lo);
    let f_hi = balance(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::NoIrrInBracket { lo, hi });
    }

    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        let f_mid = balance(mid);
        if f_mid == 0.0 || f_mid.abs() <= IRR_RELATIVE_TOLERANCE * scale(mid) {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if hi - lo < f64::EPSILON * mid.abs().max(1.0) {
            break;
        }
    }
    Ok(mid)
}
