//! Deterministic number formatting for machine and human output.
//!
//! Machine output carries currency with 6 decimals and probabilities with 12
//! significant digits; human-facing diagnostics round currency to 2
//! decimals. All rounding is half-to-even, and internal values are never
//! rounded before formatting.

fn round_half_even(value: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    (value * scale).round_ties_even() / scale
}

/// Currency for machine output: 6 decimals.
pub fn currency(value: f64) -> String {
    format!("{:.6}", round_half_even(value, 6))
}

/// Currency for human-facing messages: 2 decimals.
pub fn currency_human(value: f64) -> String {
    format!("{:.2}", round_half_even(value, 2))
}

/// Probability with 12 significant digits.
pub fn probability(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).clamp(0, 30) as u32;
    format!(
        "{:.*}",
        decimals as usize,
        round_half_even(value, decimals)
    )
}

/// A rate (solver diagnostics, tolerances) in scientific notation.
pub fn rate(value: f64) -> String {
    format!("{value:e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn currency_rounds_ties_to_even() {
        // 13/128 and 15/128 are exact in binary, so the scaled values sit on
        // exact .5 ties
        assert_eq!(currency(0.1015625), "0.101562");
        assert_eq!(currency(0.1171875), "0.117188");
        assert_eq!(currency(141.17647058823528), "141.176471");
        assert_eq!(currency_human(0.125), "0.12");
        assert_eq!(currency_human(0.375), "0.38");
    }

    #[test]
    fn probabilities_carry_twelve_significant_digits() {
        assert_eq!(probability(0.08), "0.0800000000000");
        assert_eq!(probability(0.32000000000000006), "0.320000000000");
        assert_eq!(probability(1.0), "1.00000000000");
        assert_eq!(probability(0.0), "0");
        assert_eq!(probability(5.0 / 12.0), "0.416666666667");
    }
}
