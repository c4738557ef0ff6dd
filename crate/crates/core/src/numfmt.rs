//! Decimal presentation of rates and scores.
//!
//! Values are scaled to the requested number of places and snapped to
//! 1e-6 of a unit in the last place before cutting, so binary noise such as
//! `0.29 * 100 = 28.999999999999996` does not leak into the output.

fn scaled(value: f64, places: u32) -> f64 {
    let scaled = value * 10f64.powi(places as i32);
    (scaled * 1e6).round() / 1e6
}

/// Truncate toward zero at `places` decimals.
pub fn truncate(value: f64, places: u32) -> f64 {
    scaled(value, places).trunc() / 10f64.powi(places as i32)
}

/// Round half to even at `places` decimals.
pub fn round_half_even(value: f64, places: u32) -> f64 {
    scaled(value, places).round_ties_even() / 10f64.powi(places as i32)
}

pub fn fmt_truncated(value: f64, places: u32) -> String {
    format!("{:.*}", places as usize, truncate(value, places))
}

pub fn fmt_half_even(value: f64, places: u32) -> String {
    format!("{:.*}", places as usize, round_half_even(value, places))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_matches_table_presentation() {
        assert_eq!(fmt_truncated(15.569994920924042, 3), "15.569");
        assert_eq!(fmt_truncated(1.1001100110011, 3), "1.100");
        assert_eq!(fmt_truncated(0.29, 2), "0.29");
        assert_eq!(fmt_truncated(-2.719, 2), "-2.71");
    }

    #[test]
    fn half_even_ties() {
        assert_eq!(fmt_half_even(94.225, 2), "94.22");
        assert_eq!(fmt_half_even(94.635, 2), "94.64");
        assert_eq!(fmt_half_even(2.5, 0), "2");
        assert_eq!(fmt_half_even(94.2251, 2), "94.23");
    }
}
