//! Number formatting for CLI output and CSV files.

/// Significant digits used for every floating point number printed.
pub const SIG_DIGITS: usize = 12;

/// Formats `x` in plain decimal notation with `sig` significant digits.
pub fn sig(x: f64, sig: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return format!("{:.*}", sig.saturating_sub(1), 0.0);
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (sig as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // rounding can carry into a new leading digit (9.99.. -> 10.0..)
    let digits = s.chars().filter(char::is_ascii_digit).skip_while(|&c| c == '0').count();
    if digits > sig && decimals > 0 {
        format!("{x:.prec$}", prec = decimals - 1)
    } else {
        s
    }
}

/// [`sig`] with [`SIG_DIGITS`].
pub fn num(x: f64) -> String {
    sig(x, SIG_DIGITS)
}
