//! Number formatting shared by every output format.

/// `x` with 15 significant digits in the style of C's `%.15g`.
pub fn fmt15(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// `x` rounded to 15 significant digits, so JSON output agrees with CSV.
pub fn round15(x: f64) -> f64 {
    if x.is_finite() {
        fmt15(x).parse().unwrap_or(x)
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(fmt15(1.0), "1");
        assert_eq!(fmt15(-2.5), "-2.5");
        assert_eq!(fmt15(std::f64::consts::PI), "3.14159265358979");
        assert_eq!(fmt15(2f64.acosh()), "1.31695789692482");
        assert_eq!(fmt15(1e-7), "1e-07");
        assert_eq!(fmt15(1.5e20), "1.5e+20");
        assert_eq!(fmt15(123456.0), "123456");
        assert_eq!(fmt15(0.000123), "0.000123");
        assert_eq!(fmt15(f64::NAN), "NaN");
        assert_eq!(round15(0.1 + 0.2), 0.3);
    }
}
