//! Deterministic number rendering shared by the CLI and reports.

/// Formats `x` with 9 significant digits in the style of C's `%.9g`:
/// fixed notation for moderate exponents, scientific otherwise, trailing
/// zeros removed.
pub fn sig9(x: f64) -> String {
    sig(x, 9)
}

pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let precision = digits.max(1) - 1;
    let sci = format!("{:.*e}", precision, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        format!("{}e{}{:02}", trim(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (precision as i32 - exp).max(0) as usize;
        trim(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        assert_eq!(sig9(-0.4505), "-0.4505");
        assert_eq!(sig9(0.155_172_413_793_103_45), "0.155172414");
        assert_eq!(sig9(-0.441_007_728_894_173_6), "-0.441007729");
        assert_eq!(sig9(0.4), "0.4");
        assert_eq!(sig9(0.399_999_999_999_999_97), "0.4");
        assert_eq!(sig9(1.0), "1");
        assert_eq!(sig9(0.0), "0");
        assert_eq!(sig9(1.5e-7), "1.5e-07");
        assert_eq!(sig9(123_456_789_012.0), "1.23456789e+11");
        assert_eq!(sig9(0.000_123_456_789_123), "0.000123456789");
    }
}
