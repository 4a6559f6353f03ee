//! Number formatting shared by the CSV emitters.

/// Formats `x` with 10 significant digits, dropping trailing zeros.
///
/// Plain decimal notation is used for decimal exponents in `[-6, 15]` and
/// scientific (`1.5e-7`) outside it. The output depends only on the bits
/// of `x`, so it is stable for golden-file comparisons.
pub fn sig10(x: f64) -> String {
    sig(x, 10)
}

/// Formats `x` with `digits` significant digits (at least 1).
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let raw: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if negative { "-" } else { "" };

    if !(-6..=15).contains(&exp) {
        let mut m = raw.clone();
        m.insert(1, '.');
        let m = trim_fraction(&m);
        return format!("{sign}{m}e{exp}");
    }
    let body = if exp >= 0 {
        let int_len = exp as usize + 1;
        if raw.len() <= int_len {
            format!("{raw}{}", "0".repeat(int_len - raw.len()))
        } else {
            format!("{}.{}", &raw[..int_len], &raw[int_len..])
        }
    } else {
        format!("0.{}{raw}", "0".repeat((-exp - 1) as usize))
    };
    format!("{sign}{}", trim_fraction(&body))
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
