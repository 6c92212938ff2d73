//! Number formatting and literal parsing shared by spec files and reports.

use innerfn::C64;

/// `%.17g` rendering: 17 significant digits, trailing zeros removed.
/// Negative zero prints as `0`.
pub fn g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs())
    } else {
        strip_zeros(&format!("{:.*}", (16 - exp) as usize, x))
    }
}

fn strip_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Complex literal `re+imi` or `re-imi` at 17 significant digits.
pub fn complex_literal(z: C64) -> String {
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{}i", g17(z.re), g17(im.abs()))
}

/// Length of the decimal float at the start of `s`: optional sign, digits
/// with an optional fraction, optional exponent.
fn float_prefix(s: &[u8]) -> Option<usize> {
    let mut i = 0;
    if matches!(s.first(), Some(b'+' | b'-')) {
        i += 1;
    }
    let int_start = i;
    while i < s.len() && s[i].is_ascii_digit() {
        i += 1;
    }
    let mut digits = i - int_start;
    if i < s.len() && s[i] == b'.' {
        i += 1;
        let frac_start = i;
        while i < s.len() && s[i].is_ascii_digit() {
            i += 1;
        }
        digits += i - frac_start;
    }
    if digits == 0 {
        return None;
    }
    if i < s.len() && (s[i] == b'e' || s[i] == b'E') {
        let mut j = i + 1;
        if matches!(s.get(j), Some(b'+' | b'-')) {
            j += 1;
        }
        let exp_start = j;
        while j < s.len() && s[j].is_ascii_digit() {
            j += 1;
        }
        if j == exp_start {
            return None;
        }
        i = j;
    }
    Some(i)
}

/// Strict decimal float; rejects `inf`, `nan` and values that overflow.
pub fn parse_float(s: &str) -> Option<f64> {
    let end = float_prefix(s.as_bytes())?;
    if end != s.len() {
        return None;
    }
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}

/// Complex literal `FLOAT(+|-)FLOATi` without spaces.
pub fn parse_complex(s: &str) -> Option<C64> {
    let bytes = s.as_bytes();
    let re_end = float_prefix(bytes)?;
    if !matches!(bytes.get(re_end), Some(b'+' | b'-')) {
        return None;
    }
    let im_len = float_prefix(&bytes[re_end..])?;
    let im_end = re_end + im_len;
    if im_end + 1 != bytes.len() || bytes[im_end] != b'i' {
        return None;
    }
    let re = parse_float(&s[..re_end])?;
    let im = parse_float(&s[re_end..im_end])?;
    Some(C64::new(re, im))
}
