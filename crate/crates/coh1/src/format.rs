//! Number formatting for reports: 17 significant digits in JSON and CSV,
//! 6 in human tables.

use std::io;

use serde::Serialize;

/// `%.{digits}g`-style formatting.
///
/// Uses fixed notation when the decimal exponent lies in `[-4, digits)`
/// and scientific notation otherwise; trailing zeros are trimmed.
pub fn fmt_g(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if exp < -4 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// 17 significant digits; always parses back to the same `f64`.
pub fn g17(v: f64) -> String {
    fmt_g(v, 17)
}

/// 6 significant digits for human-readable tables.
pub fn g6(v: f64) -> String {
    fmt_g(v, 6)
}

/// Compact JSON formatter that writes floats with 17 significant digits.
///
/// Integral floats keep a trailing `.0` so they read back as floats.
struct G17Formatter;

impl serde_json::ser::Formatter for G17Formatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        let mut s = g17(v);
        if !s.contains(['.', 'e', 'n', 'i']) {
            s.push_str(".0");
        }
        w.write_all(s.as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(v))
    }
}

/// Serializes `value` as single-line JSON with 17-digit floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, G17Formatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}
