//! Locale-independent CSV formatting.

use std::fmt::Write;

/// Significant digits of every floating-point CSV field.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// `%.12g`-style formatting: shortest of fixed and scientific notation,
/// trailing zeros removed.
pub fn fmt_g(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let p = SIGNIFICANT_DIGITS;
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Quotes a field when it contains a separator, quote or newline.
pub fn field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Accumulates CSV rows with LF line endings.
#[derive(Debug, Default, Clone)]
pub struct CsvBuffer {
    text: String,
}

impl CsvBuffer {
    pub fn with_header(header: &str) -> Self {
        let mut buf = Self::default();
        buf.text.push_str(header);
        buf.text.push('\n');
        buf
    }

    pub fn row<S: AsRef<str>>(&mut self, fields: &[S]) {
        for (i, f) in fields.iter().enumerate() {
            if i > 0 {
                self.text.push(',');
            }
            let _ = write!(self.text, "{}", field(f.as_ref()));
        }
        self.text.push('\n');
    }

    pub fn rows(&self) -> usize {
        self.text.lines().count().saturating_sub(1)
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_format_matches_printf() {
        assert_eq!(fmt_g(0.0), "0");
        assert_eq!(fmt_g(1.0), "1");
        assert_eq!(fmt_g(-2.5), "-2.5");
        assert_eq!(fmt_g(0.4), "0.4");
        assert_eq!(fmt_g(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_g(1e-10), "1e-10");
        assert_eq!(fmt_g(1.234e-5), "1.234e-05");
        assert_eq!(fmt_g(0.0001), "0.0001");
        assert_eq!(fmt_g(123456789012.0), "123456789012");
        assert_eq!(fmt_g(1234567890123.0), "1.23456789012e+12");
        assert_eq!(fmt_g(f64::INFINITY), "inf");
        assert_eq!(fmt_g(f64::NAN), "nan");
    }

    #[test]
    fn rounding_carries_into_exponent() {
        assert_eq!(fmt_g(9.9999999999999e-6), "1e-05");
        assert_eq!(fmt_g(0.99999999999999), "1");
    }

    #[test]
    fn fields_are_quoted_only_when_needed() {
        assert_eq!(field("half-half"), "half-half");
        assert_eq!(field("a,b"), "\"a,b\"");
        assert_eq!(field("say \"x\""), "\"say \"\"x\"\"\"");
    }

    #[test]
    fn buffer_uses_lf() {
        let mut b = CsvBuffer::with_header("a,b");
        b.row(&["1", "2"]);
        assert_eq!(b.as_str(), "a,b\n1,2\n");
        assert_eq!(b.rows(), 1);
    }
}
