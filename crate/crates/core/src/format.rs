//! Number and table formatting shared by every output path.

use std::fmt::Write as _;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `printf("%.12g")`: 12 significant digits, trailing zeros dropped,
/// exponent form below 1e-4 or from 1e12 up.
pub fn g12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let p = SIGNIFICANT_DIGITS as i32;
    // Rounding first settles the exponent (9.9999999999996 → 1e1).
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (p - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Header plus numeric rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| *h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Comma-separated, LF line endings, header first.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (k, v) in row.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{}", g12(*v));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (1.0, "1"),
            (0.5, "0.5"),
            (2.0 / 3.0, "0.666666666667"),
            (5.0 / 6.0, "0.833333333333"),
            (0.000651, "0.000651"),
            (0.00001234, "1.234e-05"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (-0.25, "-0.25"),
            (9.9999999999996, "10"),
            (1e-300, "1e-300"),
            (std::f64::consts::PI, "3.14159265359"),
            (100.0, "100"),
        ];
        for (x, want) in cases {
            assert_eq!(g12(x), want, "{x}");
        }
        assert_eq!(g12(0.0), "0");
        assert_eq!(g12(f64::NAN), "nan");
        assert_eq!(g12(f64::NEG_INFINITY), "-inf");
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(vec!["x", "y"]);
        t.push(vec![0.0, 1.0 / 3.0]);
        t.push(vec![1.5, -2.0]);
        assert_eq!(t.to_csv(), "x,y\n0,0.333333333333\n1.5,-2\n");
        assert_eq!(t.column("y").unwrap()[1], -2.0);
        assert!(t.column("z").is_none());
    }
}
