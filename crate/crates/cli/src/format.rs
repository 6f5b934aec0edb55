//! Locale-independent number and CSV formatting.

/// Significant digits of every number written to CSV.
pub const SIGNIFICANT: usize = 12;

/// `%.12g`: fixed notation for decimal exponents in `[-4, 12)`, scientific
/// otherwise, trailing zeros removed.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..SIGNIFICANT as i32).contains(&exp) {
        let decimals = (SIGNIFICANT as i32 - 1 - exp) as usize;
        trim(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{}{:02}", trim(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Accumulates comma-separated rows with LF line endings.
#[derive(Debug, Default)]
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut c = Self::default();
        c.line(header.iter().map(|s| s.to_string()));
        c
    }

    pub fn line<I: IntoIterator<Item = String>>(&mut self, fields: I) {
        for (i, f) in fields.into_iter().enumerate() {
            if i > 0 {
                self.buf.push(',');
            }
            self.buf.push_str(&f);
        }
        self.buf.push('\n');
    }

    pub fn row(&mut self, values: &[f64]) {
        self.line(values.iter().map(|&v| num(v)));
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_format() {
        assert_eq!(num(0.36), "0.36");
        assert_eq!(num(0.36000000000000004), "0.36");
        assert_eq!(num(-0.0), "0");
        assert_eq!(num(1.0), "1");
        assert_eq!(num(5.0), "5");
        assert_eq!(num(std::f64::consts::LN_2), "0.69314718056");
        assert_eq!(num(0.819769605324466), "0.819769605324");
        assert_eq!(num(3.08e-33), "3.08e-33");
        assert_eq!(num(1.5e-5), "1.5e-05");
        assert_eq!(num(1.5e-4), "0.00015");
        assert_eq!(num(123456789012.0), "123456789012");
        assert_eq!(num(1234567890123.0), "1.23456789012e+12");
        assert_eq!(num(9.9999999999999), "10");
        assert_eq!(num(-2.5), "-2.5");
    }

    #[test]
    fn csv_lines() {
        let mut c = Csv::new(&["a", "b"]);
        c.row(&[1.0, 0.25]);
        assert_eq!(c.finish(), "a,b\n1,0.25\n");
    }
}
