use std::io::{self, Write};

use super::SweepResult;

/// Significant digits written for every CSV number.
pub const CSV_SIG_DIGITS: usize = 12;

/// Formats `x` with `digits` significant digits, in fixed notation for
/// decimal exponents in `[-5, digits)` and scientific notation otherwise.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let exponent: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..digits as i32).contains(&exponent) {
        let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

/// Writes `param,E_<state>...,imag_residue` with `\n` line endings.
pub fn write_csv<W: Write>(result: &SweepResult, mut out: W) -> io::Result<()> {
    let mut header = String::from("param");
    for s in &result.config.initial_states {
        header.push_str(",E_");
        header.push_str(s.label());
    }
    header.push_str(",imag_residue\n");
    out.write_all(header.as_bytes())?;

    let mut line = String::new();
    for row in &result.rows {
        line.clear();
        line.push_str(&format_sig(row.param, CSV_SIG_DIGITS));
        for e in &row.negativities {
            line.push(',');
            line.push_str(&format_sig(*e, CSV_SIG_DIGITS));
        }
        line.push(',');
        line.push_str(&format_sig(row.imag_residue, CSV_SIG_DIGITS));
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::{find_preset, Grid, SweepRow};

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(1.0, 12), "1.00000000000");
        assert_eq!(format_sig(0.85, 12), "0.850000000000");
        assert_eq!(format_sig(20.0, 12), "20.0000000000");
        assert_eq!(format_sig(-0.125, 4), "-0.1250");
        assert_eq!(format_sig(1.5e-9, 12), "1.50000000000e-9");
        assert_eq!(format_sig(0.0, 12), "0");
        assert_eq!(format_sig(0.99999999999999, 12), "1.00000000000");
    }

    #[test]
    fn header_and_rows() {
        let mut cfg = find_preset("fig1a").unwrap().config;
        cfg.grid = Grid::new(0.0, 1.0, 2);
        let result = SweepResult {
            config: cfg,
            rows: vec![
                SweepRow { param: 0.0, negativities: vec![1.0, 0.85, 0.7], imag_residue: 0.0 },
                SweepRow { param: 1.0, negativities: vec![1.0, 0.85, 0.7], imag_residue: 0.0 },
            ],
        };
        let mut buf = Vec::new();
        write_csv(&result, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "param,E_bell,E_werner,E_genwerner,imag_residue\n\
             0,1.00000000000,0.850000000000,0.700000000000,0\n\
             1.00000000000,1.00000000000,0.850000000000,0.700000000000,0\n"
        );
    }
}
