//! CSV emission. Floats use Rust's shortest round-trip decimal form, rows end
//! in LF, no trailing whitespace.

use std::fmt::Write;

use oscbath::bare_dynamics::OccupationSeries;
use oscbath::spectrum::NormalModeBasis;

use crate::run::Comparison;

pub const OCCUPATION_HEADER: &str = "t,n0,term_memory,term_thermal,term_vacuum";

pub fn occupation_csv(s: &OccupationSeries) -> String {
    let mut out = String::from(OCCUPATION_HEADER);
    out.push('\n');
    for i in 0..s.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            s.times[i], s.total[i], s.memory_term[i], s.thermal_term[i], s.vacuum_term[i]
        );
    }
    out
}

pub fn spectrum_csv(b: &NormalModeBasis) -> String {
    let mut out = String::from("r,Omega_r,t0_r\n");
    for r in 0..b.len() {
        let _ = writeln!(out, "{},{},{}", r, b.omega(r), b.t(0, r));
    }
    out
}

pub fn comparison_csv(c: &Comparison) -> String {
    let mut out = String::from("t,n0_a,n0_b,abs_diff\n");
    for (i, d) in c.diffs().enumerate() {
        let _ = writeln!(out, "{},{},{},{}", c.times[i], c.a[i], c.b[i], d);
    }
    out
}

/// Parse an occupation CSV back into (t, n0) columns.
pub fn read_occupation(text: &str) -> Result<Vec<(f64, f64)>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(OCCUPATION_HEADER) {
        return Err("unexpected header".into());
    }
    lines
        .map(|l| {
            let mut f = l.split(',').map(str::parse::<f64>);
            match (f.next(), f.next()) {
                (Some(Ok(t)), Some(Ok(n))) => Ok((t, n)),
                _ => Err(format!("bad row: {l}")),
            }
        })
        .collect()
}
