use std::fmt::Write as _;

use dicke_lattice::oracle::suite::OracleCheck;

/// Fixed-point with 12 decimals; `-0` prints as `0`.
pub fn number(x: f64) -> String {
    let s = format!("{x:.12}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

pub fn table(header: &[&str], rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(number).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn oracle_report(checks: &[OracleCheck]) -> String {
    let mut out = String::from("check,max_deviation,tolerance,status\n");
    for c in checks {
        let status = if c.passed() { "PASS" } else { "FAIL" };
        writeln!(out, "{},{:.6e},{:.1e},{status}", c.name, c.max_deviation, c.tolerance).unwrap();
    }
    out
}
