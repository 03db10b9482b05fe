//! Reproducible number and CSV formatting for the CLI.

use crate::chsh::ScanTable;

/// Decimal places for single-line outputs.
pub const LINE_DECIMALS: usize = 10;
/// Decimal places for CSV cells.
pub const CSV_DECIMALS: usize = 12;

/// Fixed-point formatting with −0 normalized to 0 so diffs are stable.
pub fn fixed(x: f64, decimals: usize) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.decimals$}")
}

/// Render a scan as CSV: UTF-8, LF line endings, header row, comma
/// separator, `.` decimal point, no trailing separator. Flagged rows
/// carry the marker `degenerate` in every payload cell.
pub fn scan_to_csv(table: &ScanTable<f64>) -> String {
    let mut out = String::new();
    out.push_str("beta");
    for c in &table.columns {
        out.push(',');
        out.push_str(c);
    }
    out.push('\n');
    for row in &table.rows {
        out.push_str(&fixed(row.beta, CSV_DECIMALS));
        match &row.values {
            Ok(values) => {
                for v in values {
                    out.push(',');
                    out.push_str(&fixed(*v, CSV_DECIMALS));
                }
            }
            Err(_) => {
                for _ in &table.columns {
                    out.push_str(",degenerate");
                }
            }
        }
        out.push('\n');
    }
    out
}
