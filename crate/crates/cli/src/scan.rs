use std::ops::RangeInclusive;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use starlike_core::graphs::{predicted_arrays, Branch};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub k: usize,
    pub l: usize,
    pub r: usize,
    pub branch: Branch,
    /// Array from a point-vertex.
    pub iota: String,
    /// Array from a block-vertex.
    pub iota_prime: String,
}

/// `"a..b"` (inclusive) or a single value.
pub fn parse_range(text: &str) -> Result<RangeInclusive<usize>> {
    let num = |s: &str| s.trim().parse::<usize>().with_context(|| format!("bad range bound {s:?}"));
    let range = match text.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => {
            let x = num(text)?;
            x..=x
        }
    };
    if range.is_empty() {
        bail!("empty range {text:?}");
    }
    Ok(range)
}

/// One row per triple whose predicted arrays pass every integrality condition.
/// Triples outside `k, l >= 2, r >= 3` are skipped.
pub fn scan(ks: RangeInclusive<usize>, ls: RangeInclusive<usize>, rs: RangeInclusive<usize>) -> Vec<Row> {
    let mut rows = Vec::new();
    for k in ks {
        for l in ls.clone() {
            for r in rs.clone() {
                let Ok(pred) = predicted_arrays(k, l, r) else { continue };
                if let (true, Some(iota), Some(iota_prime)) = (pred.feasible, &pred.iota, &pred.iota_prime) {
                    rows.push(Row {
                        k,
                        l,
                        r,
                        branch: pred.branch,
                        iota: iota.to_string(),
                        iota_prime: iota_prime.to_string(),
                    });
                }
            }
        }
    }
    rows
}

pub fn to_csv(rows: &[Row]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["k", "l", "r", "branch", "iota", "iota_prime"])?;
    for row in rows {
        let branch = match row.branch {
            Branch::Diam3 => "diam3",
            Branch::Diam4 => "diam4",
        };
        w.write_record([&row.k.to_string(), &row.l.to_string(), &row.r.to_string(), branch, &row.iota, &row.iota_prime])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(rows: &[Row], k: usize, l: usize, r: usize) -> Option<&Row> {
        rows.iter().find(|x| (x.k, x.l, x.r) == (k, l, r))
    }

    #[test]
    fn default_window() {
        let rows = scan(2..=8, 2..=4, 3..=8);
        assert_eq!(find(&rows, 4, 2, 7).unwrap().branch, Branch::Diam3);
        assert_eq!(find(&rows, 4, 2, 4).unwrap().branch, Branch::Diam4);
        assert!(rows.iter().all(|x| x.k % x.l == 0));
    }

    #[test]
    fn six_two_eleven() {
        let rows = scan(6..=6, 2..=2, 11..=11);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].branch, Branch::Diam3);
        assert_eq!(rows[0].iota, "(11,5,6; 1,5,6)");
    }

    #[test]
    fn three_does_not_divide_four() {
        assert!(scan(4..=4, 3..=3, 3..=40).is_empty());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..8").unwrap(), 2..=8);
        assert_eq!(parse_range("2..=8").unwrap(), 2..=8);
        assert_eq!(parse_range("5").unwrap(), 5..=5);
        assert!(parse_range("8..2").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn csv_header_and_rows() {
        let text = to_csv(&scan(4..=4, 2..=2, 7..=7)).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "k,l,r,branch,iota,iota_prime");
        assert!(lines[1].starts_with("4,2,7,diam3,"));
    }
}
