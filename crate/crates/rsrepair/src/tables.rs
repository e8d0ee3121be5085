//! Comparison tables. Rows for the two constructions are computed; rows
//! for other schemes come from [`crate::reference`].

use rsrepair_core::constructions::{construction1, construction2, Construction2Params, ThetaStrategy};
use rsrepair_core::FieldTower;

use crate::error::{AppError, AppResult};
use crate::reference::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    /// Bandwidth of full-length codes with r = 3.
    Bandwidth3a,
    /// I/O cost of full-length codes with r = 3.
    Io3b,
    /// I/O ratio on subspace codes.
    Ratio4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub label: String,
    pub cells: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Row>,
}

const REFERENCE: &str = "published reference values";

/// c1 metrics `(io, bandwidth)` for each ℓ.
pub fn c1_metrics(ells: &[u32], max_bits: u32) -> AppResult<Vec<(u64, u64)>> {
    ells.iter()
        .map(|&ell| {
            let f = FieldTower::with_max_bits(2, 1, ell, max_bits)?;
            let m = construction1(&f, ThetaStrategy::Search)?.scheme.metrics_direct(&f);
            Ok((m.io_cost, m.bandwidth))
        })
        .collect()
}

/// The c2 parameters used in each ratio column: the largest admissible
/// `m` for the smallest `s` the redundancy allows.
pub fn c2_params(log_n: u32, r: u64, ell: u32) -> Construction2Params {
    let mut s = 0;
    while 2u64.pow(s) + 1 < r {
        s += 1;
    }
    let m = (1..=ell - log_n + s + 1).rev().find(|m| ell.is_multiple_of(*m)).unwrap_or(1);
    Construction2Params { d: log_n, s, m, r }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RatioCell {
    pub io_cost: u64,
    /// `(n - r) ℓ`, the cost of reading k whole symbols.
    pub trivial: u64,
    pub tenths: u64,
}

/// `100 · num / den` rounded half up to one decimal, in tenths.
pub fn percent_tenths(num: u64, den: u64) -> u64 {
    (2000 * num + den) / (2 * den)
}

pub fn format_tenths(t: u64) -> String {
    format!("{}.{}%", t / 10, t % 10)
}

pub fn c2_ratios(max_bits: u32) -> AppResult<Vec<RatioCell>> {
    TABLE4_COLUMNS
        .iter()
        .map(|&(log_n, r, ell)| {
            let f = FieldTower::with_max_bits(2, 1, ell, max_bits)?;
            let c = construction2(&f, c2_params(log_n, r, ell))?;
            let io_cost = c.scheme.metrics_direct(&f).io_cost;
            let trivial = ((1u64 << log_n) - r) * ell as u64;
            Ok(RatioCell { io_cost, trivial, tenths: percent_tenths(io_cost, trivial) })
        })
        .collect()
}

fn nums(v: &[u64]) -> Vec<String> {
    v.iter().map(u64::to_string).collect()
}

pub fn build(which: Which, max_bits: u32) -> AppResult<Table> {
    match which {
        Which::Bandwidth3a | Which::Io3b => {
            let computed = c1_metrics(&TABLE3_ELLS, max_bits)?;
            let header = std::iter::once("n".to_string())
                .chain(TABLE3_ELLS.iter().map(|e| format!("2^{e}")))
                .collect();
            let (title, trace, prior, ours): (_, _, _, Vec<u64>) = if which == Which::Bandwidth3a {
                (
                    "Repair bandwidth, RS(F_{2^l}, 2^l - 3)",
                    TABLE3_BANDWIDTH_TRACE,
                    TABLE3_BANDWIDTH_IO_SCHEME,
                    computed.iter().map(|c| c.1).collect(),
                )
            } else {
                (
                    "I/O cost, RS(F_{2^l}, 2^l - 3)",
                    TABLE3_IO_TRACE,
                    TABLE3_IO_IO_SCHEME,
                    computed.iter().map(|c| c.0).collect(),
                )
            };
            Ok(Table {
                title: title.into(),
                header,
                rows: vec![
                    Row { label: format!("trace repair ({REFERENCE})"), cells: nums(&trace) },
                    Row { label: format!("earlier I/O scheme ({REFERENCE})"), cells: nums(&prior) },
                    Row { label: "c1 (computed)".into(), cells: nums(&ours) },
                ],
            })
        }
        Which::Ratio4 => {
            let cells = c2_ratios(max_bits)?;
            let header = std::iter::once("(n,r)".to_string())
                .chain(TABLE4_COLUMNS.iter().map(|(d, r, ell)| format!("(2^{d},{r}) l={ell}")))
                .collect();
            Ok(Table {
                title: "I/O cost ratio io / ((n-r) l)".into(),
                header,
                rows: vec![
                    Row {
                        label: format!("earlier I/O scheme ({REFERENCE})"),
                        cells: TABLE4_IO_SCHEME_TENTHS.iter().map(|&t| format_tenths(t)).collect(),
                    },
                    Row { label: "c2 (computed)".into(), cells: cells.iter().map(|c| format_tenths(c.tenths)).collect() },
                    Row { label: "c2 I/O cost".into(), cells: nums(&cells.iter().map(|c| c.io_cost).collect::<Vec<_>>()) },
                    Row { label: "(n-r)l".into(), cells: nums(&cells.iter().map(|c| c.trivial).collect::<Vec<_>>()) },
                ],
            })
        }
    }
}

pub fn render(table: &Table, format: Format) -> AppResult<String> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| AppError::Invalid(format!("csv: {e}"));
            w.write_record(&table.header).map_err(io)?;
            for row in &table.rows {
                w.write_record(std::iter::once(&row.label).chain(&row.cells)).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| AppError::Invalid(format!("csv: {e}")))?;
            Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
        }
        Format::Markdown => {
            let line = |cells: Vec<&str>| format!("| {} |\n", cells.join(" | "));
            let mut out = format!("**{}**\n\n", table.title);
            out += &line(table.header.iter().map(String::as_str).collect());
            out += &line(vec!["---"; table.header.len()]);
            for row in &table.rows {
                out += &line(std::iter::once(row.label.as_str()).chain(row.cells.iter().map(String::as_str)).collect());
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_half_up() {
        assert_eq!(percent_tenths(20, 24), 833);
        assert_eq!(percent_tenths(1, 8), 125);
        assert_eq!(percent_tenths(1, 16), 63);
        assert_eq!(percent_tenths(1, 2000), 1);
        assert_eq!(percent_tenths(0, 7), 0);
        assert_eq!(format_tenths(770), "77.0%");
    }

    #[test]
    fn ratio_parameters() {
        let got: Vec<_> = TABLE4_COLUMNS.iter().map(|&(d, r, ell)| c2_params(d, r, ell)).collect();
        let want = [(3, 0, 2, 2), (4, 0, 3, 2), (5, 0, 4, 2), (5, 1, 3, 3), (6, 1, 4, 3), (7, 2, 4, 5)];
        for (g, (d, s, m, r)) in got.iter().zip(want) {
            assert_eq!(*g, Construction2Params { d, s, m, r });
        }
    }

    #[test]
    fn markdown_shape() {
        let t = Table {
            title: "t".into(),
            header: vec!["a".into(), "b".into()],
            rows: vec![Row { label: "x".into(), cells: vec!["1".into()] }],
        };
        assert_eq!(render(&t, Format::Markdown).unwrap(), "**t**\n\n| a | b |\n| --- | --- |\n| x | 1 |\n");
        assert_eq!(render(&t, Format::Csv).unwrap(), "a,b\nx,1\n");
    }
}
