use std::collections::BTreeMap;
use std::io::{Read, Write};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::StatsError;

/// One statistic at one `(q, n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StatReport {
    pub q: u32,
    pub n: usize,
    pub stat: String,
    pub value: Complex64,
    pub reference: Option<Complex64>,
    /// Seconds; not serialized so that output files are reproducible.
    pub wall_time: f64,
    pub meta: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct Row {
    q: u32,
    n: usize,
    stat: String,
    value_re: f64,
    value_im: f64,
    reference_re: Option<f64>,
    reference_im: Option<f64>,
    deviation: Option<f64>,
    meta: String,
}

impl StatReport {
    pub fn new(q: u32, n: usize, stat: &str, value: Complex64, reference: Option<Complex64>) -> Self {
        StatReport {
            q,
            n,
            stat: stat.to_string(),
            value,
            reference,
            wall_time: 0.0,
            meta: BTreeMap::new(),
        }
    }

    pub fn real(q: u32, n: usize, stat: &str, value: f64, reference: Option<f64>) -> Self {
        Self::new(
            q,
            n,
            stat,
            Complex64::new(value, 0.0),
            reference.map(|r| Complex64::new(r, 0.0)),
        )
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.insert(key.to_string(), value.to_string());
        self
    }

    pub fn deviation(&self) -> Option<f64> {
        self.reference.map(|r| (self.value - r).norm())
    }

    fn to_row(&self) -> Row {
        Row {
            q: self.q,
            n: self.n,
            stat: self.stat.clone(),
            value_re: self.value.re,
            value_im: self.value.im,
            reference_re: self.reference.map(|r| r.re),
            reference_im: self.reference.map(|r| r.im),
            deviation: self.deviation(),
            meta: self
                .meta
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";"),
        }
    }

    fn from_row(r: Row) -> Result<Self, StatsError> {
        let reference = match (r.reference_re, r.reference_im) {
            (Some(a), Some(b)) => Some(Complex64::new(a, b)),
            (None, None) => None,
            _ => return Err(StatsError::Io("half a reference value".into())),
        };
        let mut meta = BTreeMap::new();
        for kv in r.meta.split(';').filter(|s| !s.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| StatsError::Io(format!("bad meta entry {kv}")))?;
            meta.insert(k.to_string(), v.to_string());
        }
        // the stored deviation is ignored and recomputed
        Ok(StatReport {
            q: r.q,
            n: r.n,
            stat: r.stat,
            value: Complex64::new(r.value_re, r.value_im),
            reference,
            wall_time: 0.0,
            meta,
        })
    }
}

fn io(e: impl std::fmt::Display) -> StatsError {
    StatsError::Io(e.to_string())
}

/// CSV with header `q,n,stat,value_re,value_im,reference_re,reference_im,deviation,meta`.
pub fn write_csv<W: Write>(rows: &[StatReport], w: W) -> Result<(), StatsError> {
    let mut wr = csv::Writer::from_writer(w);
    for r in rows {
        wr.serialize(r.to_row()).map_err(io)?;
    }
    if rows.is_empty() {
        wr.write_record([
            "q",
            "n",
            "stat",
            "value_re",
            "value_im",
            "reference_re",
            "reference_im",
            "deviation",
            "meta",
        ])
        .map_err(io)?;
    }
    wr.flush().map_err(io)
}

pub fn read_csv<R: Read>(r: R) -> Result<Vec<StatReport>, StatsError> {
    let mut rd = csv::Reader::from_reader(r);
    rd.deserialize::<Row>()
        .map(|row| StatReport::from_row(row.map_err(io)?))
        .collect()
}

/// JSON array of records with the CSV fields.
pub fn write_json<W: Write>(rows: &[StatReport], w: W) -> Result<(), StatsError> {
    let v: Vec<Row> = rows.iter().map(StatReport::to_row).collect();
    serde_json::to_writer_pretty(w, &v).map_err(io)
}

pub fn read_json<R: Read>(r: R) -> Result<Vec<StatReport>, StatsError> {
    let v: Vec<Row> = serde_json::from_reader(r).map_err(io)?;
    v.into_iter().map(StatReport::from_row).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_and_json_round_trip() {
        let rows = vec![
            StatReport::real(3, 5, "moebius", 1.0, Some(1.0)).with_meta("R", 0),
            StatReport::new(3, 7, "ratios", Complex64::new(0.5, -0.25), None),
        ];
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("q,n,stat,value_re,value_im,reference_re,reference_im,deviation,meta\n"));
        assert_eq!(read_csv(&buf[..]).unwrap(), rows);
        let mut j = Vec::new();
        write_json(&rows, &mut j).unwrap();
        assert_eq!(read_json(&j[..]).unwrap(), rows);
    }
}
