//! Text cache of family L-data.
//!
//! ```text
//! FFZLFC1;q=<q>;n=<n>
//! <a_1,...,a_n>;<â_0,...,â_{n-1}>
//! ```

use std::io::{BufRead, Write};

use super::family::{index_from_digits, FamilyData};
use super::LfError;

pub const CACHE_MAGIC: &str = "FFZLFC1";

fn join<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn write_cache<W: Write>(fam: &FamilyData, mut w: W) -> Result<(), LfError> {
    writeln!(w, "{};q={};n={}", CACHE_MAGIC, fam.q, fam.n)?;
    for i in 0..fam.len() {
        writeln!(w, "{};{}", join(fam.digits(i)), join(fam.row(i).iter()))?;
    }
    w.flush()?;
    Ok(())
}

fn header_field(part: Option<&str>, key: &str) -> Result<u64, LfError> {
    part.and_then(|p| p.strip_prefix(key))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| LfError::Cache(format!("bad header field {key}")))
}

pub fn read_cache<R: BufRead>(r: R) -> Result<FamilyData, LfError> {
    let mut lines = r.lines();
    let header = lines.next().ok_or_else(|| LfError::Cache("empty cache".into()))??;
    let mut parts = header.split(';');
    if parts.next() != Some(CACHE_MAGIC) {
        return Err(LfError::Cache(format!("unknown header {header}")));
    }
    let q = header_field(parts.next(), "q=")? as u32;
    let n = header_field(parts.next(), "n=")? as usize;
    let mut fam = FamilyData {
        q,
        n,
        indices: Vec::new(),
        lhat: Vec::new(),
    };
    for (k, line) in lines.enumerate() {
        let line = line?;
        let bad = || LfError::Cache(format!("malformed record on line {}", k + 2));
        let (ds, ls) = line.split_once(';').ok_or_else(bad)?;
        let digits: Vec<u32> = ds
            .split(',')
            .map(|x| x.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        let row: Vec<i64> = ls
            .split(',')
            .map(|x| x.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        if digits.len() != n || row.len() != n || digits.iter().any(|&d| d >= q) {
            return Err(bad());
        }
        let idx = index_from_digits(q, &digits);
        if fam.indices.last().is_some_and(|&p| p >= idx) {
            return Err(LfError::Cache(format!("records out of order on line {}", k + 2)));
        }
        fam.indices.push(idx);
        fam.lhat.extend(row);
    }
    Ok(fam)
}
