//! L-data for a whole family P_n.
//!
//! The point-count sweep walks the digit tree of t^n + a_1 t^{n-1} + ... + a_n
//! depth first so that Horner prefixes over every F_{q^j} are shared between
//! siblings. Work is split into chunks keyed by leading digits; the chunk
//! layout does not depend on the worker count, so results are identical for
//! any number of threads.

use rayon::prelude::*;

use crate::ffpoly::{monic_from_index, squarefree_raw, FieldCtx, PolyQ};

use super::lpoly::{lpoly_charsum, weil_from_power_sums, LPolynomial};
use super::LfError;

/// Algorithm used to fill a family table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Point counts for odd `n`, character sums for even `n`.
    Auto,
    CharSum,
    PointCount,
    /// Both algorithms with mandatory agreement.
    Both,
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Method::Auto),
            "charsum" => Ok(Method::CharSum),
            "pointcount" => Ok(Method::PointCount),
            "both" => Ok(Method::Both),
            _ => Err(format!("unknown method {s}")),
        }
    }
}

/// Uncompleted `L̂` for every `d ∈ P_n`, in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyData {
    pub q: u32,
    pub n: usize,
    /// Digit index of each member.
    pub indices: Vec<u64>,
    /// Row-major `â_0..â_{n-1}`, `n` entries per member.
    pub lhat: Vec<i64>,
}

impl FamilyData {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.lhat[i * self.n..(i + 1) * self.n]
    }

    pub fn digits(&self, i: usize) -> Vec<u32> {
        digits_from_index(self.q, self.n, self.indices[i])
    }

    pub fn lpoly(&self, i: usize) -> LPolynomial {
        LPolynomial::from_parts(self.q, self.digits(i), self.row(i).to_vec())
    }

    /// Completed, functional-equation-checked polynomial of member `i`.
    pub fn completed(&self, i: usize) -> Result<LPolynomial, LfError> {
        LPolynomial::completed(self.q, self.digits(i), self.row(i).to_vec())
    }

    /// Compute the table with `workers` threads (0 means the rayon default).
    pub fn compute(q: u32, n: usize, method: Method, workers: usize) -> Result<Self, LfError> {
        let ctx = FieldCtx::cached(q, 1)?;
        if q == 2 {
            return Err(LfError::NotOddPrime(q));
        }
        if n < 1 {
            return Err(LfError::BadModulus);
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| LfError::Pool(e.to_string()))?;
        pool.install(|| match method {
            Method::Auto if n % 2 == 1 => sweep_pointcount(&ctx, n),
            Method::Auto | Method::CharSum => sweep_charsum(&ctx, n),
            Method::PointCount => sweep_pointcount(&ctx, n),
            Method::Both => {
                let a = sweep_charsum(&ctx, n)?;
                let b = sweep_pointcount(&ctx, n)?;
                if let Some(i) = (0..a.len()).find(|&i| a.row(i) != b.row(i)) {
                    return Err(LfError::Disagreement { index: a.indices[i] });
                }
                Ok(a)
            }
        })
    }
}

pub fn digits_from_index(q: u32, n: usize, idx: u64) -> Vec<u32> {
    let mut out = vec![0u32; n];
    let mut x = idx;
    for k in (0..n).rev() {
        out[k] = (x % q as u64) as u32;
        x /= q as u64;
    }
    out
}

pub fn index_from_digits(q: u32, digits: &[u32]) -> u64 {
    digits.iter().fold(0u64, |acc, &d| acc * q as u64 + d as u64)
}

/// Leading digits fixed per chunk.
fn chunk_depth(q: u32, n: usize) -> usize {
    let mut k = 0;
    while k + 1 < n && (q as u64).pow(k as u32) < 64 {
        k += 1;
    }
    k
}

/// Member indices and concatenated rows of one chunk of the sweep.
type Chunk = Result<(Vec<u64>, Vec<i64>), LfError>;

fn sweep_charsum(ctx: &FieldCtx, n: usize) -> Result<FamilyData, LfError> {
    let q = ctx.order();
    let depth = chunk_depth(q, n);
    let span = (q as u64).pow((n - depth) as u32);
    let chunks: Vec<Chunk> = (0..(q as u64).pow(depth as u32))
        .into_par_iter()
        .map(|c| {
            let mut idx = Vec::new();
            let mut rows = Vec::new();
            for i in c * span..(c + 1) * span {
                let v = monic_from_index(q, n, i);
                if !squarefree_raw(ctx, &v) {
                    continue;
                }
                let l = lpoly_charsum(ctx, &PolyQ::new(ctx, v))?;
                idx.push(i);
                rows.extend_from_slice(&l.lhat);
            }
            Ok((idx, rows))
        })
        .collect();
    assemble(q, n, chunks)
}

fn assemble(q: u32, n: usize, chunks: Vec<Chunk>) -> Result<FamilyData, LfError> {
    let mut out = FamilyData {
        q,
        n,
        indices: Vec::new(),
        lhat: Vec::new(),
    };
    for c in chunks {
        let (i, r) = c?;
        out.indices.extend(i);
        out.lhat.extend(r);
    }
    Ok(out)
}

/// Multiplication tables of F_{p^j} in log form, with the point set.
struct Level {
    order: u32,
    p: u32,
    log: Vec<u32>,
    exp: Vec<u32>,
    chi: Vec<i8>,
}

impl Level {
    fn new(p: u32, j: u32) -> Result<Self, LfError> {
        let f = FieldCtx::cached(p, j)?;
        let order = f.order();
        let (log, exp) = match f.log_table() {
            Some((l, e)) => (l.to_vec(), e.to_vec()),
            None => prime_log_tables(p),
        };
        let chi = (0..order).map(|x| f.chi(x)).collect();
        Ok(Level {
            order,
            p,
            log,
            exp,
            chi,
        })
    }

    #[inline]
    fn mul_t(&self, v: u32, log_t: u32) -> u32 {
        if v == 0 {
            return 0;
        }
        let n = self.order - 1;
        let mut e = self.log[v as usize] + log_t;
        if e >= n {
            e -= n;
        }
        self.exp[e as usize]
    }

    #[inline]
    fn add_const(&self, v: u32, a: u32) -> u32 {
        let low = v % self.p;
        let s = low + a;
        v - low + if s >= self.p { s - self.p } else { s }
    }
}

fn prime_log_tables(p: u32) -> (Vec<u32>, Vec<u32>) {
    let n = p - 1;
    let mut factors = Vec::new();
    let mut m = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    let pw = |g: u64, e: u32| -> u64 {
        let (mut acc, mut b, mut e) = (1u64, g, e);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        acc
    };
    let g = (1..p as u64)
        .find(|&g| p == 2 || factors.iter().all(|&r| pw(g, n / r) != 1))
        .unwrap();
    let mut log = vec![0u32; p as usize];
    let mut exp = vec![0u32; n.max(1) as usize];
    let mut x = 1u64;
    for k in 0..n {
        exp[k as usize] = x as u32;
        log[x as usize] = k;
        x = x * g % p as u64;
    }
    (log, exp)
}

/// Evaluation points with their logarithms, zero excluded (t = 0 is handled apart).
struct Sweep {
    q: u32,
    n: usize,
    g: usize,
    levels: Vec<Level>,
    logs: Vec<Vec<u32>>,
    minus_one: i64,
}

impl Sweep {
    fn new(q: u32, n: usize) -> Result<Self, LfError> {
        let g = (n - 1) / 2;
        let levels: Vec<Level> = (1..=g as u32).map(|j| Level::new(q, j)).collect::<Result<_, _>>()?;
        let logs = levels
            .iter()
            .map(|l| (1..l.order).map(|t| l.log[t as usize]).collect())
            .collect();
        let ctx = FieldCtx::cached(q, 1)?;
        Ok(Sweep {
            q,
            n,
            g,
            levels,
            logs,
            minus_one: ctx.chi(ctx.neg(1)) as i64,
        })
    }

    /// Values of the prefix polynomial at every nonzero point of every level,
    /// concatenated; the value at t = 0 is the last digit, tracked separately.
    fn extend(&self, prev: &[u32], a: u32, out: &mut Vec<u32>) {
        out.clear();
        for (lvl, (level, logs)) in self.levels.iter().zip(&self.logs).enumerate() {
            let base = self.offset(lvl);
            for (i, &lt) in logs.iter().enumerate() {
                out.push(level.add_const(level.mul_t(prev[base + i], lt), a));
            }
        }
    }

    fn offset(&self, lvl: usize) -> usize {
        self.levels[..lvl].iter().map(|l| (l.order - 1) as usize).sum()
    }

    fn run_chunk(&self, prefix: u64, depth: usize, idx: &mut Vec<u64>, rows: &mut Vec<i64>) -> Result<(), LfError> {
        let ctx = FieldCtx::cached(self.q, 1)?;
        let total: usize = self.levels.iter().map(|l| (l.order - 1) as usize).sum();
        let mut stack: Vec<Vec<u32>> = (0..self.n).map(|_| Vec::with_capacity(total)).collect();
        stack[0] = vec![1u32; total];
        let digits = digits_from_index(self.q, depth, prefix);
        for (k, &a) in digits.iter().enumerate() {
            let (lo, hi) = stack.split_at_mut(k + 1);
            self.extend(&lo[k], a, &mut hi[0]);
        }
        self.descend(&ctx, &mut stack, depth, prefix, idx, rows)
    }

    fn descend(
        &self,
        ctx: &FieldCtx,
        stack: &mut [Vec<u32>],
        k: usize,
        prefix: u64,
        idx: &mut Vec<u64>,
        rows: &mut Vec<i64>,
    ) -> Result<(), LfError> {
        let q = self.q;
        if k + 1 < self.n {
            for a in 0..q {
                let (lo, hi) = stack.split_at_mut(k + 1);
                self.extend(&lo[k], a, &mut hi[0]);
                self.descend(ctx, stack, k + 1, prefix * q as u64 + a as u64, idx, rows)?;
            }
            return Ok(());
        }
        // last digit: share the products prefix(t) * t across the q leaves
        let mut products: Vec<u32> = Vec::with_capacity(stack[k].len());
        for (lvl, (level, logs)) in self.levels.iter().zip(&self.logs).enumerate() {
            let base = self.offset(lvl);
            for (i, &lt) in logs.iter().enumerate() {
                products.push(level.mul_t(stack[k][base + i], lt));
            }
        }
        let mut sums = vec![0i64; self.g];
        for a in 0..q {
            let index = prefix * q as u64 + a as u64;
            let coeffs = monic_from_index(q, self.n, index);
            if !squarefree_raw(ctx, &coeffs) {
                continue;
            }
            let mut base = 0;
            for (lvl, level) in self.levels.iter().enumerate() {
                let count = (level.order - 1) as usize;
                let mut s = level.chi[a as usize] as i64;
                for &m in &products[base..base + count] {
                    s += level.chi[level.add_const(m, a) as usize] as i64;
                }
                base += count;
                // twist by (-1)^n with n odd: χ_j(-1) = χ(-1)^j
                sums[lvl] = s * self.minus_one.pow(lvl as u32 + 1);
            }
            let l = weil_from_power_sums(q, self.g, &sums)?;
            idx.push(index);
            rows.extend_from_slice(&l);
        }
        Ok(())
    }
}

fn sweep_pointcount(ctx: &FieldCtx, n: usize) -> Result<FamilyData, LfError> {
    if n.is_multiple_of(2) {
        return Err(LfError::EvenDegree(n));
    }
    let q = ctx.order();
    if n == 1 {
        return Ok(FamilyData {
            q,
            n,
            indices: (0..q as u64).collect(),
            lhat: vec![1; q as usize],
        });
    }
    let sweep = Sweep::new(q, n)?;
    let depth = chunk_depth(q, n);
    let chunks: Vec<Chunk> = (0..(q as u64).pow(depth as u32))
        .into_par_iter()
        .map(|c| {
            let mut idx = Vec::new();
            let mut rows = Vec::new();
            sweep.run_chunk(c, depth, &mut idx, &mut rows)?;
            Ok((idx, rows))
        })
        .collect();
    assemble(q, n, chunks)
}
