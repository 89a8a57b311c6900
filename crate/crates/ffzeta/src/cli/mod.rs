//! Command-line front end: family enumeration, L-caches, statistics,
//! character identity suites and constants tables.

mod charcheck;
mod svg;

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_rational::BigRational;

use crate::ffpoly::{enumerate_squarefree_monic, FieldCtx, PolyQ};
use crate::lfunc::{conductor_degree, read_cache, write_cache, FamilyData, Method};
use crate::stats::{
    self, average_char, estimate_c5, moebius_cancellation, one_level_density, ratio_average_empirical,
    recipe_main_term, CoefficientSource, ConstantsLedger, KernelShape, Normalization, RatioSpec, StatReport,
    TestKernel,
};

pub use charcheck::{run_charcheck, SuiteResult};

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "FFZ_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Charsum,
    Pointcount,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Auto => Method::Auto,
            MethodArg::Charsum => Method::CharSum,
            MethodArg::Pointcount => Method::PointCount,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Triangle,
    RaisedCosine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SourceArg {
    Model,
    Empirical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Quadratic,
}

/// A complete run description; parses from and prints to a flag list.
#[derive(Clone, Debug, PartialEq, Parser)]
#[command(
    name = "ffz",
    version,
    about = "Quadratic L-functions over F_q[t] and symplectic ratio statistics"
)]
pub struct RunConfig {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, PartialEq, Args)]
pub struct Common {
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Seed for sampled inputs.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Cache directory (defaults to $FFZ_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Also write an SVG plot of value and reference against n.
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Subcommand)]
pub enum Command {
    /// Compute and cache L-polynomials for all of P_n.
    Lfun(LfunArgs),
    /// Family statistics.
    Stat {
        #[command(subcommand)]
        which: StatCommand,
    },
    /// Symplectic character identity suites.
    Charcheck(CharcheckArgs),
    /// Explicit constants ledger.
    Constants(ConstantsArgs),
    /// List the square-free monic polynomials of degree n.
    Enumerate(EnumerateArgs),
}

#[derive(Clone, Debug, PartialEq, Args)]
pub struct LfunArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Cache file (default: <cache dir>/ffz_q<q>_n<n>.lfc).
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub q: u32,
    /// Comma-separated degrees.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Fail instead of computing when a cache is missing.
    #[arg(long)]
    pub no_build: bool,
}

#[derive(Clone, Debug, PartialEq, Subcommand)]
pub enum StatCommand {
    /// Normalized ratio average against the recipe main term.
    Ratios {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long = "K", default_value_t = 0)]
        k: usize,
        #[arg(long = "Q", default_value_t = 0)]
        q_count: usize,
        /// One shift for all factors, or K+Q shifts; `a` or `a+bi`.
        #[arg(long, value_delimiter = ',')]
        s: Vec<String>,
        #[arg(long, default_value_t = stats::DEFAULT_MARGIN)]
        margin: f64,
        #[arg(long, value_enum, default_value_t = SourceArg::Model)]
        source: SourceArg,
        /// Series truncation (default 4n).
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Normalized Möbius sums (1/|P_n|) Σ q^{-R/2} b_d(R).
    Moebius {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long = "R")]
        r: usize,
    },
    /// One-level density against the symplectic reference.
    Onelevel {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, value_enum, default_value_t = KernelArg::Triangle)]
        kernel: KernelArg,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
    },
    /// Finite-n estimates of a coefficient limit.
    C5 {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Signs for the numerator factors, e.g. `1,-1`.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        eps: Vec<i8>,
        /// Coefficient indices, numerators first.
        #[arg(long = "N", value_delimiter = ',')]
        nvec: Vec<usize>,
    },
    /// Average of χ_d(r) against the model value.
    Avgchar {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Coefficients of r, constant term first.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        r: Vec<i64>,
    },
}

#[derive(Clone, Debug, PartialEq, Args)]
pub struct CharcheckArgs {
    #[arg(long = "K", default_value_t = 1)]
    pub k: usize,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq, Args)]
pub struct ConstantsArgs {
    #[arg(long = "K", default_value_t = 0)]
    pub k: u32,
    #[arg(long = "Q", default_value_t = 0)]
    pub q_count: u32,
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Custom C0,C1,C1',C2,C3 as rationals.
    #[arg(long, value_delimiter = ',')]
    pub inputs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub n: usize,
    /// Print at most this many polynomials (the count is always exact).
    #[arg(long)]
    pub limit: Option<usize>,
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default()
}

impl FamilyArgs {
    fn push(&self, out: &mut Vec<String>) {
        out.extend(["--q".into(), self.q.to_string(), "--n".into(), join(&self.n)]);
        if self.no_build {
            out.push("--no-build".into());
        }
    }
}

impl RunConfig {
    pub fn parse_from_flags<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        RunConfig::try_parse_from(std::iter::once("ffz".into()).chain(args.into_iter().map(Into::into)))
    }

    /// Flags that parse back to this configuration.
    pub fn to_flags(&self) -> Vec<String> {
        let mut f: Vec<String> = Vec::new();
        let c = &self.common;
        f.extend([
            "--workers".into(),
            c.workers.to_string(),
            "--seed".into(),
            c.seed.to_string(),
        ]);
        f.extend(["--format".into(), value_name(&c.format)]);
        for (flag, p) in [("--out", &c.out), ("--cache-dir", &c.cache_dir), ("--svg", &c.svg)] {
            if let Some(p) = p {
                f.extend([flag.to_string(), p.display().to_string()]);
            }
        }
        match &self.command {
            Command::Lfun(a) => {
                f.extend([
                    "lfun".into(),
                    "--q".into(),
                    a.q.to_string(),
                    "--n".into(),
                    a.n.to_string(),
                ]);
                f.extend(["--method".into(), value_name(&a.method)]);
                if let Some(p) = &a.cache {
                    f.extend(["--cache".into(), p.display().to_string()]);
                }
            }
            Command::Stat { which } => {
                f.push("stat".into());
                match which {
                    StatCommand::Ratios {
                        fam,
                        k,
                        q_count,
                        s,
                        margin,
                        source,
                        nmax,
                    } => {
                        f.push("ratios".into());
                        fam.push(&mut f);
                        f.extend(["--K".into(), k.to_string(), "--Q".into(), q_count.to_string()]);
                        if !s.is_empty() {
                            f.extend(["--s".into(), s.join(",")]);
                        }
                        f.extend([
                            "--margin".into(),
                            margin.to_string(),
                            "--source".into(),
                            value_name(source),
                        ]);
                        if let Some(m) = nmax {
                            f.extend(["--nmax".into(), m.to_string()]);
                        }
                    }
                    StatCommand::Moebius { fam, r } => {
                        f.push("moebius".into());
                        fam.push(&mut f);
                        f.extend(["--R".into(), r.to_string()]);
                    }
                    StatCommand::Onelevel { fam, kernel, lambda } => {
                        f.push("onelevel".into());
                        fam.push(&mut f);
                        f.extend([
                            "--kernel".into(),
                            value_name(kernel),
                            "--lambda".into(),
                            lambda.to_string(),
                        ]);
                    }
                    StatCommand::C5 { fam, eps, nvec } => {
                        f.push("c5".into());
                        fam.push(&mut f);
                        if !eps.is_empty() {
                            f.extend(["--eps".into(), join(eps)]);
                        }
                        if !nvec.is_empty() {
                            f.extend(["--N".into(), join(nvec)]);
                        }
                    }
                    StatCommand::Avgchar { fam, r } => {
                        f.push("avgchar".into());
                        fam.push(&mut f);
                        f.extend(["--r".into(), join(r)]);
                    }
                }
            }
            Command::Charcheck(a) => {
                f.extend([
                    "charcheck".into(),
                    "--K".into(),
                    a.k.to_string(),
                    "--m".into(),
                    a.m.to_string(),
                ]);
            }
            Command::Constants(a) => {
                f.extend([
                    "constants".into(),
                    "--K".into(),
                    a.k.to_string(),
                    "--Q".into(),
                    a.q_count.to_string(),
                ]);
                if let Some(p) = &a.preset {
                    f.extend(["--preset".into(), value_name(p)]);
                }
                if !a.inputs.is_empty() {
                    f.extend(["--inputs".into(), a.inputs.join(",")]);
                }
            }
            Command::Enumerate(a) => {
                f.extend([
                    "enumerate".into(),
                    "--q".into(),
                    a.q.to_string(),
                    "--n".into(),
                    a.n.to_string(),
                ]);
                if let Some(l) = a.limit {
                    f.extend(["--limit".into(), l.to_string()]);
                }
            }
        }
        f
    }

    /// Flags joined by spaces.
    pub fn to_flag_string(&self) -> String {
        self.to_flags().join(" ")
    }

    pub fn from_flag_string(s: &str) -> Result<Self, clap::Error> {
        Self::parse_from_flags(s.split_whitespace())
    }
}

/// `a`, `a+bi`, `a-bi` or `bi`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t = s.trim().replace(' ', "");
    if let Some(body) = t.strip_suffix('i') {
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(i, ch)| (ch == '+' || ch == '-') && !body[..i].ends_with(['e', 'E']))
            .map(|(i, _)| i)
            .last();
        return match split {
            Some(i) => Ok(Complex64::new(
                body[..i].parse()?,
                body[i..].trim_start_matches('+').parse()?,
            )),
            None => Ok(Complex64::new(0.0, body.parse()?)),
        };
    }
    Ok(Complex64::new(t.parse()?, 0.0))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|e| anyhow!("bad rational {s}: {e}"))
}

fn cache_dir(common: &Common) -> PathBuf {
    common
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("ffz_cache"))
}

pub fn cache_file_name(q: u32, n: usize) -> String {
    format!("ffz_q{q}_n{n}.lfc")
}

fn save_family(fam: &FamilyData, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
    }
    let mut w = BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
    write_cache(fam, &mut w)?;
    w.flush()?;
    Ok(())
}

/// Cached family if present, otherwise computed and written to the cache.
pub fn load_family(common: &Common, q: u32, n: usize, build: bool) -> Result<FamilyData> {
    let path = cache_dir(common).join(cache_file_name(q, n));
    if path.exists() {
        let fam =
            read_cache(BufReader::new(File::open(&path)?)).with_context(|| format!("reading {}", path.display()))?;
        if fam.q != q || fam.n != n {
            bail!("cache {} holds q={} n={}", path.display(), fam.q, fam.n);
        }
        return Ok(fam);
    }
    if !build {
        bail!("missing cache {}", path.display());
    }
    let fam = FamilyData::compute(q, n, Method::Auto, common.workers)?;
    save_family(&fam, &path)?;
    Ok(fam)
}

fn write_reports(common: &Common, rows: &[StatReport]) -> Result<()> {
    let sink: Box<dyn Write> = match &common.out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(std::io::stdout().lock()),
    };
    match common.format {
        OutputFormat::Csv => stats::write_csv(rows, sink)?,
        OutputFormat::Json => {
            let mut sink = sink;
            stats::write_json(rows, &mut sink)?;
            writeln!(sink)?;
        }
    }
    if let Some(p) = &common.svg {
        std::fs::write(p, svg::plot(rows))?;
    }
    Ok(())
}

fn shifts_for(s: &[String], total: usize) -> Result<Vec<Complex64>> {
    let parsed: Vec<Complex64> = s.iter().map(|x| parse_complex(x)).collect::<Result<_>>()?;
    match parsed.len() {
        _ if total == 0 => Ok(Vec::new()),
        1 => Ok(vec![parsed[0]; total]),
        l if l == total => Ok(parsed),
        l => bail!("expected 1 or {total} shifts, got {l}"),
    }
}

fn stat_rows(common: &Common, which: &StatCommand) -> Result<Vec<StatReport>> {
    let mut rows = Vec::new();
    let fam_args = match which {
        StatCommand::Ratios { fam, .. }
        | StatCommand::Moebius { fam, .. }
        | StatCommand::Onelevel { fam, .. }
        | StatCommand::C5 { fam, .. }
        | StatCommand::Avgchar { fam, .. } => fam,
    };
    let q = fam_args.q;
    let mut fams = Vec::new();
    for &n in &fam_args.n {
        fams.push(load_family(common, q, n, !fam_args.no_build)?);
    }
    match which {
        StatCommand::Ratios {
            k,
            q_count,
            s,
            margin,
            source,
            nmax,
            ..
        } => {
            let spec = RatioSpec::new(*k, *q_count, shifts_for(s, k + q_count)?)?.with_margin(*margin);
            for fam in &fams {
                let t0 = Instant::now();
                let value =
                    ratio_average_empirical(fam, &spec, Normalization::Normalized, stats::DEFAULT_DENOMINATOR_GUARD)?;
                let nmax = nmax.unwrap_or(4 * fam.n);
                let src = match source {
                    SourceArg::Model => CoefficientSource::Model,
                    SourceArg::Empirical => CoefficientSource::Empirical(fams.last().unwrap()),
                };
                let recipe = recipe_main_term(q, fam.n, &spec, src, nmax)?;
                let mut row = StatReport::new(q, fam.n, "ratios", value, Some(recipe.mt))
                    .with_meta("K", k)
                    .with_meta("Q", q_count)
                    .with_meta("s", s.join("|"))
                    .with_meta("source", value_name(source))
                    .with_meta("nmax", nmax)
                    .with_meta("rr_l", format!("{}", recipe.rr_l.re));
                row.wall_time = t0.elapsed().as_secs_f64();
                rows.push(row);
            }
        }
        StatCommand::Moebius { r, .. } => {
            for fam in &fams {
                let t0 = Instant::now();
                let v = moebius_cancellation(fam, *r)?;
                let mut row =
                    StatReport::real(q, fam.n, "moebius", v, Some(if *r == 0 { 1.0 } else { 0.0 })).with_meta("R", r);
                row.wall_time = t0.elapsed().as_secs_f64();
                rows.push(row);
            }
        }
        StatCommand::Onelevel { kernel, lambda, .. } => {
            let shape = match kernel {
                KernelArg::Triangle => KernelShape::Triangle,
                KernelArg::RaisedCosine => KernelShape::RaisedCosine,
            };
            let ker = TestKernel::new(shape, *lambda)?;
            for fam in &fams {
                let t0 = Instant::now();
                let (emp, reference) = one_level_density(fam, &ker)?;
                let mut row = StatReport::real(q, fam.n, "onelevel", emp, Some(reference))
                    .with_meta("kernel", value_name(kernel))
                    .with_meta("lambda", lambda);
                row.wall_time = t0.elapsed().as_secs_f64();
                rows.push(row);
            }
        }
        StatCommand::C5 { eps, nvec, .. } => {
            let refs: Vec<&FamilyData> = fams.iter().collect();
            let est = estimate_c5(&refs, eps, nvec)?;
            for (i, (&n, &v)) in est.ns.iter().zip(&est.values).enumerate() {
                let mut row = StatReport::real(q, n, "c5", v, None)
                    .with_meta("eps", join(eps).replace(',', "|"))
                    .with_meta("N", join(nvec).replace(',', "|"));
                if i > 0 {
                    row = row.with_meta("diff", est.diffs[i - 1]);
                }
                rows.push(row);
            }
        }
        StatCommand::Avgchar { r, .. } => {
            let ctx = FieldCtx::prime(q)?;
            let poly = PolyQ::from_ints(&ctx, r);
            let refs: Vec<&FamilyData> = fams.iter().collect();
            let res = average_char(&refs, &poly)?;
            for (&n, &v) in res.ns.iter().zip(&res.empirical) {
                rows.push(StatReport::real(q, n, "avgchar", v, Some(res.model)).with_meta("r", poly.to_string()));
            }
        }
    }
    Ok(rows)
}

fn cmd_lfun(common: &Common, a: &LfunArgs) -> Result<()> {
    if a.q == 2 || FieldCtx::prime(a.q).is_err() {
        bail!("q must be an odd prime, got {}", a.q);
    }
    let fam = FamilyData::compute(a.q, a.n, a.method.into(), common.workers)?;
    let mut cs = std::collections::BTreeSet::new();
    for i in 0..fam.len() {
        cs.insert(fam.completed(i)?.c);
    }
    let path = a
        .cache
        .clone()
        .unwrap_or_else(|| cache_dir(common).join(cache_file_name(a.q, a.n)));
    save_family(&fam, &path)?;
    let c: Vec<usize> = cs.into_iter().collect();
    println!(
        "{}",
        serde_json::json!({
            "q": a.q, "n": a.n, "records": fam.len(), "c": c,
            "expected_c": conductor_degree(a.n), "path": path.display().to_string(),
        })
    );
    Ok(())
}

fn cmd_constants(a: &ConstantsArgs) -> Result<()> {
    let mut tables = Vec::new();
    if !a.inputs.is_empty() {
        let v: Vec<BigRational> = a.inputs.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
        let arr: [BigRational; 5] = v.try_into().map_err(|_| anyhow!("--inputs needs five values"))?;
        tables.push(("custom", stats::theorem_constants(a.k, a.q_count, arr)));
    }
    if a.preset.is_some() || a.inputs.is_empty() {
        tables.push(("quadratic", ConstantsLedger::quadratic(a.k, a.q_count)));
    }
    for (name, t) in tables {
        println!("[{name}] K={} Q={}", t.k, t.q);
        let names = ["C0", "C1", "C1'", "C2", "C3"];
        for (n, v) in names.iter().zip(&t.inputs) {
            println!("  {n} = {v}");
        }
        for (n, v) in [
            ("C6", &t.c6),
            ("C7", &t.c7),
            ("C8", &t.c8),
            ("C9", &t.c9),
            ("delta", &t.delta),
            ("omega", &t.omega),
        ] {
            println!("  {n} = {v}");
        }
        println!("  q_min = 2^12 * ({})^({})", t.q_min_base, t.q_min_exponent);
        if let Some(e) = &t.q_min_log2 {
            println!("  log2(q_min) = {e}");
        }
    }
    Ok(())
}

fn cmd_enumerate(a: &EnumerateArgs) -> Result<()> {
    let ctx = FieldCtx::prime(a.q)?;
    let out = std::io::stdout();
    let mut out = out.lock();
    let mut count = 0u64;
    for f in enumerate_squarefree_monic(&ctx, a.n)? {
        if a.limit.is_none_or(|l| (count as usize) < l) {
            writeln!(out, "{f}")?;
        }
        count += 1;
    }
    writeln!(out, "# count = {count}")?;
    Ok(())
}

fn run(cfg: &RunConfig) -> Result<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.common.workers)
        .build()?;
    pool.install(|| match &cfg.command {
        Command::Lfun(a) => cmd_lfun(&cfg.common, a),
        Command::Stat { which } => {
            let rows = stat_rows(&cfg.common, which)?;
            write_reports(&cfg.common, &rows)
        }
        Command::Charcheck(a) => {
            let results = run_charcheck(a.k, a.m, cfg.common.seed)?;
            let mut failed = false;
            for r in &results {
                println!(
                    "{:<28} {:<4} {}",
                    r.suite,
                    if r.pass { "PASS" } else { "FAIL" },
                    r.detail.trim_end()
                );
                failed |= !r.pass;
            }
            if failed {
                bail!("charcheck: a suite failed");
            }
            Ok(())
        }
        Command::Constants(a) => cmd_constants(a),
        Command::Enumerate(a) => cmd_enumerate(a),
    })
}

/// Parse arguments, run, and return the process exit code. Failures are
/// reported on stderr as one JSON object.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": "usage", "message": e.to_string() }));
            return 2;
        }
    };
    match run(&cfg) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::json!({ "error": "failure", "message": format!("{e:#}"), "flags": cfg.to_flag_string() })
            );
            1
        }
    }
}
