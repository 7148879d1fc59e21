mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};
use serde_json::{json, Value};

use reinhardt_core::storage::{load_table_from_path, save_table_to_path};
use reinhardt_core::verify::{
    verify_arms, verify_bounds, verify_brute, verify_consistency, verify_lemma_largest,
    verify_numh, verify_prop7, verify_sequences,
};
use reinhardt_core::{
    fgk, make_witness, ratio_table, realizations, CheckReport, CheckStatus, Classifier, DimTable,
    RealizationMode, TableBuilder, DEFAULT_MEMORY_LIMIT,
};

use output::{parse_bytes, Format, Output};

/// Largest table built without `--force`.
const INLINE_BUILD_MAX: u32 = 4096;

#[derive(Parser)]
#[command(name = "reinhardt", version, about = "Automorphism-group dimensions of hyperbolic Reinhardt domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// c(n), c(n)/n², h(n), h(n)/n for a range of n.
    Table {
        #[arg(long)]
        max_n: u32,
        #[arg(long, default_value_t = 2)]
        min_n: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        table: TableArgs,
    },
    /// Classify a candidate dimension for domains in ℂⁿ.
    Classify {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        dim: i64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        table: TableArgs,
    },
    /// Canonical domain realizing a smooth-bounded dimension.
    Witness {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        dim: u64,
        /// Which realization to use, in enumeration order.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite over a range of n.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        max_n: u32,
        /// Defaults to the smallest n the suite accepts.
        #[arg(long)]
        min_n: Option<u32>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        table: TableArgs,
    },
    /// The f, 2g, k sequences.
    Sequence {
        #[arg(long)]
        max_n: u32,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Elements of Ĉ(n), ascending.
    Set {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        table: TableArgs,
    },
}

#[derive(Args)]
struct TableArgs {
    /// Table cache file; read first, written after a build.
    #[arg(long, env = "REINHARDT_CACHE")]
    cache: Option<PathBuf>,
    /// Ignore the cache entirely.
    #[arg(long)]
    no_cache: bool,
    /// Refuse builds needing more than this, e.g. 512MiB.
    #[arg(long, value_parser = parse_bytes, default_value_t = DEFAULT_MEMORY_LIMIT)]
    memory_limit: u64,
    /// Allow builds above n = 4096.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Bounds,
    LemmaLargest,
    Numh,
    Arms,
    Brute,
    Prop7,
    Sequences,
    Consistency,
}

impl TableArgs {
    fn obtain(&self, n_max: u32) -> Result<DimTable> {
        let cache = self.cache.as_ref().filter(|_| !self.no_cache);
        if let Some(path) = cache.filter(|p| p.exists()) {
            let table = load_table_from_path(path)
                .with_context(|| format!("cache {} is unreadable or corrupt", path.display()))?;
            if table.n_max() >= n_max {
                info!("loaded table up to n = {} from {}", table.n_max(), path.display());
                return Ok(table);
            }
            warn!(
                "cache {} covers n <= {}, rebuilding to {n_max}",
                path.display(),
                table.n_max()
            );
        }
        if n_max > INLINE_BUILD_MAX && !self.force {
            bail!("building to n = {n_max} exceeds {INLINE_BUILD_MAX}; pass --force with an adequate --memory-limit");
        }
        let table = TableBuilder::new()
            .memory_limit(self.memory_limit)
            .build(n_max)
            .context("table build refused")?;
        if let Some(path) = cache {
            let bytes = save_table_to_path(&table, path)
                .with_context(|| format!("writing cache {}", path.display()))?;
            info!("wrote {bytes} bytes to {}", path.display());
        }
        Ok(table)
    }
}

fn opt<T: Into<Value>>(v: Option<T>) -> Value {
    v.map_or(Value::Null, Into::into)
}

fn emit(out: &Output, format: Format, path: Option<&PathBuf>) -> Result<()> {
    match path {
        Some(p) => {
            let file = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            let mut w = BufWriter::new(file);
            out.write(format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            out.write(format, &mut w)?;
        }
    }
    Ok(())
}

fn cmd_table(max_n: u32, min_n: u32, table_args: &TableArgs) -> Result<Output> {
    if min_n < 2 || min_n > max_n {
        bail!("need 2 <= min-n <= max-n, got min-n = {min_n}, max-n = {max_n}");
    }
    let table = table_args.obtain(max_n)?;
    let ns: Vec<u32> = (min_n..=max_n).collect();
    let mut out = Output::new("table", &["n", "c", "c_over_n2", "h", "h_over_n"]);
    for row in ratio_table(&table, &ns) {
        // A cached table may extend past max_n; keep the output independent of it.
        let (h, h_over_n) = if row.n == max_n {
            (None, None)
        } else {
            (row.h, row.h_over_n)
        };
        out.push(vec![
            json!(row.n),
            json!(row.c),
            json!(row.c_over_n2),
            opt(h),
            opt(h_over_n),
        ]);
    }
    Ok(out)
}

fn cmd_classify(n: u32, dim: i64, table_args: &TableArgs) -> Result<Output> {
    if n < 2 {
        bail!("n must be at least 2, got {n}");
    }
    let table = table_args.obtain(n + 1)?;
    let c = Classifier::new(&table).classify(n, dim)?;
    let mut out = Output::new("classify", &["n", "dim", "status", "kind", "value"]);
    let status = c.status.to_string();
    let mut push = |kind: Value, value: Value| {
        out.push(vec![json!(n), json!(dim), json!(status), kind, value]);
    };
    let mut extra = 0;
    for f in &c.families {
        push(json!("family"), json!(f.to_string()));
        extra += 1;
    }
    for r in &c.realizations {
        push(json!("realization"), json!(r.to_string()));
        extra += 1;
    }
    for note in &c.notes {
        push(json!("note"), json!(note));
        extra += 1;
    }
    if extra == 0 {
        push(Value::Null, Value::Null);
    }
    Ok(out)
}

fn cmd_witness(n: u32, dim: u64, index: usize) -> Result<(Output, String)> {
    if n < 2 {
        bail!("n must be at least 2, got {n}");
    }
    let smooth = realizations(n, dim, RealizationMode::SmoothBounded)?;
    if smooth.is_empty() {
        let all = realizations(n, dim, RealizationMode::All)?;
        match all.first() {
            Some(r) => bail!(
                "no smooth-bounded witness for {dim} in dimension {n}: every realization (e.g. {r}) \
                 needs m >= 2 marked blocks or a single block, but smooth bounded domains only realize m in {{0, 1}}"
            ),
            None => bail!("{dim} is not an automorphism-group dimension for n = {n}"),
        }
    }
    let Some(r) = smooth.get(index) else {
        bail!("index {index} out of range, {} realization(s) available", smooth.len());
    };
    let w = make_witness(r)?;
    let mut out = Output::new(
        "witness",
        &[
            "n",
            "dim",
            "index",
            "realization",
            "construction",
            "inequality",
            "ascii",
            "claimed_dimension",
            "label",
        ],
    );
    out.push(vec![
        json!(n),
        json!(dim),
        json!(index),
        json!(r.to_string()),
        json!(format!("{:?}", w.construction)),
        json!(w.inequality),
        json!(w.ascii_inequality()),
        json!(w.claimed_dimension),
        json!(w.label),
    ]);
    let text = format!("{}\n{}\n", w.inequality, w.label);
    Ok((out, text))
}

fn run_suite(suite: Suite, min_n: Option<u32>, max_n: u32, t: &TableArgs) -> Result<CheckReport> {
    let lo = |default: u32| min_n.unwrap_or(default);
    let report = match suite {
        Suite::Bounds => verify_bounds(lo(2), max_n)?,
        Suite::LemmaLargest => verify_lemma_largest(lo(7), max_n)?,
        Suite::Numh => verify_numh(lo(2), max_n, &t.obtain(max_n + 1)?)?,
        Suite::Arms => verify_arms(lo(1), max_n, &t.obtain(max_n)?)?,
        Suite::Brute => verify_brute(lo(1), max_n, &t.obtain(max_n)?)?,
        Suite::Prop7 => verify_prop7(lo(2), max_n)?,
        Suite::Sequences => verify_sequences(max_n, &t.obtain(max_n + 1)?)?,
        Suite::Consistency => verify_consistency(lo(2), max_n, 40, &t.obtain(max_n + 1)?)?,
    };
    Ok(report)
}

fn report_output(report: &CheckReport) -> Output {
    let mut out = Output::new(
        "verify",
        &["suite", "status", "n_lo", "n_hi", "kind", "n", "value", "detail"],
    );
    let head = |kind: &str, n: Value, value: Value, detail: String| {
        vec![
            json!(report.suite),
            json!(report.status.to_string()),
            json!(report.n_lo),
            json!(report.n_hi),
            json!(kind),
            n,
            value,
            json!(detail),
        ]
    };
    out.push(head(
        "summary",
        Value::Null,
        Value::Null,
        format!(
            "counterexamples={} elapsed_ms={}",
            report.counterexample_total,
            report.elapsed.as_millis()
        ),
    ));
    for f in &report.counterexamples {
        out.push(head("counterexample", json!(f.n), json!(f.value), f.detail.clone()));
    }
    for f in &report.observations {
        out.push(head("observation", json!(f.n), json!(f.value), f.detail.clone()));
    }
    out
}

fn cmd_sequence(max_n: u32) -> Result<Output> {
    if max_n < 1 {
        bail!("max-n must be at least 1");
    }
    let mut out = Output::new("sequence", &["n", "f", "two_g", "k"]);
    for row in fgk(max_n) {
        out.push(vec![json!(row.n), json!(row.f), json!(row.two_g), opt(row.k)]);
    }
    Ok(out)
}

fn cmd_set(n: u32, format: Format, t: &TableArgs) -> Result<()> {
    let table = t.obtain(n)?;
    let set = table.set(n)?;
    if format == Format::Text {
        let items: Vec<String> = set.iter().map(|v| v.to_string()).collect();
        println!("{}", items.join(" "));
        return Ok(());
    }
    let mut out = Output::new("set", &["n", "value"]);
    for v in set.iter() {
        out.push(vec![json!(n), json!(v)]);
    }
    emit(&out, format, None)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Table {
            max_n,
            min_n,
            format,
            out,
            table,
        } => emit(&cmd_table(max_n, min_n, &table)?, format, out.as_ref())?,
        Command::Classify {
            n,
            dim,
            format,
            table,
        } => emit(&cmd_classify(n, dim, &table)?, format, None)?,
        Command::Witness {
            n,
            dim,
            index,
            format,
        } => {
            let (out, text) = cmd_witness(n, dim, index)?;
            if format == Format::Text {
                print!("{text}");
            } else {
                emit(&out, format, None)?;
            }
        }
        Command::Verify {
            suite,
            max_n,
            min_n,
            format,
            table,
        } => {
            let report = run_suite(suite, min_n, max_n, &table)?;
            emit(&report_output(&report), format, None)?;
            if report.status == CheckStatus::Fail {
                eprintln!(
                    "{}: {} counterexample(s)",
                    report.suite, report.counterexample_total
                );
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Sequence { max_n, format } => emit(&cmd_sequence(max_n)?, format, None)?,
        Command::Set { n, format, table } => cmd_set(n, format, &table)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
