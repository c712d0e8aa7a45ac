use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use malle_core::asymptotics::{
    ell_rank_bound, exact_quadratic_ramified_count, residue_series, AsymError, FieldFilter, RankBase, RankBoundQuery,
};
use malle_core::permgroup::{wreath_decompose, wreath_product, GroupError, InvariantRecord, PermGroup};
use malle_core::quadfield::{count_quadratic_q, QuadError, QuadraticField};
use malle_core::towers::{count_towers, CountMode, TowerError};
use malle_verify as verify;
use serde::Serialize;
use thiserror::Error;

#[derive(Parser, Debug)]
#[command(name = "malle", version, about = "Malle invariants and discriminant counts for C2 wreath extensions")]
struct Cli {
    /// Worker threads for the enumeration sweeps (default: one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Leave out the timestamp comment line of CSV files.
    #[arg(long, global = true)]
    no_header: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GroupSpec {
    /// Degree of the permutation group.
    #[arg(long)]
    degree: usize,
    /// Generators as cycle strings separated by `;`, e.g. "(1,2);(1,2,3,4)".
    #[arg(long)]
    gens: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants of a transitive permutation group as a JSON record.
    Invariants {
        #[command(flatten)]
        group: GroupSpec,
        /// Refuse groups with more elements than this.
        #[arg(long, default_value_t = malle_core::permgroup::DEFAULT_ORDER_CAP)]
        order_cap: usize,
    },
    /// Invariants of the wreath product H1 wr H2 and its decomposition.
    Wreath {
        #[arg(long)]
        h1_degree: usize,
        #[arg(long)]
        h1_gens: String,
        #[arg(long)]
        h2_degree: usize,
        #[arg(long)]
        h2_gens: String,
        #[arg(long, default_value_t = malle_core::permgroup::DEFAULT_ORDER_CAP)]
        order_cap: usize,
    },
    /// Count quadratic fields with |d| <= x.
    CountC2 {
        #[arg(long)]
        x: u64,
        /// Write counts at x = 10, 100, ... and at x itself to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Also print a JSON record for each of these field discriminants.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        dump: Vec<String>,
        /// Width bound for L(2) in the field records.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Count quartic towers over class number one quadratic fields.
    CountTowers {
        /// Base field discriminants, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        fields: String,
        /// Largest discriminant bound.
        #[arg(long)]
        x: u64,
        /// Further sample bounds below x.
        #[arg(long, value_delimiter = ',')]
        samples: Vec<u64>,
        #[arg(long, value_enum, default_value_t = Mode::Tower)]
        mode: Mode,
        /// Write one row per tower to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Partial sum of R(K) / d_K^2 over quadratic fields with |d_K| <= D.
    Residue {
        #[arg(long = "D")]
        d: u64,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
        /// Print a JSON record instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Bound on the number of C_l extensions unramified outside S.
    RankBound {
        #[arg(long)]
        ell: u64,
        /// Rational primes, comma separated.
        #[arg(long = "S", value_delimiter = ',')]
        s: Vec<u64>,
        /// Base field discriminant; the rationals when absent.
        #[arg(long, allow_hyphen_values = true)]
        base: Option<i64>,
    },
    /// Run the acceptance checks and print a pass/fail table.
    Verify {
        /// Run only these checks.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        /// Print JSON lines instead of the table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Tower,
    Field,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Filter {
    All,
    H1,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] QuadError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Asym(#[from] AsymError),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0} of the acceptance checks failed")]
    ChecksFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_)
            | CliError::Group(GroupError::Parse { .. } | GroupError::DegreeMismatch { .. })
            | CliError::Field(QuadError::NotFundamental(_))
            | CliError::Tower(TowerError::Field(QuadError::NotFundamental(_))) => 2,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn csv_writer(path: &Path, header: bool) -> Result<csv::Writer<File>> {
    let mut f = File::create(path)?;
    if header {
        let now = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        writeln!(f, "# malle {} generated at unix time {now}", env!("CARGO_PKG_VERSION"))?;
    }
    Ok(csv::Writer::from_writer(f))
}

fn parse_discs(list: &str) -> Result<Vec<i64>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| CliError::Usage(format!("`{s}` is not an integer discriminant")))
        })
        .collect()
}

fn group(degree: usize, gens: &str, cap: usize) -> Result<PermGroup> {
    Ok(PermGroup::from_cycle_strings(degree, gens, cap)?)
}

#[derive(Serialize)]
struct InvariantJson {
    a: String,
    #[serde(flatten)]
    record: InvariantRecord,
}

impl InvariantJson {
    fn of(g: &PermGroup) -> Result<Self> {
        let record = InvariantRecord::of(g)?;
        Ok(Self {
            a: format!("{}/{}", record.a_num, record.a_den),
            record,
        })
    }
}

#[derive(Serialize)]
struct WreathJson {
    h1: InvariantJson,
    h2: InvariantJson,
    product: InvariantJson,
    a_preserved: bool,
    b_preserved: bool,
    /// Block size and top group order of the `S_e wr H` splitting.
    decomposition: Option<(usize, usize)>,
}

#[derive(Serialize)]
struct CountRow {
    x_sample: u64,
    count: u64,
    #[serde(rename = "count/x")]
    density: f64,
    target: f64,
}

#[derive(Serialize)]
struct TowerRow {
    d_k: i64,
    delta_a: i128,
    delta_b: i128,
    rel_disc_norm: u64,
    tower_disc: u128,
    r#type: String,
    witness: Option<u64>,
}

#[derive(Serialize)]
struct RankJson {
    s: u32,
    bound: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<u64>,
}

fn run(cli: Cli) -> Result<()> {
    let header = !cli.no_header;
    match cli.command {
        Command::Invariants { group: g, order_cap } => {
            print_json(&InvariantJson::of(&group(g.degree, &g.gens, order_cap)?)?)?;
        }
        Command::Wreath {
            h1_degree,
            h1_gens,
            h2_degree,
            h2_gens,
            order_cap,
        } => {
            let h1 = group(h1_degree, &h1_gens, order_cap)?;
            let h2 = group(h2_degree, &h2_gens, order_cap)?;
            let w = wreath_product(&h1, &h2, order_cap)?;
            let decomposition = wreath_decompose(&w)?.map(|d| (d.block_size, d.top.order()));
            let (h1, h2, product) = (InvariantJson::of(&h1)?, InvariantJson::of(&h2)?, InvariantJson::of(&w)?);
            print_json(&WreathJson {
                a_preserved: (product.record.a_num, product.record.a_den) == (h1.record.a_num, h1.record.a_den),
                b_preserved: product.record.b_q == h1.record.b_q,
                h1,
                h2,
                product,
                decomposition,
            })?;
        }
        Command::CountC2 { x, csv, dump, tol } => {
            let count = count_quadratic_q(x);
            print_json(&serde_json::json!({ "count": count }))?;
            for d in parse_discs(&dump.join(","))? {
                print_json(&QuadraticField::new(d)?.dump(tol)?)?;
            }
            if let Some(path) = csv {
                let target = 6.0 / std::f64::consts::PI.powi(2);
                let mut samples: Vec<u64> = std::iter::successors(Some(10u64), |s| s.checked_mul(10))
                    .take_while(|&s| s < x)
                    .collect();
                samples.push(x);
                let mut w = csv_writer(&path, header)?;
                for s in samples {
                    let count = count_quadratic_q(s);
                    w.serialize(CountRow {
                        x_sample: s,
                        count,
                        density: count as f64 / s as f64,
                        target,
                    })?;
                }
                w.flush()?;
            }
        }
        Command::CountTowers {
            fields,
            x,
            mut samples,
            mode,
            csv,
        } => {
            let fields = parse_discs(&fields)?;
            if fields.is_empty() {
                return Err(CliError::Usage("no base fields given".into()));
            }
            if let Some(&s) = samples.iter().find(|&&s| s > x) {
                return Err(CliError::Usage(format!("sample {s} exceeds --x {x}")));
            }
            samples.push(x);
            samples.sort_unstable();
            samples.dedup();
            let mode = match mode {
                Mode::Tower => CountMode::Tower,
                Mode::Field => CountMode::Field,
            };
            let report = count_towers(&fields, &samples, mode)?;
            for s in &report.samples {
                print_json(s)?;
            }
            print_json(&report.checks)?;
            if let Some(path) = csv {
                let mut w = csv_writer(&path, header)?;
                for t in &report.towers {
                    w.serialize(TowerRow {
                        d_k: t.d_k,
                        delta_a: t.delta.a,
                        delta_b: t.delta.b,
                        rel_disc_norm: t.rel_disc_norm,
                        tower_disc: t.tower_disc,
                        r#type: t.galois_type.to_string(),
                        witness: t.witness,
                    })?;
                }
                w.flush()?;
            }
        }
        Command::Residue { d, tol, filter, json } => {
            let filter = match filter {
                Filter::All => FieldFilter::All,
                Filter::H1 => FieldFilter::ClassNumberOne,
            };
            let r = residue_series(d, tol, filter)?;
            if json {
                print_json(&r)?;
            } else {
                let e = r.enclosure();
                println!("D = {d}, {} fields", r.fields);
                println!("partial sum in [{:.12}, {:.12}]", r.partial_sum.lo(), r.partial_sum.hi());
                println!("tail <= {:.3e}", r.tail);
                println!("series in [{:.12}, {:.12}]", e.lo(), e.hi());
            }
        }
        Command::RankBound { ell, s, base } => {
            let base = base.map_or(RankBase::Rational, RankBase::Quadratic);
            let b = ell_rank_bound(&RankBoundQuery {
                base,
                ell,
                s: s.clone(),
            })?;
            let exact = (base == RankBase::Rational && ell == 2).then(|| exact_quadratic_ramified_count(&s));
            print_json(&RankJson {
                s: b.s_exponent,
                bound: b.bound,
                exact,
            })?;
        }
        Command::Verify { only, json } => {
            if let Some(bad) = only.iter().find(|&&i| !(1..=12).contains(&i)) {
                return Err(CliError::Usage(format!("no acceptance check {bad}")));
            }
            let ids: Vec<u8> = if only.is_empty() {
                verify::CHECKS.iter().map(|c| c.0).collect()
            } else {
                only
            };
            let mut failed = 0;
            for id in ids {
                let r = verify::run_check(id);
                if json {
                    print_json(&r)?;
                } else {
                    println!("{r}");
                }
                failed += usize::from(!r.pass);
            }
            if failed > 0 {
                return Err(CliError::ChecksFailed(failed));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
