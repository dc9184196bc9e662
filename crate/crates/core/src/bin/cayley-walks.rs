use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use cayley_walks::bounds::{occupation_split_with, wsf_split_with, BoundParams, SplitMode, VolumeFunction};
use cayley_walks::groups::GroupModel;
use cayley_walks::harness::{parse_list, run_experiment_report, ExperimentConfig, Observable};
use cayley_walks::metric::{DistanceOracle, DEFAULT_BALL_CAP};
use cayley_walks::report::{emit, experiment_table, read_key_values, Cell, Format, Table};
use cayley_walks::stats::{fit_exponent, fit_exponent_weighted, EstimateRecord};
use cayley_walks::validate::{run_validation, Scale, ValidateOptions};
use cayley_walks::{Error, Result};

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

/// Random walks, loop-erased walks and wired spanning forests on Cayley graphs.
#[derive(Parser)]
#[command(name = "cayley-walks", version)]
struct Cli {
    /// Master seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (0 = all cores); results do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Output file (a directory for `validate`); stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format: csv or json.
    #[arg(long, global = true)]
    format: Option<String>,
    /// File of `key = value` lines using the flag names as keys.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sphere sizes and volumes of balls around the identity.
    Ball {
        /// Group descriptor such as `Z^3`, `H3`, `LL`, `F2` or `Z^2xF2`.
        #[arg(long)]
        group: Option<String>,
        /// Largest radius.
        #[arg(long)]
        radius: Option<u64>,
    },
    /// Occupation time of B(o, r) by the walk started at o.
    WalkOccupation(WalkArgs),
    /// Exit time of B(o, r).
    ExitTime(WalkArgs),
    /// |T_o ∩ B(o, r)|, |C(o, r)| and N_r for the wired spanning forest.
    WsfVolume(ForestArgs),
    /// Occupation and forest bounds from a volume function.
    Bounds(BoundsArgs),
    /// Runs the validation suite and writes its report.
    Validate {
        /// full or quick.
        #[arg(long)]
        scale: Option<String>,
    },
    /// Power-law fit of a results table.
    Fit {
        /// CSV file with an `r` column (stdin when absent).
        input: Option<PathBuf>,
        /// Series name: fits `mean_<series>`/`sem_<series>` instead of `mean`/`sem`.
        #[arg(long)]
        series: Option<String>,
        /// Inverse-variance weighted fit.
        #[arg(long)]
        weighted: bool,
    },
}

#[derive(Args)]
struct WalkArgs {
    /// Group descriptor such as `Z^3`, `H3`, `LL`, `F2` or `Z^2xF2`.
    #[arg(long)]
    group: Option<String>,
    /// Comma-separated, strictly increasing.
    #[arg(long)]
    radii: Option<String>,
    /// Independent trials per radius.
    #[arg(long)]
    trials: Option<u64>,
    /// Holding probability 1/2.
    #[arg(long)]
    lazy: bool,
    /// Escape radius over r for the occupation time.
    #[arg(long = "escape-factor")]
    escape_factor: Option<f64>,
    /// Step limit per trial.
    #[arg(long)]
    horizon: Option<u64>,
}

#[derive(Args)]
struct ForestArgs {
    /// Group descriptor such as `Z^3`, `H3`, `LL`, `F2` or `Z^2xF2`.
    #[arg(long)]
    group: Option<String>,
    /// Comma-separated, strictly increasing.
    #[arg(long)]
    radii: Option<String>,
    /// Independent trials per radius.
    #[arg(long)]
    trials: Option<u64>,
    /// Wired ball radius over r.
    #[arg(long = "wired-factor")]
    wired_factor: Option<u64>,
    /// Largest wired ball sampled with an index.
    #[arg(long = "index-cap")]
    index_cap: Option<usize>,
}

#[derive(Args)]
struct BoundsArgs {
    /// Volume table from the ball sizes of this group.
    #[arg(long)]
    group: Option<String>,
    /// Closed-form volume such as `r^3`, `expbase:3` or `2*3^r-1`.
    #[arg(long)]
    volume: Option<String>,
    /// Comma-separated `key=value` bound parameters (c, c1, c2, k, alpha, cd).
    #[arg(long)]
    params: Option<String>,
    /// Comma-separated, strictly increasing.
    #[arg(long)]
    radii: Option<String>,
    /// logvolume or diffusive.
    #[arg(long)]
    split: Option<String>,
    /// Also simulate occupation and forest means with this many trials (needs --group).
    #[arg(long)]
    trials: Option<u64>,
}

/// Config file values overlaid with the flags given on the command line.
struct Settings(BTreeMap<String, String>);

const KNOWN_KEYS: [&str; 19] = [
    "seed",
    "workers",
    "out",
    "format",
    "group",
    "radius",
    "radii",
    "trials",
    "lazy",
    "escape-factor",
    "horizon",
    "wired-factor",
    "index-cap",
    "volume",
    "params",
    "split",
    "scale",
    "series",
    "weighted",
];

impl Settings {
    fn load(path: Option<&Path>) -> Result<Self> {
        let map = match path {
            Some(p) => read_key_values(p)?,
            None => BTreeMap::new(),
        };
        if let Some(k) = map.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
            return Err(Error::Config(format!("unknown config key '{k}'")));
        }
        Ok(Settings(map))
    }

    fn set<T: ToString>(&mut self, key: &str, value: Option<T>) {
        if let Some(v) = value {
            self.0.insert(key.to_string(), v.to_string());
        }
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| Error::Config(format!("missing --{key}")))
    }

    fn parse<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| Error::Config(format!("bad value '{v}' for {key}")))
            })
            .transpose()
    }

    fn format(&self) -> Result<Format> {
        Ok(self.parse::<Format>("format")?.unwrap_or_default())
    }

    fn out(&self) -> Option<PathBuf> {
        self.get("out").map(PathBuf::from)
    }

    /// Keys understood by [`ExperimentConfig::from_pairs`].
    fn experiment(&self, observable: Observable) -> Result<ExperimentConfig> {
        const KEYS: [&str; 10] = [
            "group",
            "radii",
            "trials",
            "seed",
            "lazy",
            "escape-factor",
            "horizon",
            "wired-factor",
            "index-cap",
            "workers",
        ];
        let mut pairs: BTreeMap<String, String> = KEYS
            .iter()
            .filter_map(|k| self.get(k).map(|v| (k.to_string(), v.to_string())))
            .collect();
        pairs.insert("observable".into(), observable.name().into());
        ExperimentConfig::from_pairs(&pairs)
    }
}

fn write_table(table: &Table, s: &Settings) -> Result<()> {
    emit(&table.render(s.format()?), s.out().as_deref())
}

fn ball(s: &Settings) -> Result<()> {
    let group = GroupModel::parse(s.require("group")?)?;
    let radius = s.parse::<u64>("radius")?.unwrap_or(8);
    let oracle = DistanceOracle::build(&group, radius)?;
    let mut t = Table::new(["r", "sphere_size", "volume"]);
    for (r, (sphere, volume)) in oracle.sphere_sizes().iter().zip(oracle.volumes()).enumerate() {
        t.push(vec![(r as u64).into(), (*sphere).into(), volume.into()]);
    }
    write_table(&t, s)
}

fn experiment(s: &Settings, observable: Observable) -> Result<()> {
    let cfg = s.experiment(observable)?;
    write_table(&experiment_table(&run_experiment_report(&cfg)?), s)
}

fn group_volume(group: &GroupModel, r_max: u64) -> Result<VolumeFunction> {
    let oracle = match DistanceOracle::build_with_cap(group, r_max, DEFAULT_BALL_CAP) {
        Err(Error::Capacity { radius_reached, .. }) => DistanceOracle::build(group, radius_reached)?,
        other => other?,
    };
    Ok(VolumeFunction::from_oracle(&oracle))
}

fn bounds(s: &Settings) -> Result<()> {
    let radii = parse_list(s.get("radii").unwrap_or("2,4,8,16"))?;
    let r_max = *radii.last().ok_or_else(|| Error::Config("empty --radii".into()))?;
    let group = s.get("group").map(GroupModel::parse).transpose()?;
    let volume = match (s.get("volume"), &group) {
        (Some(v), _) => v.parse::<VolumeFunction>()?,
        (None, Some(g)) => group_volume(g, r_max)?,
        (None, None) => return Err(Error::Config("bounds needs --group or --volume".into())),
    };
    let params: BoundParams = s.get("params").unwrap_or("").parse()?;
    let mode = match s.get("split").unwrap_or("logvolume") {
        "logvolume" => SplitMode::LogVolume,
        "diffusive" => SplitMode::Diffusive,
        other => return Err(Error::Config(format!("unknown split '{other}'"))),
    };
    let mut cols = vec![
        "r",
        "volume",
        "m0_occupation",
        "occupation_head",
        "occupation_tail",
        "occupation_bound",
        "m0_forest",
        "forest_head",
        "forest_tail",
        "forest_bound",
    ]
    .into_iter()
    .map(String::from)
    .collect::<Vec<_>>();
    let trials = s.parse::<u64>("trials")?;
    let simulated = match (trials, &group) {
        (Some(n), Some(_)) if n > 0 => {
            let mut pairs = s.0.clone();
            pairs.insert("trials".into(), n.to_string());
            pairs.insert("radii".into(), s.get("radii").unwrap_or("2,4,8,16").into());
            let sub = Settings(pairs);
            let occ = run_experiment_report(&sub.experiment(Observable::OccupationTime)?)?;
            let forest = run_experiment_report(&sub.experiment(Observable::WsfBallVolume)?)?;
            cols.extend(["mean_occupation", "sem_occupation", "mean_T", "sem_T"].map(String::from));
            Some((occ.records(), forest.series("T")))
        }
        (Some(_), None) => return Err(Error::Config("--trials needs --group".into())),
        _ => None,
    };
    let mut t = Table::new(cols);
    for (i, &r) in radii.iter().enumerate() {
        let occ = occupation_split_with(r, &volume, &params, mode)?;
        let wsf = wsf_split_with(r, &volume, &params, mode)?;
        let mut row: Vec<Cell> = vec![
            r.into(),
            volume.at(r).into(),
            occ.m0.into(),
            occ.head.into(),
            occ.tail.into(),
            occ.total.into(),
            wsf.m0.into(),
            wsf.head.into(),
            wsf.tail.into(),
            wsf.total.into(),
        ];
        if let Some((o, f)) = &simulated {
            row.extend([o[i].mean.into(), o[i].sem.into(), f[i].mean.into(), f[i].sem.into()]);
        }
        t.push(row);
    }
    write_table(&t, s)
}

fn validate(s: &Settings) -> Result<bool> {
    let opts = ValidateOptions {
        scale: s.parse::<Scale>("scale")?.unwrap_or_default(),
        seed: s.parse("seed")?.unwrap_or(1),
        workers: s.parse("workers")?.unwrap_or(0),
    };
    let v = run_validation(&opts)?;
    if let Some(dir) = s.out() {
        v.write(&dir, s.format()?)?;
    }
    print!("{}", v.summary());
    Ok(v.all_passed())
}

fn read_records(input: Option<&Path>, series: Option<&str>) -> Result<Vec<EstimateRecord>> {
    let reader: Box<dyn std::io::Read> = match input {
        Some(p) => Box::new(std::fs::File::open(p)?),
        None => Box::new(std::io::stdin()),
    };
    let mut rdr = csv::Reader::from_reader(reader);
    let bad = |e: csv::Error| Error::Config(format!("reading table: {e}"));
    let headers = rdr.headers().map_err(bad)?.clone();
    let (mean_col, sem_col) = match series {
        Some(n) => (format!("mean_{n}"), format!("sem_{n}")),
        None => ("mean".to_string(), "sem".to_string()),
    };
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::Config(format!("table has no '{name}' column")))
    };
    let (r, trials, mean, sem) = (
        column("r")?,
        column("trials").ok(),
        column(&mean_col)?,
        column(&sem_col)?,
    );
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(bad)?;
        let field = |i: usize| -> Result<f64> {
            row.get(i)
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| Error::Config(format!("bad number in row {:?}", row)))
        };
        let t = trials.map(field).transpose()?.unwrap_or(0.0);
        out.push(EstimateRecord::from_summary(
            field(r)? as u64,
            t as u64,
            field(mean)?,
            field(sem)?,
        ));
    }
    Ok(out)
}

fn fit(s: &Settings, input: Option<&Path>, weighted: bool) -> Result<()> {
    let records = read_records(input, s.get("series"))?;
    let f = if weighted {
        fit_exponent_weighted(&records)?
    } else {
        fit_exponent(&records)?
    };
    let mut t = Table::new(["slope", "intercept", "slope_se", "r_squared", "points"]);
    t.push(vec![
        f.slope.into(),
        f.intercept.into(),
        f.slope_se.into(),
        f.r_squared.into(),
        (f.points as u64).into(),
    ]);
    write_table(&t, s)
}

fn run(cli: Cli) -> Result<bool> {
    let mut s = Settings::load(cli.config.as_deref())?;
    s.set("seed", cli.seed);
    s.set("workers", cli.workers);
    s.set("out", cli.out.as_ref().map(|p| p.display()));
    s.set("format", cli.format);
    let walk = |s: &mut Settings, a: WalkArgs| {
        s.set("group", a.group);
        s.set("radii", a.radii);
        s.set("trials", a.trials);
        s.set("lazy", a.lazy.then_some(true));
        s.set("escape-factor", a.escape_factor);
        s.set("horizon", a.horizon);
    };
    match cli.command {
        Command::Ball { group, radius } => {
            s.set("group", group);
            s.set("radius", radius);
            ball(&s)?;
        }
        Command::WalkOccupation(a) => {
            walk(&mut s, a);
            experiment(&s, Observable::OccupationTime)?;
        }
        Command::ExitTime(a) => {
            walk(&mut s, a);
            experiment(&s, Observable::ExitTime)?;
        }
        Command::WsfVolume(a) => {
            s.set("group", a.group);
            s.set("radii", a.radii);
            s.set("trials", a.trials);
            s.set("wired-factor", a.wired_factor);
            s.set("index-cap", a.index_cap);
            experiment(&s, Observable::WsfBallVolume)?;
        }
        Command::Bounds(a) => {
            s.set("group", a.group);
            s.set("volume", a.volume);
            s.set("params", a.params);
            s.set("radii", a.radii);
            s.set("split", a.split);
            s.set("trials", a.trials);
            bounds(&s)?;
        }
        Command::Validate { scale } => {
            s.set("scale", scale);
            return validate(&s);
        }
        Command::Fit {
            input,
            series,
            weighted,
        } => {
            s.set("series", series);
            let weighted = weighted || s.parse::<bool>("weighted")?.unwrap_or(false);
            fit(&s, input.as_deref(), weighted)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
