use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use geolift::families::{self, CodeBase};
use geolift::modular;
use geolift::report::{self, Config, Family, Format};
use geolift::words::Word;

#[derive(Parser)]
#[command(name = "geolift", version, about = "Closed geodesics, arc censuses and lift volume bounds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tabulate a family over a parameter range.
    Report(ReportArgs),
    /// Print one family member in the text syntax.
    Family(FamilyArgs),
    /// Trace, length, self-intersection and arc census of a word in a, b, t.
    Analyze {
        word: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// TOML config file (falls back to $GEOLIFT_CONFIG).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Intersection cutoff.
    #[arg(long)]
    cutoff: Option<usize>,
    #[arg(long)]
    bps_c: Option<f64>,
    #[arg(long)]
    ell_max: Option<f64>,
    /// natural or binary
    #[arg(long)]
    lift_code_base: Option<String>,
}

impl Common {
    fn config(&self) -> Result<Config, String> {
        let mut cfg = Config::load(self.config.as_deref()).map_err(|e| e.to_string())?;
        if self.cutoff.is_some() {
            cfg.cutoff = self.cutoff;
        }
        if let Some(c) = self.bps_c {
            cfg.bps_c = c;
        }
        if self.ell_max.is_some() {
            cfg.ell_max = self.ell_max;
        }
        if let Some(b) = &self.lift_code_base {
            cfg.lift_code_base = match b.as_str() {
                "natural" => CodeBase::Natural,
                "binary" => CodeBase::Binary,
                _ => return Err(format!("unknown lift code base {b:?}")),
            };
        }
        Ok(cfg)
    }
}

#[derive(Args)]
struct ReportArgs {
    /// theorem2, mod, mod1, pib or lin.
    #[arg(value_name = "FAMILY")]
    family_pos: Option<String>,
    #[arg(long)]
    family: Option<String>,
    /// `lo..hi` inclusive; defaults per family.
    #[arg(long, visible_aliases = ["k", "n"])]
    range: Option<String>,
    /// csv, json, svg or svg-log.
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (0 = rayon default).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct FamilyArgs {
    family: String,
    #[arg(long, visible_aliases = ["k", "n"])]
    param: u64,
    #[command(flatten)]
    common: Common,
}

fn run_report(a: &ReportArgs) -> Result<bool, String> {
    let name = a.family.as_ref().or(a.family_pos.as_ref()).ok_or("missing family")?;
    let family: Family = name.parse().map_err(|e: report::ReportError| e.to_string())?;
    let range = match &a.range {
        Some(r) => report::parse_range(r).map_err(|e| e.to_string())?,
        None => family.default_range(),
    };
    let format: Format = a.format.parse().map_err(|e: report::ReportError| e.to_string())?;
    let cfg = a.common.config()?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(a.threads).build().map_err(|e| e.to_string())?;
    let table = pool.install(|| report::run_report(family, range, &cfg)).map_err(|e| e.to_string())?;
    let bytes = report::emit(&table, format).map_err(|e| e.to_string())?;
    match &a.out {
        Some(p) => std::fs::write(p, &bytes).map_err(|e| e.to_string())?,
        None => std::io::stdout().write_all(&bytes).map_err(|e| e.to_string())?,
    }
    Ok(!table.has_errors())
}

fn run_family(a: &FamilyArgs) -> Result<String, String> {
    let family: Family = a.family.parse().map_err(|e: report::ReportError| e.to_string())?;
    let cfg = a.common.config()?;
    let n = a.param;
    let s = match family {
        Family::Mod => families::mod_family_with(n, cfg.mod_exponents).map_err(|e| e.to_string())?.to_string(),
        Family::Mod1 => {
            let alpha = modular::parse_xy(&cfg.mod1_alpha).map_err(|e| e.to_string())?;
            families::mod1_family(&alpha, n).map_err(|e| e.to_string())?.to_string()
        }
        Family::Theorem2 => {
            let g0 = Word::parse(&cfg.theorem2_gamma0).map_err(|e| e.to_string())?;
            let eta = Word::parse(&cfg.theorem2_eta).map_err(|e| e.to_string())?;
            families::theorem2_family(&g0, &eta, n).map_err(|e| e.to_string())?.to_string()
        }
        Family::Pib => families::pib_sequence(n).map_err(|e| e.to_string())?.to_string(),
        Family::Lin => families::lin_family(n).map_err(|e| e.to_string())?.to_string(),
    };
    Ok(s)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Report(a) => run_report(a).map(|ok| if ok { ExitCode::SUCCESS } else { ExitCode::from(2) }),
        Cmd::Family(a) => run_family(a).map(|s| {
            println!("{s}");
            ExitCode::SUCCESS
        }),
        Cmd::Analyze { word, common } => common.config().and_then(|cfg| report::analyze_word(word, &cfg)).map(|v| {
            println!("{}", report::to_pretty(&v));
            ExitCode::SUCCESS
        }),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
