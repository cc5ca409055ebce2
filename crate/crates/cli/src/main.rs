use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use shadowlink::braid::{make_bk, make_lnm, make_omega, named_constant_braids, BraidWord};
use shadowlink::diagram::{braided_link, closure_diagram, LinkDiagram};
use shadowlink::fsl::{augment_to_fsl, catalog_export, make_family, v8_f64, ExportRecord, Family};
use shadowlink::tqft::slope_series_with;
use shadowlink::Error;

#[derive(Parser)]
#[command(name = "shadowlink", version, about = "Fundamental shadow links, braided links and their Turaev-Viro values")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a link and write its braid, PD code and JSON record.
    Gen(GenArgs),
    /// Turaev-Viro values and slopes of a braided link over odd levels.
    Tv(TvArgs),
    /// Write JSON bundles for the external volume checker.
    Export {
        #[command(subcommand)]
        what: ExportCmd,
    },
}

/// Spec forms: `L 2`, `J 1`, `K 3` (or `K3`), `bk 2`, `omega 9`, `Lnm 5 1`,
/// `table-mon L8n7`, `random N LEN`, `braid "B2: 1 -1"`, or the braid text itself.
#[derive(Args)]
struct GenArgs {
    #[arg(required = true, num_args = 1..)]
    spec: Vec<String>,
    /// Augment the closure of the braid into a fundamental shadow link.
    #[arg(long)]
    augment: bool,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Seed for `random`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Args)]
struct TvArgs {
    #[arg(required = true, num_args = 1..)]
    spec: Vec<String>,
    #[arg(long, default_value_t = 5)]
    r_min: u32,
    #[arg(long, default_value_t = 15)]
    r_max: u32,
    #[arg(long, default_value_t = 128)]
    precision_bits: u32,
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
    /// Seed for `random`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum ExportCmd {
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated subset of L,J,K.
    #[arg(long, value_delimiter = ',')]
    families: Vec<Family>,
    #[arg(long, default_value_t = 3)]
    k_max: usize,
    /// Braided links of b_1 .. b_N.
    #[arg(long)]
    bk_max: Option<u32>,
    /// Also write the table-links catalog.
    #[arg(long)]
    table_links: bool,
    /// Braids (text form) whose augmentations are exported, may repeat.
    #[arg(long = "augment")]
    augment: Vec<String>,
    #[arg(long, default_value = "export")]
    out: PathBuf,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn kind(&self) -> String {
        match self {
            CliError::Core(e) => {
                let dbg = format!("{e:?}");
                dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
            }
            CliError::Usage(_) => "Usage".into(),
            CliError::Io { .. } => "Io".into(),
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let mut v = json!({ "error": { "kind": self.kind(), "message": self.to_string() } });
        if let CliError::Core(Error::Parse { pos, .. }) = self {
            v["error"]["position"] = json!(pos);
        }
        v
    }
}

type Res<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> Res<T> {
    Err(CliError::Usage(msg.into()))
}

fn num<T: std::str::FromStr>(s: Option<&String>, what: &str) -> Res<T> {
    match s.map(|x| x.parse::<T>()) {
        Some(Ok(v)) => Ok(v),
        _ => usage(format!("expected {what}")),
    }
}

/// What a spec names.
enum Target {
    Braid { name: String, b: BraidWord, k: Option<usize> },
    Family(Family, usize),
}

/// Random braid on n strands with every generator present.
fn random_braid(n: u32, len: usize, seed: u64) -> Res<BraidWord> {
    if n < 2 || len + 1 < n as usize {
        return usage("random needs n >= 2 and length >= n - 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let l: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..n as i32);
                if rng.gen_bool(0.5) { g } else { -g }
            })
            .collect();
        if (1..n as i32).all(|g| l.iter().any(|e| e.abs() == g)) {
            return Ok(BraidWord::new(n, l)?);
        }
    }
}

fn parse_target(spec: &[String], seed: u64) -> Res<Target> {
    let head = spec[0].as_str();
    let arg = |i: usize| spec.get(i);
    let compact = |c: char| head.len() > 1 && head.starts_with(c) && head[1..].bytes().all(|b| b.is_ascii_digit());
    match head {
        "L" | "J" | "K" => Ok(Target::Family(head.parse()?, num(arg(1), "family parameter k")?)),
        _ if compact('L') || compact('J') || compact('K') => {
            Ok(Target::Family(head[..1].parse()?, num(Some(&head[1..].to_string()), "family parameter k")?))
        }
        "bk" => {
            let k: u32 = num(arg(1), "k")?;
            Ok(Target::Braid { name: format!("b{k}"), b: make_bk(k)?, k: Some(k as usize) })
        }
        "omega" => {
            let m: u32 = num(arg(1), "m")?;
            Ok(Target::Braid { name: format!("omega{m}"), b: make_omega(m)?, k: None })
        }
        "Lnm" => {
            let (n, m): (u32, u32) = (num(arg(1), "n")?, num(arg(2), "m")?);
            Ok(Target::Braid { name: format!("L{n}_{m}"), b: make_lnm(n, m)?, k: None })
        }
        "table-mon" => {
            let key = arg(1).ok_or_else(|| CliError::Usage("expected a table row name".into()))?;
            let b = named_constant_braids()
                .get(key.as_str())
                .cloned()
                .ok_or_else(|| CliError::Usage(format!("no table row {key:?}")))?;
            Ok(Target::Braid { name: key.clone(), b, k: None })
        }
        "random" => {
            let (n, len): (u32, usize) = (num(arg(1), "strand count")?, num(arg(2), "length")?);
            Ok(Target::Braid { name: format!("random-{seed}"), b: random_braid(n, len, seed)?, k: None })
        }
        "braid" => {
            let text = spec[1..].join(" ");
            Ok(Target::Braid { name: "braid".into(), b: text.parse()?, k: None })
        }
        _ => Ok(Target::Braid { name: "braid".into(), b: spec.join(" ").parse()?, k: None }),
    }
}

fn write(path: &Path, text: &str) -> Res<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn mkdir(path: &Path) -> Res<()> {
    std::fs::create_dir_all(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn summary(name: &str, braid: Option<&BraidWord>, d: &LinkDiagram, k: Option<usize>) -> String {
    let mut s = format!("{name}\n");
    if let Some(b) = braid {
        s += &format!("braid: {b}\n");
    }
    s += &format!("crossings: {}\ncomponents: {}\n", d.crossing_count(), d.component_count());
    if let Some(k) = k {
        s += &format!("k: {k}\npredicted volume: {}v8 = {:.9}\n", 2 * k, 2.0 * k as f64 * v8_f64());
    }
    s
}

fn cmd_gen(a: &GenArgs) -> Res<()> {
    let target = parse_target(&a.spec, a.seed)?;
    mkdir(&a.out)?;
    let (name, braid, diagram, record, k) = match target {
        Target::Family(f, k) => {
            if a.augment {
                return usage("--augment applies to braids, not family links");
            }
            let l = make_family(f, k)?;
            let rec = ExportRecord::from_family(&l);
            (rec.name.clone(), None, l.diagram, rec, Some(k))
        }
        Target::Braid { name, b, .. } if a.augment => {
            let aug = augment_to_fsl(&b)?;
            let name = format!("{name}-augmented");
            let rec = ExportRecord::from_augmented(&name, &aug);
            (name, Some(b), aug.diagram, rec, Some(aug.complexity))
        }
        // b_k is exported with its axis: the braided link has volume 2k·v₈
        Target::Braid { name, b, k: Some(k) } => {
            let rec = ExportRecord::from_braided_link(&name, &b, Some(k));
            (name, Some(b.clone()), braided_link(&b), rec, Some(k))
        }
        Target::Braid { name, b, k: None } => {
            let rec = ExportRecord::from_closure(&name, &b);
            (name, Some(b.clone()), closure_diagram(&b), rec, None)
        }
    };
    if let Some(b) = &braid {
        write(&a.out.join(format!("{name}.braid")), &format!("{b}\n"))?;
    }
    write(&a.out.join(format!("{name}.pd")), &format!("{}\n", diagram.to_pd_text()))?;
    write(&a.out.join(format!("{name}.json")), &format!("{}\n", record.to_json()))?;
    print!("{}", summary(&name, braid.as_ref(), &diagram, k));
    Ok(())
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or("NA".into(), |v| format!("{v:.10}"))
}

fn cmd_tv(a: &TvArgs) -> Res<()> {
    let b = match parse_target(&a.spec, a.seed)? {
        Target::Braid { b, .. } => b,
        Target::Family(..) => return usage("tv needs a braid, not a family link"),
    };
    if a.r_min % 2 == 0 || a.r_max % 2 == 0 || a.r_min < 3 || a.r_min > a.r_max {
        return usage("--r-min and --r-max must be odd, at least 3, and in order");
    }
    if a.precision_bits < 53 {
        return usage("--precision-bits must be at least 53");
    }
    let rs: Vec<u32> = (a.r_min..=a.r_max).step_by(2).collect();
    let s = slope_series_with(&b, &rs, a.precision_bits)?;
    match a.format {
        Format::Tsv => {
            println!("r\ttv\tslope\ttarget");
            for row in &s.rows {
                println!("{}\t{}\t{}\t{}", row.r, row.tv_text, fmt_opt(row.slope), fmt_opt(s.target));
            }
        }
        Format::Json => {
            let rows: Vec<_> = s
                .rows
                .iter()
                .map(|row| json!({ "r": row.r, "tv": row.tv_text, "slope": row.slope, "target": s.target }))
                .collect();
            let v = json!({
                "braid": s.braid,
                "precision_bits": s.precision_bits,
                "rows": rows,
                "target": s.target,
                "ltv_proxy": s.ltv_proxy,
            });
            println!("{}", serde_json::to_string_pretty(&v).expect("json"));
        }
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs) -> Res<()> {
    mkdir(&a.out)?;
    let mut files = Vec::new();
    let mut put = |name: String, text: String| -> Res<()> {
        let path = a.out.join(format!("{name}.json"));
        write(&path, &format!("{text}\n"))?;
        files.push(path);
        Ok(())
    };
    for &f in &a.families {
        for k in 1..=a.k_max {
            let rec = ExportRecord::from_family(&make_family(f, k)?);
            put(rec.name.clone(), rec.to_json())?;
        }
    }
    if let Some(n) = a.bk_max {
        for k in 1..=n {
            let rec = ExportRecord::from_braided_link(&format!("b{k}"), &make_bk(k)?, Some(k as usize));
            put(rec.name.clone(), rec.to_json())?;
        }
    }
    for (i, text) in a.augment.iter().enumerate() {
        let b: BraidWord = text.parse()?;
        let rec = ExportRecord::from_augmented(&format!("augmented-{}", i + 1), &augment_to_fsl(&b)?);
        put(rec.name.clone(), rec.to_json())?;
    }
    if a.table_links {
        put("table-links".into(), serde_json::to_string_pretty(&catalog_export()).expect("json"))?;
    }
    for f in &files {
        println!("{}", f.display());
    }
    println!("wrote {} files", files.len());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Tv(a) => cmd_tv(a),
        Cmd::Export { what: ExportCmd::Verify(a) } => cmd_verify(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::FAILURE
        }
    }
}
