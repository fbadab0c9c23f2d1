use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use flowcat::category::{CategoryError, FlowCategory};
use flowcat::cw::{validate_regular, FacePoset};
use flowcat::flow::{FlowContext, FlowError, FlowPoset, DEFAULT_PATH_CAP};
use flowcat::io::{parse_face_poset, parse_matching, parse_morse, parse_simplicial, write_face_poset, write_matching};
use flowcat::morse::{
    find_cycle, greedy_matching, is_discrete_morse, is_faithful, matching_from_function, DiscreteMorseFunction,
    PartialMatching,
};
use flowcat::nerve::DiagonalNerve;
use flowcat::verify::{Pipeline, VerifyError};

#[derive(Parser)]
#[command(name = "flowcat", version, about = "Flow paths and flow categories of acyclic matchings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Regularity, acyclicity and critical cells.
    Check(Args),
    /// Count flow paths; with --out, write Hasse diagrams and a path dump.
    Flowpaths(Args),
    /// Build both flow categories and check their laws.
    Category(Args),
    /// Fibers of the collapsing functor over each critical cell.
    Fibers(Args),
    /// Homology of F(X), the path posets and the diagonal nerves.
    Homology(Args),
    /// Every property check plus the homology chain.
    Verify(Args),
    /// Write all artifacts to --out.
    Export(Args),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Simplicial,
    Faceposet,
}

#[derive(clap::Args)]
struct Args {
    /// Complex: facets one per line, or face-poset JSON.
    #[arg(long)]
    input: PathBuf,
    /// Input format; inferred from the extension when omitted (.json is a face poset).
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[command(flatten)]
    source: Source,
    /// Directory for DOT and JSON artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Homology degrees computed for the nerves; default is top cell dimension + 1.
    #[arg(long)]
    max_dim: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
    cap_paths: usize,
    /// Print a JSON report instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(clap::Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Matching file, lines `lower_cell upper_cell`.
    #[arg(long)]
    matching: Option<PathBuf>,
    /// Discrete Morse function file, lines `cell value`.
    #[arg(long)]
    morse: Option<PathBuf>,
    /// Greedy acyclic matching with this seed.
    #[arg(long)]
    greedy_seed: Option<u64>,
}

enum Failure {
    Check(String),
    Input(String),
    Capacity(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
            Failure::Capacity(_) => 3,
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        if e.is_capacity() {
            Failure::Capacity(e.to_string())
        } else {
            Failure::Check(e.to_string())
        }
    }
}

impl From<CategoryError> for Failure {
    fn from(e: CategoryError) -> Self {
        VerifyError::from(e).into()
    }
}

impl From<FlowError> for Failure {
    fn from(e: FlowError) -> Self {
        VerifyError::from(e).into()
    }
}

/// What a command prints, whether it passed, and the files it would write.
struct Report {
    text: String,
    json: Value,
    passed: bool,
    files: Vec<(String, String)>,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_err(path: &Path) -> impl Fn(flowcat::io::ParseError) -> Failure + '_ {
    move |e| Failure::Input(format!("{}: {e}", path.display()))
}

struct Input {
    fp: FacePoset,
    matching: Option<PartialMatching>,
    morse: Option<DiscreteMorseFunction>,
}

fn load(args: &Args) -> Result<Input, Failure> {
    let text = read(&args.input)?;
    let kind = args.kind.unwrap_or(match args.input.extension().and_then(|e| e.to_str()) {
        Some("json") => Kind::Faceposet,
        _ => Kind::Simplicial,
    });
    let fp = match kind {
        Kind::Simplicial => {
            let sc = parse_simplicial(&text).map_err(parse_err(&args.input))?;
            FacePoset::from_simplicial(&sc).map_err(|e| Failure::Input(format!("{}: {e}", args.input.display())))?
        }
        Kind::Faceposet => parse_face_poset(&text).map_err(parse_err(&args.input))?,
    };
    let s = &args.source;
    let (matching, morse) = if let Some(p) = &s.matching {
        (Some(parse_matching(&read(p)?, &fp).map_err(parse_err(p))?), None)
    } else if let Some(p) = &s.morse {
        let f = parse_morse(&read(p)?, &fp).map_err(parse_err(p))?;
        (matching_from_function(&fp, &f).ok(), Some(f))
    } else {
        (Some(greedy_matching(&fp, s.greedy_seed.expect("clap enforces one source"))), None)
    };
    Ok(Input { fp, matching, morse })
}

fn context(input: &Input) -> Result<FlowContext, Failure> {
    let m = input.matching.clone().ok_or_else(|| Failure::Check("not a discrete Morse function".into()))?;
    FlowContext::new(input.fp.clone(), m).map_err(|e| Failure::Check(e.to_string()))
}

fn critical_labels(fp: &FacePoset, m: &PartialMatching) -> Vec<String> {
    m.critical_cells().into_iter().map(|c| fp.label(c).to_string()).collect()
}

fn ids(fp: &FacePoset, cells: &[usize]) -> Vec<String> {
    cells.iter().map(|&c| fp.id(c).to_string()).collect()
}

/// A file-name-safe version of a cell id.
fn slug(id: &str) -> String {
    let s: String = id.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    s.trim_matches('_').to_string()
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn cmd_check(input: &Input) -> Report {
    let fp = &input.fp;
    let reg = validate_regular(fp);
    let mut text = format!("regular: {}\n", reg.ok());
    for d in &reg.diagnostics {
        text += &format!("  {d}\n");
    }
    let mut json = json!({"regular": reg.ok(), "diagnostics": reg.diagnostics});
    let mut passed = reg.ok();
    if let Some(f) = &input.morse {
        let (morse, faithful) = (is_discrete_morse(fp, f), is_faithful(fp, f));
        text += &format!("discrete morse: {morse}; faithful: {faithful}\n");
        json["discrete_morse"] = json!(morse);
        json["faithful"] = json!(faithful);
        passed &= morse;
    }
    if let Some(m) = &input.matching {
        let crit = critical_labels(fp, m);
        match find_cycle(fp, m) {
            None => {
                text += &format!("acyclic: true; critical: {}\n", crit.join(", "));
                json["acyclic"] = json!(true);
            }
            Some(cycle) => {
                let shown: Vec<String> =
                    cycle.iter().map(|&(d, u)| format!("{} < {}", fp.label(d), fp.label(u))).collect();
                text += &format!("acyclic: false; cycle: {}\n", shown.join(", "));
                json["acyclic"] = json!(false);
                json["cycle"] = json!(cycle.iter().map(|&(d, u)| [fp.id(d), fp.id(u)]).collect::<Vec<_>>());
                passed = false;
            }
        }
        json["critical"] = json!(ids(fp, &m.critical_cells()));
    }
    Report { text, json, passed, files: Vec::new() }
}

fn path_dump(ctx: &FlowContext, full: &FlowPoset) -> Value {
    let paths: Vec<Value> = (0..full.len())
        .map(|i| {
            let mut v = full.path(i).to_json(ctx);
            v["reduced"] = json!(full.is_reduced(i));
            v
        })
        .collect();
    Value::Array(paths)
}

fn cmd_flowpaths(ctx: &FlowContext, pipe: &Pipeline) -> Report {
    let (full, reduced) = (pipe.full.paths(), pipe.reduced.paths());
    let fp = ctx.face_poset();
    let mut text = format!("flow paths: {}\nreduced flow paths: {}\n", full.len(), reduced.len());
    let red: std::collections::HashMap<usize, usize> = reduced.tallies().into_iter().collect();
    let mut tallies = Vec::new();
    for (c, n) in full.tallies() {
        let r = red.get(&c).copied().unwrap_or(0);
        text += &format!("  {}: {n} ({r} reduced)\n", fp.label(c));
        tallies.push(json!({"target": fp.id(c), "paths": n, "reduced": r}));
    }
    let json = json!({"paths": full.len(), "reduced": reduced.len(), "tallies": tallies});
    let files = vec![
        ("fp.dot".to_string(), full.poset().to_dot("FP")),
        ("fp_reduced.dot".to_string(), reduced.poset().to_dot("FP_reduced")),
        ("flow_paths.json".to_string(), pretty(&path_dump(ctx, full))),
    ];
    Report { text, json, passed: true, files }
}

fn category_summary(cat: &FlowCategory, max_dim: usize) -> Result<(String, Value, bool), Failure> {
    let name = if cat.is_reduced() { "reduced flow category" } else { "flow category" };
    let laws = cat.check_laws().and_then(|_| cat.check_colax());
    let nerve = DiagonalNerve::build(cat, max_dim).map_err(|e| Failure::from(VerifyError::from(e)))?;
    let counts: Vec<usize> = (0..=nerve.max_dim()).map(|n| nerve.count(n)).collect();
    let mut text = format!("{name}: {} objects\n", cat.object_count());
    let mut homs = Vec::new();
    for x in 0..cat.object_count() {
        for y in 0..cat.object_count() {
            let h = cat.hom(x, y);
            if !h.is_empty() {
                text += &format!("  hom({}, {}): {}\n", cat.object_label(x), cat.object_label(y), h.len());
                homs.push(json!({"source": cat.object_label(x), "target": cat.object_label(y), "size": h.len()}));
            }
        }
    }
    text += &format!("  nerve simplices by degree: {counts:?}\n");
    match &laws {
        Ok(()) => text += "  laws: PASS\n",
        Err(e) => text += &format!("  laws: FAIL ({e})\n"),
    }
    let json = json!({"objects": cat.object_count(), "homs": homs, "nerve_counts": counts, "laws": laws.is_ok()});
    Ok((text, json, laws.is_ok()))
}

fn cmd_category(pipe: &Pipeline, max_dim: usize) -> Result<Report, Failure> {
    let (t1, j1, ok1) = category_summary(&pipe.full, max_dim)?;
    let (t2, j2, ok2) = category_summary(&pipe.reduced, max_dim)?;
    let files = vec![
        ("category.json".to_string(), pretty(&pipe.full.to_json())),
        ("category_reduced.json".to_string(), pretty(&pipe.reduced.to_json())),
    ];
    Ok(Report { text: t1 + &t2, json: json!({"full": j1, "reduced": j2}), passed: ok1 && ok2, files })
}

fn cmd_fibers(ctx: &FlowContext, pipe: &Pipeline) -> Result<Report, Failure> {
    let fp = ctx.face_poset();
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut files = Vec::new();
    let mut passed = true;
    for (tag, cat) in [("", &pipe.full), ("_reduced", &pipe.reduced)] {
        for &c in cat.objects() {
            let genuine = cat.genuine_fiber(c)?;
            let right = cat.right_fiber(c)?;
            let result = cat.verify_fiber_contractible(c)?;
            passed &= result.contractible();
            let verdict = if result.contractible() { "PASS" } else { "FAIL" };
            text += &format!(
                "{verdict} {}{}: genuine {} elements, comma {} elements, {} covers\n",
                fp.label(c),
                if tag.is_empty() { "" } else { " (reduced)" },
                genuine.elements.len(),
                right.elements.len(),
                right.poset.cover_pairs().len()
            );
            if let Some(f) = &result.failure {
                text += &format!("  {f}\n");
            }
            rows.push(json!({
                "cell": fp.id(c),
                "reduced": cat.is_reduced(),
                "genuine": genuine.elements.len(),
                "comma": right.elements.len(),
                "covers": right.poset.cover_pairs().len(),
                "contractible": result.contractible(),
                "failure": result.failure,
            }));
            let id = slug(fp.id(c));
            files.push((format!("fiber{tag}_{id}.dot"), right.poset.to_dot(&format!("fiber{tag}_{id}"))));
        }
    }
    Ok(Report { text, json: Value::Array(rows), passed, files })
}

fn cmd_homology(pipe: &Pipeline, max_dim: usize) -> Result<Report, Failure> {
    let chain = pipe.homology_chain(max_dim)?;
    let mut text = String::new();
    for (name, h) in &chain.spaces {
        text += &format!("{name}: {h}\n");
    }
    text += &format!("agree: {}\n", chain.agree);
    let passed = chain.agree && chain.boundaries_square_to_zero;
    let json = serde_json::to_value(&chain).expect("reports serialize");
    let files = vec![("homology.json".to_string(), pretty(&json))];
    Ok(Report { text, json, passed, files })
}

fn cmd_verify(pipe: &Pipeline, max_dim: usize) -> Result<Report, Failure> {
    let checks = pipe.lemma_suite();
    let mut text = String::new();
    for c in &checks {
        text += &format!("{} {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name);
        if let Some(d) = &c.detail {
            text += &format!("  {d}\n");
        }
    }
    let hom = cmd_homology(pipe, max_dim)?;
    text += &format!("{} homology chain\n", if hom.passed { "PASS" } else { "FAIL" });
    text += &hom.text;
    let passed = hom.passed && checks.iter().all(|c| c.passed);
    let json = json!({"passed": passed, "checks": checks, "homology": hom.json});
    let files = vec![("verify.json".to_string(), pretty(&json))];
    Ok(Report { text, json, passed, files })
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let args = match &cli.command {
        Command::Check(a)
        | Command::Flowpaths(a)
        | Command::Category(a)
        | Command::Fibers(a)
        | Command::Homology(a)
        | Command::Verify(a)
        | Command::Export(a) => a,
    };
    let input = load(args)?;
    if let Command::Check(_) = cli.command {
        return Ok(cmd_check(&input));
    }
    let ctx = context(&input)?;
    let max_dim = args.max_dim.unwrap_or(input.fp.top_dim() + 1);
    let pipe = Pipeline::build(&ctx, args.cap_paths)?;
    match cli.command {
        Command::Check(_) => unreachable!(),
        Command::Flowpaths(_) => Ok(cmd_flowpaths(&ctx, &pipe)),
        Command::Category(_) => cmd_category(&pipe, max_dim),
        Command::Fibers(_) => cmd_fibers(&ctx, &pipe),
        Command::Homology(_) => cmd_homology(&pipe, max_dim),
        Command::Verify(_) => cmd_verify(&pipe, max_dim),
        Command::Export(_) => {
            if args.out.is_none() {
                return Err(Failure::Input("export needs --out".into()));
            }
            let parts = [
                cmd_flowpaths(&ctx, &pipe),
                cmd_category(&pipe, max_dim)?,
                cmd_fibers(&ctx, &pipe)?,
                cmd_verify(&pipe, max_dim)?,
            ];
            let mut files = vec![
                ("face_poset.json".to_string(), write_face_poset(&input.fp)),
                ("matching.txt".to_string(), write_matching(&input.fp, ctx.matching())),
            ];
            let passed = parts.iter().all(|r| r.passed);
            for r in parts {
                files.extend(r.files);
            }
            let names: Vec<&str> = files.iter().map(|(n, _)| n.as_str()).collect();
            let text = format!("wrote {} files\n", names.len());
            let json = json!({"files": names, "passed": passed});
            Ok(Report { text, json, passed, files })
        }
    }
}

fn write_files(dir: &Path, files: &[(String, String)]) -> Result<(), Failure> {
    let fail = |e: std::io::Error| Failure::Input(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(fail)?;
    for (name, body) in files {
        fs::write(dir.join(name), body).map_err(fail)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json, out) = match &cli.command {
        Command::Check(a)
        | Command::Flowpaths(a)
        | Command::Category(a)
        | Command::Fibers(a)
        | Command::Homology(a)
        | Command::Verify(a)
        | Command::Export(a) => (a.json, a.out.clone()),
    };
    let result = run(cli).and_then(|r| {
        if let Some(dir) = &out {
            write_files(dir, &r.files)?;
        }
        Ok(r)
    });
    match result {
        Ok(r) => {
            if json {
                print!("{}", pretty(&r.json));
            } else {
                print!("{}", r.text);
            }
            if r.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            let (Failure::Check(m) | Failure::Input(m) | Failure::Capacity(m)) = &f;
            eprintln!("error: {m}");
            ExitCode::from(f.code())
        }
    }
}
