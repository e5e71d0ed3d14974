use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use moment_angle::arrangements::{
    complex_from_arrangement, coord_complement_betti, diagonal_complement_betti, real_coord_complement_betti,
    CoordinateArrangement,
};
use moment_angle::corpus::{parse_document, Corpus, CorpusDocument};
use moment_angle::faces::{
    dehn_sommerville_report, g_theorem_verdict, g_vector, h_vector, neighbourliness, DehnSommervilleReport,
    GTheoremVerdict,
};
use moment_angle::quasitoric::{
    chi_y_genus, find_generic_vector, signature, todd, top_chern, vertex_genus_data, CharacteristicPair,
    VertexGenusData,
};
use moment_angle::reproduce::{run_checks, CheckOutcome};
use moment_angle::tor::{bigraded_betti, cm_gorenstein_classify, hochster_betti, BigradedBettiTable, CmGorensteinVerdict};
use moment_angle::{Error, SimplicialComplex};

#[derive(Parser)]
#[command(name = "moment-angle", version, about = "Exact invariants of simplicial complexes, moment-angle complexes and quasitoric manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit aligned text (the default).
    #[arg(long, global = true)]
    text: bool,
    /// Worker threads for strand-level parallelism.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// f/h/g-vectors, Euler characteristic, neighbourliness, CM and
    /// Gorenstein* verdicts, Dehn–Sommerville defects.
    Info { path: PathBuf },
    /// Bigraded Betti numbers of the moment-angle complex.
    Betti {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Koszul)]
        method: Method,
    },
    /// χ_y genus, signature, Todd genus and c_n of a characteristic pair.
    Genus {
        path: PathBuf,
        /// Generic vector, e.g. `--nu 1,2`; searched for when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
        nu: Option<Vec<i64>>,
    },
    /// Cohomology ranks of an arrangement complement.
    Arrangement {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Coord)]
        kind: Kind,
    },
    /// Run the reproduction suite.
    Reproduce {
        /// Only checks whose id, title or tag matches.
        #[arg(long)]
        filter: Option<String>,
        /// Directory of corpus documents instead of the bundled corpus.
        #[arg(long, value_name = "DIR")]
        corpus: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Koszul,
    Hochster,
    Both,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    /// Complex coordinate arrangement.
    Coord,
    /// Real coordinate arrangement.
    Real,
    /// Diagonal arrangement.
    Diag,
}

enum Failure {
    /// Bad input: exit code 2.
    Input(String),
    /// A computation disagreed with its cross-check: exit code 1.
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = Output { json: cli.json };
    let result = match cli.command {
        Command::Info { path } => info(&out, &path),
        Command::Betti { path, method } => betti(&out, &path, method),
        Command::Genus { path, nu } => genus(&out, &path, nu),
        Command::Arrangement { path, kind } => arrangement(&out, &path, kind),
        Command::Reproduce { filter, corpus } => reproduce(&out, filter.as_deref(), corpus.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

struct Output {
    json: bool,
}

impl Output {
    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) {
        let body = if self.json {
            serde_json::to_string_pretty(value).expect("serializable") + "\n"
        } else {
            text()
        };
        // a closed pipe (e.g. `| head`) is not an error worth reporting
        let _ = std::io::stdout().lock().write_all(body.as_bytes());
    }
}

struct Loaded {
    name: Option<String>,
    doc: CorpusDocument,
}

fn read(path: &Path) -> Result<(String, Value), Failure> {
    let json = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let raw: Value =
        serde_json::from_str(&json).map_err(|e| Failure::Input(format!("{}: schema error: {e}", path.display())))?;
    Ok((json, raw))
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    let (json, raw) = read(path)?;
    let doc = parse_document(&path.display().to_string(), &json)?;
    let name = raw.get("name").and_then(Value::as_str).map(str::to_string);
    Ok(Loaded { name, doc })
}

fn load_complex(path: &Path) -> Result<(Option<String>, SimplicialComplex), Failure> {
    let loaded = load(path)?;
    let k = match loaded.doc {
        CorpusDocument::Complex(k) => k,
        CorpusDocument::Pair(p) => p.complex().clone(),
    };
    Ok((loaded.name, k))
}

fn tuple<T: ToString>(v: &[T]) -> String {
    format!("({})", v.iter().map(T::to_string).collect::<Vec<_>>().join(", "))
}

fn rows(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0) + 2;
    pairs.iter().map(|(k, v)| format!("{k:<width$}{v}\n")).collect()
}

#[derive(Serialize)]
struct InfoReport {
    name: Option<String>,
    m: usize,
    dim: isize,
    ghost_vertices: Vec<usize>,
    f_vector: Vec<u64>,
    h_vector: Vec<i64>,
    g_vector: Vec<i64>,
    euler_characteristic: i64,
    neighbourliness: usize,
    classification: CmGorensteinVerdict,
    dehn_sommerville: DehnSommervilleReport,
    g_theorem: GTheoremVerdict,
}

fn info(out: &Output, path: &Path) -> CliResult {
    let (name, k) = load_complex(path)?;
    let h = h_vector(&k);
    let report = InfoReport {
        name,
        m: k.m(),
        dim: k.dim(),
        ghost_vertices: k.ghost_vertices(),
        f_vector: k.f_vector(),
        g_vector: g_vector(&h),
        g_theorem: g_theorem_verdict(&h),
        h_vector: h,
        euler_characteristic: k.euler_characteristic(),
        neighbourliness: neighbourliness(&k),
        classification: cm_gorenstein_classify(&k),
        dehn_sommerville: dehn_sommerville_report(&k),
    };
    out.emit(&report, || {
        let r = &report;
        let yes = |b: bool| if b { "yes" } else { "no" }.to_string();
        let failure = |f: &Option<Vec<usize>>| f.as_ref().map(|f| format!(" (link of {f:?})")).unwrap_or_default();
        rows(&[
            ("name", r.name.clone().unwrap_or_else(|| "-".into())),
            ("vertices (m)", r.m.to_string()),
            ("dimension", r.dim.to_string()),
            ("ghost vertices", tuple(&r.ghost_vertices)),
            ("f-vector", tuple(&r.f_vector)),
            ("h-vector", tuple(&r.h_vector)),
            ("g-vector", tuple(&r.g_vector)),
            ("euler characteristic", r.euler_characteristic.to_string()),
            ("neighbourliness", r.neighbourliness.to_string()),
            (
                "cohen-macaulay",
                yes(r.classification.cohen_macaulay) + &failure(&r.classification.cm_failure),
            ),
            (
                "gorenstein*",
                yes(r.classification.gorenstein_star) + &failure(&r.classification.gorenstein_failure),
            ),
            ("DS defect", tuple(&r.dehn_sommerville.defect)),
            ("DS predicted", tuple(&r.dehn_sommerville.predicted)),
            ("g-theorem", yes(r.g_theorem.passes)),
        ])
    });
    Ok(())
}

#[derive(Serialize)]
struct BettiReport<'a> {
    method: Method,
    m: usize,
    n: usize,
    table: &'a BigradedBettiTable,
    total_betti: Vec<u64>,
}

fn betti(out: &Output, path: &Path, method: Method) -> CliResult {
    let (_, k) = load_complex(path)?;
    let table = match method {
        Method::Koszul => bigraded_betti(&k),
        Method::Hochster => hochster_betti(&k),
        Method::Both => {
            let (a, b) = rayon::join(|| bigraded_betti(&k), || hochster_betti(&k));
            if a != b {
                return Err(Failure::Mismatch(format!(
                    "Koszul and Hochster tables differ\nkoszul:\n{}hochster:\n{}",
                    a.render_grid(),
                    b.render_grid()
                )));
            }
            a
        }
    };
    let report = BettiReport { method, m: table.m, n: table.n, total_betti: table.total_betti(), table: &table };
    out.emit(&report, || format!("{}total: {}\n", table.render_grid(), tuple(&report.total_betti)));
    Ok(())
}

#[derive(Serialize)]
struct GenusReport {
    nu: Vec<i64>,
    chi_y: Vec<i64>,
    signature: i64,
    todd: i64,
    top_chern: i64,
    vertices: Vec<VertexGenusData>,
}

fn load_pair(path: &Path) -> Result<CharacteristicPair, Failure> {
    match load(path)?.doc {
        CorpusDocument::Pair(p) => Ok(p),
        CorpusDocument::Complex(_) => {
            Err(Failure::Input(format!("{}: expected a characteristic pair (no \"lambda\")", path.display())))
        }
    }
}

fn genus(out: &Output, path: &Path, nu: Option<Vec<i64>>) -> CliResult {
    let pair = load_pair(path)?;
    let nu = match nu {
        Some(nu) => nu,
        None => find_generic_vector(&pair)?,
    };
    let chi_y = chi_y_genus(&pair, &nu)?;
    let report = GenusReport {
        chi_y: chi_y.to_i64_vec().expect("genus fits in i64"),
        signature: signature(&pair, &nu)?,
        todd: todd(&pair, &nu)?,
        top_chern: top_chern(&pair)?,
        vertices: vertex_genus_data(&pair, Some(&nu))?,
        nu,
    };
    out.emit(&report, || {
        let mut s = rows(&[
            ("nu", tuple(&report.nu)),
            ("chi_y", chi_y.render("y", 1)),
            ("signature", report.signature.to_string()),
            ("todd", report.todd.to_string()),
            ("c_n", report.top_chern.to_string()),
        ]);
        s.push_str("\nvertex          sigma  index  edge vectors\n");
        for v in &report.vertices {
            let edges: Vec<String> = v.edge_vectors().iter().map(|e| tuple(e)).collect();
            s.push_str(&format!(
                "{:<16}{:>5}  {:>5}  {}\n",
                tuple(&v.facet),
                v.sigma,
                v.index.map(|i| i.to_string()).unwrap_or_default(),
                edges.join(" ")
            ));
        }
        s
    });
    Ok(())
}

#[derive(Serialize)]
struct ArrangementReport {
    kind: Kind,
    m: usize,
    betti: Vec<u64>,
}

fn arrangement(out: &Output, path: &Path, kind: Kind) -> CliResult {
    let loaded = load_arrangement_or_complex(path)?;
    let mut betti = match kind {
        Kind::Coord => coord_complement_betti(&loaded),
        Kind::Real => real_coord_complement_betti(&loaded),
        Kind::Diag => diagonal_complement_betti(&loaded)?,
    };
    while betti.len() > 1 && betti.last() == Some(&0) {
        betti.pop();
    }
    let report = ArrangementReport { kind, m: loaded.m(), betti };
    out.emit(&report, || format!("{}\n", tuple(&report.betti)));
    Ok(())
}

fn load_arrangement_or_complex(path: &Path) -> Result<SimplicialComplex, Failure> {
    let (json, raw) = read(path)?;
    if raw.get("generators").is_some() {
        let a = CoordinateArrangement::from_json(&json)
            .map_err(|e| Failure::Input(format!("{}: schema error: {e}", path.display())))?;
        return Ok(complex_from_arrangement(&a));
    }
    Ok(load_complex(path)?.1)
}

fn reproduce(out: &Output, filter: Option<&str>, dir: Option<&Path>) -> CliResult {
    let corpus = match dir {
        Some(d) => Corpus::from_dir(d)?,
        None => Corpus::bundled()?,
    };
    let outcomes: Vec<CheckOutcome> = run_checks(&corpus, filter);
    if outcomes.is_empty() {
        return Err(Failure::Input(format!("no check matches {:?}", filter.unwrap_or_default())));
    }
    out.emit(&outcomes, || {
        let mut s = String::new();
        for o in &outcomes {
            let status = if o.passed { "PASS" } else { "FAIL" };
            s.push_str(&format!(
                "{status} [{:>2}] {} ({} comparisons, {:.2}s)\n",
                o.id,
                o.title,
                o.comparisons,
                o.elapsed.as_secs_f64()
            ));
            for f in &o.failures {
                s.push_str(&format!("       {f}\n"));
            }
        }
        let passed = outcomes.iter().filter(|o| o.passed).count();
        let total: f64 = outcomes.iter().map(|o| o.elapsed.as_secs_f64()).sum();
        s.push_str(&format!("{passed}/{} checks passed in {total:.2}s\n", outcomes.len()));
        s
    });
    let failed: Vec<String> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id.to_string()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("failing checks: {}", failed.join(", "))))
    }
}
