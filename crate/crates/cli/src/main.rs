use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use troplanar::classify::{Classifier, Realization, Verdict, MAX_GENUS};
use troplanar::corpus;
use troplanar::graph::{enumerate_trivalent_graphs, enumerate_trivalent_planar, Graph};
use troplanar::io::{
    graph_to_dot, parse_graph, parse_polygon, parse_triangulation_parts, skeleton_to_json, write_graph, write_heights,
    write_polygon, write_triangulation, FormatError,
};
use troplanar::lattice::LatticePolygon;
use troplanar::obstruction::{Catalog, Obstruction, Witness};
use troplanar::oracle::{census, find_witness, CensusOptions};
use troplanar::regularity::is_regular;
use troplanar::skeleton::skeletonize;
use troplanar::triangulation::{enumerate_triangulations, Triangulation, DEFAULT_POINT_LIMIT};
use troplanar::verify;

#[derive(Parser)]
#[command(name = "troplanar", version, about = "Smooth tropical plane curves and troplanar graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lattice point counts, genus and normal form of a polygon.
    PolygonInfo {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check that a triangulation is unimodular and decide regularity.
    ValidateTri {
        file: PathBuf,
        /// Print lifting heights of a regular triangulation.
        #[arg(long)]
        dump_heights: bool,
        #[arg(long)]
        json: bool,
    },
    /// The trivalent skeleton of a triangulation.
    Skeletonize {
        file: PathBuf,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a graph is troplanar.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Directory to write the witness polygon and triangulation to.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Connected trivalent graphs of a genus, by certificate.
    EnumerateGraphs {
        #[arg(long)]
        genus: usize,
        /// Include non-planar graphs.
        #[arg(long)]
        nonplanar: bool,
        #[arg(long)]
        json: bool,
    },
    /// Unimodular triangulations of a polygon.
    EnumerateTri {
        file: PathBuf,
        #[command(flatten)]
        filter: RegularityArgs,
        #[arg(long)]
        dump_heights: bool,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Skeleton of every triangulation over a corpus.
    Census {
        #[arg(long)]
        genus: usize,
        #[command(flatten)]
        filter: RegularityArgs,
        #[command(flatten)]
        corpus: CorpusArgs,
        /// Write records to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search the corpus for a triangulation with the given skeleton.
    FindWitness {
        file: PathBuf,
        #[command(flatten)]
        filter: RegularityArgs,
        #[command(flatten)]
        corpus: CorpusArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance criteria.
    VerifyPaper {
        #[arg(long)]
        json: bool,
    },
    /// SVG drawing of a triangulation.
    Render {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RegularityArgs {
    /// Keep only regular triangulations (the default).
    #[arg(long, conflicts_with = "all")]
    regular_only: bool,
    /// Keep every unimodular triangulation.
    #[arg(long)]
    all: bool,
}

impl RegularityArgs {
    fn options(&self) -> CensusOptions {
        CensusOptions { regular_only: !self.all, point_limit: DEFAULT_POINT_LIMIT }
    }
}

#[derive(Args)]
struct CorpusArgs {
    /// Corpus directory with `genusG.poly` files; defaults to
    /// `$TROPLANAR_CORPUS`, then the bundled corpus.
    #[arg(long)]
    polygons: Option<PathBuf>,
}

impl CorpusArgs {
    fn dir(&self) -> Option<PathBuf> {
        self.polygons.clone().or_else(|| std::env::var_os("TROPLANAR_CORPUS").map(PathBuf::from))
    }

    fn load(&self, genus: usize) -> Result<Vec<LatticePolygon>, Failure> {
        match self.dir() {
            Some(d) => corpus::load_dir(&d, genus).map_err(|e| Failure::Input(e.to_string())),
            None => Ok(corpus::bundled(genus)),
        }
    }

    fn load_all(&self) -> Result<Vec<LatticePolygon>, Failure> {
        let mut v = Vec::new();
        for g in 1..=MAX_GENUS {
            v.extend(self.load(g)?);
        }
        Ok(v)
    }
}

enum Failure {
    /// Unreadable or malformed input; exit 2.
    Input(String),
    /// A negative verdict; exit 1.
    Verdict(String),
}

impl Failure {
    fn format(path: &Path, e: FormatError) -> Self {
        Failure::Input(format!("{}:{e}", path.display()))
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_polygon(path: &Path) -> Result<LatticePolygon, Failure> {
    parse_polygon(&read(path)?).map_err(|e| Failure::format(path, e))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    parse_graph(&read(path)?).map_err(|e| Failure::format(path, e))
}

/// A named polygon file on the `p` line resolves against the triangulation's
/// directory.
fn load_triangulation(path: &Path) -> Result<Triangulation, Failure> {
    let text = read(path)?;
    let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
    let resolve = |name: &str| std::fs::read_to_string(base.join(name)).map_err(|e| format!("{name}: {e}"));
    let (p, tris) = parse_triangulation_parts(&text, &resolve).map_err(|e| Failure::format(path, e))?;
    Triangulation::validate(p, &tris).map_err(|e| Failure::Verdict(format!("{}: invalid triangulation: {e}", path.display())))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn polygon_json(p: &LatticePolygon) -> Value {
    json!({
        "vertices": p.vertices().iter().map(|v| json!([v.x, v.y])).collect::<Vec<_>>(),
        "lattice_points": p.lattice_points().len(),
        "interior_points": p.interior_lattice_points().len(),
        "boundary_points": p.boundary_lattice_points().len(),
        "genus": p.genus(),
        "doubled_area": p.doubled_area(),
        "hyperelliptic": p.is_hyperelliptic(),
        "normal_form": p.normal_form().serialize(),
    })
}

fn polygon_info(file: &Path, as_json: bool) -> Outcome {
    let p = load_polygon(file)?;
    let v = polygon_json(&p);
    if as_json {
        print_json(&v);
    } else {
        for key in ["lattice_points", "interior_points", "boundary_points", "genus", "doubled_area", "hyperelliptic", "normal_form"] {
            println!("{key}: {}", v[key].as_str().map_or_else(|| v[key].to_string(), str::to_owned));
        }
    }
    Ok(())
}

fn validate_tri(file: &Path, dump_heights: bool, as_json: bool) -> Outcome {
    let t = load_triangulation(file)?;
    let h = is_regular(&t);
    if as_json {
        let heights = h.as_ref().map(|h| write_heights(&t, h));
        print_json(&json!({
            "valid": true,
            "triangles": t.len(),
            "genus": t.polygon().genus(),
            "regular": h.is_some(),
            "heights": if dump_heights { json!(heights) } else { Value::Null },
        }));
    } else {
        println!("valid: {} unimodular triangles, genus {}", t.len(), t.polygon().genus());
        println!("regular: {}", h.is_some());
        if let (true, Some(h)) = (dump_heights, &h) {
            print!("{}", write_heights(&t, h));
        }
    }
    Ok(())
}

fn skeletonize_cmd(file: &Path, dot: bool, as_json: bool) -> Outcome {
    let t = load_triangulation(file)?;
    let ps = skeletonize(&t).map_err(|e| Failure::Verdict(format!("{}: {e}", file.display())))?;
    if dot {
        print!("{}", graph_to_dot(&ps.graph));
    } else if as_json {
        print_json(&skeleton_to_json(&ps));
    } else {
        print!("{}", write_graph(&ps.graph));
    }
    Ok(())
}

fn describe(w: &Witness) -> String {
    let list = |xs: &[usize]| xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    match w {
        Witness::Vertex(v) => format!("vertex {v}"),
        Witness::Triangle(vs) => format!("triangle on vertices {}", list(vs)),
        Witness::Catalog(name) => format!("catalog entry {name}"),
        Witness::Heavy { matched, violation } => {
            let mut s = format!("{:?} match, violation {violation:?}", matched.kind);
            for c in &matched.cycles {
                let _ = write!(s, "; cycle vertices [{}] edges [{}]", list(&c.vertices), list(&c.edges));
            }
            let _ = write!(s, "; heavy component vertices [{}]", list(&matched.heavy_vertices));
            s
        }
        Witness::CutEdge { edge, piece } => format!("cut edge {edge}; piece: {} ({})", piece.kind.name(), describe(&piece.witness)),
    }
}

fn obstruction_json(o: &Obstruction) -> Value {
    json!({
        "kind": o.kind.name(),
        "substructure": describe(&o.witness),
        "witness": serde_json::to_value(&o.witness).expect("witness serializes"),
    })
}

/// Writes `witness.poly` and `witness.tri` into `dir` and returns their
/// paths.
fn save_realization(dir: &Path, r: &Realization) -> Result<[PathBuf; 2], Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    let (pp, tp) = (dir.join("witness.poly"), dir.join("witness.tri"));
    write_file(&pp, &write_polygon(&r.polygon))?;
    write_file(&tp, &write_triangulation(&r.triangulation))?;
    Ok([pp, tp])
}

fn classify_cmd(file: &Path, as_json: bool, corpus: &CorpusArgs, out: Option<&Path>) -> Outcome {
    let g = load_graph(file)?;
    let catalog = Catalog::bundled();
    let classifier = if corpus.dir().is_some() {
        Classifier::new(catalog, corpus.load_all()?, CensusOptions::default())
    } else {
        Classifier::bundled()
    };
    let c = classifier.classify_detailed(&g).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let paths = match (&c.verdict, out) {
        (Verdict::Troplanar(Some(r)), Some(dir)) => Some(save_realization(dir, r)?),
        _ => None,
    };
    if as_json {
        let mut v = json!({
            "certificate": g.certificate(),
            "genus": g.genus(),
            "refuted": c.refuted.as_ref().map(obstruction_json),
        });
        match &c.verdict {
            Verdict::Troplanar(r) => {
                v["verdict"] = json!("Troplanar");
                v["witness"] = match (r, &paths) {
                    (Some(_), Some([pp, tp])) => json!({ "polygon": pp, "triangulation": tp }),
                    (Some(r), None) => {
                        json!({ "polygon": write_polygon(&r.polygon), "triangulation": write_triangulation(&r.triangulation) })
                    }
                    (None, _) => Value::Null,
                };
            }
            Verdict::NotTroplanar(o) => {
                v["verdict"] = json!("NotTroplanar");
                v["obstruction"] = obstruction_json(o);
            }
            Verdict::Unknown(reason) => {
                v["verdict"] = json!("Unknown");
                v["reason"] = json!(reason);
            }
        }
        print_json(&v);
        return Ok(());
    }
    match &c.verdict {
        Verdict::Troplanar(r) => {
            println!("Troplanar");
            match (r, &paths) {
                (Some(_), Some([pp, tp])) => println!("witness: {} {}", pp.display(), tp.display()),
                (Some(r), None) => print!("witness:\n{}", write_triangulation(&r.triangulation)),
                (None, _) => println!("witness: none in corpus"),
            }
        }
        Verdict::NotTroplanar(o) => {
            println!("NotTroplanar {}", o.kind.name());
            println!("substructure: {}", describe(&o.witness));
        }
        Verdict::Unknown(reason) => println!("Unknown {reason}"),
    }
    if let Some(o) = &c.refuted {
        println!("refuted: {} ({})", o.kind.name(), describe(&o.witness));
    }
    Ok(())
}

fn enumerate_graphs(genus: usize, nonplanar: bool, as_json: bool) -> Outcome {
    let mut certs: Vec<String> = if genus == 1 {
        vec![Graph::Circle.certificate()]
    } else {
        let gs = if nonplanar { enumerate_trivalent_graphs(genus) } else { enumerate_trivalent_planar(genus) };
        gs.map_err(|e| Failure::Input(e.to_string()))?.into_iter().map(|g| g.certificate()).collect()
    };
    certs.sort();
    if as_json {
        print_json(&json!({ "genus": genus, "count": certs.len(), "graphs": certs }));
    } else {
        for c in &certs {
            println!("{c}");
        }
        eprintln!("{} graphs", certs.len());
    }
    Ok(())
}

fn enumerate_tri(file: &Path, filter: &RegularityArgs, dump_heights: bool, limit: Option<usize>) -> Outcome {
    let p = load_polygon(file)?;
    let stream = enumerate_triangulations(&p, limit.unwrap_or(DEFAULT_POINT_LIMIT))
        .map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let opts = filter.options();
    let ts: Vec<Triangulation> = stream.collect();
    let mut lines: Vec<String> = ts
        .par_iter()
        .filter_map(|t| {
            let h = if opts.regular_only || dump_heights { is_regular(t) } else { None };
            if opts.regular_only && h.is_none() {
                return None;
            }
            let mut line = t.canonical_serialization();
            if let (true, Some(h)) = (dump_heights, &h) {
                let hs: Vec<String> = write_heights(t, h).lines().map(|l| l.trim_start_matches("h ").to_owned()).collect();
                let _ = write!(line, "\t{}", hs.join(";"));
            }
            Some(line)
        })
        .collect();
    lines.sort();
    for l in &lines {
        println!("{l}");
    }
    eprintln!("{} triangulations", lines.len());
    Ok(())
}

fn census_cmd(genus: usize, filter: &RegularityArgs, corpus: &CorpusArgs, out: Option<&Path>) -> Outcome {
    let c = census(&corpus.load(genus)?, filter.options());
    let mut text = String::new();
    for r in &c.records {
        let _ = writeln!(text, "{}", r.to_line());
    }
    match out {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    for (nf, e) in &c.skipped {
        eprintln!("skipped {nf}: {e}");
    }
    eprintln!("{} records, {} skeletons", c.records.len(), c.certificates().len());
    Ok(())
}

fn find_witness_cmd(file: &Path, filter: &RegularityArgs, corpus: &CorpusArgs, out: Option<&Path>) -> Outcome {
    let g = load_graph(file)?;
    let polys = corpus.load(g.genus())?;
    let Some((polygon, triangulation)) = find_witness(&g, &polys, filter.options()) else {
        return Err(Failure::Verdict(format!("no witness for {} in the corpus", g.certificate())));
    };
    let r = Realization { polygon, triangulation };
    match out {
        Some(dir) => {
            let [pp, tp] = save_realization(dir, &r)?;
            println!("{} {}", pp.display(), tp.display());
        }
        None => print!("{}", write_triangulation(&r.triangulation)),
    }
    Ok(())
}

fn verify_paper(as_json: bool) -> Outcome {
    let reports = verify::run_all();
    let passed = reports.iter().filter(|r| r.pass).count();
    if as_json {
        let rs: Vec<Value> = reports
            .iter()
            .map(|r| json!({ "id": r.id, "title": r.title, "pass": r.pass, "detail": r.detail, "seconds": r.elapsed.as_secs_f64() }))
            .collect();
        print_json(&json!({ "criteria": rs, "passed": passed }));
    } else {
        for r in &reports {
            println!("{}", r.line());
        }
        println!("{passed} of {} criteria pass", reports.len());
    }
    if passed == reports.len() {
        Ok(())
    } else {
        Err(Failure::Verdict(format!("{} criteria failed", reports.len() - passed)))
    }
}

const SCALE: i64 = 40;

/// Triangles in outline, interior points filled, y pointing up.
fn render_svg(t: &Triangulation) -> String {
    let pts = t.points();
    let (x0, x1) = (pts.iter().map(|p| p.x).min().unwrap(), pts.iter().map(|p| p.x).max().unwrap());
    let (y0, y1) = (pts.iter().map(|p| p.y).min().unwrap(), pts.iter().map(|p| p.y).max().unwrap());
    let pos = |x: i64, y: i64| ((x - x0 + 1) * SCALE, (y1 - y + 1) * SCALE);
    let (w, h) = ((x1 - x0 + 2) * SCALE, (y1 - y0 + 2) * SCALE);
    let mut s = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n");
    for tr in t.triangles() {
        let corners: Vec<String> = tr.vertices().iter().map(|v| pos(v.x, v.y)).map(|(a, b)| format!("{a},{b}")).collect();
        let _ = writeln!(s, "  <polygon points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>", corners.join(" "));
    }
    for p in pts {
        let (cx, cy) = pos(p.x, p.y);
        let fill = if t.polygon().is_interior_point(*p) { "black" } else { "white" };
        let _ = writeln!(s, "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"4\" fill=\"{fill}\" stroke=\"black\"/>");
    }
    s.push_str("</svg>\n");
    s
}

fn render(file: &Path, out: Option<&Path>) -> Outcome {
    let svg = render_svg(&load_triangulation(file)?);
    match out {
        Some(path) => write_file(path, &svg),
        None => {
            print!("{svg}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::PolygonInfo { file, json } => polygon_info(&file, json),
        Command::ValidateTri { file, dump_heights, json } => validate_tri(&file, dump_heights, json),
        Command::Skeletonize { file, dot, json } => skeletonize_cmd(&file, dot, json),
        Command::Classify { file, json, corpus, out } => classify_cmd(&file, json, &corpus, out.as_deref()),
        Command::EnumerateGraphs { genus, nonplanar, json } => enumerate_graphs(genus, nonplanar, json),
        Command::EnumerateTri { file, filter, dump_heights, limit } => enumerate_tri(&file, &filter, dump_heights, limit),
        Command::Census { genus, filter, corpus, out } => census_cmd(genus, &filter, &corpus, out.as_deref()),
        Command::FindWitness { file, filter, corpus, out } => find_witness_cmd(&file, &filter, &corpus, out.as_deref()),
        Command::VerifyPaper { json } => verify_paper(json),
        Command::Render { file, out } => render(&file, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
