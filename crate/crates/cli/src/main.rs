use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use acmint_core::formulas::hilbert_from_resolution;
use acmint_core::harness::{construction_cutoff, default_cutoff, ScenarioCase, SCENARIO_SEED};
use acmint_core::hilbert::h_vector_from_profile;
use acmint_core::{
    bound_uniform, build_uniform_pair, expected_betti, gorenstein_generators, hilbert_function, intersect_count,
    run_scenario, skew_matrix, union_matrix, verify_construction, AlgebraError, HarnessError, HilbertProfile,
    IdealDocument, IdealPresentation, MatrixDocument, Ring, ScenarioId, DEFAULT_PRIME,
};
use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

#[derive(Parser, Debug)]
#[command(name = "acmint", version, about = "Intersections of determinantal curves in P^3 over F_p")]
struct Cli {
    /// Prime modulus for generated objects.
    #[arg(long, global = true, env = "ACMINT_PRIME", default_value_t = DEFAULT_PRIME)]
    prime: u32,

    /// Indent the JSON and print a one-line summary on stderr.
    #[arg(long, global = true)]
    pretty: bool,

    /// Include wall-clock timings in reports (output is then not reproducible).
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Shape {
    #[arg(long)]
    t: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, default_value_t = 1)]
    d: u32,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form intersection length, h-vector and resolution shape.
    Bound(Shape),
    /// Build a matrix pair with its union matrix, skew matrix and generators.
    Construct {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write each object to its own file in this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Hilbert function of an ideal, a matrix's minors, or a construction.
    Hilbert {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        cutoff: Option<u32>,
        /// Codimension used to difference the Hilbert function into an h-vector.
        #[arg(long)]
        codim: Option<usize>,
    },
    /// Length of the intersection of two determinantal schemes.
    Intersect {
        #[arg(long, requires = "b", conflicts_with = "input")]
        a: Option<PathBuf>,
        #[arg(long, requires = "a")]
        b: Option<PathBuf>,
        /// A `construct` document; its two matrices are intersected.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        cutoff: Option<u32>,
    },
    /// Certify a constructed pair against the closed forms.
    Verify {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run one of the built-in examples: ex-11, ex-26, ex-2d3(d), ex-mixed.
    Scenario {
        #[arg(long)]
        id: String,
        /// Degree for ex-2d3 when the id carries none.
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, conflicts_with = "fresh_seed")]
        seed: Option<u64>,
        /// Draw a random seed instead of the pinned one.
        #[arg(long)]
        fresh_seed: bool,
    },
}

/// Outcome of a successful command: the document and whether it records a pass.
struct Output {
    doc: Value,
    pass: bool,
    summary: String,
}

impl Output {
    fn ok(doc: Value, summary: String) -> Output {
        Output { doc, pass: true, summary }
    }
}

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_NOT_STABLE: u8 = 3;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            emit(&cli, &out.doc);
            if cli.pretty {
                eprintln!("{}", out.summary);
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(err) => {
            if let Some(HarnessError::NotStabilized(profile)) = err.downcast_ref::<HarnessError>() {
                emit(&cli, &json!({ "stabilized": false, "profile": profile }));
                eprintln!("error: {err}");
                return ExitCode::from(EXIT_NOT_STABLE);
            }
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn emit(cli: &Cli, doc: &Value) {
    let text = if cli.pretty {
        serde_json::to_string_pretty(doc)
    } else {
        serde_json::to_string(doc)
    };
    let mut stdout = std::io::stdout().lock();
    // a closed pipe downstream is not an error for us
    let _ = writeln!(stdout, "{}", text.expect("documents are plain JSON"));
}

fn dispatch(cli: &Cli) -> anyhow::Result<Output> {
    match &cli.command {
        Command::Bound(shape) => bound(shape),
        Command::Construct { shape, seed, out_dir } => construct(cli.prime, shape, *seed, out_dir.as_deref()),
        Command::Hilbert { input, cutoff, codim } => hilbert(input, *cutoff, *codim),
        Command::Intersect { a, b, input, cutoff } => intersect(a.as_deref(), b.as_deref(), input.as_deref(), *cutoff),
        Command::Verify { shape, seed } => verify(cli, shape, *seed),
        Command::Scenario {
            id,
            d,
            seed,
            fresh_seed,
        } => scenario(cli.prime, id, *d, *seed, *fresh_seed),
    }
}

fn bound(s: &Shape) -> anyhow::Result<Output> {
    let (t, r, d) = (s.t as i64, s.r as i64, s.d as i64);
    let b = bound_uniform(d, t, r)?;
    // the resolution shape needs a nonzero embedded block
    let (h_vector, betti) = if r >= 1 {
        let shape = expected_betti(t, r, d)?;
        let (h, _) = hilbert_from_resolution(&shape, 3)?;
        (json!(h), json!(shape))
    } else {
        (Value::Null, Value::Null)
    };
    let doc = json!({
        "t": s.t,
        "r": s.r,
        "d": s.d,
        "bound": b as u64,
        "hVector": h_vector,
        "expectedBetti": betti,
    });
    Ok(Output::ok(doc, format!("B({};{},{}) = {b}", s.d, s.t, s.r)))
}

fn construct(p: u32, s: &Shape, seed: u64, out_dir: Option<&Path>) -> anyhow::Result<Output> {
    let ring = Ring::projective3(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pair = build_uniform_pair(ring, s.t, s.r, s.d, &mut rng)?;
    let mut parts = Map::new();
    parts.insert("small".into(), json!(pair.small.to_document()));
    parts.insert("big".into(), json!(pair.big.to_document()));
    parts.insert("union".into(), json!(union_matrix(&pair)?.to_document()));
    parts.insert("skew".into(), json!(skew_matrix(&pair)?.as_matrix().to_document()));
    parts.insert("generators".into(), json!(gorenstein_generators(&pair)?.to_document()));
    parts.insert("intersection".into(), json!(pair.intersection_ideal()?.to_document()));

    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (name, value) in &parts {
            let path = dir.join(format!("{name}.json"));
            fs::write(&path, serde_json::to_string(value)? + "\n")
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }

    let mut doc = Map::new();
    doc.insert("t".into(), json!(s.t));
    doc.insert("r".into(), json!(s.r));
    doc.insert("d".into(), json!(s.d));
    doc.insert("p".into(), json!(p));
    doc.insert("seed".into(), json!(seed));
    doc.extend(parts);
    Ok(Output::ok(
        Value::Object(doc),
        format!("built pair t={} r={} d={} over F_{p}", s.t, s.r, s.d),
    ))
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn matrix_from(value: &Value, what: &str) -> anyhow::Result<acmint_core::FormMatrix> {
    let doc: MatrixDocument =
        serde_json::from_value(value.clone()).with_context(|| format!("{what} is not a matrix document"))?;
    Ok(doc.to_matrix()?)
}

/// An input document read as an ideal, with the cutoff and codimension it suggests.
struct IdealInput {
    ideal: IdealPresentation,
    cutoff: u32,
    codim: Option<usize>,
}

fn ideal_input(value: &Value) -> anyhow::Result<IdealInput> {
    let obj = value.as_object().ok_or_else(|| anyhow!("expected a JSON object"))?;
    if let Some(inter) = obj.get("intersection") {
        let doc: IdealDocument = serde_json::from_value(inter.clone()).context("intersection is not an ideal document")?;
        let field = |k: &str| {
            obj.get(k)
                .and_then(Value::as_u64)
                .ok_or_else(|| anyhow!("construction document lacks {k:?}"))
        };
        let (t, r, d) = (field("t")? as usize, field("r")? as usize, field("d")? as u32);
        return Ok(IdealInput {
            ideal: doc.to_ideal()?,
            cutoff: construction_cutoff(t, r, d),
            codim: Some(3),
        });
    }
    if obj.contains_key("entries") {
        let m = matrix_from(value, "input")?;
        let ideal = IdealPresentation::new(m.ring(), m.maximal_minors()?)?;
        let cutoff = default_cutoff(&ideal);
        return Ok(IdealInput { ideal, cutoff, codim: Some(2) });
    }
    if obj.contains_key("generators") {
        let doc: IdealDocument = serde_json::from_value(value.clone()).context("malformed ideal document")?;
        let ideal = doc.to_ideal()?;
        let cutoff = default_cutoff(&ideal);
        return Ok(IdealInput { ideal, cutoff, codim: None });
    }
    bail!("input is neither an ideal, a matrix nor a construction document")
}

fn profile_doc(profile: &HilbertProfile, codim: Option<usize>) -> Value {
    let mut profile = profile.clone();
    if let Some(c) = codim {
        profile.h_vector = h_vector_from_profile(&profile, c).ok();
    }
    json!(profile)
}

fn hilbert(input: &Path, cutoff: Option<u32>, codim: Option<usize>) -> anyhow::Result<Output> {
    let src = ideal_input(&read_json(input)?)?;
    let cutoff = cutoff.unwrap_or(src.cutoff);
    let profile = hilbert_function(&src.ideal, cutoff);
    let summary = match profile.stabilized_value {
        Some(v) => format!("Hilbert function stable at {v} by degree {cutoff}"),
        None => format!("Hilbert function not stable by degree {cutoff}"),
    };
    Ok(Output::ok(profile_doc(&profile, codim.or(src.codim)), summary))
}

fn intersect(a: Option<&Path>, b: Option<&Path>, input: Option<&Path>, cutoff: Option<u32>) -> anyhow::Result<Output> {
    let (ma, mb, cut) = match (a, b, input) {
        (Some(a), Some(b), None) => (matrix_from(&read_json(a)?, "--a")?, matrix_from(&read_json(b)?, "--b")?, cutoff),
        (None, None, Some(path)) => {
            let v = read_json(path)?;
            let get = |k: &str| v.get(k).ok_or_else(|| anyhow!("construction document lacks {k:?}"));
            let ma = matrix_from(get("small")?, "small")?;
            let mb = matrix_from(get("big")?, "big")?;
            let t = mb.rows();
            let r = t - ma.rows();
            let d = v.get("d").and_then(Value::as_u64).unwrap_or(1) as u32;
            (ma, mb, cutoff.or(Some(construction_cutoff(t, r, d))))
        }
        _ => bail!("give either --a and --b, or --input"),
    };
    if ma.ring() != mb.ring() {
        return Err(AlgebraError::RingMismatch.into());
    }
    let (len, profile) = intersect_count(&ma, &mb, cut)?;
    let doc = json!({
        "length": len,
        "stabilized": true,
        "profile": profile_doc(&profile, Some(3)),
    });
    Ok(Output::ok(doc, format!("intersection scheme has length {len}")))
}

fn verify(cli: &Cli, s: &Shape, seed: u64) -> anyhow::Result<Output> {
    let mut rep = verify_construction(s.t, s.r, s.d, cli.prime, seed)?;
    if !cli.timings {
        rep.timings = None;
    }
    let summary = format!(
        "t={} r={} d={}: length {:?} (expected {}), {}",
        s.t,
        s.r,
        s.d,
        rep.observed_degree,
        rep.expected_degree,
        if rep.pass { "pass" } else { "FAIL" }
    );
    Ok(Output {
        pass: rep.pass,
        doc: json!(rep),
        summary,
    })
}

fn scenario(p: u32, id: &str, d: Option<u32>, seed: Option<u64>, fresh: bool) -> anyhow::Result<Output> {
    let mut parsed: ScenarioId = id.parse()?;
    if let (ScenarioId::TwoDCubed(_), Some(d)) = (parsed, d) {
        if id.contains('(') {
            bail!("degree given twice: {id:?} and --d {d}");
        }
        if d == 0 {
            bail!("--d must be positive");
        }
        parsed = ScenarioId::TwoDCubed(d);
    } else if d.is_some() {
        bail!("--d only applies to ex-2d3");
    }
    let seed = if fresh { rand::random() } else { seed.unwrap_or(SCENARIO_SEED) };
    let rep = run_scenario(parsed, p, seed)?;
    let mut doc = Map::new();
    for ScenarioCase { name, observed, .. } in &rep.cases {
        doc.insert(name.clone(), json!(observed));
    }
    let summary = rep
        .cases
        .iter()
        .map(|c| format!("{} {:?} (expected {})", c.name, c.observed, c.expected))
        .collect::<Vec<_>>()
        .join(", ");
    let pass = rep.pass;
    if let Value::Object(rest) = json!(rep) {
        doc.extend(rest);
    }
    Ok(Output {
        doc: Value::Object(doc),
        pass,
        summary: format!("{}: {summary}", parsed),
    })
}
