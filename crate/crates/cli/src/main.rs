mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use torimod::arith::json::series_to_json;
use torimod::arith::QSeries;
use torimod::forms::{
    check_certificate, cohomological_poly, express_in_generators, lattice_sum, FormsError,
    TruncationBound,
};
use torimod::generators::{GeneratorPoly, GeneratorSymbol, SeriesCache};
use torimod::hecke::{fricke_s1, fricke_weight1, level_raise, HeckeContext};
use torimod::verify;

use input::CliError;

#[derive(Parser)]
#[command(
    name = "torimod",
    version,
    about = "Exact q-expansions of toric modular forms"
)]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Directory for cached generator series (overrides TORIMOD_CACHE).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Pipeline {
    Lattice,
    Cohomology,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    S,
    R,
}

#[derive(Subcommand)]
enum Command {
    /// q-expansion of the toric form of a fan and degree function.
    Form {
        /// Example fan name (P1, P2, P1xP1, F1, ...), inline JSON, or a JSON file.
        #[arg(long)]
        fan: String,
        /// Degree function as {"l": L, "values": [...]}, inline or a file.
        #[arg(long)]
        deg: String,
        #[arg(long)]
        prec: i64,
        #[arg(long, value_enum, default_value = "lattice")]
        pipeline: Pipeline,
        /// Attach and check a truncation certificate (lattice pipeline).
        #[arg(long)]
        certify: bool,
    },
    /// A generator series s_{a/l}^(k) or r^(k).
    Gen {
        #[arg(long = "type", value_enum)]
        kind: Kind,
        #[arg(long, allow_negative_numbers = true)]
        a: Option<i64>,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        prec: i64,
    },
    /// Hecke operator at p: T_p for p ∤ l, U_p for p | l.
    Hecke {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        prec: i64,
    },
    /// Fricke involution on weight-one forms.
    Fricke {
        /// Residue a of s_{a/l}^(1), used with --l.
        #[arg(long, allow_negative_numbers = true, conflicts_with = "poly")]
        a: Option<i64>,
        #[arg(long, requires = "a")]
        l: Option<u32>,
        /// Weight-one generator polynomial, inline JSON or a file.
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        prec: i64,
    },
    /// Rewrite g(pτ) at level p·l.
    Lift {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        prec: i64,
    },
    /// Run the bundled verification suites.
    Verify {
        /// "all", or criterion numbers such as "1,3,7".
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Structural data for a fan.
    FanInfo {
        #[arg(long)]
        fan: String,
        /// Also report the truncation radius at this precision.
        #[arg(long)]
        prec: Option<i64>,
    },
}

/// A form given by its generator polynomial, or by a smooth fan and degree function.
#[derive(clap::Args)]
struct Source {
    #[arg(long, conflicts_with_all = ["fan", "deg"], required_unless_present = "fan")]
    poly: Option<String>,
    #[arg(long, requires = "deg")]
    fan: Option<String>,
    #[arg(long, requires = "fan")]
    deg: Option<String>,
}

impl Source {
    fn resolve(&self) -> Result<GeneratorPoly, CliError> {
        match (&self.poly, &self.fan, &self.deg) {
            (Some(p), _, _) => input::poly(p),
            (None, Some(f), Some(d)) => {
                let fan = input::fan(f)?;
                Ok(cohomological_poly(&input::degree(&fan, d)?)?)
            }
            _ => Err(CliError::Usage("give --poly, or --fan with --deg".into())),
        }
    }
}

/// JSON or text, depending on --pretty.
struct Output {
    json: Value,
    text: Vec<String>,
}

fn poly_table(g: &GeneratorPoly) -> Value {
    g.to_json()
}

fn poly_lines(g: &GeneratorPoly) -> Vec<String> {
    if g.is_zero() {
        return vec!["  0".into()];
    }
    let mut lines = vec![];
    for (m, c) in g.terms() {
        let single = {
            let mut t = GeneratorPoly::zero(g.level(), g.weight());
            t.add_term(m.clone(), c.clone());
            t
        };
        lines.push(format!("  {single}"));
    }
    lines
}

fn form(
    fan: &str,
    deg: &str,
    prec: i64,
    pipeline: Pipeline,
    certify: bool,
) -> Result<Output, CliError> {
    let prec = input::prec(prec)?;
    if certify && pipeline == Pipeline::Cohomology {
        return Err(CliError::usage("certify", "needs the lattice pipeline"));
    }
    let fan = input::fan(fan)?;
    let deg = input::degree(&fan, deg)?;
    let mut json = json!({ "l": deg.level(), "prec": prec });
    let mut text = vec![];
    let lattice = match pipeline {
        Pipeline::Cohomology => None,
        _ => Some(lattice_sum(&deg, prec)?),
    };
    let cohomology = match pipeline {
        Pipeline::Lattice => None,
        _ => {
            let g = cohomological_poly(&deg)?;
            let f = g.evaluate(prec)?;
            Some((g, f))
        }
    };
    if let (Some(a), Some((_, b))) = (&lattice, &cohomology) {
        if a.series != *b {
            let at = (0..=prec)
                .find(|&n| a.series.coeff(n) != b.coeff(n))
                .unwrap_or(prec);
            return Err(FormsError::PipelineMismatch { at }.into());
        }
    }
    let series = match (&lattice, &cohomology) {
        (Some(a), _) => a.series.clone(),
        (None, Some((_, b))) => b.clone(),
        (None, None) => unreachable!(),
    };
    json["series"] = series_to_json(&series);
    text.push(series.to_string());
    if let Some((g, _)) = &cohomology {
        json["generators"] = poly_table(g);
        text.push("generators:".into());
        text.extend(poly_lines(g));
    }
    if pipeline == Pipeline::Both {
        json["agreement"] = json!("exact");
        text.push(format!("lattice and cohomology agree through q^{prec}"));
    }
    if let Some(run) = &lattice {
        json["terms"] = json!(run.terms);
        if certify {
            let tri = if deg.fan().is_simplicial() {
                deg.fan().clone()
            } else {
                deg.fan().triangulate()
            };
            check_certificate(&tri, &run.certificate).map_err(FormsError::Certificate)?;
            json["certificate"] = serde_json::to_value(&run.certificate)
                .map_err(|e| CliError::Domain(e.to_string()))?;
            text.push(format!(
                "certificate: radius {}, {} regions, checked",
                run.certificate.radius,
                run.certificate.regions.len()
            ));
        }
    }
    Ok(Output { json, text })
}

fn series_output(f: &QSeries, g: Option<&GeneratorPoly>) -> Output {
    let mut json = json!({ "series": series_to_json(f) });
    let mut text = vec![f.to_string()];
    if let Some(g) = g {
        json["generators"] = poly_table(g);
        text.push("generators:".into());
        text.extend(poly_lines(g));
    }
    Output { json, text }
}

fn gen(
    kind: Kind,
    a: Option<i64>,
    l: Option<u32>,
    k: u32,
    prec: i64,
    cache: &SeriesCache,
) -> Result<Output, CliError> {
    let prec = input::prec(prec)?;
    let (sym, l) = match kind {
        Kind::S => {
            let a = a.ok_or_else(|| CliError::usage("a", "required for --type s"))?;
            let l = l.ok_or_else(|| CliError::usage("l", "required for --type s"))?;
            (GeneratorSymbol::s(a, l, k)?, l)
        }
        Kind::R => (GeneratorSymbol::r(k)?, l.unwrap_or(1)),
    };
    let f = cache.series(sym, l, prec)?;
    let mut out = series_output(&f, None);
    out.json["symbol"] = json!(sym.render(l));
    out.text.insert(0, format!("{} =", sym.render(l)));
    Ok(out)
}

fn hecke(source: &Source, p: u32, prec: i64) -> Result<Output, CliError> {
    let prec = input::prec(prec)?;
    let g = source.resolve()?;
    let ctx = HeckeContext::new(g.level(), g.weight(), p)?;
    let f = ctx.apply(&g, prec)?;
    // the image stays in the ring; report its generator coordinates
    let h = express_in_generators(&f, g.weight(), g.level())?;
    let mut out = series_output(&f, Some(&h));
    out.json["operator"] = json!(if ctx.divides {
        format!("U_{p}")
    } else {
        format!("T_{p}")
    });
    Ok(out)
}

fn fricke(
    a: Option<i64>,
    l: Option<u32>,
    poly: Option<&str>,
    prec: i64,
) -> Result<Output, CliError> {
    let prec = input::prec(prec)?;
    let g = match (a, l, poly) {
        (_, _, Some(p)) => fricke_weight1(&input::poly(p)?)?,
        (Some(a), Some(l), None) => fricke_s1(a, l)?,
        _ => return Err(CliError::Usage("give --a with --l, or --poly".into())),
    };
    Ok(series_output(&g.evaluate(prec)?, Some(&g)))
}

fn lift(source: &Source, p: u32, prec: i64) -> Result<Output, CliError> {
    let prec = input::prec(prec)?;
    let g = source.resolve()?;
    let h = level_raise(&g, p)?;
    Ok(series_output(&h.evaluate(prec)?, Some(&h)))
}

fn fan_info(fan: &str, prec: Option<i64>) -> Result<Output, CliError> {
    let fan = input::fan(fan)?;
    let mut json = json!({
        "rank": fan.rank(),
        "rays": fan.rays(),
        "max_cones": fan.max_cones(),
        "cones": fan.cones().len(),
        "complete": fan.complete(),
        "simplicial": fan.is_simplicial(),
        "smooth": fan.is_smooth(),
    });
    let mut text = vec![
        format!(
            "rank {}, {} rays, {} maximal cones, {} cones",
            fan.rank(),
            fan.rays().len(),
            fan.max_cones().len(),
            fan.cones().len()
        ),
        format!(
            "complete: {}, simplicial: {}, smooth: {}",
            fan.complete(),
            fan.is_simplicial(),
            fan.is_smooth()
        ),
    ];
    if fan.complete() {
        let tri = fan.triangulate();
        let bound = TruncationBound::new(&tri)?;
        json["zonotope_interior"] = json!(bound.interior());
        json["regions"] = json!(bound.regions().len());
        text.push(format!(
            "{} sign regions, {} interior zonotope points",
            bound.regions().len(),
            bound.interior().len()
        ));
        if let Some(p) = prec {
            let p = input::prec(p)?;
            json["radius"] = json!(bound.radius(p));
            json["contributing"] = json!(bound.contributing(p).len());
            text.push(format!(
                "radius {} at q^{p}, {} contributing points",
                bound.radius(p),
                bound.contributing(p).len()
            ));
        }
    }
    Ok(Output { json, text })
}

fn verify_suite(suite: &str) -> Result<(Output, bool), CliError> {
    let ids = verify::suite(suite)
        .ok_or_else(|| CliError::usage("suite", format!("unknown suite {suite:?}")))?;
    let reports: Vec<_> = ids.into_iter().filter_map(verify::run).collect();
    let passed = reports.iter().all(|r| r.passed);
    let json = json!({
        "passed": passed,
        "criteria": reports.iter().map(|r| json!({
            "id": r.id,
            "name": r.name,
            "passed": r.passed,
            "detail": r.detail,
            "seconds": r.elapsed.as_secs_f64(),
        })).collect::<Vec<_>>(),
    });
    let mut text: Vec<String> = reports.iter().map(verify::format_report).collect();
    text.push(format!(
        "{} of {} passed",
        reports.iter().filter(|r| r.passed).count(),
        reports.len()
    ));
    Ok((Output { json, text }, passed))
}

fn run(cli: &Cli) -> Result<(Output, bool), CliError> {
    let cache = SeriesCache::resolve(cli.cache_dir.as_deref());
    let out = match &cli.command {
        Command::Form {
            fan,
            deg,
            prec,
            pipeline,
            certify,
        } => form(fan, deg, *prec, *pipeline, *certify)?,
        Command::Gen {
            kind,
            a,
            l,
            k,
            prec,
        } => gen(*kind, *a, *l, *k, *prec, &cache)?,
        Command::Hecke { source, p, prec } => hecke(source, *p, *prec)?,
        Command::Fricke { a, l, poly, prec } => fricke(*a, *l, poly.as_deref(), *prec)?,
        Command::Lift { source, p, prec } => lift(source, *p, *prec)?,
        Command::Verify { suite } => return verify_suite(suite),
        Command::FanInfo { fan, prec } => fan_info(fan, *prec)?,
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, ok)) => {
            if cli.pretty {
                for line in &out.text {
                    println!("{line}");
                }
            } else {
                println!("{}", out.json);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
