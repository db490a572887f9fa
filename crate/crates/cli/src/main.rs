use std::io::Read;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use parkfact::arch::{arch_to_factorization, enumerate_arch_diagrams, sigma_diagram, ArchDiagram};
use parkfact::factor::{enumerate_factorizations, factorization_enumerator, phi_k, phi_k_inverse, restricted_enumerators, Factorization};
use parkfact::inverse::{l_inverse, l_inverse_traced, push_upper_path, u_inverse};
use parkfact::parking::{
    bounce, enumerate_major, enumerate_parking, park_process, parking_enumerators, theta, theta_inverse, MajorSequence,
    ParkingFunction,
};
use parkfact::perm::{unimodal_cycles, FullCycle};
use parkfact::poly::{catalan_qt, BivariatePoly};
use parkfact::render::{arch_ascii, arch_svg, dyck_ascii, dyck_svg};
use parkfact::trees::{depth_enumerator, enumerate_trees, inversion_enumerator, LabelledTree};
use parkfact::verify::{run_many, suite_names};

#[derive(Parser)]
#[command(name = "parkfact", version, about = "Parking functions, labelled trees and minimal factorizations of full cycles")]
struct Cli {
    /// Largest n accepted by exhaustive subcommands [default: 8, explore: 6]
    #[arg(long, global = true, env = "PARKFACT_MAX_N")]
    max_n: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Tree,
    Parking,
    Major,
    Factorization,
    Arch,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Via {
    Lower,
    Upper,
    LInverse,
    UInverse,
    Theta,
    ThetaInverse,
    Phi,
    PhiInverse,
    Arch,
    Fact,
    Push,
    Reflect,
    Complement,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Picture {
    Dyck,
    Arch,
}

#[derive(Subcommand)]
enum Command {
    /// List every object of a kind on [n]
    Enumerate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// full cycle as its visit word, e.g. "0 2 3 1"; defaults to (0 1 ... n)
        #[arg(long)]
        sigma: Option<String>,
    },
    /// All statistics of one object
    Stats {
        #[arg(long, value_enum)]
        kind: Kind,
        /// the object, or "-" for stdin; JSON is accepted too
        #[arg(long)]
        input: String,
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Apply a bijection to one object
    Map {
        #[arg(long, value_enum)]
        from: Kind,
        #[arg(long, value_enum)]
        via: Via,
        #[arg(long)]
        input: String,
        #[arg(long)]
        sigma: Option<String>,
        /// position of (0 n) for phi, defaults to where it occurs
        #[arg(long)]
        k: Option<usize>,
        /// print each step of the inverse construction
        #[arg(long)]
        trace: bool,
    },
    /// A named enumerator: I F B D C Fhat Finc Fdec Fmax Fperm Area Jump
    Poly {
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        sigma: Option<String>,
    },
    /// Run a named identity suite, or all of them
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        n: usize,
    },
    /// Draw a Dyck path or an arch diagram
    Render {
        #[arg(long, value_enum)]
        kind: Picture,
        #[arg(long)]
        input: String,
        #[arg(long)]
        sigma: Option<String>,
        /// overlay the bounce path on a Dyck path
        #[arg(long)]
        bounce: bool,
    },
    /// Compare F_sigma with I_n over every unimodal sigma
    Explore {
        #[arg(long)]
        n: usize,
    },
}

enum Failure {
    Invalid(anyhow::Error),
    Verification(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Invalid(e)
    }
}

impl From<parkfact::Error> for Failure {
    fn from(e: parkfact::Error) -> Self {
        Failure::Invalid(e.into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(report)) => {
            print!("{report}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> std::result::Result<String, Failure> {
    let fmt = cli.format;
    let limit = |n: usize, default: usize| -> Result<()> {
        let max = cli.max_n.unwrap_or(default);
        if n > max {
            bail!("n = {n} exceeds the safety limit {max}; raise it with --max-n or PARKFACT_MAX_N");
        }
        Ok(())
    };
    match &cli.command {
        Command::Enumerate { kind, n, sigma } => {
            limit(*n, 8)?;
            Ok(enumerate(*kind, *n, sigma.as_deref(), fmt)?)
        }
        Command::Stats { kind, input, sigma } => Ok(stats(*kind, &read_input(input)?, sigma.as_deref(), fmt)?),
        Command::Map { from, via, input, sigma, k, trace } => {
            Ok(map(*from, *via, &read_input(input)?, sigma.as_deref(), *k, *trace, fmt)?)
        }
        Command::Poly { name, n, sigma } => {
            limit(*n, 8)?;
            let p = named_poly(name, *n, sigma.as_deref())?;
            Ok(match fmt {
                Format::Json => serde_json::to_string(&json!({ "name": name, "n": n, "terms": p })).map_err(anyhow::Error::from)?,
                _ => p.to_string(),
            })
        }
        Command::Verify { suite, n } => {
            limit(*n, 8)?;
            verify(suite, *n, fmt)
        }
        Command::Render { kind, input, sigma, bounce } => Ok(render(*kind, &read_input(input)?, sigma.as_deref(), *bounce, fmt)?),
        Command::Explore { n } => {
            limit(*n, 6)?;
            Ok(explore(*n, fmt)?)
        }
    }
}

fn read_input(input: &str) -> Result<String> {
    if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s.trim().to_string())
    } else {
        Ok(input.trim().to_string())
    }
}

fn is_json(s: &str) -> bool {
    s.starts_with('{')
}

fn sigma_or_canonical(sigma: Option<&str>, n: usize) -> Result<FullCycle> {
    match sigma {
        None => Ok(FullCycle::canonical(n)),
        Some(text) => {
            let s = FullCycle::parse(text)?;
            if s.n() != n {
                bail!("sigma {s} acts on [{}], expected [{n}]", s.n());
            }
            Ok(s)
        }
    }
}

fn parse_parking(s: &str) -> Result<ParkingFunction> {
    Ok(if is_json(s) { serde_json::from_str(s)? } else { s.parse()? })
}

fn parse_major(s: &str) -> Result<MajorSequence> {
    Ok(if is_json(s) { serde_json::from_str(s)? } else { s.parse()? })
}

fn parse_tree(s: &str) -> Result<LabelledTree> {
    Ok(if is_json(s) { serde_json::from_str(s)? } else { s.parse()? })
}

/// Text form infers n from the number of factors; `sigma` pins it otherwise.
fn parse_factorization(s: &str, sigma: Option<&str>) -> Result<Factorization> {
    if is_json(s) {
        return Ok(serde_json::from_str(s)?);
    }
    match sigma {
        Some(text) => Ok(Factorization::parse(FullCycle::parse(text)?.n(), s)?),
        None => Ok(s.parse()?),
    }
}

fn parse_arch(s: &str) -> Result<ArchDiagram> {
    if !is_json(s) {
        bail!(r#"arch diagrams are read as JSON, e.g. {{"n":2,"arcs":[[0,1,1],[0,2,2]]}}"#);
    }
    Ok(serde_json::from_str(s)?)
}

fn arch_text(a: &ArchDiagram) -> String {
    let arcs: Vec<String> = a.arcs().iter().map(|e| format!("{}-{}:{}", e.left, e.right, e.label)).collect();
    arcs.join(" ")
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn lines(items: Vec<(String, Value)>, fmt: Format) -> Result<String> {
    Ok(match fmt {
        Format::Json => serde_json::to_string(&items.into_iter().map(|(_, v)| v).collect::<Vec<_>>())?,
        _ => items.into_iter().map(|(s, _)| s + "\n").collect(),
    })
}

fn enumerate(kind: Kind, n: usize, sigma: Option<&str>, fmt: Format) -> Result<String> {
    let items: Vec<(String, Value)> = match kind {
        Kind::Tree => enumerate_trees(n).map(|t| Ok((t.to_string(), to_json(&t)?))).collect::<Result<_>>()?,
        Kind::Parking => enumerate_parking(n).map(|p| Ok((p.to_string(), to_json(&p)?))).collect::<Result<_>>()?,
        Kind::Major => enumerate_major(n).map(|m| Ok((m.to_string(), to_json(&m)?))).collect::<Result<_>>()?,
        Kind::Factorization => {
            let s = sigma_or_canonical(sigma, n)?;
            enumerate_factorizations(&s).map(|f| Ok((f.to_string(), to_json(&f)?))).collect::<Result<_>>()?
        }
        Kind::Arch => {
            let mut diagrams = if sigma.is_some() {
                let s = sigma_or_canonical(sigma, n)?;
                enumerate_factorizations(&s).map(|f| sigma_diagram(&f, &s)).collect::<parkfact::Result<Vec<_>>>()?
            } else {
                enumerate_arch_diagrams(n)
            };
            diagrams.sort_by_key(arch_text);
            diagrams.into_iter().map(|a| Ok((arch_text(&a), to_json(&a)?))).collect::<Result<_>>()?
        }
    };
    lines(items, fmt)
}

fn render_fields(fields: Vec<(&str, Value)>, fmt: Format) -> Result<String> {
    Ok(match fmt {
        Format::Json => serde_json::to_string(&fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<serde_json::Map<_, _>>())?,
        _ => fields
            .into_iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}\n"),
                other => format!("{k}: {other}\n"),
            })
            .collect(),
    })
}

fn parking_fields(p: &ParkingFunction) -> Vec<(&'static str, Value)> {
    let (data, b) = bounce(p);
    let park = park_process(p);
    vec![
        ("parking", json!(p.to_string())),
        ("n", json!(p.n())),
        ("area", json!(p.area())),
        ("bounce", json!(b)),
        ("contacts", json!(data.contacts)),
        ("pinv", json!(data.pinv())),
        ("copinv", json!(data.copinv())),
        ("jump", json!(park.jump)),
        ("cojump", json!(park.cojump)),
        ("stalls", json!(park.stalls)),
        ("increasing", json!(p.is_increasing())),
        ("decreasing", json!(p.is_decreasing())),
        ("permutation", json!(p.is_permutation())),
        ("tree", json!(theta(p).to_string())),
    ]
}

fn stats(kind: Kind, input: &str, sigma: Option<&str>, fmt: Format) -> Result<String> {
    let fields = match kind {
        Kind::Parking => parking_fields(&parse_parking(input)?),
        Kind::Major => {
            let m = parse_major(input)?;
            vec![
                ("major", json!(m.to_string())),
                ("n", json!(m.n())),
                ("area", json!(m.area())),
                ("complement", json!(m.complement().to_string())),
            ]
        }
        Kind::Tree => {
            let t = parse_tree(input)?;
            let s = t.stats();
            vec![
                ("tree", json!(t.to_string())),
                ("n", json!(t.n())),
                ("inv", json!(s.inv)),
                ("coinv", json!(s.coinv)),
                ("depth", json!(s.depth)),
            ]
        }
        Kind::Factorization => {
            let f = parse_factorization(input, sigma)?;
            let cycle = f.full_cycle()?;
            vec![
                ("factorization", json!(f.to_string())),
                ("n", json!(f.n())),
                ("product", json!(cycle.word().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))),
                ("unimodal", json!(cycle.is_unimodal())),
                ("lower", json!(f.lower())),
                ("upper", json!(f.upper())),
                ("area_lower", json!(f.area_lower()?)),
                ("area_upper", json!(f.area_upper()?)),
                ("total_difference", json!(f.total_difference()?)),
                ("simple_index", json!(f.simple_index())),
            ]
        }
        Kind::Arch => {
            let a = parse_arch(input)?;
            vec![
                ("arcs", json!(arch_text(&a))),
                ("n", json!(a.n())),
                ("valid", json!(parkfact::arch::is_valid_arch(&a))),
                ("simple", json!(a.is_simple())),
                ("caps", json!(a.caps().iter().map(|e| e.label).collect::<Vec<_>>())),
            ]
        }
    };
    render_fields(fields, fmt)
}

fn expect_kind(from: Kind, want: Kind, via: &str) -> Result<()> {
    if from != want {
        bail!("{via} takes a {} as input", kind_name(want));
    }
    Ok(())
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::Tree => "tree",
        Kind::Parking => "parking function",
        Kind::Major => "major sequence",
        Kind::Factorization => "factorization",
        Kind::Arch => "arch diagram",
    }
}

fn emit<T: serde::Serialize + std::fmt::Display>(v: &T, fmt: Format) -> Result<String> {
    Ok(match fmt {
        Format::Json => serde_json::to_string(v)?,
        _ => v.to_string(),
    })
}

fn map(from: Kind, via: Via, input: &str, sigma: Option<&str>, k: Option<usize>, trace: bool, fmt: Format) -> Result<String> {
    match via {
        Via::Lower | Via::Upper => {
            expect_kind(from, Kind::Factorization, "lower/upper")?;
            let f = parse_factorization(input, sigma)?;
            if via == Via::Lower {
                emit(&f.lower_parking()?, fmt)
            } else {
                emit(&f.upper_major()?, fmt)
            }
        }
        Via::LInverse => {
            expect_kind(from, Kind::Parking, "l-inverse")?;
            let p = parse_parking(input)?;
            let s = sigma_or_canonical(sigma, p.n())?;
            if !trace {
                return emit(&l_inverse(&p, &s)?, fmt);
            }
            let (f, steps) = l_inverse_traced(&p, &s)?;
            if fmt == Format::Json {
                return Ok(serde_json::to_string(&json!({ "factorization": f, "steps": steps }))?);
            }
            let mut out = String::new();
            for st in &steps {
                out.push_str(&format!(
                    "{}: slot {} lower {} {:?} partner {} upper {} product {}\n",
                    st.iteration, st.slot, st.lower, st.direction, st.partner, st.upper, st.partial_product
                ));
            }
            out.push_str(&f.to_string());
            Ok(out)
        }
        Via::UInverse => {
            expect_kind(from, Kind::Major, "u-inverse")?;
            let m = parse_major(input)?;
            let s = sigma_or_canonical(sigma, m.n())?;
            emit(&u_inverse(&m, &s)?, fmt)
        }
        Via::Theta => {
            expect_kind(from, Kind::Parking, "theta")?;
            emit(&theta(&parse_parking(input)?), fmt)
        }
        Via::ThetaInverse => {
            expect_kind(from, Kind::Tree, "theta-inverse")?;
            emit(&theta_inverse(&parse_tree(input)?), fmt)
        }
        Via::Phi => {
            expect_kind(from, Kind::Factorization, "phi")?;
            let f = parse_factorization(input, sigma)?;
            let k = k.or_else(|| f.simple_index()).ok_or_else(|| anyhow!("{f} has no factor (0 {})", f.n()))?;
            emit(&phi_k(&f, k)?, fmt)
        }
        Via::PhiInverse => {
            expect_kind(from, Kind::Factorization, "phi-inverse")?;
            let g = parse_factorization(input, sigma)?;
            let k = k.ok_or_else(|| anyhow!("phi-inverse needs --k"))?;
            emit(&phi_k_inverse(&g, k, g.n() + 1)?, fmt)
        }
        Via::Arch => {
            expect_kind(from, Kind::Factorization, "arch")?;
            let f = parse_factorization(input, sigma)?;
            let s = sigma_or_canonical(sigma, f.n())?;
            let a = sigma_diagram(&f, &s)?;
            Ok(match fmt {
                Format::Json => serde_json::to_string(&a)?,
                _ => arch_text(&a),
            })
        }
        Via::Fact => {
            expect_kind(from, Kind::Arch, "fact")?;
            let a = parse_arch(input)?;
            let s = sigma_or_canonical(sigma, a.n())?;
            emit(&arch_to_factorization(&a, &s)?, fmt)
        }
        Via::Push => {
            expect_kind(from, Kind::Parking, "push")?;
            let upper = push_upper_path(&parse_parking(input)?.to_path())?;
            emit(&MajorSequence::from_path(&upper)?, fmt)
        }
        Via::Reflect => {
            expect_kind(from, Kind::Factorization, "reflect")?;
            emit(&parse_factorization(input, sigma)?.reflect_conjugate(), fmt)
        }
        Via::Complement => match from {
            Kind::Parking => emit(&parse_parking(input)?.complement(), fmt),
            Kind::Major => emit(&parse_major(input)?.complement(), fmt),
            _ => bail!("complement takes a parking function or a major sequence"),
        },
    }
}

fn named_poly(name: &str, n: usize, sigma: Option<&str>) -> Result<BivariatePoly> {
    let tn = BivariatePoly::monomial(1, 0, n as u32);
    Ok(match name {
        "I" => inversion_enumerator(n),
        "F" => factorization_enumerator(&sigma_or_canonical(sigma, n)?),
        "B" => parking_enumerators(n).pinv_copinv,
        "D" => depth_enumerator(n),
        "C" => catalan_qt(n),
        "Area" | "area" => parking_enumerators(n).area,
        "Jump" | "jump" => parking_enumerators(n).jump_cojump,
        "Bounce" | "bounce" => parking_enumerators(n).bounce,
        "Fhat" | "F̂" => restricted_enumerators(n).simple,
        "Finc" | "F→" => restricted_enumerators(n).increasing,
        "Fdec" | "F←" => restricted_enumerators(n).decreasing,
        "Fmax" => restricted_enumerators(n).max_diff,
        "Fperm" => restricted_enumerators(n).perm_lower,
        "tC" => &tn * &catalan_qt(n),
        other => bail!("unknown enumerator {other:?}; known: I F B D C Area Jump Bounce Fhat Finc Fdec Fmax Fperm tC"),
    })
}

fn verify(suite: &str, n: usize, fmt: Format) -> std::result::Result<String, Failure> {
    let names = if suite == "all" { suite_names() } else { vec![suite] };
    let outcomes = run_many(&names, n)?;
    let failed = outcomes.iter().any(|o| !o.passed());
    let report = match fmt {
        Format::Json => serde_json::to_string(&outcomes).map_err(anyhow::Error::from)? + "\n",
        _ => outcomes
            .iter()
            .map(|o| {
                let status = if o.passed() { "PASS" } else { "FAIL" };
                let mut line = format!("{status} {} n<={} checks={}", o.suite, o.n, o.checks);
                if let Some(why) = &o.failure {
                    line.push_str(&format!("\n  counterexample: {why}"));
                }
                line + "\n"
            })
            .collect(),
    };
    if failed {
        Err(Failure::Verification(report))
    } else {
        Ok(report)
    }
}

fn render(kind: Picture, input: &str, sigma: Option<&str>, with_bounce: bool, fmt: Format) -> Result<String> {
    let svg = match fmt {
        Format::Svg => true,
        Format::Text => false,
        Format::Json => bail!("render emits svg or text"),
    };
    match kind {
        Picture::Dyck => {
            // a major sequence is drawn above the diagonal, anything else is
            // read as a parking function
            let (path, contacts) = match parse_parking(input) {
                Ok(p) => {
                    let contacts = with_bounce.then(|| bounce(&p).0.contacts);
                    (p.to_path(), contacts)
                }
                Err(e) => match parse_major(input) {
                    Ok(m) if !with_bounce => (m.to_path(), None),
                    Ok(_) => bail!("the bounce path is drawn for parking functions only"),
                    Err(_) => return Err(e),
                },
            };
            Ok(if svg { dyck_svg(&path, contacts.as_deref()) } else { dyck_ascii(&path, contacts.as_deref()) })
        }
        Picture::Arch => {
            let (a, s) = if is_json(input) {
                let a = parse_arch(input)?;
                let s = sigma_or_canonical(sigma, a.n())?;
                (a, s)
            } else {
                let f = parse_factorization(input, sigma)?;
                let s = sigma_or_canonical(sigma, f.n())?;
                (sigma_diagram(&f, &s)?, s)
            };
            let names: Vec<usize> = s.word().to_vec();
            Ok(if svg { arch_svg(&a, Some(&names)) } else { arch_ascii(&a, Some(&names)) })
        }
    }
}

fn explore(n: usize, fmt: Format) -> Result<String> {
    if n == 0 {
        bail!("explore needs n >= 1");
    }
    let cycles: Vec<FullCycle> = unimodal_cycles(n)?.collect();
    let polys: Vec<BivariatePoly> = std::thread::scope(|scope| {
        let handles: Vec<_> = cycles.iter().map(|s| scope.spawn(move || factorization_enumerator(s))).collect();
        handles.into_iter().map(|h| h.join().expect("enumeration thread")).collect()
    });
    let target = inversion_enumerator(n);
    let mut classes: Vec<(BivariatePoly, Vec<String>)> = Vec::new();
    for (s, p) in cycles.iter().zip(polys) {
        match classes.iter_mut().find(|(q, _)| *q == p) {
            Some((_, members)) => members.push(s.to_string()),
            None => classes.push((p, vec![s.to_string()])),
        }
    }
    if fmt == Format::Json {
        let classes: Vec<Value> = classes
            .iter()
            .map(|(p, members)| json!({ "equals_inversion_enumerator": *p == target, "enumerator": p, "sigmas": members }))
            .collect();
        return Ok(serde_json::to_string(&json!({ "n": n, "unimodal": cycles.len(), "classes": classes }))?);
    }
    let mut out = format!("n = {n}: {} unimodal cycles in {} classes\n", cycles.len(), classes.len());
    for (p, members) in &classes {
        let tag = if *p == target { "equal to I_n" } else { "differs from I_n" };
        out.push_str(&format!("{tag} ({} cycles): {p}\n", members.len()));
        for m in members {
            out.push_str(&format!("  {m}\n"));
        }
    }
    Ok(out)
}
