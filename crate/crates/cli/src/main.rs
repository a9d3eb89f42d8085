use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use moridream::fano::{self, BoundsReport, BOUND_CHECKS};
use moridream::io::{self, FanDocument};
use moridream::mds;
use moridream::mmp::{self, Strategy};
use moridream::toric::ContractionType;
use moridream::{catalog, Error, Fan, MoriTrace};

/// Exit codes.
const OK: u8 = 0;
const USAGE: u8 = 1;
const VALIDATION: u8 = 2;
const FALSIFICATION: u8 = 3;
const CAP: u8 = 4;
const FIBER_TYPE: u8 = 5;

#[derive(Parser)]
#[command(name = "moridream", version, about = "Chamber fans and Mori programs of toric Mori dream spaces")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Picard number, flags, cone inventory, extremal rays and c.
    Analyze { instance: String },
    /// Chamber decomposition of the movable cone.
    Chambers {
        instance: String,
        /// Maximum number of chambers to explore.
        #[arg(long, default_value_t = mds::DEFAULT_CHAMBER_CAP)]
        max: usize,
        /// Write the adjacency graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Run a Mori program for a divisor.
    Mmp {
        instance: String,
        /// Ray coefficients `a0,a1,…`, `ray:LABEL` for a prime divisor, or `-K`.
        #[arg(long, allow_hyphen_values = true)]
        divisor: String,
        /// first | random:SEED | scaling | interactive
        #[arg(long, default_value = "first")]
        strategy: String,
        /// Also write the trace to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Profiles of all invariant prime divisors.
    Classify { instance: String },
    /// Audit the Picard-number bounds.
    Verify {
        instance: Option<String>,
        #[arg(long, conflicts_with = "instance")]
        all_catalog: bool,
    },
    /// Names and expected properties of the built-in catalog.
    ListCatalog,
    /// Print the fan document of an instance.
    Export { instance: String },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => CAP,
        Error::Aborted(_) => USAGE,
        _ => VALIDATION,
    }
}

type Outcome = Result<(String, Value, u8), Error>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    let result = match cli.command {
        Command::Analyze { instance } => analyze(&instance),
        Command::Chambers { instance, max, dot } => chambers(&instance, max, dot),
        Command::Mmp {
            instance,
            divisor,
            strategy,
            trace,
        } => run_mmp(&instance, &divisor, &strategy, trace),
        Command::Classify { instance } => classify(&instance),
        Command::Verify { instance, all_catalog } => match (instance, all_catalog) {
            (Some(i), false) => verify_one(&i),
            (None, true) => verify_all(),
            _ => {
                eprintln!("error: verify needs an instance or --all-catalog");
                return ExitCode::from(USAGE);
            }
        },
        Command::ListCatalog => list_catalog(),
        Command::Export { instance } => export(&instance),
    };
    match result {
        Ok((text, value, code)) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
            } else {
                print!("{text}");
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn load(instance: &str) -> Result<(String, Fan), Error> {
    io::resolve_instance(instance)
}

fn labels(fan: &Fan, idx: &[usize]) -> Vec<usize> {
    idx.iter().map(|&i| fan.labels()[i]).collect()
}

fn analyze(instance: &str) -> Outcome {
    let (name, fan) = load(instance)?;
    let rays = fan.extremal_rays();
    let count = |p: &dyn Fn(&ContractionType) -> bool| rays.iter().filter(|r| p(&r.kind)).count();
    let fiber = count(&|k| *k == ContractionType::FiberType);
    let divisorial = count(&|k| matches!(k, ContractionType::Divisorial(_)));
    let small = count(&|k| *k == ContractionType::Small);
    let k_negative = rays.iter().filter(|r| r.k_sign() < 0).count();
    let (c, witness) = fano::c_invariant(&fan);
    let mut text = format!(
        "instance {name}\ndim {}\nrays {}\nmaximal-cones {}\nrho {}\nsmooth {}\nfano {}\nprojective {}\n",
        fan.dim(),
        fan.num_rays(),
        fan.cones().len(),
        fan.picard_number(),
        fan.is_smooth(),
        fan.is_fano(),
        fan.is_projective()
    );
    let mut value = json!({
        "instance": name,
        "dim": fan.dim(),
        "rays": fan.num_rays(),
        "maximal_cones": fan.cones().len(),
        "rho": fan.picard_number(),
        "smooth": fan.is_smooth(),
        "fano": fan.is_fano(),
        "projective": fan.is_projective(),
        "extremal_rays": {"total": rays.len(), "fiber": fiber, "divisorial": divisorial, "small": small, "k_negative": k_negative},
        "c": c,
        "c_witness": fan.labels()[witness],
    });
    if fan.is_projective() {
        let inv = mds::cone_inventory(&fan)?;
        let mut cones = serde_json::Map::new();
        for (label, cone) in [("nef", &inv.nef), ("mov", &inv.mov), ("eff", &inv.eff), ("ne", &inv.ne), ("me", &inv.me)] {
            text.push_str(&format!(
                "cone {label} dim={} rays={} facets={}\n",
                cone.dim(),
                cone.rays().len(),
                cone.facets().len()
            ));
            cones.insert(
                label.into(),
                json!({"dim": cone.dim(), "rays": cone.rays(), "facets": cone.facets()}),
            );
        }
        value["cones"] = Value::Object(cones);
    }
    text.push_str(&format!(
        "extremal-rays total={} fiber={fiber} divisorial={divisorial} small={small} k-negative={k_negative}\n",
        rays.len()
    ));
    text.push_str(&format!("c {c} witness=D{}\n", fan.labels()[witness]));
    Ok((text, value, OK))
}

fn chambers(instance: &str, max: usize, dot: Option<PathBuf>) -> Outcome {
    let (name, fan) = load(instance)?;
    let inv = mds::cone_inventory(&fan)?;
    let atlas = mds::chamber_atlas(&fan, max)?;
    mds::verify_atlas(&atlas, &inv)?;
    let fano_count = atlas.chambers.iter().filter(|c| c.model.is_fano()).count();
    let mut text = format!("instance {name}\nchambers {}\nfano-chambers {fano_count}\n", atlas.chambers.len());
    let mut list = Vec::new();
    for (i, ch) in atlas.chambers.iter().enumerate() {
        let f = ch.model.is_fano();
        text.push_str(&format!(
            "chamber {i} fano={f} rays={} facets={}{}\n",
            ch.cone.rays().len(),
            ch.cone.facets().len(),
            if i == atlas.base { " base" } else { "" }
        ));
        list.push(json!({"index": i, "fano": f, "base": i == atlas.base, "rays": ch.cone.rays(), "facets": ch.cone.facets()}));
    }
    let mut edges = Vec::new();
    for e in &atlas.adjacency {
        text.push_str(&format!(
            "adjacent {} {} circuit={} normal={}\n",
            e.from,
            e.to,
            mmp::fmt_vec(&e.circuit),
            mmp::fmt_vec(&e.normal)
        ));
        edges.push(json!({"from": e.from, "to": e.to, "circuit": e.circuit, "normal": e.normal}));
    }
    if let Some(path) = dot {
        std::fs::write(&path, io::atlas_dot(&atlas))
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
    }
    let value = json!({"instance": name, "chambers": list, "fano_chambers": fano_count, "adjacency": edges});
    Ok((text, value, OK))
}

fn parse_divisor(fan: &Fan, spec: &str) -> Result<Vec<i64>, Error> {
    let spec = spec.trim();
    if spec == "-K" || spec == "anticanonical" {
        return Ok(fan.anticanonical_coeffs());
    }
    if let Some(l) = spec.strip_prefix("ray:") {
        let label: usize = l
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("invalid ray label `{l}`")))?;
        let j = fan
            .index_of_label(label)
            .ok_or_else(|| Error::InvalidArgument(format!("no ray with label {label}")))?;
        let mut d = vec![0; fan.num_rays()];
        d[j] = 1;
        return Ok(d);
    }
    let d: Vec<i64> = spec
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::InvalidArgument(format!("invalid coefficient `{t}`"))))
        .collect::<Result<_, _>>()?;
    if d.len() != fan.num_rays() {
        return Err(Error::InvalidArgument(format!(
            "divisor has {} coefficients but the fan has {} rays",
            d.len(),
            fan.num_rays()
        )));
    }
    Ok(d)
}

fn trace_json(trace: &MoriTrace) -> Value {
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "index": s.index,
                "kind": match s.kind { mmp::StepKind::Flip => "flip", mmp::StepKind::Divisorial => "divisorial" },
                "ray": mmp::ray_signature(&s.fan_before, &s.ray),
                "negative": labels(&s.fan_before, &s.ray.negative),
                "positive": labels(&s.fan_before, &s.ray.positive),
                "class_before": s.class_before,
                "class_after": s.class_after,
                "k_sign": s.k_sign,
            })
        })
        .collect();
    json!({
        "strategy": trace.strategy,
        "seed": trace.seed,
        "divisor": trace.initial_divisor,
        "steps": steps,
        "flips": trace.flips(),
        "divisorial": trace.divisorial_steps(),
        "outcome": if trace.is_fiber_type() { "fiber-type" } else { "semiample" },
        "final_rays": trace.final_fan.num_rays(),
        "final_labels": trace.final_fan.labels(),
    })
}

fn prompt(fan: &Fan, d: &[i64], rays: &[moridream::ExtremalRay]) -> Option<usize> {
    let mut err = std::io::stderr();
    let _ = writeln!(err, "D = {} on a model with {} rays", mmp::fmt_vec(&fan.divisor_class(d)), fan.num_rays());
    for (i, r) in rays.iter().enumerate() {
        let _ = writeln!(err, "  [{i}] {} {} D.C={}", r.kind, mmp::ray_signature(fan, r), r.pair(d));
    }
    let _ = write!(err, "choose a ray (q to abort): ");
    let _ = err.flush();
    let mut line = String::new();
    std::io::stdin().lock().read_line(&mut line).ok()?;
    line.trim().parse().ok().filter(|&i| i < rays.len())
}

fn run_mmp(instance: &str, divisor: &str, strategy: &str, trace_file: Option<PathBuf>) -> Outcome {
    let (_, fan) = load(instance)?;
    let d = parse_divisor(&fan, divisor)?;
    let mut chooser = |f: &Fan, d: &[i64], rays: &[moridream::ExtremalRay]| prompt(f, d, rays);
    let strategy = match strategy {
        "first" => Strategy::First,
        "scaling" => Strategy::Scaling(None),
        "interactive" => Strategy::Interactive(&mut chooser),
        s => match s.strip_prefix("random:").map(str::parse::<u64>) {
            Some(Ok(seed)) => Strategy::Random(seed),
            _ => return Err(Error::InvalidArgument(format!("unknown strategy `{s}`"))),
        },
    };
    let trace = mmp::run_mori_program(&fan, &d, strategy)?;
    let text = trace.to_text();
    if let Some(path) = trace_file {
        std::fs::write(&path, &text)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))?;
    }
    let code = if trace.is_fiber_type() { FIBER_TYPE } else { OK };
    Ok((text, trace_json(&trace), code))
}

fn classify(instance: &str) -> Outcome {
    let (name, fan) = load(instance)?;
    let inv = mds::cone_inventory(&fan)?;
    let profiles = fano::divisor_profiles(&fan, &inv)?;
    let (c, _) = fano::c_invariant(&fan);
    let mut text = format!("instance {name}\nrho {} c {c}\n", fan.picard_number());
    text.push_str("divisor n1-dim codim movable type\n");
    let mut rows = Vec::new();
    for p in &profiles {
        let tag = p.type_tag.map_or("-".to_string(), |t| t.to_string());
        text.push_str(&format!("D{} {} {} {} {}\n", p.label, p.n1_dim, p.codim, p.movable, tag));
        for ev in &p.evidence {
            text.push_str(&format!("  {ev}\n"));
        }
        rows.push(json!({
            "label": p.label, "n1_dim": p.n1_dim, "codim": p.codim, "movable": p.movable,
            "type": p.type_tag.map(|t| t.to_string()), "evidence": p.evidence,
        }));
    }
    let value = json!({"instance": name, "rho": fan.picard_number(), "c": c, "divisors": rows});
    Ok((text, value, OK))
}

fn report_json(name: &str, r: &BoundsReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({"id": c.id, "statement": c.statement, "hypothesis": c.hypothesis, "conclusion": c.conclusion, "detail": c.detail}))
        .collect();
    json!({"instance": name, "rho": r.rho, "c": r.c, "chambers": r.chambers, "contractions": r.contractions, "checks": checks, "alarms": r.alarms().len()})
}

fn verify_one(instance: &str) -> Outcome {
    let (name, fan) = load(instance)?;
    let r = fano::audit_bounds(&fan, mds::DEFAULT_CHAMBER_CAP)?;
    let text = format!("instance {name}\n{}alarms {}\n", r.to_text(), r.alarms().len());
    let code = if r.alarms().is_empty() { OK } else { FALSIFICATION };
    Ok((text, report_json(&name, &r), code))
}

fn verify_all() -> Outcome {
    let entries = catalog::catalog();
    let results: Vec<(String, Option<Result<BoundsReport, Error>>)> = entries
        .par_iter()
        .map(|e| {
            let fan: Fan = e.build();
            let eligible = fan.dim() == 4 && fan.is_smooth() && fan.is_fano();
            (e.name.clone(), eligible.then(|| fano::audit_bounds(&fan, mds::DEFAULT_CHAMBER_CAP)))
        })
        .collect();
    let mut text = String::new();
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    let mut hyp = vec![0usize; BOUND_CHECKS.len()];
    let mut alarms = vec![0usize; BOUND_CHECKS.len()];
    let mut audited = 0;
    for (name, res) in results {
        let Some(res) = res else {
            skipped.push(name);
            continue;
        };
        let r = res?;
        audited += 1;
        for c in &r.checks {
            let k = BOUND_CHECKS.iter().position(|id| *id == c.id).expect("known check");
            hyp[k] += c.hypothesis as usize;
            alarms[k] += c.alarm() as usize;
        }
        text.push_str(&format!("instance {name}\n{}", r.to_text()));
        reports.push(report_json(&name, &r));
    }
    text.push_str(&format!("summary audited={audited} skipped={}\n", skipped.len()));
    let mut summary = Vec::new();
    for (k, id) in BOUND_CHECKS.iter().enumerate() {
        text.push_str(&format!("summary {id} hypothesis-satisfied={} alarms={}\n", hyp[k], alarms[k]));
        summary.push(json!({"id": id, "hypothesis_satisfied": hyp[k], "alarms": alarms[k]}));
    }
    let total: usize = alarms.iter().sum();
    text.push_str(&format!("alarms {total}\n"));
    let value = json!({"reports": reports, "skipped": skipped, "summary": summary, "alarms": total});
    Ok((text, value, if total == 0 { OK } else { FALSIFICATION }))
}

fn list_catalog() -> Outcome {
    let mut text = String::from("name rho smooth fano c description\n");
    let mut rows = Vec::new();
    for e in catalog::catalog() {
        let x = &e.expected;
        text.push_str(&format!("{} {} {} {} {} {}\n", e.name, x.rho, x.smooth, x.fano, x.c, e.description));
        rows.push(json!({"name": e.name, "rho": x.rho, "smooth": x.smooth, "fano": x.fano, "c": x.c, "description": e.description}));
    }
    Ok((text, Value::Array(rows), OK))
}

fn export(instance: &str) -> Outcome {
    let (name, fan) = load(instance)?;
    let doc = FanDocument::from_fan(&name, &fan);
    let text = io::write_fan(&doc);
    let value = json!({"name": name, "dim": fan.dim(), "rays": fan.rays(), "cones": fan.cones()});
    Ok((text, value, OK))
}
