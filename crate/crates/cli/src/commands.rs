use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crystalpoly::braid::{apply_at, fuzz_suite, phi, BraidContext, FuzzReport};
use crystalpoly::crystal::check_axioms;
use crystalpoly::polyhedral::{
    check_ample, check_positivity, enumerate_lattice_points, generate_xi, GenerateOptions,
    Realization,
};
use crystalpoly::special::{an_system, golden_iota0, golden_iota1, rank2_system};
use crystalpoly::zcrystal::ZVectorDoc;
use crystalpoly::{CartanData, Error, FormSet, Mode, Sequence, TensorElem, ZCrystal, ZVector};
use serde_json::{json, Value};

use crate::config::{self, Format, Method, RunConfig, SourceArgs};
use crate::{BraidArgs, SystemArgs};

pub const OK: i32 = 0;
pub const INTERNAL: i32 = 1;
pub const CONFIG: i32 = 2;
pub const UNSATURATED: i32 = 3;
pub const MISMATCH: i32 = 4;
pub const BRAID_VIOLATION: i32 = 5;

type Outcome = Result<i32, Error>;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Unsaturated => UNSATURATED,
        _ => CONFIG,
    }
}

fn print_json(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    );
}

fn reject_dot(format: Format) -> Result<(), Error> {
    match format {
        Format::Dot => Err(Error::Parse(
            "dot output is only available for graph".into(),
        )),
        _ => Ok(()),
    }
}

/// Tensor encoding of a node: `[[i, x], …, ["r", λ]]` over `len` letters.
fn encode_node(x: &ZVector, cfg: &RunConfig, len: usize) -> Value {
    x.to_tensor(&cfg.iota, len, cfg.lambda())
        .map(|t| t.to_json())
        .unwrap_or(Value::Null)
}

pub fn graph(src: &SourceArgs, depth: usize, format: Format) -> Outcome {
    let cfg = config::build(src, depth, None)?;
    let z = ZCrystal::new(cfg.cartan.clone(), cfg.iota.clone(), cfg.mode.clone())?;
    let graph = if cfg.parallel() {
        z.bfs_par(depth)
    } else {
        z.bfs(depth)
    };
    let violations = check_axioms(&z, graph.nodes());
    if let Some(v) = violations.first() {
        eprintln!(
            "internal error: {} axiom violations, first: {v}",
            violations.len()
        );
        return Ok(INTERNAL);
    }
    let len = graph
        .nodes()
        .iter()
        .map(ZVector::support_max)
        .max()
        .unwrap_or(0)
        .max(1);
    match format {
        Format::Dot => print!("{}", graph.to_dot(|x| x.to_string())),
        Format::Json => print_json(&graph.to_json(|x| encode_node(x, &cfg, len))),
        Format::Text => {
            let mut out = String::new();
            for (idx, node) in graph.nodes().iter().enumerate() {
                let _ = writeln!(out, "{idx}\tdepth {}\t{node}", graph.depth(idx));
            }
            for &(s, i, d) in graph.edges() {
                let _ = writeln!(out, "{s} -{i}-> {d}");
            }
            print!("{out}");
        }
    }
    Ok(OK)
}

fn require_period(seq: &Sequence, expected: &[usize], method: &str) -> Result<(), Error> {
    if seq.period() == expected {
        Ok(())
    } else {
        Err(Error::InvalidSequence(format!(
            "the {method} system is defined for the periodic word {expected:?}, got {:?}",
            seq.period()
        )))
    }
}

fn require_type_a(cartan: &CartanData, n: usize) -> Result<(), Error> {
    if *cartan == CartanData::type_a(n)? {
        Ok(())
    } else {
        Err(Error::InvalidCartan(format!("the system needs type A_{n}")))
    }
}

fn build_system(cfg: &RunConfig, sys: &SystemArgs) -> Result<FormSet, Error> {
    let lambda = cfg.lambda();
    match sys.method {
        Method::Generate => {
            let real = Realization::new(cfg.cartan.clone(), cfg.iota.clone(), cfg.mode.clone())?;
            let opts = GenerateOptions {
                max_rounds: sys.max_rounds,
                parallel: cfg.parallel(),
                ..GenerateOptions::new(cfg.support)
            };
            generate_xi(&real, opts)
        }
        Method::Rank2 => {
            if cfg.cartan.rank() != 2 {
                return Err(Error::InvalidCartan(
                    "the rank-2 system needs rank 2".into(),
                ));
            }
            require_period(&cfg.iota, &[1, 2], "rank-2")?;
            let (c1, c2) = (-cfg.cartan.pairing(1, 2), -cfg.cartan.pairing(2, 1));
            rank2_system(c1, c2, &cfg.mode, sys.window.unwrap_or(cfg.support))
        }
        Method::An => {
            let n = cfg.cartan.rank();
            require_type_a(&cfg.cartan, n)?;
            require_period(&cfg.iota, &(1..=n).collect::<Vec<_>>(), "A_n")?;
            an_system(n, &cfg.mode)
        }
        Method::GoldenIota1 | Method::GoldenIota0 => {
            require_type_a(&cfg.cartan, 3)?;
            let (system, word) = match sys.method {
                Method::GoldenIota1 => (golden_iota1(lambda)?, [1, 2, 3, 1, 2, 1]),
                _ => (golden_iota0(lambda)?, [1, 2, 3, 2, 1, 2]),
            };
            require_period(&cfg.iota, &word, "fixed A_3")?;
            Ok(system)
        }
    }
}

/// Golden systems fix their own word, so it replaces the default.
fn system_config(src: &SourceArgs, sys: &SystemArgs, depth: usize) -> Result<RunConfig, Error> {
    let mut cfg = config::build(src, depth, sys.support)?;
    if src.iota.is_none() {
        let word = match sys.method {
            Method::GoldenIota1 => Some(vec![1, 2, 3, 1, 2, 1]),
            Method::GoldenIota0 => Some(vec![1, 2, 3, 2, 1, 2]),
            _ => None,
        };
        if let Some(word) = word {
            cfg.iota = Sequence::new(word, cfg.cartan.rank())?;
        }
    }
    Ok(cfg)
}

pub fn inequalities(src: &SourceArgs, sys: &SystemArgs, format: Format) -> Outcome {
    reject_dot(format)?;
    let cfg = system_config(src, sys, 0)?;
    let xi = build_system(&cfg, sys)?;

    let positivity = match (&xi.mode, xi.saturated) {
        (Mode::Infinity, true) => Some(check_positivity(&xi, &cfg.iota)?),
        _ => None,
    };
    let ample = match (&xi.mode, xi.saturated) {
        (Mode::Highest(_), true) => Some(check_ample(&xi)?),
        _ => None,
    };
    let derivation = |f| {
        xi.generation_log
            .get(f)
            .map(|d| d.render(xi.mode.lambda().is_some()))
    };

    match format {
        Format::Json => {
            let pos = positivity.as_ref().map(|r| {
                json!({
                    "holds": r.ok,
                    "witnesses": r.witnesses.iter().map(|(f, k)| json!({"form": f.to_doc(), "position": k})).collect::<Vec<_>>(),
                })
            });
            let amp = ample.as_ref().map(|r| {
                json!({
                    "ample": r.ok,
                    "witnesses": r.witnesses.iter().map(|f| f.to_doc()).collect::<Vec<_>>(),
                })
            });
            print_json(&json!({
                "system": xi.to_docs(),
                "saturated": xi.saturated,
                "support_bound": xi.support_bound,
                "mode": xi.mode,
                "positivity": pos,
                "ampleness": amp,
            }));
        }
        _ => {
            let mut out = String::new();
            if !xi.saturated {
                let _ = writeln!(
                    out,
                    "WARNING: not saturated within {} rounds at support bound {}; the system below is partial",
                    sys.max_rounds, cfg.support
                );
            }
            let _ = writeln!(out, "{}", xi.render_text());
            let _ = writeln!(out, "forms: {}", xi.len());
            let _ = writeln!(out, "support bound: {}", xi.support_bound);
            let _ = writeln!(out, "saturated: {}", xi.saturated);
            if let Some(r) = &positivity {
                let _ = writeln!(out, "positivity: {}", if r.ok { "holds" } else { "fails" });
                for (f, k) in &r.witnesses {
                    let via = derivation(f)
                        .map(|d| format!("  from {d}"))
                        .unwrap_or_default();
                    let _ = writeln!(out, "  witness at k={k}: {}{via}", f.render_inequality());
                }
            }
            if let Some(r) = &ample {
                let _ = writeln!(
                    out,
                    "ampleness: {}",
                    if r.ok { "ample" } else { "not ample" }
                );
                for f in &r.witnesses {
                    let via = derivation(f)
                        .map(|d| format!("  from {d}"))
                        .unwrap_or_default();
                    let _ = writeln!(out, "  witness: {}{via}", f.render_inequality());
                }
            }
            print!("{out}");
        }
    }
    Ok(if xi.saturated { OK } else { UNSATURATED })
}

fn docs(set: &BTreeSet<ZVector>, mode: &Mode) -> Vec<ZVectorDoc> {
    set.iter()
        .map(|x| ZVectorDoc {
            coords: x.clone(),
            mode: mode.clone(),
        })
        .collect()
}

pub fn verify(src: &SourceArgs, sys: &SystemArgs, depth: usize, format: Format) -> Outcome {
    reject_dot(format)?;
    let cfg = system_config(src, sys, depth)?;
    let xi = build_system(&cfg, sys)?;
    if !xi.saturated {
        return Err(Error::Unsaturated);
    }
    let z = ZCrystal::new(cfg.cartan.clone(), cfg.iota.clone(), cfg.mode.clone())?;
    let graph = if cfg.parallel() {
        z.bfs_par(depth)
    } else {
        z.bfs(depth)
    };
    let bfs: BTreeSet<ZVector> = graph.nodes().iter().cloned().collect();
    let reach = bfs.iter().map(ZVector::support_max).max().unwrap_or(0);
    if reach > xi.support_bound {
        eprintln!(
            "note: BFS reaches position {reach}, beyond the support bound {}; raise --support",
            xi.support_bound
        );
    }
    let pts = enumerate_lattice_points(&xi, depth)?;
    let only_bfs: BTreeSet<ZVector> = bfs.difference(&pts).cloned().collect();
    let only_system: BTreeSet<ZVector> = pts.difference(&bfs).cloned().collect();
    let equal = only_bfs.is_empty() && only_system.is_empty();
    match format {
        Format::Json => print_json(&json!({
            "equal": equal,
            "depth": depth,
            "bfs": bfs.len(),
            "system": pts.len(),
            "only_bfs": docs(&only_bfs, &cfg.mode),
            "only_system": docs(&only_system, &cfg.mode),
        })),
        _ => {
            println!(
                "{}: {} BFS nodes, {} lattice points, depth {depth}",
                if equal { "equal" } else { "MISMATCH" },
                bfs.len(),
                pts.len()
            );
            for x in &only_bfs {
                println!("  only in BFS: {x}");
            }
            for x in &only_system {
                println!("  only in system: {x}");
            }
        }
    }
    Ok(if equal { OK } else { MISMATCH })
}

pub fn enumerate(src: &SourceArgs, sys: &SystemArgs, depth: usize, format: Format) -> Outcome {
    reject_dot(format)?;
    let cfg = system_config(src, sys, depth)?;
    let xi = build_system(&cfg, sys)?;
    let pts = enumerate_lattice_points(&xi, depth)?;
    match format {
        Format::Json => print_json(&serde_json::to_value(docs(&pts, &cfg.mode))?),
        _ => {
            for x in &pts {
                println!("{x}");
            }
        }
    }
    Ok(OK)
}

fn read_docs(path: &std::path::Path) -> Result<Vec<ZVectorDoc>, Error> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

fn fuzz(args: &BraidArgs) -> Outcome {
    let pairs: Vec<(i64, i64)> = match (args.c1, args.c2) {
        (Some(c1), Some(c2)) => vec![(c1, c2)],
        (None, None) => vec![(0, 0), (1, 1), (1, 2), (2, 1), (1, 3), (3, 1)],
        _ => return Err(Error::Parse("pass both --c1 and --c2, or neither".into())),
    };
    let contexts = pairs
        .iter()
        .map(|&(c1, c2)| BraidContext::from_pair(c1, c2))
        .collect::<Result<Vec<_>, _>>()?;
    let run = |ctx: &BraidContext| fuzz_suite(ctx, args.n, args.seed, args.range);
    let reports: Vec<FuzzReport> = if args.source.jobs > 1 {
        std::thread::scope(|s| {
            let handles: Vec<_> = contexts
                .iter()
                .map(|ctx| s.spawn(move || run(ctx)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("fuzz worker panicked"))
                .collect()
        })
    } else {
        contexts.iter().map(run).collect()
    };
    let total: usize = reports.iter().map(FuzzReport::total_violations).sum();
    match args.format {
        Format::Json => print_json(&serde_json::to_value(&reports)?),
        _ => {
            for r in &reports {
                println!(
                    "(c1,c2)=({},{}) seed {} inputs {}: morphism {}, involution {}, conservation {}, alt-form {}",
                    r.c1,
                    r.c2,
                    r.seed,
                    r.inputs,
                    r.morphism_violations,
                    r.involution_violations,
                    r.conservation_violations,
                    r.altform_violations
                );
                for v in &r.samples {
                    println!("  {v}");
                }
            }
            println!("total violations: {total}");
        }
    }
    Ok(if total == 0 { OK } else { BRAID_VIOLATION })
}

fn braid_context(args: &BraidArgs) -> Result<(BraidContext, Option<config::Resolved>), Error> {
    if args.source.builtin.is_some() || args.source.cartan.is_some() {
        let resolved = config::resolve_cartan(&args.source)?;
        let (i, j) = match (args.i, args.j) {
            (Some(i), Some(j)) => (i, j),
            _ => return Err(Error::Parse("pass --i and --j".into())),
        };
        let ctx = BraidContext::new(&resolved.cartan, i, j)?;
        return Ok((ctx, Some(resolved)));
    }
    match (args.c1, args.c2) {
        (Some(c1), Some(c2)) => Ok((BraidContext::from_pair(c1, c2)?, None)),
        _ => Err(Error::Parse(
            "pass --builtin/--cartan with --i/--j, or --c1/--c2".into(),
        )),
    }
}

/// Transports a set of Z-vectors through the map at `window`. Returns the mapped
/// set and the word it lives on.
fn map_set(
    ctx: &BraidContext,
    seq: &Sequence,
    rank: usize,
    window: &[usize],
    input: &[ZVectorDoc],
) -> Result<(Vec<ZVectorDoc>, Sequence, bool), Error> {
    let top = window.iter().copied().max().unwrap_or(0);
    let len = input
        .iter()
        .map(|d| d.coords.support_max())
        .chain([top, seq.period().len()])
        .max()
        .unwrap_or(1);
    let mut word: Vec<usize> = (1..=len).map(|k| seq.index(k)).collect();
    let mut target = None;
    let mut out: BTreeMap<(ZVector, String), Mode> = BTreeMap::new();
    let mut injective = true;
    for doc in input {
        let t = doc.coords.to_tensor(seq, len, doc.mode.lambda())?;
        let mapped = apply_at(ctx, &t, window)?;
        let seq_out = match &target {
            Some(s) => s,
            None => {
                let letters = mapped.pairs();
                for &p in window {
                    word[p - 1] = letters[len - p].0;
                }
                target.insert(Sequence::new(word.clone(), rank)?)
            }
        };
        let y = ZVector::from_tensor(&mapped, seq_out)?;
        let key = (y, serde_json::to_string(&doc.mode)?);
        injective &= out.insert(key, doc.mode.clone()).is_none();
    }
    let target = match target {
        Some(t) => t,
        None => Sequence::new(word, rank)?,
    };
    let mapped = out
        .into_iter()
        .map(|((coords, _), mode)| ZVectorDoc { coords, mode })
        .collect();
    Ok((mapped, target, injective))
}

pub fn braid(args: &BraidArgs) -> Outcome {
    if args.fuzz {
        return fuzz(args);
    }
    let (ctx, resolved) = braid_context(args)?;

    if let Some(text) = &args.element {
        let t = TensorElem::from_json(&serde_json::from_str(text)?)?;
        let mapped = if args.window.is_empty() {
            phi(&ctx, &t)?
        } else {
            apply_at(&ctx, &t, &args.window)?
        };
        match args.format {
            Format::Json => print_json(&mapped.to_json()),
            _ => println!("{mapped}"),
        }
        return Ok(OK);
    }

    let Some(path) = &args.map_set else {
        return Err(Error::Parse("pass --fuzz, --element or --map-set".into()));
    };
    let Some(resolved) = resolved else {
        return Err(Error::Parse("--map-set needs --builtin or --cartan".into()));
    };
    if args.window.is_empty() {
        return Err(Error::Parse("--map-set needs --window".into()));
    }
    let rank = resolved.cartan.rank();
    let seq = match (&args.source.iota, &resolved.builtin) {
        (Some(text), _) => Sequence::parse(text, rank)?,
        (None, Some(b)) => match &b.longest_word {
            Some(w) => w.sequence(rank)?,
            None => b.iota.clone(),
        },
        (None, None) => Sequence::new((1..=rank).collect(), rank)?,
    };
    let input = read_docs(path)?;
    let (mapped, target, injective) = map_set(&ctx, &seq, rank, &args.window, &input)?;
    eprintln!("mapped word: {target}");
    match args.format {
        Format::Json => print_json(&serde_json::to_value(&mapped)?),
        _ => {
            for d in &mapped {
                println!("{}", d.coords);
            }
        }
    }
    if !injective {
        eprintln!("braid map is not injective on the input set");
        return Ok(BRAID_VIOLATION);
    }
    if let Some(expect) = &args.expect {
        let want: BTreeSet<String> = read_docs(expect)?.iter().map(doc_key).collect();
        let got: BTreeSet<String> = mapped.iter().map(doc_key).collect();
        if want != got {
            eprintln!(
                "mapped set differs from {}: {} missing, {} unexpected",
                expect.display(),
                want.difference(&got).count(),
                got.difference(&want).count()
            );
            return Ok(MISMATCH);
        }
    }
    Ok(OK)
}

fn doc_key(d: &ZVectorDoc) -> String {
    serde_json::to_string(d).expect("documents serialize")
}
