use anyhow::Context;
use clap::{Parser, Subcommand};
use num_rational::Rational64;
use rbymatch::curve::{check_injective, find_crossing_pair, imbalance_curve, intersecting_pairs, LatticePoint};
use rbymatch::cycle::{solve_fractional, solve_path_or_cycle};
use rbymatch::lp::{build_lp, solve_lp};
use rbymatch::oracle::{conforming_optimum_size, count_matchings, exact_optimum};
use rbymatch::{
    generate_instance, parse_instance, solve, verify, CycleOrPath, Error, GenMode, GenSpec, InstanceFile, Matching,
    OracleCap, SolveOutcome, SolveReport,
};
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rbymatch", version, about = "Matchings with exact red and bounded blue counts")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance file through the LP and face pipeline.
    Solve {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Brute-force optimum for a small instance.
    Oracle {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Solve a single even cycle (or path with --path) given as a color string.
    Cycle {
        colors: String,
        #[arg(long)]
        kr: i64,
        #[arg(long)]
        kb: i64,
        #[arg(long)]
        path: bool,
        #[arg(long)]
        json: bool,
    },
    /// Cycle with a fractional blue target such as 5/2.
    Fractional {
        colors: String,
        #[arg(long)]
        kr: i64,
        #[arg(long)]
        kb: String,
        #[arg(long)]
        json: bool,
    },
    /// Inspect the imbalance curve of a cycle.
    Curve {
        colors: String,
        #[arg(long)]
        kr: i64,
        #[arg(long)]
        kb: i64,
        #[arg(long)]
        points: bool,
        #[arg(long)]
        pairs: bool,
        #[arg(long)]
        json: bool,
    },
    /// Emit a seeded random instance.
    Gen {
        #[arg(long, default_value = "feasible_profile")]
        mode: String,
        #[arg(long)]
        nodes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edge probability as a fraction, e.g. 1/3.
        #[arg(long, default_value = "1/2")]
        density: String,
    },
    /// Check a proposed matching against an instance.
    Verify {
        file: String,
        /// Comma separated edge ids.
        #[arg(long)]
        matching: String,
    },
}

/// Failure carrying the process exit code.
struct Fail {
    code: u8,
    msg: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded(_) => 4,
            Error::Internal(_) => 5,
            _ => 3,
        };
        Fail { code, msg: e.to_string() }
    }
}

impl From<anyhow::Error> for Fail {
    fn from(e: anyhow::Error) -> Self {
        Fail { code: 3, msg: format!("{e:#}") }
    }
}

type Out = Result<u8, Fail>;

fn load(file: &str) -> Result<InstanceFile, Fail> {
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {file}"))?;
    Ok(parse_instance(&text)?)
}

fn parse_q(s: &str) -> Result<Rational64, Fail> {
    s.trim().parse::<Rational64>().map_err(|_| Fail { code: 3, msg: format!("bad fraction '{s}'") })
}

fn ids(m: &Matching) -> Vec<usize> {
    m.ids().to_vec()
}

fn join(v: &[usize]) -> String {
    v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

fn report_json(r: &SolveReport) -> Value {
    json!({
        "status": "solved",
        "matching": ids(&r.matching),
        "size": r.matching.len(),
        "profile": {"red": r.profile.red, "blue": r.profile.blue, "yellow": r.profile.yellow},
        "alpha_star": format!("{}/{}", r.alpha_star.numer(), r.alpha_star.denom()),
        "face_class": r.face_class.to_string(),
        "projected_dim": r.projected_dim,
        "guarantee": {
            "size_ok": r.guarantee_ok.size_ok,
            "red_exact": r.guarantee_ok.red_exact,
            "blue_ok": r.guarantee_ok.blue_ok,
        },
        "trace": r.trace,
    })
}

fn cmd_solve(file: &str, as_json: bool) -> Out {
    let f = load(file)?;
    match solve(&f.graph, f.k_red, f.k_blue)? {
        SolveOutcome::Infeasible => {
            if as_json {
                println!("{}", json!({"status": "infeasible"}));
            } else {
                println!("infeasible: no fractional matching meets the requirement");
            }
            Ok(2)
        }
        SolveOutcome::Solved(r) => {
            if as_json {
                println!("{}", serde_json::to_string_pretty(&report_json(&r)).unwrap());
            } else {
                println!("matching: {}", join(&ids(&r.matching)));
                println!("size: {}", r.matching.len());
                println!("profile: red={} blue={} yellow={}", r.profile.red, r.profile.blue, r.profile.yellow);
                println!("alpha*: {}", r.alpha_star);
                println!("face: {} (projected dimension {})", r.face_class, r.projected_dim);
                let g = &r.guarantee_ok;
                println!("guarantee: size_ok={} red_exact={} blue_ok={}", g.size_ok, g.red_exact, g.blue_ok);
                for line in &r.trace {
                    println!("  {line}");
                }
            }
            Ok(if r.guarantee_ok.all() { 0 } else { 5 })
        }
    }
}

fn cmd_oracle(file: &str, as_json: bool) -> Out {
    let f = load(file)?;
    let cap = OracleCap::default();
    let best = exact_optimum(&f.graph, f.k_red, f.k_blue, cap)?;
    let conforming = conforming_optimum_size(&f.graph, f.k_red, f.k_blue, cap)?;
    let total = count_matchings(&f.graph, cap)?;
    if as_json {
        let m = best.as_ref().map(ids);
        println!(
            "{}",
            json!({"exact_optimum": m, "exact_size": best.as_ref().map(|b| b.len()),
                   "conforming_size": conforming, "matchings": total})
        );
    } else {
        match &best {
            Some(m) => println!("exact optimum: {} (size {})", join(&ids(m)), m.len()),
            None => println!("exact optimum: none"),
        }
        match conforming {
            Some(s) => println!("best with blue in {{kB-1, kB}}: size {s}"),
            None => println!("best with blue in {{kB-1, kB}}: none"),
        }
        println!("matchings enumerated: {total}");
    }
    Ok(if best.is_some() { 0 } else { 2 })
}

fn shape(colors: &str, path: bool) -> Result<CycleOrPath, Fail> {
    Ok(if path { CycleOrPath::parse_path(colors)? } else { CycleOrPath::parse_cycle(colors)? })
}

fn print_positions(c: &CycleOrPath, m: &Matching, as_json: bool) {
    let p = c.profile_of(m);
    if as_json {
        println!(
            "{}",
            json!({"matching": ids(m), "size": m.len(),
                   "profile": {"red": p.red, "blue": p.blue, "yellow": p.yellow}})
        );
    } else {
        println!("positions: {}", join(&ids(m)));
        println!("size: {}", m.len());
        println!("profile: red={} blue={} yellow={}", p.red, p.blue, p.yellow);
    }
}

fn cmd_cycle(colors: &str, kr: i64, kb: i64, path: bool, as_json: bool) -> Out {
    let c = shape(colors, path)?;
    let m = solve_path_or_cycle(&c, kr, kb)?;
    print_positions(&c, &m, as_json);
    Ok(0)
}

fn cmd_fractional(colors: &str, kr: i64, kb: &str, as_json: bool) -> Out {
    let c = CycleOrPath::parse_cycle(colors)?;
    let m = solve_fractional(&c, kr, parse_q(kb)?)?;
    print_positions(&c, &m, as_json);
    Ok(0)
}

fn cmd_curve(colors: &str, kr: i64, kb: i64, points: bool, pairs: bool, as_json: bool) -> Out {
    let c = CycleOrPath::parse_cycle(colors)?;
    let curve = imbalance_curve(&c)?;
    let p0 = c.m0_profile().point();
    let q = LatticePoint::new(kr - p0.0, kb - p0.1);
    let delta = curve.period_shift();
    let injective = check_injective(&curve);
    let pts: Vec<(i64, i64)> = curve.points().iter().map(|p| (p.x, p.y)).collect();
    let found = if pairs { Some(intersecting_pairs(&curve, q)?) } else { None };
    let crossing = if pairs && injective { Some(find_crossing_pair(&curve, q)?) } else { None };
    if as_json {
        let mut v = json!({"period_length": curve.period_length(), "shift": [delta.x, delta.y],
                           "injective": injective, "q": [q.x, q.y]});
        if points {
            v["points"] = json!(pts);
        }
        if let Some(f) = &found {
            v["pairs"] = json!(f.iter().map(|&(u, v)| json!({"u": u, "v": v})).collect::<Vec<_>>());
        }
        if let Some(cp) = &crossing {
            v["crossing"] = json!({"u": cp.u, "v": cp.v, "kind": format!("{:?}", cp.kind),
                                   "overlap_length": cp.overlap_length});
        }
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("period length: {}", curve.period_length());
        println!("shift: ({}, {})", delta.x, delta.y);
        println!("injective: {injective}");
        println!("q: ({}, {})", q.x, q.y);
        if points {
            for (i, (x, y)) in pts.iter().enumerate() {
                println!("d({i}) = ({x}, {y})");
            }
        }
        if let Some(f) = &found {
            for (u, v) in f {
                println!("pair u={u} v={v}");
            }
        }
        if let Some(cp) = &crossing {
            println!("crossing u={} v={} {:?} overlap={}", cp.u, cp.v, cp.kind, cp.overlap_length);
        }
    }
    Ok(0)
}

fn cmd_gen(mode: &str, nodes: usize, seed: u64, density: &str) -> Out {
    let d = parse_q(density)?;
    if *d.numer() < 0 || *d.denom() <= 0 {
        return Err(Fail { code: 3, msg: format!("bad density '{density}'") });
    }
    let mut spec = GenSpec::new(mode.parse::<GenMode>()?, nodes, seed);
    spec.edge_density = (*d.numer() as u64, *d.denom() as u64);
    print!("{}", generate_instance(&spec)?.serialize());
    Ok(0)
}

fn cmd_verify(file: &str, matching: &str) -> Out {
    let f = load(file)?;
    let m: Vec<usize> = matching
        .split(|ch: char| ch == ',' || ch.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| Fail { code: 3, msg: format!("bad edge id '{s}'") }))
        .collect::<Result<_, _>>()?;
    let model = build_lp(&f.graph, f.k_red, f.k_blue, OracleCap::default())?;
    let Some(sol) = solve_lp(&model)? else {
        println!("infeasible: no fractional matching meets the requirement");
        return Ok(2);
    };
    if verify(&f.graph, f.k_red, f.k_blue, &m, &sol.objective) {
        println!("PASS");
        Ok(0)
    } else {
        println!("FAIL");
        Ok(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.cmd {
        Cmd::Solve { file, json } => cmd_solve(file, *json),
        Cmd::Oracle { file, json } => cmd_oracle(file, *json),
        Cmd::Cycle { colors, kr, kb, path, json } => cmd_cycle(colors, *kr, *kb, *path, *json),
        Cmd::Fractional { colors, kr, kb, json } => cmd_fractional(colors, *kr, kb, *json),
        Cmd::Curve { colors, kr, kb, points, pairs, json } => cmd_curve(colors, *kr, *kb, *points, *pairs, *json),
        Cmd::Gen { mode, nodes, seed, density } => cmd_gen(mode, *nodes, *seed, density),
        Cmd::Verify { file, matching } => cmd_verify(file, matching),
    };
    match out {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
