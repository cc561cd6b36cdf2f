//! Subcommand implementations: thin orchestration over `sdwc_core`
//! evaluators, with human-readable reports on stdout (6 decimals) and
//! full-precision CSV/JSON for files.

use crate::output::{emit, RunManifest};
use crate::{
    BinaryArgs, CapacityCmd, Command, Format, GaussianArgs, OptimizeArgs, RegimeDiscreteArgs,
    RegimeGaussianArgs, RegimeMapCmd, RegionArgs, Scheme, SimulateArgs,
};
use sdwc_core::{
    binary_capacity, binary_entropy, binary_regime_thresholds, classify_state_rate, entropy,
    epi_converse_bound, gpc_perfect_secrecy, gpc_region, gsdwc_capacity, optimal_lambdas,
    optimize_secrecy, optimize_secrecy_trace, regime_boundary, regime_check, run_experiment,
    sdpc_auxiliary, spc_perfect_secrecy, spc_region, sweep_alpha, AuxiliaryPolicy, DiscreteSDWC,
    GaussianSDWC, ProbVector, SearchSpec, SimConfig,
};
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] sdwc_core::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for validation/domain problems (including I/O), 3 for resource caps.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => e.exit_code(),
            CliError::Io { .. } => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn io_at(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Capacity(CapacityCmd::Binary(args)) => capacity_binary(&args),
        Command::Capacity(CapacityCmd::Gaussian(args)) => capacity_gaussian(&args),
        Command::Region(args) => region(&args),
        Command::RegimeMap(RegimeMapCmd::Gaussian(args)) => regime_map_gaussian(&args),
        Command::RegimeMap(RegimeMapCmd::Discrete(args)) => regime_map_discrete(&args),
        Command::Optimize(args) => optimize(&args),
        Command::Simulate(args) => simulate(&args),
    }
}

fn capacity_binary(args: &BinaryArgs) -> Result<()> {
    let ch = DiscreteSDWC::binary(args.n1, args.n2, args.q)?;
    let cap = binary_capacity(args.n1, args.n2)?;
    let pol = AuxiliaryPolicy::v_equals_x(2, &ProbVector::bernoulli(0.5)?)?;
    let (t_spc, t_gpc) = binary_regime_thresholds(&ch, &pol)?;
    println!(
        "binary SD-WC: N1={} N2={} Q={}",
        args.n1, args.n2, args.q
    );
    println!("secrecy capacity   : {cap:.6} bits/use");
    println!("attaining input    : P(X=1) = 0.500000 after XOR state precoding");
    println!("SPC threshold      : {t_spc:.6} bits/use (state rates ≤ this decode the state)");
    println!("GPC threshold      : {t_gpc:.6} bits/use (state rates ≥ this bin against it)");
    Ok(())
}

fn capacity_gaussian(args: &GaussianArgs) -> Result<()> {
    let ch = GaussianSDWC::new(args.p, args.q, args.n1, args.n2)?;
    let cap = gsdwc_capacity(&ch);
    let boundary = regime_boundary(&ch);
    let hat = optimal_lambdas(&ch, 1.0, 0.0)?;
    let aux = sdpc_auxiliary(&ch);
    println!(
        "Gaussian SD-WC: P={} Q={} N1={} N2={}",
        args.p, args.q, args.n1, args.n2
    );
    println!("secrecy capacity   : {cap:.6} bits/use");
    match epi_converse_bound(&ch) {
        Ok(bound) => println!("converse bound     : {bound:.6} bits/use"),
        Err(_) => println!("converse bound     : n/a (N2 < N1, degradation reversed)"),
    }
    println!("regime boundary    : {boundary:.6} bits/use of state rate");
    println!(
        "attaining scheme   : α = 1.000000, β = 0.000000, λ₁ = {:.6}, λ₂ = {:.6}",
        hat.lambda1, hat.lambda2
    );
    println!("auxiliaries        : {aux}");

    if let Some(out) = &args.sweep_out {
        let rows = sweep_alpha(&ch, args.steps)?;
        let mut csv =
            String::from("p,q,n1,n2,alpha,beta,lambda1,lambda2,re1,re2,capacity,boundary\n");
        for r in &rows {
            writeln!(
                csv,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                args.p,
                args.q,
                args.n1,
                args.n2,
                r.alpha,
                r.beta,
                r.lambda1,
                r.lambda2,
                r.re1,
                r.re2,
                cap,
                boundary
            )
            .expect("string write");
        }
        let manifest = RunManifest::new(
            "capacity gaussian",
            None,
            json!({
                "p": args.p, "q": args.q, "n1": args.n1, "n2": args.n2,
                "steps": args.steps,
            }),
        );
        emit(Some(out), &csv, || manifest).map_err(io_at(out))?;
        println!("α-sweep ({} rows) → {}", rows.len(), out.display());
    }
    Ok(())
}

fn region(args: &RegionArgs) -> Result<()> {
    let channel_text = read_file(&args.channel)?;
    let policy_text = read_file(&args.policies)?;
    let ch = DiscreteSDWC::from_json_str(&channel_text)?;
    let pols = AuxiliaryPolicy::list_from_json_str(&policy_text)?;

    let mut csv = String::new();
    match args.scheme {
        Scheme::Gpc => {
            csv.push_str("policy,r1,r,re,perfect_secrecy\n");
            for (i, pol) in pols.iter().enumerate() {
                let b = gpc_region(&ch, pol)?;
                let ps = gpc_perfect_secrecy(&ch, pol)?;
                writeln!(csv, "{i},{},{},{},{ps}", b.r1, b.r, b.re).expect("string write");
            }
        }
        Scheme::Spc => {
            csv.push_str("policy,r,re,perfect_secrecy\n");
            for (i, pol) in pols.iter().enumerate() {
                let b = spc_region(&ch, pol)?;
                let ps = spc_perfect_secrecy(&ch, pol)?;
                writeln!(csv, "{i},{},{},{ps}", b.r, b.re).expect("string write");
            }
        }
    }

    let scheme = match args.scheme {
        Scheme::Gpc => "gpc",
        Scheme::Spc => "spc",
    };
    let manifest = || {
        RunManifest::new(
            "region",
            None,
            json!({
                "scheme": scheme,
                "channel_doc": serde_json::from_str::<Value>(&channel_text).expect("validated"),
                "policies_doc": serde_json::from_str::<Value>(&policy_text).expect("validated"),
            }),
        )
    };
    if let Some(path) = emit(args.out.as_deref(), &csv, manifest)
        .map_err(|e| io_at(args.out.as_deref().unwrap_or(Path::new("-")))(e))?
    {
        println!("{} region ({} policies) → {}", scheme, pols.len(), path.display());
    }
    Ok(())
}

fn regime_map_gaussian(args: &RegimeGaussianArgs) -> Result<()> {
    let ch = GaussianSDWC::new(args.p, args.q, args.n1, args.n2)?;
    let boundary = regime_boundary(&ch);
    let default_max = if boundary > 0.0 { 2.0 * boundary } else { 1.0 };
    let max_rs = args.max_rs.unwrap_or(default_max);

    // A plain grid plus the exact boundary point, so the SPC side of the
    // tie is visible in the output.
    let mut grid: Vec<f64> = (0..=args.points)
        .map(|i| max_rs * i as f64 / args.points as f64)
        .collect();
    if boundary <= max_rs {
        grid.push(boundary);
    }
    grid.sort_by(|a, b| a.partial_cmp(b).expect("finite rates"));
    grid.dedup();

    let mut csv = String::from("r_s,regime,boundary\n");
    for &r_s in &grid {
        let regime = classify_state_rate(&ch, r_s)?;
        writeln!(csv, "{r_s},{regime},{boundary}").expect("string write");
    }
    let manifest = || {
        RunManifest::new(
            "regime-map gaussian",
            None,
            json!({
                "p": args.p, "q": args.q, "n1": args.n1, "n2": args.n2,
                "points": args.points, "max_rs": max_rs,
            }),
        )
    };
    if let Some(path) = emit(args.out.as_deref(), &csv, manifest)
        .map_err(|e| io_at(args.out.as_deref().unwrap_or(Path::new("-")))(e))?
    {
        println!(
            "regime map ({} rows, boundary {boundary:.6}) → {}",
            grid.len(),
            path.display()
        );
    }
    Ok(())
}

fn regime_map_discrete(args: &RegimeDiscreteArgs) -> Result<()> {
    let channel_text = read_file(&args.channel)?;
    let policy_text = read_file(&args.policy)?;
    let ch = DiscreteSDWC::from_json_str(&channel_text)?;
    let pol = AuxiliaryPolicy::from_json_str(&policy_text)?;
    let h_s = entropy(ch.state_prior());

    let mut csv = String::from("r_s,regime\n");
    for i in 0..=args.points {
        let r_s = h_s * i as f64 / args.points as f64;
        let regime = regime_check(&ch, &pol, r_s)?;
        writeln!(csv, "{r_s},{regime}").expect("string write");
    }
    let manifest = || {
        RunManifest::new(
            "regime-map discrete",
            None,
            json!({
                "points": args.points,
                "channel_doc": serde_json::from_str::<Value>(&channel_text).expect("validated"),
                "policy_doc": serde_json::from_str::<Value>(&policy_text).expect("validated"),
            }),
        )
    };
    if let Some(path) = emit(args.out.as_deref(), &csv, manifest)
        .map_err(|e| io_at(args.out.as_deref().unwrap_or(Path::new("-")))(e))?
    {
        println!(
            "regime map ({} rows, H(S) = {h_s:.6}) → {}",
            args.points + 1,
            path.display()
        );
    }
    Ok(())
}

fn optimize(args: &OptimizeArgs) -> Result<()> {
    let channel_text = read_file(&args.channel)?;
    let ch = DiscreteSDWC::from_json_str(&channel_text)?;
    let spec = SearchSpec {
        card_u: args.card_u,
        card_v: args.card_v,
        grid_steps: args.grid_steps,
        deterministic_x: args.deterministic_x,
    };

    let result = if let Some(out) = &args.trace {
        let mut csv = String::from("policy_id,objective\n");
        let result = optimize_secrecy_trace(&ch, &spec, |id, value| {
            writeln!(csv, "{id},{value}").expect("string write");
        })?;
        let manifest = RunManifest::new(
            "optimize",
            None,
            json!({
                "card_u": args.card_u, "card_v": args.card_v,
                "grid_steps": args.grid_steps, "deterministic_x": args.deterministic_x,
                "channel_doc": serde_json::from_str::<Value>(&channel_text).expect("validated"),
            }),
        );
        emit(Some(out), &csv, || manifest).map_err(io_at(out))?;
        println!("trace → {}", out.display());
        result
    } else {
        optimize_secrecy(&ch, &spec)?
    };

    println!(
        "searched {} policies (U×V = {}×{}, {} grid steps{})",
        result.enumerated,
        args.card_u,
        args.card_v,
        args.grid_steps,
        if args.deterministic_x {
            ", deterministic X"
        } else {
            ""
        }
    );
    println!("best objective     : {:.6} bits/use", result.value);
    println!("best policy id     : {}", result.policy_id);
    for (s, px) in result.policy.induced_input()?.iter().enumerate() {
        let cells: Vec<String> = px.probs().iter().map(|p| format!("{p:.6}")).collect();
        println!("induced P(x|s={s})  : [{}]", cells.join(", "));
    }
    Ok(())
}

#[derive(Serialize)]
struct SimRecord {
    n: usize,
    rate_r: f64,
    rate_rand: f64,
    n1: f64,
    n2: f64,
    q: f64,
    seed: u64,
    p_e: f64,
    equivocation_rate: f64,
    secrecy_ratio: f64,
}

fn simulate(args: &SimulateArgs) -> Result<()> {
    // Default randomization rate: just below the eavesdropper's effective
    // capacity, so the randomization layer soaks up most of its channel.
    let rate_rand = match args.rate_rand {
        Some(r) => r,
        None => (1.0 - binary_entropy(args.n2)? - 0.05).max(0.0),
    };

    let mut records = Vec::with_capacity(args.seeds as usize);
    for seed in args.seed..args.seed + args.seeds {
        let cfg = SimConfig {
            n: args.n,
            rate_r: args.rate_r,
            rate_rand,
            n1: args.n1,
            n2: args.n2,
            q: args.q,
            trials: args.trials,
            seed,
        };
        let res = run_experiment(&cfg)?;
        records.push(SimRecord {
            n: args.n,
            rate_r: args.rate_r,
            rate_rand,
            n1: args.n1,
            n2: args.n2,
            q: args.q,
            seed,
            p_e: res.p_e,
            equivocation_rate: res.equivocation_rate,
            secrecy_ratio: res.secrecy_ratio,
        });
    }

    let contents = match args.format {
        Format::Csv => {
            let mut csv = String::from(
                "n,rate_r,rate_rand,n1,n2,q,seed,p_e,equivocation_rate,secrecy_ratio\n",
            );
            for r in &records {
                writeln!(
                    csv,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.n,
                    r.rate_r,
                    r.rate_rand,
                    r.n1,
                    r.n2,
                    r.q,
                    r.seed,
                    r.p_e,
                    r.equivocation_rate,
                    r.secrecy_ratio
                )
                .expect("string write");
            }
            csv
        }
        Format::Json => {
            serde_json::to_string_pretty(&records).expect("records serialize") + "\n"
        }
    };

    let manifest = || {
        RunManifest::new(
            "simulate",
            Some(args.seed),
            json!({
                "n": args.n, "rate_r": args.rate_r, "rate_rand": rate_rand,
                "n1": args.n1, "n2": args.n2, "q": args.q,
                "trials": args.trials, "seed": args.seed, "seeds": args.seeds,
                "format": match args.format { Format::Csv => "csv", Format::Json => "json" },
            }),
        )
    };
    if let Some(path) = emit(args.out.as_deref(), &contents, manifest)
        .map_err(|e| io_at(args.out.as_deref().unwrap_or(Path::new("-")))(e))?
    {
        println!("{} runs → {}", records.len(), path.display());
    }
    Ok(())
}
