use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use nilpotent_core::derivation::Derivation;
use nilpotent_core::exec::Execution;
use nilpotent_core::groebner::{
    ideal_membership, relation_ideal, subalgebra_membership, GroebnerBasis, Membership, MonomialOrder,
};
use nilpotent_core::kernel::{
    find_variable_slice, kernel_check, kernel_compute, KernelCheckOutcome, KernelComputeResult, KernelConfig, Slice,
};
use nilpotent_core::paperlab::{self, VerificationReport};
use nilpotent_core::parse::{
    parse_laurent, parse_point, parse_polynomial, parse_rational, parse_var_list, print_in_parameter,
};
use nilpotent_core::polycore::{Polynomial, Ring};

#[derive(Parser)]
#[command(
    name = "nilpotent",
    version,
    about = "Exact algebra for locally nilpotent derivations"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Run library loops on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RingArgs {
    /// Comma-separated variables, e.g. "x,s,t,u,v".
    #[arg(long)]
    ring: Option<String>,
    /// Comma-separated positive weights, one per variable.
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Args)]
struct DerivationArgs {
    /// `builtin:D`, `builtin:Delta`, `builtin:DeltaPrime` or a JSON file.
    #[arg(long)]
    derivation: String,
    /// Must list the derivation's variables in order, if given.
    #[arg(long)]
    ring: Option<String>,
}

#[derive(Args)]
struct KernelArgs {
    #[command(flatten)]
    derivation: DerivationArgs,
    /// Localization variable.
    #[arg(long)]
    loc: String,
    /// Slice `num/y^k`; found among the variables when omitted.
    #[arg(long, allow_hyphen_values = true)]
    slice: Option<String>,
    /// Largest power of the localization variable tried when clearing denominators.
    #[arg(long, default_value_t = nilpotent_core::kernel::DEFAULT_LOCALIZATION_BOUND)]
    bound: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a polynomial at a point.
    Eval {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Apply a derivation, or its k-th iterate.
    Derive {
        #[command(flatten)]
        derivation: DerivationArgs,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = 1)]
        times: u32,
    },
    /// The exponential map in a fresh parameter.
    Exp {
        #[command(flatten)]
        derivation: DerivationArgs,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value = "r")]
        param: String,
    },
    /// Move a point along the flow of the derivation.
    Act {
        #[command(flatten)]
        derivation: DerivationArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Flow parameter, a rational.
        #[arg(long, allow_hyphen_values = true)]
        by: String,
    },
    /// Whether the derivation kills a polynomial.
    Invariant {
        #[command(flatten)]
        derivation: DerivationArgs,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Reduced Groebner basis.
    Groebner {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long = "gen", required = true, allow_hyphen_values = true)]
        gens: Vec<String>,
        /// lex, grlex, grevlex or block:<n>.
        #[arg(long, default_value = "grevlex")]
        order: String,
    },
    /// Relations among polynomials, in X1..Xm.
    Relations {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long = "image", required = true, allow_hyphen_values = true)]
        images: Vec<String>,
    },
    /// Ideal or subalgebra membership.
    Member {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long = "gen", allow_hyphen_values = true)]
        gens: Vec<String>,
        /// ideal or subalgebra.
        #[arg(long, default_value = "ideal")]
        kind: String,
    },
    /// One kernel-check pass over candidate invariants.
    KernelCheck {
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long = "cand", required = true, allow_hyphen_values = true)]
        candidates: Vec<String>,
    },
    /// Kernel-check rounds from the slice generators.
    KernelCompute {
        #[command(flatten)]
        kernel: KernelArgs,
        #[arg(long, default_value_t = 3)]
        rounds: usize,
    },
    /// Verification suites for the five-dimensional counterexample.
    Paper {
        #[command(subcommand)]
        command: PaperCommand,
    },
}

#[derive(Subcommand)]
enum PaperCommand {
    /// Replay every symbolic identity.
    Verify,
    /// Randomized point and origin-ideal suites.
    Random {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

struct Output {
    text: String,
    json: Value,
    passed: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            passed: true,
        }
    }
}

fn flag<T, E: std::fmt::Display>(name: &str, r: Result<T, E>) -> Result<T, Usage> {
    r.map_err(|e| Usage(format!("--{name}: {e}")))
}

fn build_ring(args: &RingArgs) -> Result<Arc<Ring>, Usage> {
    let text = args.ring.as_deref().ok_or_else(|| Usage("--ring is required".into()))?;
    let vars = parse_var_list(text);
    match &args.weights {
        None => flag("ring", Ring::new(vars)),
        Some(w) => {
            let weights = w
                .split(',')
                .map(|x| x.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Usage(format!("--weights: {e}")))?;
            flag("weights", Ring::graded(vars, weights))
        }
    }
}

fn load_derivation(args: &DerivationArgs) -> Result<Derivation, Usage> {
    let d = match args.derivation.strip_prefix("builtin:") {
        Some(name) => flag("derivation", paperlab::builtin_derivation(name))?,
        None => {
            let text = flag("derivation", std::fs::read_to_string(&args.derivation))?;
            flag("derivation", Derivation::from_json(&text))?
        }
    };
    if let Some(ring) = &args.ring {
        if parse_var_list(ring) != d.ring().vars() {
            return Err(Usage(format!("--ring: the derivation lives on {}", d.ring())));
        }
    }
    Ok(d)
}

fn poly(name: &str, text: &str, ring: &Arc<Ring>) -> Result<Polynomial, Usage> {
    flag(name, parse_polynomial(text, ring))
}

fn polys(name: &str, texts: &[String], ring: &Arc<Ring>) -> Result<Vec<Polynomial>, Usage> {
    texts.iter().map(|t| poly(name, t, ring)).collect()
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn lines(items: &[String]) -> String {
    if items.is_empty() {
        "0".to_string()
    } else {
        items.join("\n")
    }
}

fn kernel_setup(args: &KernelArgs, exec: Execution) -> Result<(Derivation, Slice, KernelConfig), Usage> {
    let d = load_derivation(&args.derivation)?;
    let slice = match &args.slice {
        Some(text) => {
            let e = flag("slice", parse_laurent(text, d.ring()))?;
            flag("slice", Slice::new(&d, e))?
        }
        None => flag("loc", find_variable_slice(&d, &args.loc))?,
    };
    Ok((
        d,
        slice,
        KernelConfig {
            localization_bound: args.bound,
            execution: exec,
        },
    ))
}

fn membership_text(m: &Membership) -> String {
    match m {
        Membership::Representation(p) => p.to_string(),
        Membership::NotMember => "not a member".to_string(),
    }
}

fn check_output(out: &KernelCheckOutcome, loc: &str) -> Output {
    let mut text = vec![format!("status: {:?}", out.status)];
    for e in &out.sufficiency {
        text.push(match e.cleared_with_power {
            Some(k) => format!("sufficiency: {loc}^{k} * {} is in the algebra", e.generator),
            None => format!("sufficiency: {} not cleared", e.generator),
        });
    }
    for e in &out.transcript {
        text.push(format!(
            "relation {} gives {} -> {}",
            e.relation,
            e.reduced,
            membership_text(&e.verdict)
        ));
    }
    for g in &out.new_elements {
        text.push(format!("new {g}"));
    }
    let json = json!({
        "status": format!("{:?}", out.status),
        "sufficiency": out.sufficiency.iter().map(|e| json!({
            "generator": e.generator.to_string(),
            "cleared_with_power": e.cleared_with_power,
        })).collect::<Vec<_>>(),
        "transcript": out.transcript.iter().map(|e| json!({
            "relation": e.relation.to_string(),
            "reduced": e.reduced.to_string(),
            "verdict": membership_text(&e.verdict),
        })).collect::<Vec<_>>(),
        "new_elements": strings(&out.new_elements),
    });
    Output::new(text.join("\n"), json)
}

fn compute_output(result: &KernelComputeResult) -> Output {
    let mut text = Vec::new();
    let json = match result {
        KernelComputeResult::Stabilized { generators, rounds, .. } => {
            text.push(format!("Stabilized in round {rounds}"));
            text.extend(generators.iter().map(|g| format!("generator {g}")));
            json!({"result": "Stabilized", "rounds": rounds, "generators": strings(generators)})
        }
        KernelComputeResult::NonStabilized { counts, candidates, .. } => {
            let shown: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
            text.push(format!("NonStabilized after {} rounds", counts.len() - 1));
            text.push(format!("counts: {}", shown.join(" ")));
            json!({"result": "NonStabilized", "counts": counts, "candidates": strings(candidates)})
        }
    };
    for r in result.history() {
        text.push(format!(
            "round {} ({} candidates): {:?}",
            r.round, r.candidates, r.status
        ));
        text.extend(r.adjoined.iter().map(|g| format!("  adjoined {g}")));
    }
    let history: Vec<Value> = result
        .history()
        .iter()
        .map(|r| json!({"round": r.round, "candidates": r.candidates, "status": format!("{:?}", r.status), "adjoined": strings(&r.adjoined)}))
        .collect();
    let mut json = json;
    json["history"] = Value::Array(history);
    Output::new(text.join("\n"), json)
}

fn report_output(report: VerificationReport) -> Output {
    let passed = report.all_passed();
    let json = serde_json::to_value(&report).expect("plain data");
    Output {
        text: report.to_string().trim_end().to_string(),
        json,
        passed,
    }
}

fn run(cli: Cli) -> Result<Output, Usage> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    Ok(match cli.command {
        Command::Eval { ring, poly: p, point } => {
            let ring = build_ring(&ring)?;
            let f = poly("poly", &p, &ring)?;
            let pt = flag("point", parse_point(&point, &ring))?;
            let value = f.evaluate(&pt)?;
            Output::new(value.to_string(), json!({"value": value.to_string()}))
        }
        Command::Derive {
            derivation,
            poly: p,
            times,
        } => {
            let d = load_derivation(&derivation)?;
            let f = poly("poly", &p, d.ring())?;
            let image = d.apply_iter(&f, times)?;
            Output::new(image.to_string(), json!({"result": image.to_string()}))
        }
        Command::Exp {
            derivation,
            poly: p,
            param,
        } => {
            let d = load_derivation(&derivation)?;
            let f = poly("poly", &p, d.ring())?;
            let mu = flag("param", d.exponential(&f, &param))?;
            let text = print_in_parameter(&mu, &param)?;
            Output::new(text.clone(), json!({"result": text}))
        }
        Command::Act { derivation, point, by } => {
            let d = load_derivation(&derivation)?;
            let pt = flag("point", parse_point(&point, d.ring()))?;
            let a = flag("by", parse_rational(&by))?;
            let q = d.orbit_point(&a, &pt)?;
            Output::new(
                q.to_string(),
                json!({"point": q.coordinates().iter().map(|c| c.to_string()).collect::<Vec<_>>()}),
            )
        }
        Command::Invariant { derivation, poly: p } => {
            let d = load_derivation(&derivation)?;
            let f = poly("poly", &p, d.ring())?;
            let image = d.apply(&f)?;
            let text = if image.is_zero() {
                "invariant".to_string()
            } else {
                format!("not invariant: d(f) = {image}")
            };
            Output::new(text, json!({"invariant": image.is_zero(), "image": image.to_string()}))
        }
        Command::Groebner { ring, gens, order } => {
            let ring = build_ring(&ring)?;
            let order: MonomialOrder = flag("order", order.parse::<MonomialOrder>())?;
            let gb = flag(
                "order",
                GroebnerBasis::compute(&ring, &polys("gen", &gens, &ring)?, order),
            )?;
            let out = strings(&gb.generators());
            Output::new(lines(&out), json!({"order": order.to_string(), "basis": out}))
        }
        Command::Relations { ring, images } => {
            let ring = build_ring(&ring)?;
            let rel = relation_ideal(&polys("image", &images, &ring)?)?;
            let out = strings(rel.generators());
            Output::new(lines(&out), json!({"relations": out}))
        }
        Command::Member {
            ring,
            poly: p,
            gens,
            kind,
        } => {
            let ring = build_ring(&ring)?;
            let f = poly("poly", &p, &ring)?;
            let gens = polys("gen", &gens, &ring)?;
            match kind.as_str() {
                "ideal" => {
                    let inside = ideal_membership(&f, &gens)?;
                    Output::new(inside.to_string(), json!({"member": inside}))
                }
                "subalgebra" => {
                    let m = subalgebra_membership(&f, &gens)?;
                    let rep = match &m {
                        Membership::Representation(p) => Value::String(p.to_string()),
                        Membership::NotMember => Value::Null,
                    };
                    Output::new(
                        membership_text(&m),
                        json!({"member": m.is_member(), "representation": rep}),
                    )
                }
                other => return Err(Usage(format!("--kind: expected ideal or subalgebra, got `{other}`"))),
            }
        }
        Command::KernelCheck { kernel, candidates } => {
            let (d, slice, config) = kernel_setup(&kernel, exec)?;
            let cands = polys("cand", &candidates, d.ring())?;
            check_output(&kernel_check(&d, &cands, &kernel.loc, &slice, &config)?, &kernel.loc)
        }
        Command::KernelCompute { kernel, rounds } => {
            let (d, slice, config) = kernel_setup(&kernel, exec)?;
            compute_output(&kernel_compute(&d, &kernel.loc, &slice, rounds, &config)?)
        }
        Command::Paper {
            command: PaperCommand::Verify,
        } => report_output(paperlab::verify_paper(&paperlab::builtin_context())),
        Command::Paper {
            command: PaperCommand::Random { seed, samples },
        } => {
            let ctx = paperlab::builtin_context();
            let mut report = flag("samples", paperlab::random_suite(&ctx, seed, samples, exec))?;
            report
                .checks
                .extend(paperlab::origin_ideal_suite(&ctx, seed, samples, exec)?.checks);
            report_output(report)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            let body = if json {
                serde_json::to_string_pretty(&out.json).expect("json value")
            } else {
                out.text
            };
            // a closed pipe on stdout is not an error worth reporting
            let _ = writeln!(std::io::stdout(), "{body}");
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
