use std::fmt::Write;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use tutte_core::arrangement::Arrangement;
use tutte_core::egf::{self, DEFAULT_ORDER};
use tutte_core::families::Family;
use tutte_core::finite_field::{self, ReducedArrangement};
use tutte_core::format::{to_json, JsonPoly};
use tutte_core::interpolation::{self, Evaluator};
use tutte_core::poly::vars::T;
use tutte_core::poly::{self, Characteristic, Coboundary, Tutte, UniPoly};
use tutte_core::rational::Rational;
use tutte_core::subset::{self, DEFAULT_MAX_HYPERPLANES};
use tutte_core::symmetric::{self, SymmetricModel};

use crate::input::InputArgs;

/// Exact Tutte, coboundary and characteristic polynomials of hyperplane arrangements.
#[derive(Parser, Debug)]
#[command(name = "tutte", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub input: InputArgs,
    /// Emit polynomials as JSON
    #[arg(long, global = true)]
    pub json: bool,
    /// Skip certification of user-chosen primes
    #[arg(long = "unsafe", global = true)]
    pub skip_certification: bool,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Primes for interpolation, comma separated (default: smallest certified primes >= 5)
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Vec<u64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tutte polynomial T(x, y)
    Tutte,
    /// Coboundary polynomial, symbolic in q or at one prime
    Coboundary {
        #[arg(long, conflicts_with = "symbolic")]
        q: Option<u64>,
        #[arg(long)]
        symbolic: bool,
    },
    /// Characteristic polynomial, symbolic in q or at one prime
    Characteristic {
        #[arg(long)]
        q: Option<u64>,
    },
    /// Number of regions and of bounded regions
    Regions,
    /// Truncated EGF of a symmetric family at a prime
    Egf {
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        #[arg(long)]
        q: u64,
    },
    /// Compare the subset, point-counting and closed-form engines at a prime
    Verify {
        #[arg(long)]
        q: Option<u64>,
    },
    /// Representative equations, their solutions mod q and the indice partition
    Solutions {
        #[arg(long)]
        q: u64,
    },
}

pub enum Outcome {
    Ok(String),
    Mismatch(String),
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let out = match &cli.command {
        Command::Egf { order, q } => egf_command(cli, *order, *q)?,
        command => {
            let arr = cli.input.load()?;
            match command {
                Command::Tutte => render_bi(cli, &tutte(cli, &arr)?),
                Command::Coboundary { q: Some(q), .. } => render_uni(cli, &coboundary_at(cli, &arr, *q)?),
                Command::Coboundary { q: None, .. } => render_bi(cli, &coboundary_symbolic(cli, &arr)?),
                Command::Characteristic { q: Some(q) } => {
                    let value = characteristic_at(cli, &arr, *q)?;
                    if cli.json {
                        format!("{}\n", serde_json::json!({ "q": q, "value": value.to_string() }))
                    } else {
                        format!("{value}\n")
                    }
                }
                Command::Characteristic { q: None } => render_uni(cli, &characteristic(cli, &arr)?),
                Command::Regions => regions(cli, &arr)?,
                Command::Verify { q } => return verify(&arr, *q),
                Command::Solutions { q } => solutions(&arr, *q)?,
                Command::Egf { .. } => unreachable!("handled above"),
            }
        }
    };
    Ok(Outcome::Ok(out))
}

fn render_bi<V: tutte_core::poly::vars::VariablePair>(cli: &Cli, p: &tutte_core::poly::BiPoly<V>) -> String {
    if cli.json {
        format!("{}\n", to_json(p))
    } else {
        format!("{p}\n")
    }
}

fn render_uni<V: tutte_core::poly::vars::Variable>(cli: &Cli, p: &UniPoly<V>) -> String {
    if cli.json {
        format!("{}\n", to_json(p))
    } else {
        format!("{p}\n")
    }
}

fn primes_for(cli: &Cli, arr: &Arrangement, needed: usize) -> Result<Vec<u64>> {
    if cli.primes.is_empty() {
        return interpolation::default_primes(arr, needed).context("fq-engine");
    }
    if !cli.skip_certification {
        for &q in &cli.primes {
            if !finite_field::certify_prime(arr, q).context("fq-engine")? {
                bail!("fq-engine: reduction mod {q} is not certified");
            }
        }
    }
    Ok(cli.primes.clone())
}

fn evaluator(arr: &Arrangement, primes: &[u64]) -> Evaluator {
    let applicable = primes.iter().all(|&q| SymmetricModel::from_arrangement(arr, q).is_ok());
    if applicable {
        Evaluator::ClosedForm
    } else {
        Evaluator::PointCount
    }
}

fn coboundary_symbolic(cli: &Cli, arr: &Arrangement) -> Result<Coboundary> {
    let primes = primes_for(cli, arr, arr.rank() + 1)?;
    interpolation::recover_coboundary(arr, &primes, evaluator(arr, &primes)).context("q-interpolation")
}

fn tutte(cli: &Cli, arr: &Arrangement) -> Result<Tutte> {
    if arr.len() <= DEFAULT_MAX_HYPERPLANES {
        return subset::tutte_by_definition(arr).context("subset-engine");
    }
    poly::tutte_from_coboundary(&coboundary_symbolic(cli, arr)?, arr.rank()).context("exact-poly")
}

fn characteristic(cli: &Cli, arr: &Arrangement) -> Result<Characteristic> {
    Ok(poly::characteristic_from_coboundary(&coboundary_symbolic(cli, arr)?, arr.dim(), arr.rank()))
}

fn coboundary_at(cli: &Cli, arr: &Arrangement, q: u64) -> Result<UniPoly<T>> {
    if cli.skip_certification {
        finite_field::coboundary_at_prime_unchecked(arr, q)
    } else {
        finite_field::coboundary_at_prime(arr, q)
    }
    .context("fq-engine")
}

fn characteristic_at(cli: &Cli, arr: &Arrangement, q: u64) -> Result<BigInt> {
    if cli.skip_certification {
        let reduced = ReducedArrangement::new(arr, q).context("fq-engine")?;
        Ok(BigInt::from(reduced.point_histogram()[0]))
    } else {
        finite_field::characteristic_at_prime(arr, q).context("fq-engine")
    }
}

fn regions(cli: &Cli, arr: &Arrangement) -> Result<String> {
    let chi = characteristic(cli, arr)?;
    let all = poly::regions(&chi, arr.dim()).context("exact-poly")?;
    let bounded = poly::bounded_regions(&chi, arr.rank()).context("exact-poly")?;
    Ok(if cli.json {
        format!(
            "{}\n",
            serde_json::json!({ "regions": all.to_string(), "bounded": bounded.to_string() })
        )
    } else {
        format!("regions: {all}, bounded: {bounded}\n")
    })
}

fn egf_command(cli: &Cli, order: usize, q: u64) -> Result<String> {
    let Some(name) = &cli.input.family else {
        bail!("egf needs --family");
    };
    let family: Family = name.parse().map_err(|_| anyhow::anyhow!("unknown family `{name}`"))?;
    let u = if cli.skip_certification {
        egf::family_egf(family, q, order)
    } else {
        egf::family_egf_certified(family, q, order)
    }
    .context("egf")?;
    if cli.json {
        let coeffs: Vec<JsonPoly> = u.coeffs().iter().map(JsonPoly::from).collect();
        return Ok(format!(
            "{}\n",
            serde_json::json!({ "family": family.name(), "q": q, "order": order, "coefficients": coeffs })
        ));
    }
    let mut out = String::new();
    for (n, c) in u.coeffs().iter().enumerate() {
        writeln!(out, "u_{n} = {c}").expect("writing to a string");
    }
    Ok(out)
}

fn timed<R>(f: impl FnOnce() -> R) -> (R, Duration) {
    let start = Instant::now();
    let r = f();
    (r, start.elapsed())
}

fn verify(arr: &Arrangement, q: Option<u64>) -> Result<Outcome> {
    let q = match q {
        Some(q) => q,
        None => *interpolation::default_primes(arr, 1)
            .context("fq-engine")?
            .first()
            .context("fq-engine: no certified prime found")?,
    };
    let at_q = Rational::from_integer(BigInt::from(q));
    let mut results: Vec<(&str, UniPoly<T>, Duration)> = Vec::new();
    if arr.len() <= DEFAULT_MAX_HYPERPLANES {
        let (cb, time) = timed(|| subset::coboundary_by_definition(arr));
        results.push(("subset", cb.context("subset-engine")?.eval_first(&at_q), time));
    }
    let (cb, time) = timed(|| finite_field::coboundary_at_prime(arr, q));
    results.push(("fq", cb.context("fq-engine")?, time));
    if arr.is_symmetric() {
        let (cb, time) = timed(|| symmetric::coboundary_closed_form(arr, q));
        results.push(("closed-form", cb.context("symmetric-engine")?, time));
    }
    let mut out = String::new();
    for (name, cb, time) in &results {
        writeln!(out, "{name}: {cb} ({:.3} ms)", time.as_secs_f64() * 1e3).expect("writing to a string");
    }
    let names: Vec<&str> = results.iter().map(|(n, _, _)| *n).collect();
    let agree = results.windows(2).all(|w| w[0].1 == w[1].1);
    writeln!(out, "{}: {}", names.join("=="), if agree { "OK" } else { "MISMATCH" }).expect("writing to a string");
    Ok(if agree { Outcome::Ok(out) } else { Outcome::Mismatch(out) })
}

fn solutions(arr: &Arrangement, q: u64) -> Result<String> {
    let model = SymmetricModel::from_arrangement(arr, q).context("symmetric-engine")?;
    let mut out = String::new();
    let w = &mut out;
    let line = |w: &mut String, s: String| writeln!(w, "{s}").expect("writing to a string");
    for (i, (eq, sols)) in model.equations().iter().zip(model.solutions()).enumerate() {
        line(w, format!("E{}: {eq}", i + 1));
        let stab = eq.stabilizer();
        line(w, format!("  stabilizer (order {}): {stab}", stab.order()));
        let listed: Vec<String> = sols.iter().map(ToString::to_string).collect();
        line(w, format!("  Sol mod {q}: {{{}}}", listed.join(", ")));
    }
    let partition = model.partition();
    line(w, format!("indice partition ({} blocks):", partition.len()));
    for (j, block) in partition.blocks().iter().enumerate() {
        let members: Vec<String> = block
            .members()
            .iter()
            .map(|r| model.solutions()[r.equation][r.index].to_string())
            .collect();
        let support: Vec<String> = block.support().iter().map(ToString::to_string).collect();
        line(
            w,
            format!("  M{}: {{{}}} on residues {{{}}}", j + 1, members.join(", "), support.join(", ")),
        );
    }
    let free: Vec<String> = partition.free_residues(q).iter().map(ToString::to_string).collect();
    line(w, format!("unused residues: {{{}}}", free.join(", ")));
    Ok(out)
}
