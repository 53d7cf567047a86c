use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use kinser_core::bench::{bench_spike, to_csv};
use kinser_core::catalog::{
    binary_spike, dowling, fano_pair, kinser, kinser_base, kinser_relaxed, uniform, GroupTable,
};
use kinser_core::engine::{
    dual_membership, evaluate, membership, Determinism, Family, SearchConfig, SearchSpace, Side,
    Verdict,
};
use kinser_core::io::{parse_matroid, write_certificate, write_matroid};
use kinser_core::mask::parse_element_list;
use kinser_core::transforms::{contract, delete, direct_sum, dual, minor, relax, tighten, truncate};
use kinser_core::{validate_axioms, AxiomInput, AxiomSystem, EnumKind, Matroid, MatroidError, SubsetMask};

/// Exact matroid computations and Kinser inequality checks.
#[derive(Parser)]
#[command(name = "kinser", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a catalog matroid.
    ///
    /// Names: uniform K M, fano, non-fano, kinser-base R, kinser R,
    /// kinser-minus R, kinser-eq R I, vamos, spike R, dowling G N (cyclic
    /// group of order G on N vertices).
    Build {
        name: String,
        params: Vec<usize>,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Apply an operation to a matroid file.
    ///
    /// Operations: delete E, contract E, minor DELETIONS CONTRACTIONS,
    /// dual, truncate, relax SET, tighten SET, direct-sum FILE.
    Transform {
        op: String,
        args: Vec<String>,
        #[arg(short)]
        i: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Evaluate inequality N on a family.
    ///
    /// The family is a `;`-separated list of sets. Each set is a comma list
    /// of elements, `-` for the empty set, or `+`-joined layout part names
    /// such as `V1+V2`.
    Eval {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        family: String,
        #[arg(short)]
        i: PathBuf,
    },
    /// Decide membership for inequality N; exits 0 when satisfied, 1 with a
    /// certificate otherwise.
    Check {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        i: PathBuf,
        /// Check the dual matroid instead.
        #[arg(long)]
        dual: bool,
        #[arg(long, value_enum, default_value_t = Space::Flats)]
        space: Space,
        /// Stop at the first violation instead of the lexicographically least.
        #[arg(long)]
        any: bool,
        #[arg(long)]
        no_symmetry: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Certificate output path.
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Validate every axiom system on a matroid file.
    Axioms {
        #[arg(short)]
        i: PathBuf,
    },
    /// List sets of one kind, one per line in ascending mask order.
    Enumerate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(short)]
        i: PathBuf,
    },
    /// Exhaustive Ingleton checks on binary spikes, as CSV.
    Bench {
        /// Inclusive range such as `4..6`; odd values are skipped.
        #[arg(long)]
        spike_range: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    Flats,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Flats,
    Circuits,
    Bases,
    CircuitHyperplanes,
    Hyperplanes,
}

impl From<Kind> for EnumKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Flats => EnumKind::Flats,
            Kind::Circuits => EnumKind::Circuits,
            Kind::Bases => EnumKind::Bases,
            Kind::CircuitHyperplanes => EnumKind::CircuitHyperplanes,
            Kind::Hyperplanes => EnumKind::Hyperplanes,
        }
    }
}

fn read_matroid(path: &Path) -> Result<Matroid> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_matroid(&text).with_context(|| format!("loading {}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn params<const K: usize>(name: &str, p: &[usize]) -> Result<[usize; K]> {
    p.try_into()
        .map_err(|_| anyhow!("`{name}` takes {K} parameter(s), got {}", p.len()))
}

fn build(name: &str, p: &[usize]) -> Result<Matroid> {
    Ok(match name {
        "uniform" => {
            let [k, m] = params(name, p)?;
            uniform(k, m)?
        }
        "fano" => {
            params::<0>(name, p)?;
            fano_pair().0
        }
        "non-fano" => {
            params::<0>(name, p)?;
            fano_pair().1
        }
        "kinser-base" => kinser_base(params::<1>(name, p)?[0])?,
        "kinser" => kinser(params::<1>(name, p)?[0])?,
        "kinser-minus" => kinser_relaxed(params::<1>(name, p)?[0], None)?,
        "kinser-eq" => {
            let [r, i] = params(name, p)?;
            kinser_relaxed(r, Some(i))?
        }
        "vamos" => {
            params::<0>(name, p)?;
            kinser_relaxed(4, None)?.with_label("Vamos")
        }
        "spike" => binary_spike(params::<1>(name, p)?[0])?,
        "dowling" => {
            let [g, n] = params(name, p)?;
            dowling(&GroupTable::cyclic(g)?, n)?
        }
        other => bail!("unknown catalog matroid `{other}`"),
    })
}

fn mask_arg(s: &str) -> Result<SubsetMask> {
    parse_element_list(s).map_err(|e| anyhow!(e))
}

fn element_arg(s: &str) -> Result<usize> {
    s.parse().with_context(|| format!("invalid element `{s}`"))
}

fn transform(op: &str, args: &[String], m: &Matroid) -> Result<Matroid> {
    let want = |k: usize| -> Result<()> {
        if args.len() == k {
            Ok(())
        } else {
            bail!("`{op}` takes {k} argument(s), got {}", args.len())
        }
    };
    Ok(match op {
        "delete" => {
            want(1)?;
            delete(m, element_arg(&args[0])?)?.0
        }
        "contract" => {
            want(1)?;
            contract(m, element_arg(&args[0])?)?.0
        }
        "minor" => {
            want(2)?;
            minor(m, mask_arg(&args[0])?, mask_arg(&args[1])?)?.0
        }
        "dual" => {
            want(0)?;
            dual(m)
        }
        "truncate" => {
            want(0)?;
            truncate(m)?
        }
        "relax" => {
            want(1)?;
            relax(m, mask_arg(&args[0])?)?
        }
        "tighten" => {
            want(1)?;
            tighten(m, mask_arg(&args[0])?)?
        }
        "direct-sum" => {
            want(1)?;
            direct_sum(m, &read_matroid(Path::new(&args[0]))?)?.0
        }
        other => bail!("unknown transform `{other}`"),
    })
}

fn parse_family(spec: &str, n: usize, m: &Matroid) -> Result<Family> {
    let sets = spec
        .split(';')
        .map(|item| {
            let item = item.trim();
            let starts_named = item.chars().next().is_some_and(|c| c.is_ascii_alphabetic());
            if !starts_named {
                return mask_arg(item);
            }
            item.split('+').try_fold(SubsetMask::EMPTY, |acc, name| {
                m.part(name.trim())
                    .map(|p| acc | p)
                    .ok_or_else(|| anyhow!("no layout part named `{}`", name.trim()))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if sets.len() != n {
        bail!("family has {} sets but -n is {n}", sets.len());
    }
    Ok(Family::new(sets)?)
}

fn spike_range(s: &str) -> Result<Vec<usize>> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| anyhow!("expected a range such as 4..6"))?;
    let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().parse()?);
    let rs: Vec<usize> = (a..=b).filter(|r| r % 2 == 0).collect();
    if rs.is_empty() {
        bail!("range {s} contains no even spike rank");
    }
    Ok(rs)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Build { name, params, o } => {
            emit(&write_matroid(&build(&name, &params)?), o.as_deref())?;
        }
        Command::Transform { op, args, i, o } => {
            let m = read_matroid(&i)?;
            emit(&write_matroid(&transform(&op, &args, &m)?), o.as_deref())?;
        }
        Command::Eval { n, family, i } => {
            let m = read_matroid(&i)?;
            let value = evaluate(&m, &parse_family(&family, n, &m)?)?;
            println!("lhs {}", value.lhs);
            println!("rhs {}", value.rhs);
            println!("satisfied {}", value.satisfied());
            for t in &value.terms {
                let side = if t.side == Side::Lhs { "lhs" } else { "rhs" };
                println!("{side} {} {:?} {}", t.symbol(), t.mask, t.rank);
            }
        }
        Command::Check {
            n,
            i,
            dual,
            space,
            any,
            no_symmetry,
            jobs,
            o,
        } => {
            let m = read_matroid(&i)?;
            let cfg = SearchConfig {
                space: match space {
                    Space::Flats => SearchSpace::Flats,
                    Space::All => SearchSpace::AllSubsets,
                },
                determinism: if any { Determinism::Any } else { Determinism::LexFirst },
                symmetry_pruning: !no_symmetry,
                parallel_width: jobs.max(1),
            };
            let verdict = if dual {
                dual_membership(&m, n, cfg)?
            } else {
                membership(&m, n, cfg)?
            };
            let stats = verdict.stats();
            match &verdict {
                Verdict::InClass { .. } => println!("in-class n={n}"),
                Verdict::NotInClass { certificate, .. } => {
                    println!("not-in-class n={n} margin={}", certificate.margin());
                    let text = write_certificate(certificate);
                    match &o {
                        Some(path) => fs::write(path, &text)
                            .with_context(|| format!("writing {}", path.display()))?,
                        None => print!("{text}"),
                    }
                }
            }
            println!(
                "candidates {} chains {} tuples {} rank_queries {}",
                stats.candidates, stats.chains, stats.tuples_examined, stats.rank_queries
            );
            if !verdict.in_class() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Axioms { i } => {
            let text = fs::read_to_string(&i).with_context(|| format!("reading {}", i.display()))?;
            let m = match parse_matroid(&text) {
                Ok(m) => m,
                Err(MatroidError::NotAMatroid(v)) => {
                    println!("rank: {v}");
                    return Ok(ExitCode::from(1));
                }
                Err(e) => return Err(e.into()),
            };
            let table = m.rank_table();
            let mut clean = true;
            for (name, system) in [
                ("rank", AxiomSystem::Rank),
                ("closure", AxiomSystem::Closure),
                ("independence", AxiomSystem::Independence),
                ("circuits", AxiomSystem::Circuits),
            ] {
                match validate_axioms(AxiomInput::Table(&table), system)? {
                    Ok(()) => println!("{name}: ok"),
                    Err(v) => {
                        clean = false;
                        println!("{name}: {v}");
                    }
                }
            }
            if !clean {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Enumerate { kind, i } => {
            let m = read_matroid(&i)?;
            for x in m.enumerate(kind.into()) {
                println!("{}", if x.is_empty() { "-".to_string() } else { x.to_string() });
            }
        }
        Command::Bench { spike_range: range, jobs } => {
            let cfg = SearchConfig {
                parallel_width: jobs.max(1),
                ..SearchConfig::default()
            };
            print!("{}", to_csv(&bench_spike(spike_range(&range)?, cfg)?));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
