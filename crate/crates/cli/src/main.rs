use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use latgen::completion::normal_form;
use latgen::generators::{
    generating_set, groebner_from_generators, saturation_support, Algorithm, GeneratorOptions, GeneratorRun,
};
use latgen::int::{Int, Rat};
use latgen::io::{format_vector, read_matrix, read_point, read_vectors, write_matrix, write_vectors};
use latgen::lattice::{Lattice, LatticeVector, VectorSet};
use latgen::oracle::{default_sample, verify_generating_set, verify_groebner, verify_normal_forms, VerifyReport};
use latgen::order::TermOrder;
use latgen::tables::{gen_table_matrix, random_pointed_bases};

#[derive(Parser)]
#[command(name = "latgen", version, about = "Generating sets and Groebner bases of integer lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgorithmArg {
    /// project-and-lift
    Pl,
    /// saturation
    Sat,
    /// lift-and-project
    Lp,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Algorithm {
        match a {
            AlgorithmArg::Pl => Algorithm::ProjectAndLift,
            AlgorithmArg::Sat => Algorithm::Saturation,
            AlgorithmArg::Lp => Algorithm::LiftAndProject,
        }
    }
}

#[derive(clap::Args)]
struct InputArgs {
    /// Lattice basis, one vector per row
    file: PathBuf,
    /// Treat the file as a matrix and use its integer kernel
    #[arg(long)]
    from_matrix: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckKind {
    Generating,
    Groebner,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    /// the 2x6 running example
    Example,
    /// 3x3x3 contingency tables
    Tables,
    /// knapsack instances cuww1..cuww5 from the data directory
    Cuww,
    /// seeded random 2x6 lattices
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a generating set (Markov basis)
    Markov {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "pl")]
        algorithm: AlgorithmArg,
        /// Shrink the working set between stages; the output is usually
        /// smaller but still generates the lattice
        #[arg(long)]
        reduce: bool,
        /// Print per-stage sizes to stderr
        #[arg(long)]
        stats: bool,
    },
    /// Compute the reduced Groebner basis
    Groebner {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "pl")]
        algorithm: AlgorithmArg,
        /// Cost vector as space separated rationals, e.g. "0 -1 1/2"; degrevlex breaks ties
        #[arg(long, allow_hyphen_values = true)]
        cost: Option<String>,
    },
    /// Normal form of a point with respect to a Groebner basis
    Normalform {
        /// Groebner basis file
        basis: PathBuf,
        /// The point, either a file or the entries as one argument
        point: String,
        #[arg(long, allow_hyphen_values = true)]
        cost: Option<String>,
    },
    /// Check a set against brute-force fiber enumeration
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        #[command(flatten)]
        input: InputArgs,
        /// Set to check
        set: PathBuf,
        /// Coordinate bound for truncated fibers
        #[arg(long = "box", default_value_t = 8)]
        bound: i64,
        /// Random fibers on top of the pair peaks
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, allow_hyphen_values = true)]
        cost: Option<String>,
    },
    /// Print the constraint matrix of d1 x d2 x d3 tables with fixed 2-marginals
    Table {
        #[arg(value_parser = clap::value_parser!(u16).range(2..))]
        d1: u16,
        #[arg(value_parser = clap::value_parser!(u16).range(2..))]
        d2: u16,
        #[arg(value_parser = clap::value_parser!(u16).range(2..))]
        d3: u16,
    },
    /// Timings and set sizes on a benchmark suite
    Bench {
        #[arg(value_enum)]
        suite: Suite,
        /// Directory holding the cuww files
        #[arg(long, default_value = "data")]
        data_dir: PathBuf,
        /// Number of instances in the random suite
        #[arg(long, default_value_t = 25)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also run the 4x4x4 tables (very long)
        #[arg(long)]
        stress: bool,
    },
}

/// Failures that are the caller's fault exit with 2, failed checks with 1.
enum Outcome {
    Ok,
    CheckFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_input(input: &InputArgs) -> Result<VectorSet> {
    let m = read_matrix(&read_file(&input.file)?).with_context(|| format!("in {}", input.file.display()))?;
    if input.from_matrix {
        Ok(Lattice::kernel(&m).basis_vectors())
    } else {
        Ok(VectorSet::from_matrix(&m))
    }
}

fn lattice_of(s: &VectorSet) -> Result<Lattice> {
    let rows: Vec<Vec<Int>> = s.iter().map(|v| v.entries().to_vec()).collect();
    Ok(Lattice::span(s.dim(), &rows)?)
}

fn parse_cost(text: &str, dim: usize) -> Result<Vec<Rat>> {
    let cost: Vec<Rat> = text
        .split_whitespace()
        .map(|t| t.parse::<Rat>().map_err(|_| anyhow::anyhow!("`{t}` is not a rational")))
        .collect::<Result<_>>()?;
    if cost.len() != dim {
        bail!("cost has {} entries, expected {dim}", cost.len());
    }
    Ok(cost)
}

fn order_for(cost: Option<&str>, dim: usize) -> Result<TermOrder> {
    match cost {
        Some(c) => Ok(TermOrder::with_cost(parse_cost(c, dim)?)),
        None => Ok(TermOrder::degrevlex(dim)),
    }
}

fn options(reduce: bool) -> GeneratorOptions {
    if reduce {
        GeneratorOptions::default()
    } else {
        GeneratorOptions::unreduced()
    }
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Markov {
            input,
            algorithm,
            reduce,
            stats,
        } => {
            let s = load_input(&input)?;
            let run = generating_set(&s, algorithm.into(), &options(reduce))?;
            if stats {
                print_stages(&run);
            }
            emit(&write_vectors(&run.generators));
            Ok(Outcome::Ok)
        }
        Command::Groebner { input, algorithm, cost } => {
            let s = load_input(&input)?;
            let order = order_for(cost.as_deref(), s.dim())?;
            let run = generating_set(&s, algorithm.into(), &GeneratorOptions::default())?;
            let g = groebner_from_generators(&s, &run.generators, &order)?;
            emit(&write_vectors(&g));
            Ok(Outcome::Ok)
        }
        Command::Normalform { basis, point, cost } => {
            let g = read_vectors(&read_file(&basis)?).with_context(|| format!("in {}", basis.display()))?;
            let order = order_for(cost.as_deref(), g.dim())?;
            let text = if Path::new(&point).is_file() {
                read_file(Path::new(&point))?
            } else {
                point
            };
            let x = read_point(&text, g.dim())?;
            if x.iter().any(Int::is_negative) {
                bail!("point has negative entries");
            }
            let oriented: Vec<LatticeVector> = g.iter().map(|v| order.orient(v)).collect::<Result<_, _>>()?;
            let nf = normal_form(&x, &oriented, &order);
            println!("{}", format_vector(&LatticeVector::new(nf)));
            Ok(Outcome::Ok)
        }
        Command::Check {
            kind,
            input,
            set,
            bound,
            samples,
            seed,
            cost,
        } => {
            let s = load_input(&input)?;
            let lattice = lattice_of(&s)?;
            let candidate = read_vectors(&read_file(&set)?).with_context(|| format!("in {}", set.display()))?;
            if candidate.dim() != s.dim() {
                bail!("set has dimension {}, lattice has {}", candidate.dim(), s.dim());
            }
            if let Some(v) = candidate.iter().find(|v| !lattice.contains(v.entries())) {
                bail!("{} is not in the lattice", format_vector(v));
            }
            if bound < 0 {
                bail!("--box must be non-negative");
            }
            let mut pool = s.clone();
            for v in &candidate {
                pool.insert(v.clone());
            }
            let sample = default_sample(&pool, samples, bound, seed);
            let bound = Int::from(bound);
            let passed = match kind {
                CheckKind::Generating => {
                    let r = verify_generating_set(&lattice, &candidate, &sample, &bound);
                    print_report("generating set", &r);
                    r.passed()
                }
                CheckKind::Groebner => {
                    let order = order_for(cost.as_deref(), s.dim())?;
                    let r = verify_groebner(&lattice, &candidate, &order, &sample, &bound);
                    print_report("groebner basis", &r);
                    let nf = verify_normal_forms(&lattice, &candidate, &order, &sample, &bound);
                    print_report("normal forms", &nf);
                    r.passed() && nf.passed()
                }
            };
            Ok(if passed { Outcome::Ok } else { Outcome::CheckFailed })
        }
        Command::Table { d1, d2, d3 } => {
            emit(&write_matrix(&gen_table_matrix(d1.into(), d2.into(), d3.into())));
            Ok(Outcome::Ok)
        }
        Command::Bench {
            suite,
            data_dir,
            count,
            seed,
            stress,
        } => {
            bench(suite, &data_dir, count, seed, stress)?;
            Ok(Outcome::Ok)
        }
    }
}

fn print_report(what: &str, r: &VerifyReport) {
    println!(
        "{what}: {} ({} fibers, {} points, {} skipped)",
        if r.passed() { "ok" } else { "FAILED" },
        r.fibers_checked,
        r.points_seen,
        r.fibers_skipped
    );
    for f in r.failures.iter().take(10) {
        let b: Vec<String> = f.representative.iter().map(Int::to_string).collect();
        println!("  fiber of [{}]: {:?}", b.join(" "), f.kind);
    }
}

fn print_stages(run: &GeneratorRun) {
    for st in &run.stages {
        eprintln!(
            "{:<48} in {:>6}  completed {:>6}  kept {:>6}",
            st.label,
            st.completion.input_size,
            st.completed.len(),
            st.result.len()
        );
    }
}

struct Instance {
    name: String,
    basis: VectorSet,
    order: TermOrder,
}

fn suite_instances(suite: Suite, data_dir: &Path, count: usize, seed: u64, stress: bool) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    match suite {
        Suite::Example => {
            let basis = VectorSet::from_i64(6, &[&[1, -1, -1, -3, -1, 2], &[1, 0, 2, -2, -2, 1]]);
            out.push(Instance {
                name: "example".into(),
                order: TermOrder::degrevlex(6),
                basis,
            });
        }
        Suite::Tables => {
            let mut dims = vec![(3, 3, 3)];
            if stress {
                dims.push((4, 4, 4));
            }
            for (a, b, c) in dims {
                let basis = Lattice::kernel(&gen_table_matrix(a, b, c)).basis_vectors();
                out.push(Instance {
                    name: format!("{a}{b}{c}"),
                    order: TermOrder::degrevlex(basis.dim()),
                    basis,
                });
            }
        }
        Suite::Cuww => {
            for i in 1..=5 {
                let path = data_dir.join(format!("cuww{i}.mat"));
                let m = read_matrix(&read_file(&path)?).with_context(|| format!("in {}", path.display()))?;
                let basis = Lattice::kernel(&m).basis_vectors();
                out.push(Instance {
                    name: format!("cuww{i}"),
                    // the reported sizes hold for this order, not degrevlex
                    order: TermOrder::negated_unit(basis.dim(), 0),
                    basis,
                });
            }
        }
        Suite::Random => {
            for (i, m) in random_pointed_bases(count, 2, 6, 3, seed).into_iter().enumerate() {
                out.push(Instance {
                    name: format!("random{i}"),
                    order: TermOrder::degrevlex(6),
                    basis: VectorSet::from_matrix(&m),
                });
            }
        }
    }
    Ok(out)
}

fn secs(d: Duration) -> String {
    format!("{:.3}s", d.as_secs_f64())
}

fn bench(suite: Suite, data_dir: &Path, count: usize, seed: u64, stress: bool) -> Result<()> {
    let instances = suite_instances(suite, data_dir, count, seed, stress)?;
    println!(
        "{:<10} {:>5} {:>4}  {:<5} {:>10} {:>7} {:>10} {:>6}  stages",
        "instance", "vars", "sat", "alg", "markov", "size", "groebner", "size"
    );
    for inst in &instances {
        let sat = saturation_support(&inst.basis).len();
        for (name, alg) in [
            ("pl", Algorithm::ProjectAndLift),
            ("sat", Algorithm::Saturation),
            ("lp", Algorithm::LiftAndProject),
        ] {
            let t = Instant::now();
            let run = generating_set(&inst.basis, alg, &GeneratorOptions::default())?;
            let markov_time = t.elapsed();
            let t = Instant::now();
            let g = groebner_from_generators(&inst.basis, &run.generators, &inst.order)?;
            let gb_time = t.elapsed();
            let stages: Vec<String> = run
                .stages
                .iter()
                .map(|s| format!("{}/{}", s.completed.len(), s.result.len()))
                .collect();
            println!(
                "{:<10} {:>5} {:>4}  {:<5} {:>10} {:>7} {:>10} {:>6}  {}",
                inst.name,
                inst.basis.dim(),
                sat,
                name,
                secs(markov_time),
                run.generators.len(),
                secs(gb_time),
                g.len(),
                stages.join(" ")
            );
        }
    }
    Ok(())
}
