use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bkguard::emit::{emit_csv, DECIMAL_DIGITS};
use bkguard::error::{Error, Result};
use bkguard::hierarchy_json::load_hierarchy;
use bkguard::kb::{parse_atom, parse_knowledge};
use bkguard::tabular::{load_domain, load_partition, load_table, Schema};
use bkguard_core::curves::{disclosure_vs_k, entropy_vs_disclosure, EntropyFamily, FamilyShape};
use bkguard_core::lattice::{
    all_minimal_safe, apply, binary_search_chain, select_by_utility, Discernibility, Height, Hierarchy, LatticeNode,
    SafetyThreshold, UtilityMetric,
};
use bkguard_core::oracle::{exact_posterior, DEFAULT_WORLD_BUDGET};
use bkguard_core::{
    max_disclosure, max_disclosure_negated_atoms, partition, Bucketization, Grouping, Knowledge, PersonDirectory,
    Probability, Table,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser, Debug)]
#[command(name = "bkguard", version, about = "Worst-case disclosure of bucketized tables under background knowledge")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Input table (CSV with a header row)
    #[arg(long, global = true)]
    table: Option<PathBuf>,
    /// Name of the sensitive column
    #[arg(long, global = true)]
    sensitive: Option<String>,
    /// Name of the person id column; rows are numbered from 0 without it
    #[arg(long, global = true)]
    id: Option<String>,
    /// Extra sensitive values, one per line
    #[arg(long, global = true)]
    domain: Option<PathBuf>,
    /// Explicit bucket assignment: `person<TAB>bucket` lines
    #[arg(long, global = true, conflicts_with = "group_by")]
    partition: Option<PathBuf>,
    /// Bucketize by equal values of these attributes (comma separated)
    #[arg(long, global = true, value_delimiter = ',')]
    group_by: Option<Vec<String>>,
    /// Cap on enumerated worlds or lattice nodes
    #[arg(long, global = true, default_value_t = DEFAULT_WORLD_BUDGET)]
    budget: u64,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Keep each row with this probability before anything else
    #[arg(long, global = true)]
    sample: Option<f64>,
    /// Seed for --sample
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Maximum disclosure with respect to k pieces of knowledge
    Disclose {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Class::Implications)]
        class: Class,
        /// Also print a worst-case knowledge set in knowledge-file syntax
        #[arg(long)]
        witness: bool,
    },
    /// Exact posterior of one atom by enumerating all consistent tables
    Oracle {
        #[arg(long)]
        knowledge: Option<PathBuf>,
        /// `person=value`
        #[arg(long)]
        target: String,
    },
    /// Least generalizations whose maximum disclosure stays below c
    Anonymize {
        #[arg(long)]
        hierarchy: PathBuf,
        /// Threshold as NUM/DEN
        #[arg(long)]
        c: String,
        #[arg(long)]
        k: usize,
        #[arg(long, conflicts_with = "chain")]
        all_minimal: bool,
        /// Chain such as `Age=0..3,Zip=0..2`: ranges are raised in order
        #[arg(long)]
        chain: Option<String>,
        #[arg(long, value_enum, default_value_t = Utility::Height)]
        utility: Utility,
    },
    /// Disclosure against k for implications and negated atoms, as CSV
    CurveK {
        #[arg(long)]
        k_max: usize,
    },
    /// Least maximum disclosure against bucket entropy for a synthetic family, as CSV
    CurveEntropy {
        #[arg(long)]
        domain_size: usize,
        #[arg(long)]
        bucket_size: u64,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2,4")]
        ks: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Family::Skewed)]
        family: Family,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Class {
    Implications,
    Negations,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Utility {
    Height,
    Discernibility,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Skewed,
    Exhaustive,
}

fn show(p: &Probability) -> String {
    format!("{p} ({})", p.to_decimal(DECIMAL_DIGITS))
}

impl Global {
    fn table(&self) -> Result<Table> {
        let path = self.table.as_deref().ok_or_else(|| Error::Invalid("--table is required".into()))?;
        let sensitive = self
            .sensitive
            .clone()
            .ok_or_else(|| Error::Invalid("--sensitive is required".into()))?;
        let declared = match &self.domain {
            Some(p) => load_domain(p)?,
            None => Vec::new(),
        };
        let table = load_table(path, &Schema { sensitive, id: self.id.clone() }, &declared)?;
        match self.sample {
            None => Ok(table),
            Some(f) if (0.0..=1.0).contains(&f) => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let rows: Vec<usize> = (0..table.len()).filter(|_| rng.random_bool(f)).collect();
                Ok(table.subset(&rows)?)
            }
            Some(f) => Err(Error::Invalid(format!("--sample {f} is not in [0, 1]"))),
        }
    }

    fn bucketization(&self, table: &Table) -> Result<Bucketization> {
        let grouping = match (&self.partition, &self.group_by) {
            (Some(path), _) => {
                let mut pairs = load_partition(path)?;
                if self.sample.is_some() {
                    pairs.retain(|(p, _)| table.person_index(p).is_some());
                }
                Grouping::Explicit(pairs)
            }
            (None, Some(attrs)) => Grouping::Attributes(attrs.clone()),
            (None, None) => return Err(Error::Invalid("one of --partition or --group-by is required".into())),
        };
        Ok(partition(table, &grouping)?)
    }

    fn output(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => Box::new(File::create(p).map_err(|e| Error::io(p, e))?),
            None => Box::new(io::stdout().lock()),
        })
    }
}

fn parse_threshold(c: &str, k: usize) -> Result<SafetyThreshold> {
    let bad = || Error::Invalid(format!("--c `{c}` is not NUM/DEN"));
    let (num, den) = match c.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().map_err(|_| bad())?, d.trim().parse::<BigInt>().map_err(|_| bad())?),
        None => (c.trim().parse::<BigInt>().map_err(|_| bad())?, BigInt::from(1)),
    };
    if den == BigInt::from(0) {
        return Err(bad());
    }
    Ok(SafetyThreshold::new(BigRational::new(num, den), k)?)
}

/// `Age=0..3,Zip=2` into `(attribute, from, to)` triples.
fn parse_chain(spec: &str) -> Result<Vec<(String, usize, usize)>> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let bad = || Error::Invalid(format!("chain item `{item}` is not attr=lo..hi or attr=level"));
            let (name, range) = item.split_once('=').ok_or_else(bad)?;
            let level = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
            let (lo, hi) = match range.split_once("..") {
                Some((lo, hi)) => (level(lo)?, level(hi)?),
                None => (level(range)?, level(range)?),
            };
            if lo > hi {
                return Err(bad());
            }
            Ok((name.trim().to_string(), lo, hi))
        })
        .collect()
}

fn describe(hierarchy: &Hierarchy, node: &LatticeNode) -> String {
    hierarchy
        .attributes()
        .iter()
        .zip(node.levels())
        .map(|(a, l)| format!("{}={l}", a.attribute))
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    match cli.command {
        Command::Disclose { k, class, witness } => {
            let table = g.table()?;
            let b = g.bucketization(&table)?;
            let mut out = g.output()?;
            let (disclosure, target, knowledge) = match class {
                Class::Implications => {
                    let r = max_disclosure(&b, k);
                    let kb = r.knowledge();
                    (r.disclosure, r.target, kb)
                }
                Class::Negations => {
                    let r = max_disclosure_negated_atoms(&b, k);
                    let kb = if r.negated.is_empty() { Knowledge::empty() } else { r.knowledge(b.domain())? };
                    (r.disclosure, r.target, kb)
                }
            };
            writeln!(out, "{}", show(&disclosure)).map_err(|e| io_err(g, e))?;
            if witness {
                writeln!(out, "# target: {}", b.display_atom(target)).map_err(|e| io_err(g, e))?;
                write!(out, "{}", knowledge.display(&b)).map_err(|e| io_err(g, e))?;
            }
            out.flush().map_err(|e| io_err(g, e))
        }
        Command::Oracle { knowledge, target } => {
            let table = g.table()?;
            let b = g.bucketization(&table)?;
            let kb = match knowledge {
                Some(p) => parse_knowledge(&std::fs::read_to_string(&p).map_err(|e| Error::io(&p, e))?, &table)?,
                None => Knowledge::empty(),
            };
            let atom = parse_atom(&target, &table)?;
            let p = exact_posterior(&b, &kb, atom, g.budget)?;
            let mut out = g.output()?;
            writeln!(out, "{}", show(&p)).map_err(|e| io_err(g, e))
        }
        Command::Anonymize { hierarchy, c, k, all_minimal: _, chain, utility } => {
            let table = g.table()?;
            let h = load_hierarchy(&hierarchy, &table)?;
            let threshold = parse_threshold(&c, k)?;
            let metric: &dyn UtilityMetric = match utility {
                Utility::Height => &Height,
                Utility::Discernibility => &Discernibility,
            };
            let mut out = g.output()?;
            let report = |out: &mut Box<dyn Write>, label: &str, node: &LatticeNode| -> Result<()> {
                let b = apply(&table, &h, node)?;
                let d = max_disclosure(&b, k).disclosure;
                writeln!(out, "{label} {}  buckets={}  disclosure={}", describe(&h, node), b.len(), show(&d))
                    .map_err(|e| io_err(g, e))
            };
            let nodes = match chain {
                Some(spec) => {
                    let chain = h.chain(&parse_chain(&spec)?)?;
                    binary_search_chain(&table, &h, &chain, &threshold)?.node.into_iter().collect()
                }
                None => all_minimal_safe(&table, &h, &threshold, g.budget)?.nodes,
            };
            if nodes.is_empty() {
                return Err(Error::NoSafeNode);
            }
            for node in &nodes {
                report(&mut out, "minimal", node)?;
            }
            let best = select_by_utility(&nodes, &table, &h, metric)?;
            report(&mut out, "selected", &best)?;
            out.flush().map_err(|e| io_err(g, e))
        }
        Command::CurveK { k_max } => {
            let table = g.table()?;
            let b = g.bucketization(&table)?;
            emit_csv(&disclosure_vs_k(&b, k_max), g.output()?)
        }
        Command::CurveEntropy { domain_size, bucket_size, ks, family } => {
            let shape = match family {
                Family::Skewed => FamilyShape::Skewed,
                Family::Exhaustive => FamilyShape::Exhaustive,
            };
            let family = EntropyFamily::new(domain_size, bucket_size, shape)?;
            emit_csv(&entropy_vs_disclosure(&family, &ks)?, g.output()?)
        }
    }
}

fn io_err(g: &Global, e: io::Error) -> Error {
    Error::io(g.out.as_deref().unwrap_or(Path::new("<stdout>")), e)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bkguard: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
