use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use gitcurve_core::basin_calculus::{
    basin_membership, c_closed_orbit_rep, enumerate_c_replacements, h_closed_orbit_rep, is_c_closed_orbit,
    is_h_closed_orbit, product_subgroup, BasinVerdict,
};
use gitcurve_core::chow_multiplicity::{certify_unstable, ChowCase};
use gitcurve_core::curve_model::{stability_report, CurveGraph};
use gitcurve_core::divisor_classes::{
    canonical_alpha_class, epsilon_of_m, lambda_n, moriwaki_decomposition, pseudostable_pullback, viehweg_class,
};
use gitcurve_core::families::{canonical_1ps, torus_generators, Configuration, Family, OneParamSubgroup};
use gitcurve_core::golden::{describe_curve, run_paper_check, singularity_label, Expectations};
use gitcurve_core::ideal_engine::{index_table, IndexOptions, DEFAULT_MAX_DEGREE};
use gitcurve_core::rational::{fmt_q, parse_q};

#[derive(Parser)]
#[command(name = "gitcurve", version, about = "Exact GIT stability computations for bicanonical curves")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    OpenRosary,
    MultiRosary,
    ClosedRosary,
    BrokenBead,
    TacnodalTail,
}

#[derive(clap::Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[arg(long)]
    g: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    /// Rosary lengths for `multi-rosary`.
    #[arg(long, value_delimiter = ',')]
    lengths: Vec<u32>,
}

impl FamilyArgs {
    fn family(&self) -> Result<Family> {
        let need = |v: Option<u32>, name: &str| v.with_context(|| format!("--{name} is required for this family"));
        Ok(match self.family {
            FamilyKind::OpenRosary => Family::OpenRosary { g: need(self.g, "g")?, r: need(self.r, "r")? },
            FamilyKind::MultiRosary => {
                if self.lengths.is_empty() {
                    bail!("--lengths is required for multi-rosary");
                }
                Family::MultiRosary { g: need(self.g, "g")?, lengths: self.lengths.clone() }
            }
            FamilyKind::ClosedRosary => Family::ClosedRosary { r: need(self.r, "r")? },
            FamilyKind::BrokenBead => Family::BrokenBead { r: need(self.r, "r")? },
            FamilyKind::TacnodalTail => Family::TacnodalTail { g: need(self.g, "g")? },
        })
    }

    fn build(&self) -> Result<Configuration> {
        Ok(Configuration::build(&self.family()?)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    C,
    H,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseKind {
    Cusp,
    Tacnode,
    Multiple,
    Tail,
}

#[derive(Subcommand)]
enum Command {
    /// Stability flags of a graph document, with the subcurves that decided them.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Describe a family configuration and its torus.
    Family {
        #[command(flatten)]
        fam: FamilyArgs,
    },
    /// Hilbert–Mumford indices of a family member.
    Index {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3])]
        m: Vec<u32>,
        /// Explicit weights; defaults to the family's own subgroup.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<i64>,
    },
    /// Versal weights and the generic member of the basin of attraction.
    Basin {
        #[command(flatten)]
        fam: FamilyArgs,
        /// One exponent per torus generator.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "weights")]
        exponents: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<i64>,
    },
    /// Closed-orbit representative of the c- or h-equivalence class.
    ClosedOrbit {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// All generic replacements of the minimal elliptic bridges.
    Replacements {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Chow instability certificate for one of the standard cases.
    ChowCertify {
        #[arg(long, value_enum)]
        case: CaseKind,
        #[arg(long, default_value_t = 5)]
        g: u32,
        /// Contact order for the tacnode case.
        #[arg(long, default_value_t = 3)]
        s: u32,
        #[arg(long, default_value_t = 2)]
        multiplicity: u32,
    },
    /// Divisor class calculator.
    Divisor {
        #[command(subcommand)]
        op: DivisorOp,
    },
    /// Run every pinned reference check.
    PaperCheck {
        /// Item ids or id prefixes.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Replacement expectations file.
        #[arg(long)]
        expectations: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DivisorOp {
    /// λ_n, the first Chern class of the pushforward of the n-th power of the dualizing sheaf.
    LambdaN {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        g: u32,
    },
    /// Polarization class on the Hilbert or Chow quotient of n-canonical curves in degree m.
    Viehweg {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        g: u32,
    },
    /// Moriwaki class and the positive decomposition of 10λ − δ − δ_1.
    Moriwaki {
        #[arg(long)]
        g: u32,
    },
    /// The ε with (10 − 3/(2m))λ − δ proportional to K + (7/10 − ε)δ.
    Epsilon {
        #[arg(long)]
        m: i64,
    },
    /// K + αδ in λ, δ coordinates.
    Canonical {
        /// Rational `p/q`.
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        g: u32,
    },
    /// K + αδ − (9 − 11α)δ_1, the pullback of the log canonical class from the pseudostable space.
    Logdisc {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        g: u32,
    },
}

/// Like `println!`, but a closed pipe surfaces as an error instead of a panic.
macro_rules! outln {
    ($($arg:tt)*) => {
        writeln!(std::io::stdout(), $($arg)*)?
    };
}

fn max_degree() -> Result<u32> {
    match std::env::var("GIT_CURVE_MAX_DEGREE") {
        Ok(v) => v.trim().parse().with_context(|| format!("GIT_CURVE_MAX_DEGREE={v:?} is not a number")),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn read_graph(path: &Path) -> Result<CurveGraph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    CurveGraph::from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn weights_line(w: &[i64]) -> String {
    w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn rho_for(c: &Configuration, weights: &[i64], exponents: &[i64]) -> Result<OneParamSubgroup> {
    Ok(if !weights.is_empty() {
        OneParamSubgroup::new(weights.to_vec())
    } else if !exponents.is_empty() {
        product_subgroup(c, exponents)?
    } else {
        canonical_1ps(c)?
    })
}

fn run(cli: Cli) -> Result<bool> {
    let json = cli.json;
    match cli.command {
        Command::Classify { input } => {
            let g = read_graph(&input)?;
            let r = stability_report(&g)?;
            if json {
                outln!("{}", pretty(&r));
            } else {
                let f = r.flags;
                outln!("genus           {}", r.genus);
                for (name, v) in [
                    ("dm_stable", f.dm_stable),
                    ("pseudostable", f.pseudostable),
                    ("c_semistable", f.c_semistable),
                    ("c_stable", f.c_stable),
                    ("h_semistable", f.h_semistable),
                    ("h_stable", f.h_stable),
                ] {
                    outln!("{name:<15} {v}");
                }
                let sets = |v: &[gitcurve_core::curve_model::ComponentSet]| {
                    v.iter().map(|s| format!("{s:?}")).collect::<Vec<_>>().join(" ")
                };
                if !r.non_ample.is_empty() {
                    outln!("non-ample       {:?}", r.non_ample);
                }
                if !r.elliptic_tails.is_empty() {
                    outln!("elliptic tails  {}", sets(&r.elliptic_tails));
                }
                if !r.elliptic_bridges.is_empty() {
                    outln!("bridges         {}", sets(&r.elliptic_bridges));
                }
                for ch in r.chains.iter().chain(&r.weak_chains) {
                    outln!(
                        "chain           {}{} length {} links {:?}",
                        if ch.weak { "weak " } else { "" },
                        format!("{:?}", ch.shape).to_lowercase(),
                        ch.length,
                        ch.links
                    );
                }
            }
            Ok(true)
        }
        Command::Family { fam } => {
            let c = fam.build()?;
            let rho = canonical_1ps(&c).ok();
            let gens: Vec<Vec<i64>> = torus_generators(&c).into_iter().map(|g| g.weights).collect();
            if json {
                outln!(
                    "{}",
                    pretty(&json!({
                        "configuration": c,
                        "genus": c.genus(),
                        "coordinates": c.total_coordinates(),
                        "canonical_weights": rho.as_ref().map(|r| r.weights.clone()),
                        "torus_generators": gens,
                    }))
                );
            } else {
                outln!("genus        {}", c.genus());
                outln!("coordinates  {}", c.total_coordinates());
                outln!("split        {}", c.is_split());
                outln!("curve        {}", describe_curve(&c.graph)?);
                if let Some(r) = rho {
                    outln!("weights      {}", weights_line(&r.weights));
                }
                for (i, g) in gens.iter().enumerate() {
                    outln!("generator {i}  {}", weights_line(g));
                }
            }
            Ok(true)
        }
        Command::Index { fam, m, weights } => {
            let c = fam.build()?;
            let rho = rho_for(&c, &weights, &[])?;
            let opts = IndexOptions { max_degree: max_degree()?, ..Default::default() };
            let table = index_table(&c, &rho, &m, &opts)?;
            if json {
                outln!("{}", pretty(&json!({ "weights": rho.weights, "reports": table })));
            } else {
                outln!("weights {}", weights_line(&rho.weights));
                outln!("{:>3} {:>12} {:>12} {:>8} {:>9} {:>9}", "m", "weight_sum", "average", "mu", "standard", "P(m)");
                for r in &table {
                    outln!(
                        "{:>3} {:>12} {:>12} {:>8} {:>9} {:>9}{}",
                        r.m,
                        fmt_q(&r.weight_sum),
                        fmt_q(&r.average),
                        fmt_q(&r.mu),
                        r.standard_count,
                        r.expected_count,
                        if r.count_deviates { "  count deviates" } else { "" }
                    );
                }
                if let Some(s) = table.first().and_then(|r| r.chow_sign) {
                    outln!("chow sign {s}");
                }
            }
            Ok(true)
        }
        Command::Basin { fam, exponents, weights } => {
            let c = fam.build()?;
            let rho = rho_for(&c, &weights, &exponents)?;
            let report = basin_membership(&c, &rho)?;
            if json {
                outln!("{}", pretty(&report));
            } else {
                outln!("weights {}", weights_line(&rho.weights));
                for v in &report.singularities {
                    outln!(
                        "{:<10} {:<10} {:<12} {}",
                        singularity_label(&c, v.weights.singularity),
                        format!("{:?}", v.weights.kind).to_lowercase(),
                        weights_line(&v.weights.parameter_weights),
                        if v.verdict == BasinVerdict::Smoothable { "smoothable" } else { "frozen" }
                    );
                }
                outln!("generic  {}", describe_curve(&report.generic)?);
                outln!("partial smoothings {}", report.lattice_size);
            }
            Ok(true)
        }
        Command::ClosedOrbit { mode, input } => {
            let g = read_graph(&input)?;
            let (rep, closed) = match mode {
                Mode::C => {
                    let r = c_closed_orbit_rep(&g)?;
                    let ok = is_c_closed_orbit(&r);
                    (r, ok)
                }
                Mode::H => {
                    let r = h_closed_orbit_rep(&g)?;
                    let ok = is_h_closed_orbit(&r);
                    (r, ok)
                }
            };
            if json {
                outln!("{}", pretty(&json!({ "representative": rep, "closed_orbit": closed })));
            } else {
                outln!("{}", describe_curve(&rep)?);
                outln!("closed orbit {closed}");
                outln!("{}", rep.to_json());
            }
            Ok(true)
        }
        Command::Replacements { input } => {
            let g = read_graph(&input)?;
            let reps = enumerate_c_replacements(&g)?;
            if json {
                outln!("{}", pretty(&reps));
            } else {
                outln!("{} replacements", reps.len());
                for (i, r) in reps.iter().enumerate() {
                    outln!("{i:>3}  {}", describe_curve(r)?);
                }
            }
            Ok(true)
        }
        Command::ChowCertify { case, g, s, multiplicity } => {
            let case = match case {
                CaseKind::Cusp => ChowCase::NonOrdinaryCusp { g },
                CaseKind::Tacnode => ChowCase::HigherTacnode { g, s },
                CaseKind::Multiple => ChowCase::MultipleComponent { g, multiplicity },
                CaseKind::Tail => ChowCase::GenusOneTacnodeTail { g },
            };
            let cert = certify_unstable(&case)?;
            if json {
                outln!("{}", pretty(&cert));
            } else {
                outln!("case        {}", cert.case);
                outln!("weights     {}", weights_line(&cert.weights));
                for c in &cert.contributions {
                    outln!("  {:<12} {}", c.label, fmt_q(&c.bound));
                }
                outln!("lower bound {}", fmt_q(&cert.lower_bound));
                outln!("threshold   {}", fmt_q(&cert.threshold));
                outln!("verdict     {:?}", cert.verdict);
            }
            Ok(true)
        }
        Command::Divisor { op } => {
            let (label, value) = match op {
                DivisorOp::LambdaN { n, g } => (format!("lambda_{n}"), lambda_n(n, g)?.to_string()),
                DivisorOp::Viehweg { n, m, g } => {
                    (format!("viehweg n={n} m={m} g={g}"), viehweg_class(n, m, g)?.to_string())
                }
                DivisorOp::Moriwaki { g } => {
                    let d = moriwaki_decomposition(g)?;
                    if json {
                        outln!("{}", pretty(&d));
                        return Ok(d.identity_holds && d.all_positive);
                    }
                    let rest: Vec<String> = d.delta_rest.iter().map(fmt_q).collect();
                    outln!("moriwaki coefficient {}", fmt_q(&d.moriwaki));
                    outln!("lambda               {}", fmt_q(&d.lambda));
                    outln!("delta_1              {}", fmt_q(&d.delta_1));
                    outln!("delta_i, i >= 2      {}", rest.join(", "));
                    outln!("identity {} positive {}", d.identity_holds, d.all_positive);
                    return Ok(d.identity_holds && d.all_positive);
                }
                DivisorOp::Epsilon { m } => ("epsilon".to_string(), fmt_q(&epsilon_of_m(m)?)),
                DivisorOp::Canonical { alpha, g } => {
                    let a = parse_q(&alpha)?;
                    (format!("K + {} delta", fmt_q(&a)), canonical_alpha_class(&a, g)?.to_string())
                }
                DivisorOp::Logdisc { alpha, g } => {
                    let a = parse_q(&alpha)?;
                    ("pullback".to_string(), pseudostable_pullback(&a, g)?.to_string())
                }
            };
            if json {
                outln!("{}", pretty(&json!({ "label": label, "value": value })));
            } else {
                outln!("{value}");
            }
            Ok(true)
        }
        Command::PaperCheck { only, expectations } => {
            let (exp, source) = match &expectations {
                Some(p) => {
                    let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                    (Expectations::from_json(&text)?, p.display().to_string())
                }
                None => (Expectations::pinned(), "bundled".to_string()),
            };
            let manifest = run_paper_check(&only, &exp, &source);
            if json {
                outln!("{}", manifest.to_json());
            } else {
                write!(std::io::stdout(), "{}", manifest.to_text())?;
            }
            Ok(manifest.ok())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
