use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use ordbundle::bundle_classifier::{
    classify_pair, enumerate_classes, trivialize, w1_class, ComponentTrivialization, GroupBundle,
    W1Class,
};
use ordbundle::catalog;
use ordbundle::formats::{RawBundle, RawCochain, RawComplex, RawFrame, RawGroup, RawTotalClass};
use ordbundle::frames::{same_oriented_plane, standard_frame, Frame};
use ordbundle::gf2_complex::{cohomology, cup_product, is_cocycle, SimplicialComplex, Z2Cochain};
use ordbundle::kronecker::{demo_kronecker, parse_slope};
use ordbundle::ordered_group::OrderUnitVerdict;
use ordbundle::state_space::{
    affine_dimension, extreme_states, is_discrete_state, standard_probes,
};
use ordbundle::sw_calculus::{
    inverse_class, obstruction_coefficient_group, vanish_from_sections, whitney_product,
    CohomologyRing, TotalSWClass,
};
use ordbundle::Error;

use crate::report::Report;

/// Largest multiple of the unit tried when testing order-unit dominance.
const UNIT_SEARCH_BOUND: u32 = 1024;

#[derive(Debug, Parser)]
#[command(
    name = "ordbundle",
    version,
    about = "Ordered groups, Z/2 cohomology and bundles of ordered groups"
)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Add decimal approximations next to exact values.
    #[arg(long, global = true)]
    pub approx: bool,
    /// Reject complexes that are not closed under faces.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Z/2 cohomology ranks and class representatives.
    Cohomology {
        /// Complex JSON file, or `builtin:NAME` (e.g. builtin:torus, builtin:circle:5).
        #[arg(long)]
        complex: String,
        /// Only this degree.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Cup product of two cochains given as `{"left": .., "right": ..}`.
    Cup {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        file: PathBuf,
    },
    /// Order properties of a group.
    Group {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_enum)]
        check: Vec<Check>,
    },
    /// Extreme states of a group with its order unit.
    States {
        #[arg(long)]
        file: PathBuf,
    },
    /// Canonical frames of oriented planes; compares two frames.
    Frames {
        #[arg(long)]
        file: PathBuf,
    },
    /// Total Stiefel-Whitney class arithmetic and section constraints.
    Sw {
        #[arg(long)]
        complex: Option<String>,
        /// One total class or an array of them; several are multiplied.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Fiber rank k.
        #[arg(long)]
        rank: Option<usize>,
        /// Number m of independent sections.
        #[arg(long)]
        sections: Option<usize>,
        /// Cell dimension for the obstruction coefficient group.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Compares the w1 classes of two bundles.
    Classify {
        #[arg(long, required = true)]
        bundle: Vec<PathBuf>,
    },
    /// Lists the elements of H^1(K; Z/2).
    Enumerate {
        #[arg(long)]
        complex: String,
    },
    /// Orients a bundle coherently or exhibits an orientation-reversing loop.
    Trivialize {
        #[arg(long)]
        bundle: PathBuf,
    },
    /// Linear foliation of the torus with the given slope.
    DemoKronecker {
        /// `p/q` or `p/q+r/s√D`.
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        #[arg(long, default_value_t = 4)]
        subdivisions: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Total,
    Simple,
    Unit,
    All,
}

#[derive(Debug)]
pub enum Failure {
    /// Unreadable or malformed input, exit code 2.
    Usage(String),
    /// Well-formed input that the computation rejects, exit code 1.
    Domain(Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Domain(Error::Parse(_)) => 2,
            Failure::Domain(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_complex(spec: &str, strict: bool, report: &mut Report) -> CliResult<SimplicialComplex> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return catalog::by_name(name).map_err(|e| {
            Failure::Usage(format!(
                "{e}; known complexes: {}",
                catalog::NAMES.join(", ")
            ))
        });
    }
    let raw: RawComplex = read_json(Path::new(spec))?;
    let validated = SimplicialComplex::from_raw(&raw, strict)?;
    for face in &validated.added_faces {
        report.warn(format!("added missing face {face:?}"));
    }
    Ok(validated.complex)
}

fn load_bundle(path: &Path, strict: bool) -> CliResult<GroupBundle> {
    let raw: RawBundle = read_json(path)?;
    Ok(GroupBundle::from_raw(&raw, strict)?)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(v) => v,
        }
    }
}

#[derive(Deserialize)]
struct CupInput {
    left: RawCochain,
    right: RawCochain,
}

fn describe_class(class: &W1Class) -> String {
    if class.is_trivial() {
        "trivial".to_string()
    } else {
        format!("nontrivial; flips on edges {:?}", class.flipped_edges())
    }
}

/// Runs the parsed command. `argv` is echoed into the report.
pub fn run(cli: &Cli, argv: Vec<String>) -> CliResult<Report> {
    let mut report = Report::new(argv);
    match &cli.command {
        Command::Cohomology { complex, dim } => {
            let k = load_complex(complex, cli.strict, &mut report)?;
            report.push("vertices", k.vertex_count());
            report.push("dimension", k.dim());
            report.push(
                "simplex counts",
                (0..=k.dim()).map(|p| k.count(p)).collect::<Vec<_>>(),
            );
            report.push("euler characteristic", k.euler_characteristic());
            let degrees: Vec<usize> = match dim {
                Some(p) => vec![*p],
                None => (0..=k.dim()).collect(),
            };
            for p in degrees {
                let reps: Vec<RawCochain> = if p <= k.dim() {
                    cohomology(&k, p)
                        .representatives()
                        .iter()
                        .map(|c| c.to_raw(&k))
                        .collect()
                } else {
                    Vec::new()
                };
                report.push(format!("H^{p} rank"), reps.len());
                report.push(format!("H^{p} representatives"), reps);
            }
        }
        Command::Cup { complex, file } => {
            let k = load_complex(complex, cli.strict, &mut report)?;
            let input: CupInput = read_json(file)?;
            let a = Z2Cochain::from_raw(&k, &input.left)?;
            let b = Z2Cochain::from_raw(&k, &input.right)?;
            let c = cup_product(&k, &a, &b)?;
            report.push("degree", c.dim());
            report.push("product", c.to_raw(&k));
            if is_cocycle(&k, &a) && is_cocycle(&k, &b) {
                let h = cohomology(&k, c.dim());
                let nf = h.normal_form(&c)?;
                report.push("class", if nf.is_zero() { "zero" } else { "nonzero" });
                report.push("normal form", nf.to_raw(&k));
            } else {
                report.warn("inputs are not both cocycles, so the product has no cohomology class");
            }
        }
        Command::Group { file, check } => {
            let spec = read_json::<RawGroup>(file)?.parse()?;
            let (g, u) = (&spec.group, &spec.unit);
            report.push("group", g.to_string());
            report.push("rank", g.rank());
            report.push("unit", u.to_string());
            let all = check.is_empty() || check.contains(&Check::All);
            if all || check.contains(&Check::Total) {
                let verdict = if g.is_totally_ordered() {
                    "totally ordered".to_string()
                } else {
                    let kernel = g.kernel_lattice();
                    if kernel.is_empty() {
                        "not totally ordered".to_string()
                    } else {
                        let parts: Vec<String> = kernel.iter().map(ToString::to_string).collect();
                        format!("not totally ordered; kernel {}", parts.join(", "))
                    }
                };
                report.push("total", verdict);
            }
            if all || check.contains(&Check::Simple) {
                report.push(
                    "simple",
                    if g.is_simple() {
                        "simple"
                    } else {
                        "not simple"
                    },
                );
            }
            if all || check.contains(&Check::Unit) {
                let verdict = match g.is_order_unit(u, UNIT_SEARCH_BOUND)? {
                    OrderUnitVerdict::Unit => format!("{u} is an order unit"),
                    OrderUnitVerdict::NotUnit { generator } => format!(
                        "{u} is not an order unit: no multiple up to {UNIT_SEARCH_BOUND} dominates {generator}"
                    ),
                };
                report.push("order unit", verdict);
            }
            report.push("normalized", RawGroup::from_group(g, Some(u)));
        }
        Command::States { file } => {
            let spec = read_json::<RawGroup>(file)?.parse()?;
            let (g, u) = (&spec.group, &spec.unit);
            let states = extreme_states(g, u)?;
            let gens = standard_probes(g.rank());
            report.push("unit", u.to_string());
            report.push("extreme states", states.len());
            report.push(
                "states",
                states
                    .states()
                    .iter()
                    .map(|s| s.formula())
                    .collect::<Vec<_>>(),
            );
            let discrete = states
                .states()
                .iter()
                .map(|s| is_discrete_state(s, &gens))
                .collect::<ordbundle::Result<Vec<bool>>>()?;
            report.push("discrete", discrete);
            report.push("affine dimension", affine_dimension(&states, &gens)?);
            for (i, s) in states.states().iter().enumerate() {
                let values = gens
                    .iter()
                    .map(|e| s.eval(e))
                    .collect::<ordbundle::Result<Vec<_>>>()?;
                report.push(
                    format!("state {i} on generators"),
                    values.iter().map(ToString::to_string).collect::<Vec<_>>(),
                );
                if cli.approx {
                    report.push(
                        format!("state {i} on generators (approx)"),
                        values
                            .iter()
                            .map(|v| format!("≈ {:.12}", v.to_f64()))
                            .collect::<Vec<_>>(),
                    );
                }
            }
        }
        Command::Frames { file } => {
            let frames = read_json::<OneOrMany<RawFrame>>(file)?
                .into_vec()
                .iter()
                .map(Frame::from_raw)
                .collect::<ordbundle::Result<Vec<_>>>()?;
            let planes: Vec<_> = frames.iter().map(standard_frame).collect();
            for (i, p) in planes.iter().enumerate() {
                report.push(format!("frame {i}"), p.to_string());
                report.push(format!("frame {i} canonical"), p.as_frame().to_raw());
            }
            if let [f1, f2] = frames.as_slice() {
                let relation = if same_oriented_plane(f1, f2)? {
                    "same oriented plane"
                } else {
                    let mut flipped = planes[0].canonical_frame.clone();
                    let last = flipped.last_mut().expect("frames are nonempty");
                    last.iter_mut().for_each(|x| *x = -&*x);
                    if flipped == planes[1].canonical_frame {
                        "same plane, opposite orientation"
                    } else {
                        "different planes"
                    }
                };
                report.push("relation", relation);
            }
        }
        Command::Sw {
            complex,
            file,
            rank,
            sections,
            dim,
        } => {
            if file.is_none() && rank.is_none() {
                return Err(Failure::Usage("sw needs --file or --rank".into()));
            }
            if let Some(path) = file {
                let spec = complex
                    .as_deref()
                    .ok_or_else(|| Failure::Usage("sw --file needs --complex".into()))?;
                let ring = CohomologyRing::new(load_complex(spec, cli.strict, &mut report)?);
                let classes = read_json::<OneOrMany<RawTotalClass>>(path)?
                    .into_vec()
                    .iter()
                    .map(|raw| TotalSWClass::from_raw(ring.clone(), raw))
                    .collect::<ordbundle::Result<Vec<_>>>()?;
                for (i, w) in classes.iter().enumerate() {
                    report.push(format!("class {i}"), w.to_string());
                    report.push(format!("class {i} nonzero degrees"), w.nonzero_degrees());
                    let inv = inverse_class(w, ring.top_degree())?;
                    report.push(format!("class {i} inverse"), inv.to_string());
                    report.push(format!("class {i} inverse json"), inv.to_raw());
                    if let Some(m) = sections {
                        w.check_sections(*m)?;
                    }
                }
                if let Some((first, rest)) = classes.split_first() {
                    if !rest.is_empty() {
                        let product = rest
                            .iter()
                            .try_fold(first.clone(), |acc, w| whitney_product(&acc, w))?;
                        report.push("whitney product", product.to_string());
                        report.push("whitney product json", product.to_raw());
                    }
                }
            }
            if let Some(k) = rank {
                let m = sections.ok_or_else(|| Failure::Usage("--rank needs --sections".into()))?;
                report.push("vanishing degrees", vanish_from_sections(*k, m)?);
                if let Some(nu) = dim {
                    let group = obstruction_coefficient_group(*nu, *k, m)?;
                    report.push("obstruction coefficients", group.tag.to_string());
                    if let Some(note) = group.note {
                        report.warn(note);
                    }
                }
            }
        }
        Command::Classify { bundle } => {
            let [a, b] = bundle.as_slice() else {
                return Err(Failure::Usage(format!(
                    "classify takes exactly two --bundle files, got {}",
                    bundle.len()
                )));
            };
            let (e1, e2) = (load_bundle(a, cli.strict)?, load_bundle(b, cli.strict)?);
            let same = classify_pair(&e1, &e2)?;
            report.push("first w1", describe_class(&w1_class(&e1)));
            report.push("second w1", describe_class(&w1_class(&e2)));
            report.push("verdict", if same { "same class" } else { "distinct" });
        }
        Command::Enumerate { complex } => {
            let k = load_complex(complex, cli.strict, &mut report)?;
            let classes = enumerate_classes(&k);
            report.push("H^1 rank", cohomology(&k, 1).rank());
            report.push("class count", classes.len());
            report.push(
                "classes",
                classes.iter().map(describe_class).collect::<Vec<_>>(),
            );
            report.push(
                "representatives",
                classes
                    .iter()
                    .map(|c| c.representative.to_raw(&k))
                    .collect::<Vec<_>>(),
            );
        }
        Command::Trivialize { bundle } => {
            let e = load_bundle(bundle, cli.strict)?;
            let t = trivialize(&e);
            report.push("w1", describe_class(&w1_class(&e)));
            let lines: Vec<String> = t
                .components
                .iter()
                .map(|c| match c {
                    ComponentTrivialization::Gauge { vertices, signs } => {
                        format!("component {vertices:?}: orientable, gauge {signs:?}")
                    }
                    ComponentTrivialization::OddCycle { vertices, cycle } => {
                        format!("component {vertices:?}: orientation reverses along {cycle:?}")
                    }
                })
                .collect();
            report.push("components", lines);
            if let Some(gauge) = t.global_gauge(e.base().vertex_count()) {
                report.push("gauge", gauge);
            }
            report.push("trivialization", &t);
        }
        Command::DemoKronecker {
            slope,
            subdivisions,
        } => {
            let d = demo_kronecker(&parse_slope(slope)?, *subdivisions)?;
            report.push("slope", d.slope.to_string());
            if cli.approx {
                report.push_approx("slope", d.slope.to_f64());
            }
            report.push("functional", d.functional.to_string());
            let order = if d.is_rational() {
                let parts: Vec<String> = d.kernel.iter().map(ToString::to_string).collect();
                format!(
                    "rational: kernel span {}; not totally ordered",
                    parts.join(", ")
                )
            } else {
                format!(
                    "irrational: {}totally ordered; unique state {}",
                    if d.simple { "simple, " } else { "" },
                    d.unique_state.as_deref().unwrap_or("none")
                )
            };
            report.push("order", order);
            report.push("untwisted family w1", describe_class(&d.untwisted));
            report.push("twisted family w1", describe_class(&d.twisted));
            report.push(
                "families",
                if d.distinct {
                    format!("distinct classes ({} classes total over S¹)", d.class_count)
                } else {
                    "same class".to_string()
                },
            );
        }
    }
    Ok(report)
}
