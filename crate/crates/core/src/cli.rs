//! The `hilbchow` command line: argument parsing and JSON/text output.

use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{Character, GradedSubmodule};
use crate::assembly::labels::{check_relation_file, LabelFile, LabelMap};
use crate::assembly::{component_decomposition, equivariant_chow, RelationFile, RelationReport};
use crate::error::{Error, Result};
use crate::fixed_points::{
    betti_bb, enumerate_fixed_points, tangent_representation, HilbFixedPoint,
};
use crate::graded_hilbert::GradedHilbModel;
use crate::staircase::{
    complement, complement_in_box, incidence_necessary, linkage, ReversePlanePartition,
};
use crate::staircase::{Staircase, WeightedHilbertFunction};
use crate::toric::{Subtorus, ToricSurface};

#[derive(Debug, Parser)]
#[command(
    name = "hilbchow",
    version,
    about = "Equivariant Chow rings of Hilbert schemes of points on toric surfaces"
)]
pub struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Module,
    Betti,
    RelationsCheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BettiMethod {
    /// Count fixed points by positive weights against a generic direction.
    Bb,
    /// Quotient of the computed equivariant module.
    Chow,
}

#[derive(Debug, Args)]
pub struct Target {
    /// `P2`, `P1xP1`, `F<a>`, a JSON ray list, or a path to a fan file.
    #[arg(long, default_value = "P2")]
    pub surface: String,
    /// Number of points `d`.
    #[arg(long)]
    pub points: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the torus-fixed points of the Hilbert scheme.
    FixedPoints {
        #[command(flatten)]
        target: Target,
        /// Label file (default: bundled labels for P2 with 3 points).
        #[arg(long)]
        labels: Option<String>,
    },
    /// Tangent weights at one fixed point, or at all of them.
    Tangent {
        #[command(flatten)]
        target: Target,
        /// A fixed-point id such as `p3[2,1]+p1[1]`, or a letter label.
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        labels: Option<String>,
    },
    /// Fixed points and the Chern-class module of a graded Hilbert scheme.
    GradedHilbert {
        /// Positive weights `a,b` of `x` and `y`.
        #[arg(long, value_delimiter = ',')]
        weights: Vec<u32>,
        /// Values `h0,h1,…` of the Hilbert function.
        #[arg(long, value_delimiter = ',', required = true)]
        hilbert: Vec<u32>,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
    /// Components of the fixed locus of the subtorus `ker(chi)`.
    Components {
        #[command(flatten)]
        target: Target,
        /// The character `a,b` cutting out the subtorus.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        subtorus: Vec<i64>,
        #[arg(long)]
        labels: Option<String>,
    },
    /// The equivariant Chow ring as a submodule of `R^F`.
    Chow {
        #[command(flatten)]
        target: Target,
        /// Highest degree computed (default: 2d).
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, value_enum, default_value_t = Emit::Module)]
        emit: Emit,
        /// Relation file for `--emit relations-check`.
        #[arg(long)]
        relations: Option<String>,
        #[arg(long)]
        labels: Option<String>,
    },
    /// Betti numbers `b_0, b_2, …`.
    Betti {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = BettiMethod::Bb)]
        method: BettiMethod,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Check a relation file against the computed ring; exits 1 on failure.
    Verify {
        #[command(flatten)]
        target: Target,
        /// Relation file; `thm53.json` falls back to the bundled copy.
        #[arg(long)]
        relations: String,
        /// Label file (default: bundled labels for P2 with 3 points).
        #[arg(long)]
        labels: Option<String>,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// The necessary incidence condition between two staircases.
    Incidence {
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
    },
    /// Complement of a staircase in a box.
    Complement {
        #[arg(long)]
        staircase: String,
        /// Box size (default: the colength).
        #[arg(long = "box")]
        box_size: Option<u32>,
    },
    /// A reverse plane partition on `--to` linking `--from` to it.
    Linkage {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
}

/// Rendered output and whether every check passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub success: bool,
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    pool.install(|| execute(&cli.command, cli.format))
}

fn read_input(arg: &str) -> Result<String> {
    if Path::new(arg).exists() {
        return Ok(std::fs::read_to_string(arg)?);
    }
    let name = Path::new(arg)
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or(arg);
    crate::data::bundled(name)
        .map(str::to_string)
        .ok_or_else(|| Error::InvalidInput(format!("no such file {arg:?}")))
}

fn staircase(arg: &str) -> Result<Staircase> {
    let t = arg.trim();
    if t.starts_with('[') {
        t.parse()
    } else {
        format!("[{t}]").parse()
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn labels_for(surface: &ToricSurface, d: u32, arg: Option<&str>) -> Result<Option<LabelFile>> {
    match arg {
        Some(a) => Ok(Some(LabelFile::parse(&read_input(a)?)?)),
        None => Ok(LabelFile::default_for(surface, d)),
    }
}

struct Context {
    surface: ToricSurface,
    d: u32,
    points: Vec<HilbFixedPoint>,
    label_file: Option<LabelFile>,
    labels: Option<LabelMap>,
}

impl Context {
    fn new(target: &Target, labels: Option<&str>) -> Result<Self> {
        let surface = ToricSurface::resolve(&target.surface)?;
        let d = target.points;
        let label_file = labels_for(&surface, d, labels)?;
        let labels = match &label_file {
            Some(f) => Some(f.load_for(&surface, d)?.2),
            None => None,
        };
        Ok(Context {
            points: enumerate_fixed_points(&surface, d),
            surface,
            d,
            label_file,
            labels,
        })
    }

    fn id(&self, i: usize) -> String {
        self.points[i].id(&self.surface)
    }

    fn label(&self, i: usize) -> String {
        self.labels
            .as_ref()
            .and_then(|m| m.canonical_name(i))
            .map_or_else(|| self.id(i), str::to_string)
    }

    fn find(&self, text: &str) -> Result<usize> {
        if let Some(map) = &self.labels {
            if !text.contains('[') {
                return map.resolve(text);
            }
        }
        let fp = HilbFixedPoint::parse(&self.surface, text)?;
        self.points.iter().position(|q| q == &fp).ok_or_else(|| {
            Error::InvalidInput(format!(
                "{text} is not a fixed point with {} points",
                self.d
            ))
        })
    }

    fn record(&self, i: usize) -> Result<PointRecord> {
        Ok(PointRecord {
            index: i,
            id: self.id(i),
            label: self.label(i),
            parts: self.points[i]
                .parts
                .iter()
                .map(ToString::to_string)
                .collect(),
            weights: tangent_representation(&self.surface, &self.points[i])?,
        })
    }

    fn module(&self, max_degree: Option<u32>) -> Result<GradedSubmodule> {
        equivariant_chow(&self.surface, self.d, max_degree.unwrap_or(2 * self.d))
    }

    fn verify(&self, module: &GradedSubmodule, relations: &str) -> Result<RelationReport> {
        let file = RelationFile::parse(&read_input(relations)?)?;
        check_relation_file(
            &self.surface,
            self.d,
            module,
            &file,
            self.label_file.as_ref(),
        )
    }
}

#[derive(Serialize)]
struct PointRecord {
    index: usize,
    id: String,
    label: String,
    parts: Vec<String>,
    weights: Vec<Character>,
}

#[derive(Serialize)]
struct ComponentRecord {
    index: usize,
    shape: String,
    dimension: usize,
    members: Vec<String>,
    labels: Vec<String>,
    factors: Vec<String>,
}

#[derive(Serialize)]
struct GeneratorRecord {
    degree: u32,
    j: u32,
    entries: Vec<String>,
}

#[derive(Serialize)]
struct GradedRecord {
    weights: (u32, u32),
    hilbert: Vec<u32>,
    fixed_points: Vec<String>,
    embedding_degrees: Vec<u32>,
    generators: Vec<GeneratorRecord>,
    piece_dims: Vec<usize>,
}

#[derive(Serialize)]
struct BettiRecord {
    piece_dims: Vec<usize>,
    betti: Vec<usize>,
}

#[derive(Serialize)]
struct IncidenceRecord {
    first: Staircase,
    second: Staircase,
    linkage: Option<ReversePlanePartition>,
    complement_linkage: Option<ReversePlanePartition>,
    necessary_condition: bool,
}

fn report_outcome(report: &RelationReport, format: Format) -> Result<Outcome> {
    let output = match format {
        Format::Json => json(report)?,
        Format::Text => report.to_text(),
    };
    Ok(Outcome {
        output,
        success: report.all_passed && report.relation_cut_equal,
    })
}

fn ok(output: String) -> Result<Outcome> {
    Ok(Outcome {
        output,
        success: true,
    })
}

fn execute(command: &Command, format: Format) -> Result<Outcome> {
    match command {
        Command::FixedPoints { target, labels } => {
            let ctx = Context::new(target, labels.as_deref())?;
            let records = (0..ctx.points.len())
                .map(|i| ctx.record(i))
                .collect::<Result<Vec<_>>>()?;
            match format {
                Format::Json => ok(json(&records)?),
                Format::Text => ok(records
                    .iter()
                    .map(|r| format!("{}\t{}\n", r.label, r.id))
                    .collect()),
            }
        }
        Command::Tangent {
            target,
            point,
            labels,
        } => {
            let ctx = Context::new(target, labels.as_deref())?;
            let indices = match point {
                Some(p) => vec![ctx.find(p)?],
                None => (0..ctx.points.len()).collect(),
            };
            let records = indices
                .into_iter()
                .map(|i| ctx.record(i))
                .collect::<Result<Vec<_>>>()?;
            match format {
                Format::Json => ok(json(&records)?),
                Format::Text => ok(records
                    .iter()
                    .map(|r| {
                        let w: Vec<String> = r.weights.iter().map(ToString::to_string).collect();
                        format!("{}\t{}\n", r.label, w.join(" "))
                    })
                    .collect()),
            }
        }
        Command::GradedHilbert {
            weights,
            hilbert,
            max_degree,
        } => {
            let w = match weights.as_slice() {
                [] => (1, 1),
                [a, b] => (*a, *b),
                _ => return Err(Error::InvalidInput("--weights takes a,b".into())),
            };
            let model = GradedHilbModel::new(WeightedHilbertFunction::from_list(w, hilbert)?);
            let module = model.module_m(Character::T1, Character::T2, *max_degree)?;
            let mut generators = Vec::new();
            for &d in &model.embedding_degrees {
                for j in 1..=model.hilbert.value(d) {
                    let g = model.chern_generator(d, j, Character::T1, Character::T2)?;
                    generators.push(GeneratorRecord {
                        degree: d,
                        j,
                        entries: g.entries().iter().map(ToString::to_string).collect(),
                    });
                }
            }
            ok(json(&GradedRecord {
                weights: w,
                hilbert: hilbert.clone(),
                fixed_points: model.fixed_point_ids(),
                embedding_degrees: model.embedding_degrees.clone(),
                generators,
                piece_dims: module.piece_dims(),
            })?)
        }
        Command::Components {
            target,
            subtorus,
            labels,
        } => {
            let ctx = Context::new(target, labels.as_deref())?;
            let &[a, b] = subtorus.as_slice() else {
                return Err(Error::InvalidInput("--subtorus takes a,b".into()));
            };
            let t = Subtorus::new(Character::new(a, b))?;
            let records: Vec<ComponentRecord> = component_decomposition(&ctx.surface, ctx.d, &t)?
                .into_iter()
                .enumerate()
                .map(|(index, c)| ComponentRecord {
                    index,
                    shape: c.shape(),
                    dimension: c.dimension,
                    members: c.members.iter().map(|&i| ctx.id(i)).collect(),
                    labels: c.members.iter().map(|&i| ctx.label(i)).collect(),
                    factors: c.factors.iter().map(|f| f.shape()).collect(),
                })
                .collect();
            match format {
                Format::Json => ok(json(&records)?),
                Format::Text => ok(records
                    .iter()
                    .map(|r| format!("{}\tdim {}\t{}\n", r.shape, r.dimension, r.labels.join(" ")))
                    .collect()),
            }
        }
        Command::Chow {
            target,
            max_degree,
            emit,
            relations,
            labels,
        } => {
            let ctx = Context::new(target, labels.as_deref())?;
            let module = ctx.module(*max_degree)?;
            match emit {
                Emit::Module => ok(json(&module.to_json())?),
                Emit::Betti => {
                    let record = BettiRecord {
                        piece_dims: module.piece_dims(),
                        betti: module.quotient_betti()?,
                    };
                    ok(json(&record)?)
                }
                Emit::RelationsCheck => {
                    let file = relations.as_deref().unwrap_or("thm53.json");
                    report_outcome(&ctx.verify(&module, file)?, format)
                }
            }
        }
        Command::Betti {
            target,
            method,
            max_degree,
        } => {
            let ctx = Context::new(target, None)?;
            let betti = match method {
                BettiMethod::Bb => betti_bb(&ctx.surface, ctx.d, None)?,
                BettiMethod::Chow => ctx.module(*max_degree)?.quotient_betti()?,
            };
            match format {
                Format::Json => ok(serde_json::to_string(&betti)? + "\n"),
                Format::Text => {
                    let v: Vec<String> = betti.iter().map(ToString::to_string).collect();
                    ok(v.join(" ") + "\n")
                }
            }
        }
        Command::Verify {
            target,
            relations,
            labels,
            max_degree,
        } => {
            let ctx = Context::new(target, labels.as_deref())?;
            let module = ctx.module(*max_degree)?;
            report_outcome(&ctx.verify(&module, relations)?, format)
        }
        Command::Incidence { first, second } => {
            let (i, j) = (staircase(first)?, staircase(second)?);
            let necessary = incidence_necessary(&i, &j)?;
            let record = IncidenceRecord {
                linkage: linkage(&i, &j)?,
                complement_linkage: linkage(&complement(&i)?, &complement(&j)?)?,
                first: i,
                second: j,
                necessary_condition: necessary,
            };
            match format {
                Format::Json => ok(json(&record)?),
                Format::Text => ok(format!(
                    "{}\n",
                    if necessary { "possible" } else { "excluded" }
                )),
            }
        }
        Command::Complement {
            staircase: s,
            box_size,
        } => {
            let e = staircase(s)?;
            let n = box_size.unwrap_or(e.colength());
            let c = complement_in_box(&e, n)?;
            match format {
                Format::Json => ok(json(
                    &serde_json::json!({ "staircase": e, "box": n, "complement": c }),
                )?),
                Format::Text => ok(format!("{c}\n")),
            }
        }
        Command::Linkage { from, to } => {
            let (i, j) = (staircase(from)?, staircase(to)?);
            let rpp = linkage(&i, &j)?;
            match format {
                Format::Json => ok(json(
                    &serde_json::json!({ "from": i, "to": j, "linked": rpp.is_some(), "partition": rpp }),
                )?),
                Format::Text => {
                    ok(rpp.map_or_else(|| "not linked\n".to_string(), |r| r.to_string()))
                }
            }
        }
    }
}
