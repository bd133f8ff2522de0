//! The `steinmann` command line. Inputs and outputs are JSON; see
//! [`crate::json`] for the encodings.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::adjoint::{
    c_functional, c_of, comb_coefficients, derivative, dynkin, egs_expansion, eulerian_element, is_steinmann,
    m_functional, p_functional, reconstruct, steinmann_coords, Arrangement, Atlas, ChamberFunctional, DEFAULT_MAX_N,
    HARD_MAX_N,
};
use crate::composition::{SetComposition, SetPartition};
use crate::error::{Error, Result};
use crate::json;
use crate::labels::{GroundSet, LabelSet};
use crate::sigma::{antipode, change_basis, comultiply, cone_in_m, multiply, pairing, tits_h, Basis};
use crate::verify;
use crate::zie::{bracket, cobracket, embed, project};

#[derive(Parser, Debug)]
#[command(
    name = "steinmann",
    version,
    about = "Exact computations with set compositions, adjoint chambers and Steinmann functionals"
)]
pub struct Cli {
    #[command(flatten)]
    pub opts: Opts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Ground set {1, …, n}.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Ground set as comma-separated labels, in order.
    #[arg(long, global = true, value_delimiter = ',', conflicts_with = "n")]
    pub ground: Option<Vec<String>>,
    /// Basis for inputs built by the command or for conversions.
    #[arg(long, global = true)]
    pub basis: Option<String>,
    /// Directory for chamber caches.
    #[arg(long, global = true, env = "STEINMANN_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Refuse adjoint computations above this many labels.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List compositions, partitions or chambers of the ground set.
    Enumerate { what: Kind },
    /// Product of two elements with disjoint grounds.
    Mul { a: String, b: String },
    /// Coproduct at a subset: `--split 1,3`.
    Comul {
        x: String,
        #[arg(long, value_delimiter = ',')]
        split: Vec<String>,
    },
    /// The antipode, in the basis of the input.
    Antipode { x: String },
    /// `⟨a, x⟩` for a dual and a primal element.
    Pair { a: String, x: String },
    /// Change of basis to `--basis`.
    Basis { x: String },
    /// Tits product of two compositions, or of two `H`-basis elements.
    Tits { a: String, b: String },
    /// The element `C_p` of a preposet, in `--basis` (default `M`).
    Cone {
        p: String,
        /// Print the piecewise constant function on the braid arrangement.
        #[arg(long)]
        geometric: bool,
    },
    /// Free Lie algebra on set compositions.
    #[command(subcommand)]
    Zie(ZieCommand),
    /// Chambers of the adjoint braid arrangement.
    #[command(subcommand)]
    Chambers(ChambersCommand),
    /// Steinmann relations and coordinates of chamber functionals.
    #[command(subcommand)]
    Steinmann(SteinmannCommand),
    /// Discrete derivative of a Steinmann functional across `H_(S|T)`.
    Derivative {
        f: String,
        #[arg(long, value_delimiter = ',')]
        split: Vec<String>,
    },
    /// The Eulerian chamber combination.
    Eulerian,
    /// Dynkin element of a chamber, in the `H` basis.
    #[command(subcommand)]
    Dynkin(DynkinCommand),
    /// Coefficients of a Steinmann functional in the `p̌` basis.
    Expand { f: String },
    /// Run an invariant suite.
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum ZieCommand {
    /// A tree or combination of trees in the comb basis.
    Reduce {
        t: String,
    },
    /// Into `Σ` (basis `Q`).
    Embed {
        z: String,
    },
    /// From `Σ*` onto `Zie*`.
    Project {
        x: String,
    },
    Bracket {
        a: String,
        b: String,
    },
    Cobracket {
        d: String,
        #[arg(long, value_delimiter = ',')]
        split: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ChambersCommand {
    Count,
    List,
}

#[derive(Subcommand, Debug)]
pub enum SteinmannCommand {
    Relations,
    Check {
        f: String,
    },
    /// Coordinates in the `č_F` basis, `F` based.
    Coords {
        f: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum DynkinCommand {
    /// `Σ m̌_F(C) H_F`.
    Mbasis {
        #[arg(long)]
        chamber: String,
    },
    /// The product expansion over the signature of the chamber.
    Egs {
        #[arg(long)]
        chamber: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Kind {
    Compositions,
    Partitions,
    Chambers,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Suite {
    Hopf,
    Duality,
    Steinmann,
    Dynkin,
}

/// Parses `argv`, runs the command, and returns the exit code: 0 on success,
/// 1 on a domain error, 2 on a usage error or malformed input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(v) => {
            let _ = writeln!(out, "{v}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}

/// Inline JSON, `@path`, or `-` for standard input.
fn read_input(arg: &str) -> Result<Value> {
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path)?
    } else {
        arg.to_string()
    };
    json::parse_value(&text)
}

struct Ctx {
    ground: GroundSet,
    atlas: Atlas,
    basis: Option<String>,
}

impl Ctx {
    fn new(opts: &Opts, inputs: &[&Value]) -> Result<Ctx> {
        let ground = if let Some(labels) = &opts.ground {
            GroundSet::new(labels.iter().map(|s| s.trim().to_string()))?
        } else if let Some(n) = opts.n {
            GroundSet::numbered(n)?
        } else if inputs.is_empty() {
            return Err(Error::Parse("give the ground set with --n or --ground".into()));
        } else {
            json::infer_ground(inputs)?
        };
        let max_n = opts.max_n.min(HARD_MAX_N);
        Ok(Ctx { ground, atlas: Atlas::new(opts.cache_dir.clone(), max_n), basis: opts.basis.clone() })
    }

    fn all(&self) -> LabelSet {
        self.ground.all()
    }

    fn basis(&self, default: Basis) -> Result<Basis> {
        self.basis.as_deref().map_or(Ok(default), Basis::parse)
    }

    fn split(&self, names: &[String]) -> Result<LabelSet> {
        self.ground.set_of(names)
    }

    fn arrangement(&self, ground: LabelSet) -> Result<std::sync::Arc<Arrangement>> {
        self.atlas.arrangement(ground)
    }

    /// A chamber functional: explicit values, a preposet (giving `č_p`), or a
    /// combination `{"ground", "basis": "c"|"m"|"p", "terms"}` of `č_F`,
    /// `m̌_F` or `p̌_F`.
    fn functional(&self, v: &Value) -> Result<ChamberFunctional> {
        let ground = json::parse_labels(
            &self.ground,
            v.get("ground").ok_or_else(|| Error::Parse("missing field \"ground\"".into()))?,
        )?;
        let arr = self.arrangement(ground)?;
        if v.get("values").is_some() {
            return json::parse_functional(&arr, v);
        }
        if v.get("pairs").is_some() {
            return c_functional(&arr, &json::parse_preposet(&self.ground, v)?);
        }
        let basis = v
            .get("basis")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("expected \"values\", \"pairs\" or \"basis\"".into()))?;
        let mut out = ChamberFunctional::zero(&arr);
        let terms =
            v.get("terms").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing field \"terms\"".into()))?;
        for t in terms {
            let f = json::parse_composition(&self.ground, t.get("key").unwrap_or(&Value::Null))?;
            let c = json::parse_rational(t.get("coeff").unwrap_or(&Value::Null))?;
            let g = match basis {
                "c" => c_of(&arr, &f)?,
                "m" => m_functional(&arr, &f)?,
                "p" => p_functional(&arr, &f)?,
                other => return Err(Error::Parse(format!("unknown functional basis {other:?}"))),
            };
            out = out.add(&g.scale(&c))?;
        }
        Ok(out)
    }
}

fn dispatch(cli: &Cli) -> Result<Value> {
    use Command::*;
    let inputs: Vec<Value> = match &cli.command {
        Mul { a, b } | Pair { a, x: b } | Tits { a, b } => vec![read_input(a)?, read_input(b)?],
        Comul { x, .. }
        | Antipode { x }
        | Basis { x }
        | Cone { p: x, .. }
        | Derivative { f: x, .. }
        | Expand { f: x } => {
            vec![read_input(x)?]
        }
        Zie(z) => match z {
            ZieCommand::Reduce { t: x } | ZieCommand::Embed { z: x } | ZieCommand::Project { x } => {
                vec![read_input(x)?]
            }
            ZieCommand::Cobracket { d, .. } => vec![read_input(d)?],
            ZieCommand::Bracket { a, b } => vec![read_input(a)?, read_input(b)?],
        },
        Steinmann(SteinmannCommand::Check { f } | SteinmannCommand::Coords { f }) => vec![read_input(f)?],
        _ => Vec::new(),
    };
    let refs: Vec<&Value> = inputs.iter().collect();
    let cx = Ctx::new(&cli.opts, &refs)?;
    let g = &cx.ground;
    match &cli.command {
        Enumerate { what } => Ok(match what {
            Kind::Compositions => Value::from(
                SetComposition::enumerate(cx.all()).iter().map(|f| json::composition(g, f)).collect::<Vec<_>>(),
            ),
            Kind::Partitions => {
                Value::from(SetPartition::enumerate(cx.all()).iter().map(|p| json::partition(g, p)).collect::<Vec<_>>())
            }
            Kind::Chambers => chamber_list(&cx)?,
        }),
        Mul { .. } => {
            let (a, b) = (json::parse_element(g, &inputs[0])?, json::parse_element(g, &inputs[1])?);
            Ok(json::element(g, &multiply(&a, &b)?))
        }
        Comul { split, .. } => {
            let x = json::parse_element(g, &inputs[0])?;
            Ok(json::tensor(g, &comultiply(&x, cx.split(split)?)?))
        }
        Antipode { .. } => Ok(json::element(g, &antipode(&json::parse_element(g, &inputs[0])?)?)),
        Pair { .. } => {
            let (a, x) = (json::parse_element(g, &inputs[0])?, json::parse_element(g, &inputs[1])?);
            Ok(json!({ "value": json::rational(&pairing(&a, &x)?) }))
        }
        Basis { .. } => {
            let x = json::parse_element(g, &inputs[0])?;
            let target = cx.basis.as_deref().ok_or_else(|| Error::Parse("--basis is required".into()))?;
            Ok(json::element(g, &change_basis(&x, crate::sigma::Basis::parse(target)?)?))
        }
        Tits { .. } => {
            if inputs[0].is_array() {
                let f = json::parse_composition(g, &inputs[0])?;
                let h = json::parse_composition(g, &inputs[1])?;
                return Ok(json::composition(g, &f.tits(&h)?));
            }
            let (a, b) = (json::parse_element(g, &inputs[0])?, json::parse_element(g, &inputs[1])?);
            Ok(json::element(g, &tits_h(&a, &b)?))
        }
        Cone { geometric, .. } => {
            let p = json::parse_preposet(g, &inputs[0])?;
            if *geometric {
                return Ok(json::pwc(g, &crate::braid::PwcFunction::cone(&p)));
            }
            Ok(json::element(g, &change_basis(&cone_in_m(&p), cx.basis(crate::sigma::Basis::M)?)?))
        }
        Zie(z) => zie(&cx, z, &inputs),
        Chambers(ChambersCommand::Count) => {
            let arr = cx.arrangement(cx.all())?;
            Ok(json!({ "n": g.len(), "chambers": arr.len() }))
        }
        Chambers(ChambersCommand::List) => chamber_list(&cx),
        Steinmann(s) => steinmann(&cx, s, &inputs),
        Derivative { split, .. } => {
            let f = cx.functional(&inputs[0])?;
            let s = cx.split(split)?;
            let d = derivative(&cx.atlas, &f, s)?;
            let (arr_s, arr_t) = (cx.arrangement(s)?, cx.arrangement(f.ground() - s)?);
            Ok(json::chamber_tensor(g, &arr_s, &arr_t, &d))
        }
        Eulerian => {
            let arr = cx.arrangement(cx.all())?;
            let e = eulerian_element(&arr)?;
            Ok(json::functional(g, &arr, &ChamberFunctional::new(&arr, e)?))
        }
        Dynkin(d) => {
            let arr = cx.arrangement(cx.all())?;
            let x = match d {
                DynkinCommand::Mbasis { chamber } => dynkin(&arr, arr.find(chamber)?),
                DynkinCommand::Egs { chamber } => egs_expansion(&arr, arr.find(chamber)?)?,
            };
            Ok(json::element(g, &x))
        }
        Expand { .. } => {
            let f = cx.functional(&inputs[0])?;
            let coeffs = comb_coefficients(&cx.atlas, &f)?;
            let arr = cx.arrangement(f.ground())?;
            if reconstruct(&arr, &coeffs)? != f {
                return Err(Error::NotSteinmann);
            }
            let terms: Vec<Value> = coeffs
                .iter()
                .map(|(k, c)| json!({ "key": json::composition(g, k), "coeff": json::rational(c) }))
                .collect();
            Ok(json!({ "ground": json::labels(g, f.ground()), "basis": "p", "terms": terms }))
        }
        Verify { suite, samples, seed } => {
            let n = g.len();
            let rep = match suite {
                Suite::Hopf => verify::hopf(n, *samples, *seed)?,
                Suite::Duality => verify::duality(n)?,
                Suite::Steinmann => verify::steinmann(&cx.atlas, n)?,
                Suite::Dynkin => verify::dynkin(&cx.atlas, n)?,
            };
            Ok(serde_json::to_value(&rep)?)
        }
    }
}

fn chamber_list(cx: &Ctx) -> Result<Value> {
    let arr = cx.arrangement(cx.all())?;
    let chambers: Vec<Value> = (0..arr.len()).map(|id| json::chamber(&arr, id)).collect();
    Ok(
        json!({ "ground": json::labels(&cx.ground, cx.all()), "hyperplanes": json::hyperplanes(&cx.ground, &arr), "chambers": chambers }),
    )
}

fn zie(cx: &Ctx, z: &ZieCommand, inputs: &[Value]) -> Result<Value> {
    let g = &cx.ground;
    match z {
        ZieCommand::Reduce { .. } => Ok(json::zie(g, &json::parse_zie(g, &inputs[0])?)),
        ZieCommand::Embed { .. } => Ok(json::element(g, &embed(&json::parse_zie(g, &inputs[0])?))),
        ZieCommand::Project { .. } => {
            let x = json::parse_element(g, &inputs[0])?;
            Ok(json::zie_dual(g, &project(&x)?))
        }
        ZieCommand::Bracket { .. } => {
            let (a, b) = (json::parse_zie(g, &inputs[0])?, json::parse_zie(g, &inputs[1])?);
            Ok(json::zie(g, &bracket(&a, &b)?))
        }
        ZieCommand::Cobracket { split, .. } => {
            let d = json::parse_zie_dual(g, &inputs[0])?;
            Ok(json::zie_tensor(g, &cobracket(&d, cx.split(split)?)?))
        }
    }
}

fn steinmann(cx: &Ctx, s: &SteinmannCommand, inputs: &[Value]) -> Result<Value> {
    let g = &cx.ground;
    match s {
        SteinmannCommand::Relations => {
            let arr = cx.arrangement(cx.all())?;
            let rels = cx.atlas.relations(cx.all())?;
            let list: Vec<Value> = rels.iter().map(|r| json::relation(g, &arr, r)).collect();
            Ok(json!({ "n": g.len(), "count": list.len(), "relations": list }))
        }
        SteinmannCommand::Check { .. } => {
            let f = cx.functional(&inputs[0])?;
            let rels = cx.atlas.relations(f.ground())?;
            let violated = rels.iter().filter(|r| !num::Zero::is_zero(&r.apply(&f))).count();
            Ok(json!({ "steinmann": is_steinmann(&rels, &f), "violated": violated, "relations": rels.len() }))
        }
        SteinmannCommand::Coords { .. } => {
            let f = cx.functional(&inputs[0])?;
            let arr = cx.arrangement(f.ground())?;
            let coords = steinmann_coords(&arr, &f)?.ok_or(Error::NotSteinmann)?;
            let terms: Vec<Value> = coords
                .iter()
                .map(|(k, c)| json!({ "key": json::composition(g, k), "coeff": json::rational(c) }))
                .collect();
            Ok(json!({ "ground": json::labels(g, f.ground()), "basis": "c", "terms": terms }))
        }
    }
}
