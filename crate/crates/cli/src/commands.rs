//! Command dispatch. Every command reads its inputs, runs one library
//! operation and prints the canonical form of the result.

use std::fmt::Write as _;
use std::io::Read;

use clap::{Parser, Subcommand};
use polycalc::faces::{self, ActiveSet};
use polycalc::ops::hull_union;
use polycalc::oracle::{brute_force_faces, difference_quotient_derivative, lp_conjugate_value};
use polycalc::{Error, GpcFunction, LinearMap, Polyhedron, QVector, Separation};

use crate::format::{parse_documents, parse_inline_vector, Body, Document, FunctionText};

/// Everything a command produced.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Failures of the front end itself, as opposed to library errors.
#[derive(Debug)]
enum Failure {
    Library(Error),
    Usage(String),
    Io(String),
    Oracle(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    fn code(&self) -> &'static str {
        match self {
            Failure::Library(e) => e.code(),
            Failure::Usage(_) => "USAGE",
            Failure::Io(_) => "IO_ERROR",
            Failure::Oracle(_) => "ORACLE_MISMATCH",
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            Failure::Library(Error::Parse { .. } | Error::DimensionMismatch { .. }) => 2,
            Failure::Library(_) | Failure::Oracle(_) => 1,
            Failure::Usage(_) | Failure::Io(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Library(e) => e.to_string(),
            Failure::Usage(m) | Failure::Io(m) | Failure::Oracle(m) => m.clone(),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

#[derive(Parser, Debug)]
#[command(
    name = "polycalc",
    version,
    about = "Exact calculus of polyhedral convex sets and functions",
    after_help = "Files hold hrep, vrep, function, vector or map documents; `-` reads standard \
                  input. Points may also be given inline as v:1/2,-3."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the other description of a set (hrep <-> vrep)
    Convert { set: String },
    /// Print the canonical form of a document
    Canonical { file: String },
    /// Whether a point lies in a set
    Contains { set: String, point: String },
    /// Whether a set is empty
    Empty { set: String },
    /// Whether two sets are equal
    Equal { first: String, second: String },
    /// Minkowski sum
    Sum { first: String, second: String },
    /// Intersection
    Intersect { first: String, second: String },
    /// Convex hull of a union
    HullUnion {
        #[arg(required = true)]
        sets: Vec<String>,
    },
    /// Image under a linear map
    Image { set: String, map: String },
    /// Preimage under a linear map
    Preimage { set: String, map: String },
    /// Recession cone
    Recession { set: String },
    /// Cone generated by a set containing the origin
    Cone { set: String },
    /// Tangent cone at a point
    Tangent { set: String, point: String },
    /// Normal cone at a point
    Normal { set: String, point: String },
    /// Polar set
    Polar { set: String },
    /// Strict separation of two sets, or a common point
    Separate { first: String, second: String },
    /// All nonempty faces
    Faces {
        set: String,
        /// Compare with brute-force enumeration over index sets
        #[arg(long)]
        oracle: bool,
    },
    /// The face defined by an index set and its exposing functional
    Expose {
        set: String,
        /// Comma-separated inequality indices, e.g. 0,2 (empty: {})
        indices: String,
    },
    /// A relative interior point
    Ripoint { set: String },
    /// Value of a function at a point
    Feval { function: String, point: String },
    /// Sum of two functions
    Fsum { first: String, second: String },
    /// Conjugate function
    Fconj {
        function: String,
        /// Compare with linear programming at sample dual points
        #[arg(long)]
        oracle: bool,
    },
    /// Subdifferential at a point
    Fsubdiff { function: String, point: String },
    /// Directional derivative at a point
    Fdirderiv {
        function: String,
        point: String,
        /// Compare with difference quotients along sample directions
        #[arg(long)]
        oracle: bool,
    },
    /// Infimal convolution
    Finfconv { first: String, second: String },
    /// Indicator function of a set
    Findicator { set: String },
    /// Whether f(x) + f*(y) = <y, x>
    Fycheck {
        function: String,
        point: String,
        dual: String,
    },
}

/// Runs one command line (without the program name). Relative paths are
/// resolved against the working directory; `-` reads `stdin`.
pub fn run<S: AsRef<str>>(args: &[S], stdin: &mut dyn Read) -> Outcome {
    let argv = std::iter::once("polycalc").chain(args.iter().map(AsRef::as_ref));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    stdout: text,
                    ..Outcome::default()
                },
                _ => Outcome {
                    stderr: format!(
                        "error: USAGE: {}",
                        text.strip_prefix("error: ").unwrap_or(&text)
                    ),
                    code: 2,
                    ..Outcome::default()
                },
            };
        }
    };
    let mut ctx = Context {
        stdin,
        stdin_used: false,
    };
    match ctx.execute(cli.command) {
        Ok(stdout) => Outcome {
            stdout,
            ..Outcome::default()
        },
        Err(f) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {}: {}\n", f.code(), f.message()),
            code: f.exit_code(),
        },
    }
}

struct Context<'a> {
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Context<'_> {
    fn read(&mut self, path: &str) -> Run<String> {
        if path == "-" {
            if self.stdin_used {
                return Err(Failure::Usage(
                    "standard input can be read only once".into(),
                ));
            }
            self.stdin_used = true;
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(format!("standard input: {e}")))?;
            return Ok(s);
        }
        std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))
    }

    fn document(&mut self, path: &str) -> Run<Document> {
        let text = self.read(path)?;
        let mut docs = parse_documents(&text)?;
        if docs.is_empty() {
            return Err(Failure::Usage(format!("{path}: no document")));
        }
        Ok(docs.swap_remove(0))
    }

    /// The first document of a file, which must describe a set.
    fn set(&mut self, path: &str) -> Run<Polyhedron> {
        match self.document(path)?.body {
            Body::Hrep(c) => Ok(Polyhedron::from_constraints(&c)),
            Body::Vrep(g) => Ok(Polyhedron::from_generators(&g)),
            other => Err(Failure::Usage(format!(
                "{path}: expected a set, found {}",
                other.kind()
            ))),
        }
    }

    fn function(&mut self, path: &str) -> Run<GpcFunction> {
        match self.document(path)?.body {
            Body::Function(t) => {
                let domain = Polyhedron::from_constraints(&t.domain);
                Ok(GpcFunction::new(domain, t.pieces)?)
            }
            other => Err(Failure::Usage(format!(
                "{path}: expected a function, found {}",
                other.kind()
            ))),
        }
    }

    fn vector(&mut self, arg: &str, dim: usize) -> Run<QVector> {
        let v = match parse_inline_vector(arg) {
            Some(v) => v?,
            None => match self.document(arg)?.body {
                Body::Vector(v) => v,
                other => {
                    return Err(Failure::Usage(format!(
                        "{arg}: expected a vector, found {}",
                        other.kind()
                    )))
                }
            },
        };
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            }
            .into());
        }
        Ok(v)
    }

    fn map(&mut self, path: &str) -> Run<LinearMap> {
        match self.document(path)?.body {
            Body::Map(m) => Ok(LinearMap::new(m)),
            other => Err(Failure::Usage(format!(
                "{path}: expected a map, found {}",
                other.kind()
            ))),
        }
    }

    fn pair(&mut self, a: &str, b: &str) -> Run<(Polyhedron, Polyhedron)> {
        Ok((self.set(a)?, self.set(b)?))
    }

    fn execute(&mut self, command: Command) -> Run<String> {
        use Command::*;
        Ok(match command {
            Convert { set } => match self.document(&set)?.body {
                Body::Hrep(c) => Polyhedron::from_constraints(&c).generators().to_string(),
                Body::Vrep(g) => Polyhedron::from_generators(&g).constraints().to_string(),
                other => {
                    return Err(Failure::Usage(format!(
                        "{set}: cannot convert a {}",
                        other.kind()
                    )))
                }
            },
            Canonical { file } => {
                let doc = self.document(&file)?;
                match doc.body {
                    Body::Hrep(c) => show_set(&Polyhedron::from_constraints(&c)),
                    Body::Vrep(g) => show_set(&Polyhedron::from_generators(&g)),
                    Body::Function(t) => {
                        let f =
                            GpcFunction::new(Polyhedron::from_constraints(&t.domain), t.pieces)?;
                        show_function(&f.canonical())
                    }
                    body => Document {
                        name: doc.name,
                        body,
                    }
                    .to_string(),
                }
            }
            Contains { set, point } => {
                let p = self.set(&set)?;
                let x = self.vector(&point, p.dim())?;
                show_bool(p.contains(&x)?)
            }
            Empty { set } => show_bool(self.set(&set)?.is_empty()),
            Equal { first, second } => {
                let (a, b) = self.pair(&first, &second)?;
                show_bool(a.set_equal(&b)?)
            }
            Sum { first, second } => {
                let (a, b) = self.pair(&first, &second)?;
                show_set(&a.minkowski_sum(&b)?)
            }
            Intersect { first, second } => {
                let (a, b) = self.pair(&first, &second)?;
                show_set(&a.intersect(&b)?)
            }
            HullUnion { sets } => {
                let ps = sets.iter().map(|s| self.set(s)).collect::<Run<Vec<_>>>()?;
                show_set(&hull_union(ps[0].dim(), &ps)?)
            }
            Image { set, map } => {
                let p = self.set(&set)?;
                show_set(&p.image(&self.map(&map)?)?)
            }
            Preimage { set, map } => {
                let p = self.set(&set)?;
                show_set(&p.preimage(&self.map(&map)?)?)
            }
            Recession { set } => show_set(&self.set(&set)?.recession_cone()?),
            Cone { set } => show_set(&self.set(&set)?.cone_of()?),
            Tangent { set, point } => {
                let p = self.set(&set)?;
                let x = self.vector(&point, p.dim())?;
                show_set(&p.tangent_cone(&x)?)
            }
            Normal { set, point } => {
                let p = self.set(&set)?;
                let x = self.vector(&point, p.dim())?;
                show_set(&p.normal_cone(&x)?)
            }
            Polar { set } => show_set(&self.set(&set)?.polar()?),
            Separate { first, second } => {
                let (a, b) = self.pair(&first, &second)?;
                match a.separate(&b)? {
                    Separation::Separated { functional, sup_first, inf_second } => format!(
                        "separated\nfunctional {functional}\nsup_first {sup_first}\ninf_second {inf_second}\n"
                    ),
                    Separation::Intersecting { witness } => {
                        format!("intersecting\nwitness {witness}\n")
                    }
                }
            }
            Faces { set, oracle } => {
                let p = self.set(&set)?;
                let all = faces::enumerate_faces(&p)?;
                let mut out = format!("faces count={}\n", all.len());
                for face in &all {
                    writeln!(out, "face J={} dim={}", face.canonical_j, face.dim()).unwrap();
                    out.push_str(&show_set(&face.body));
                }
                if oracle {
                    let mut mine: Vec<_> =
                        all.iter().map(|f| f.body.constraints().clone()).collect();
                    let mut theirs: Vec<_> = brute_force_faces(&p)
                        .iter()
                        .map(|f| f.constraints().clone())
                        .collect();
                    mine.sort();
                    theirs.sort();
                    if mine != theirs {
                        return Err(Failure::Oracle(format!(
                            "{} faces enumerated, {} by brute force",
                            mine.len(),
                            theirs.len()
                        )));
                    }
                    writeln!(out, "# oracle agrees on {} faces", theirs.len()).unwrap();
                }
                out
            }
            Expose { set, indices } => {
                let p = self.set(&set)?;
                let j = parse_indices(&indices)?;
                let body = faces::face_from_index_set(&p, &j)?;
                if body.is_empty() {
                    return Err(Error::EmptySet.into());
                }
                let ri = faces::relative_interior_point(&body)?;
                let face = faces::Face {
                    canonical_j: faces::active_set(&p, &ri)?,
                    body,
                };
                let functional = faces::exposing_functional(&p, &face);
                format!(
                    "face J={} dim={}\nfunctional {functional}\n{}",
                    face.canonical_j,
                    face.dim(),
                    show_set(&face.body)
                )
            }
            Ripoint { set } => {
                let x = faces::relative_interior_point(&self.set(&set)?)?;
                Document::new(Body::Vector(x)).to_string()
            }
            Feval { function, point } => {
                let f = self.function(&function)?;
                let x = self.vector(&point, f.dim())?;
                format!("{}\n", f.evaluate(&x)?)
            }
            Fsum { first, second } => {
                let f = self.function(&first)?;
                show_function(&f.add(&self.function(&second)?)?)
            }
            Fconj { function, oracle } => {
                let f = self.function(&function)?;
                let conj = f.conjugate();
                let mut out = show_function(&conj);
                if oracle {
                    let samples = dual_samples(&conj);
                    for y in &samples {
                        let mine = conj.evaluate(y)?;
                        let theirs = lp_conjugate_value(&f, y)?;
                        if mine != theirs {
                            return Err(Failure::Oracle(format!(
                                "f*({y}) = {mine}, linear programming gives {theirs}"
                            )));
                        }
                    }
                    writeln!(out, "# oracle agrees at {} dual points", samples.len()).unwrap();
                }
                out
            }
            Fsubdiff { function, point } => {
                let f = self.function(&function)?;
                let x = self.vector(&point, f.dim())?;
                show_set(&f.subdifferential(&x)?)
            }
            Fdirderiv {
                function,
                point,
                oracle,
            } => {
                let f = self.function(&function)?;
                let x = self.vector(&point, f.dim())?;
                let d = f.directional_derivative(&x)?;
                let mut out = show_function(&d);
                if oracle {
                    let dirs = grid(f.dim());
                    for h in &dirs {
                        let mine = d.evaluate(h)?;
                        let theirs = difference_quotient_derivative(&f, &x, h)?;
                        if mine != theirs {
                            return Err(Failure::Oracle(format!(
                                "f'(x; {h}) = {mine}, difference quotients give {theirs}"
                            )));
                        }
                    }
                    writeln!(out, "# oracle agrees along {} directions", dirs.len()).unwrap();
                }
                out
            }
            Finfconv { first, second } => {
                let f = self.function(&first)?;
                show_function(&f.inf_convolution(&self.function(&second)?)?)
            }
            Findicator { set } => show_function(&GpcFunction::indicator(&self.set(&set)?)?),
            Fycheck {
                function,
                point,
                dual,
            } => {
                let f = self.function(&function)?;
                let x = self.vector(&point, f.dim())?;
                let y = self.vector(&dual, f.dim())?;
                show_bool(f.fenchel_young_check(&x, &y)?)
            }
        })
    }
}

fn show_bool(b: bool) -> String {
    format!("{b}\n")
}

/// Canonical constraint form followed by canonical generator form.
pub fn show_set(p: &Polyhedron) -> String {
    format!("{}{}", p.constraints(), p.generators())
}

pub fn show_function(f: &GpcFunction) -> String {
    Document::new(Body::Function(FunctionText {
        dim: f.dim(),
        domain: f.domain().constraints().clone(),
        pieces: f.pieces().to_vec(),
    }))
    .to_string()
}

fn parse_indices(text: &str) -> Run<ActiveSet> {
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    let mut out = Vec::new();
    for part in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let i = part
            .parse::<usize>()
            .map_err(|_| Failure::Usage(format!("invalid index `{part}`")))?;
        out.push(i);
    }
    Ok(ActiveSet::new(out))
}

/// Integer points with coordinates in -2..=2, or the signed unit vectors
/// when that grid would be large.
fn grid(dim: usize) -> Vec<QVector> {
    if dim > 4 {
        return (0..dim)
            .flat_map(|i| {
                let e = QVector::unit(dim, i);
                [-&e, e]
            })
            .collect();
    }
    let mut points = vec![Vec::new()];
    for _ in 0..dim {
        points = points
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-2..=2).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    points.iter().map(|p| QVector::from_i64s(p)).collect()
}

fn dual_samples(conj: &GpcFunction) -> Vec<QVector> {
    let mut samples = grid(conj.dim());
    samples.extend(conj.domain().generators().points.iter().cloned());
    samples
}
