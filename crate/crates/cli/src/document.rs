//! The collage document: a TOML file describing charts, gluings, and the
//! named points, flags and open families that subcommands refer to.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use polyrig_core::points::OrientedFlag;
use polyrig_core::refinement::SemiPolyhedron;
use polyrig_core::scalar::{format_scalar, parse_scalar};
use polyrig_core::{AffineFunction, AffineMap, Collage, ExtendedScalar, Gluing, GeneratorTable, PointSpec, Polyhedron, Scalar};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use toml::Spanned;

pub const VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DocumentError {
    Syntax { line: usize, column: usize, message: String },
    Semantic { code: &'static str, line: usize, column: usize, message: String },
}

impl DocumentError {
    pub fn code(&self) -> &'static str {
        match self {
            DocumentError::Syntax { .. } => "syntax",
            DocumentError::Semantic { code, .. } => code,
        }
    }
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocumentError::Syntax { line, column, message } => write!(f, "{line}:{column}: {message}"),
            DocumentError::Semantic { line, column, message, .. } => write!(f, "{line}:{column}: {message}"),
        }
    }
}

impl std::error::Error for DocumentError {}

// --- scalar encodings -------------------------------------------------------

/// A rational written as a `"p/q"` string (plain integers are accepted too).
#[derive(Clone, Debug, PartialEq, Eq)]
struct Rat(Scalar);

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(Rat(Scalar::from_integer(v.into()))),
            Repr::Str(s) => match parse_scalar(&s) {
                Some(v) => Ok(Rat(v)),
                None => Err(de::Error::custom(format!("invalid rational {s:?}, expected \"p/q\""))),
            },
        }
    }
}

/// An unbounded integer: a TOML integer when it fits, a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Int(BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(Int(v.into())),
            Repr::Str(s) => s
                .trim()
                .parse()
                .map(Int)
                .map_err(|_| de::Error::custom(format!("invalid integer {s:?}"))),
        }
    }
}

/// A coordinate: `-inf`, or a rational plus multiples of named generators,
/// e.g. `"1/2 + 3*pi"`.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Coord {
    NegInfinity,
    Finite { rational: Scalar, terms: Vec<(Scalar, String)> },
}

fn parse_coord(s: &str) -> Option<Coord> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact == "-inf" {
        return Some(Coord::NegInfinity);
    }
    if compact.is_empty() {
        return None;
    }
    let mut rational = Scalar::zero();
    let mut terms: BTreeMap<String, Scalar> = BTreeMap::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    let mut pieces = Vec::new();
    for i in 1..=bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'*') {
            pieces.push(&compact[start..i]);
            start = i;
        }
    }
    for piece in pieces {
        let (sign, body) = match piece.as_bytes()[0] {
            b'-' => (-1, &piece[1..]),
            b'+' => (1, &piece[1..]),
            _ => (1, piece),
        };
        let sign = Scalar::from_integer(sign.into());
        let (coeff, name) = match body.split_once('*') {
            Some((c, n)) => (parse_scalar(c)?, n),
            None if body.starts_with(|c: char| c.is_ascii_digit()) => {
                rational += sign * parse_scalar(body)?;
                continue;
            }
            None => (Scalar::from_integer(1.into()), body),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return None;
        }
        *terms.entry(name.to_string()).or_insert_with(Scalar::zero) += sign * coeff;
    }
    let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).map(|(n, c)| (c, n)).collect();
    Some(Coord::Finite { rational, terms })
}

fn format_coord(c: &Coord) -> String {
    match c {
        Coord::NegInfinity => "-inf".into(),
        Coord::Finite { rational, terms } => {
            let mut out = String::new();
            if !rational.is_zero() || terms.is_empty() {
                out.push_str(&format_scalar(rational));
            }
            for (c, name) in terms {
                if !out.is_empty() {
                    out.push_str(if c.is_negative() { " - " } else { " + " });
                } else if c.is_negative() {
                    out.push('-');
                }
                let a = c.abs();
                if a == Scalar::from_integer(1.into()) {
                    out.push_str(name);
                } else {
                    out.push_str(&format!("{}*{name}", format_scalar(&a)));
                }
            }
            out
        }
    }
}

impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_coord(self))
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_coord(&s).ok_or_else(|| de::Error::custom(format!("invalid coordinate {s:?}")))
    }
}

// --- raw file layout --------------------------------------------------------

fn is_false(b: &bool) -> bool {
    !*b
}

fn spanned<T>(v: T) -> Spanned<T> {
    Spanned::new(0..0, v)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    version: Spanned<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    generators: Vec<RawGenerator>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    charts: Vec<RawChart>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    gluings: Vec<RawGluing>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    points: Vec<RawPoint>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    flags: Vec<RawFlag>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    opens: Vec<RawOpen>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lattice: Option<RawLattice>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    name: Spanned<String>,
    lower: Rat,
    upper: Rat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRow {
    slope: Vec<Int>,
    constant: Rat,
    #[serde(default, skip_serializing_if = "is_false")]
    open: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChart {
    name: Spanned<String>,
    dim: usize,
    #[serde(default)]
    rows: Vec<Spanned<RawRow>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGluing {
    from: Spanned<String>,
    to: Spanned<String>,
    source: Vec<Spanned<RawRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<Vec<Spanned<RawRow>>>,
    matrix: Spanned<Vec<Vec<Int>>>,
    translation: Spanned<Vec<Rat>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    name: Spanned<String>,
    chart: Spanned<String>,
    coords: Spanned<Vec<Coord>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFlag {
    name: Spanned<String>,
    chart: Spanned<String>,
    base: Spanned<Vec<Rat>>,
    covectors: Spanned<Vec<Vec<Int>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPiece {
    chart: Spanned<String>,
    #[serde(default)]
    rows: Vec<Spanned<RawRow>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOpen {
    name: Spanned<String>,
    pieces: Vec<RawPiece>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFunction {
    slope: Vec<Int>,
    constant: Rat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLattice {
    generators: Spanned<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cocycle: Option<Spanned<Vec<RawFunction>>>,
}

// --- resolved document ------------------------------------------------------

/// An inequality `F ≤ 0`, or `F < 0` when `open`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub function: AffineFunction,
    pub open: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub name: String,
    pub dim: usize,
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingSpec {
    pub from: usize,
    pub to: usize,
    pub source: Vec<Row>,
    pub target: Option<Vec<Row>>,
    pub matrix: Vec<Vec<BigInt>>,
    pub translation: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub chart: usize,
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenFamily {
    pub name: String,
    pub pieces: Vec<Piece>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedPoint {
    pub name: String,
    pub spec: PointSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedFlag {
    pub name: String,
    pub chart: usize,
    pub flag: OrientedFlag,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub generators: Vec<Vec<Scalar>>,
    pub cocycle: Option<Vec<AffineFunction>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollageDocument {
    pub generators: GeneratorTable,
    pub charts: Vec<Chart>,
    pub gluings: Vec<GluingSpec>,
    pub points: Vec<NamedPoint>,
    pub flags: Vec<NamedFlag>,
    pub opens: Vec<OpenFamily>,
    pub lattice: Option<Lattice>,
}

struct Resolver<'a> {
    text: &'a str,
}

impl Resolver<'_> {
    fn position(&self, span: &Range<usize>) -> (usize, usize) {
        let before = &self.text[..span.start.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, column)
    }

    fn error(&self, code: &'static str, span: &Range<usize>, message: String) -> DocumentError {
        let (line, column) = self.position(span);
        DocumentError::Semantic { code, line, column, message }
    }

    fn row(&self, raw: &Spanned<RawRow>, dim: usize) -> Result<Row, DocumentError> {
        let r = raw.get_ref();
        if r.slope.len() != dim {
            return Err(self.error(
                "dimension-mismatch",
                &raw.span(),
                format!("slope has {} entries, expected {dim}", r.slope.len()),
            ));
        }
        let f = AffineFunction::new(r.slope.iter().map(|x| x.0.clone()).collect(), r.constant.0.clone());
        Ok(Row { function: f.normalized(), open: r.open })
    }

    fn rows(&self, raw: &[Spanned<RawRow>], dim: usize) -> Result<Vec<Row>, DocumentError> {
        raw.iter().map(|r| self.row(r, dim)).collect()
    }

    fn chart(&self, charts: &[Chart], name: &Spanned<String>) -> Result<usize, DocumentError> {
        charts
            .iter()
            .position(|c| &c.name == name.get_ref())
            .ok_or_else(|| self.error("unknown-chart", &name.span(), format!("unknown chart {:?}", name.get_ref())))
    }

    fn unique<'n>(&self, seen: &mut HashSet<&'n str>, kind: &str, name: &'n Spanned<String>) -> Result<(), DocumentError> {
        if !seen.insert(name.get_ref()) {
            return Err(self.error("duplicate-name", &name.span(), format!("duplicate {kind} name {:?}", name.get_ref())));
        }
        Ok(())
    }

    fn dims<T>(&self, span: &Range<usize>, what: &str, v: &[T], dim: usize) -> Result<(), DocumentError> {
        if v.len() != dim {
            return Err(self.error(
                "dimension-mismatch",
                span,
                format!("{what} has {} entries, expected {dim}", v.len()),
            ));
        }
        Ok(())
    }

    fn resolve(&self, raw: RawDocument) -> Result<CollageDocument, DocumentError> {
        if raw.version.get_ref() != VERSION {
            return Err(self.error(
                "unsupported-version",
                &raw.version.span(),
                format!("unsupported version {:?}, expected {VERSION:?}", raw.version.get_ref()),
            ));
        }
        let mut generators = GeneratorTable::new();
        let mut seen = HashSet::new();
        for g in &raw.generators {
            self.unique(&mut seen, "generator", &g.name)?;
            if g.lower.0 >= g.upper.0 {
                return Err(self.error("empty-enclosure", &g.name.span(), format!("generator {:?} needs lower < upper", g.name.get_ref())));
            }
            generators.declare(g.name.get_ref(), g.lower.0.clone(), g.upper.0.clone());
        }

        let mut charts = Vec::new();
        let mut seen = HashSet::new();
        for c in &raw.charts {
            self.unique(&mut seen, "chart", &c.name)?;
            let rows = self.rows(&c.rows, c.dim)?;
            if let Some(r) = c.rows.iter().find(|r| r.get_ref().open) {
                return Err(self.error("open-chart", &r.span(), "chart inequalities must be closed".into()));
            }
            charts.push(Chart { name: c.name.get_ref().clone(), dim: c.dim, rows });
        }

        let mut gluings = Vec::new();
        for g in &raw.gluings {
            let from = self.chart(&charts, &g.from)?;
            let to = self.chart(&charts, &g.to)?;
            let (n1, n2) = (charts[from].dim, charts[to].dim);
            let source = self.rows(&g.source, n1)?;
            let target = g.target.as_ref().map(|t| self.rows(t, n2)).transpose()?;
            for r in g.source.iter().chain(g.target.iter().flatten()) {
                if r.get_ref().open {
                    return Err(self.error("open-chart", &r.span(), "gluing regions must be closed".into()));
                }
            }
            self.dims(&g.matrix.span(), "matrix", g.matrix.get_ref(), n2)?;
            for row in g.matrix.get_ref() {
                self.dims(&g.matrix.span(), "matrix row", row, n1)?;
            }
            self.dims(&g.translation.span(), "translation", g.translation.get_ref(), n2)?;
            gluings.push(GluingSpec {
                from,
                to,
                source,
                target,
                matrix: g.matrix.get_ref().iter().map(|r| r.iter().map(|x| x.0.clone()).collect()).collect(),
                translation: g.translation.get_ref().iter().map(|x| x.0.clone()).collect(),
            });
        }

        let mut points = Vec::new();
        let mut seen = HashSet::new();
        for p in &raw.points {
            self.unique(&mut seen, "point", &p.name)?;
            let chart = self.chart(&charts, &p.chart)?;
            self.dims(&p.coords.span(), "coords", p.coords.get_ref(), charts[chart].dim)?;
            let mut coords = Vec::new();
            for c in p.coords.get_ref() {
                coords.push(match c {
                    Coord::NegInfinity => ExtendedScalar::NegInfinity,
                    Coord::Finite { rational, terms } => {
                        let mut irrational = BTreeMap::new();
                        for (coeff, name) in terms {
                            let id = generators.lookup(name).ok_or_else(|| {
                                self.error("unknown-generator", &p.coords.span(), format!("unknown generator {name:?}"))
                            })?;
                            irrational.insert(id, coeff.clone());
                        }
                        ExtendedScalar::Finite { rational: rational.clone(), irrational }
                    }
                });
            }
            points.push(NamedPoint { name: p.name.get_ref().clone(), spec: PointSpec { chart, coords } });
        }

        let mut flags = Vec::new();
        let mut seen = HashSet::new();
        for f in &raw.flags {
            self.unique(&mut seen, "flag", &f.name)?;
            let chart = self.chart(&charts, &f.chart)?;
            let n = charts[chart].dim;
            self.dims(&f.base.span(), "base", f.base.get_ref(), n)?;
            for u in f.covectors.get_ref() {
                self.dims(&f.covectors.span(), "covector", u, n)?;
            }
            let flag = OrientedFlag::new(
                f.base.get_ref().iter().map(|x| x.0.clone()).collect(),
                f.covectors.get_ref().iter().map(|u| u.iter().map(|x| x.0.clone()).collect()).collect(),
            );
            flags.push(NamedFlag { name: f.name.get_ref().clone(), chart, flag });
        }

        let mut opens = Vec::new();
        let mut seen: HashSet<&str> = charts.iter().map(|c| c.name.as_str()).collect();
        for o in &raw.opens {
            self.unique(&mut seen, "open family (names are shared with charts)", &o.name)?;
            let mut pieces = Vec::new();
            for p in &o.pieces {
                let chart = self.chart(&charts, &p.chart)?;
                pieces.push(Piece { chart, rows: self.rows(&p.rows, charts[chart].dim)? });
            }
            opens.push(OpenFamily { name: o.name.get_ref().clone(), pieces });
        }

        let lattice = match &raw.lattice {
            None => None,
            Some(l) => {
                let gens: Vec<Vec<Scalar>> = l.generators.get_ref().iter().map(|g| g.iter().map(|x| x.0.clone()).collect()).collect();
                let n = gens.len();
                for g in &gens {
                    self.dims(&l.generators.span(), "lattice generator", g, n)?;
                }
                let cocycle = match &l.cocycle {
                    None => None,
                    Some(c) => {
                        self.dims(&c.span(), "cocycle", c.get_ref(), n)?;
                        let mut fs = Vec::new();
                        for f in c.get_ref() {
                            self.dims(&c.span(), "cocycle slope", &f.slope, n)?;
                            fs.push(AffineFunction::new(f.slope.iter().map(|x| x.0.clone()).collect(), f.constant.0.clone()));
                        }
                        Some(fs)
                    }
                };
                Some(Lattice { generators: gens, cocycle })
            }
        };

        Ok(CollageDocument { generators, charts, gluings, points, flags, opens, lattice })
    }
}

fn raw_rows(rows: &[Row]) -> Vec<Spanned<RawRow>> {
    rows.iter()
        .map(|r| {
            spanned(RawRow {
                slope: r.function.slope.iter().cloned().map(Int).collect(),
                constant: Rat(r.function.constant.clone()),
                open: r.open,
            })
        })
        .collect()
}

fn raw_coord(x: &ExtendedScalar, table: &GeneratorTable) -> Coord {
    match x {
        ExtendedScalar::NegInfinity => Coord::NegInfinity,
        ExtendedScalar::Finite { rational, irrational } => Coord::Finite {
            rational: rational.clone(),
            terms: irrational
                .iter()
                .map(|(id, c)| (c.clone(), table.get(*id).map_or_else(|| format!("g{id}"), |g| g.name.clone())))
                .collect(),
        },
    }
}

impl CollageDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let raw: RawDocument = toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |s| Resolver { text }.position(&s));
            DocumentError::Syntax { line, column, message: e.message().to_string() }
        })?;
        Resolver { text }.resolve(raw)
    }

    /// Canonical text: fixed key order, primitive slopes, lowest-terms rationals.
    pub fn serialize(&self) -> String {
        let name = |i: usize| spanned(self.charts[i].name.clone());
        let raw = RawDocument {
            version: spanned(VERSION.to_string()),
            generators: self
                .generators
                .iter()
                .map(|g| RawGenerator { name: spanned(g.name.clone()), lower: Rat(g.lower.clone()), upper: Rat(g.upper.clone()) })
                .collect(),
            charts: self
                .charts
                .iter()
                .map(|c| RawChart { name: spanned(c.name.clone()), dim: c.dim, rows: raw_rows(&c.rows) })
                .collect(),
            gluings: self
                .gluings
                .iter()
                .map(|g| RawGluing {
                    from: name(g.from),
                    to: name(g.to),
                    source: raw_rows(&g.source),
                    target: g.target.as_deref().map(raw_rows),
                    matrix: spanned(g.matrix.iter().map(|r| r.iter().cloned().map(Int).collect()).collect()),
                    translation: spanned(g.translation.iter().cloned().map(Rat).collect()),
                })
                .collect(),
            points: self
                .points
                .iter()
                .map(|p| RawPoint {
                    name: spanned(p.name.clone()),
                    chart: name(p.spec.chart),
                    coords: spanned(p.spec.coords.iter().map(|x| raw_coord(x, &self.generators)).collect()),
                })
                .collect(),
            flags: self
                .flags
                .iter()
                .map(|f| RawFlag {
                    name: spanned(f.name.clone()),
                    chart: name(f.chart),
                    base: spanned(f.flag.base.iter().cloned().map(Rat).collect()),
                    covectors: spanned(f.flag.covectors.iter().map(|u| u.iter().cloned().map(Int).collect()).collect()),
                })
                .collect(),
            opens: self
                .opens
                .iter()
                .map(|o| RawOpen {
                    name: spanned(o.name.clone()),
                    pieces: o.pieces.iter().map(|p| RawPiece { chart: name(p.chart), rows: raw_rows(&p.rows) }).collect(),
                })
                .collect(),
            lattice: self.lattice.as_ref().map(|l| RawLattice {
                generators: spanned(l.generators.iter().map(|g| g.iter().cloned().map(Rat).collect()).collect()),
                cocycle: l.cocycle.as_ref().map(|c| {
                    spanned(
                        c.iter()
                            .map(|f| RawFunction { slope: f.slope.iter().cloned().map(Int).collect(), constant: Rat(f.constant.clone()) })
                            .collect(),
                    )
                }),
            }),
        };
        toml::to_string(&raw).expect("document serializes")
    }

    pub fn chart_index(&self, name: &str) -> Option<usize> {
        self.charts.iter().position(|c| c.name == name)
    }

    pub fn point(&self, name: &str) -> Option<&NamedPoint> {
        self.points.iter().find(|p| p.name == name)
    }

    pub fn flag(&self, name: &str) -> Option<&NamedFlag> {
        self.flags.iter().find(|f| f.name == name)
    }

    pub fn open(&self, name: &str) -> Option<&OpenFamily> {
        self.opens.iter().find(|o| o.name == name)
    }
}

pub fn closed_polyhedron(rows: &[Row], dim: usize) -> polyrig_core::Result<Polyhedron> {
    let fs: Vec<AffineFunction> = rows.iter().map(|r| r.function.clone()).collect();
    Polyhedron::canonicalize(&fs, dim)
}

pub fn semi_polyhedron(rows: &[Row], dim: usize) -> polyrig_core::Result<SemiPolyhedron> {
    let closure = closed_polyhedron(rows, dim)?;
    let strict = rows.iter().filter(|r| r.open).map(|r| r.function.clone()).collect();
    Ok(SemiPolyhedron::new(closure, strict))
}

impl CollageDocument {
    pub fn chart_polyhedron(&self, i: usize) -> polyrig_core::Result<Polyhedron> {
        closed_polyhedron(&self.charts[i].rows, self.charts[i].dim)
    }

    pub fn collage(&self) -> polyrig_core::Result<Collage> {
        let charts = (0..self.charts.len()).map(|i| self.chart_polyhedron(i)).collect::<polyrig_core::Result<Vec<_>>>()?;
        let mut gluings = Vec::new();
        for g in &self.gluings {
            let map = AffineMap::new(g.matrix.clone(), g.translation.clone(), self.charts[g.from].dim)?;
            let source = closed_polyhedron(&g.source, self.charts[g.from].dim)?;
            let target = match &g.target {
                Some(t) => closed_polyhedron(t, self.charts[g.to].dim)?,
                None => source.image(&map)?,
            };
            gluings.push(Gluing { from: g.from, to: g.to, source, target, map });
        }
        Ok(Collage::new(charts, gluings))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyrig_core::scalar::rat;

    const MINIMAL: &str = r#"version = "1"

[[charts]]
name = "I"
dim = 1

[[charts.rows]]
slope = [-1]
constant = "0"

[[charts.rows]]
slope = [1]
constant = "-1"
"#;

    #[test]
    fn minimal_document_roundtrips() {
        let doc = CollageDocument::parse(MINIMAL).unwrap();
        assert_eq!(doc.charts.len(), 1);
        assert_eq!(doc.serialize(), MINIMAL);
    }

    #[test]
    fn unknown_chart_in_gluing() {
        let text = format!(
            "{MINIMAL}\n[[gluings]]\nfrom = \"I\"\nto = \"J\"\nsource = []\nmatrix = [[1]]\ntranslation = [\"0\"]\n"
        );
        let err = CollageDocument::parse(&text).unwrap_err();
        assert_eq!(err.code(), "unknown-chart");
        assert!(err.to_string().contains("unknown chart"), "{err}");
        let DocumentError::Semantic { line, .. } = err else { panic!() };
        assert_eq!(line, text.lines().position(|l| l.starts_with("to =")).unwrap() + 1);
    }

    #[test]
    fn non_primitive_slope_is_normalized() {
        let text = "version = \"1\"\n\n[[charts]]\nname = \"H\"\ndim = 2\n\n[[charts.rows]]\nslope = [2, 4]\nconstant = \"-3\"\n";
        let doc = CollageDocument::parse(text).unwrap();
        let f = &doc.charts[0].rows[0].function;
        assert_eq!(f.slope, vec![BigInt::from(1), BigInt::from(2)]);
        assert_eq!(f.constant, rat(-3, 2));
        let out = doc.serialize();
        assert!(out.contains("slope = [1, 2]") && out.contains("constant = \"-3/2\""), "{out}");
        assert_eq!(CollageDocument::parse(&out).unwrap(), doc);
    }

    #[test]
    fn syntax_errors_carry_position() {
        let text = "version = \"1\"\n[[charts]]\nname = \"A\"\ndim = 1\n[[charts.rows]]\nslope = [1]\nconstant = \"1/0x\"\n";
        let err = CollageDocument::parse(text).unwrap_err();
        let DocumentError::Syntax { line, .. } = err else { panic!("{err:?}") };
        assert_eq!(line, 7);
    }

    #[test]
    fn coordinates_with_generators() {
        for s in ["-inf", "1/2", "pi", "-pi", "1/2 + 3*pi", "-2 - e + 1/3*pi", "0"] {
            let c = parse_coord(s).unwrap();
            assert_eq!(parse_coord(&format_coord(&c)).unwrap(), c, "{s}");
        }
        assert!(parse_coord("1/2 +").is_none());
        assert!(parse_coord("2*").is_none());
    }
}
