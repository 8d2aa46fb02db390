use std::path::Path;

use num_bigint::BigInt;
use num_complex::Complex64;
use polyrig_core::basechange::{self, MonoidAlgebraElement, MumfordPair};
use polyrig_core::collage::group_quotient_collage;
use polyrig_core::points::{self, OrientedFlag};
use polyrig_core::refinement::{self, SemiPolyhedron};
use polyrig_core::scalar::{format_scalar, parse_scalar, to_f64};
use polyrig_core::{AffineFunction, AffineMap, Collage, Error, ExtendedScalar, Polyhedron, Scalar};

use crate::document::{semi_polyhedron, Chart, CollageDocument, GluingSpec, Row};
use crate::report::{format_float, Node, Report};
use crate::{BaseArgs, ChartArgs, CliError, Command};

pub const DEFAULT_TOL: f64 = 1e-9;

pub enum Output {
    Report(Report),
    Raw(String),
}

type Res<T> = Result<T, CliError>;

pub fn domain_code(e: &Error) -> &'static str {
    match e {
        Error::IndeterminateValue => "indeterminate-value",
        Error::UnknownGenerator(_) => "unknown-generator",
        Error::DimensionMismatch { .. } => "dimension-mismatch",
        Error::EmptyPolyhedron => "empty-polyhedron",
        Error::NotStronglyConvex(_) => "not-strongly-convex",
        Error::SlopeUnbounded => "slope-unbounded",
        Error::NotUnimodular => "not-unimodular",
        Error::NotSubPolyhedron(_) => "not-sub-polyhedron",
        Error::BaseMismatch => "base-mismatch",
        Error::DisconnectedChart(_) => "disconnected-chart",
        Error::PathMismatch(_) => "path-mismatch",
        Error::NotGluingStable(_) => "not-gluing-stable",
        Error::RankDeficient => "rank-deficient",
        Error::InvalidFlag(_) => "invalid-flag",
        Error::PointOutside => "point-outside",
        Error::BasePointMismatch => "base-point-mismatch",
        Error::OutsidePolyhedron => "outside-polyhedron",
        Error::InvalidCollage(_) => "invalid-collage",
        Error::UnknownChart(_) => "unknown-chart",
        Error::InvalidArgument(_) => "invalid-argument",
    }
}

fn load(path: &Path) -> Res<CollageDocument> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(CollageDocument::parse(&text)?)
}

fn chart_of(doc: &CollageDocument, name: Option<&str>) -> Res<usize> {
    match name {
        Some(n) => doc.chart_index(n).ok_or_else(|| CliError::Lookup("unknown-chart", format!("unknown chart {n:?}"))),
        None if doc.charts.len() == 1 => Ok(0),
        None if doc.charts.is_empty() => Err(CliError::Lookup("unknown-chart", "document has no charts".into())),
        None => Err(CliError::Usage("document has several charts; pass --chart".into())),
    }
}

fn load_chart(args: &ChartArgs) -> Res<(CollageDocument, usize, Polyhedron)> {
    let doc = load(&args.doc)?;
    let i = chart_of(&doc, args.chart.as_deref())?;
    let p = doc.chart_polyhedron(i)?;
    Ok((doc, i, p))
}

fn load_collage(path: &Path) -> Res<(CollageDocument, Collage)> {
    let doc = load(path)?;
    let c = doc.collage()?;
    c.validate().map_err(Error::InvalidCollage)?;
    Ok((doc, c))
}

// --- formatting -------------------------------------------------------------

fn scalars(v: &[Scalar]) -> Node {
    v.iter().map(format_scalar).collect::<Vec<_>>().into()
}

fn ints(v: &[BigInt]) -> Node {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().into()
}

fn ineq(f: &AffineFunction) -> String {
    format!("{f} <= 0")
}

fn map_report(m: &AffineMap) -> Report {
    Report::new()
        .with("matrix", m.matrix.iter().map(|r| ints(r)).collect::<Vec<_>>())
        .with("translation", scalars(&m.translation))
}

fn polyhedron_report(p: &Polyhedron) -> Report {
    Report::new()
        .with("ambient_dim", p.ambient_dim())
        .with("dim", p.dim())
        .with("bounded", p.is_bounded())
        .with("strongly_convex", p.is_strongly_convex())
        .with("inequalities", p.facets().iter().map(ineq).collect::<Vec<_>>())
        .with("equations", p.equations().iter().map(|f| format!("{f} = 0")).collect::<Vec<_>>())
        .with("vertices", p.vertices().iter().map(|v| scalars(v)).collect::<Vec<_>>())
        .with("rays", p.rays().iter().map(|r| ints(r)).collect::<Vec<_>>())
        .with("lineality", p.lineality().iter().map(|r| ints(r)).collect::<Vec<_>>())
}

fn flag_report(f: &OrientedFlag) -> Report {
    Report::new().with("base", scalars(&f.base)).with("covectors", f.covectors.iter().map(|u| ints(u)).collect::<Vec<_>>())
}

fn parse_function(s: &str) -> Res<AffineFunction> {
    let bad = || CliError::Usage(format!("invalid function {s:?}, expected s1,s2,...;c"));
    let (slope, c) = s.split_once(';').ok_or_else(bad)?;
    let slope = slope
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<BigInt>().map_err(|_| bad()))
        .collect::<Res<Vec<_>>>()?;
    let c = parse_scalar(c).ok_or_else(bad)?;
    Ok(AffineFunction::new(slope, c))
}

fn parse_term(s: &str) -> Res<(Complex64, AffineFunction)> {
    let bad = || CliError::Usage(format!("invalid term {s:?}, expected re[,im]@s1,s2,...@c"));
    let parts: Vec<&str> = s.split('@').collect();
    let [coeff, slope, c] = parts[..] else { return Err(bad()) };
    let nums = coeff
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Res<Vec<_>>>()?;
    let z = match nums[..] {
        [re] => Complex64::new(re, 0.0),
        [re, im] => Complex64::new(re, im),
        _ => return Err(bad()),
    };
    Ok((z, parse_function(&format!("{slope};{c}"))?))
}

fn rational_point(coords: &[ExtendedScalar]) -> Option<Vec<Scalar>> {
    coords
        .iter()
        .map(|x| match x {
            ExtendedScalar::Finite { rational, irrational } if irrational.is_empty() => Some(rational.clone()),
            _ => None,
        })
        .collect()
}

// --- polyhedron -------------------------------------------------------------

fn canonicalize(args: &ChartArgs, document: bool) -> Res<Output> {
    let doc = load(&args.doc)?;
    if document {
        return Ok(Output::Raw(doc.serialize()));
    }
    let which: Vec<usize> = match &args.chart {
        Some(_) => vec![chart_of(&doc, args.chart.as_deref())?],
        None => (0..doc.charts.len()).collect(),
    };
    let mut charts = Vec::new();
    for i in which {
        let p = doc.chart_polyhedron(i)?;
        charts.push(Report::new().with("chart", doc.charts[i].name.as_str()).with("polyhedron", polyhedron_report(&p)));
    }
    Ok(Output::Report(Report::new().with("charts", charts)))
}

fn faces(args: &ChartArgs) -> Res<Output> {
    let (doc, i, p) = load_chart(args)?;
    let faces: Vec<Report> = p
        .faces()
        .iter()
        .map(|f| {
            Report::new()
                .with("dim", f.dim)
                .with("facets", f.facets.clone())
                .with("vertices", f.vertices.clone())
                .with("rays", f.rays.clone())
        })
        .collect();
    Ok(Output::Report(
        Report::new().with("chart", doc.charts[i].name.as_str()).with("count", faces.len()).with("faces", faces),
    ))
}

fn normal_fan(args: &ChartArgs) -> Res<Output> {
    let (doc, i, p) = load_chart(args)?;
    let cones: Vec<Report> = p
        .normal_fan()?
        .iter()
        .map(|(f, c)| {
            Report::new()
                .with("face_vertices", f.vertices.clone())
                .with("face_rays", f.rays.clone())
                .with("cone_dim", c.dim())
                .with("cone_rays", c.rays().iter().map(|r| ints(r)).collect::<Vec<_>>())
                .with("cone_lineality", c.lineality().iter().map(|r| ints(r)).collect::<Vec<_>>())
        })
        .collect();
    Ok(Output::Report(Report::new().with("chart", doc.charts[i].name.as_str()).with("cones", cones)))
}

fn infinite_faces(args: &ChartArgs) -> Res<Output> {
    let (doc, i, p) = load_chart(args)?;
    let faces: Vec<Report> = p
        .infinite_faces()?
        .iter()
        .map(|f| {
            Report::new()
                .with("height", f.height())
                .with("asymptotic_rays", f.asymptotic_cone.rays().iter().map(|r| ints(r)).collect::<Vec<_>>())
                .with("quotient", polyhedron_report(&f.quotient))
        })
        .collect();
    Ok(Output::Report(
        Report::new().with("chart", doc.charts[i].name.as_str()).with("count", faces.len()).with("infinite_faces", faces),
    ))
}

fn monoid(args: &ChartArgs) -> Res<Output> {
    let (doc, i, p) = load_chart(args)?;
    let m = p.bounded_affine_monoid()?;
    Ok(Output::Report(
        Report::new()
            .with("chart", doc.charts[i].name.as_str())
            .with("module_generators", m.module_generators.iter().map(|f| f.to_string()).collect::<Vec<_>>())
            .with("nonpositive_generators", m.nonpositive_generators.iter().map(|f| f.to_string()).collect::<Vec<_>>()),
    ))
}

// --- collage ----------------------------------------------------------------

fn validate(path: &Path) -> Res<Output> {
    let doc = load(path)?;
    let c = doc.collage()?;
    let mut r = Report::new().with("charts", c.charts.len()).with("gluings", c.gluings.len());
    match c.validate() {
        Ok(()) => r.push("valid", true),
        Err(v) => {
            r.push("valid", false);
            r.push("violation", v.to_string());
        }
    }
    Ok(Output::Report(r))
}

/// Pieces named by chart or open-family names, as polyhedra per chart.
fn named_pieces(doc: &CollageDocument, names: &[String], closed_only: bool) -> Res<Vec<Vec<SemiPolyhedron>>> {
    let mut per_chart: Vec<Vec<SemiPolyhedron>> = vec![Vec::new(); doc.charts.len()];
    for name in names {
        if let Some(i) = doc.chart_index(name) {
            per_chart[i].push(SemiPolyhedron::closed(doc.chart_polyhedron(i)?));
        } else if let Some(o) = doc.open(name) {
            for p in &o.pieces {
                if closed_only && p.rows.iter().any(|r| r.open) {
                    return Err(CliError::Lookup("open-piece", format!("open family {name:?} has strict inequalities")));
                }
                let mut rows = doc.charts[p.chart].rows.clone();
                rows.extend(p.rows.iter().cloned());
                per_chart[p.chart].push(semi_polyhedron(&rows, doc.charts[p.chart].dim)?);
            }
        } else {
            return Err(CliError::Lookup("unknown-chart", format!("unknown chart or open family {name:?}")));
        }
    }
    Ok(per_chart)
}

fn cover_check(path: &Path, names: &[String]) -> Res<Output> {
    let (doc, c) = load_collage(path)?;
    let mut sets: Vec<Vec<Polyhedron>> =
        named_pieces(&doc, names, true)?.into_iter().map(|v| v.into_iter().map(|s| s.closure).collect()).collect();
    // Transport pieces across gluings until nothing new appears.
    let directed = c.directed_gluings()?;
    for _ in 0..c.charts.len() {
        let mut grew = false;
        for g in &directed {
            let images: Vec<Polyhedron> = sets[g.from]
                .iter()
                .filter_map(|p| p.intersect(&g.source).transpose())
                .map(|q| q.and_then(|q| q.image(&g.map)))
                .collect::<polyrig_core::Result<_>>()?;
            for img in images {
                if !sets[g.to].contains(&img) {
                    sets[g.to].push(img);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut covered = true;
    let mut charts = Vec::new();
    for (i, chart) in c.charts.iter().enumerate() {
        let cov = refinement::covering_check(chart, &sets[i])?;
        covered &= cov.covered;
        let mut r = Report::new().with("chart", doc.charts[i].name.as_str()).with("covered", cov.covered);
        if let Some(w) = &cov.witness {
            r.push("witness", scalars(w));
        }
        charts.push(r);
    }
    Ok(Output::Report(Report::new().with("covering", covered).with("charts", charts)))
}

fn refine(args: &ChartArgs, names: &[String]) -> Res<Output> {
    let (doc, i, p) = load_chart(args)?;
    let pieces: Vec<Polyhedron> = named_pieces(&doc, names, true)?.swap_remove(i).into_iter().map(|s| s.closure).collect();
    let d = refinement::common_refinement(&p, &pieces)?;
    let cells: Vec<Report> = d.cells().iter().map(polyhedron_report).collect();
    Ok(Output::Report(
        Report::new().with("chart", doc.charts[i].name.as_str()).with("cells", cells.len()).with("refinement", cells),
    ))
}

fn base_chart(doc: &CollageDocument, args: &BaseArgs) -> Res<usize> {
    match &args.base {
        Some(_) => chart_of(doc, args.base.as_deref()),
        None => Ok(0),
    }
}

fn develop(args: &BaseArgs) -> Res<Output> {
    let (doc, c) = load_collage(&args.doc)?;
    let base = base_chart(&doc, args)?;
    let charts: Vec<Report> = c
        .develop(base)?
        .iter()
        .map(|d| {
            Report::new()
                .with("chart", doc.charts[d.chart].name.as_str())
                .with(
                    "path",
                    d.path.iter().map(|(g, rev)| format!("{g}{}", if *rev { "'" } else { "" })).collect::<Vec<_>>(),
                )
                .with("embedding", map_report(&d.embedding))
        })
        .collect();
    Ok(Output::Report(Report::new().with("base", doc.charts[base].name.as_str()).with("developed", charts)))
}

fn monodromy(args: &BaseArgs) -> Res<Output> {
    let (doc, c) = load_collage(&args.doc)?;
    let base = base_chart(&doc, args)?;
    let gens: Vec<Report> = c.monodromy_generators(base)?.iter().map(map_report).collect();
    let mut r = Report::new().with("base", doc.charts[base].name.as_str()).with("generators", gens);
    match c.monodromy_translations(base)? {
        Some(t) => {
            r.push("translations_only", true);
            r.push("periods", t.iter().map(|v| scalars(v)).collect::<Vec<_>>());
        }
        None => r.push("translations_only", false),
    }
    Ok(Output::Report(r))
}

fn overconvergent(path: &Path, open: &str) -> Res<Output> {
    let (doc, c) = load_collage(path)?;
    if doc.open(open).is_none() {
        return Err(CliError::Lookup("unknown-open", format!("unknown open family {open:?}")));
    }
    let pieces = named_pieces(&doc, &[open.to_string()], false)?;
    let verdict = c.overconvergent_open_check(&pieces)?;
    Ok(Output::Report(Report::new().with("open", open).with("overconvergent", verdict)))
}

fn separated(path: &Path) -> Res<Output> {
    let (_, c) = load_collage(path)?;
    Ok(Output::Report(Report::new().with("separated", c.separated_check()?)))
}

fn manifold_check(path: &Path) -> Res<Output> {
    let (_, c) = load_collage(path)?;
    let m = c.affine_manifold_check()?;
    let mut r = Report::new().with("manifold", m.manifold);
    if let Some(reason) = &m.reason {
        r.push("reason", reason.as_str());
    }
    if m.manifold {
        if let Some(t) = c.monodromy_translations(0)? {
            r.push("periods", t.iter().map(|v| scalars(v)).collect::<Vec<_>>());
        }
    }
    Ok(Output::Report(r))
}

fn lattice_pair(doc: &CollageDocument) -> Res<MumfordPair> {
    let l = doc.lattice.as_ref().ok_or_else(|| CliError::Lookup("missing-lattice", "document has no [lattice] section".into()))?;
    Ok(MumfordPair { n: l.generators.len(), y_generators: l.generators.clone(), cocycle: l.cocycle.clone() })
}

fn rows_of(p: &Polyhedron) -> Vec<Row> {
    p.inequalities().iter().map(|f| Row { function: f.clone(), open: false }).collect()
}

/// A collage as a document, with charts named `C0`, `C1`, ...
pub fn collage_document(c: &Collage) -> CollageDocument {
    CollageDocument {
        generators: Default::default(),
        charts: c
            .charts
            .iter()
            .enumerate()
            .map(|(i, p)| Chart { name: format!("C{i}"), dim: p.ambient_dim(), rows: rows_of(p) })
            .collect(),
        gluings: c
            .gluings
            .iter()
            .map(|g| GluingSpec {
                from: g.from,
                to: g.to,
                source: rows_of(&g.source),
                target: Some(rows_of(&g.target)),
                matrix: g.map.matrix.clone(),
                translation: g.map.translation.clone(),
            })
            .collect(),
        points: Vec::new(),
        flags: Vec::new(),
        opens: Vec::new(),
        lattice: None,
    }
}

fn torus(path: &Path, output: Option<&Path>) -> Res<Output> {
    let doc = load(path)?;
    let pair = lattice_pair(&doc)?;
    let c = group_quotient_collage(pair.n, &pair.y_generators)?;
    let text = collage_document(&c).serialize();
    match output {
        Some(out) => {
            std::fs::write(out, &text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", out.display())))?;
            Ok(Output::Report(
                Report::new()
                    .with("written", out.display().to_string())
                    .with("charts", c.charts.len())
                    .with("gluings", c.gluings.len()),
            ))
        }
        None => Ok(Output::Raw(text)),
    }
}

// --- points -----------------------------------------------------------------

fn named_point<'a>(doc: &'a CollageDocument, name: &str) -> Res<&'a crate::document::NamedPoint> {
    doc.point(name).ok_or_else(|| CliError::Lookup("unknown-point", format!("unknown point {name:?}")))
}

fn named_flag<'a>(doc: &'a CollageDocument, name: &str) -> Res<&'a crate::document::NamedFlag> {
    doc.flag(name).ok_or_else(|| CliError::Lookup("unknown-flag", format!("unknown flag {name:?}")))
}

fn classify_point(path: &Path, point: &str, flag: Option<&str>) -> Res<Output> {
    let doc = load(path)?;
    let p = named_point(&doc, point)?;
    let delta = doc.chart_polyhedron(p.spec.chart)?;
    let reduced = points::reduce_point(&delta, &p.spec.coords, &doc.generators)?;
    let f = match flag {
        Some(name) => {
            let f = named_flag(&doc, name)?;
            if f.chart != p.spec.chart {
                return Err(CliError::Lookup("chart-mismatch", format!("flag {name:?} lives on another chart")));
            }
            f.flag.clone()
        }
        None => OrientedFlag::empty(reduced.point.clone()),
    };
    let t = points::classify(&delta, &p.spec.coords, &f, &doc.generators)?;
    Ok(Output::Report(
        Report::new()
            .with("point", point)
            .with("chart", doc.charts[p.spec.chart].name.as_str())
            .with("type", t.to_string())
            .with("reduced_point", scalars(&reduced.point))
            .with("reduced_dim", reduced.polyhedron.dim())
            .with("flag", flag_report(&f)),
    ))
}

fn flags(path: &Path, point: &str, depth: usize, window: i64) -> Res<Output> {
    if window < 1 {
        return Err(CliError::Usage("--window must be at least 1".into()));
    }
    let doc = load(path)?;
    let p = named_point(&doc, point)?;
    let delta = doc.chart_polyhedron(p.spec.chart)?;
    let reduced = points::reduce_point(&delta, &p.spec.coords, &doc.generators)?;
    let fs = points::enumerate_flags(&reduced.polyhedron, &reduced.point, depth, window);
    let mut out = Vec::new();
    for f in &fs {
        let t = points::classify(&delta, &p.spec.coords, f, &doc.generators)?;
        out.push(Report::new().with("type", t.to_string()).with("covectors", f.covectors.iter().map(|u| ints(u)).collect::<Vec<_>>()));
    }
    Ok(Output::Report(
        Report::new()
            .with("point", point)
            .with("base", scalars(&reduced.point))
            .with("count", out.len())
            .with("flags", out),
    ))
}

fn local_integers(path: &Path, point: &str) -> Res<Output> {
    let doc = load(path)?;
    let p = named_point(&doc, point)?;
    let y = rational_point(&p.spec.coords)
        .ok_or_else(|| Error::InvalidArgument("local integers need a finite rational point".into()))?;
    let delta = doc.chart_polyhedron(p.spec.chart)?;
    let li = points::local_integers(&delta, &y)?;
    Ok(Output::Report(
        Report::new()
            .with("point", point)
            .with("base", scalars(&li.base))
            .with("vanishing_generators", li.vanishing.iter().map(|f| f.to_string()).collect::<Vec<_>>())
            .with("also_contains", "every F with F(y) < 0"),
    ))
}

fn valuation(path: &Path, flag: &str, functions: &[String]) -> Res<Output> {
    let doc = load(path)?;
    let f = named_flag(&doc, flag)?;
    let delta = doc.chart_polyhedron(f.chart)?;
    let v = points::flag_valuation(&delta, &f.flag)?;
    let mut r = Report::new()
        .with("flag", flag_report(&f.flag))
        .with("slope_lattice", v.slope_lattice.iter().map(|s| ints(s)).collect::<Vec<_>>())
        .with("image_generators", v.image_generators.iter().map(|s| ints(s)).collect::<Vec<_>>());
    match (&v.image_basis, &v.index) {
        (Some(b), Some(i)) => {
            r.push("image_basis", b.iter().map(|s| ints(s)).collect::<Vec<_>>());
            r.push("index", i.to_string());
        }
        _ => r.push("image_full_rank", false),
    }
    let mut values = Vec::new();
    for s in functions {
        let g = parse_function(s)?;
        if g.dim() != delta.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: delta.ambient_dim(), found: g.dim() }.into());
        }
        let val = v.value(&g);
        let mut e = Report::new().with("function", g.to_string()).with("value", val.to_string()).with(
            "sign",
            match val.sign() {
                std::cmp::Ordering::Less => "negative",
                std::cmp::Ordering::Equal => "zero",
                std::cmp::Ordering::Greater => "positive",
            },
        );
        if let Some(a) = v.adapted_value(&g) {
            e.push("adapted_value", a.to_string());
        }
        values.push(e);
    }
    if !values.is_empty() {
        r.push("values", values);
    }
    Ok(Output::Report(r))
}

// --- base change ------------------------------------------------------------

fn norm(args: &ChartArgs, q: f64, terms: &[String]) -> Res<Output> {
    let (doc, i, p) = load_chart(args)?;
    let terms = terms.iter().map(|t| parse_term(t)).collect::<Res<Vec<_>>>()?;
    if let Some((_, f)) = terms.iter().find(|(_, f)| f.dim() != p.ambient_dim()) {
        return Err(Error::DimensionMismatch { expected: p.ambient_dim(), found: f.dim() }.into());
    }
    let a = MonoidAlgebraElement::new(terms);
    let v = basechange::l1q_norm(&p, &a, q)?;
    let orders = a
        .terms()
        .iter()
        .map(|(_, f)| basechange::ord_t(&p, f).map(|o| o.to_string()))
        .collect::<polyrig_core::Result<Vec<_>>>()?;
    Ok(Output::Report(
        Report::new()
            .with("chart", doc.charts[i].name.as_str())
            .with("q", q)
            .with("orders", orders)
            .with("norm", v),
    ))
}

fn fibration_sample(args: &ChartArgs, q: f64, grid: usize, phase: Option<&[f64]>, tol: f64, json: bool) -> Res<Output> {
    let (_, _, p) = load_chart(args)?;
    let n = p.ambient_dim();
    let zeros = vec![0.0; n];
    let phase = phase.unwrap_or(&zeros);
    if phase.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: phase.len() }.into());
    }
    let pts = basechange::grid_points(&p, grid)?;
    let mut header: Vec<String> = (0..n).map(|i| format!("b{i}")).collect();
    header.extend((0..n).map(|i| format!("theta{i}")));
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for b in &pts {
        let s = basechange::fibration_sample(&p, q, b, phase)?;
        let m = basechange::mu(&s)?;
        if header.len() == 2 * n {
            header.extend((0..s.magnitudes.len()).map(|k| format!("abs_z{k}")));
            header.extend((0..n).map(|i| format!("mu{i}")));
            header.push("roundtrip_ok".into());
        }
        let err = b.iter().zip(&m).map(|(x, y)| (to_f64(x) - y).abs()).fold(0.0, f64::max);
        let mut row: Vec<String> = b.iter().map(format_scalar).collect();
        row.extend(phase.iter().map(|t| format_float(*t)));
        row.extend(s.magnitudes.iter().map(|v| format_float(*v)));
        row.extend(m.iter().map(|v| format_float(*v)));
        row.push((err <= tol).to_string());
        if json {
            records.push(
                Report::new()
                    .with("base_point", scalars(b))
                    .with("magnitudes", s.magnitudes.clone())
                    .with("mu", m.clone())
                    .with("roundtrip_ok", err <= tol),
            );
        }
        rows.push(row.join(","));
    }
    if json {
        return Ok(Output::Report(Report::new().with("q", q).with("phase", phase.to_vec()).with("samples", records)));
    }
    let mut text = header.join(",");
    text.push('\n');
    for r in rows {
        text.push_str(&r);
        text.push('\n');
    }
    Ok(Output::Raw(text))
}

fn mumford(path: &Path) -> Res<Output> {
    let doc = load(path)?;
    let pair = lattice_pair(&doc)?;
    let m = basechange::mumford_build(&pair)?;
    Ok(Output::Report(
        Report::new()
            .with("n", pair.n)
            .with("charts", m.collage.charts.len())
            .with("gluings", m.collage.gluings.len())
            .with("proper", m.proper)
            .with("separated", m.separated)
            .with("manifold", m.manifold)
            .with("overconvergent", m.overconvergent)
            .with("connected", m.connected)
            .with("periods", m.periods.iter().map(|v| scalars(v)).collect::<Vec<_>>()),
    ))
}

fn pic(path: &Path) -> Res<Output> {
    let doc = load(path)?;
    let pair = lattice_pair(&doc)?;
    let d = basechange::pic_decompose(&pair)?;
    Ok(Output::Report(
        Report::new()
            .with("translation_part", scalars(&d.translation_part))
            .with("slope_part", d.slope_part.iter().map(|s| ints(s)).collect::<Vec<_>>())
            .with("metrisable", d.metrisable),
    ))
}

pub fn run(cmd: &Command, tol: f64, json: bool) -> Res<Output> {
    match cmd {
        Command::Canonicalize { chart, document } => canonicalize(chart, *document),
        Command::Faces(a) => faces(a),
        Command::NormalFan(a) => normal_fan(a),
        Command::InfiniteFaces(a) => infinite_faces(a),
        Command::Monoid(a) => monoid(a),
        Command::Validate(a) => validate(&a.doc),
        Command::CoverCheck { doc, pieces } => cover_check(doc, pieces),
        Command::Refine { chart, pieces } => refine(chart, pieces),
        Command::Develop(a) => develop(a),
        Command::Monodromy(a) => monodromy(a),
        Command::Overconvergent { doc, open } => overconvergent(doc, open),
        Command::Separated(a) => separated(&a.doc),
        Command::ManifoldCheck(a) => manifold_check(&a.doc),
        Command::Torus { doc, output } => torus(doc, output.as_deref()),
        Command::ClassifyPoint { doc, point, flag } => classify_point(doc, point, flag.as_deref()),
        Command::Flags { doc, point, depth, window } => flags(doc, point, *depth, *window),
        Command::LocalIntegers { doc, point } => local_integers(doc, point),
        Command::Valuation { doc, flag, functions } => valuation(doc, flag, functions),
        Command::Norm { chart, q, terms } => norm(chart, *q, terms),
        Command::FibrationSample { chart, q, grid, phase } => fibration_sample(chart, *q, *grid, phase.as_deref(), tol, json),
        Command::Mumford(a) => mumford(&a.doc),
        Command::Pic(a) => pic(&a.doc),
    }
}
