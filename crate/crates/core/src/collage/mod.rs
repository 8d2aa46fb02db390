//! Collages: polyhedral charts glued along sub-polyhedra by lattice-affine
//! isomorphisms.

mod develop;
mod topology;
mod torus;

use std::fmt;

use crate::affine::AffineMap;
use crate::error::{Error, Result};
use crate::polyhedron::Polyhedron;
use crate::scalar::Scalar;

pub use develop::DevelopedChart;
pub use topology::ManifoldReport;
pub use torus::group_quotient_collage;

/// The first violated collage invariant found by validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ChartIndex { gluing: usize },
    DimensionMismatch { gluing: usize },
    RegionOutsideChart { gluing: usize, chart: usize },
    NotUnimodular { gluing: usize },
    ImageMismatch { gluing: usize },
    Inverse { gluing: usize, other: usize },
    Cocycle { i: usize, j: usize, k: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ChartIndex { gluing } => write!(f, "gluing {gluing} references a missing chart"),
            Violation::DimensionMismatch { gluing } => write!(f, "gluing {gluing} has mismatched dimensions"),
            Violation::RegionOutsideChart { gluing, chart } => {
                write!(f, "gluing {gluing} region is not contained in chart {chart}")
            }
            Violation::NotUnimodular { gluing } => write!(f, "gluing {gluing} is not a lattice isomorphism"),
            Violation::ImageMismatch { gluing } => write!(f, "gluing {gluing} does not map its source onto its target"),
            Violation::Inverse { gluing, other } => {
                write!(f, "inverse: gluings {gluing} and {other} are not mutually inverse")
            }
            Violation::Cocycle { i, j, k } => write!(f, "cocycle fails on charts ({i}, {j}, {k})"),
        }
    }
}

/// Identifies `source ⊆ charts[from]` with `target ⊆ charts[to]` via `map`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub from: usize,
    pub to: usize,
    pub source: Polyhedron,
    pub target: Polyhedron,
    pub map: AffineMap,
}

/// A stored gluing or the inverse of one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGluing {
    pub index: usize,
    pub reversed: bool,
    pub from: usize,
    pub to: usize,
    pub source: Polyhedron,
    pub target: Polyhedron,
    pub map: AffineMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collage {
    pub charts: Vec<Polyhedron>,
    pub gluings: Vec<Gluing>,
}

/// Whether two affine maps agree on a polyhedron.
pub(crate) fn agree_on(f: &AffineMap, g: &AffineMap, region: &Polyhedron) -> bool {
    region.vertices().iter().all(|v| f.apply(v) == g.apply(v))
        && region
            .rays()
            .iter()
            .chain(region.lineality())
            .all(|r| f.apply_linear(r) == g.apply_linear(r))
}

fn bounding_box(p: &Polyhedron) -> Option<Vec<(Scalar, Scalar)>> {
    if !p.is_bounded() {
        return None;
    }
    Some(
        (0..p.ambient_dim())
            .map(|i| {
                let xs = p.vertices().iter().map(|v| v[i].clone());
                (xs.clone().min().unwrap(), xs.max().unwrap())
            })
            .collect(),
    )
}

pub(crate) fn may_intersect(a: &Polyhedron, b: &Polyhedron) -> bool {
    match (bounding_box(a), bounding_box(b)) {
        (Some(x), Some(y)) => x.iter().zip(&y).all(|((a0, a1), (b0, b1))| a0 <= b1 && b0 <= a1),
        _ => true,
    }
}

impl Collage {
    pub fn new(charts: Vec<Polyhedron>, gluings: Vec<Gluing>) -> Self {
        Self { charts, gluings }
    }

    pub fn chart(&self, i: usize) -> Result<&Polyhedron> {
        self.charts.get(i).ok_or(Error::UnknownChart(i))
    }

    /// Stored gluings followed by their inverses.
    pub fn directed_gluings(&self) -> Result<Vec<DirectedGluing>> {
        let mut out = Vec::with_capacity(2 * self.gluings.len());
        for (index, g) in self.gluings.iter().enumerate() {
            out.push(DirectedGluing {
                index,
                reversed: false,
                from: g.from,
                to: g.to,
                source: g.source.clone(),
                target: g.target.clone(),
                map: g.map.clone(),
            });
        }
        for (index, g) in self.gluings.iter().enumerate() {
            out.push(DirectedGluing {
                index,
                reversed: true,
                from: g.to,
                to: g.from,
                source: g.target.clone(),
                target: g.source.clone(),
                map: g.map.inverse()?,
            });
        }
        Ok(out)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Checks every collage invariant, reporting the first violation.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for (gi, g) in self.gluings.iter().enumerate() {
            let (Some(a), Some(b)) = (self.charts.get(g.from), self.charts.get(g.to)) else {
                return Err(Violation::ChartIndex { gluing: gi });
            };
            if g.source.ambient_dim() != a.ambient_dim()
                || g.target.ambient_dim() != b.ambient_dim()
                || g.map.source_dim != a.ambient_dim()
                || g.map.target_dim() != b.ambient_dim()
            {
                return Err(Violation::DimensionMismatch { gluing: gi });
            }
            if !a.contains_polyhedron(&g.source) {
                return Err(Violation::RegionOutsideChart { gluing: gi, chart: g.from });
            }
            if !b.contains_polyhedron(&g.target) {
                return Err(Violation::RegionOutsideChart { gluing: gi, chart: g.to });
            }
            if !g.map.is_unimodular() {
                return Err(Violation::NotUnimodular { gluing: gi });
            }
        }
        for (gi, g) in self.gluings.iter().enumerate() {
            for (hi, h) in self.gluings.iter().enumerate().skip(gi + 1) {
                let paired = h.from == g.to && h.to == g.from && h.source == g.target && h.target == g.source;
                if paired && !agree_on(&h.map.compose(&g.map), &AffineMap::identity(g.map.source_dim), &g.source) {
                    return Err(Violation::Inverse { gluing: gi, other: hi });
                }
            }
        }
        for (gi, g) in self.gluings.iter().enumerate() {
            if g.source.image(&g.map).ok().as_ref() != Some(&g.target) {
                return Err(Violation::ImageMismatch { gluing: gi });
            }
        }
        self.check_cocycle()
    }

    fn check_cocycle(&self) -> std::result::Result<(), Violation> {
        let directed = self.directed_gluings().expect("unimodular maps were checked");
        let self_glued: Vec<bool> = (0..self.charts.len())
            .map(|c| self.gluings.iter().any(|g| g.from == c && g.to == c))
            .collect();
        for a in &directed {
            for b in directed.iter().filter(|b| b.from == a.to) {
                if b.index == a.index && b.reversed != a.reversed {
                    continue;
                }
                if !may_intersect(&a.target, &b.source) {
                    continue;
                }
                let Ok(Some(mid)) = a.target.intersect(&b.source) else { continue };
                let region = mid.image(&a.map.inverse().expect("unimodular")).expect("image");
                let composite = b.map.compose(&a.map);
                let violation = Violation::Cocycle { i: a.from, j: a.to, k: b.to };
                if b.to == a.from && !self_glued[a.from] && !composite.is_identity() {
                    return Err(violation);
                }
                for c in directed.iter().filter(|c| c.from == a.from && c.to == b.to) {
                    if c.map == composite || !may_intersect(&region, &c.source) {
                        continue;
                    }
                    if let Ok(Some(common)) = region.intersect(&c.source) {
                        if !agree_on(&c.map, &composite, &common) {
                            return Err(violation);
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
