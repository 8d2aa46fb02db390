//! Polyhedral decompositions, coverings and star-closure openness tests.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use crate::affine::AffineFunction;
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::polyhedron::Polyhedron;
use crate::scalar::{dot_int, Scalar};

/// `{x ∈ closure : s(x) < 0 for every s in strict}`. Used for limits of
/// increasing families such as `[0,1) = ⋃ [0, 1 − 1/k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiPolyhedron {
    pub closure: Polyhedron,
    pub strict: Vec<AffineFunction>,
}

impl SemiPolyhedron {
    pub fn closed(p: Polyhedron) -> Self {
        Self { closure: p, strict: Vec::new() }
    }

    pub fn new(closure: Polyhedron, strict: Vec<AffineFunction>) -> Self {
        Self { closure, strict }
    }

    pub fn contains(&self, p: &[Scalar]) -> bool {
        self.closure.contains(p) && self.strict.iter().all(|s| s.eval(p).is_negative())
    }

    fn hyperplanes(&self) -> Vec<AffineFunction> {
        let mut h = hyperplanes_of(&self.closure);
        h.extend(self.strict.iter().map(|s| s.normalized()));
        h
    }

    /// Whether the points at infinity of the closure along `a` stay in the set.
    fn contains_direction(&self, a: &Cone) -> bool {
        self.closure.recession_cone().contains_cone(a)
            && self
                .strict
                .iter()
                .all(|s| a.rays().iter().all(|r| !dot_int(&s.slope, r).is_positive()))
    }
}

fn orient(f: &AffineFunction) -> AffineFunction {
    let g = f.normalized();
    match g.slope.iter().find(|s| !s.is_zero()) {
        Some(s) if s.is_negative() => -&g,
        _ => g,
    }
}

/// The hyperplanes supporting facets and affine-hull equations.
pub fn hyperplanes_of(p: &Polyhedron) -> Vec<AffineFunction> {
    p.facets().iter().chain(p.equations()).map(orient).collect()
}

fn dedup_hyperplanes(mut hs: Vec<AffineFunction>) -> Vec<AffineFunction> {
    hs = hs.iter().filter(|h| !h.is_constant()).map(orient).collect();
    hs.sort_by(|a, b| a.lex_cmp(b));
    hs.dedup();
    hs
}

/// A polyhedral decomposition of `base` into maximal cells (of the same
/// dimension as `base`), sorted canonically.
#[derive(Clone, Debug)]
pub struct Decomposition {
    base: Polyhedron,
    cells: Vec<Polyhedron>,
    all: OnceLock<Vec<Polyhedron>>,
}

impl PartialEq for Decomposition {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.cells == other.cells
    }
}

impl Eq for Decomposition {}

fn sort_cells(cells: &mut Vec<Polyhedron>) {
    cells.sort_by(|a, b| a.lex_cmp(b));
    cells.dedup();
}

impl Decomposition {
    pub fn new(base: Polyhedron, mut cells: Vec<Polyhedron>) -> Result<Self> {
        for (i, c) in cells.iter().enumerate() {
            if !base.contains_polyhedron(c) {
                return Err(Error::NotSubPolyhedron(i));
            }
        }
        sort_cells(&mut cells);
        Ok(Self { base, cells, all: OnceLock::new() })
    }

    pub fn trivial(base: Polyhedron) -> Self {
        Self { cells: vec![base.clone()], base, all: OnceLock::new() }
    }

    /// The decomposition of `base` cut out by an arrangement of hyperplanes.
    pub fn by_hyperplanes(base: &Polyhedron, hyperplanes: &[AffineFunction]) -> Self {
        let d = base.dim();
        let mut cells = vec![base.clone()];
        for h in dedup_hyperplanes(hyperplanes.to_vec()) {
            let mut next = Vec::new();
            for c in &cells {
                for side in [h.clone(), -&h] {
                    if let Ok(Some(part)) = c.restrict(&[side]) {
                        if part.dim() == d {
                            next.push(part);
                        }
                    }
                }
            }
            cells = next;
        }
        sort_cells(&mut cells);
        Self { base: base.clone(), cells, all: OnceLock::new() }
    }

    pub fn base(&self) -> &Polyhedron {
        &self.base
    }

    /// Maximal cells.
    pub fn cells(&self) -> &[Polyhedron] {
        &self.cells
    }

    /// Every cell of the complex: the maximal cells and all their faces.
    pub fn all_cells(&self) -> &[Polyhedron] {
        self.all.get_or_init(|| {
            let mut all: Vec<Polyhedron> = Vec::new();
            for c in &self.cells {
                for f in c.faces() {
                    all.push(f.polyhedron.clone());
                }
            }
            sort_cells(&mut all);
            all.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.lex_cmp(b)));
            all
        })
    }

    pub fn hyperplanes(&self) -> Vec<AffineFunction> {
        dedup_hyperplanes(self.cells.iter().flat_map(hyperplanes_of).collect())
    }

    /// Every cell of `self` lies in some cell of `other`.
    pub fn refines(&self, other: &Decomposition) -> Result<bool> {
        if self.base != other.base {
            return Err(Error::BaseMismatch);
        }
        Ok(self
            .cells
            .iter()
            .all(|c| other.cells.iter().any(|d| d.contains_polyhedron(c))))
    }

    /// The coarsest arrangement refining both decompositions' hyperplanes.
    pub fn common_refinement(&self, other: &Decomposition) -> Result<Decomposition> {
        if self.base != other.base {
            return Err(Error::BaseMismatch);
        }
        let mut hs = self.hyperplanes();
        hs.extend(other.hyperplanes());
        Ok(Decomposition::by_hyperplanes(&self.base, &hs))
    }
}

/// The arrangement of all hyperplanes of the pieces, restricted to `base`.
pub fn common_refinement(base: &Polyhedron, pieces: &[Polyhedron]) -> Result<Decomposition> {
    check_pieces(base, pieces.iter())?;
    let hs: Vec<AffineFunction> = pieces.iter().flat_map(hyperplanes_of).collect();
    Ok(Decomposition::by_hyperplanes(base, &hs))
}

fn check_pieces<'a>(base: &Polyhedron, pieces: impl Iterator<Item = &'a Polyhedron>) -> Result<()> {
    for (i, p) in pieces.enumerate() {
        if p.ambient_dim() != base.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: base.ambient_dim(), found: p.ambient_dim() });
        }
        if !base.contains_polyhedron(p) {
            return Err(Error::NotSubPolyhedron(i));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coverage {
    pub covered: bool,
    /// A point of the base lying in no piece, when not covered.
    pub witness: Option<Vec<Scalar>>,
}

/// Whether the pieces cover `base`.
pub fn covering_check(base: &Polyhedron, pieces: &[Polyhedron]) -> Result<Coverage> {
    let d = common_refinement(base, pieces)?;
    for cell in d.cells() {
        if !pieces.iter().any(|p| p.contains_polyhedron(cell)) {
            let w = cell.relative_interior_point();
            debug_assert!(pieces.iter().all(|p| !p.contains(&w)));
            return Ok(Coverage { covered: false, witness: Some(w) });
        }
    }
    Ok(Coverage { covered: true, witness: None })
}

/// A stratum of `Δ(ℝ∞)` relative to a decomposition: the relative interior
/// of a cell, or the points at infinity above a cell along a nonzero face of
/// the recession cone.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub cell: Polyhedron,
    pub direction: Option<Cone>,
}

#[derive(Clone, Debug)]
pub struct OpenReport {
    pub open: bool,
    pub strata: Vec<Stratum>,
    pub marked: Vec<bool>,
    /// A marked stratum together with an unmarked stratum in its star.
    pub violation: Option<(usize, usize)>,
}

fn strata(d: &Decomposition) -> Vec<Stratum> {
    let mut out: Vec<Stratum> = d
        .all_cells()
        .iter()
        .map(|c| Stratum { cell: c.clone(), direction: None })
        .collect();
    if !d.base().is_strongly_convex() {
        return out;
    }
    let dirs: Vec<Cone> = d.base().recession_cone().faces().into_iter().filter(|c| !c.is_zero()).collect();
    for c in d.all_cells() {
        let rec = c.recession_cone();
        for a in &dirs {
            if rec.contains_cone(a) {
                out.push(Stratum { cell: c.clone(), direction: Some(a.clone()) });
            }
        }
    }
    out
}

/// Whether `t` lies in the star of `s`, i.e. `s` is in the closure of `t`.
fn in_star(s: &Stratum, t: &Stratum) -> bool {
    if !t.cell.contains_polyhedron(&s.cell) {
        return false;
    }
    match (&s.direction, &t.direction) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(a), Some(b)) => a.contains_cone(b),
    }
}

fn marked_by(st: &Stratum, pieces: &[SemiPolyhedron]) -> bool {
    let p = st.cell.relative_interior_point();
    pieces.iter().any(|u| {
        u.contains(&p)
            && match &st.direction {
                None => true,
                Some(a) => u.contains_direction(a),
            }
    })
}

fn star_closure(d: &Decomposition, marked_fn: impl Fn(&Stratum) -> bool, allowed: impl Fn(&Stratum) -> bool) -> OpenReport {
    let strata = strata(d);
    let marked: Vec<bool> = strata.iter().map(&marked_fn).collect();
    let mut violation = None;
    'outer: for (i, s) in strata.iter().enumerate() {
        if !marked[i] {
            continue;
        }
        for (j, t) in strata.iter().enumerate() {
            if in_star(s, t) && !allowed(t) {
                violation = Some((i, j));
                break 'outer;
            }
        }
    }
    OpenReport { open: violation.is_none(), strata, marked, violation }
}

/// Whether the union of `pieces` is open in `base(ℝ∞)`.
pub fn open_in(base: &Polyhedron, pieces: &[SemiPolyhedron]) -> Result<OpenReport> {
    check_pieces(base, pieces.iter().map(|p| &p.closure))?;
    let hs: Vec<AffineFunction> = pieces.iter().flat_map(|p| p.hyperplanes()).collect();
    let d = Decomposition::by_hyperplanes(base, &hs);
    Ok(star_closure(&d, |s| marked_by(s, pieces), |s| marked_by(s, pieces)))
}

/// Whether `v` is a neighbourhood of `u` inside `x`.
pub fn neighborhood_check(x: &Polyhedron, u: &[SemiPolyhedron], v: &[SemiPolyhedron]) -> Result<bool> {
    check_pieces(x, v.iter().map(|p| &p.closure))?;
    check_pieces(x, u.iter().map(|p| &p.closure))?;
    let mut hs: Vec<AffineFunction> = u.iter().flat_map(|p| p.hyperplanes()).collect();
    hs.extend(v.iter().flat_map(|p| p.hyperplanes()));
    let d = Decomposition::by_hyperplanes(x, &hs);
    // u ⊆ v on every stratum
    for s in strata(&d) {
        if marked_by(&s, u) && !marked_by(&s, v) {
            return Err(Error::NotSubPolyhedron(0));
        }
    }
    Ok(star_closure(&d, |s| marked_by(s, u), |s| marked_by(s, v)).open)
}

/// Lexicographic comparison of decompositions by their maximal cells.
pub fn decomposition_cmp(a: &Decomposition, b: &Decomposition) -> Ordering {
    a.cells.len().cmp(&b.cells.len()).then_with(|| {
        for (x, y) in a.cells.iter().zip(&b.cells) {
            let c = x.lex_cmp(y);
            if c != Ordering::Equal {
                return c;
            }
        }
        Ordering::Equal
    })
}
