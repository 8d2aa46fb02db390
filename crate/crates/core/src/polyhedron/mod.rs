//! H-rational polyhedra in canonical form.

mod faces;
mod membership;
mod monoid;
mod ops;

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::affine::{AffineFunction, AffineMap};
use crate::cone::Cone;
use crate::dd::cone_generators;
use crate::error::{Error, Result};
use crate::lattice::{self, rank_rat, rref, RatMatrix};
use crate::scalar::{dot_int, dot_mixed, from_int, primitive_from_rational, to_rational_vec, Scalar};

pub use faces::Face;
pub use membership::Location;
pub(crate) use membership::project_point;
pub use monoid::{convergence_polyhedron, BoundedAffineMonoid, InfiniteFace};

/// A nonempty polyhedron `{x : F(x) ≤ 0 for all F}`.
///
/// The inequality list is canonical: one primitive inequality per facet,
/// reduced modulo the affine hull, followed by each equation of the affine
/// hull as a pair `F ≤ 0`, `−F ≤ 0`; everything sorted lexicographically.
/// Two polyhedra are equal iff their inequality lists agree.
#[derive(Clone, Debug)]
pub struct Polyhedron {
    ambient_dim: usize,
    inequalities: Vec<AffineFunction>,
    facets: Vec<AffineFunction>,
    equations: Vec<AffineFunction>,
    vertices: Vec<Vec<Scalar>>,
    rays: Vec<Vec<BigInt>>,
    lineality: Vec<Vec<BigInt>>,
    dim: usize,
    faces: OnceLock<Vec<Face>>,
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.inequalities == other.inequalities
    }
}

impl Eq for Polyhedron {}

fn homogenize(f: &AffineFunction) -> Vec<BigInt> {
    let den = f.constant.denom().clone();
    let mut row: Vec<BigInt> = f.slope.iter().map(|s| s * &den).collect();
    row.push(f.constant.numer().clone());
    row
}

fn hom_generators(vertices: &[Vec<Scalar>], rays: &[Vec<BigInt>], lineality: &[Vec<BigInt>]) -> RatMatrix {
    let mut m: RatMatrix = Vec::new();
    for v in vertices {
        let mut r = v.clone();
        r.push(Scalar::one());
        m.push(r);
    }
    for r in rays.iter().chain(lineality) {
        let mut x = to_rational_vec(r);
        x.push(Scalar::zero());
        m.push(x);
    }
    m
}

/// Reduction modulo a row-reduced basis: zero out the pivot columns.
fn reduce(x: &[Scalar], basis: &[Vec<Scalar>], pivots: &[usize]) -> Vec<Scalar> {
    let mut x = x.to_vec();
    for (row, &p) in basis.iter().zip(pivots) {
        if x[p].is_zero() {
            continue;
        }
        let k = x[p].clone();
        for (xi, ri) in x.iter_mut().zip(row) {
            *xi -= &k * ri;
        }
    }
    x
}

/// Rescales `(slope, constant)` by a positive rational so the slope is a
/// primitive integer vector.
fn primitive_function(slope: &[Scalar], constant: &Scalar) -> AffineFunction {
    let p = primitive_from_rational(slope);
    let (i, s) = slope.iter().enumerate().find(|(_, s)| !s.is_zero()).expect("nonzero slope");
    let factor = from_int(&p[i]) / s;
    AffineFunction::new(p, constant * factor)
}

impl Polyhedron {
    /// Builds the canonical form of `{x : F(x) ≤ 0}`.
    pub fn canonicalize(inequalities: &[AffineFunction], n: usize) -> Result<Self> {
        let mut rows: Vec<AffineFunction> = Vec::new();
        for f in inequalities {
            if f.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: f.dim() });
            }
            if f.is_constant() {
                if f.constant.is_positive() {
                    return Err(Error::EmptyPolyhedron);
                }
                continue;
            }
            let g = f.normalized();
            if !rows.contains(&g) {
                rows.push(g);
            }
        }
        let mut constraints = Vec::with_capacity(rows.len() + 1);
        let mut t = vec![BigInt::zero(); n + 1];
        t[n] = BigInt::from(-1);
        constraints.push(t);
        constraints.extend(rows.iter().map(homogenize));
        let gens = cone_generators(&constraints, n + 1);
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for r in gens.rays {
            if r[n].is_positive() {
                let t = from_int(&r[n]);
                vertices.push(r[..n].iter().map(|x| from_int(x) / &t).collect::<Vec<_>>());
            } else {
                rays.push(r[..n].to_vec());
            }
        }
        if vertices.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        let lineality: Vec<Vec<BigInt>> = gens.lineality.iter().map(|l| l[..n].to_vec()).collect();
        Ok(Self::assemble(n, &rows, vertices, rays, lineality))
    }

    /// Builds the polyhedron `conv(vertices) + cone(rays) + span(lineality)`.
    pub fn from_generators(
        vertices: &[Vec<Scalar>],
        rays: &[Vec<BigInt>],
        lineality: &[Vec<BigInt>],
        n: usize,
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyPolyhedron);
        }
        // valid inequalities (a, c): a·v + c ≤ 0, a·r ≤ 0, a·l = 0
        let mut constraints = Vec::new();
        for v in vertices {
            let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let mut row: Vec<BigInt> = v.iter().map(|x| (x * from_int(&den)).to_integer()).collect();
            row.push(den);
            constraints.push(row);
        }
        for r in rays {
            let mut row = r.clone();
            row.push(BigInt::zero());
            constraints.push(row);
        }
        for l in lineality {
            let mut row = l.clone();
            row.push(BigInt::zero());
            constraints.push(row.iter().map(|x| -x).collect());
            constraints.push(row);
        }
        let polar = cone_generators(&constraints, n + 1);
        let mut list: Vec<AffineFunction> = polar
            .rays
            .iter()
            .map(|g| AffineFunction::new(g[..n].to_vec(), from_int(&g[n])))
            .collect();
        for g in &polar.lineality {
            let f = AffineFunction::new(g[..n].to_vec(), from_int(&g[n]));
            list.push(-&f);
            list.push(f);
        }
        Self::canonicalize(&list, n)
    }

    fn assemble(
        n: usize,
        rows: &[AffineFunction],
        vertices: Vec<Vec<Scalar>>,
        rays: Vec<Vec<BigInt>>,
        lineality: Vec<Vec<BigInt>>,
    ) -> Self {
        // canonical lineality basis and generator representatives
        let lin_rat: RatMatrix = lineality.iter().map(|l| to_rational_vec(l)).collect();
        let (lin_red, lin_piv) = rref(&lin_rat, n);
        let lineality: Vec<Vec<BigInt>> = lin_red.iter().map(|r| primitive_from_rational(r)).collect();
        let mut vertices: Vec<Vec<Scalar>> = vertices.iter().map(|v| reduce(v, &lin_red, &lin_piv)).collect();
        vertices.sort();
        vertices.dedup();
        let mut rays: Vec<Vec<BigInt>> = rays
            .iter()
            .map(|r| primitive_from_rational(&reduce(&to_rational_vec(r), &lin_red, &lin_piv)))
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        rays.sort();
        rays.dedup();

        let hom = hom_generators(&vertices, &rays, &lineality);
        let full_rank = rank_rat(&hom, n + 1);
        let dim = full_rank - 1;

        let tight = |f: &AffineFunction| -> RatMatrix {
            let mut m: RatMatrix = Vec::new();
            for v in &vertices {
                if f.eval(v).is_zero() {
                    let mut r = v.clone();
                    r.push(Scalar::one());
                    m.push(r);
                }
            }
            for r in rays.iter().filter(|r| dot_int(&f.slope, r).is_zero()).chain(&lineality) {
                let mut x = to_rational_vec(r);
                x.push(Scalar::zero());
                m.push(x);
            }
            m
        };

        let mut eq_rows: RatMatrix = Vec::new();
        let mut facet_candidates = Vec::new();
        for f in rows {
            let t = tight(f);
            if t.len() == hom.len() {
                let mut r = to_rational_vec(&f.slope);
                r.push(f.constant.clone());
                eq_rows.push(r);
            } else if t.iter().any(|r| !r[n].is_zero()) && rank_rat(&t, n + 1) + 1 == full_rank {
                facet_candidates.push(f.clone());
            }
        }
        let (eq_red, eq_piv) = rref(&eq_rows, n + 1);
        let equations: Vec<AffineFunction> = eq_red
            .iter()
            .map(|r| primitive_function(&r[..n], &r[n]))
            .collect();
        let mut facets: Vec<AffineFunction> = Vec::new();
        for f in facet_candidates {
            let mut r = to_rational_vec(&f.slope);
            r.push(f.constant.clone());
            let red = reduce(&r, &eq_red, &eq_piv);
            let g = primitive_function(&red[..n], &red[n]);
            if !facets.contains(&g) {
                facets.push(g);
            }
        }
        facets.sort_by(|a, b| a.lex_cmp(b));
        let mut inequalities = facets.clone();
        for e in &equations {
            inequalities.push(e.clone());
            inequalities.push(-e);
        }
        inequalities.sort_by(|a, b| a.lex_cmp(b));

        Self {
            ambient_dim: n,
            inequalities,
            facets,
            equations,
            vertices,
            rays,
            lineality,
            dim,
            faces: OnceLock::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Affine dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[AffineFunction] {
        &self.inequalities
    }

    pub fn facets(&self) -> &[AffineFunction] {
        &self.facets
    }

    pub fn equations(&self) -> &[AffineFunction] {
        &self.equations
    }

    /// Vertices (representatives modulo the lineality space).
    pub fn vertices(&self) -> &[Vec<Scalar>] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<BigInt>] {
        &self.lineality
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    pub fn require_strongly_convex(&self) -> Result<()> {
        if self.is_strongly_convex() {
            Ok(())
        } else {
            Err(Error::NotStronglyConvex(self.lineality.len()))
        }
    }

    pub fn contains(&self, p: &[Scalar]) -> bool {
        self.inequalities.iter().all(|f| !f.eval(p).is_positive())
    }

    /// Whether `dF` annihilates the lineality space and is nonpositive on rays.
    pub fn is_bounded_slope(&self, slope: &[BigInt]) -> bool {
        self.lineality.iter().all(|l| dot_int(slope, l).is_zero())
            && self.rays.iter().all(|r| !dot_int(slope, r).is_positive())
    }

    /// `sup_Δ F`, or `None` when `F` is unbounded above.
    pub fn sup(&self, f: &AffineFunction) -> Option<Scalar> {
        if !self.is_bounded_slope(&f.slope) {
            return None;
        }
        self.vertices.iter().map(|v| f.eval(v)).max()
    }

    pub fn contains_polyhedron(&self, other: &Polyhedron) -> bool {
        self.inequalities.iter().all(|f| {
            other.vertices.iter().all(|v| !f.eval(v).is_positive())
                && other.rays.iter().all(|r| !dot_int(&f.slope, r).is_positive())
                && other.lineality.iter().all(|l| dot_int(&f.slope, l).is_zero())
        })
    }

    /// A point in the relative interior.
    pub fn relative_interior_point(&self) -> Vec<Scalar> {
        let k = from_int(&BigInt::from(self.vertices.len()));
        let mut p = vec![Scalar::zero(); self.ambient_dim];
        for v in &self.vertices {
            for (pi, vi) in p.iter_mut().zip(v) {
                *pi += vi / &k;
            }
        }
        for r in &self.rays {
            for (pi, ri) in p.iter_mut().zip(r) {
                *pi += from_int(ri);
            }
        }
        p
    }

    /// The recession cone `Λ^◇_{Δ/H}`.
    pub fn recession_cone(&self) -> Cone {
        Cone::from_generators(&self.rays, &self.lineality, self.ambient_dim)
    }

    /// The cone `Λ_{Δ/H}` of slopes bounded above on `Δ`.
    pub fn bounded_slopes(&self) -> Cone {
        self.recession_cone().polar()
    }

    /// The strongly convex quotient by the lineality space together with
    /// the projection onto it.
    pub fn quotient_by_lineality(&self) -> (Polyhedron, AffineMap) {
        if self.lineality.is_empty() {
            return (self.clone(), AffineMap::identity(self.ambient_dim));
        }
        let projection = quotient_projection(&self.lineality, self.ambient_dim);
        let q = self.image(&projection).expect("image of a nonempty polyhedron");
        (q, projection)
    }

    /// Whether `p` lies in the relative interior.
    pub fn in_relative_interior(&self, p: &[Scalar]) -> bool {
        self.contains(p) && self.facets.iter().all(|f| f.eval(p).is_negative())
    }

    fn tight_facets_at(&self, p: &[Scalar]) -> Vec<usize> {
        (0..self.facets.len()).filter(|&i| self.facets[i].eval(p).is_zero()).collect()
    }

    /// Lexicographic comparison of the canonical inequality lists.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.ambient_dim.cmp(&other.ambient_dim).then_with(|| {
            for (a, b) in self.inequalities.iter().zip(&other.inequalities) {
                let c = a.lex_cmp(b);
                if c != Ordering::Equal {
                    return c;
                }
            }
            self.inequalities.len().cmp(&other.inequalities.len())
        })
    }

    /// Rational-exact evaluation `max` over the vertices of `slope · x`.
    pub(crate) fn vertex_max(&self, slope: &[BigInt]) -> Scalar {
        self.vertices
            .iter()
            .map(|v| dot_mixed(slope, v))
            .max()
            .expect("nonempty")
    }
}

/// The projection `ℤⁿ → ℤⁿ/sat(span(vectors))` in adapted coordinates.
pub(crate) fn quotient_projection(vectors: &[Vec<BigInt>], n: usize) -> AffineMap {
    let (u, k) = lattice::adapted_basis(vectors, n);
    AffineMap::linear(u[k..].to_vec(), n)
}
