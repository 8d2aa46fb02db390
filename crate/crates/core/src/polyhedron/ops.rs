use num_bigint::BigInt;
use num_traits::Zero;

use super::Polyhedron;
use crate::affine::{AffineFunction, AffineMap};
use crate::error::{Error, Result};

fn empty_to_none(r: Result<Polyhedron>) -> Result<Option<Polyhedron>> {
    match r {
        Ok(p) => Ok(Some(p)),
        Err(Error::EmptyPolyhedron) => Ok(None),
        Err(e) => Err(e),
    }
}

impl Polyhedron {
    /// `Δ₁ ∩ Δ₂`, or `None` when empty.
    pub fn intersect(&self, other: &Polyhedron) -> Result<Option<Polyhedron>> {
        if other.ambient_dim != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(other.inequalities.iter().cloned());
        empty_to_none(Polyhedron::canonicalize(&ineqs, self.ambient_dim))
    }

    /// Intersection with extra inequalities, or `None` when empty.
    pub fn restrict(&self, extra: &[AffineFunction]) -> Result<Option<Polyhedron>> {
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(extra.iter().cloned());
        empty_to_none(Polyhedron::canonicalize(&ineqs, self.ambient_dim))
    }

    pub fn image(&self, f: &AffineMap) -> Result<Polyhedron> {
        if f.source_dim != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: f.source_dim });
        }
        let vertices: Vec<_> = self.vertices.iter().map(|v| f.apply(v)).collect();
        let rays: Vec<_> = self.rays.iter().map(|r| f.apply_linear(r)).collect();
        let lineality: Vec<_> = self.lineality.iter().map(|l| f.apply_linear(l)).collect();
        Polyhedron::from_generators(&vertices, &rays, &lineality, f.target_dim())
    }

    /// `f⁻¹(Δ)`, or `None` when empty.
    pub fn preimage(&self, f: &AffineMap) -> Result<Option<Polyhedron>> {
        if f.target_dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: f.target_dim() });
        }
        let ineqs: Vec<AffineFunction> = self.inequalities.iter().map(|g| f.pullback(g)).collect();
        empty_to_none(Polyhedron::canonicalize(&ineqs, f.source_dim))
    }

    pub fn product(&self, other: &Polyhedron) -> Polyhedron {
        let (n1, n2) = (self.ambient_dim, other.ambient_dim);
        let mut ineqs = Vec::new();
        for f in &self.inequalities {
            let mut slope = f.slope.clone();
            slope.extend(std::iter::repeat_n(BigInt::zero(), n2));
            ineqs.push(AffineFunction::new(slope, f.constant.clone()));
        }
        for f in &other.inequalities {
            let mut slope = vec![BigInt::zero(); n1];
            slope.extend(f.slope.iter().cloned());
            ineqs.push(AffineFunction::new(slope, f.constant.clone()));
        }
        Polyhedron::canonicalize(&ineqs, n1 + n2).expect("product of nonempty polyhedra")
    }
}
