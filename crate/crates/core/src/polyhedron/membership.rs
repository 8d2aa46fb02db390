use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use super::monoid::InfiniteFace;
use super::Polyhedron;
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::scalar::{ExtendedScalar, GeneratorTable, Scalar};

/// Position of a point of `Δ(ℝ∞)` in the stratification by finite faces and
/// faces at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    /// The point lies in the relative interior of this finite face.
    InteriorOf(Polyhedron),
    /// The point lies on a face at infinity; `inner` locates its image in the
    /// quotient polyhedron.
    OnInfiniteFace { face: Box<InfiniteFace>, inner: Box<Location> },
    Outside,
}

impl Location {
    pub fn is_outside(&self) -> bool {
        matches!(self, Location::Outside)
    }
}

fn is_zero(x: &ExtendedScalar) -> bool {
    x.as_rational().is_some_and(Zero::is_zero)
}

/// Projects a point with finite entries on the columns the map does not kill.
pub(crate) fn project_point(matrix: &[Vec<BigInt>], p: &[ExtendedScalar]) -> Result<Vec<ExtendedScalar>> {
    matrix
        .iter()
        .map(|row| {
            let mut acc = ExtendedScalar::rational(Scalar::zero());
            for (a, x) in row.iter().zip(p) {
                if a.is_zero() {
                    continue;
                }
                if x.is_neg_infinity() {
                    return Err(Error::IndeterminateValue);
                }
                acc = acc.add(&x.scale(a)?);
            }
            Ok(acc)
        })
        .collect()
}

impl Polyhedron {
    /// Locates a finite point, possibly with symbolic irrational entries.
    /// Returns the indices of the facets on which it lies, or `None` if it
    /// is outside.
    pub(crate) fn tight_facets_symbolic(&self, p: &[ExtendedScalar], table: &GeneratorTable) -> Result<Option<Vec<usize>>> {
        for f in &self.inequalities {
            if f.evaluate(p)?.sign(table)? == Ordering::Greater {
                return Ok(None);
            }
        }
        let mut tight = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            if is_zero(&f.evaluate(p)?) {
                tight.push(i);
            }
        }
        Ok(Some(tight))
    }

    /// Locates `p` in the stratification of `Δ(ℝ∞)`. A coordinate equal to
    /// `−∞` means that whichever of `±xᵢ` is bounded above on `Δ` tends to
    /// `−∞`; the corresponding direction must lie in the recession cone.
    pub fn membership(&self, p: &[ExtendedScalar], table: &GeneratorTable) -> Result<Location> {
        if p.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: p.len() });
        }
        let infinite: Vec<usize> = (0..p.len()).filter(|&i| p[i].is_neg_infinity()).collect();
        if infinite.is_empty() {
            let Some(tight) = self.tight_facets_symbolic(p, table)? else {
                return Ok(Location::Outside);
            };
            let face = self
                .faces()
                .iter()
                .find(|f| f.facets == tight)
                .expect("tight facet sets of points are closed");
            return Ok(Location::InteriorOf(face.polyhedron.clone()));
        }
        self.require_strongly_convex()?;
        let n = self.ambient_dim;
        let rec = self.recession_cone();
        let mut directions: Vec<Vec<BigInt>> = Vec::new();
        for &i in &infinite {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::from(-1);
            if !rec.contains_int(&e) {
                e[i] = BigInt::from(1);
                if !rec.contains_int(&e) {
                    return Ok(Location::Outside);
                }
            }
            directions.push(e);
        }
        let spanned = Cone::from_generators(&directions, &[], n);
        let asy = rec
            .faces()
            .into_iter()
            .find(|f| f.contains_cone(&spanned))
            .expect("the recession cone is a face of itself");
        let face = self.infinite_face(&asy);
        let q = project_point(&face.projection.matrix, p)?;
        let inner = face.quotient.membership(&q, table)?;
        if inner.is_outside() {
            return Ok(Location::Outside);
        }
        Ok(Location::OnInfiniteFace { face: Box::new(face), inner: Box::new(inner) })
    }
}
