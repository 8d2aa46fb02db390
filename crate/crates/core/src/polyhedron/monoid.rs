use num_bigint::BigInt;

use super::{quotient_projection, Polyhedron};
use crate::affine::{AffineFunction, AffineMap};
use crate::cone::Cone;
use crate::error::Result;
use crate::scalar::{dot_mixed, Scalar};

/// Generators of `Aff_Δ` over `H` and of `Aff⁺_Δ` over `H°`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedAffineMonoid {
    /// Lifts of a Hilbert basis of `Λ_{Δ/H}`, each with supremum `0`.
    pub module_generators: Vec<AffineFunction>,
    /// Together with the nonpositive constants, these generate every affine
    /// function bounded above by zero.
    pub nonpositive_generators: Vec<AffineFunction>,
}

/// A stratum of `Δ(ℝ∞)` at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfiniteFace {
    /// A nonzero face of the recession cone.
    pub asymptotic_cone: Cone,
    /// `Δ / span(asymptotic_cone)`.
    pub quotient: Polyhedron,
    pub projection: AffineMap,
}

impl InfiniteFace {
    /// Codimension of the stratum, i.e. the dimension of the asymptotic cone.
    pub fn height(&self) -> usize {
        self.asymptotic_cone.dim()
    }
}

fn sorted(mut v: Vec<AffineFunction>) -> Vec<AffineFunction> {
    v.sort_by(|a, b| a.lex_cmp(b));
    v.dedup();
    v
}

impl Polyhedron {
    pub fn bounded_affine_monoid(&self) -> Result<BoundedAffineMonoid> {
        self.require_strongly_convex()?;
        let lift = |h: &Vec<BigInt>, at: Scalar| AffineFunction::new(h.clone(), -at);
        let module_generators = self
            .bounded_slopes()
            .hilbert_basis()
            .iter()
            .map(|h| lift(h, self.vertex_max(h)))
            .collect();
        let mut nonpositive = Vec::new();
        for (face, cone) in self.normal_fan()? {
            if face.dim != 0 {
                continue;
            }
            let u = &self.vertices[face.vertices[0]];
            for h in cone.hilbert_basis() {
                let at = dot_mixed(&h, u);
                nonpositive.push(lift(&h, at));
            }
        }
        Ok(BoundedAffineMonoid {
            module_generators: sorted(module_generators),
            nonpositive_generators: sorted(nonpositive),
        })
    }

    /// The stratum at infinity for a face of the recession cone.
    pub fn infinite_face(&self, asymptotic_cone: &Cone) -> InfiniteFace {
        let projection = quotient_projection(asymptotic_cone.rays(), self.ambient_dim);
        let quotient = self.image(&projection).expect("image of a nonempty polyhedron");
        InfiniteFace {
            asymptotic_cone: asymptotic_cone.clone(),
            quotient,
            projection,
        }
    }

    /// One stratum per nonzero face of the recession cone.
    pub fn infinite_faces(&self) -> Result<Vec<InfiniteFace>> {
        self.require_strongly_convex()?;
        Ok(self
            .recession_cone()
            .faces()
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| self.infinite_face(c))
            .collect())
    }
}

/// The polyhedron on which every generator is nonpositive.
pub fn convergence_polyhedron(generators: &[AffineFunction], n: usize) -> Result<Polyhedron> {
    Polyhedron::canonicalize(generators, n)
}
