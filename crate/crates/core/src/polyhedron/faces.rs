use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;

use super::Polyhedron;
use crate::affine::AffineFunction;
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::scalar::{dot_int, Scalar};

/// A nonempty face, recorded by the generators it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub polyhedron: Polyhedron,
    pub dim: usize,
    /// Indices into the parent's vertex list.
    pub vertices: Vec<usize>,
    /// Indices into the parent's ray list.
    pub rays: Vec<usize>,
    /// Indices into the parent's facet list of the facets containing the face.
    pub facets: Vec<usize>,
}

impl Face {
    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Face) -> bool {
        other.vertices.iter().all(|v| self.vertices.contains(v))
            && other.rays.iter().all(|r| self.rays.contains(r))
    }
}

type Key = (BTreeSet<usize>, BTreeSet<usize>);

impl Polyhedron {
    fn vertex_tight(&self, facet: usize, v: usize) -> bool {
        self.facets[facet].eval(&self.vertices[v]).is_zero()
    }

    fn ray_tight(&self, facet: usize, r: usize) -> bool {
        dot_int(&self.facets[facet].slope, &self.rays[r]).is_zero()
    }

    fn closure(&self, key: &Key) -> Vec<usize> {
        (0..self.facets.len())
            .filter(|&i| key.0.iter().all(|&v| self.vertex_tight(i, v)) && key.1.iter().all(|&r| self.ray_tight(i, r)))
            .collect()
    }

    fn face_from_key(&self, key: &Key) -> Face {
        let facets = self.closure(key);
        let mut ineqs: Vec<AffineFunction> = self.inequalities.clone();
        for &i in &facets {
            ineqs.push(-&self.facets[i]);
        }
        let polyhedron = Polyhedron::canonicalize(&ineqs, self.ambient_dim).expect("faces are nonempty");
        Face {
            dim: polyhedron.dim(),
            polyhedron,
            vertices: key.0.iter().copied().collect(),
            rays: key.1.iter().copied().collect(),
            facets,
        }
    }

    /// The lattice of nonempty faces, sorted by dimension. Computed on first
    /// use and cached.
    pub fn faces(&self) -> &[Face] {
        self.faces.get_or_init(|| {
            let top: Key = ((0..self.vertices.len()).collect(), (0..self.rays.len()).collect());
            let mut seen: BTreeSet<Key> = BTreeSet::new();
            let mut queue = VecDeque::new();
            seen.insert(top.clone());
            queue.push_back(top);
            while let Some(key) = queue.pop_front() {
                for i in 0..self.facets.len() {
                    let vs: BTreeSet<usize> = key.0.iter().copied().filter(|&v| self.vertex_tight(i, v)).collect();
                    if vs.is_empty() {
                        continue;
                    }
                    let rs: BTreeSet<usize> = key.1.iter().copied().filter(|&r| self.ray_tight(i, r)).collect();
                    let next = (vs, rs);
                    if next != key && seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
            let mut faces: Vec<Face> = seen.iter().map(|k| self.face_from_key(k)).collect();
            faces.sort_by(|a, b| {
                a.dim
                    .cmp(&b.dim)
                    .then_with(|| a.vertices.cmp(&b.vertices))
                    .then_with(|| a.rays.cmp(&b.rays))
            });
            faces
        })
    }

    /// Index of the smallest face containing `p`, which must lie in `Δ`.
    pub fn minimal_face_index(&self, p: &[Scalar]) -> usize {
        let tight = self.tight_facets_at(p);
        let faces = self.faces();
        faces
            .iter()
            .position(|f| f.facets == tight)
            .expect("every point of Δ lies in a face")
    }

    /// The face on which every affine function with slope `v` attains its
    /// maximum.
    pub fn face_at(&self, v: &[BigInt]) -> Result<Polyhedron> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: v.len() });
        }
        let Some(max) = self.sup(&AffineFunction::new(v.to_vec(), Scalar::zero())) else {
            return Err(Error::SlopeUnbounded);
        };
        let mut ineqs = self.inequalities.clone();
        ineqs.push(AffineFunction::new(v.iter().map(|x| -x).collect(), max));
        Polyhedron::canonicalize(&ineqs, self.ambient_dim)
    }

    /// For every face, the cone of slopes whose maximum is attained on a
    /// superset of that face.
    pub fn normal_fan(&self) -> Result<Vec<(Face, Cone)>> {
        self.require_strongly_convex()?;
        let n = self.ambient_dim;
        let mut out = Vec::new();
        for face in self.faces() {
            let u = &self.vertices[face.vertices[0]];
            let mut normals: Vec<Vec<BigInt>> = self.rays.clone();
            let mut equations: Vec<Vec<BigInt>> = Vec::new();
            for (j, w) in self.vertices.iter().enumerate() {
                let diff: Vec<Scalar> = w.iter().zip(u).map(|(a, b)| a - b).collect();
                let row = crate::scalar::primitive_from_rational(&diff);
                if row.iter().all(Zero::is_zero) {
                    continue;
                }
                if face.vertices.contains(&j) {
                    equations.push(row);
                } else {
                    normals.push(row);
                }
            }
            for &r in &face.rays {
                equations.push(self.rays[r].clone());
            }
            out.push((face.clone(), Cone::from_inequalities(&normals, &equations, n)));
        }
        Ok(out)
    }
}
