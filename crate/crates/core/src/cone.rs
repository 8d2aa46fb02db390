//! Rational polyhedral cones and their Hilbert bases.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::affine::AffineFunction;
use crate::lattice::{self, smith_normal_form, IntMatrix};
use crate::polyhedron::Polyhedron;
use crate::scalar::{dot_int, from_int, Scalar};

/// A cone `{x : u·x ≤ 0 for u in facet normals, e·x = 0 for equations}`,
/// stored as a polyhedron with apex at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    poly: Polyhedron,
}

impl Cone {
    pub fn from_generators(rays: &[Vec<BigInt>], lineality: &[Vec<BigInt>], n: usize) -> Self {
        let apex = vec![vec![Scalar::zero(); n]];
        let poly = Polyhedron::from_generators(&apex, rays, lineality, n).expect("a cone contains its apex");
        Self { poly }
    }

    pub fn from_inequalities(normals: &[Vec<BigInt>], equations: &[Vec<BigInt>], n: usize) -> Self {
        let mut fs: Vec<AffineFunction> = normals
            .iter()
            .map(|u| AffineFunction::new(u.clone(), Scalar::zero()))
            .collect();
        for e in equations {
            let f = AffineFunction::new(e.clone(), Scalar::zero());
            fs.push(-&f);
            fs.push(f);
        }
        let poly = Polyhedron::canonicalize(&fs, n).expect("a cone contains the origin");
        Self { poly }
    }

    pub(crate) fn from_polyhedron(poly: Polyhedron) -> Self {
        Self { poly }
    }

    pub fn full(n: usize) -> Self {
        Self::from_inequalities(&[], &[], n)
    }

    pub fn zero(n: usize) -> Self {
        Self::from_generators(&[], &[], n)
    }

    pub fn ambient_dim(&self) -> usize {
        self.poly.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.poly.dim()
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        self.poly.rays()
    }

    pub fn lineality(&self) -> &[Vec<BigInt>] {
        self.poly.lineality()
    }

    pub fn is_pointed(&self) -> bool {
        self.poly.lineality().is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn facet_normals(&self) -> Vec<Vec<BigInt>> {
        self.poly.facets().iter().map(|f| f.slope.clone()).collect()
    }

    pub fn equation_normals(&self) -> Vec<Vec<BigInt>> {
        self.poly.equations().iter().map(|f| f.slope.clone()).collect()
    }

    pub fn as_polyhedron(&self) -> &Polyhedron {
        &self.poly
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.poly.contains(x)
    }

    pub fn contains_int(&self, x: &[BigInt]) -> bool {
        self.poly
            .inequalities()
            .iter()
            .all(|f| !dot_int(&f.slope, x).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        self.poly.contains_polyhedron(&other.poly)
    }

    /// `{v : v·x ≤ 0 for all x in the cone}`.
    pub fn polar(&self) -> Cone {
        Cone::from_generators(&self.facet_normals(), &self.equation_normals(), self.ambient_dim())
    }

    /// All faces, from the minimal face (the lineality space) upwards.
    pub fn faces(&self) -> Vec<Cone> {
        self.poly
            .faces()
            .iter()
            .map(|f| Cone::from_polyhedron(f.polyhedron.clone()))
            .collect()
    }

    /// The minimal generating set of the monoid `C ∩ ℤⁿ`. A lineality space
    /// contributes a lattice basis together with its negatives.
    pub fn hilbert_basis(&self) -> Vec<Vec<BigInt>> {
        let n = self.ambient_dim();
        let (u, k) = lattice::adapted_basis(self.lineality(), n);
        let u_inv = lattice::inverse_unimodular(&u).expect("unimodular");
        let lift = |y: &[BigInt], offset: usize| -> Vec<BigInt> {
            let mut z = vec![BigInt::zero(); n];
            for (i, yi) in y.iter().enumerate() {
                z[offset + i] = yi.clone();
            }
            lattice::mat_vec(&u_inv, &z)
        };
        let mut out: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..k {
            let mut e = vec![BigInt::zero(); k];
            e[i] = BigInt::from(1);
            let l = lift(&e, 0);
            out.push(l.iter().map(|x| -x).collect());
            out.push(l);
        }
        let projected: Vec<Vec<BigInt>> = self.rays().iter().map(|r| lattice::mat_vec(&u[k..], r)).collect();
        for y in pointed_hilbert_basis(&projected, n - k) {
            out.push(lift(&y, k));
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Hilbert basis of the pointed cone generated by `rays` in `ℤᵐ`.
fn pointed_hilbert_basis(rays: &[Vec<BigInt>], m: usize) -> Vec<Vec<BigInt>> {
    if rays.is_empty() {
        return Vec::new();
    }
    let (u, d) = lattice::adapted_basis(rays, m);
    let u_inv = lattice::inverse_unimodular(&u).expect("unimodular");
    let reduced: Vec<Vec<BigInt>> = rays.iter().map(|r| lattice::mat_vec(&u[..d], r)).collect();
    let cone = Cone::from_generators(&reduced, &[], d);
    let extreme: Vec<Vec<BigInt>> = cone.rays().to_vec();
    let mut candidates: Vec<Vec<BigInt>> = extreme.clone();
    for subset in subsets(extreme.len(), d) {
        let cols: Vec<&Vec<BigInt>> = subset.iter().map(|&i| &extreme[i]).collect();
        let s: IntMatrix = (0..d).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        if lattice::determinant(&s).is_zero() {
            continue;
        }
        for p in parallelepiped_points(&s, d) {
            if p.iter().any(|x| !x.is_zero()) && !candidates.contains(&p) {
                candidates.push(p);
            }
        }
    }
    let irreducible: Vec<Vec<BigInt>> = candidates
        .iter()
        .filter(|x| {
            !candidates.iter().any(|y| {
                if y == *x {
                    return false;
                }
                let diff: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
                diff.iter().any(|v| !v.is_zero()) && cone.contains_int(&diff)
            })
        })
        .cloned()
        .collect();
    irreducible
        .iter()
        .map(|y| {
            let mut z = y.clone();
            z.resize(m, BigInt::zero());
            lattice::mat_vec(&u_inv, &z)
        })
        .collect()
}

/// Lattice points `S·λ` with `λ ∈ [0,1)^d`, for a nonsingular `S`.
fn parallelepiped_points(s: &IntMatrix, d: usize) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(s, d);
    let u_inv = lattice::inverse_unimodular(&snf.u).expect("unimodular");
    let s_inv = lattice::inverse_rat(s).expect("nonsingular");
    let moduli: Vec<BigInt> = (0..d).map(|i| snf.d[i][i].abs()).collect();
    let mut out = Vec::new();
    let mut a = vec![BigInt::zero(); d];
    loop {
        let x = lattice::mat_vec(&u_inv, &a);
        let lambda: Vec<Scalar> = s_inv
            .iter()
            .map(|row| row.iter().zip(&x).fold(Scalar::zero(), |acc, (r, xi)| acc + r * from_int(xi)))
            .collect();
        let frac: Vec<Scalar> = lambda.iter().map(|l| l - l.floor()).collect();
        let p: Vec<BigInt> = (0..d)
            .map(|i| {
                s[i].iter()
                    .zip(&frac)
                    .fold(Scalar::zero(), |acc, (sij, f)| acc + from_int(sij) * f)
                    .to_integer()
            })
            .collect();
        out.push(p);
        // odometer over ∏ ℤ/dᵢ
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            a[i] += 1;
            if a[i] < moduli[i] {
                break;
            }
            a[i] = BigInt::zero();
            i += 1;
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn quadrant_hilbert_basis() {
        let c = Cone::from_generators(&[v(&[1, 0]), v(&[0, 1])], &[], 2);
        assert_eq!(c.hilbert_basis(), vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn non_unimodular_cone() {
        // cone((1,0),(1,2)) needs (1,1)
        let c = Cone::from_generators(&[v(&[1, 0]), v(&[1, 2])], &[], 2);
        assert_eq!(c.hilbert_basis(), vec![v(&[1, 0]), v(&[1, 1]), v(&[1, 2])]);
    }

    #[test]
    fn line_hilbert_basis() {
        let c = Cone::full(1);
        assert_eq!(c.hilbert_basis(), vec![v(&[-1]), v(&[1])]);
    }

    #[test]
    fn lower_dimensional_cone() {
        let c = Cone::from_generators(&[v(&[1, 1, 0]), v(&[1, -1, 0])], &[], 3);
        let hb = c.hilbert_basis();
        assert_eq!(hb, vec![v(&[1, -1, 0]), v(&[1, 0, 0]), v(&[1, 1, 0])]);
    }

    #[test]
    fn polar_of_quadrant() {
        let c = Cone::from_generators(&[v(&[1, 0]), v(&[0, 1])], &[], 2);
        let p = c.polar();
        let mut rays = p.rays().to_vec();
        rays.sort();
        assert_eq!(rays, vec![v(&[-1, 0]), v(&[0, -1])]);
    }
}
