use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Collage, DevelopedChart, DirectedGluing};
use crate::affine::{AffineFunction, AffineMap};
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::polyhedron::Polyhedron;
use crate::refinement::{covering_check, hyperplanes_of, open_in, Decomposition, SemiPolyhedron};
use crate::scalar::Scalar;

/// Outcome of the affine-manifold test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldReport {
    pub manifold: bool,
    pub reason: Option<String>,
    /// Developed charts; together with the gluings this is the atlas.
    pub atlas: Vec<DevelopedChart>,
}

fn is_convex_union(pieces: &[Polyhedron]) -> bool {
    if pieces.len() <= 1 {
        return true;
    }
    let n = pieces[0].ambient_dim();
    let vertices: Vec<Vec<Scalar>> = pieces.iter().flat_map(|p| p.vertices().iter().cloned()).collect();
    let rays: Vec<Vec<BigInt>> = pieces.iter().flat_map(|p| p.rays().iter().cloned()).collect();
    let lin: Vec<Vec<BigInt>> = pieces.iter().flat_map(|p| p.lineality().iter().cloned()).collect();
    let hull = Polyhedron::from_generators(&vertices, &rays, &lin, n).expect("nonempty");
    covering_check(&hull, pieces).is_ok_and(|c| c.covered)
}

/// Tangent cone of `p` at a point: directions staying inside to first order.
fn tangent_cone(p: &Polyhedron, x: &[Scalar]) -> Cone {
    let normals: Vec<Vec<BigInt>> = p
        .inequalities()
        .iter()
        .filter(|f| f.eval(x).is_zero())
        .map(|f| f.slope.clone())
        .collect();
    Cone::from_inequalities(&normals, &[], p.ambient_dim())
}

fn unit_box(n: usize) -> Polyhedron {
    let mut fs = Vec::new();
    for i in 0..n {
        let mut e = vec![BigInt::from(0); n];
        e[i] = BigInt::one();
        fs.push(AffineFunction::new(e.clone(), -Scalar::one()));
        fs.push(AffineFunction::new(e.iter().map(|x| -x).collect(), -Scalar::one()));
    }
    Polyhedron::canonicalize(&fs, n).expect("nonempty")
}

impl Collage {
    /// Hausdorffness: for every ordered pair of charts and every transition
    /// map between them, the union of the regions glued by that map is a
    /// single convex polyhedron.
    pub fn separated_check(&self) -> Result<bool> {
        let directed = self.directed_gluings()?;
        let mut groups: Vec<(usize, usize, AffineMap, Vec<Polyhedron>)> = Vec::new();
        for d in &directed {
            match groups.iter_mut().find(|g| g.0 == d.from && g.1 == d.to && g.2 == d.map) {
                Some(g) => {
                    if !g.3.contains(&d.source) {
                        g.3.push(d.source.clone());
                    }
                }
                None => groups.push((d.from, d.to, d.map.clone(), vec![d.source.clone()])),
            }
        }
        Ok(groups.iter().all(|g| is_convex_union(&g.3)))
    }

    /// Orbit of a chart point under the gluings, with the map from each
    /// visited chart's coordinates back to the starting chart.
    fn orbit(&self, directed: &[DirectedGluing], chart: usize, x: &[Scalar]) -> Option<Vec<(usize, Vec<Scalar>, AffineMap)>> {
        let n = self.charts[chart].ambient_dim();
        let mut seen: Vec<(usize, Vec<Scalar>, AffineMap)> = vec![(chart, x.to_vec(), AffineMap::identity(n))];
        let mut k = 0;
        while k < seen.len() {
            let (c, p, m) = seen[k].clone();
            for d in directed.iter().filter(|d| d.from == c && d.source.contains(&p)) {
                let q = d.map.apply(&p);
                let mq = m.compose(&d.map.inverse().ok()?);
                match seen.iter().find(|s| s.0 == d.to && s.1 == q) {
                    Some(s) if s.2 != mq => return None,
                    Some(_) => {}
                    None => seen.push((d.to, q, mq)),
                }
            }
            k += 1;
        }
        Some(seen)
    }

    /// Whether the collage is a boundaryless affine manifold: all charts are
    /// bounded and full-dimensional, and around every point the developed
    /// tangent cones of its images tile the tangent space.
    pub fn affine_manifold_check(&self) -> Result<ManifoldReport> {
        let fail = |reason: String| ManifoldReport { manifold: false, reason: Some(reason), atlas: Vec::new() };
        if let Some(i) = self.charts.iter().position(|c| !c.is_bounded()) {
            return Ok(fail(format!("chart {i} is unbounded")));
        }
        if let Some(i) = self.charts.iter().position(|c| !c.is_full_dimensional()) {
            return Ok(fail(format!("chart {i} is not full-dimensional")));
        }
        let directed = self.directed_gluings()?;
        for (ci, chart) in self.charts.iter().enumerate() {
            let n = chart.ambient_dim();
            let hs: Vec<AffineFunction> = directed
                .iter()
                .filter(|d| d.from == ci)
                .flat_map(|d| hyperplanes_of(&d.source))
                .collect();
            let dec = Decomposition::by_hyperplanes(chart, &hs);
            for cell in dec.all_cells() {
                let x = cell.relative_interior_point();
                let Some(orbit) = self.orbit(&directed, ci, &x) else {
                    return Ok(fail(format!("chart {ci}: nontrivial local monodromy at {}", fmt_point(&x))));
                };
                let cones: Vec<Polyhedron> = orbit
                    .iter()
                    .map(|(c, p, m)| {
                        let t = tangent_cone(&self.charts[*c], p);
                        let lin = AffineMap::linear(m.matrix.clone(), m.source_dim);
                        t.as_polyhedron().image(&lin).expect("image")
                    })
                    .collect();
                let bx = unit_box(n);
                let pieces: Vec<Polyhedron> = cones
                    .iter()
                    .filter_map(|c| c.intersect(&bx).ok().flatten())
                    .collect();
                if !covering_check(&bx, &pieces)?.covered {
                    return Ok(fail(format!("chart {ci}: boundary point {}", fmt_point(&x))));
                }
                for (i, a) in cones.iter().enumerate() {
                    for b in &cones[i + 1..] {
                        if a.intersect(b)?.is_some_and(|c| c.dim() == n) {
                            return Ok(fail(format!("chart {ci}: overlapping development at {}", fmt_point(&x))));
                        }
                    }
                }
            }
        }
        Ok(ManifoldReport { manifold: true, reason: None, atlas: self.develop(0)? })
    }

    /// Whether the union `U` of the given pieces (listed per chart) is open in
    /// the realization of the collage.
    pub fn overconvergent_open_check(&self, pieces: &[Vec<SemiPolyhedron>]) -> Result<bool> {
        if pieces.len() != self.charts.len() {
            return Err(Error::DimensionMismatch { expected: self.charts.len(), found: pieces.len() });
        }
        for (gi, g) in self.gluings.iter().enumerate() {
            let inv = g.map.inverse()?;
            let mut hs: Vec<AffineFunction> = pieces[g.to].iter().flat_map(semi_hyperplanes).collect();
            for u in &pieces[g.from] {
                hs.extend(semi_hyperplanes(u).iter().map(|h| inv.pullback(h)));
            }
            let dec = Decomposition::by_hyperplanes(&g.target, &hs);
            for cell in dec.all_cells() {
                let q = cell.relative_interior_point();
                let p = inv.apply(&q);
                let in_to = pieces[g.to].iter().any(|u| u.contains(&q));
                let in_from = pieces[g.from].iter().any(|u| u.contains(&p));
                if in_to != in_from {
                    return Err(Error::NotGluingStable(gi));
                }
            }
        }
        for (c, chart) in self.charts.iter().enumerate() {
            if !open_in(chart, &pieces[c])?.open {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn semi_hyperplanes(u: &SemiPolyhedron) -> Vec<AffineFunction> {
    let mut h = hyperplanes_of(&u.closure);
    h.extend(u.strict.iter().cloned());
    h
}

fn fmt_point(x: &[Scalar]) -> String {
    let parts: Vec<String> = x.iter().map(crate::scalar::format_scalar).collect();
    format!("({})", parts.join(", "))
}
