//! Base change to ℂ: ℓ¹_q norms on monoid algebras, the torus fibration
//! `μ`, and Mumford degenerations built from a pair of lattices `(N, Y)`.
//!
//! Complex numbers are floats; everything else stays exact.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::affine::AffineFunction;
use crate::collage::{group_quotient_collage, Collage};
use crate::error::{Error, Result};
use crate::lattice::rank_rat;
use crate::polyhedron::Polyhedron;
use crate::refinement::SemiPolyhedron;
use crate::scalar::{to_f64, Scalar};

/// Tolerance for roundtrips through floating point.
pub const ROUNDTRIP_TOL: f64 = 1e-9;
/// Tolerance for inequalities between floating-point norms.
pub const INEQUALITY_TOL: f64 = 1e-12;

/// `⌊−sup_Δ F⌋`, the largest `k` with `F + k ≤ 0` on `Δ`.
pub fn ord_t(delta: &Polyhedron, f: &AffineFunction) -> Result<BigInt> {
    let sup = delta.sup(f).ok_or(Error::SlopeUnbounded)?;
    Ok((-sup).floor().to_integer())
}

/// A finite sum `Σ c_F z^F` with distinct exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct MonoidAlgebraElement {
    terms: Vec<(Complex64, AffineFunction)>,
}

impl MonoidAlgebraElement {
    /// Collects like exponents and drops vanishing coefficients.
    pub fn new(terms: Vec<(Complex64, AffineFunction)>) -> Self {
        let mut out: Vec<(Complex64, AffineFunction)> = Vec::new();
        for (c, f) in terms {
            match out.iter_mut().find(|(_, g)| *g == f) {
                Some(t) => t.0 += c,
                None => out.push((c, f)),
            }
        }
        out.retain(|(c, _)| *c != Complex64::zero());
        Self { terms: out }
    }

    pub fn monomial(c: Complex64, f: AffineFunction) -> Self {
        Self::new(vec![(c, f)])
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(Complex64::new(1.0, 0.0), AffineFunction::constant(n, Scalar::zero()))
    }

    pub fn terms(&self) -> &[(Complex64, AffineFunction)] {
        &self.terms
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                terms.push((a * b, f + g));
            }
        }
        Self::new(terms)
    }
}

/// `Σ |c_F| q^{ord_t F}`.
pub fn l1q_norm(delta: &Polyhedron, a: &MonoidAlgebraElement, q: f64) -> Result<f64> {
    check_q(q)?;
    let mut total = 0.0;
    for (c, f) in a.terms() {
        let k = ord_t(delta, f)?;
        let k = k.to_i32().ok_or_else(|| Error::InvalidArgument("order out of range".into()))?;
        total += c.norm() * q.powi(k);
    }
    Ok(total)
}

fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("q must lie in (0, 1), got {q}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormProbe {
    pub product_norm: f64,
    pub bound: f64,
    pub ratio: f64,
    pub holds: bool,
}

/// Compares `‖ab‖` with `‖a‖·‖b‖`.
pub fn submultiplicativity_probe(delta: &Polyhedron, a: &MonoidAlgebraElement, b: &MonoidAlgebraElement, q: f64) -> Result<NormProbe> {
    let product_norm = l1q_norm(delta, &a.mul(b), q)?;
    let bound = l1q_norm(delta, a, q)? * l1q_norm(delta, b, q)?;
    let ratio = if bound == 0.0 { 0.0 } else { product_norm / bound };
    let holds = product_norm <= bound + INEQUALITY_TOL * bound.max(1.0);
    Ok(NormProbe { product_norm, bound, ratio, holds })
}

/// A point of the complex fibre over `base_point`, recorded through the
/// values of the monomial coordinates `z^F`, `F` running over the
/// nonpositive generators of `Aff⁺_Δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct FibrationSample {
    pub base_point: Vec<Scalar>,
    pub phase: Vec<f64>,
    pub q: f64,
    pub coordinates: Vec<AffineFunction>,
    /// `|z^F|`, computed from the base point alone.
    pub magnitudes: Vec<f64>,
    pub coordinate_values: Vec<Complex64>,
}

/// `z^F = exp(ln q · (−F(b)) + i⟨phase, dF⟩)`.
pub fn fibration_sample(delta: &Polyhedron, q: f64, base_point: &[Scalar], phase: &[f64]) -> Result<FibrationSample> {
    check_q(q)?;
    let n = delta.ambient_dim();
    if base_point.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: base_point.len() });
    }
    if phase.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: phase.len() });
    }
    if !delta.contains(base_point) {
        return Err(Error::OutsidePolyhedron);
    }
    let coordinates = delta.bounded_affine_monoid()?.nonpositive_generators;
    let eps = q.ln();
    let magnitudes: Vec<f64> = coordinates
        .iter()
        .map(|f| (eps * -to_f64(&f.eval(base_point))).exp())
        .collect();
    let coordinate_values = coordinates
        .iter()
        .zip(&magnitudes)
        .map(|(f, r)| {
            let angle: f64 = f.slope.iter().zip(phase).map(|(s, t)| s.to_f64().unwrap_or(f64::NAN) * t).sum();
            Complex64::from_polar(*r, angle.rem_euclid(TAU))
        })
        .collect();
    Ok(FibrationSample { base_point: base_point.to_vec(), phase: phase.to_vec(), q, coordinates, magnitudes, coordinate_values })
}

/// Recovers the base point from the coordinate magnitudes by least squares on
/// `⟨dF, b⟩ = −ln|z^F| / ln q − F(0)`.
pub fn mu(sample: &FibrationSample) -> Result<Vec<f64>> {
    let n = sample.base_point.len();
    let k = sample.coordinates.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let eps = sample.q.ln();
    let a = DMatrix::from_fn(k, n, |i, j| sample.coordinates[i].slope[j].to_f64().unwrap_or(f64::NAN));
    let r = DVector::from_fn(k, |i, _| {
        -sample.magnitudes[i].ln() / eps - to_f64(&sample.coordinates[i].constant)
    });
    let x = a
        .svd(true, true)
        .solve(&r, 1e-15)
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(x.iter().copied().collect())
}

/// Grid of `m` points per axis over the bounding box of a bounded `Δ`,
/// restricted to `Δ`.
pub fn grid_points(delta: &Polyhedron, m: usize) -> Result<Vec<Vec<Scalar>>> {
    if !delta.is_bounded() {
        return Err(Error::InvalidArgument("grid sampling needs a bounded polyhedron".into()));
    }
    let n = delta.ambient_dim();
    let steps = Scalar::from_integer(BigInt::from(m.max(2) - 1));
    let axes: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let xs = delta.vertices().iter().map(|v| v[i].clone());
            let (lo, hi) = (xs.clone().min().expect("vertex"), xs.max().expect("vertex"));
            (0..m.max(1))
                .map(|k| &lo + (&hi - &lo) * Scalar::from_integer(BigInt::from(k)) / &steps)
                .collect()
        })
        .collect();
    let mut pts: Vec<Vec<Scalar>> = vec![Vec::new()];
    for axis in &axes {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |x| {
                    let mut p = p.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    pts.retain(|p| delta.contains(p));
    Ok(pts)
}

/// A Mumford pair: the character lattice rank `n` and periods `Y ⊂ ℚⁿ`,
/// optionally with a cocycle `Y → Aff` describing a line bundle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MumfordPair {
    pub n: usize,
    pub y_generators: Vec<Vec<Scalar>>,
    pub cocycle: Option<Vec<AffineFunction>>,
}

impl MumfordPair {
    fn check(&self) -> Result<()> {
        if self.y_generators.len() != self.n || self.y_generators.iter().any(|y| y.len() != self.n) {
            return Err(Error::RankDeficient);
        }
        if rank_rat(&self.y_generators, self.n) != self.n {
            return Err(Error::RankDeficient);
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MumfordReport {
    pub collage: Collage,
    /// Finitely many charts, all bounded.
    pub proper: bool,
    pub separated: bool,
    pub manifold: bool,
    /// The whole space is an overconvergent open.
    pub overconvergent: bool,
    pub connected: bool,
    /// Translation parts of the monodromy, generating the period lattice.
    pub periods: Vec<Vec<Scalar>>,
}

pub fn mumford_build(pair: &MumfordPair) -> Result<MumfordReport> {
    pair.check()?;
    let collage = group_quotient_collage(pair.n, &pair.y_generators)?;
    let proper = collage.charts.iter().all(Polyhedron::is_bounded);
    let separated = collage.separated_check()?;
    let manifold = collage.affine_manifold_check()?.manifold;
    let whole: Vec<Vec<SemiPolyhedron>> = collage.charts.iter().map(|c| vec![SemiPolyhedron::closed(c.clone())]).collect();
    let overconvergent = collage.overconvergent_open_check(&whole)?;
    let connected = collage.develop(0).is_ok();
    let periods = collage.monodromy_translations(0)?.unwrap_or_default();
    Ok(MumfordReport { collage, proper, separated, manifold, overconvergent, connected, periods })
}

/// Splitting of a cocycle `φ : Y → Aff(N)` at the origin into
/// `Hom(Y, H) ⊕ Hom(Y, Λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicDecomposition {
    pub translation_part: Vec<Scalar>,
    pub slope_part: Vec<Vec<BigInt>>,
    pub metrisable: bool,
}

pub fn pic_decompose(pair: &MumfordPair) -> Result<PicDecomposition> {
    pair.check()?;
    let cocycle = pair
        .cocycle
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("no cocycle given".into()))?;
    if cocycle.len() != pair.y_generators.len() {
        return Err(Error::DimensionMismatch { expected: pair.y_generators.len(), found: cocycle.len() });
    }
    if let Some(f) = cocycle.iter().find(|f| f.dim() != pair.n) {
        return Err(Error::DimensionMismatch { expected: pair.n, found: f.dim() });
    }
    let translation_part: Vec<Scalar> = cocycle.iter().map(|f| f.constant.clone()).collect();
    let slope_part = cocycle.iter().map(|f| f.slope.clone()).collect();
    let metrisable = translation_part.iter().all(Zero::is_zero);
    Ok(PicDecomposition { translation_part, slope_part, metrisable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::lattice_equal;
    use crate::scalar::rat;

    fn interval() -> Polyhedron {
        Polyhedron::canonicalize(&[AffineFunction::from_ints(&[-1], rat(0, 1)), AffineFunction::from_ints(&[1], rat(-1, 1))], 1).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn ord_examples() {
        let d = interval();
        assert_eq!(ord_t(&d, &AffineFunction::from_ints(&[-1], rat(0, 1))).unwrap(), BigInt::from(0));
        assert_eq!(ord_t(&d, &AffineFunction::from_ints(&[-1], rat(-2, 1))).unwrap(), BigInt::from(2));
        assert_eq!(ord_t(&d, &AffineFunction::from_ints(&[1], rat(-3, 2))).unwrap(), BigInt::from(0));
        let half = Polyhedron::canonicalize(&[AffineFunction::from_ints(&[-1], rat(0, 1))], 1).unwrap();
        assert_eq!(ord_t(&half, &AffineFunction::from_ints(&[1], rat(0, 1))), Err(Error::SlopeUnbounded));
    }

    #[test]
    fn norm_examples() {
        let d = interval();
        let f0 = AffineFunction::from_ints(&[-1], rat(0, 1));
        let f2 = AffineFunction::from_ints(&[-1], rat(-2, 1));
        assert_eq!(l1q_norm(&d, &MonoidAlgebraElement::monomial(c(1.0), f0.clone()), 0.5).unwrap(), 1.0);
        assert_eq!(l1q_norm(&d, &MonoidAlgebraElement::monomial(c(3.0), f2.clone()), 0.5).unwrap(), 0.75);
        let two = MonoidAlgebraElement::new(vec![(Complex64::new(0.0, 2.0), f0), (c(4.0), f2)]);
        assert!((l1q_norm(&d, &two, 0.3).unwrap() - (2.0 + 0.09 * 4.0)).abs() < INEQUALITY_TOL);
        let one = MonoidAlgebraElement::one(1);
        let p = submultiplicativity_probe(&d, &one, &one, 0.3).unwrap();
        assert_eq!(p.ratio, 1.0);
        assert!(p.holds);
    }

    #[test]
    fn like_exponents_collect() {
        let f = AffineFunction::from_ints(&[-1], rat(0, 1));
        let e = MonoidAlgebraElement::new(vec![(c(1.0), f.clone()), (c(-1.0), f)]);
        assert!(e.terms().is_empty());
    }

    #[test]
    fn fibration_examples() {
        let d = interval();
        let s = fibration_sample(&d, 0.5, &[rat(1, 2)], &[0.0]).unwrap();
        let i = s.coordinates.iter().position(|f| *f == AffineFunction::from_ints(&[1], rat(-1, 1))).unwrap();
        assert!((s.coordinate_values[i].norm() - 0.5f64.sqrt()).abs() < ROUNDTRIP_TOL);
        let s = fibration_sample(&d, 0.5, &[rat(0, 1)], &[1.3]).unwrap();
        let i = s.coordinates.iter().position(|f| *f == AffineFunction::from_ints(&[-1], rat(0, 1))).unwrap();
        assert!((s.coordinate_values[i].norm() - 1.0).abs() < INEQUALITY_TOL);
        assert!((mu(&s).unwrap()[0]).abs() < ROUNDTRIP_TOL);
        assert_eq!(fibration_sample(&d, 0.5, &[rat(2, 1)], &[0.0]), Err(Error::OutsidePolyhedron));
    }

    #[test]
    fn mumford_examples() {
        let p = MumfordPair { n: 1, y_generators: vec![vec![rat(1, 1)]], cocycle: Some(vec![AffineFunction::from_ints(&[1], rat(0, 1))]) };
        let d = pic_decompose(&p).unwrap();
        assert_eq!(d.slope_part, vec![vec![BigInt::from(1)]]);
        assert_eq!(d.translation_part, vec![rat(0, 1)]);
        assert!(d.metrisable);
        let p = MumfordPair { cocycle: Some(vec![AffineFunction::from_ints(&[0], rat(1, 2))]), ..p };
        let d = pic_decompose(&p).unwrap();
        assert_eq!(d.translation_part, vec![rat(1, 2)]);
        assert!(!d.metrisable);

        let y = vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]];
        let zero = vec![AffineFunction::from_ints(&[0, 0], rat(0, 1)); 2];
        let p = MumfordPair { n: 2, y_generators: y.clone(), cocycle: Some(zero) };
        assert!(pic_decompose(&p).unwrap().metrisable);
        let r = mumford_build(&p).unwrap();
        assert!(r.proper && r.separated && r.manifold && r.overconvergent && r.connected);
        assert!(lattice_equal(&r.periods, &y));

        let bad = MumfordPair { n: 2, y_generators: vec![vec![rat(1, 1), rat(1, 1)], vec![rat(2, 1), rat(2, 1)]], cocycle: None };
        assert_eq!(mumford_build(&bad), Err(Error::RankDeficient));
    }
}
