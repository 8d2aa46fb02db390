//! Riemann–Zariski points of `X_Δ`: type triples, oriented flags and their
//! valuations, and local rings of integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::affine::AffineFunction;
use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::{self, column_hermite, inverse_rat, rank_int, rank_rat, solve_integer};
use crate::polyhedron::{project_point, quotient_projection, Location, Polyhedron};
use crate::scalar::{
    dot_int, dot_mixed, dot_rat, from_int, primitive_from_rational, to_rational_vec, ExtendedScalar,
    GeneratorTable, Scalar,
};

/// A point of `Δ(ℝ∞)` in a given chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSpec {
    pub chart: usize,
    pub coords: Vec<ExtendedScalar>,
}

/// An oriented flag of half-spaces at a rational point `base`, encoded by the
/// jet `base + ε₁u₁ + ε₂u₂ + …` with `ε₁ ≫ ε₂ ≫ … > 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrientedFlag {
    pub base: Vec<Scalar>,
    pub covectors: Vec<Vec<BigInt>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TypeTriple {
    pub d_i: usize,
    pub d_ii: usize,
    pub d_iii: usize,
}

impl fmt::Display for TypeTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{}|{})", self.d_i, self.d_ii, self.d_iii)
    }
}

impl OrientedFlag {
    pub fn new(base: Vec<Scalar>, covectors: Vec<Vec<BigInt>>) -> Self {
        Self { base, covectors }
    }

    pub fn empty(base: Vec<Scalar>) -> Self {
        Self { base, covectors: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }

    /// `(⟨dF,u₁⟩, …, ⟨dF,u_d⟩)`.
    pub fn pairings(&self, f: &AffineFunction) -> Vec<BigInt> {
        self.covectors.iter().map(|u| f.pair(u)).collect()
    }

    /// The representative obtained by Gram–Schmidt orthogonalisation over ℚ,
    /// each vector made primitive. Two lists define the same flag iff their
    /// canonical forms agree.
    pub fn canonical(&self) -> OrientedFlag {
        let mut done: Vec<Vec<Scalar>> = Vec::new();
        let mut out = Vec::new();
        for u in &self.covectors {
            let mut w = to_rational_vec(u);
            for b in &done {
                let c = dot_rat(&w, b) / dot_rat(b, b);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= &c * bi;
                }
            }
            let p = primitive_from_rational(&w);
            done.push(to_rational_vec(&p));
            out.push(p);
        }
        OrientedFlag::new(self.base.clone(), out)
    }

    /// The jet evaluated at `ε_i = δ^i`.
    pub fn jet_point(&self, delta: &Scalar) -> Vec<Scalar> {
        let mut x = self.base.clone();
        let mut e = Scalar::one();
        for u in &self.covectors {
            e *= delta;
            for (xi, ui) in x.iter_mut().zip(u) {
                *xi += &e * from_int(ui);
            }
        }
        x
    }
}

fn lex_sign(v: &[BigInt]) -> Ordering {
    v.iter()
        .find(|x| !x.is_zero())
        .map_or(Ordering::Equal, |x| x.cmp(&BigInt::zero()))
}

/// Checks that `flag` is an oriented flag of `Δ` at its base point.
pub fn check_flag(delta: &Polyhedron, flag: &OrientedFlag) -> Result<()> {
    let n = delta.ambient_dim();
    if flag.base.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: flag.base.len() });
    }
    if let Some(u) = flag.covectors.iter().find(|u| u.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: u.len() });
    }
    if !delta.contains(&flag.base) {
        return Err(Error::PointOutside);
    }
    if rank_int(&flag.covectors) != flag.len() {
        return Err(Error::InvalidFlag("covectors are linearly dependent".into()));
    }
    for f in delta.inequalities() {
        if f.eval(&flag.base).is_zero() && lex_sign(&flag.pairings(f)) == Ordering::Greater {
            return Err(Error::InvalidFlag(format!("jet leaves the polyhedron across {f}")));
        }
    }
    Ok(())
}

pub fn is_valid_flag(delta: &Polyhedron, flag: &OrientedFlag) -> bool {
    check_flag(delta, flag).is_ok()
}

/// A point with its type I and type III components removed: the polyhedron
/// and rational point on which the residual flag lives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedPoint {
    pub polyhedron: Polyhedron,
    pub point: Vec<Scalar>,
    pub d_i: usize,
    pub d_iii: usize,
}

/// Passes to the quotient by the asymptotic cone of the infinite face
/// containing `p`, then to the quotient by the rational span of its
/// irrational directions.
pub fn reduce_point(delta: &Polyhedron, p: &[ExtendedScalar], table: &GeneratorTable) -> Result<ReducedPoint> {
    let (poly, q, d_i) = match delta.membership(p, table)? {
        Location::Outside => return Err(Error::PointOutside),
        Location::InteriorOf(_) => (delta.clone(), p.to_vec(), 0),
        Location::OnInfiniteFace { face, .. } => {
            let q = project_point(&face.projection.matrix, p)?;
            (face.quotient.clone(), q, face.height())
        }
    };
    let m = poly.ambient_dim();
    let mut ids: Vec<usize> = q.iter().flat_map(|x| x.irrational_terms().map(|(g, _)| *g)).collect();
    ids.sort_unstable();
    ids.dedup();
    let coeffs: Vec<Vec<Scalar>> = ids
        .iter()
        .map(|&g| q.iter().map(|x| x.irrational_coeff(g)).collect())
        .collect();
    let d_iii = rank_rat(&coeffs, m);
    let (poly, q) = if d_iii == 0 {
        (poly, q)
    } else {
        let dirs: Vec<Vec<BigInt>> = coeffs.iter().map(|c| primitive_from_rational(c)).collect();
        let proj = quotient_projection(&dirs, m);
        let q = project_point(&proj.matrix, &q)?;
        (poly.image(&proj)?, q)
    };
    let point = q
        .iter()
        .map(|x| x.as_rational().cloned().ok_or(Error::IndeterminateValue))
        .collect::<Result<Vec<_>>>()?;
    Ok(ReducedPoint { polyhedron: poly, point, d_i, d_iii })
}

/// The type `(d_I|d_II|d_III)` of the point given by `p` and a flag at its
/// reduced rational part.
pub fn classify(delta: &Polyhedron, p: &[ExtendedScalar], flag: &OrientedFlag, table: &GeneratorTable) -> Result<TypeTriple> {
    let r = reduce_point(delta, p, table)?;
    if flag.base != r.point {
        return Err(Error::InvalidFlag("flag is not based at the rational part of the point".into()));
    }
    check_flag(&r.polyhedron, flag)?;
    Ok(TypeTriple { d_i: r.d_i, d_ii: flag.len(), d_iii: r.d_iii })
}

/// Whether `a` is contained in `b`, i.e. `a` is a prefix of `b` as a flag.
pub fn specializes(a: &OrientedFlag, b: &OrientedFlag) -> Result<bool> {
    if a.base != b.base {
        return Err(Error::BasePointMismatch);
    }
    let (a, b) = (a.canonical(), b.canonical());
    Ok(a.len() <= b.len() && a.covectors[..] == b.covectors[..a.len()])
}

/// All oriented flags at `y` of length at most `d_max` whose covectors have
/// entries in `[−w, w]`, in canonical form, shortest first.
pub fn enumerate_flags(delta: &Polyhedron, y: &[Scalar], d_max: usize, w: i64) -> Vec<OrientedFlag> {
    let n = delta.ambient_dim();
    let root = OrientedFlag::empty(y.to_vec());
    if y.len() != n || !is_valid_flag(delta, &root) {
        return Vec::new();
    }
    let window: Vec<Vec<BigInt>> = box_vectors(n, w);
    let mut levels: Vec<Vec<OrientedFlag>> = vec![vec![root]];
    for _ in 0..d_max.min(n) {
        let mut next: Vec<OrientedFlag> = Vec::new();
        for f in levels.last().expect("nonempty") {
            for u in &window {
                let mut g = f.clone();
                g.covectors.push(u.clone());
                if is_valid_flag(delta, &g) {
                    let c = g.canonical();
                    if !next.contains(&c) {
                        next.push(c);
                    }
                }
            }
        }
        next.sort();
        levels.push(next);
    }
    levels.into_iter().flatten().collect()
}

fn box_vectors(n: usize, w: i64) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-w..=w).map(move |x| {
                    let mut v = v.clone();
                    v.push(BigInt::from(x));
                    v
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|x| !x.is_zero()));
    out
}

/// A sub-polyhedron of `Δ` containing the jet of one flag but not the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub polyhedron: Polyhedron,
    /// Index (0 or 1) of the flag whose jet lies in `polyhedron`.
    pub contains: usize,
}

pub fn separating_polyhedron(delta: &Polyhedron, a: &OrientedFlag, b: &OrientedFlag) -> Result<Separation> {
    if a.base != b.base {
        return Err(Error::BasePointMismatch);
    }
    check_flag(delta, a)?;
    check_flag(delta, b)?;
    let (ca, cb) = (a.canonical(), b.canonical());
    let k = ca
        .covectors
        .iter()
        .zip(&cb.covectors)
        .take_while(|(x, y)| x == y)
        .count();
    let (normal, contains) = if k == ca.len() && k == cb.len() {
        return Err(Error::InvalidArgument("flags coincide".into()));
    } else if k == ca.len() {
        (cb.covectors[k].clone(), 0)
    } else if k == cb.len() {
        (ca.covectors[k].clone(), 1)
    } else {
        // ℓ = w' − t·w with ⟨ℓ,w⟩ < 0 < ⟨ℓ,w'⟩; both lie in the orthogonal
        // complement of the common prefix.
        let (w, v) = (&ca.covectors[k], &cb.covectors[k]);
        let c = from_int(&dot_int(w, v));
        let (ww, vv) = (from_int(&dot_int(w, w)), from_int(&dot_int(v, v)));
        let t = if c <= Scalar::zero() {
            Scalar::one()
        } else {
            (&c / &ww + &vv / &c) / Scalar::from_integer(BigInt::from(2))
        };
        let l: Vec<Scalar> = v.iter().zip(w).map(|(vi, wi)| from_int(vi) - &t * from_int(wi)).collect();
        (primitive_from_rational(&l), 0)
    };
    let constant = -dot_mixed(&normal, &a.base);
    let polyhedron = delta
        .restrict(&[AffineFunction::new(normal, constant)])?
        .expect("the base point satisfies the new inequality");
    Ok(Separation { polyhedron, contains })
}

/// `v(F) = (F(y), ⟨dF,u₁⟩, …)`, ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FlagValue {
    pub constant: Scalar,
    pub pairings: Vec<BigInt>,
}

impl FlagValue {
    pub fn sign(&self) -> Ordering {
        match self.constant.cmp(&Scalar::zero()) {
            Ordering::Equal => lex_sign(&self.pairings),
            s => s,
        }
    }
}

impl Add for &FlagValue {
    type Output = FlagValue;

    fn add(self, other: &FlagValue) -> FlagValue {
        FlagValue {
            constant: &self.constant + &other.constant,
            pairings: self.pairings.iter().zip(&other.pairings).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Display for FlagValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", crate::scalar::format_scalar(&self.constant))?;
        for p in &self.pairings {
            write!(f, ", {p}")?;
        }
        write!(f, ")")
    }
}

/// The valuation of a flag together with its image lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagValuation {
    pub flag: OrientedFlag,
    /// Basis of the slope lattice of affine functions bounded above on `Δ`.
    pub slope_lattice: Vec<Vec<BigInt>>,
    /// Generators of the image of the slope lattice in `ℤᵈ` (columns).
    pub image_generators: Vec<Vec<BigInt>>,
    /// Lower-triangular basis of the image when it has full rank `d`.
    pub image_basis: Option<Vec<Vec<BigInt>>>,
    /// `[ℤᵈ : image]` when the image has full rank.
    pub index: Option<BigInt>,
    /// Rows `T⁻¹ (u₁ … u_d)ᵀ`; pairing with them gives an order-preserving
    /// valuation onto `H × ℤᵈ`.
    pub adapted: Option<Vec<Vec<Scalar>>>,
}

impl FlagValuation {
    pub fn value(&self, f: &AffineFunction) -> FlagValue {
        FlagValue { constant: f.eval(&self.flag.base), pairings: self.flag.pairings(f) }
    }

    pub fn adapted_value(&self, f: &AffineFunction) -> Option<FlagValue> {
        let rows = self.adapted.as_ref()?;
        let slope = to_rational_vec(&f.slope);
        let pairings = rows
            .iter()
            .map(|r| {
                let v = dot_rat(r, &slope);
                v.is_integer().then(|| v.to_integer())
            })
            .collect::<Option<Vec<_>>>()?;
        Some(FlagValue { constant: f.eval(&self.flag.base), pairings })
    }

    /// An affine function vanishing at the base point whose adapted value is
    /// the `j`-th unit vector of `ℤᵈ`.
    pub fn unit_preimage(&self, j: usize) -> Option<AffineFunction> {
        let basis = self.image_basis.as_ref()?;
        let d = self.flag.len();
        let target: Vec<BigInt> = (0..d).map(|i| basis[i][j].clone()).collect();
        let coeffs = solve_integer(&self.image_generators, self.slope_lattice.len(), &target)?;
        let n = self.flag.base.len();
        let mut slope = vec![BigInt::zero(); n];
        for (c, s) in coeffs.iter().zip(&self.slope_lattice) {
            for (x, y) in slope.iter_mut().zip(s) {
                *x += c * y;
            }
        }
        let constant = -dot_mixed(&slope, &self.flag.base);
        Some(AffineFunction::new(slope, constant))
    }
}

pub fn flag_valuation(delta: &Polyhedron, flag: &OrientedFlag) -> Result<FlagValuation> {
    check_flag(delta, flag)?;
    let n = delta.ambient_dim();
    let d = flag.len();
    let slope_lattice = if delta.lineality().is_empty() {
        lattice::identity(n)
    } else {
        lattice::integer_kernel(delta.lineality(), n)
    };
    let image_generators: Vec<Vec<BigInt>> = flag
        .covectors
        .iter()
        .map(|u| slope_lattice.iter().map(|s| dot_int(u, s)).collect())
        .collect();
    let image_basis = if d == 0 { Some(Vec::new()) } else { column_hermite(&image_generators, slope_lattice.len()) };
    let index = image_basis.as_ref().map(|t| (0..d).fold(BigInt::one(), |acc, i| acc * &t[i][i]));
    let adapted = image_basis.as_ref().map(|t| {
        let t_inv = if d == 0 { Vec::new() } else { inverse_rat(t).expect("positive diagonal") };
        t_inv
            .iter()
            .map(|row| {
                (0..n)
                    .map(|k| {
                        row.iter()
                            .zip(&flag.covectors)
                            .map(|(a, u)| a * from_int(&u[k]))
                            .fold(Scalar::zero(), |x, y| x + y)
                    })
                    .collect()
            })
            .collect()
    });
    Ok(FlagValuation { flag: flag.clone(), slope_lattice, image_generators, image_basis, index, adapted })
}

/// `Aff⁺_{Δ,y}`: affine functions that are `≤ 0` near `y`. These are the
/// functions negative at `y` together with the monoid generated by
/// `vanishing`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalIntegers {
    pub base: Vec<Scalar>,
    /// Hilbert basis of the normal cone at `y`, each lifted to vanish at `y`.
    pub vanishing: Vec<AffineFunction>,
    normal_cone: Cone,
}

impl LocalIntegers {
    pub fn normal_cone(&self) -> &Cone {
        &self.normal_cone
    }

    pub fn contains(&self, f: &AffineFunction) -> bool {
        match f.eval(&self.base).cmp(&Scalar::zero()) {
            Ordering::Less => true,
            Ordering::Equal => self.normal_cone.contains_int(&f.slope),
            Ordering::Greater => false,
        }
    }
}

pub fn local_integers(delta: &Polyhedron, y: &[Scalar]) -> Result<LocalIntegers> {
    let n = delta.ambient_dim();
    if y.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: y.len() });
    }
    if !delta.contains(y) {
        return Err(Error::PointOutside);
    }
    let tight: Vec<Vec<BigInt>> = delta
        .inequalities()
        .iter()
        .filter(|f| f.eval(y).is_zero())
        .map(|f| f.slope.clone())
        .collect();
    let normal_cone = Cone::from_generators(&tight, &[], n);
    let mut vanishing: Vec<AffineFunction> = normal_cone
        .hilbert_basis()
        .into_iter()
        .map(|h| {
            let c = -dot_mixed(&h, y);
            AffineFunction::new(h, c)
        })
        .collect();
    vanishing.sort_by(|a, b| a.lex_cmp(b));
    Ok(LocalIntegers { base: y.to_vec(), vanishing, normal_cone })
}

/// For `v(F) > 0`, a point of `Δ` on the flag's jet where `F > 0`, with the
/// parameter `δ` used; every smaller `δ = 2⁻ᵏ` also works.
pub fn positivity_witness(delta: &Polyhedron, flag: &OrientedFlag, f: &AffineFunction) -> Option<(Scalar, Vec<Scalar>)> {
    let v = FlagValue { constant: f.eval(&flag.base), pairings: flag.pairings(f) };
    if v.sign() != Ordering::Greater || !is_valid_flag(delta, flag) {
        return None;
    }
    let canon = flag.canonical();
    let mut delta_t = Scalar::one();
    for _ in 0..256 {
        delta_t /= Scalar::from_integer(BigInt::from(2));
        let x = canon.jet_point(&delta_t);
        if delta.contains(&x) && f.eval(&x).is_positive() {
            return Some((delta_t, x));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn interval(a: i64, b: i64) -> Polyhedron {
        Polyhedron::canonicalize(&[AffineFunction::from_ints(&[-1], rat(a, 1)), AffineFunction::from_ints(&[1], rat(-b, 1))], 1).unwrap()
    }

    fn half_line() -> Polyhedron {
        Polyhedron::canonicalize(&[AffineFunction::from_ints(&[-1], rat(0, 1))], 1).unwrap()
    }

    fn square() -> Polyhedron {
        Polyhedron::canonicalize(
            &[
                AffineFunction::from_ints(&[-1, 0], rat(0, 1)),
                AffineFunction::from_ints(&[1, 0], rat(-1, 1)),
                AffineFunction::from_ints(&[0, -1], rat(0, 1)),
                AffineFunction::from_ints(&[0, 1], rat(-1, 1)),
            ],
            2,
        )
        .unwrap()
    }

    fn flag(base: &[Scalar], us: &[&[i64]]) -> OrientedFlag {
        OrientedFlag::new(base.to_vec(), us.iter().map(|u| ints(u)).collect())
    }

    #[test]
    fn classify_examples() {
        let mut table = GeneratorTable::new();
        let alpha = table.declare("alpha", rat(7, 5), rat(3, 2));
        let h = half_line();
        let half = vec![ExtendedScalar::rational(rat(1, 2))];
        let t = classify(&h, &half, &flag(&[rat(1, 2)], &[]), &table).unwrap();
        assert_eq!(t.to_string(), "(0|0|0)");

        let inf = vec![ExtendedScalar::NegInfinity];
        let r = reduce_point(&h, &inf, &table).unwrap();
        assert_eq!(r.point.len(), 0);
        let t = classify(&h, &inf, &flag(&[], &[]), &table).unwrap();
        assert_eq!(t.to_string(), "(1|0|0)");

        let a = vec![ExtendedScalar::generator(alpha)];
        let r = reduce_point(&h, &a, &table).unwrap();
        let t = classify(&h, &a, &OrientedFlag::empty(r.point), &table).unwrap();
        assert_eq!(t.to_string(), "(0|0|1)");

        let sq = square();
        let c = vec![ExtendedScalar::rational(rat(1, 2)); 2];
        let t = classify(&sq, &c, &flag(&[rat(1, 2), rat(1, 2)], &[&[1, 0], &[0, 1]]), &table).unwrap();
        assert_eq!(t.to_string(), "(0|2|0)");

        let corner = vec![ExtendedScalar::rational(rat(0, 1)); 2];
        let bad = flag(&[rat(0, 1), rat(0, 1)], &[&[-1, 0]]);
        assert!(matches!(classify(&sq, &corner, &bad, &table), Err(Error::InvalidFlag(_))));
        let out = vec![ExtendedScalar::rational(rat(2, 1)); 2];
        assert_eq!(classify(&sq, &out, &flag(&[rat(2, 1), rat(2, 1)], &[]), &table), Err(Error::PointOutside));
    }

    #[test]
    fn valuation_examples() {
        let sq = square();
        let o = [rat(0, 1), rat(0, 1)];
        let fl = flag(&o, &[&[1, 0], &[0, 1]]);
        let v = flag_valuation(&sq, &fl).unwrap();
        let x = AffineFunction::from_ints(&[1, 0], rat(0, 1));
        assert_eq!(v.value(&x), FlagValue { constant: rat(0, 1), pairings: ints(&[1, 0]) });
        let m1 = AffineFunction::constant(2, rat(-1, 1));
        assert_eq!(v.value(&m1), FlagValue { constant: rat(-1, 1), pairings: ints(&[0, 0]) });
        let s = AffineFunction::from_ints(&[-1, -1], rat(0, 1));
        assert_eq!(v.value(&s).pairings, ints(&[-1, -1]));
        assert_eq!(v.value(&s).sign(), Ordering::Less);
        assert_eq!(v.index, Some(int(1)));
        assert_eq!(v.unit_preimage(1).map(|f| v.value(&f)), Some(FlagValue { constant: rat(0, 1), pairings: ints(&[0, 1]) }));
    }

    #[test]
    fn image_lattice_of_a_skew_flag() {
        let sq = square();
        let c = [rat(1, 2), rat(1, 2)];
        let fl = flag(&c, &[&[1, 1], &[1, -1]]);
        let v = flag_valuation(&sq, &fl).unwrap();
        assert_eq!(v.index, Some(int(2)));
        for j in 0..2 {
            let f = v.unit_preimage(j).unwrap();
            let mut e = vec![int(0); 2];
            e[j] = int(1);
            assert_eq!(v.adapted_value(&f).unwrap().pairings, e);
        }
    }

    #[test]
    fn specialization_examples() {
        let o = [rat(0, 1), rat(0, 1)];
        let e = flag(&o, &[]);
        let a = flag(&o, &[&[1, 0]]);
        let b = flag(&o, &[&[0, 1]]);
        let ab = flag(&o, &[&[1, 0], &[0, 1]]);
        assert!(specializes(&e, &a).unwrap());
        assert!(!specializes(&a, &b).unwrap());
        assert!(specializes(&a, &ab).unwrap());
        assert!(specializes(&flag(&o, &[&[2, 0]]), &flag(&o, &[&[1, 0], &[3, 1]])).unwrap());
        assert_eq!(specializes(&e, &flag(&[rat(1, 1), rat(0, 1)], &[])), Err(Error::BasePointMismatch));
    }

    #[test]
    fn local_integer_examples() {
        let i = interval(0, 1);
        let l = local_integers(&i, &[rat(0, 1)]).unwrap();
        assert_eq!(l.vanishing, vec![AffineFunction::from_ints(&[-1], rat(0, 1))]);
        assert!(l.contains(&AffineFunction::from_ints(&[1], rat(-1, 1))));
        assert!(local_integers(&i, &[rat(1, 2)]).unwrap().vanishing.is_empty());
        let l = local_integers(&square(), &[rat(0, 1), rat(0, 1)]).unwrap();
        assert_eq!(
            l.vanishing,
            vec![AffineFunction::from_ints(&[-1, 0], rat(0, 1)), AffineFunction::from_ints(&[0, -1], rat(0, 1))]
        );
        assert_eq!(local_integers(&i, &[rat(2, 1)]), Err(Error::PointOutside));
    }

    #[test]
    fn enumeration_examples() {
        let i = interval(0, 1);
        let fl = enumerate_flags(&i, &[rat(1, 2)], 1, 1);
        assert_eq!(fl, vec![flag(&[rat(1, 2)], &[]), flag(&[rat(1, 2)], &[&[-1]]), flag(&[rat(1, 2)], &[&[1]])]);
        let fl = enumerate_flags(&i, &[rat(0, 1)], 1, 1);
        assert_eq!(fl, vec![flag(&[rat(0, 1)], &[]), flag(&[rat(0, 1)], &[&[1]])]);
        assert_eq!(enumerate_flags(&i, &[rat(0, 1)], 0, 1).len(), 1);
        assert_eq!(enumerate_flags(&square(), &[rat(1, 2), rat(1, 2)], 2, 1).len(), 25);
    }

    #[test]
    fn separation_of_corner_flags() {
        let sq = square();
        let o = [rat(0, 1), rat(0, 1)];
        let flags = enumerate_flags(&sq, &o, 2, 1);
        for (k, a) in flags.iter().enumerate() {
            for b in &flags[k + 1..] {
                let s = separating_polyhedron(&sq, a, b).unwrap();
                let (inside, outside) = if s.contains == 0 { (a, b) } else { (b, a) };
                assert!(is_valid_flag(&s.polyhedron, inside));
                assert!(!is_valid_flag(&s.polyhedron, outside));
            }
        }
    }

    #[test]
    fn witness_for_positive_value() {
        let sq = square();
        let o = [rat(0, 1), rat(0, 1)];
        let fl = flag(&o, &[&[1, 1], &[1, 0]]);
        let f = AffineFunction::from_ints(&[1, -1], rat(0, 1));
        let (_, x) = positivity_witness(&sq, &fl, &f).unwrap();
        assert!(sq.contains(&x) && f.eval(&x).is_positive());
    }
}
