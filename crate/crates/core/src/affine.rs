//! Affine functions with integral slopes and affine maps between H-affine spaces.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{self, IntMatrix};
use crate::scalar::{
    dot_int, dot_mixed, format_scalar, from_int, gcd_all, ExtendedScalar, Scalar,
};

/// An element `F ∈ Aff(N, H)`: `F(p) = slope · p + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineFunction {
    pub slope: Vec<BigInt>,
    pub constant: Scalar,
}

impl AffineFunction {
    pub fn new(slope: Vec<BigInt>, constant: Scalar) -> Self {
        Self { slope, constant }
    }

    pub fn from_ints(slope: &[i64], constant: Scalar) -> Self {
        Self::new(slope.iter().map(|&s| BigInt::from(s)).collect(), constant)
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        Self::new(vec![BigInt::zero(); dim], c)
    }

    pub fn dim(&self) -> usize {
        self.slope.len()
    }

    pub fn is_constant(&self) -> bool {
        self.slope.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, p: &[Scalar]) -> Scalar {
        dot_mixed(&self.slope, p) + &self.constant
    }

    /// Evaluation at an extended point. The result is `−∞` exactly when a
    /// coordinate at `−∞` carries a positive slope; a coordinate at `−∞` with
    /// negative slope would contribute `+∞` and is reported as indeterminate.
    pub fn evaluate(&self, p: &[ExtendedScalar]) -> Result<ExtendedScalar> {
        if p.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: p.len(),
            });
        }
        let mut neg_inf = false;
        let mut pos_inf = false;
        let mut acc = ExtendedScalar::rational(self.constant.clone());
        for (s, x) in self.slope.iter().zip(p) {
            if x.is_neg_infinity() {
                match s.sign() {
                    num_bigint::Sign::Plus => neg_inf = true,
                    num_bigint::Sign::Minus => pos_inf = true,
                    num_bigint::Sign::NoSign => {}
                }
                continue;
            }
            acc = acc.add(&x.scale(s)?);
        }
        if pos_inf {
            return Err(Error::IndeterminateValue);
        }
        if neg_inf {
            return Ok(ExtendedScalar::NegInfinity);
        }
        Ok(acc)
    }

    /// Divides by the gcd of the slope, so that the half-space `F ≤ 0` is
    /// unchanged and the slope becomes primitive.
    pub fn normalized(&self) -> Self {
        let g = gcd_all(self.slope.iter());
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        Self {
            slope: self.slope.iter().map(|s| s / &g).collect(),
            constant: &self.constant / from_int(&g),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            slope: self.slope.iter().map(|s| s * k).collect(),
            constant: &self.constant * from_int(k),
        }
    }

    pub fn add_constant(&self, c: &Scalar) -> Self {
        Self {
            slope: self.slope.clone(),
            constant: &self.constant + c,
        }
    }

    /// Lexicographic order on `(slope, constant)`.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.slope
            .cmp(&other.slope)
            .then_with(|| self.constant.cmp(&other.constant))
    }

    /// The pairing `⟨dF, v⟩` with an integer tangent vector.
    pub fn pair(&self, v: &[BigInt]) -> BigInt {
        dot_int(&self.slope, v)
    }
}

impl Add for &AffineFunction {
    type Output = AffineFunction;
    fn add(self, rhs: &AffineFunction) -> AffineFunction {
        AffineFunction {
            slope: self.slope.iter().zip(&rhs.slope).map(|(a, b)| a + b).collect(),
            constant: &self.constant + &rhs.constant,
        }
    }
}

impl Sub for &AffineFunction {
    type Output = AffineFunction;
    fn sub(self, rhs: &AffineFunction) -> AffineFunction {
        self + &(-rhs)
    }
}

impl Neg for &AffineFunction {
    type Output = AffineFunction;
    fn neg(self) -> AffineFunction {
        AffineFunction {
            slope: self.slope.iter().map(|s| -s).collect(),
            constant: -self.constant.clone(),
        }
    }
}

impl fmt::Display for AffineFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (i, s) in self.slope.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let var = format!("x{i}");
            if out.is_empty() {
                if s.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if s.is_negative() { " - " } else { " + " });
            }
            let a = s.abs();
            if a.is_one() {
                out.push_str(&var);
            } else {
                out.push_str(&format!("{a}*{var}"));
            }
        }
        if out.is_empty() {
            out = format_scalar(&self.constant);
        } else if !self.constant.is_zero() {
            out.push_str(if self.constant.is_negative() { " - " } else { " + " });
            out.push_str(&format_scalar(&self.constant.abs()));
        }
        f.write_str(&out)
    }
}

/// An affine map `x ↦ M x + t` from an `n₁`-dimensional to an
/// `n₂`-dimensional H-affine space. `M` is integral, so pullback preserves
/// integrality of slopes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    /// `n₂ × n₁`, row-major.
    pub matrix: IntMatrix,
    pub translation: Vec<Scalar>,
    pub source_dim: usize,
}

impl AffineMap {
    pub fn new(matrix: IntMatrix, translation: Vec<Scalar>, source_dim: usize) -> Result<Self> {
        if matrix.len() != translation.len() {
            return Err(Error::DimensionMismatch {
                expected: matrix.len(),
                found: translation.len(),
            });
        }
        if let Some(bad) = matrix.iter().find(|r| r.len() != source_dim) {
            return Err(Error::DimensionMismatch {
                expected: source_dim,
                found: bad.len(),
            });
        }
        Ok(Self {
            matrix,
            translation,
            source_dim,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: lattice::identity(n),
            translation: vec![Scalar::zero(); n],
            source_dim: n,
        }
    }

    pub fn translation(t: Vec<Scalar>) -> Self {
        let n = t.len();
        Self {
            matrix: lattice::identity(n),
            translation: t,
            source_dim: n,
        }
    }

    pub fn linear(matrix: IntMatrix, source_dim: usize) -> Self {
        let n2 = matrix.len();
        Self {
            matrix,
            translation: vec![Scalar::zero(); n2],
            source_dim,
        }
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, p: &[Scalar]) -> Vec<Scalar> {
        lattice::mat_vec_rat(&self.matrix, p)
            .into_iter()
            .zip(&self.translation)
            .map(|(a, b)| a + b)
            .collect()
    }

    pub fn apply_linear(&self, v: &[BigInt]) -> Vec<BigInt> {
        lattice::mat_vec(&self.matrix, v)
    }

    pub fn apply_linear_rat(&self, v: &[Scalar]) -> Vec<Scalar> {
        lattice::mat_vec_rat(&self.matrix, v)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> AffineMap {
        let matrix = lattice::mat_mul(&self.matrix, &inner.matrix, inner.source_dim);
        let translation = self.apply(&inner.translation);
        AffineMap {
            matrix,
            translation,
            source_dim: inner.source_dim,
        }
    }

    /// `F ∘ self`.
    pub fn pullback(&self, f: &AffineFunction) -> AffineFunction {
        let slope = (0..self.source_dim)
            .map(|j| {
                self.matrix
                    .iter()
                    .zip(&f.slope)
                    .map(|(row, s)| &row[j] * s)
                    .sum()
            })
            .collect();
        AffineFunction {
            slope,
            constant: f.eval(&self.translation),
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.target_dim() == self.source_dim
            && lattice::determinant(&self.matrix).abs().is_one()
    }

    pub fn is_identity(&self) -> bool {
        *self == AffineMap::identity(self.source_dim)
    }

    pub fn is_translation(&self) -> bool {
        self.target_dim() == self.source_dim && self.matrix == lattice::identity(self.source_dim)
    }

    /// Inverse of a lattice automorphism.
    pub fn inverse(&self) -> Result<AffineMap> {
        if !self.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        let inv = lattice::inverse_unimodular(&self.matrix).ok_or(Error::NotUnimodular)?;
        let t = lattice::mat_vec_rat(&inv, &self.translation)
            .into_iter()
            .map(|x| -x)
            .collect();
        Ok(AffineMap {
            matrix: inv,
            translation: t,
            source_dim: self.source_dim,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, GeneratorTable};

    #[test]
    fn evaluate_examples() {
        let f = AffineFunction::from_ints(&[1], rat(0, 1));
        assert_eq!(
            f.evaluate(&[rat(1, 2).into()]).unwrap(),
            ExtendedScalar::rational(rat(1, 2))
        );
        assert!(f
            .evaluate(&[ExtendedScalar::NegInfinity])
            .unwrap()
            .is_neg_infinity());

        let mut t = GeneratorTable::new();
        let alpha = t.declare("alpha", rat(1, 1), rat(2, 1));
        let g = AffineFunction::from_ints(&[2, -3], rat(1, 1));
        let v = g
            .evaluate(&[rat(1, 2).into(), ExtendedScalar::generator(alpha)])
            .unwrap();
        assert_eq!(v.rational_part(), Some(&rat(2, 1)));
        assert_eq!(v.irrational_coeff(alpha), rat(-3, 1));
    }

    #[test]
    fn mixed_infinities_are_indeterminate() {
        let f = AffineFunction::from_ints(&[1, -1], rat(0, 1));
        let p = [ExtendedScalar::NegInfinity, ExtendedScalar::NegInfinity];
        assert_eq!(f.evaluate(&p), Err(Error::IndeterminateValue));
    }

    #[test]
    fn normalization_halves_constant() {
        let f = AffineFunction::from_ints(&[2, 4], rat(3, 1)).normalized();
        assert_eq!(f, AffineFunction::from_ints(&[1, 2], rat(3, 2)));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = AffineMap::new(
            vec![vec![BigInt::from(1), BigInt::from(1)], vec![BigInt::from(0), BigInt::from(1)]],
            vec![rat(1, 2), rat(-3, 1)],
            2,
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(inv.compose(&m).is_identity());
        assert!(m.compose(&inv).is_identity());
    }
}
