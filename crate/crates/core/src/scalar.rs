//! Exact scalars over subgroups of the rationals, plus the extended values
//! used for points at infinity and for symbolic irrational coordinates.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact element of `H ⊆ ℚ`.
pub type Scalar = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_int(v: &BigInt) -> Scalar {
    Scalar::from_integer(v.clone())
}

pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    let r: BigRational = s.parse().ok()?;
    Some(r)
}

/// Lowest-terms `p/q` (or `p` when the denominator is one).
pub fn format_scalar(v: &Scalar) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Divides an integer vector by the gcd of its entries. Zero stays zero.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = gcd_all(v.iter());
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clears denominators and returns the primitive integer vector pointing in
/// the same direction.
pub fn primitive_from_rational(v: &[Scalar]) -> Vec<BigInt> {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<BigInt> = v.iter().map(|x| (x * from_int(&l)).to_integer()).collect();
    primitive(&scaled)
}

pub fn to_rational_vec(v: &[BigInt]) -> Vec<Scalar> {
    v.iter().map(from_int).collect()
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_mixed(a: &[BigInt], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .fold(Scalar::zero(), |acc, (x, y)| acc + from_int(x) * y)
}

pub fn dot_rat(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

/// Index of a declared irrational generator.
pub type GeneratorId = usize;

/// An irrational generator, declared by name and a rational enclosure. The
/// generators of one session are treated as linearly independent over `ℚ`
/// together with `1`; the enclosure only serves to decide signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrationalGenerator {
    pub name: String,
    pub lower: Scalar,
    pub upper: Scalar,
}

/// The table of irrational generators declared for a session.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorTable {
    generators: Vec<IrrationalGenerator>,
}

impl GeneratorTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, name: &str, lower: Scalar, upper: Scalar) -> GeneratorId {
        self.generators.push(IrrationalGenerator {
            name: name.to_string(),
            lower,
            upper,
        });
        self.generators.len() - 1
    }

    pub fn get(&self, id: GeneratorId) -> Option<&IrrationalGenerator> {
        self.generators.get(id)
    }

    pub fn lookup(&self, name: &str) -> Option<GeneratorId> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &IrrationalGenerator> {
        self.generators.iter()
    }
}

/// A value in an additive extension of `H`, or the absorbing element `−∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtendedScalar {
    NegInfinity,
    Finite {
        rational: Scalar,
        /// Nonzero coefficients of irrational generators.
        irrational: BTreeMap<GeneratorId, Scalar>,
    },
}

impl ExtendedScalar {
    pub fn rational(v: Scalar) -> Self {
        ExtendedScalar::Finite {
            rational: v,
            irrational: BTreeMap::new(),
        }
    }

    pub fn generator(id: GeneratorId) -> Self {
        let mut irrational = BTreeMap::new();
        irrational.insert(id, Scalar::one());
        ExtendedScalar::Finite {
            rational: Scalar::zero(),
            irrational,
        }
    }

    pub fn is_neg_infinity(&self) -> bool {
        matches!(self, ExtendedScalar::NegInfinity)
    }

    /// The value as a plain rational, if it has no irrational part.
    pub fn as_rational(&self) -> Option<&Scalar> {
        match self {
            ExtendedScalar::Finite {
                rational,
                irrational,
            } if irrational.is_empty() => Some(rational),
            _ => None,
        }
    }

    pub fn rational_part(&self) -> Option<&Scalar> {
        match self {
            ExtendedScalar::Finite { rational, .. } => Some(rational),
            ExtendedScalar::NegInfinity => None,
        }
    }

    pub fn irrational_coeff(&self, id: GeneratorId) -> Scalar {
        match self {
            ExtendedScalar::Finite { irrational, .. } => {
                irrational.get(&id).cloned().unwrap_or_else(Scalar::zero)
            }
            ExtendedScalar::NegInfinity => Scalar::zero(),
        }
    }

    pub fn irrational_terms(&self) -> impl Iterator<Item = (&GeneratorId, &Scalar)> {
        let map = match self {
            ExtendedScalar::Finite { irrational, .. } => Some(irrational),
            ExtendedScalar::NegInfinity => None,
        };
        map.into_iter().flat_map(|m| m.iter())
    }

    /// `k · self` for an integer `k`; `−∞` absorbs positive multiples only.
    pub fn scale(&self, k: &BigInt) -> Result<Self> {
        match self {
            ExtendedScalar::NegInfinity => match k.sign() {
                num_bigint::Sign::Plus => Ok(ExtendedScalar::NegInfinity),
                num_bigint::Sign::NoSign => Ok(ExtendedScalar::rational(Scalar::zero())),
                num_bigint::Sign::Minus => Err(Error::IndeterminateValue),
            },
            ExtendedScalar::Finite {
                rational,
                irrational,
            } => {
                let k = from_int(k);
                let irrational = irrational
                    .iter()
                    .map(|(g, c)| (*g, c * &k))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                Ok(ExtendedScalar::Finite {
                    rational: rational * &k,
                    irrational,
                })
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (ExtendedScalar::NegInfinity, _) | (_, ExtendedScalar::NegInfinity) => {
                ExtendedScalar::NegInfinity
            }
            (
                ExtendedScalar::Finite {
                    rational: a,
                    irrational: ia,
                },
                ExtendedScalar::Finite {
                    rational: b,
                    irrational: ib,
                },
            ) => {
                let mut irrational = ia.clone();
                for (g, c) in ib {
                    let e = irrational.entry(*g).or_insert_with(Scalar::zero);
                    *e += c;
                }
                irrational.retain(|_, c| !c.is_zero());
                ExtendedScalar::Finite {
                    rational: a + b,
                    irrational,
                }
            }
        }
    }

    /// Sign of the value. Symbolic values are decided through the declared
    /// enclosures of their generators; an enclosure straddling zero is an
    /// [`Error::IndeterminateValue`].
    pub fn sign(&self, table: &GeneratorTable) -> Result<Ordering> {
        match self {
            ExtendedScalar::NegInfinity => Ok(Ordering::Less),
            ExtendedScalar::Finite {
                rational,
                irrational,
            } => {
                if irrational.is_empty() {
                    return Ok(rational.cmp(&Scalar::zero()));
                }
                let mut lo = rational.clone();
                let mut hi = rational.clone();
                for (g, c) in irrational {
                    let gen = table.get(*g).ok_or(Error::UnknownGenerator(*g))?;
                    let (a, b) = (c * &gen.lower, c * &gen.upper);
                    if a <= b {
                        lo += a;
                        hi += b;
                    } else {
                        lo += b;
                        hi += a;
                    }
                }
                if lo > Scalar::zero() {
                    Ok(Ordering::Greater)
                } else if hi < Scalar::zero() {
                    Ok(Ordering::Less)
                } else {
                    // A nonzero combination of independent irrationals is never
                    // zero, but the enclosure cannot tell which side it is on.
                    Err(Error::IndeterminateValue)
                }
            }
        }
    }

    /// Floating-point approximation, using enclosure midpoints.
    pub fn approx(&self, table: &GeneratorTable) -> f64 {
        match self {
            ExtendedScalar::NegInfinity => f64::NEG_INFINITY,
            ExtendedScalar::Finite {
                rational,
                irrational,
            } => {
                let mut v = to_f64(rational);
                for (g, c) in irrational {
                    if let Some(gen) = table.get(*g) {
                        v += to_f64(c) * to_f64(&((&gen.lower + &gen.upper) / rat(2, 1)));
                    }
                }
                v
            }
        }
    }

    pub fn display(&self, table: &GeneratorTable) -> String {
        match self {
            ExtendedScalar::NegInfinity => "-inf".to_string(),
            ExtendedScalar::Finite {
                rational,
                irrational,
            } => {
                let mut out = String::new();
                if !rational.is_zero() || irrational.is_empty() {
                    out.push_str(&format_scalar(rational));
                }
                for (g, c) in irrational {
                    let name = table
                        .get(*g)
                        .map(|x| x.name.clone())
                        .unwrap_or_else(|| format!("g{g}"));
                    if !out.is_empty() {
                        out.push_str(if c.is_negative() { " - " } else { " + " });
                    } else if c.is_negative() {
                        out.push('-');
                    }
                    let a = c.abs();
                    if a.is_one() {
                        out.push_str(&name);
                    } else {
                        out.push_str(&format!("{}*{}", format_scalar(&a), name));
                    }
                }
                out
            }
        }
    }
}

impl From<Scalar> for ExtendedScalar {
    fn from(v: Scalar) -> Self {
        ExtendedScalar::rational(v)
    }
}

impl fmt::Display for ExtendedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(&GeneratorTable::new()))
    }
}

pub fn to_f64(v: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_normalizes_direction() {
        assert_eq!(primitive(&[int(2), int(4)]), vec![int(1), int(2)]);
        assert_eq!(primitive(&[int(0), int(0)]), vec![int(0), int(0)]);
        assert_eq!(
            primitive_from_rational(&[rat(1, 2), rat(-1, 3)]),
            vec![int(3), int(-2)]
        );
    }

    #[test]
    fn neg_infinity_absorbs() {
        let x = ExtendedScalar::NegInfinity.add(&ExtendedScalar::rational(rat(3, 1)));
        assert!(x.is_neg_infinity());
        assert!(ExtendedScalar::NegInfinity.scale(&int(-1)).is_err());
        assert_eq!(
            ExtendedScalar::NegInfinity.scale(&int(0)).unwrap(),
            ExtendedScalar::rational(rat(0, 1))
        );
    }

    #[test]
    fn symbolic_signs_use_enclosures() {
        let mut t = GeneratorTable::new();
        let a = t.declare("alpha", rat(141, 100), rat(142, 100));
        let v = ExtendedScalar::generator(a).add(&ExtendedScalar::rational(rat(-1, 1)));
        assert_eq!(v.sign(&t).unwrap(), Ordering::Greater);
        let w = ExtendedScalar::generator(a).add(&ExtendedScalar::rational(rat(-141, 100)));
        assert!(matches!(w.sign(&t), Err(Error::IndeterminateValue)));
    }

    #[test]
    fn format_lowest_terms() {
        assert_eq!(format_scalar(&rat(2, 4)), "1/2");
        assert_eq!(format_scalar(&rat(-6, 3)), "-2");
    }
}
