use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Collage, Gluing};
use crate::affine::AffineMap;
use crate::error::{Error, Result};
use crate::lattice::rank_rat;
use crate::polyhedron::Polyhedron;
use crate::scalar::Scalar;

fn corners(intervals: &[(Scalar, Scalar)]) -> Vec<Vec<Scalar>> {
    let mut out: Vec<Vec<Scalar>> = vec![Vec::new()];
    for (a, b) in intervals {
        let mut next = Vec::new();
        for c in &out {
            for v in [a, b] {
                let mut c = c.clone();
                c.push(v.clone());
                next.push(c);
            }
        }
        out = next;
    }
    out.dedup();
    out
}

/// `x = Y t` where the columns of `Y` are the generators.
fn to_x(y: &[Vec<Scalar>], t: &[Scalar]) -> Vec<Scalar> {
    let n = t.len();
    (0..n)
        .map(|i| (0..n).fold(Scalar::zero(), |acc, j| acc + &y[j][i] * &t[j]))
        .collect()
}

fn region(y: &[Vec<Scalar>], intervals: &[(Scalar, Scalar)]) -> Polyhedron {
    let n = intervals.len();
    let vs: Vec<Vec<Scalar>> = corners(intervals).iter().map(|t| to_x(y, t)).collect();
    Polyhedron::from_generators(&vs, &[], &[], n).expect("nonempty")
}

fn digits(mut k: usize, base: usize, n: usize) -> Vec<usize> {
    (0..n)
        .map(|_| {
            let d = k % base;
            k /= base;
            d
        })
        .collect()
}

/// The compact torus `ℝⁿ / Y` as a collage: the fundamental parallelepiped
/// cut into `2ⁿ` boxes, glued by the translations in `Y` between boxes
/// that touch.
pub fn group_quotient_collage(n: usize, generators: &[Vec<Scalar>]) -> Result<Collage> {
    if generators.len() != n || generators.iter().any(|g| g.len() != n) || rank_rat(generators, n) != n {
        return Err(Error::RankDeficient);
    }
    let half = Scalar::new(BigInt::one(), BigInt::from(2));
    let boxes: Vec<Vec<usize>> = (0..1usize << n).map(|k| digits(k, 2, n)).collect();
    let interval = |b: usize| -> (Scalar, Scalar) {
        let lo = &half * Scalar::from_integer(BigInt::from(b));
        let hi = &lo + &half;
        (lo, hi)
    };
    let charts: Vec<Polyhedron> = boxes
        .iter()
        .map(|b| region(generators, &b.iter().map(|&d| interval(d)).collect::<Vec<_>>()))
        .collect();
    let shifts: Vec<Vec<i64>> = (0..3usize.pow(n as u32))
        .map(|k| digits(k, 3, n).iter().map(|&d| d as i64 - 1).collect())
        .collect();
    let mut gluings = Vec::new();
    for (i, bi) in boxes.iter().enumerate() {
        for (k, bk) in boxes.iter().enumerate() {
            for m in &shifts {
                let neg: Vec<i64> = m.iter().map(|x| -x).collect();
                if (i, m) >= (k, &neg) {
                    continue;
                }
                // t-intervals of box_i ∩ (box_k + m)
                let mut meet = Vec::with_capacity(n);
                for a in 0..n {
                    let (lo_i, hi_i) = interval(bi[a]);
                    let (lo_k, hi_k) = interval(bk[a]);
                    let s = Scalar::from_integer(BigInt::from(m[a]));
                    let lo = lo_i.max(lo_k + &s);
                    let hi = hi_i.min(hi_k + &s);
                    if lo > hi {
                        break;
                    }
                    meet.push((lo, hi));
                }
                if meet.len() < n {
                    continue;
                }
                let shift: Vec<Scalar> = m.iter().map(|&x| Scalar::from_integer(BigInt::from(x))).collect();
                let tau = to_x(generators, &shift);
                let source = region(generators, &meet);
                let back: Vec<(Scalar, Scalar)> = meet.iter().zip(&shift).map(|((a, b), s)| (a - s, b - s)).collect();
                let target = region(generators, &back);
                let map = AffineMap::translation(tau.iter().map(|x| -x).collect());
                gluings.push(Gluing { from: i, to: k, source, target, map });
            }
        }
    }
    Ok(Collage::new(charts, gluings))
}
