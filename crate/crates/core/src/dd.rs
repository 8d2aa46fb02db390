//! Incremental double description for cones `{x ∈ ℚ^d : A x ≤ 0}`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::lattice::rank_int;
use crate::scalar::{dot_int, primitive};

/// Generators of a polyhedral cone: extreme rays modulo the lineality
/// space, plus an integral basis of the lineality space. All vectors are
/// primitive.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConeGenerators {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

fn combine(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    primitive(&x.iter().zip(y).map(|(p, q)| a * p + b * q).collect::<Vec<_>>())
}

/// Computes generators of `{x : c · x ≤ 0 for all c in constraints}`.
pub fn cone_generators(constraints: &[Vec<BigInt>], d: usize) -> ConeGenerators {
    let mut lineality: Vec<Vec<BigInt>> = (0..d)
        .map(|i| {
            let mut e = vec![BigInt::zero(); d];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    let mut processed: Vec<Vec<BigInt>> = Vec::new();

    for h in constraints {
        if h.iter().all(Zero::is_zero) {
            continue;
        }
        if let Some(k) = lineality.iter().position(|l| !dot_int(h, l).is_zero()) {
            let l = lineality.remove(k);
            let hl = dot_int(h, &l);
            for lj in lineality.iter_mut() {
                let hlj = dot_int(h, lj);
                if !hlj.is_zero() {
                    *lj = combine(&hl, lj, &-hlj, &l);
                }
            }
            let abs = hl.abs();
            let sgn = if hl.is_positive() {
                BigInt::from(1)
            } else {
                BigInt::from(-1)
            };
            for r in rays.iter_mut() {
                let hr = dot_int(h, r);
                if !hr.is_zero() {
                    *r = combine(&abs, r, &-(&sgn * hr), &l);
                }
            }
            let new_ray: Vec<BigInt> = l.iter().map(|x| -(&sgn * x)).collect();
            rays.push(primitive(&new_ray));
            processed.push(h.clone());
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot_int(h, r)).collect();
        if values.iter().all(|v| !v.is_positive()) {
            processed.push(h.clone());
            continue;
        }
        let target = d as isize - lineality.len() as isize - 2;
        let zero_sets: Vec<Vec<usize>> = rays
            .iter()
            .map(|r| {
                processed
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| dot_int(g, r).is_zero())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let mut next: Vec<Vec<BigInt>> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if !values[i].is_positive() {
                next.push(r.clone());
            }
        }
        for (p, vp) in values.iter().enumerate() {
            if !vp.is_positive() {
                continue;
            }
            for (n, vn) in values.iter().enumerate() {
                if !vn.is_negative() {
                    continue;
                }
                let common: Vec<Vec<BigInt>> = zero_sets[p]
                    .iter()
                    .filter(|i| zero_sets[n].contains(i))
                    .map(|&i| processed[i].clone())
                    .collect();
                if target < 0 || (common.len() as isize) < target {
                    continue;
                }
                if rank_int(&common) as isize != target {
                    continue;
                }
                let new = combine(vp, &rays[n], &-vn, &rays[p]);
                if !next.contains(&new) {
                    next.push(new);
                }
            }
        }
        rays = next;
        processed.push(h.clone());
    }
    rays.retain(|r| r.iter().any(|x| !x.is_zero()));
    ConeGenerators { rays, lineality }
}
