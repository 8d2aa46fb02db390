use num_bigint::BigInt;

use super::*;
use crate::affine::AffineFunction;
use crate::lattice::lattice_equal;
use crate::refinement::SemiPolyhedron;
use crate::scalar::rat;

fn interval(a: Scalar, b: Scalar) -> Polyhedron {
    Polyhedron::canonicalize(&[AffineFunction::from_ints(&[-1], a), AffineFunction::from_ints(&[1], -b)], 1).unwrap()
}

fn point(a: Scalar) -> Polyhedron {
    interval(a.clone(), a)
}

fn shift(t: Scalar) -> AffineMap {
    AffineMap::translation(vec![t])
}

pub(crate) fn circle() -> Collage {
    Collage::new(
        vec![interval(rat(0, 1), rat(1, 2)), interval(rat(1, 2), rat(1, 1))],
        vec![
            Gluing { from: 0, to: 1, source: point(rat(1, 2)), target: point(rat(1, 2)), map: AffineMap::identity(1) },
            Gluing { from: 1, to: 0, source: point(rat(1, 1)), target: point(rat(0, 1)), map: shift(rat(-1, 1)) },
        ],
    )
}

#[test]
fn validate_examples() {
    assert!(Collage::new(vec![interval(rat(0, 1), rat(1, 1))], vec![]).validate().is_ok());
    assert!(circle().validate().is_ok());
    let bad = Collage::new(
        vec![interval(rat(0, 1), rat(1, 1)), interval(rat(0, 1), rat(1, 1))],
        vec![
            Gluing { from: 0, to: 1, source: point(rat(1, 1)), target: point(rat(0, 1)), map: shift(rat(-1, 1)) },
            Gluing { from: 1, to: 0, source: point(rat(0, 1)), target: point(rat(1, 1)), map: AffineMap::identity(1) },
        ],
    );
    assert_eq!(bad.validate(), Err(Violation::Inverse { gluing: 0, other: 1 }));
    let missing = Collage::new(
        vec![interval(rat(0, 1), rat(1, 1))],
        vec![Gluing { from: 0, to: 3, source: point(rat(1, 1)), target: point(rat(0, 1)), map: shift(rat(-1, 1)) }],
    );
    assert_eq!(missing.validate(), Err(Violation::ChartIndex { gluing: 0 }));
}

#[test]
fn cocycle_violation_is_reported() {
    // three charts overlapping on [1,2] with inconsistent transitions
    let c = Collage::new(
        vec![interval(rat(0, 1), rat(2, 1)); 3],
        vec![
            Gluing { from: 0, to: 1, source: interval(rat(1, 1), rat(2, 1)), target: interval(rat(1, 1), rat(2, 1)), map: AffineMap::identity(1) },
            Gluing { from: 1, to: 2, source: interval(rat(1, 1), rat(2, 1)), target: interval(rat(1, 1), rat(2, 1)), map: AffineMap::identity(1) },
            Gluing { from: 0, to: 2, source: interval(rat(1, 1), rat(3, 2)), target: interval(rat(3, 2), rat(2, 1)), map: shift(rat(1, 2)) },
        ],
    );
    assert!(matches!(c.validate(), Err(Violation::Cocycle { .. })));
}

#[test]
fn circle_development_and_monodromy() {
    let c = circle();
    let dev = c.develop(0).unwrap();
    assert!(dev.iter().all(|d| d.embedding.is_identity()));
    let m = c.monodromy(0, &[(0, false), (1, false)]).unwrap();
    assert_eq!(m, shift(rat(1, 1)));
    assert_eq!(c.monodromy(0, &[]).unwrap(), AffineMap::identity(1));
    assert_eq!(c.monodromy(0, &[(1, false)]), Err(Error::PathMismatch(0)));
    let gens = c.monodromy_translations(0).unwrap().unwrap();
    assert!(lattice_equal(&gens, &[vec![rat(1, 1)]]));
}

#[test]
fn back_and_forth_shear_is_trivial() {
    let sq = Polyhedron::canonicalize(
        &[
            AffineFunction::from_ints(&[-1, 0], rat(0, 1)),
            AffineFunction::from_ints(&[1, 0], rat(-1, 1)),
            AffineFunction::from_ints(&[0, -1], rat(0, 1)),
            AffineFunction::from_ints(&[0, 1], rat(-1, 1)),
        ],
        2,
    )
    .unwrap();
    let edge = sq.face_at(&[BigInt::from(1), BigInt::from(0)]).unwrap();
    let shear = AffineMap::new(
        vec![vec![BigInt::from(1), BigInt::from(0)], vec![BigInt::from(1), BigInt::from(1)]],
        vec![rat(0, 1), rat(0, 1)],
        2,
    )
    .unwrap();
    let target = edge.image(&shear).unwrap();
    let other = sq.image(&shear).unwrap();
    let c = Collage::new(vec![sq, other], vec![Gluing { from: 0, to: 1, source: edge, target, map: shear }]);
    assert!(c.validate().is_ok());
    assert!(c.monodromy(0, &[(0, false), (0, true)]).unwrap().is_identity());
}

#[test]
fn disconnected_chart() {
    let c = Collage::new(vec![interval(rat(0, 1), rat(1, 1)), interval(rat(0, 1), rat(1, 1))], vec![]);
    assert_eq!(c.develop(0), Err(Error::DisconnectedChart(1)));
}

#[test]
fn separation_examples() {
    assert!(circle().separated_check().unwrap());
    let line = interval(rat(-1, 1), rat(1, 1));
    let eps = rat(1, 4);
    let doubled = Collage::new(
        vec![line.clone(), line],
        vec![
            Gluing { from: 0, to: 1, source: interval(rat(-1, 1), -eps.clone()), target: interval(rat(-1, 1), -eps.clone()), map: AffineMap::identity(1) },
            Gluing { from: 0, to: 1, source: interval(eps.clone(), rat(1, 1)), target: interval(eps, rat(1, 1)), map: AffineMap::identity(1) },
        ],
    );
    assert!(doubled.validate().is_ok());
    assert!(!doubled.separated_check().unwrap());
    assert!(Collage::new(vec![interval(rat(0, 1), rat(1, 1))], vec![]).separated_check().unwrap());
}

#[test]
fn manifold_examples() {
    let r = circle().affine_manifold_check().unwrap();
    assert!(r.manifold, "{:?}", r.reason);
    assert_eq!(r.atlas.len(), 2);
    assert!(!Collage::new(vec![interval(rat(0, 1), rat(1, 1))], vec![]).affine_manifold_check().unwrap().manifold);
    let half = Polyhedron::canonicalize(&[AffineFunction::from_ints(&[-1], rat(0, 1))], 1).unwrap();
    let r = Collage::new(vec![half], vec![]).affine_manifold_check().unwrap();
    assert!(!r.manifold);
    assert_eq!(r.reason.as_deref(), Some("chart 0 is unbounded"));
}

#[test]
fn torus_examples() {
    let c = group_quotient_collage(1, &[vec![rat(1, 1)]]).unwrap();
    assert_eq!(c.charts.len(), 2);
    assert!(c.validate().is_ok());
    assert!(c.affine_manifold_check().unwrap().manifold);
    assert!(c.separated_check().unwrap());
    let t = c.monodromy_translations(0).unwrap().unwrap();
    assert!(lattice_equal(&t, &[vec![rat(1, 1)]]));

    let c = group_quotient_collage(1, &[vec![rat(1, 3)]]).unwrap();
    assert_eq!(c.charts[1], interval(rat(1, 6), rat(1, 3)));
    let t = c.monodromy_translations(0).unwrap().unwrap();
    assert!(lattice_equal(&t, &[vec![rat(1, 3)]]));

    let y = vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]];
    let c = group_quotient_collage(2, &y).unwrap();
    assert_eq!(c.charts.len(), 4);
    assert!(c.validate().is_ok());
    assert!(c.affine_manifold_check().unwrap().manifold);
    assert!(c.separated_check().unwrap());
    let t = c.monodromy_translations(0).unwrap().unwrap();
    assert!(lattice_equal(&t, &y));

    assert_eq!(group_quotient_collage(2, &[vec![rat(1, 1), rat(1, 1)], vec![rat(2, 1), rat(2, 1)]]), Err(Error::RankDeficient));
}

#[test]
fn overconvergence_examples() {
    let c = Collage::new(vec![interval(rat(0, 1), rat(2, 1))], vec![]);
    let closed = vec![vec![SemiPolyhedron::closed(interval(rat(0, 1), rat(1, 1)))]];
    assert!(!c.overconvergent_open_check(&closed).unwrap());
    let whole = vec![vec![SemiPolyhedron::closed(interval(rat(0, 1), rat(2, 1)))]];
    assert!(c.overconvergent_open_check(&whole).unwrap());
    let circle = circle();
    let unstable = vec![vec![SemiPolyhedron::closed(interval(rat(0, 1), rat(1, 2)))], vec![]];
    assert_eq!(circle.overconvergent_open_check(&unstable), Err(Error::NotGluingStable(0)));
}
