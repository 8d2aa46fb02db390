use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use polyrig_core::basechange::ord_t;
use polyrig_core::lattice::{determinant, mat_mul, smith_normal_form};
use polyrig_core::points::{classify, enumerate_flags, specializes, OrientedFlag};
use polyrig_core::refinement::Decomposition;
use polyrig_core::scalar::{rat, ExtendedScalar, GeneratorTable, Scalar};
use polyrig_core::{AffineFunction, AffineMap, Cone, Polyhedron};

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn function(n: usize) -> impl Strategy<Value = AffineFunction> {
    (prop::collection::vec(-4i64..=4, n), scalar()).prop_map(|(s, c)| AffineFunction::from_ints(&s, c))
}

fn boxp(lo: &[Scalar], hi: &[Scalar]) -> Polyhedron {
    let n = lo.len();
    let mut fs = Vec::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        fs.push(AffineFunction::from_ints(&e, -hi[i].clone()));
        e[i] = -1;
        fs.push(AffineFunction::from_ints(&e, lo[i].clone()));
    }
    Polyhedron::canonicalize(&fs, n).unwrap()
}

fn unit_square() -> Polyhedron {
    boxp(&[rat(0, 1), rat(0, 1)], &[rat(1, 1), rat(1, 1)])
}

/// A unimodular matrix as a product of elementary moves.
fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<BigInt>>> {
    prop::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 0..6).prop_map(move |moves| {
        let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect();
        for (i, j, k, flip) in moves {
            if i != j {
                let row = m[j].clone();
                for (a, b) in m[i].iter_mut().zip(&row) {
                    *a += b * BigInt::from(k);
                }
            }
            if flip {
                m[i] = m[i].iter().map(|x| -x).collect();
            }
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluate_is_additive(
        f in function(3),
        g in function(3),
        p in prop::collection::vec(prop::option::weighted(0.8, scalar()), 3),
    ) {
        let p: Vec<ExtendedScalar> = p
            .into_iter()
            .map(|x| x.map_or(ExtendedScalar::NegInfinity, ExtendedScalar::rational))
            .collect();
        if let (Ok(a), Ok(b)) = (f.evaluate(&p), g.evaluate(&p)) {
            prop_assert_eq!((&f + &g).evaluate(&p).unwrap(), a.add(&b));
        }
    }

    #[test]
    fn smith_form_roundtrip(rows in 1usize..=8, cols in 1usize..=8, seed in prop::collection::vec(-50i64..=50, 64)) {
        let m: Vec<Vec<BigInt>> = (0..rows).map(|i| ints(&seed[i * 8..i * 8 + cols])).collect();
        let s = smith_normal_form(&m, cols);
        let d = mat_mul(&mat_mul(&s.u, &m, cols), &s.v, cols);
        prop_assert_eq!(&d, &s.d);
        prop_assert!(determinant(&s.u).abs().is_one());
        prop_assert!(determinant(&s.v).abs().is_one());
        for (i, row) in d.iter().enumerate() {
            prop_assert!(row.iter().enumerate().all(|(j, x)| i == j || x.is_zero()));
        }
        for i in 1..s.rank {
            prop_assert!((&d[i][i] % &d[i - 1][i - 1]).is_zero());
        }
    }

    #[test]
    fn pullback_is_contravariant(
        a in prop::collection::vec(-3i64..=3, 6),
        b in prop::collection::vec(-3i64..=3, 9),
        s in prop::collection::vec(scalar(), 5),
        h in function(3),
    ) {
        let f = AffineMap::new(vec![ints(&a[0..2]), ints(&a[2..4]), ints(&a[4..6])], s[0..3].to_vec(), 2).unwrap();
        let g = AffineMap::new(vec![ints(&b[0..3]), ints(&b[3..6]), ints(&b[6..9])], s[2..5].to_vec(), 3).unwrap();
        prop_assert_eq!(g.compose(&f).pullback(&h), f.pullback(&g.pullback(&h)));
    }

    #[test]
    fn double_description_matches_input(
        fs in prop::collection::vec(function(2), 0..5),
        probes in prop::collection::vec((scalar(), scalar()), 40),
    ) {
        let mut all = fs.clone();
        let bound = boxp(&[rat(-3, 1), rat(-3, 1)], &[rat(3, 1), rat(3, 1)]);
        all.extend(bound.inequalities().iter().cloned());
        let Ok(p) = Polyhedron::canonicalize(&all, 2) else { return Ok(()) };
        for v in p.vertices() {
            prop_assert!(all.iter().all(|f| f.eval(v) <= Scalar::zero()));
            let tight: Vec<&AffineFunction> = all.iter().filter(|f| f.eval(v).is_zero()).collect();
            let distinct: BTreeSet<Vec<BigInt>> = tight.iter().map(|f| f.normalized().slope).collect();
            prop_assert!(distinct.len() >= 2, "vertex with fewer than two independent tight constraints");
        }
        for (x, y) in probes {
            let q = [x / rat(3, 1), y / rat(3, 1)];
            prop_assert_eq!(p.contains(&q), all.iter().all(|f| f.eval(&q) <= Scalar::zero()));
        }
        let back = Polyhedron::from_generators(p.vertices(), p.rays(), p.lineality(), 2).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn recession_cone_is_dual_to_slopes(fs in prop::collection::vec(function(3), 1..5)) {
        let Ok(p) = Polyhedron::canonicalize(&fs, 3) else { return Ok(()) };
        let slopes: Vec<Vec<BigInt>> = fs.iter().map(|f| f.slope.clone()).collect();
        let dual = Cone::from_generators(&slopes, &[], 3).polar();
        prop_assert_eq!(p.recession_cone(), dual);
    }

    #[test]
    fn hilbert_basis_generates_lattice_points(rays in prop::collection::vec(prop::collection::vec(-3i64..=3, 2), 1..4)) {
        let rays: Vec<Vec<BigInt>> = rays.iter().map(|r| ints(r)).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        let cone = Cone::from_generators(&rays, &[], 2);
        let hb = cone.hilbert_basis();
        prop_assert!(hb.iter().all(|h| cone.contains_int(h)));
        // every lattice point of the cone in a window is a nonnegative
        // integer combination of the basis (dynamic programming on the window)
        let w = 6i64;
        let mut reach: BTreeSet<(i64, i64)> = BTreeSet::from([(0, 0)]);
        let small: Vec<(i64, i64)> = hb
            .iter()
            .map(|h| (i64::try_from(&h[0]).unwrap(), i64::try_from(&h[1]).unwrap()))
            .collect();
        loop {
            let mut grew = false;
            for &(a, b) in reach.clone().iter() {
                for &(x, y) in &small {
                    let (c, d) = (a + x, b + y);
                    if c.abs() <= 3 * w && d.abs() <= 3 * w && reach.insert((c, d)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        for x in -w..=w {
            for y in -w..=w {
                if cone.contains_int(&ints(&[x, y])) {
                    prop_assert!(reach.contains(&(x, y)), "({x}, {y}) not generated by {hb:?}");
                }
            }
        }
    }

    #[test]
    fn classify_is_invariant_under_unimodular_change(
        m in unimodular(2),
        t in prop::collection::vec(-3i64..=3, 2),
        yi in 0usize..4,
        pick in any::<prop::sample::Index>(),
    ) {
        let sq = unit_square();
        let ys = [[rat(0, 1), rat(0, 1)], [rat(1, 2), rat(0, 1)], [rat(1, 2), rat(1, 2)], [rat(1, 1), rat(1, 3)]];
        let y = &ys[yi];
        let flags = enumerate_flags(&sq, y, 2, 1);
        let flag = pick.get(&flags);
        let table = GeneratorTable::new();
        let map = AffineMap::new(m.clone(), t.iter().map(|&x| rat(x, 1)).collect(), 2).unwrap();
        let image = sq.image(&map).unwrap();
        let y2 = map.apply(y);
        let flag2 = OrientedFlag::new(y2.clone(), flag.covectors.iter().map(|u| map.apply_linear(u)).collect());
        let ext = |v: &[Scalar]| v.iter().cloned().map(ExtendedScalar::rational).collect::<Vec<_>>();
        let a = classify(&sq, &ext(y), flag, &table).unwrap();
        let b = classify(&image, &ext(&y2), &flag2, &table).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn specialization_is_a_partial_order(yi in 0usize..3, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let sq = unit_square();
        let ys = [[rat(0, 1), rat(0, 1)], [rat(1, 2), rat(0, 1)], [rat(1, 2), rat(1, 2)]];
        let flags = enumerate_flags(&sq, &ys[yi], 2, 1);
        let (a, b, c) = (i.get(&flags), j.get(&flags), k.get(&flags));
        prop_assert!(specializes(a, a).unwrap());
        prop_assert!(specializes(&OrientedFlag::empty(ys[yi].to_vec()), a).unwrap());
        if specializes(a, b).unwrap() && specializes(b, a).unwrap() {
            prop_assert_eq!(a.canonical(), b.canonical());
        }
        if specializes(a, b).unwrap() && specializes(b, c).unwrap() {
            prop_assert!(specializes(a, c).unwrap());
        }
    }

    #[test]
    fn ord_is_superadditive(f in function(2), g in function(2)) {
        let sq = unit_square();
        let s = ord_t(&sq, &(&f + &g)).unwrap();
        prop_assert!(s >= ord_t(&sq, &f).unwrap() + ord_t(&sq, &g).unwrap());
    }

    #[test]
    fn refinement_order(
        lines in prop::collection::vec((-2i64..=2, -2i64..=2, 0i64..=4, 0i64..=4), 1..4),
        extra in prop::collection::vec((-2i64..=2, -2i64..=2, 0i64..=4, 0i64..=4), 1..3),
    ) {
        let sq = unit_square();
        let to_f = |(a, b, x, y): &(i64, i64, i64, i64)| {
            let (a, b) = if *a == 0 && *b == 0 { (1, 0) } else { (*a, *b) };
            AffineFunction::from_ints(&[a, b], -(rat(a * x + b * y, 4)))
        };
        let hs: Vec<AffineFunction> = lines.iter().map(to_f).collect();
        let mut more = hs.clone();
        more.extend(extra.iter().map(to_f));
        let coarse = Decomposition::by_hyperplanes(&sq, &hs);
        let fine = Decomposition::by_hyperplanes(&sq, &more);
        prop_assert!(coarse.refines(&coarse).unwrap());
        prop_assert!(fine.refines(&coarse).unwrap());
        prop_assert!(Decomposition::trivial(sq.clone()).refines(&Decomposition::trivial(sq.clone())).unwrap());
        prop_assert!(coarse.refines(&Decomposition::trivial(sq.clone())).unwrap());
        let m = coarse.common_refinement(&fine).unwrap();
        prop_assert!(m.refines(&fine).unwrap() && fine.refines(&m).unwrap());
    }
}

#[test]
fn face_counts_match_active_sets() {
    let cube = boxp(&vec![rat(0, 1); 4], &vec![rat(1, 1); 4]);
    assert_eq!(cube.faces().len(), 81);
    for (p, n) in [
        (boxp(&[rat(0, 1), rat(-1, 2), rat(1, 3)], &[rat(1, 1), rat(2, 1), rat(1, 2)]), 3),
        (Polyhedron::from_generators(&[vec![rat(0, 1); 3], vec![rat(1, 1), rat(0, 1), rat(0, 1)], vec![rat(0, 1), rat(2, 1), rat(0, 1)], vec![rat(0, 1), rat(0, 1), rat(1, 2)]], &[], &[], 3).unwrap(), 3),
    ] {
        let facets = p.facets().to_vec();
        let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
        for mask in 0u32..(1 << facets.len()) {
            let vs: Vec<usize> = (0..p.vertices().len())
                .filter(|&v| (0..facets.len()).all(|i| mask & (1 << i) == 0 || facets[i].eval(&p.vertices()[v]).is_zero()))
                .collect();
            if !vs.is_empty() {
                sets.insert(vs);
            }
        }
        assert_eq!(p.faces().len(), sets.len(), "dimension {n}");
    }
}

#[test]
fn infinite_faces_follow_the_recession_cone() {
    let apex = vec![rat(1, 2), rat(-1, 1), rat(0, 1)];
    let rays = vec![ints(&[1, 0, 0]), ints(&[1, 1, 0]), ints(&[0, 1, 2])];
    let p = Polyhedron::from_generators(&[apex], &rays, &[], 3).unwrap();
    assert_eq!(p.infinite_faces().unwrap().len(), 7);
    for r in &rays {
        let face = p.infinite_faces().unwrap().into_iter().find(|f| f.asymptotic_cone.rays() == [r.clone()]);
        assert!(face.is_some_and(|f| f.height() == 1));
    }
}

#[test]
fn single_monomial_norm_decreases_with_order() {
    use num_complex::Complex64;
    use polyrig_core::basechange::{l1q_norm, MonoidAlgebraElement};
    let i = boxp(&[rat(0, 1)], &[rat(1, 1)]);
    let mut last = f64::INFINITY;
    for k in 0..8 {
        let m = MonoidAlgebraElement::monomial(Complex64::new(2.0, 1.0), AffineFunction::from_ints(&[-1], rat(-k, 1)));
        let v = l1q_norm(&i, &m, 0.4).unwrap();
        assert!(v <= last);
        last = v;
    }
}
