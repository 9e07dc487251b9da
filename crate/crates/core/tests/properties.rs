use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tropint::degree::{empirical_degree, geodesic_monotonicity_check, random_tropical_line, SamplingBox};
use tropint::intersect::{mixed_cells, perturbation_limit_2d, stable_intersection_2d, transverse_multiplicity};
use tropint::lattice::{
    determinant, lattice_index, primitive, rank, saturate, select_independent_subsystem, smith_normal_form, IntVector,
    IntegerMatrix,
};
use tropint::polytope::{
    convex_hull, l1_diameter, minkowski_sum, mixed_volume_ie, mixed_volume_interp, volume, LatticePolytope, Rational,
};
use tropint::random::{random_full_support, random_polynomial, random_polytope, rational};
use tropint::tropical::{evaluate, hypersurface, regular_subdivision};

fn matrix(n: usize) -> impl Strategy<Value = IntegerMatrix> {
    prop::collection::vec(-9i64..=9, n * n)
        .prop_map(move |e| IntegerMatrix::new(n, n, e.into_iter().map(BigInt::from).collect()))
}

fn vector(n: usize) -> impl Strategy<Value = IntVector> {
    prop::collection::vec(-12i64..=12, n).prop_map(|e| IntVector::from_i64s(&e))
}

/// Solves `Σ cᵢ bᵢ = v` over ℚ by elimination on the transposed system.
fn coordinates(basis: &[IntVector], v: &IntVector) -> Option<Vec<Rational>> {
    let k = basis.len();
    let n = v.dim();
    // rows: one equation per coordinate, k unknowns plus the right-hand side
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = basis.iter().map(|b| Rational::from_integer(b[i].clone())).collect();
            row.push(Rational::from_integer(v[i].clone()));
            row
        })
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for j in c..=k {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = &a[i][k] / &a[i][c];
    }
    Some(x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn primitive_is_idempotent(v in vector(4)) {
        prop_assume!(!v.is_zero());
        let p = primitive(&v).unwrap();
        prop_assert_eq!(primitive(&p).unwrap(), p.clone());
        prop_assert!(p.content().is_one());
        for (a, b) in p.entries().iter().zip(v.entries()) {
            prop_assert_eq!(a.signum(), b.signum());
        }
    }

    #[test]
    fn smith_product_and_index_equal_determinant(m in (2usize..=4).prop_flat_map(matrix)) {
        let n = m.rows();
        let det = determinant(&m).unwrap().abs();
        prop_assume!(!det.is_zero());
        prop_assert_eq!(smith_normal_form(&m).nonzero_product(), det.clone());
        let cols: Vec<IntVector> = (0..n).map(|j| m.column(j)).collect();
        prop_assert_eq!(lattice_index(&cols, n).unwrap(), det);
    }

    #[test]
    fn saturation_is_a_basis_of_the_span(vs in prop::collection::vec(vector(4), 1..4)) {
        let basis = saturate(&vs);
        let r = rank(&IntegerMatrix::from_rows(&vs));
        prop_assert_eq!(basis.len(), if r == 0 { 4 } else { r });
        if r > 0 {
            let snf = smith_normal_form(&IntegerMatrix::from_rows(&basis));
            prop_assert!(snf.invariant_factors.iter().all(One::is_one));
            for v in &vs {
                let c = coordinates(&basis, v).expect("input lies in the span");
                prop_assert!(c.iter().all(|x| x.is_integer()));
            }
        }
    }

    #[test]
    fn independent_subsystem_has_rank_r(vs in prop::collection::vec(vector(3), 1..6), r in 1usize..=3) {
        match select_independent_subsystem(&vs, r) {
            Ok(idx) => {
                prop_assert_eq!(idx.len(), r);
                let rows: Vec<IntVector> = idx.iter().map(|&i| vs[i].clone()).collect();
                prop_assert_eq!(rank(&IntegerMatrix::from_rows(&rows)), r);
            }
            Err(_) => prop_assert!(rank(&IntegerMatrix::from_rows(&vs)) < r),
        }
    }

    #[test]
    fn determinant_index_identity_for_multiplicities(n in 2usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let normals: Vec<IntVector> = (0..n)
            .map(|_| IntVector::from_i64s(&(0..n).map(|_| rand::Rng::gen_range(&mut rng, -6i64..=6)).collect::<Vec<_>>()))
            .collect();
        let ones = vec![BigInt::one(); n];
        match transverse_multiplicity(&normals, &ones) {
            Ok(m) => prop_assert_eq!(m, lattice_index(&normals, n).unwrap()),
            Err(_) => prop_assert!(determinant(&IntegerMatrix::from_rows(&normals)).unwrap().is_zero()),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hull_is_idempotent(n in 2usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_polytope(&mut rng, n, 4, 7);
        prop_assert_eq!(convex_hull(p.vertices()).unwrap(), p);
    }

    #[test]
    fn volume_translation_and_monotonicity(n in 2usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_polytope(&mut rng, n, 4, 6);
        let t = IntVector::from_i64s(&vec![3; n]);
        prop_assert_eq!(volume(&p.translate(&t)), volume(&p));
        let extra = random_polytope(&mut rng, n, 5, 3);
        let mut pts = p.vertices().to_vec();
        pts.extend(extra.vertices().iter().cloned());
        prop_assert!(volume(&convex_hull(&pts).unwrap()) >= volume(&p));
    }

    #[test]
    fn mixed_volume_oracles_agree_and_are_symmetric(n in 2usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let polys: Vec<LatticePolytope> = (0..n).map(|_| random_polytope(&mut rng, n, 3, 5)).collect();
        let ie = mixed_volume_ie(&polys).unwrap();
        prop_assert_eq!(&mixed_volume_interp(&polys).unwrap(), &ie);
        let mut rev = polys.clone();
        rev.reverse();
        prop_assert_eq!(&mixed_volume_ie(&rev).unwrap(), &ie);
        rev.rotate_left(1);
        prop_assert_eq!(&mixed_volume_ie(&rev).unwrap(), &ie);
    }

    #[test]
    fn mixed_volume_is_minkowski_additive(n in 2usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_polytope(&mut rng, n, 3, 4);
        let b = random_polytope(&mut rng, n, 3, 4);
        let rest: Vec<LatticePolytope> = (1..n).map(|_| random_polytope(&mut rng, n, 3, 4)).collect();
        let with = |first: LatticePolytope| {
            let mut t = vec![first];
            t.extend(rest.iter().cloned());
            mixed_volume_ie(&t).unwrap().normalized().clone()
        };
        prop_assert_eq!(with(minkowski_sum(&a, &b).unwrap()), with(a) + with(b));
    }

    #[test]
    fn diameter_is_monotone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let big = tropint::random::random_support(&mut rng, 2, 5, 8);
        let small = big[..4].to_vec();
        prop_assert!(l1_diameter(&small).unwrap() <= l1_diameter(&big).unwrap());
    }

    #[test]
    fn subdivision_tiles_the_newton_polytope(n in 2usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let support = random_full_support(&mut rng, n, 3, 7);
        let p = random_polynomial(&mut rng, &support);
        let cells = regular_subdivision(&p).unwrap();
        let total: Rational = cells.iter().map(|c| volume(&c.polytope())).sum();
        prop_assert_eq!(total, volume(&p.newton_polytope().unwrap()));
        for c in &cells {
            prop_assert_eq!(&evaluate(&p, &c.witness).unwrap().argmax, &c.support_points);
        }
    }

    #[test]
    fn hypersurface_weights_and_membership(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let support = random_full_support(&mut rng, 2, 4, 6);
        let p = random_polynomial(&mut rng, &support);
        let h = hypersurface(&p).unwrap();
        prop_assert!(h.ridges.is_some());
        prop_assert_eq!(h.vertices.len(), h.subdivision.len());
        for (i, f) in h.facets.iter().enumerate() {
            prop_assert!(f.weight >= BigInt::one());
            prop_assert_eq!(primitive(&(&f.dual_edge.1 - &f.dual_edge.0)).unwrap(), f.normal.clone());
            prop_assert!(h.facet_contains(i, &f.base).unwrap());
        }
        for _ in 0..100 {
            let x = vec![rational(&mut rng, 30, 1_000_003), rational(&mut rng, 30, 1_000_003)];
            prop_assert_eq!(evaluate(&p, &x).unwrap().argmax.len(), 1);
        }
    }

    #[test]
    fn bernstein_equality_and_oracle_agreement(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s1 = random_full_support(&mut rng, 2, 3, 5);
        let s2 = random_full_support(&mut rng, 2, 3, 5);
        let (p1, p2) = (random_polynomial(&mut rng, &s1), random_polynomial(&mut rng, &s2));
        let (h1, h2) = (hypersurface(&p1).unwrap(), hypersurface(&p2).unwrap());
        let s = stable_intersection_2d(&h1, &h2).unwrap();
        let mv = mixed_volume_ie(&[p1.newton_polytope().unwrap(), p2.newton_polytope().unwrap()]).unwrap();
        prop_assert_eq!(Rational::from_integer(s.total()), mv.normalized().clone());
        prop_assume!(s.transverse);
        prop_assert_eq!(&perturbation_limit_2d(&h1, &h2, &IntVector::from_i64s(&[1, 2])).unwrap(), &s.points);
        prop_assert_eq!(&perturbation_limit_2d(&h1, &h2, &IntVector::from_i64s(&[-3, 5])).unwrap(), &s.points);

        let cells = mixed_cells(&[p1, p2]).unwrap();
        for pt in &s.points {
            let cell = cells.iter().find(|c| c.witness == pt.location).expect("every point has a dual cell");
            prop_assert!(cell.is_fully_mixed());
            prop_assert_eq!(cell.lattice_volume(), Rational::from_integer(pt.multiplicity.clone()));
        }
    }

    #[test]
    fn lines_are_monotone(n in 2usize..=3, seed in any::<u64>()) {
        prop_assert!(geodesic_monotonicity_check(&random_tropical_line(n, seed, &SamplingBox::default()).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn transverse_counts_respect_the_line_bound(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let size = 2 + (seed % 7) as usize;
        let support = tropint::random::random_support(&mut rng, 2, 5, size);
        let h = hypersurface(&random_polynomial(&mut rng, &support)).unwrap();
        let r = empirical_degree(&h, 50, seed, &SamplingBox::default()).unwrap();
        prop_assert!(r.line_bound_satisfied);
        let sigma = LatticePolytope::simplex(2, 1);
        let mv = mixed_volume_ie(&[convex_hull(&support).unwrap(), sigma]).unwrap();
        prop_assert_eq!(&r.line_bound, mv.normalized());
    }
}

// Three transverse points against an ℓ¹-diameter of 2: the curve has degree
// 3 but its support is a small triangle.
#[test]
fn diameter_bound_fails_for_a_degree_three_triangle() {
    use tropint::degree::{empirical_degree, line_hypersurface_intersections, TropicalLine};
    use tropint::tropical::TropicalPolynomial;
    let p = TropicalPolynomial::from_integers(&[(&[3, 2], 0), (&[4, 1], 0), (&[5, 2], 0)]).unwrap();
    let h = hypersurface(&p).unwrap();
    let r = |a: i64| Rational::from_integer(BigInt::from(a));
    let line = TropicalLine::planar(vec![r(4), r(-2)]).unwrap();
    let hits = line_hypersurface_intersections(&line, &h).unwrap();
    let points: Vec<Vec<Rational>> = hits.iter().map(|x| x.point.clone()).collect();
    assert_eq!(points, vec![vec![r(-2), r(-2)], vec![r(2), r(-2)], vec![r(4), r(-4)]]);
    assert!(hits.iter().all(|x| x.transverse));
    assert_eq!(l1_diameter(&p.support()).unwrap(), BigInt::from(2));
    let report = empirical_degree(&h, 200, 1, &SamplingBox::default()).unwrap();
    assert_eq!(report.line_bound, r(3));
    assert!(report.line_bound_satisfied);
}

// The corollary |L ∩ H| ≤ |M| − 1 fails once the support is spread out:
// a single weight-5 line is crossed by two rays of one tropical line.
#[test]
fn support_size_bound_fails_for_a_spread_out_support() {
    use tropint::degree::{line_hypersurface_intersections, TropicalLine};
    use tropint::tropical::TropicalPolynomial;
    let p = TropicalPolynomial::from_integers(&[(&[0, 0], 0), (&[5, 5], 0)]).unwrap();
    let h = hypersurface(&p).unwrap();
    let one = Rational::one();
    let line = TropicalLine::planar(vec![one.clone(), one]).unwrap();
    let hits = line_hypersurface_intersections(&line, &h).unwrap();
    assert_eq!(hits.len(), 2);
    assert!(hits.iter().all(|x| x.transverse));
    assert!(hits.len() > p.terms().len() - 1);
    assert!(BigInt::from(hits.len() as i64) <= l1_diameter(&p.support()).unwrap());
}
