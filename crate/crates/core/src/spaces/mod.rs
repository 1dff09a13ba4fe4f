//! Points, distances, geodesics and isometries for `H^n_F`, `P^n_R` and `S^n`.

mod hyperbolic;
mod isometry;
mod projective;

pub use hyperbolic::{
    geodesic_between, geodesic_point, hyperbolic_distance, random_point, GeodesicSegment, HPoint,
};
pub use isometry::{
    random_isometry, random_isometry_with_spread, random_rotation, Isometry, Rotation,
};
pub use projective::{
    aligned_pair, jordan_trace_distance, on_cut_locus, projective_distance, sphere_distance,
    PPoint, SPoint,
};

#[cfg(test)]
mod metric_tests {
    //! Metric axioms and geodesic additivity across every implemented space.
    use super::*;
    use crate::algebra::{Field, HermitianSpace};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn hyperbolic_metric_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for f in [Field::Real, Field::Complex, Field::Quaternion] {
            for n in [1, 2, 3] {
                let s = HermitianSpace::new(f, n).unwrap();
                for _ in 0..100 {
                    let [a, b, c]: [HPoint<f64>; 3] =
                        std::array::from_fn(|_| random_point(s, 3.0, &mut rng));
                    let ab = hyperbolic_distance(&a, &b).unwrap();
                    let ba = hyperbolic_distance(&b, &a).unwrap();
                    let bc = hyperbolic_distance(&b, &c).unwrap();
                    let ac = hyperbolic_distance(&a, &c).unwrap();
                    assert_eq!(ab, ba);
                    assert!(ac <= ab + bc + 1e-9, "{f:?} n={n}: {ac} > {ab} + {bc}");
                }
            }
        }
    }

    #[test]
    fn projective_and_sphere_metric_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..300 {
            let [a, b, c]: [PPoint<f64>; 3] = std::array::from_fn(|_| PPoint::random(2, &mut rng));
            let ab = projective_distance(&a, &b).unwrap();
            assert_eq!(ab, projective_distance(&b, &a).unwrap());
            let (bc, ac) = (
                projective_distance(&b, &c).unwrap(),
                projective_distance(&a, &c).unwrap(),
            );
            assert!(ac <= ab + bc + 1e-9);
            assert!((0.0..=std::f64::consts::FRAC_PI_2 + 1e-15).contains(&ab));
            let (ja, jb, jc) = (
                jordan_trace_distance(&a, &b).unwrap(),
                jordan_trace_distance(&b, &c).unwrap(),
                jordan_trace_distance(&a, &c).unwrap(),
            );
            assert!(jc <= ja + jb + 1e-9);

            let [x, y, z]: [SPoint<f64>; 3] = std::array::from_fn(|_| SPoint::random(3, &mut rng));
            let xy = sphere_distance(&x, &y).unwrap();
            assert_eq!(xy, sphere_distance(&y, &x).unwrap());
            assert!(
                sphere_distance(&x, &z).unwrap() <= xy + sphere_distance(&y, &z).unwrap() + 1e-9
            );
        }
    }

    #[test]
    fn geodesic_additivity() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for f in [Field::Real, Field::Complex, Field::Quaternion] {
            let s = HermitianSpace::new(f, 3).unwrap();
            for _ in 0..30 {
                let x: HPoint<f64> = random_point(s, 2.5, &mut rng);
                let y: HPoint<f64> = random_point(s, 2.5, &mut rng);
                let seg = geodesic_between(&x, &y).unwrap();
                let l = seg.length();
                let mut ts: Vec<f64> = (0..4)
                    .map(|_| l * rand::Rng::random::<f64>(&mut rng))
                    .collect();
                ts.sort_by(f64::total_cmp);
                for w in ts.windows(2) {
                    let d = hyperbolic_distance(
                        &geodesic_point(&seg, w[0]),
                        &geodesic_point(&seg, w[1]),
                    )
                    .unwrap();
                    assert!((d - (w[1] - w[0])).abs() < 1e-9);
                }
            }
        }
    }
}
