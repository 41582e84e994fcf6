use std::sync::Arc;

use latmon::io::{lattice_from_json, lattice_to_json};
use latmon::*;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn symmetric(n: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-range..=range, n * (n + 1) / 2).prop_map(move |upper| {
        let mut m = IntMatrix::zeros(n, n);
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i..n {
                let x = Int::from(it.next().unwrap());
                m[(i, j)] = x.clone();
                m[(j, i)] = x;
            }
        }
        m
    })
}

fn lattice(max_rank: usize) -> impl Strategy<Value = Lattice> {
    (1..=max_rank).prop_flat_map(|n| symmetric(n, 4)).prop_map(|g| Lattice::new(g).unwrap())
}

/// Eigenvalue signs by floating-point Jacobi rotations. For integer entries
/// of size ≤ 4 in rank ≤ 5 every nonzero eigenvalue exceeds 20⁻⁴ in absolute
/// value, far above the rounding error.
fn signature_oracle(l: &Lattice) -> (usize, usize, usize) {
    let n = l.rank();
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| l.gram()[(i, j)].to_string().parse().unwrap()).collect()).collect();
    for _ in 0..200 {
        let mut off = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += a[i][j] * a[i][j];
                }
            }
        }
        if off < 1e-22 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut sig = (0, 0, 0);
    for (i, row) in a.iter().enumerate() {
        let d = row[i];
        if d > 1e-7 {
            sig.0 += 1;
        } else if d < -1e-7 {
            sig.1 += 1;
        } else {
            sig.2 += 1;
        }
    }
    sig
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn signature_matches_eigenvalues(l in lattice(5)) {
        let s = l.signature();
        let (p, n, z) = signature_oracle(&l);
        prop_assert_eq!((s.positive, s.negative, s.zero), (p, n, z));
    }

    #[test]
    fn signature_is_additive(a in lattice(4), b in lattice(4)) {
        prop_assert_eq!(a.direct_sum(&b).signature(), a.signature() + b.signature());
    }

    #[test]
    fn determinant_is_product_of_invariant_factors(l in lattice(5)) {
        let d = l.discriminant();
        let prod = d.invariant_factors.iter().fold(Int::one(), |acc, x| acc * x);
        prop_assert_eq!(prod.abs(), d.determinant.abs());
        for w in d.invariant_factors.windows(2) {
            prop_assert!(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (w[1].clone() % &w[0]).is_zero());
        }
    }

    #[test]
    fn radical_is_orthogonal_to_everything(l in lattice(5)) {
        let rad = l.radical_basis();
        prop_assert_eq!(rad.len(), l.signature().zero);
        for r in &rad {
            for i in 0..l.rank() {
                prop_assert!(l.pair(r, &LatticeVector::basis(l.rank(), i)).is_zero());
            }
        }
    }

    #[test]
    fn complements_are_saturated_and_orthogonal(l in lattice(5), coords in prop::collection::vec(-3i64..=3, 5)) {
        let v = LatticeVector::from_i64(&coords[..l.rank()]);
        let c = l.orthogonal_complement(std::slice::from_ref(&v)).unwrap();
        prop_assert!(c.is_saturated());
        for g in c.generators() {
            prop_assert!(l.pair(&g, &v).is_zero());
        }
        let expected = if l.dual_is_zero(&v) { l.rank() } else { l.rank() - 1 };
        prop_assert_eq!(c.rank(), expected);
    }

    #[test]
    fn enumerated_roots_have_the_right_square(l in lattice(3), sq in prop::sample::select(vec![-2i64, -1, 1, 2])) {
        for r in l.enumerate_roots(&Int::from(sq), 2).unwrap() {
            prop_assert_eq!(l.pair(&r, &r), Int::from(sq));
            prop_assert!(r.height() <= Int::from(2));
        }
    }

    #[test]
    fn lattice_files_roundtrip(l in lattice(5)) {
        prop_assert_eq!(lattice_from_json(&lattice_to_json(&l)).unwrap(), l);
    }

    #[test]
    fn spinor_norm_is_multiplicative(word_a in prop::collection::vec(0usize..64, 0..6), word_b in prop::collection::vec(0usize..64, 0..6)) {
        let (l, pool) = reflection_pool();
        let build = |w: &[usize]| w.iter().fold(Isometry::identity(Arc::clone(&l)), |g, &i| g.compose(&pool[i % pool.len()]).unwrap());
        let (a, b) = (build(&word_a), build(&word_b));
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ab.real_spinor_norm(), a.real_spinor_norm() * b.real_spinor_norm());
        prop_assert_eq!(ab.real_spinor_norm(), ab.real_spinor_norm_by_reflections());
    }

    #[test]
    fn conjugating_a_reflection(word in prop::collection::vec(0usize..64, 0..8), which in 0usize..64) {
        let (l, pool) = reflection_pool();
        let roots = pool_roots();
        let g = word.iter().fold(Isometry::identity(Arc::clone(&l)), |g, &i| g.compose(&pool[i % pool.len()]).unwrap());
        let alpha = &roots[which % roots.len()];
        let lhs = Isometry::reflection(&l, &g.apply(alpha).unwrap()).unwrap();
        let rhs = g.compose(&Isometry::reflection(&l, alpha).unwrap()).unwrap().compose(&g.inverse()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflection_words_stay_in_o_prime_k(word in prop::collection::vec(0usize..1000, 1..10)) {
        let s = build_surface_model(1, &[2, 3]).unwrap();
        let roots = k_orthogonal_roots(&s);
        let g = word.iter().fold(Isometry::identity(Arc::clone(&s.lattice)), |g, &i| g.then_reflect_root(&roots[i % roots.len()]).unwrap());
        prop_assert!(g.is_in_o_prime_k(&s.k).unwrap());
        prop_assert!(g.apply(&s.f).unwrap() == s.f);
    }
}

fn pool_roots() -> Vec<LatticeVector> {
    let l = Lattice::standard(&StandardKind::U, 1).unwrap().direct_sum(&Lattice::standard(&StandardKind::A(3), -1).unwrap());
    let mut out: Vec<LatticeVector> = l.enumerate_roots(&Int::from(-2), 1).unwrap();
    out.extend(l.enumerate_roots(&Int::from(2), 1).unwrap());
    out
}

fn reflection_pool() -> (Arc<Lattice>, Vec<Isometry>) {
    let l = Arc::new(Lattice::standard(&StandardKind::U, 1).unwrap().direct_sum(&Lattice::standard(&StandardKind::A(3), -1).unwrap()));
    let pool = pool_roots().iter().map(|r| Isometry::reflection(&l, r).unwrap()).collect();
    (l, pool)
}

fn k_orthogonal_roots(s: &SurfaceModel) -> Vec<LatticeVector> {
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(99);
    surface::sample_roots(&s.canonical_complement(), 40, 2, &mut rng)
}

trait DualZero {
    fn dual_is_zero(&self, v: &LatticeVector) -> bool;
}

impl DualZero for Lattice {
    fn dual_is_zero(&self, v: &LatticeVector) -> bool {
        self.gram().mul_vec(v.coords()).iter().all(Zero::is_zero)
    }
}
