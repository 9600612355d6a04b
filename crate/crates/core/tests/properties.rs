use std::sync::OnceLock;

use cactus_core::cayley::{ball, CayleyBall};
use cactus_core::hyperbolic::{four_point_delta_matrix, hyperbolic_distance, HPoint, Isometry};
use cactus_core::rewriting::{
    applicable_moves, equal, is_priority_increasing, normalize_traced, oracle_closure, random_word,
    DEFAULT_CLOSURE_BUDGET,
};
use cactus_core::verify::{bar, phi_map, psi_map};
use cactus_core::{normalize, Family, GroupSpec, Word};
use proptest::prelude::*;

fn word_in(family: Family, n: u32, picks: &[usize]) -> Word {
    let spec = GroupSpec::new(family, n).unwrap();
    let gens = spec.generators();
    Word::new(spec, picks.iter().map(|&i| gens[i % gens.len()]).collect()).unwrap()
}

fn inverse(w: &Word) -> Word {
    let mut letters = w.letters().to_vec();
    letters.reverse();
    Word::new(w.spec(), letters).unwrap()
}

fn any_word() -> impl Strategy<Value = Word> {
    (prop_oneof![Just(Family::Affine), Just(Family::Cactus)], 3u32..=7, prop::collection::vec(any::<usize>(), 0..12))
        .prop_map(|(f, n, picks)| word_in(f, n, &picks))
}

fn word_pair() -> impl Strategy<Value = (Word, Word)> {
    (
        prop_oneof![Just(Family::Affine), Just(Family::Cactus)],
        3u32..=6,
        prop::collection::vec(any::<usize>(), 0..8),
        prop::collection::vec(any::<usize>(), 0..8),
    )
        .prop_map(|(f, n, a, b)| (word_in(f, n, &a), word_in(f, n, &b)))
}

fn disk_point() -> impl Strategy<Value = HPoint> {
    (0.0f64..0.95, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| HPoint::new(r * t.cos(), r * t.sin()))
}

fn aj4_ball() -> &'static CayleyBall {
    static B: OnceLock<CayleyBall> = OnceLock::new();
    B.get_or_init(|| ball(GroupSpec::affine(4).unwrap(), 3).unwrap())
}

proptest! {
    #[test]
    fn normalize_is_idempotent(w in any_word()) {
        let nf = normalize(&w);
        prop_assert_eq!(normalize(nf.word()), nf.clone());
        prop_assert!(nf.len() <= w.len());
    }

    #[test]
    fn normal_forms_are_reduced_fixpoints(w in any_word()) {
        let nf = normalize(&w);
        prop_assert!(nf.letters().windows(2).all(|p| p[0] != p[1]));
        for mv in applicable_moves(nf.word()) {
            prop_assert!(!is_priority_increasing(nf.word(), mv), "{} admits {:?}", nf, mv);
        }
    }

    #[test]
    fn word_times_inverse_is_identity(w in any_word()) {
        let ww = w.concat(&inverse(&w)).unwrap();
        prop_assert!(normalize(&ww).is_empty());
    }

    #[test]
    fn equal_is_symmetric_and_compatible((u, v) in word_pair()) {
        prop_assert_eq!(equal(&u, &v).unwrap(), equal(&v, &u).unwrap());
        let uv = u.concat(&v).unwrap();
        let nu = normalize(&u).into_word();
        let nv = normalize(&v).into_word();
        prop_assert!(equal(&uv, &nu.concat(&nv).unwrap()).unwrap());
    }

    #[test]
    fn normalization_stays_in_closure(picks in prop::collection::vec(any::<usize>(), 0..=5)) {
        let w = word_in(Family::Affine, 3, &picks);
        let closure = oracle_closure(&w, DEFAULT_CLOSURE_BUDGET).unwrap();
        let (nf, trace) = normalize_traced(&w);
        for step in trace.iter().filter(|s| s.len() == w.len()) {
            prop_assert!(closure.contains(step), "{} not reachable from {}", step, w);
        }
        prop_assert!(oracle_closure(nf.word(), DEFAULT_CLOSURE_BUDGET).unwrap().contains(nf.word()));
    }

    #[test]
    fn random_word_is_deterministic(n in 3u32..=8, len in 0usize..20, seed in any::<u64>()) {
        let spec = GroupSpec::affine(n).unwrap();
        let w = random_word(spec, len, seed);
        prop_assert_eq!(w.len(), len);
        prop_assert_eq!(w, random_word(spec, len, seed));
    }

    #[test]
    fn ball_edges_are_involutive(v in 0usize..1000) {
        let b = aj4_ball();
        let v = (v % b.len()) as u32;
        for (g, u) in b.neighbors(v) {
            prop_assert_eq!(b.neighbor(u, g), Some(v));
        }
        if b.depth(v) < b.radius() {
            prop_assert_eq!(b.degree(v), b.generator_count());
        }
    }

    #[test]
    fn trusted_distance_is_normal_form_length(u in 0usize..1000, v in 0usize..1000) {
        let b = aj4_ball();
        let (u, v) = ((u % b.len()) as u32, (v % b.len()) as u32);
        let d = b.distance(u, v).unwrap();
        if d.trusted {
            let quotient = inverse(b.normal_form(u).word()).concat(b.normal_form(v).word()).unwrap();
            prop_assert_eq!(d.steps as usize, normalize(&quotient).len());
            prop_assert_eq!(b.geodesic(u, v).unwrap().len(), d.steps as usize + 1);
        }
    }

    #[test]
    fn shift_maps_round_trip(n in 3u32..=16, i in 1u8..=16, p in 1u8..=16, q in 1u8..=16) {
        let spec = GroupSpec::affine(n).unwrap();
        let nn = spec.n();
        let (i, p, q) = ((i - 1) % nn + 1, (p - 1) % nn + 1, (q - 1) % nn + 1);
        prop_assume!(p != q);
        let g = spec.generator(p, q).unwrap();
        prop_assert_eq!(psi_map(spec, i, phi_map(spec, i, g).unwrap()).unwrap(), g);
    }

    #[test]
    fn bar_lands_in_range(z in -1000i64..1000, n in 3u8..=16) {
        let b = bar(z, n);
        prop_assert!((1..=n).contains(&b));
        prop_assert_eq!((i64::from(b) - z).rem_euclid(i64::from(n)), 0);
    }

    #[test]
    fn hyperbolic_distance_is_a_metric(a in disk_point(), b in disk_point(), c in disk_point()) {
        let (ab, bc, ac) = (hyperbolic_distance(a, b), hyperbolic_distance(b, c), hyperbolic_distance(a, c));
        prop_assert!(ab >= 0.0);
        prop_assert!((ab - hyperbolic_distance(b, a)).abs() <= 1e-9 * (1.0 + ab));
        prop_assert!(ac <= ab + bc + 1e-9 * (1.0 + ac));
        prop_assert!(hyperbolic_distance(a, a) < 1e-9);
    }

    #[test]
    fn isometries_preserve_distance(a in disk_point(), b in disk_point(), p in disk_point()) {
        let d = hyperbolic_distance(a, b);
        for m in [Isometry::swapping_origin_with(p), Isometry::half_turn_swapping_origin_with(p)] {
            let e = hyperbolic_distance(m.apply(a), m.apply(b));
            prop_assert!((d - e).abs() <= 1e-7 * (1.0 + d), "{} vs {}", d, e);
        }
    }

    #[test]
    fn tree_metrics_have_zero_delta(parents in prop::collection::vec(any::<usize>(), 1..12)) {
        let n = parents.len() + 1;
        let mut adj = vec![Vec::new(); n];
        for (k, &p) in parents.iter().enumerate() {
            let (child, parent) = (k + 1, p % (k + 1));
            adj[child].push(parent);
            adj[parent].push(child);
        }
        let d: Vec<Vec<u32>> = (0..n)
            .map(|s| {
                let mut dist = vec![u32::MAX; n];
                dist[s] = 0;
                let mut queue = std::collections::VecDeque::from([s]);
                while let Some(x) = queue.pop_front() {
                    for &y in &adj[x] {
                        if dist[y] == u32::MAX {
                            dist[y] = dist[x] + 1;
                            queue.push_back(y);
                        }
                    }
                }
                dist
            })
            .collect();
        prop_assert_eq!(four_point_delta_matrix(&d, 1_000_000, 0).delta, 0.0);
    }
}

#[test]
fn cycle_metric_delta_is_positive() {
    // C_8: opposite-vertex quadruple gives (8 - 4) / 2.
    let n = 8u32;
    let d: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| (i.abs_diff(j)).min(n - i.abs_diff(j))).collect()).collect();
    assert_eq!(four_point_delta_matrix(&d, 1_000_000, 0).delta, 2.0);
}
