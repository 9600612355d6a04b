//! `Cay(AJ_3, S)` drawn as the `{4,6}` tiling of the Poincaré disk, plus
//! quasi-isometry and four-point hyperbolicity measurements.
//!
//! Each generator `g` acts as an involution `R_g` swapping `0` with the
//! endpoint of its edge: the reflection in the edge's perpendicular bisector
//! for the three short arcs, the half-turn about the edge midpoint for the
//! three full arcs. A vertex `v` carries the isometry `M_v` with
//! `M_{v·g} = M_v ∘ R_g` and sits at `M_v(0)`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cayley::{CayleyBall, VertexId};
use crate::graph::SquareGraph;
use crate::group::{Family, Generator, GroupSpec};

pub const CLOSURE_TOLERANCE: f64 = 1e-6;
/// Quadruple sweeps larger than this are sampled.
pub const DEFAULT_SWEEP_BUDGET: u64 = 10_000_000;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Error)]
pub enum HyperbolicError {
    #[error("the embedding needs AJ_3, got {0}")]
    NotAJ3(GroupSpec),
    #[error("vertex {vertex} placed inconsistently (off by {error:e})")]
    ClosureViolation { vertex: String, error: f64 },
    #[error("radius {radius} is too small, need at least {min}")]
    TooSmall { radius: u32, min: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
}

impl HPoint {
    pub const ORIGIN: HPoint = HPoint { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        HPoint { x, y }
    }

    fn z(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    fn of(z: Complex64) -> Self {
        HPoint { x: z.re, y: z.im }
    }
}

/// Poincaré distance.
pub fn hyperbolic_distance(p: HPoint, q: HPoint) -> f64 {
    let (z, w) = (p.z(), q.z());
    let t = (z - w).norm() / (Complex64::new(1.0, 0.0) - z.conj() * w).norm();
    2.0 * t.min(1.0).atanh()
}

/// Angle at `v` between the geodesics to `a` and `b`, in `[0, π]`.
pub fn angle_at(v: HPoint, a: HPoint, b: HPoint) -> f64 {
    let f = v.z();
    let to_origin = |z: Complex64| (z - f) / (Complex64::new(1.0, 0.0) - f.conj() * z);
    let d = (to_origin(b.z()) / to_origin(a.z())).arg();
    d.abs()
}

/// Side of the regular quadrilateral with all angles `π/3`:
/// `cosh(a/2)·sin(π/6) = cos(π/4)`.
pub fn tiling_edge_length() -> f64 {
    2.0 * ((PI / 4.0).cos() / (PI / 6.0).sin()).acosh()
}

/// `z ↦ M·z` or `z ↦ M·z̄`, `M` acting as a Möbius transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    m: [Complex64; 4],
    flip: bool,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        m: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        flip: false,
    };

    /// The reflection swapping `0` and `p`.
    pub fn swapping_origin_with(p: HPoint) -> Self {
        let p = p.z();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let rot = -(p / p.norm()).powu(2);
        let translate = Isometry { m: [one, p, p.conj(), one], flip: false };
        translate.compose(&Isometry { m: [rot, zero, zero, one], flip: true })
    }

    /// The rotation by `π` about the hyperbolic midpoint of `[0, p]`.
    pub fn half_turn_swapping_origin_with(p: HPoint) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let z = p.z();
        let d = 2.0 * z.norm().atanh();
        let m = z / z.norm() * (d / 4.0).tanh();
        let to = Isometry { m: [one, m, m.conj(), one], flip: false };
        let back = Isometry { m: [one, -m, -m.conj(), one], flip: false };
        to.compose(&Isometry { m: [-one, zero, zero, one], flip: false }).compose(&back)
    }

    pub fn apply(&self, p: HPoint) -> HPoint {
        let z = if self.flip { p.z().conj() } else { p.z() };
        let [a, b, c, d] = self.m;
        HPoint::of((a * z + b) / (c * z + d))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let o = if self.flip { other.m.map(|x| x.conj()) } else { other.m };
        let [a, b, c, d] = self.m;
        let m = [a * o[0] + b * o[2], a * o[1] + b * o[3], c * o[0] + d * o[2], c * o[1] + d * o[3]];
        let scale = m.iter().map(|x| x.norm()).fold(0.0, f64::max);
        Isometry { m: m.map(|x| x / scale), flip: self.flip != other.flip }
    }
}

/// Direction order of the six generators at the origin; consecutive
/// generators span the six squares around the identity.
pub const DIRECTION_ORDER: [(u8, u8); 6] = [(1, 2), (1, 3), (2, 3), (2, 1), (3, 1), (3, 2)];

#[derive(Debug, Clone)]
pub struct Embedding {
    pub ball: CayleyBall,
    pub points: Vec<HPoint>,
    pub edge_length: f64,
    /// Largest disagreement seen between two placements of one vertex.
    pub closure_error: f64,
}

pub fn embed_ball(b: CayleyBall) -> Result<Embedding, HyperbolicError> {
    let spec = b.spec();
    if spec != (GroupSpec { family: Family::Affine, degree: 3 }) {
        return Err(HyperbolicError::NotAJ3(spec));
    }
    let pres = b.presentation().clone();
    let a = tiling_edge_length();
    let r = (a / 2.0).tanh();
    let mut action = vec![Isometry::IDENTITY; pres.len()];
    for (k, &(p, q)) in DIRECTION_ORDER.iter().enumerate() {
        let letter = pres.letter(Generator { p, q }).expect("AJ_3 generator");
        let theta = k as f64 * PI / 3.0;
        let end = HPoint::new(r * theta.cos(), r * theta.sin());
        action[letter as usize] = if spec.interval_of(Generator { p, q }).len() == 3 {
            Isometry::half_turn_swapping_origin_with(end)
        } else {
            Isometry::swapping_origin_with(end)
        };
    }
    let mut iso: Vec<Option<Isometry>> = vec![None; b.len()];
    let mut points = vec![HPoint::ORIGIN; b.len()];
    iso[0] = Some(Isometry::IDENTITY);
    let mut closure_error: f64 = 0.0;
    // Ids are in BFS order, so every vertex is placed before it is expanded.
    for v in 0..b.len() as VertexId {
        let mv = iso[v as usize].expect("placed in BFS order");
        for (g, w) in b.neighbors(v) {
            let mw = mv.compose(&action[g as usize]);
            let p = mw.apply(HPoint::ORIGIN);
            match iso[w as usize] {
                None => {
                    iso[w as usize] = Some(mw);
                    points[w as usize] = p;
                }
                Some(_) => {
                    let err = hyperbolic_distance(p, points[w as usize]);
                    closure_error = closure_error.max(err);
                    if err > CLOSURE_TOLERANCE {
                        return Err(HyperbolicError::ClosureViolation { vertex: b.label(w), error: err });
                    }
                }
            }
        }
    }
    Ok(Embedding { ball: b, points, edge_length: a, closure_error })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometryReport {
    pub vertices: usize,
    pub edges: usize,
    pub squares: usize,
    pub interior_vertices: usize,
    pub closure_error: f64,
    pub max_edge_error: f64,
    pub max_angle_error: f64,
    pub max_angle_sum_error: f64,
    pub min_separation: f64,
}

impl GeometryReport {
    pub fn passed(&self, edge_tol: f64, angle_tol: f64, sum_tol: f64) -> bool {
        self.closure_error <= CLOSURE_TOLERANCE
            && self.max_edge_error <= edge_tol
            && self.max_angle_error <= angle_tol
            && self.max_angle_sum_error <= sum_tol
            && self.min_separation > 0.0
    }
}

impl Embedding {
    pub fn point(&self, v: VertexId) -> HPoint {
        self.points[v as usize]
    }

    /// Edge lengths, square angles, angle sums at vertices with all six
    /// squares present, and the smallest distance between two vertices
    /// relative to `edge_length / 2` (positive means injective).
    pub fn geometry(&self) -> GeometryReport {
        let b = &self.ball;
        let edges = b.edges();
        let max_edge_error = edges
            .par_iter()
            .map(|&(u, v, _)| (hyperbolic_distance(self.point(u), self.point(v)) - self.edge_length).abs())
            .reduce(|| 0.0, f64::max);
        let squares = b.squares();
        let corner = |c: &[VertexId; 4], i: usize| {
            angle_at(self.point(c[i]), self.point(c[(i + 1) % 4]), self.point(c[(i + 3) % 4]))
        };
        let max_angle_error = squares
            .par_iter()
            .map(|s| (0..4).map(|i| (corner(&s.cycle, i) - PI / 3.0).abs()).fold(0.0, f64::max))
            .reduce(|| 0.0, f64::max);
        let interior: Vec<VertexId> = (0..b.len() as VertexId).filter(|&v| b.depth(v) + 2 <= b.radius()).collect();
        let max_angle_sum_error = interior
            .par_iter()
            .map(|&v| {
                let sum: f64 = b
                    .squares_at(v)
                    .iter()
                    .map(|s| corner(&s.cycle, s.cycle.iter().position(|&x| x == v).expect("corner")))
                    .sum();
                (sum - 2.0 * PI).abs()
            })
            .reduce(|| 0.0, f64::max);
        let n = b.len();
        let min_dist = (0..n)
            .into_par_iter()
            .map(|i| {
                (i + 1..n).map(|j| hyperbolic_distance(self.points[i], self.points[j])).fold(f64::INFINITY, f64::min)
            })
            .reduce(|| f64::INFINITY, f64::min);
        GeometryReport {
            vertices: n,
            edges: edges.len(),
            squares: squares.len(),
            interior_vertices: interior.len(),
            closure_error: self.closure_error,
            max_edge_error,
            max_angle_error,
            max_angle_sum_error,
            min_separation: if n > 1 { min_dist - self.edge_length / 2.0 } else { f64::INFINITY },
        }
    }
}

/// Vertices whose pairwise in-ball distances are exact.
fn trusted_vertices(b: &CayleyBall) -> Vec<VertexId> {
    (0..b.len() as VertexId).filter(|&v| 2 * b.depth(v) <= b.radius()).collect()
}

fn distance_rows(g: &SquareGraph, sources: &[VertexId]) -> Vec<Vec<u32>> {
    sources.par_iter().map(|&v| g.bfs(v, u32::MAX - 1)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QiFit {
    pub lambda: f64,
    pub c: f64,
    pub pair_count: u64,
    pub max_violation: f64,
}

/// Graph and hyperbolic distance for every trusted pair.
fn distance_pairs(e: &Embedding) -> Result<Vec<(f64, f64)>, HyperbolicError> {
    let b = &e.ball;
    if b.radius() < 3 {
        return Err(HyperbolicError::TooSmall { radius: b.radius(), min: 3 });
    }
    let trusted = trusted_vertices(b);
    let rows = distance_rows(&b.to_graph(), &trusted);
    Ok(trusted
        .iter()
        .enumerate()
        .flat_map(|(i, &u)| {
            let row = &rows[i];
            trusted[i + 1..]
                .iter()
                .map(move |&v| (f64::from(row[v as usize]), hyperbolic_distance(e.point(u), e.point(v))))
        })
        .collect())
}

/// Smallest `λ` with `d_G/λ − c ≤ d_H ≤ λ·d_G + c` on all trusted pairs.
pub fn qi_fit_with_additive(e: &Embedding, c: f64) -> Result<QiFit, HyperbolicError> {
    let pairs = distance_pairs(e)?;
    let lambda = pairs.iter().map(|&(dg, dh)| f64::max((dh - c) / dg, dg / (dh + c))).fold(1.0, f64::max);
    let max_violation =
        pairs.iter().map(|&(dg, dh)| f64::max(dg / lambda - c - dh, dh - lambda * dg - c).max(0.0)).fold(0.0, f64::max);
    Ok(QiFit { lambda, c, pair_count: pairs.len() as u64, max_violation })
}

/// The multiplicative fit (`c = 0`).
pub fn qi_fit(e: &Embedding) -> Result<QiFit, HyperbolicError> {
    qi_fit_with_additive(e, 0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaReport {
    pub delta: f64,
    pub quadruples: u64,
    pub sampled: bool,
}

/// Four-point defect of one quadruple: half the gap between the two largest
/// of the three pair sums.
fn quad_delta(d: &[Vec<u32>], [i, j, k, l]: [usize; 4]) -> u32 {
    let mut s = [d[i][j] + d[k][l], d[i][k] + d[j][l], d[i][l] + d[j][k]];
    s.sort_unstable();
    s[2] - s[1]
}

/// Four-point δ of a finite metric given as a distance matrix. Exhaustive
/// over unordered quadruples up to `budget`, otherwise `budget` uniform
/// samples drawn with `seed`.
pub fn four_point_delta_matrix(d: &[Vec<u32>], budget: u64, seed: u64) -> DeltaReport {
    let m = d.len();
    if m < 4 {
        return DeltaReport { delta: 0.0, quadruples: 0, sampled: false };
    }
    let total = (m as u64) * (m as u64 - 1) * (m as u64 - 2) * (m as u64 - 3) / 24;
    if total <= budget {
        let twice = (0..m)
            .into_par_iter()
            .map(|i| {
                let mut best = 0;
                for j in i + 1..m {
                    for k in j + 1..m {
                        for l in k + 1..m {
                            best = best.max(quad_delta(d, [i, j, k, l]));
                        }
                    }
                }
                best
            })
            .max()
            .unwrap_or(0);
        return DeltaReport { delta: f64::from(twice) / 2.0, quadruples: total, sampled: false };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut twice = 0;
    for _ in 0..budget {
        let mut q = [0usize; 4];
        loop {
            for x in &mut q {
                *x = rng.gen_range(0..m);
            }
            if q[0] != q[1] && q[0] != q[2] && q[0] != q[3] && q[1] != q[2] && q[1] != q[3] && q[2] != q[3] {
                break;
            }
        }
        twice = twice.max(quad_delta(d, q));
    }
    DeltaReport { delta: f64::from(twice) / 2.0, quadruples: budget, sampled: true }
}

/// Four-point δ over the trusted vertices of a ball, in edge units.
pub fn four_point_delta(b: &CayleyBall, budget: u64, seed: u64) -> Result<DeltaReport, HyperbolicError> {
    if b.radius() < 3 {
        return Err(HyperbolicError::TooSmall { radius: b.radius(), min: 3 });
    }
    let trusted = trusted_vertices(b);
    let rows = distance_rows(&b.to_graph(), &trusted);
    let d: Vec<Vec<u32>> = rows.iter().map(|row| trusted.iter().map(|&v| row[v as usize]).collect()).collect();
    Ok(four_point_delta_matrix(&d, budget, seed))
}

const CANVAS: f64 = 1000.0;
const DISK_RADIUS: f64 = 480.0;

fn screen(p: HPoint) -> (f64, f64) {
    (CANVAS / 2.0 + DISK_RADIUS * p.x, CANVAS / 2.0 - DISK_RADIUS * p.y)
}

/// SVG path data for the geodesic segment from `p` to `q`.
fn geodesic_path(p: HPoint, q: HPoint) -> String {
    let (x1, y1) = screen(p);
    let (x2, y2) = screen(q);
    let (z, w) = (p.z(), q.z());
    let cross = z.re * w.im - z.im * w.re;
    if cross.abs() < 1e-12 {
        return format!("M {x1:.4} {y1:.4} L {x2:.4} {y2:.4}");
    }
    // The geodesic lies on the circle through z, w and the inverse of z.
    let zi = z / z.norm_sqr();
    let center = circumcenter(z, w, zi);
    let radius = (z - center).norm() * DISK_RADIUS;
    let (cx, cy) = screen(HPoint::of(center));
    let sweep = u8::from((x1 - cx) * (y2 - cy) - (y1 - cy) * (x2 - cx) > 0.0);
    format!("M {x1:.4} {y1:.4} A {radius:.4} {radius:.4} 0 0 {sweep} {x2:.4} {y2:.4}")
}

fn circumcenter(a: Complex64, b: Complex64, c: Complex64) -> Complex64 {
    let d = 2.0 * (a.re * (b.im - c.im) + b.re * (c.im - a.im) + c.re * (a.im - b.im));
    let (na, nb, nc) = (a.norm_sqr(), b.norm_sqr(), c.norm_sqr());
    Complex64::new(
        (na * (b.im - c.im) + nb * (c.im - a.im) + nc * (a.im - b.im)) / d,
        (na * (c.re - b.re) + nb * (a.re - c.re) + nc * (b.re - a.re)) / d,
    )
}

/// SVG of the embedding: the boundary circle, one geodesic arc per edge
/// (`class="edge"`) and, with `highlight = (u, v)`, a shortest graph path
/// (`class="graph-geodesic"`) next to the hyperbolic geodesic
/// (`class="hyperbolic-geodesic"`).
pub fn render_svg(e: &Embedding, highlight: Option<(VertexId, VertexId)>) -> String {
    let mut s = String::new();
    let _ =
        writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="1000" height="1000" viewBox="0 0 1000 1000">"#);
    let _ = writeln!(
        s,
        r#"<circle class="boundary" cx="500" cy="500" r="{DISK_RADIUS}" fill="none" stroke="black" stroke-width="2"/>"#
    );
    for (u, v, _) in e.ball.edges() {
        let d = geodesic_path(e.point(u), e.point(v));
        let _ = writeln!(s, r##"<path class="edge" d="{d}" fill="none" stroke="#555" stroke-width="1"/>"##);
    }
    if let Some((u, v)) = highlight {
        if let Ok(path) = e.ball.geodesic(u, v) {
            let d: Vec<String> = path.windows(2).map(|w| geodesic_path(e.point(w[0]), e.point(w[1]))).collect();
            let _ = writeln!(
                s,
                r##"<path class="graph-geodesic" d="{}" fill="none" stroke="#d62728" stroke-width="3"/>"##,
                d.join(" ")
            );
        }
        let d = geodesic_path(e.point(u), e.point(v));
        let _ = writeln!(
            s,
            r##"<path class="hyperbolic-geodesic" d="{d}" fill="none" stroke="#1f77b4" stroke-width="3" stroke-dasharray="8 4"/>"##
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::ball;

    fn aj3() -> GroupSpec {
        GroupSpec::affine(3).unwrap()
    }

    /// Side of the disk-centred regular quadrilateral with angle π/3, found
    /// by bisecting on its circumradius and measuring.
    fn measured_side() -> f64 {
        let corner_angle = |rho: f64| angle_at(HPoint::new(rho, 0.0), HPoint::new(0.0, rho), HPoint::new(0.0, -rho));
        let (mut lo, mut hi) = (1e-6, 1.0 - 1e-9);
        for _ in 0..200 {
            let mid = (lo + hi) / 2.0;
            if corner_angle(mid) > PI / 3.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let rho = (lo + hi) / 2.0;
        hyperbolic_distance(HPoint::new(rho, 0.0), HPoint::new(0.0, rho))
    }

    #[test]
    fn edge_length_matches_constructed_square() {
        let a = tiling_edge_length();
        assert!(a > 0.0);
        assert!((a - measured_side()).abs() < 1e-9, "{a} vs {}", measured_side());
        assert!(((a / 2.0).cosh() * (PI / 6.0).sin() - (PI / 4.0).cos()).abs() < 1e-12);
    }

    #[test]
    fn distance_axioms() {
        let p = HPoint::new(0.3, -0.2);
        let q = HPoint::new(-0.5, 0.4);
        let r = HPoint::new(0.1, 0.7);
        assert_eq!(hyperbolic_distance(p, p), 0.0);
        assert!((hyperbolic_distance(p, q) - hyperbolic_distance(q, p)).abs() < 1e-15);
        assert!(hyperbolic_distance(p, r) <= hyperbolic_distance(p, q) + hyperbolic_distance(q, r));
        let x = 0.5f64;
        assert!((hyperbolic_distance(HPoint::ORIGIN, HPoint::new(x, 0.0)) - 2.0 * x.atanh()).abs() < 1e-15);
    }

    #[test]
    fn reflection_is_an_involution_swapping_origin() {
        let p = HPoint::new(0.4, 0.3);
        let r = Isometry::swapping_origin_with(p);
        let q = r.apply(HPoint::ORIGIN);
        assert!(hyperbolic_distance(p, q) < 1e-12);
        let rr = r.compose(&r);
        let x = HPoint::new(-0.2, 0.55);
        assert!(hyperbolic_distance(rr.apply(x), x) < 1e-12);
        let (u, v) = (HPoint::new(0.1, 0.2), HPoint::new(-0.6, 0.1));
        assert!((hyperbolic_distance(r.apply(u), r.apply(v)) - hyperbolic_distance(u, v)).abs() < 1e-12);
    }

    #[test]
    fn half_turn_swaps_and_squares_to_identity() {
        let p = HPoint::new(-0.3, 0.45);
        let h = Isometry::half_turn_swapping_origin_with(p);
        assert!(hyperbolic_distance(h.apply(HPoint::ORIGIN), p) < 1e-12);
        assert!(hyperbolic_distance(h.apply(p), HPoint::ORIGIN) < 1e-12);
        let x = HPoint::new(0.2, 0.1);
        assert!(hyperbolic_distance(h.compose(&h).apply(x), x) < 1e-12);
    }

    #[test]
    fn radius_one_and_two() {
        let e = embed_ball(ball(aj3(), 1).unwrap()).unwrap();
        assert_eq!(e.points.len(), 7);
        let g = e.geometry();
        assert_eq!(g.edges, 6);
        assert!(g.max_edge_error < 1e-9);
        let e2 = embed_ball(ball(aj3(), 2).unwrap()).unwrap();
        assert_eq!(e2.ball.squares_at(0).len(), 6);
        let g2 = e2.geometry();
        assert!(g2.passed(1e-9, 1e-9, 1e-8), "{g2:?}");
        assert_eq!(g2.interior_vertices, 1);
        let again = embed_ball(ball(aj3(), 2).unwrap()).unwrap();
        assert_eq!(again.points, e2.points);
    }

    #[test]
    fn rejects_other_groups() {
        let b = ball(GroupSpec::affine(4).unwrap(), 1).unwrap();
        assert!(matches!(embed_ball(b), Err(HyperbolicError::NotAJ3(_))));
    }

    #[test]
    fn qi_fit_basics() {
        let e = embed_ball(ball(aj3(), 3).unwrap()).unwrap();
        let fit = qi_fit(&e).unwrap();
        assert!(fit.lambda >= e.edge_length - 1e-12);
        assert_eq!(fit.max_violation, 0.0);
        let mut prev = fit.lambda;
        for c in [0.5, 1.0, 2.0, 4.0] {
            let next = qi_fit_with_additive(&e, c).unwrap().lambda;
            assert!(next <= prev + 1e-12);
            prev = next;
        }
        let small = embed_ball(ball(aj3(), 2).unwrap()).unwrap();
        assert!(matches!(qi_fit(&small), Err(HyperbolicError::TooSmall { .. })));
    }

    #[test]
    fn delta_of_a_tree_is_zero() {
        // Star with five leaves.
        let mut d = vec![vec![2u32; 6]; 6];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = 0;
            if i > 0 {
                row[0] = 1;
            }
        }
        d[0][1..].fill(1);
        assert_eq!(four_point_delta_matrix(&d, 1000, 1).delta, 0.0);
        // A 4-cycle has δ = 1.
        let c4 = vec![vec![0, 1, 2, 1], vec![1, 0, 1, 2], vec![2, 1, 0, 1], vec![1, 2, 1, 0]];
        assert_eq!(four_point_delta_matrix(&c4, 1000, 1).delta, 1.0);
    }

    #[test]
    fn sampling_is_seeded() {
        let b = ball(aj3(), 4).unwrap();
        let x = four_point_delta(&b, 500, 9).unwrap();
        let y = four_point_delta(&b, 500, 9).unwrap();
        assert!(x.sampled);
        assert_eq!(x, y);
    }

    #[test]
    fn svg_counts_and_determinism() {
        let e = embed_ball(ball(aj3(), 2).unwrap()).unwrap();
        let svg = render_svg(&e, None);
        assert_eq!(svg.matches(r#"class="edge""#).count(), e.ball.edges().len());
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg, render_svg(&e, None));
        let far = (0..e.ball.len() as u32).rev().find(|&v| e.ball.depth(v) == 2).unwrap();
        let hl = render_svg(&e, Some((0, far)));
        assert!(hl.contains("graph-geodesic") && hl.contains("hyperbolic-geodesic"));
    }
}
