//! Finite checks of the cube-complex conditions on Cayley balls, the median
//! property, and the interval bookkeeping behind the reduction from `AJ_n` to
//! `J_n`.
//!
//! Graph-level checks take a [`SquareGraph`] so synthetic graphs go through
//! the same code as Cayley balls.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cayley::{CayleyBall, VertexId};
use crate::graph::{SquareGraph, UNREACHABLE};
use crate::group::{wrap, CyclicInterval, Family, Generator, GroupError, GroupSpec, RelationKind};
use crate::rewriting::Letter;

/// At most this many failure witnesses are kept per report.
pub const MAX_WITNESSES: usize = 100;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub items: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub spec: Option<GroupSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
    pub items_checked: u64,
    pub failure_count: u64,
    pub failures: Vec<Witness>,
    pub passed: bool,
    /// Nothing was checked; `passed` is then only vacuously true.
    pub vacuous: bool,
}

#[derive(Default)]
struct Tally {
    items: u64,
    failures: u64,
    witnesses: Vec<Witness>,
}

impl Tally {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.items += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(witness());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.items += other.items;
        self.failures += other.failures;
        let room = MAX_WITNESSES - self.witnesses.len();
        self.witnesses.extend(other.witnesses.into_iter().take(room));
        self
    }

    fn merge_all(parts: Vec<Tally>) -> Tally {
        parts.into_iter().fold(Tally::default(), Tally::merge)
    }

    fn report(
        self,
        name: &str,
        spec: Option<GroupSpec>,
        radius: Option<u32>,
        depth: Option<u32>,
    ) -> VerificationReport {
        VerificationReport {
            check_name: name.to_string(),
            spec,
            radius,
            depth,
            items_checked: self.items,
            failure_count: self.failures,
            passed: self.failures == 0,
            vacuous: self.items == 0,
            failures: self.witnesses,
        }
    }
}

fn names(g: &SquareGraph, vs: &[u32]) -> Vec<String> {
    vs.iter().map(|&v| g.names[v as usize].clone()).collect()
}

/// Every relator 2-cell `v, vx, vxt, vt'` (from `x·t = t'·x'`) at vertices of
/// depth ≤ radius − 2 closes up and has four distinct corners.
pub fn check_squares_embedded(b: &CayleyBall) -> VerificationReport {
    let pres = b.presentation();
    let k = pres.len() as Letter;
    let r = b.radius();
    let parts: Vec<Tally> = (0..b.len() as VertexId)
        .into_par_iter()
        .filter(|&v| b.depth(v) + 2 <= r)
        .map(|v| {
            let mut t = Tally::default();
            for x in 0..k {
                for y in 0..k {
                    let Some((y2, x2)) = pres.swap(x, y) else { continue };
                    let vx = b.neighbor(v, x).expect("interior vertex");
                    let vxy = b.neighbor(vx, y).expect("interior vertex");
                    let vy2 = b.neighbor(v, y2).expect("interior vertex");
                    let closes = b.neighbor(vy2, x2) == Some(vxy);
                    let cycle = [v, vx, vxy, vy2];
                    let mut sorted = cycle;
                    sorted.sort_unstable();
                    let distinct = sorted.windows(2).all(|w| w[0] != w[1]);
                    t.check(closes && distinct, || Witness {
                        items: cycle.iter().map(|&u| b.label(u)).collect(),
                        detail: format!(
                            "relation {}·{} = {}·{}: {}",
                            pres.generator(x),
                            pres.generator(y),
                            pres.generator(y2),
                            pres.generator(x2),
                            if closes { "degenerate square" } else { "does not close" }
                        ),
                    });
                }
            }
            t
        })
        .collect();
    Tally::merge_all(parts).report("squares", Some(b.spec()), Some(r), None)
}

/// At each vertex, a pair of incident edges lies on at most one square.
pub fn check_no_shared_consecutive_edges(g: &SquareGraph) -> VerificationReport {
    let parts: Vec<Tally> = (0..g.len() as u32)
        .into_par_iter()
        .map(|v| {
            let mut t = Tally::default();
            let nbrs = &g.adj[v as usize];
            for (i, &a) in nbrs.iter().enumerate() {
                for &c in &nbrs[i + 1..] {
                    let far = g.common_neighbors(a, c, v);
                    if far.is_empty() {
                        continue;
                    }
                    t.check(far.len() == 1, || Witness {
                        items: far
                            .iter()
                            .map(|&x| {
                                format!(
                                    "{} {} {} {}",
                                    g.names[v as usize], g.names[a as usize], g.names[x as usize], g.names[c as usize]
                                )
                            })
                            .collect(),
                        detail: format!("{} squares share the edges at {}", far.len(), g.names[v as usize]),
                    });
                }
            }
            t
        })
        .collect();
    Tally::merge_all(parts).report("edges", None, Some(g.radius), None)
}

pub fn check_no_shared_consecutive_edges_ball(b: &CayleyBall) -> VerificationReport {
    let mut r = check_no_shared_consecutive_edges(&b.to_graph());
    r.spec = Some(b.spec());
    r
}

/// Closes the cycle of three squares at `v` through neighbours `a, b, c`.
/// Returns the eighth vertex, or a reason.
pub fn close_cube(g: &SquareGraph, v: u32, a: u32, b: u32, c: u32) -> Result<u32, String> {
    let corner = |x: u32, y: u32| -> Result<u32, String> {
        match g.common_neighbors(x, y, v).as_slice() {
            [z] => Ok(*z),
            [] => Err(format!("no square on {} and {}", g.names[x as usize], g.names[y as usize])),
            _ => Err(format!("several squares on {} and {}", g.names[x as usize], g.names[y as usize])),
        }
    };
    let (ab, bc, ca) = (corner(a, b)?, corner(b, c)?, corner(c, a)?);
    let mut eighth: Vec<u32> =
        g.common_neighbors(ab, bc, u32::MAX).into_iter().filter(|&x| x != b && g.is_adjacent(x, ca)).collect();
    eighth.retain(|&x| x != a && x != c);
    let x = match eighth.as_slice() {
        [x] => *x,
        [] => return Err("no eighth vertex".to_string()),
        _ => return Err("several eighth vertices".to_string()),
    };
    let mut all = [v, a, b, c, ab, bc, ca, x];
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err("cube vertices are not distinct".to_string());
    }
    Ok(x)
}

/// Cube condition on an arbitrary graph: at every vertex far enough from the
/// boundary, every triple of neighbours pairwise spanning squares closes up
/// into the 2-skeleton of a 3-cube.
pub fn check_cube_spans(g: &SquareGraph) -> VerificationReport {
    let parts: Vec<Tally> = (0..g.len() as u32)
        .into_par_iter()
        .filter(|&v| g.depth[v as usize] + 3 <= g.radius)
        .map(|v| {
            let mut t = Tally::default();
            let nbrs = &g.adj[v as usize];
            let spans = |x: u32, y: u32| !g.common_neighbors(x, y, v).is_empty();
            for (i, &a) in nbrs.iter().enumerate() {
                for (j, &b) in nbrs.iter().enumerate().skip(i + 1) {
                    if !spans(a, b) {
                        continue;
                    }
                    for &c in &nbrs[j + 1..] {
                        if !spans(a, c) || !spans(b, c) {
                            continue;
                        }
                        let res = close_cube(g, v, a, b, c);
                        t.check(res.is_ok(), || Witness { items: names(g, &[v, a, b, c]), detail: res.unwrap_err() });
                    }
                }
            }
            t
        })
        .collect();
    Tally::merge_all(parts).report("cubes", None, Some(g.radius), None)
}

/// Letters of a pairwise related triple sorted inner first. Multiplying a
/// vertex by them in this order reaches the eighth corner of the cube.
pub fn cube_word(b: &CayleyBall, mut letters: [Letter; 3]) -> [Letter; 3] {
    let pres = b.presentation();
    let spec = pres.spec();
    letters.sort_by_key(|&x| (spec.interval_of(pres.generator(x)).len(), x));
    letters
}

/// Cube condition on a Cayley ball. The eighth vertex found by graph search
/// must also equal the algebraic prediction `v · inner · middle · outer`.
pub fn check_cube_spans_ball(b: &CayleyBall) -> VerificationReport {
    let g = b.to_graph();
    let pres = b.presentation();
    let k = pres.len() as Letter;
    let rel = |x: Letter, y: Letter| pres.relation(x, y).is_related();
    let mut triples = Vec::new();
    for x in 0..k {
        for y in x + 1..k {
            for z in y + 1..k {
                if rel(x, y) && rel(y, z) && rel(x, z) {
                    triples.push([x, y, z]);
                }
            }
        }
    }
    let parts: Vec<Tally> = (0..b.len() as VertexId)
        .into_par_iter()
        .filter(|&v| b.depth(v) + 3 <= b.radius())
        .map(|v| {
            let mut t = Tally::default();
            for &tr in &triples {
                let [a, bb, c] = tr.map(|x| b.neighbor(v, x).expect("interior vertex"));
                let found = close_cube(&g, v, a, bb, c);
                let mut key = b.key(v).to_vec();
                key.extend(cube_word(b, tr));
                let predicted = b.vertex_of_letters(&key);
                let ok = matches!((&found, predicted), (Ok(x), Some(y)) if *x == y);
                t.check(ok, || Witness {
                    items: std::iter::once(b.label(v))
                        .chain(tr.iter().map(|&x| pres.generator(x).to_string()))
                        .collect(),
                    detail: match (found, predicted) {
                        (Err(e), _) => e,
                        (Ok(x), p) => format!(
                            "graph search gives {}, product gives {}",
                            b.label(x),
                            p.map(|y| b.label(y)).unwrap_or_else(|| "a vertex outside the ball".into())
                        ),
                    },
                });
            }
            t
        })
        .collect();
    Tally::merge_all(parts).report("cubes", Some(b.spec()), Some(b.radius()), None)
}

/// All medians of `x, y, z` among `candidates`, given BFS rows of the three.
fn medians_from(dx: &[u32], dy: &[u32], dz: &[u32], y: u32, z: u32, candidates: &[u32]) -> Vec<u32> {
    let (dxy, dyz, dxz) = (dx[y as usize], dy[z as usize], dx[z as usize]);
    candidates
        .iter()
        .copied()
        .filter(|&m| {
            let (a, b, c) = (dx[m as usize], dy[m as usize], dz[m as usize]);
            a != UNREACHABLE && b != UNREACHABLE && c != UNREACHABLE && a + b == dxy && b + c == dyz && a + c == dxz
        })
        .collect()
}

/// Medians of a triple, using in-graph distances.
pub fn medians(g: &SquareGraph, x: u32, y: u32, z: u32) -> Vec<u32> {
    let (dx, dy, dz) = (g.bfs(x, u32::MAX - 1), g.bfs(y, u32::MAX - 1), g.bfs(z, u32::MAX - 1));
    let all: Vec<u32> = (0..g.len() as u32).collect();
    medians_from(&dx, &dy, &dz, y, z, &all)
}

/// Every triple of vertices of depth ≤ `test_depth` has exactly one median.
/// Needs `3 · test_depth ≤ radius` so every distance used is exact.
pub fn check_median(g: &SquareGraph, test_depth: u32) -> Result<VerificationReport, VerifyError> {
    if 3 * test_depth > g.radius {
        return Err(VerifyError::PreconditionViolated(format!(
            "3·depth = {} exceeds radius {}",
            3 * test_depth,
            g.radius
        )));
    }
    let core: Vec<u32> = (0..g.len() as u32).filter(|&v| g.depth[v as usize] <= test_depth).collect();
    let rows: Vec<Vec<u32>> = core.par_iter().map(|&v| g.bfs(v, 2 * test_depth)).collect();
    let parts: Vec<Tally> = (0..core.len())
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            let dx = &rows[i];
            for j in i..core.len() {
                let dy = &rows[j];
                let (x, y) = (core[i], core[j]);
                let dxy = dx[y as usize];
                let near: Vec<u32> = (0..g.len() as u32).filter(|&m| dx[m as usize] <= dxy).collect();
                for l in j..core.len() {
                    let z = core[l];
                    let found = medians_from(dx, dy, &rows[l], y, z, &near);
                    t.check(found.len() == 1, || Witness {
                        items: names(g, &[x, y, z]),
                        detail: format!("{} medians", found.len()),
                    });
                }
            }
            t
        })
        .collect();
    Ok(Tally::merge_all(parts).report("median", None, Some(g.radius), Some(test_depth)))
}

pub fn check_median_ball(b: &CayleyBall, test_depth: u32) -> Result<VerificationReport, VerifyError> {
    let mut r = check_median(&b.to_graph(), test_depth)?;
    r.spec = Some(b.spec());
    Ok(r)
}

/// The bar map `z ↦ z̄ ∈ [1, n]`.
pub fn bar(z: i64, n: u8) -> u8 {
    wrap(z, n)
}

fn check_shift_args(spec: GroupSpec, i: u8) -> Result<(), GroupError> {
    if i == 0 || i > spec.n() {
        return Err(GroupError::IndexOutOfRange { index: i64::from(i), n: spec.n() });
    }
    Ok(())
}

/// `σ_{u,v} ↦ s_{bar(u−i+1), bar(v−i+1)}`.
pub fn phi_map(spec: GroupSpec, i: u8, g: Generator) -> Result<Generator, GroupError> {
    if spec.family != Family::Affine {
        return Err(GroupError::WrongFamily { expected: Family::Affine });
    }
    check_shift_args(spec, i)?;
    spec.generator(g.p, g.q)?;
    let n = spec.n();
    let shift = |x: u8| bar(i64::from(x) - i64::from(i) + 1, n);
    Ok(Generator { p: shift(g.p), q: shift(g.q) })
}

/// `s_{u',v'} ↦ σ_{bar(u'+i−1), bar(v'+i−1)}`.
pub fn psi_map(spec: GroupSpec, i: u8, g: Generator) -> Result<Generator, GroupError> {
    check_shift_args(spec, i)?;
    let n = spec.n();
    if g.p == 0 || g.q == 0 || g.p > n || g.q > n || g.p == g.q {
        return Err(GroupError::InvalidPair { p: g.p, q: g.q, family: Family::Cactus });
    }
    let shift = |x: u8| bar(i64::from(x) + i64::from(i) - 1, n);
    Ok(Generator { p: shift(g.p), q: shift(g.q) })
}

/// The four configurations of three intervals `A`, `B`, `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Configuration {
    /// `A ⊃ B ⊃ C`.
    Chain,
    /// `A ⊃ B`, `A` and `C` disjoint.
    NestedAndDisjoint,
    /// `A ⊃ B`, `A ⊃ C`, `B` and `C` disjoint.
    CommonOuter,
    /// Pairwise disjoint.
    Disjoint,
}

impl Configuration {
    pub const ALL: [Configuration; 4] =
        [Configuration::Chain, Configuration::NestedAndDisjoint, Configuration::CommonOuter, Configuration::Disjoint];

    fn holds<I>(
        self,
        a: &I,
        b: &I,
        c: &I,
        contains: impl Fn(&I, &I) -> bool,
        disjoint: impl Fn(&I, &I) -> bool,
    ) -> bool {
        match self {
            Configuration::Chain => contains(a, b) && contains(b, c),
            Configuration::NestedAndDisjoint => contains(a, b) && disjoint(a, c),
            Configuration::CommonOuter => contains(a, b) && contains(a, c) && disjoint(b, c),
            Configuration::Disjoint => disjoint(a, b) && disjoint(b, c) && disjoint(a, c),
        }
    }
}

/// Integer interval `[u, v]` with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Line(u8, u8);

impl Line {
    fn of(g: Generator) -> Option<Line> {
        (g.p < g.q).then_some(Line(g.p, g.q))
    }

    fn contains(&self, o: &Line) -> bool {
        self != o && self.0 <= o.0 && o.1 <= self.1
    }

    fn is_disjoint(&self, o: &Line) -> bool {
        self.1 < o.0 || o.1 < self.0
    }
}

fn arc_contains(a: &CyclicInterval, b: &CyclicInterval) -> bool {
    a != b && a.contains(b)
}

fn line_config(c: Configuration, a: &Line, b: &Line, d: &Line) -> bool {
    c.holds(a, b, d, Line::contains, Line::is_disjoint)
}

fn arc_config(c: Configuration, a: &CyclicInterval, b: &CyclicInterval, d: &CyclicInterval) -> bool {
    c.holds(a, b, d, arc_contains, CyclicInterval::is_disjoint)
}

fn claim_spec(n: u8) -> Result<GroupSpec, VerifyError> {
    if n < 3 {
        return Err(VerifyError::PreconditionViolated(format!("n = {n} < 3")));
    }
    Ok(GroupSpec::affine(u32::from(n))?)
}

fn triple_label(gs: &[Generator; 3]) -> Vec<String> {
    gs.iter().map(|g| g.to_string()).collect()
}

/// Shifting by the start of the first interval turns every cyclic
/// configuration of three affine generators into the same configuration of
/// integer intervals.
pub fn verify_claim_phi(n: u8) -> Result<VerificationReport, VerifyError> {
    let spec = claim_spec(n)?;
    let gens = spec.generators();
    let parts: Vec<Tally> = gens
        .par_iter()
        .map(|&a| {
            let mut t = Tally::default();
            let i = a.p;
            let ia = spec.interval_of(a);
            for &b in &gens {
                for &c in &gens {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    let (ib, ic) = (spec.interval_of(b), spec.interval_of(c));
                    for conf in Configuration::ALL {
                        if !arc_config(conf, &ia, &ib, &ic) {
                            continue;
                        }
                        let img = [a, b, c].map(|g| phi_map(spec, i, g).expect("valid generator"));
                        let ok = img[0].p == 1
                            && match img.map(Line::of) {
                                [Some(x), Some(y), Some(z)] => line_config(conf, &x, &y, &z),
                                _ => false,
                            };
                        t.check(ok, || Witness {
                            items: triple_label(&[a, b, c]),
                            detail: format!("{conf:?}: image {}", triple_label(&img).join(" ")),
                        });
                    }
                }
            }
            t
        })
        .collect();
    let mut tally = Tally::merge_all(parts);
    // l < j < i < k: the shifted chain [1, j'] ⊃ [k', l'] with k' < l'.
    for (i, j, k, l) in ordered_quads(n, |i, j, k, l| l < j && j < i && i < k) {
        let (n64, i64_) = (i64::from(n), i64::from(i));
        let jp = bar(i64::from(j) - i64_ + 1, n);
        let kp = bar(i64::from(k) - i64_ + 1, n);
        let lp = bar(i64::from(l) - i64_ + 1, n);
        let ok = i64::from(jp) == i64::from(j) - i64_ + n64 + 1
            && i64::from(kp) == i64::from(k) - i64_ + 1
            && i64::from(lp) == i64::from(l) - i64_ + n64 + 1
            && kp < lp
            && lp < jp;
        tally.check(ok, || Witness { items: vec![format!("i={i} j={j} k={k} l={l}")], detail: "case l<j<i<k".into() });
    }
    Ok(tally.report("claim-phi", Some(spec), None, None))
}

fn ordered_quads(n: u8, keep: impl Fn(u8, u8, u8, u8) -> bool) -> Vec<(u8, u8, u8, u8)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    if keep(i, j, k, l) {
                        out.push((i, j, k, l));
                    }
                }
            }
        }
    }
    out
}

/// Shifting integer-interval configurations back by any `i` gives the same
/// configuration of cyclic arcs. Also replays the worked case `k<l<j<i`.
pub fn verify_claim_psi(n: u8) -> Result<VerificationReport, VerifyError> {
    let spec = claim_spec(n)?;
    let lines: Vec<Generator> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| Generator { p: u, q: v })).collect();
    let parts: Vec<Tally> = (1..=n)
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            for &a in &lines {
                for &b in &lines {
                    for &c in &lines {
                        let [la, lb, lc] = [a, b, c].map(|g| Line::of(g).expect("u < v"));
                        for conf in Configuration::ALL {
                            if !line_config(conf, &la, &lb, &lc) {
                                continue;
                            }
                            let img = [a, b, c].map(|g| psi_map(spec, i, g).expect("valid pair"));
                            let [ia, ib, ic] = img.map(|g| spec.interval_of(g));
                            t.check(arc_config(conf, &ia, &ib, &ic), || Witness {
                                items: triple_label(&[a, b, c]),
                                detail: format!("{conf:?}, i={i}: image {}", triple_label(&img).join(" ")),
                            });
                        }
                    }
                }
            }
            t
        })
        .collect();
    let mut tally = Tally::merge_all(parts);
    for (i, j, k, l) in ordered_quads(n, |i, j, k, l| k < l && l < j && j < i) {
        let (n64, i64_) = (i64::from(n), i64::from(i));
        let primes = [i, j, k, l].map(|x| i64::from(x) - i64_ + n64 + 1);
        let expected_primes = [1, primes[1], primes[2], primes[3]];
        let actual_primes = [i, j, k, l].map(|x| i64::from(bar(i64::from(x) - i64_ + 1, n)));
        let back = actual_primes.map(|p| bar(p + i64_ - 1, n));
        let ok = actual_primes == expected_primes && back == [i, j, k, l];
        tally.check(ok, || Witness { items: vec![format!("i={i} j={j} k={k} l={l}")], detail: "case k<l<j<i".into() });
    }
    Ok(tally.report("claim-psi", Some(spec), None, None))
}

/// At the identity, the far corner of each square has the expected normal
/// form: outer generator first for nested pairs, higher rank first for
/// disjoint pairs.
pub fn check_square_normal_forms(b: &CayleyBall) -> Result<VerificationReport, VerifyError> {
    if b.radius() < 2 {
        return Err(VerifyError::PreconditionViolated("radius < 2".into()));
    }
    let pres = b.presentation();
    let e = b.identity();
    let mut t = Tally::default();
    for sq in b.squares_at(e) {
        let pos = sq.cycle.iter().position(|&v| v == e).expect("square through e");
        let x = b.edge_label(e, sq.cycle[(pos + 1) % 4]).expect("edge");
        let y = b.edge_label(e, sq.cycle[(pos + 3) % 4]).expect("edge");
        let far = sq.cycle[(pos + 2) % 4];
        let expected: Vec<Letter> = match pres.relation(x, y) {
            RelationKind::Disjoint => vec![x.min(y), x.max(y)],
            RelationKind::FirstContainsSecond => vec![x, pres.conj(x, y)],
            RelationKind::SecondContainsFirst => vec![y, pres.conj(y, x)],
            RelationKind::None => vec![],
        };
        t.check(b.key(far) == expected.as_slice(), || Witness {
            items: vec![pres.generator(x).to_string(), pres.generator(y).to_string()],
            detail: format!("far corner {}", b.label(far)),
        });
    }
    Ok(t.report("square-normal-forms", Some(b.spec()), Some(b.radius()), None))
}
