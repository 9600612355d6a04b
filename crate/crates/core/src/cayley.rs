//! Finite balls of the Cayley graph `Cay(G, S)`.
//!
//! Vertices are keyed by normal forms and numbered in BFS order. Each frontier
//! is expanded in parallel, then merged in frontier order so vertex numbering
//! never depends on the thread schedule.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::io::{self, Write};
use std::sync::Arc;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use thiserror::Error;

use crate::graph::{canonical_cycle_by, EdgeJson, GraphJson, SpecJson, SquareGraph, VertexJson};
use crate::group::{format_letters, GroupSpec};
use crate::rewriting::{Letter, Letters, NormalForm, Presentation, Word};

pub type VertexId = u32;

const NO_VERTEX: VertexId = VertexId::MAX;

/// Default cap on the number of vertices of a ball.
pub const DEFAULT_VERTEX_BUDGET: usize = 10_000_000;

#[derive(Debug, Error)]
pub enum CayleyError {
    #[error("ball exceeds the budget of {limit} vertices")]
    BudgetExceeded { limit: usize },
    #[error("vertex {0} is not in the ball")]
    VertexNotInBall(String),
    #[error("word belongs to {found}, ball is over {expected}")]
    SpecMismatch { expected: GroupSpec, found: GroupSpec },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A graph distance, flagged untrusted when a shortest path in the group
/// might leave the ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Distance {
    pub steps: u32,
    pub trusted: bool,
}

/// A 4-cycle stored as its canonical representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Square {
    pub cycle: [VertexId; 4],
}

impl Square {
    pub fn contains(&self, v: VertexId) -> bool {
        self.cycle.contains(&v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
}

#[derive(Debug, Clone)]
pub struct CayleyBall {
    pres: Arc<Presentation>,
    radius: u32,
    keys: Vec<Letters>,
    depth: Vec<u32>,
    index: FxHashMap<Letters, VertexId>,
    adj: Vec<VertexId>,
}

pub fn ball(spec: GroupSpec, radius: u32) -> Result<CayleyBall, CayleyError> {
    ball_with_budget(spec, radius, DEFAULT_VERTEX_BUDGET)
}

pub fn ball_with_budget(spec: GroupSpec, radius: u32, max_vertices: usize) -> Result<CayleyBall, CayleyError> {
    let pres = Presentation::of(spec);
    let k = pres.len();
    let mut b = CayleyBall {
        pres: pres.clone(),
        radius,
        keys: vec![Letters::new()],
        depth: vec![0],
        index: FxHashMap::default(),
        adj: vec![NO_VERTEX; k],
    };
    b.index.insert(Letters::new(), 0);
    let mut frontier: Vec<VertexId> = vec![0];
    for d in 0..radius {
        let found: Vec<Vec<(Letter, Letters)>> = frontier
            .par_iter()
            .map(|&v| {
                let key = &b.keys[v as usize];
                (0..k as Letter)
                    .filter(|&g| b.adj[v as usize * k + g as usize] == NO_VERTEX)
                    .map(|g| {
                        let mut w = key.clone();
                        w.push(g);
                        (g, pres.normal_form(&w))
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (&v, targets) in frontier.iter().zip(found) {
            for (g, nf) in targets {
                let w = match b.index.get(&nf) {
                    Some(&w) => w,
                    None => {
                        debug_assert_eq!(nf.len(), d as usize + 1);
                        let w = b.keys.len() as VertexId;
                        if b.keys.len() >= max_vertices {
                            return Err(CayleyError::BudgetExceeded { limit: max_vertices });
                        }
                        b.index.insert(nf.clone(), w);
                        b.keys.push(nf);
                        b.depth.push(d + 1);
                        b.adj.extend(std::iter::repeat_n(NO_VERTEX, k));
                        next.push(w);
                        w
                    }
                };
                b.adj[v as usize * k + g as usize] = w;
                b.adj[w as usize * k + g as usize] = v;
            }
        }
        frontier = next;
    }
    Ok(b)
}

impl CayleyBall {
    pub fn spec(&self) -> GroupSpec {
        self.pres.spec()
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn identity(&self) -> VertexId {
        0
    }

    pub fn generator_count(&self) -> usize {
        self.pres.len()
    }

    /// Vertex of the element represented by `w`, if it lies in the ball.
    pub fn vertex(&self, w: &Word) -> Result<Option<VertexId>, CayleyError> {
        if w.spec() != self.spec() {
            return Err(CayleyError::SpecMismatch { expected: self.spec(), found: w.spec() });
        }
        Ok(self.vertex_of_letters(&w.letter_indices(&self.pres)))
    }

    pub fn vertex_of_letters(&self, letters: &[Letter]) -> Option<VertexId> {
        self.index.get(&self.pres.normal_form(letters)).copied()
    }

    /// Like [`CayleyBall::vertex`] but a missing vertex is an error.
    pub fn require(&self, w: &Word) -> Result<VertexId, CayleyError> {
        self.vertex(w)?.ok_or_else(|| CayleyError::VertexNotInBall(w.to_string()))
    }

    /// Normal-form letters of `v`.
    pub fn key(&self, v: VertexId) -> &[Letter] {
        &self.keys[v as usize]
    }

    pub fn normal_form(&self, v: VertexId) -> NormalForm {
        NormalForm::from_normal_letters(&self.pres, self.key(v))
    }

    /// Word text of `v`; the identity is written `e`.
    pub fn label(&self, v: VertexId) -> String {
        if self.keys[v as usize].is_empty() {
            "e".to_string()
        } else {
            format_letters(&self.pres.to_generators(self.key(v)))
        }
    }

    pub fn depth(&self, v: VertexId) -> u32 {
        self.depth[v as usize]
    }

    pub fn neighbor(&self, v: VertexId, g: Letter) -> Option<VertexId> {
        let w = self.adj[v as usize * self.pres.len() + g as usize];
        (w != NO_VERTEX).then_some(w)
    }

    /// `(generator, neighbour)` pairs of `v` inside the ball.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (Letter, VertexId)> + '_ {
        let k = self.pres.len();
        self.adj[v as usize * k..(v as usize + 1) * k]
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != NO_VERTEX)
            .map(|(g, &w)| (g as Letter, w))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).count()
    }

    /// Generator labelling the edge `u — v`.
    pub fn edge_label(&self, u: VertexId, v: VertexId) -> Option<Letter> {
        self.neighbors(u).find(|&(_, w)| w == v).map(|(g, _)| g)
    }

    /// Each undirected edge once, as `(lower id, higher id, generator)`.
    pub fn edges(&self) -> Vec<(VertexId, VertexId, Letter)> {
        (0..self.len() as VertexId)
            .flat_map(|v| self.neighbors(v).filter(move |&(_, w)| v < w).map(move |(g, w)| (v, w, g)))
            .collect()
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.radius as usize + 1];
        for &d in &self.depth {
            sizes[d as usize] += 1;
        }
        sizes
    }

    /// In-ball graph distance. Trusted when `depth(u) + depth(v) ≤ radius`.
    pub fn distance(&self, u: VertexId, v: VertexId) -> Result<Distance, CayleyError> {
        let path = self.geodesic(u, v)?;
        Ok(Distance { steps: (path.len() - 1) as u32, trusted: self.depth(u) + self.depth(v) <= self.radius })
    }

    /// A shortest path from `u` to `v` inside the ball, both ends included.
    /// Among shortest paths, the one taking the smallest generator first at
    /// each step.
    pub fn geodesic(&self, u: VertexId, v: VertexId) -> Result<Vec<VertexId>, CayleyError> {
        for x in [u, v] {
            if x as usize >= self.len() {
                return Err(CayleyError::VertexNotInBall(format!("#{x}")));
            }
        }
        let mut dist = vec![u32::MAX; self.len()];
        dist[v as usize] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            if x == u {
                break;
            }
            for (_, y) in self.neighbors(x) {
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = dist[x as usize] + 1;
                    queue.push_back(y);
                }
            }
        }
        let mut path = vec![u];
        let mut x = u;
        while x != v {
            x = self
                .neighbors(x)
                .map(|(_, y)| y)
                .find(|&y| dist[y as usize].wrapping_add(1) == dist[x as usize])
                .expect("balls are connected");
            path.push(x);
        }
        Ok(path)
    }

    fn key_cmp(&self, a: &VertexId, b: &VertexId) -> Ordering {
        self.keys[*a as usize].cmp(&self.keys[*b as usize])
    }

    /// All 4-cycles inside the ball, sorted by their vertex keys.
    pub fn squares(&self) -> Vec<Square> {
        let per_vertex: Vec<Vec<Square>> = (0..self.len() as VertexId)
            .into_par_iter()
            .map(|v| self.squares_with_corner(v).into_iter().filter(|s| s.cycle[0] == v).collect())
            .collect();
        let mut out: Vec<Square> = per_vertex.into_iter().flatten().collect();
        out.sort_by(|a, b| {
            a.cycle.iter().zip(&b.cycle).map(|(x, y)| self.key_cmp(x, y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
        });
        out
    }

    /// Canonical 4-cycles through `v`.
    pub fn squares_at(&self, v: VertexId) -> Vec<Square> {
        let mut out = self.squares_with_corner(v);
        out.sort_by(|a, b| {
            a.cycle.iter().map(|x| &self.keys[*x as usize]).cmp(b.cycle.iter().map(|x| &self.keys[*x as usize]))
        });
        out
    }

    fn squares_with_corner(&self, v: VertexId) -> Vec<Square> {
        let nbrs: Vec<VertexId> = self.neighbors(v).map(|(_, w)| w).collect();
        let mut seen = FxHashSet::default();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                for (_, c) in self.neighbors(a) {
                    if c != v && self.edge_label(c, b).is_some() {
                        seen.insert(canonical_cycle_by([v, a, c, b], |x, y| self.key_cmp(x, y)));
                    }
                }
            }
        }
        seen.into_iter().map(|cycle| Square { cycle }).collect()
    }

    /// The ball as a plain graph, vertex ids preserved.
    pub fn to_graph(&self) -> SquareGraph {
        let names = (0..self.len() as VertexId).map(|v| self.label(v)).collect();
        let edges: Vec<(u32, u32)> = self.edges().into_iter().map(|(a, b, _)| (a, b)).collect();
        SquareGraph::from_edges(names, self.depth.clone(), self.radius, &edges)
    }

    /// Vertex ids in export order: by depth, then by word text.
    pub fn export_order(&self) -> Vec<VertexId> {
        let labels: Vec<String> = (0..self.len() as VertexId).map(|v| self.label(v)).collect();
        let mut order: Vec<VertexId> = (0..self.len() as VertexId).collect();
        order.sort_by(|&a, &b| (self.depth(a), &labels[a as usize]).cmp(&(self.depth(b), &labels[b as usize])));
        order
    }

    pub fn to_json(&self) -> GraphJson {
        let order = self.export_order();
        let mut pos = vec![0usize; self.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v as usize] = i;
        }
        let mut edges = self.edges();
        for e in &mut edges {
            if pos[e.1 as usize] < pos[e.0 as usize] {
                std::mem::swap(&mut e.0, &mut e.1);
            }
        }
        edges.sort_by_key(|&(a, b, _)| (pos[a as usize], pos[b as usize]));
        GraphJson {
            spec: Some(SpecJson { family: self.spec().family.to_string(), n: self.spec().n() }),
            radius: self.radius,
            vertices: order.iter().map(|&v| VertexJson { word: self.label(v), depth: self.depth(v) }).collect(),
            edges: edges
                .into_iter()
                .map(|(a, b, g)| EdgeJson {
                    from: self.label(a),
                    to: self.label(b),
                    generator: self.pres.generator(g).to_string(),
                })
                .collect(),
        }
    }

    pub fn export(&self, format: ExportFormat, out: &mut impl Write) -> Result<(), CayleyError> {
        match format {
            ExportFormat::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json()).map_err(io::Error::from)?;
                writeln!(out)?;
            }
            ExportFormat::Dot => {
                let json = self.to_json();
                writeln!(out, "graph cayley {{")?;
                for v in &json.vertices {
                    writeln!(out, "  \"{}\" [depth={}];", v.word, v.depth)?;
                }
                for e in &json.edges {
                    writeln!(out, "  \"{}\" -- \"{}\" [label=\"{}\"];", e.from, e.to, e.generator)?;
                }
                writeln!(out, "}}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aj(n: u32) -> GroupSpec {
        GroupSpec::affine(n).unwrap()
    }

    fn word(spec: GroupSpec, s: &str) -> Word {
        Word::parse(spec, s).unwrap()
    }

    #[test]
    fn small_balls() {
        assert_eq!(ball(aj(3), 0).unwrap().len(), 1);
        let b1 = ball(aj(3), 1).unwrap();
        assert_eq!(b1.len(), 7);
        let b2 = ball(aj(3), 2).unwrap();
        assert_eq!(b2.sphere_sizes(), vec![1, 6, 24]);
    }

    #[test]
    fn regular_inside_and_symmetric() {
        let b = ball(aj(4), 3).unwrap();
        for v in 0..b.len() as VertexId {
            if b.depth(v) < 3 {
                assert_eq!(b.degree(v), 12);
            }
            for (g, w) in b.neighbors(v) {
                assert_eq!(b.neighbor(w, g), Some(v));
                assert_eq!(b.depth(v).abs_diff(b.depth(w)), 1);
            }
            assert_eq!(b.pres.normal_form(b.key(v)).as_slice(), b.key(v));
            assert_eq!(b.key(v).len() as u32, b.depth(v));
        }
    }

    #[test]
    fn distances() {
        let s = aj(3);
        let b = ball(s, 3).unwrap();
        let e = b.identity();
        let a = b.require(&word(s, "1,2")).unwrap();
        let c = b.require(&word(s, "1,3")).unwrap();
        assert_eq!(b.distance(e, a).unwrap(), Distance { steps: 1, trusted: true });
        assert_eq!(b.distance(a, c).unwrap().steps, 2);
        assert_eq!(b.distance(a, a).unwrap().steps, 0);
        let far = b.require(&word(s, "1,2;1,3;1,2")).unwrap();
        assert!(!b.distance(far, a).unwrap().trusted);
        assert!(matches!(b.distance(e, 10_000), Err(CayleyError::VertexNotInBall(_))));
    }

    #[test]
    fn six_squares_at_identity() {
        let b = ball(aj(3), 2).unwrap();
        assert_eq!(b.squares_at(0).len(), 6);
        assert!(ball(aj(3), 1).unwrap().squares_at(0).is_empty());
        for s in b.squares() {
            let mut c = s.cycle.to_vec();
            c.sort();
            c.dedup();
            assert_eq!(c.len(), 4);
        }
    }

    #[test]
    fn squares_agree_with_graph_enumeration() {
        let b = ball(aj(3), 3).unwrap();
        assert_eq!(b.squares().len(), b.to_graph().four_cycles().len());
    }

    #[test]
    fn budget() {
        assert!(matches!(ball_with_budget(aj(3), 3, 20), Err(CayleyError::BudgetExceeded { limit: 20 })));
    }

    #[test]
    fn export_is_deterministic() {
        let b = ball(aj(3), 1).unwrap();
        let mut x = Vec::new();
        let mut y = Vec::new();
        b.export(ExportFormat::Json, &mut x).unwrap();
        ball(aj(3), 1).unwrap().export(ExportFormat::Json, &mut y).unwrap();
        assert_eq!(x, y);
        let json: GraphJson = serde_json::from_slice(&x).unwrap();
        assert_eq!(json.vertices.len(), 7);
        assert_eq!(json.vertices[0].word, "e");
        let mut dot = Vec::new();
        b.export(ExportFormat::Dot, &mut dot).unwrap();
        let dot = String::from_utf8(dot).unwrap();
        assert_eq!(dot.lines().filter(|l| l.contains("[depth=")).count(), 7);
    }
}
