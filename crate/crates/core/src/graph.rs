//! A plain undirected graph with BFS depths, the common input of the square
//! and median checks. Cayley balls convert into it, and synthetic graphs can
//! be loaded from the same JSON schema the ball exporter writes.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("unknown vertex {0:?} in edge list")]
    UnknownVertex(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareGraph {
    pub names: Vec<String>,
    pub depth: Vec<u32>,
    pub radius: u32,
    pub adj: Vec<Vec<u32>>,
}

/// Serialized form shared with [`crate::cayley::CayleyBall::to_json`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<SpecJson>,
    pub radius: u32,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecJson {
    pub family: String,
    pub n: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub word: String,
    pub depth: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: String,
    pub to: String,
    #[serde(default)]
    pub generator: String,
}

impl SquareGraph {
    pub fn from_edges(names: Vec<String>, depth: Vec<u32>, radius: u32, edges: &[(u32, u32)]) -> Self {
        let mut adj = vec![Vec::new(); names.len()];
        for &(a, b) in edges {
            if a != b && !adj[a as usize].contains(&b) {
                adj[a as usize].push(b);
                adj[b as usize].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        SquareGraph { names, depth, radius, adj }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self, GraphError> {
        let mut ids = HashMap::new();
        for (i, v) in json.vertices.iter().enumerate() {
            if ids.insert(v.word.clone(), i as u32).is_some() {
                return Err(GraphError::DuplicateVertex(v.word.clone()));
            }
        }
        let id = |name: &String| ids.get(name).copied().ok_or_else(|| GraphError::UnknownVertex(name.clone()));
        let edges =
            json.edges.iter().map(|e| Ok((id(&e.from)?, id(&e.to)?))).collect::<Result<Vec<_>, GraphError>>()?;
        let names = json.vertices.iter().map(|v| v.word.clone()).collect();
        let depth = json.vertices.iter().map(|v| v.depth).collect();
        Ok(SquareGraph::from_edges(names, depth, json.radius, &edges))
    }

    pub fn parse_json(text: &str) -> Result<Self, GraphError> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn is_adjacent(&self, a: u32, b: u32) -> bool {
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    /// Common neighbours of `a` and `b`, excluding `except`.
    pub fn common_neighbors(&self, a: u32, b: u32, except: u32) -> Vec<u32> {
        let (la, lb) = (&self.adj[a as usize], &self.adj[b as usize]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < la.len() && j < lb.len() {
            match la[i].cmp(&lb[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if la[i] != except {
                        out.push(la[i]);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Every 4-cycle `(v0, v1, v2, v3)`, each listed once: `v0` is the
    /// smallest id and `v1 < v3`.
    pub fn four_cycles(&self) -> Vec<[u32; 4]> {
        let mut out = BTreeSet::new();
        for v in 0..self.len() as u32 {
            let nbrs = &self.adj[v as usize];
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    for c in self.common_neighbors(a, b, v) {
                        out.insert(canonical_cycle([v, a, c, b]));
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// BFS distances from `source`, cut off beyond `max_dist`.
    pub fn bfs(&self, source: u32, max_dist: u32) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.len()];
        dist[source as usize] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize];
            if d == max_dist {
                continue;
            }
            for &w in &self.adj[v as usize] {
                if dist[w as usize] == UNREACHABLE {
                    dist[w as usize] = d + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Rotates/reflects a 4-cycle so the smallest vertex comes first and its
/// smaller neighbour second.
pub fn canonical_cycle(c: [u32; 4]) -> [u32; 4] {
    canonical_cycle_by(c, |a, b| a.cmp(b))
}

pub fn canonical_cycle_by(c: [u32; 4], mut cmp: impl FnMut(&u32, &u32) -> std::cmp::Ordering) -> [u32; 4] {
    let mut start = 0;
    for i in 1..4 {
        if cmp(&c[i], &c[start]).is_lt() {
            start = i;
        }
    }
    let fwd = [c[start], c[(start + 1) % 4], c[(start + 2) % 4], c[(start + 3) % 4]];
    if cmp(&fwd[3], &fwd[1]).is_lt() {
        [fwd[0], fwd[3], fwd[2], fwd[1]]
    } else {
        fwd
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(u32, u32)]) -> SquareGraph {
        let names = (0..n).map(|i| i.to_string()).collect();
        SquareGraph::from_edges(names, vec![0; n], 10, edges)
    }

    #[test]
    fn four_cycles_of_a_cube() {
        let mut edges = Vec::new();
        for v in 0..8u32 {
            for bit in 0..3 {
                let w = v ^ (1 << bit);
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        assert_eq!(graph(8, &edges).four_cycles().len(), 6);
    }

    #[test]
    fn k23_has_three_four_cycles() {
        let g = graph(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert_eq!(g.four_cycles(), vec![[0, 2, 1, 3], [0, 2, 1, 4], [0, 3, 1, 4]]);
    }

    #[test]
    fn canonical_rotation() {
        assert_eq!(canonical_cycle([5, 3, 9, 1]), [1, 5, 3, 9]);
        assert_eq!(canonical_cycle([1, 9, 4, 3]), [1, 3, 4, 9]);
    }

    #[test]
    fn bfs_cutoff() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(g.bfs(0, 2), vec![0, 1, 2, UNREACHABLE]);
    }

    #[test]
    fn json_round_trip_and_errors() {
        let json = GraphJson {
            spec: None,
            radius: 1,
            vertices: vec![VertexJson { word: "a".into(), depth: 0 }, VertexJson { word: "b".into(), depth: 1 }],
            edges: vec![EdgeJson { from: "a".into(), to: "b".into(), generator: String::new() }],
        };
        let g = SquareGraph::from_json(&json).unwrap();
        assert!(g.is_adjacent(0, 1));
        let text = r#"{"radius":1,"vertices":[{"word":"a","depth":0}],"edges":[{"from":"a","to":"z"}]}"#;
        assert!(matches!(SquareGraph::parse_json(text), Err(GraphError::UnknownVertex(_))));
    }
}
