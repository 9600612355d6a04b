//! Generators, cyclic intervals and the relation classifier for the cactus
//! group `J_n` and the affine cactus group `AJ_n`.
//!
//! A generator is an ordered index pair. In the affine family `σ_{p,q}` and
//! `σ_{q,p}` are different generators acting on complementary arcs of the
//! `n`-cycle, so pairs are never normalised to `p < q`.

use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported degree. Generator tables are indexed by `u8` and
/// interval membership is a `u32` bitmask.
pub const MAX_DEGREE: u8 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("degree {0} is out of range (expected 2..={MAX_DEGREE})")]
    InvalidDegree(u32),
    #[error("index {index} is out of range 1..={n}")]
    IndexOutOfRange { index: i64, n: u8 },
    #[error("invalid generator pair ({p},{q}) for {family}")]
    InvalidPair { p: u8, q: u8, family: Family },
    #[error("generators belong to different groups")]
    SpecMismatch,
    #[error("index {r} is not in the interval [{p},{q}]")]
    OutOfInterval { p: u8, q: u8, r: u8 },
    #[error("{inner} is not nested in {outer}")]
    NotNested { outer: Generator, inner: Generator },
    #[error("operation requires the {expected} family")]
    WrongFamily { expected: Family },
    #[error("cannot parse {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Cactus,
    Affine,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cactus => f.write_str("cactus"),
            Family::Affine => f.write_str("affine"),
        }
    }
}

impl FromStr for Family {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cactus" | "J" => Ok(Family::Cactus),
            "affine" | "AJ" => Ok(Family::Affine),
            other => Err(GroupError::Parse(other.to_string())),
        }
    }
}

/// Which group we are working in: `J_n` or `AJ_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: Family,
    #[serde(rename = "n")]
    pub degree: u8,
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Cactus => write!(f, "J_{}", self.degree),
            Family::Affine => write!(f, "AJ_{}", self.degree),
        }
    }
}

/// A generator `σ_{p,q}` (affine) or `s_{p,q}` (cactus). Validity is relative
/// to a [`GroupSpec`]; construct through [`GroupSpec::generator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub p: u8,
    pub q: u8,
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.p, self.q)
    }
}

impl FromStr for Generator {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GroupError::Parse(s.to_string());
        let (p, q) = s.trim().split_once(',').ok_or_else(bad)?;
        let p = p.trim().parse::<u8>().map_err(|_| bad())?;
        let q = q.trim().parse::<u8>().map_err(|_| bad())?;
        Ok(Generator { p, q })
    }
}

/// The forward arc `[p,q]_c` on the `n`-cycle (or the integer interval
/// `[p,q]` in the cactus family, which never wraps).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicInterval {
    pub p: u8,
    pub q: u8,
    pub n: u8,
    pub members: Vec<u8>,
}

impl CyclicInterval {
    pub fn new(p: u8, q: u8, n: u8) -> Self {
        let len = arc_len(p, q, n);
        let members = (0..len).map(|k| wrap(i64::from(p) + k as i64, n)).collect();
        CyclicInterval { p, q, n, members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_index(&self, r: u8) -> bool {
        self.members.contains(&r)
    }

    pub fn mask(&self) -> u32 {
        self.members.iter().fold(0, |m, &x| m | (1 << (x - 1)))
    }

    /// Sub-arc containment: `other` is a contiguous piece of this arc, read
    /// in the same direction. For arcs shorter than `n` this is the same as
    /// set inclusion; for a full arc it excludes arcs that cross its seam.
    pub fn contains(&self, other: &CyclicInterval) -> bool {
        let off = |x: u8| (i64::from(x) - i64::from(self.p)).rem_euclid(i64::from(self.n));
        let (a, b) = (off(other.p), off(other.q));
        a <= b && b < self.len() as i64
    }

    pub fn is_disjoint(&self, other: &CyclicInterval) -> bool {
        self.mask() & other.mask() == 0
    }
}

/// Number of indices on the forward arc from `p` to `q`.
fn arc_len(p: u8, q: u8, n: u8) -> usize {
    (i64::from(q) - i64::from(p)).rem_euclid(i64::from(n)) as usize + 1
}

/// The bar map: the representative of `z` modulo `n` in `[1, n]`.
pub fn wrap(z: i64, n: u8) -> u8 {
    ((z - 1).rem_euclid(i64::from(n)) + 1) as u8
}

/// How two distinct generators interact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RelationKind {
    Disjoint,
    FirstContainsSecond,
    SecondContainsFirst,
    None,
}

impl RelationKind {
    /// Whether the pair spans a square of the Cayley complex.
    pub fn is_related(self) -> bool {
        !matches!(self, RelationKind::None)
    }

    pub fn swapped(self) -> Self {
        match self {
            RelationKind::FirstContainsSecond => RelationKind::SecondContainsFirst,
            RelationKind::SecondContainsFirst => RelationKind::FirstContainsSecond,
            other => other,
        }
    }
}

/// The reflection `s_{p,q}` of the arc `[p,q]_c`: sends the `k`-th member to
/// the `k`-th member from the end.
///
/// Evaluated as `p + q - r` reduced into `[1, n]`; this equals the piecewise
/// `p+q-r` / `p+q-r+n` form whenever that lands in range.
pub fn s_reflect(p: u8, q: u8, r: u8, n: u8) -> Result<u8, GroupError> {
    for index in [p, q, r] {
        if index == 0 || index > n {
            return Err(GroupError::IndexOutOfRange { index: i64::from(index), n });
        }
    }
    if p == q || !CyclicInterval::new(p, q, n).contains_index(r) {
        return Err(GroupError::OutOfInterval { p, q, r });
    }
    Ok(wrap(i64::from(p) + i64::from(q) - i64::from(r), n))
}

impl GroupSpec {
    pub fn new(family: Family, degree: u32) -> Result<Self, GroupError> {
        if !(2..=u32::from(MAX_DEGREE)).contains(&degree) {
            return Err(GroupError::InvalidDegree(degree));
        }
        Ok(GroupSpec { family, degree: degree as u8 })
    }

    pub fn affine(degree: u32) -> Result<Self, GroupError> {
        Self::new(Family::Affine, degree)
    }

    pub fn cactus(degree: u32) -> Result<Self, GroupError> {
        Self::new(Family::Cactus, degree)
    }

    pub fn n(&self) -> u8 {
        self.degree
    }

    /// `make_generator`: validates the index pair for this family.
    pub fn generator(&self, p: u8, q: u8) -> Result<Generator, GroupError> {
        for index in [p, q] {
            if index == 0 || index > self.degree {
                return Err(GroupError::IndexOutOfRange { index: i64::from(index), n: self.degree });
            }
        }
        let ok = match self.family {
            Family::Cactus => p < q,
            Family::Affine => p != q,
        };
        if ok {
            Ok(Generator { p, q })
        } else {
            Err(GroupError::InvalidPair { p, q, family: self.family })
        }
    }

    pub fn is_valid(&self, g: Generator) -> bool {
        self.generator(g.p, g.q).is_ok()
    }

    /// All generators, sorted by [`GroupSpec::rank_key`].
    pub fn generators(&self) -> Vec<Generator> {
        let n = self.degree;
        let mut gens: Vec<Generator> =
            (1..=n).flat_map(|p| (1..=n).map(move |q| Generator { p, q })).filter(|&g| self.is_valid(g)).collect();
        gens.sort_by_key(|&g| self.rank_key(g));
        gens
    }

    pub fn generator_count(&self) -> usize {
        let n = usize::from(self.degree);
        match self.family {
            Family::Cactus => n * (n - 1) / 2,
            Family::Affine => n * (n - 1),
        }
    }

    pub fn interval_of(&self, g: Generator) -> CyclicInterval {
        CyclicInterval::new(g.p, g.q, self.degree)
    }

    /// Priority of a generator in normal forms: longer intervals first, then
    /// smaller start index, then smaller end index.
    pub fn rank_key(&self, g: Generator) -> (Reverse<usize>, u8, u8) {
        (Reverse(arc_len(g.p, g.q, self.degree)), g.p, g.q)
    }

    pub fn classify(&self, a: Generator, b: Generator) -> Result<RelationKind, GroupError> {
        if !self.is_valid(a) || !self.is_valid(b) {
            return Err(GroupError::SpecMismatch);
        }
        Ok(self.classify_unchecked(a, b))
    }

    pub(crate) fn classify_unchecked(&self, a: Generator, b: Generator) -> RelationKind {
        if a == b {
            return RelationKind::None;
        }
        let (ia, ib) = (self.interval_of(a), self.interval_of(b));
        if ia.is_disjoint(&ib) {
            RelationKind::Disjoint
        } else if ia.contains(&ib) {
            RelationKind::FirstContainsSecond
        } else if ib.contains(&ia) {
            RelationKind::SecondContainsFirst
        } else {
            RelationKind::None
        }
    }

    /// For `outer = σ_{p,q}` containing `inner = σ_{m,r}`, returns
    /// `σ_{s_{p,q}(r), s_{p,q}(m)}`, so that `outer · inner = result · outer`.
    pub fn conjugate_nested(&self, outer: Generator, inner: Generator) -> Result<Generator, GroupError> {
        if self.classify(outer, inner)? != RelationKind::FirstContainsSecond {
            return Err(GroupError::NotNested { outer, inner });
        }
        let n = self.degree;
        let p = s_reflect(outer.p, outer.q, inner.q, n)?;
        let q = s_reflect(outer.p, outer.q, inner.p, n)?;
        Ok(Generator { p, q })
    }

    /// The `J_n` relation `s_{p,q} s_{m,r} = s_{p+q-r, p+q-m} s_{p,q}`.
    pub fn cactus_conjugate_nested(&self, outer: Generator, inner: Generator) -> Result<Generator, GroupError> {
        if self.family != Family::Cactus {
            return Err(GroupError::WrongFamily { expected: Family::Cactus });
        }
        if self.classify(outer, inner)? != RelationKind::FirstContainsSecond {
            return Err(GroupError::NotNested { outer, inner });
        }
        let sum = outer.p + outer.q;
        Ok(Generator { p: sum - inner.q, q: sum - inner.p })
    }

    pub fn parse_generator(&self, s: &str) -> Result<Generator, GroupError> {
        let g: Generator = s.parse()?;
        self.generator(g.p, g.q)
    }

    /// Parses the word syntax `"1,2;2,3;3,1"`. The empty string and `"e"`
    /// denote the identity.
    pub fn parse_letters(&self, s: &str) -> Result<Vec<Generator>, GroupError> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Vec::new());
        }
        s.split(';').map(|part| self.parse_generator(part)).collect()
    }
}

pub fn format_letters(letters: &[Generator]) -> String {
    letters.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(";")
}
