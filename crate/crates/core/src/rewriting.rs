//! Words, rewriting moves and normal forms.
//!
//! The relations of `J_n` and `AJ_n` other than `σ² = e` all have the shape
//! `x·t = t'·x'` with both sides of length two, so every non-cancelling move
//! is an adjacent swap that may conjugate one of the two letters. The normal
//! form of an element is its lexicographically least geodesic word, letters
//! compared by [`GroupSpec::rank_key`].
//!
//! Normalisation works in two passes. Right-multiplying a geodesic word by a
//! letter `g`, the letter travels left through swaps; it either meets an equal
//! letter and cancels, or is blocked by an unrelated letter, in which case the
//! product is already geodesic. The least word is then read off greedily: at
//! each step the smallest letter that can travel to the front is extracted.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

use crate::group::{format_letters, Generator, GroupError, GroupSpec, RelationKind};

/// Default cap on the number of words in an oracle closure.
pub const DEFAULT_CLOSURE_BUDGET: usize = 1_000_000;
/// Default cap on the input length of an oracle closure.
pub const DEFAULT_CLOSURE_MAX_LEN: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("words belong to different groups ({0} vs {1})")]
    SpecMismatch(GroupSpec, GroupSpec),
    #[error("closure exceeded the budget of {limit} words")]
    BudgetExceeded { limit: usize },
    #[error("word of length {len} exceeds the closure guard of {max}")]
    TooLong { len: usize, max: usize },
    #[error("move {0:?} does not apply")]
    InvalidMove(RewriteMove),
}

/// Index of a generator in its [`Presentation`]; index order is rank order.
pub type Letter = u8;
pub(crate) type Letters = SmallVec<[Letter; 16]>;

const NO_LETTER: u8 = u8::MAX;

/// Lookup tables for one group: generators in rank order, the pairwise
/// relation kinds and the nested conjugation table.
#[derive(Debug)]
pub struct Presentation {
    spec: GroupSpec,
    gens: Vec<Generator>,
    lookup: Vec<u8>,
    relation: Vec<RelationKind>,
    conj: Vec<u8>,
}

impl Presentation {
    pub fn new(spec: GroupSpec) -> Self {
        let gens = spec.generators();
        let k = gens.len();
        let n = usize::from(spec.n());
        let mut lookup = vec![NO_LETTER; (n + 1) * (n + 1)];
        for (i, g) in gens.iter().enumerate() {
            lookup[usize::from(g.p) * (n + 1) + usize::from(g.q)] = i as u8;
        }
        let mut relation = vec![RelationKind::None; k * k];
        let mut conj = vec![NO_LETTER; k * k];
        for (a, &ga) in gens.iter().enumerate() {
            for (b, &gb) in gens.iter().enumerate() {
                let kind = spec.classify_unchecked(ga, gb);
                relation[a * k + b] = kind;
                if kind == RelationKind::FirstContainsSecond {
                    let c = spec.conjugate_nested(ga, gb).expect("nested pair");
                    conj[a * k + b] = lookup[usize::from(c.p) * (n + 1) + usize::from(c.q)];
                }
            }
        }
        Presentation { spec, gens, lookup, relation, conj }
    }

    /// Shared, lazily built presentation for `spec`.
    pub fn of(spec: GroupSpec) -> Arc<Presentation> {
        static CACHE: OnceLock<Mutex<HashMap<GroupSpec, Arc<Presentation>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut cache = cache.lock().unwrap_or_else(|e| e.into_inner());
        cache.entry(spec).or_insert_with(|| Arc::new(Presentation::new(spec))).clone()
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generator(&self, letter: Letter) -> Generator {
        self.gens[usize::from(letter)]
    }

    pub fn letter(&self, g: Generator) -> Option<Letter> {
        let n = usize::from(self.spec.n());
        if g.p as usize > n || g.q as usize > n {
            return None;
        }
        let l = self.lookup[usize::from(g.p) * (n + 1) + usize::from(g.q)];
        (l != NO_LETTER).then_some(l)
    }

    pub fn relation(&self, a: Letter, b: Letter) -> RelationKind {
        self.relation[usize::from(a) * self.gens.len() + usize::from(b)]
    }

    /// Conjugate of `inner` by `outer`; only meaningful for nested pairs.
    pub fn conj(&self, outer: Letter, inner: Letter) -> Letter {
        self.conj[usize::from(outer) * self.gens.len() + usize::from(inner)]
    }

    /// Rewrites the adjacent pair `x t` as `t' x'` where `t'` crosses the
    /// same hyperplane as `t`. `None` when the letters are equal or unrelated.
    /// Applying it to `t' x'` gives back `x t`.
    pub fn swap(&self, x: Letter, t: Letter) -> Option<(Letter, Letter)> {
        match self.relation(x, t) {
            RelationKind::Disjoint => Some((t, x)),
            RelationKind::FirstContainsSecond => Some((self.conj(x, t), x)),
            RelationKind::SecondContainsFirst => Some((t, self.conj(t, x))),
            RelationKind::None => None,
        }
    }

    /// Normal form of a letter sequence.
    pub fn normal_form(&self, letters: &[Letter]) -> Letters {
        let mut buf: Letters = letters.iter().copied().collect();
        self.normalize_in_place(&mut buf, &mut NoTrace);
        buf
    }

    fn normalize_in_place(&self, buf: &mut Letters, trace: &mut impl Trace) {
        let reduced = self.reduce_to_geodesic(buf, trace);
        debug_assert_eq!(reduced, buf.len());
        self.least_geodesic(buf, trace);
    }

    /// Turns `buf` into a geodesic word for the same element. Returns its
    /// length (which is also `buf.len()` on return).
    fn reduce_to_geodesic(&self, buf: &mut Letters, trace: &mut impl Trace) -> usize {
        let mut k = 0;
        while k < buf.len() {
            // buf[..k] is geodesic; bring buf[k] in.
            let mut j = k;
            let mut cancelled = false;
            while j > 0 {
                let (x, t) = (buf[j - 1], buf[j]);
                if x == t {
                    buf.drain(j - 1..=j);
                    trace.record(buf);
                    cancelled = true;
                    break;
                }
                match self.swap(x, t) {
                    Some((t2, x2)) => {
                        buf[j - 1] = t2;
                        buf[j] = x2;
                        trace.record(buf);
                        j -= 1;
                    }
                    None => break,
                }
            }
            if cancelled {
                k -= 1;
            } else {
                k += 1;
            }
        }
        k
    }

    /// Rearranges a geodesic word into the least geodesic word for its element.
    fn least_geodesic(&self, buf: &mut Letters, trace: &mut impl Trace) {
        for start in 0..buf.len() {
            let mut best: Option<(Letter, usize)> = None;
            for j in start..buf.len() {
                if let Some(front) = self.travel_front(&buf[start..=j]) {
                    if best.is_none_or(|(b, _)| front < b) {
                        best = Some((front, j));
                    }
                }
            }
            let (_, j) = best.expect("the first letter can always reach the front");
            for i in (start..j).rev() {
                let (t2, x2) = self.swap(buf[i], buf[i + 1]).expect("checked by travel_front");
                buf[i] = t2;
                buf[i + 1] = x2;
                trace.record(buf);
            }
        }
    }

    /// The letter that the last letter of `segment` becomes after moving to
    /// the front of `segment`, if every swap on the way applies.
    fn travel_front(&self, segment: &[Letter]) -> Option<Letter> {
        let (&last, rest) = segment.split_last()?;
        let mut t = last;
        for &x in rest.iter().rev() {
            t = self.swap(x, t)?.0;
        }
        Some(t)
    }

    pub fn to_generators(&self, letters: &[Letter]) -> Vec<Generator> {
        letters.iter().map(|&l| self.generator(l)).collect()
    }

    pub fn to_letters(&self, gens: &[Generator]) -> Result<Letters, GroupError> {
        gens.iter()
            .map(|&g| self.letter(g).ok_or(GroupError::InvalidPair { p: g.p, q: g.q, family: self.spec.family }))
            .collect()
    }
}

trait Trace {
    fn record(&mut self, buf: &[Letter]);
}

struct NoTrace;

impl Trace for NoTrace {
    #[inline]
    fn record(&mut self, _: &[Letter]) {}
}

impl Trace for Vec<Vec<Letter>> {
    fn record(&mut self, buf: &[Letter]) {
        self.push(buf.to_vec());
    }
}

/// A finite sequence of generators of one group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    spec: GroupSpec,
    letters: Vec<Generator>,
}

impl Word {
    pub fn new(spec: GroupSpec, letters: Vec<Generator>) -> Result<Self, RewriteError> {
        for g in &letters {
            spec.generator(g.p, g.q)?;
        }
        Ok(Word { spec, letters })
    }

    pub fn identity(spec: GroupSpec) -> Self {
        Word { spec, letters: Vec::new() }
    }

    pub fn parse(spec: GroupSpec, text: &str) -> Result<Self, RewriteError> {
        Ok(Word { spec, letters: spec.parse_letters(text)? })
    }

    pub(crate) fn from_letters(pres: &Presentation, letters: &[Letter]) -> Self {
        Word { spec: pres.spec(), letters: pres.to_generators(letters) }
    }

    pub(crate) fn letter_indices(&self, pres: &Presentation) -> Letters {
        pres.to_letters(&self.letters).expect("validated on construction")
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn letters(&self) -> &[Generator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Result<Word, RewriteError> {
        if self.spec != other.spec {
            return Err(RewriteError::SpecMismatch(self.spec, other.spec));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { spec: self.spec, letters })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_letters(&self.letters))
    }
}

/// The canonical word of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm(Word);

impl NormalForm {
    /// Wraps letters already known to be a normal form.
    pub(crate) fn from_normal_letters(pres: &Presentation, letters: &[Letter]) -> Self {
        NormalForm(Word::from_letters(pres, letters))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    pub fn letters(&self) -> &[Generator] {
        self.0.letters()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    /// Deletes an adjacent pair `g g`.
    FreeCancel,
    /// `a b → b a` for disjoint intervals.
    CommuteSwap,
    /// The inner letter moves left: `outer · inner → inner' · outer`.
    NestedFlipLeft,
    /// The inner letter moves right: `inner · outer → outer · inner'`. This is
    /// the direction that brings the longer interval to the left.
    NestedFlipRight,
}

/// A move acting on the letters at `position` and `position + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RewriteMove {
    pub kind: MoveKind,
    pub position: usize,
}

pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Generator> = Vec::with_capacity(w.len());
    for &g in w.letters() {
        if out.last() == Some(&g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    Word { spec: w.spec, letters: out }
}

fn move_at(pres: &Presentation, letters: &[Letter], position: usize) -> Option<RewriteMove> {
    let (x, t) = (letters[position], letters[position + 1]);
    let kind = if x == t {
        MoveKind::FreeCancel
    } else {
        match pres.relation(x, t) {
            RelationKind::Disjoint => MoveKind::CommuteSwap,
            RelationKind::FirstContainsSecond => MoveKind::NestedFlipLeft,
            RelationKind::SecondContainsFirst => MoveKind::NestedFlipRight,
            RelationKind::None => return None,
        }
    };
    Some(RewriteMove { kind, position })
}

fn apply_letters(pres: &Presentation, letters: &[Letter], mv: RewriteMove) -> Option<Letters> {
    let i = mv.position;
    if i + 1 >= letters.len() || move_at(pres, letters, i) != Some(mv) {
        return None;
    }
    let mut out: Letters = letters.iter().copied().collect();
    if mv.kind == MoveKind::FreeCancel {
        out.drain(i..=i + 1);
    } else {
        let (t2, x2) = pres.swap(letters[i], letters[i + 1])?;
        out[i] = t2;
        out[i + 1] = x2;
    }
    Some(out)
}

/// Every move that applies somewhere in `w`, in position order.
pub fn applicable_moves(w: &Word) -> Vec<RewriteMove> {
    let pres = Presentation::of(w.spec);
    let letters = w.letter_indices(&pres);
    (0..letters.len().saturating_sub(1)).filter_map(|i| move_at(&pres, &letters, i)).collect()
}

pub fn apply_move(w: &Word, mv: RewriteMove) -> Result<Word, RewriteError> {
    let pres = Presentation::of(w.spec);
    let letters = w.letter_indices(&pres);
    apply_letters(&pres, &letters, mv).map(|out| Word::from_letters(&pres, &out)).ok_or(RewriteError::InvalidMove(mv))
}

/// Whether applying `mv` cancels letters or lexicographically lowers the
/// word's priority sequence.
pub fn is_priority_increasing(w: &Word, mv: RewriteMove) -> bool {
    let pres = Presentation::of(w.spec);
    let letters = w.letter_indices(&pres);
    improving(&pres, &letters, mv)
}

fn improving(pres: &Presentation, letters: &[Letter], mv: RewriteMove) -> bool {
    match mv.kind {
        MoveKind::FreeCancel => true,
        _ => pres.swap(letters[mv.position], letters[mv.position + 1]).is_some_and(|(t2, _)| t2 < letters[mv.position]),
    }
}

pub fn normalize(w: &Word) -> NormalForm {
    let pres = Presentation::of(w.spec);
    let letters = w.letter_indices(&pres);
    NormalForm(Word::from_letters(&pres, &pres.normal_form(&letters)))
}

/// Like [`normalize`], also returning every intermediate word produced on the
/// way (each one differs from its predecessor by a single move).
pub fn normalize_traced(w: &Word) -> (NormalForm, Vec<Word>) {
    let pres = Presentation::of(w.spec);
    let mut buf = w.letter_indices(&pres);
    let mut trace: Vec<Vec<Letter>> = Vec::new();
    pres.normalize_in_place(&mut buf, &mut trace);
    let steps = trace.iter().map(|t| Word::from_letters(&pres, t)).collect();
    (NormalForm(Word::from_letters(&pres, &buf)), steps)
}

/// Repeatedly applies the leftmost priority-increasing move (free
/// cancellation included) until none applies.
pub fn normalize_by_moves(w: &Word) -> Word {
    let pres = Presentation::of(w.spec);
    let mut letters = w.letter_indices(&pres);
    'outer: loop {
        for i in 0..letters.len().saturating_sub(1) {
            if let Some(mv) = move_at(&pres, &letters, i) {
                if improving(&pres, &letters, mv) {
                    letters = apply_letters(&pres, &letters, mv).expect("applicable");
                    continue 'outer;
                }
            }
        }
        break;
    }
    Word::from_letters(&pres, &letters)
}

/// All words in which no priority-increasing move applies that can be
/// reached from `w` by some sequence of priority-increasing moves. A single
/// element means every maximal strategy ends in the same word.
pub fn terminal_words(w: &Word) -> Vec<Word> {
    let pres = Presentation::of(w.spec);
    let start = w.letter_indices(&pres);
    let mut seen: HashSet<Letters> = HashSet::new();
    let mut terminal: Vec<Letters> = Vec::new();
    let mut stack = vec![start];
    while let Some(cur) = stack.pop() {
        if !seen.insert(cur.clone()) {
            continue;
        }
        let mut any = false;
        for i in 0..cur.len().saturating_sub(1) {
            if let Some(mv) = move_at(&pres, &cur, i) {
                if improving(&pres, &cur, mv) {
                    any = true;
                    stack.push(apply_letters(&pres, &cur, mv).expect("applicable"));
                }
            }
        }
        if !any {
            terminal.push(cur);
        }
    }
    terminal.sort();
    terminal.iter().map(|t| Word::from_letters(&pres, t)).collect()
}

pub fn equal(w1: &Word, w2: &Word) -> Result<bool, RewriteError> {
    if w1.spec != w2.spec {
        return Err(RewriteError::SpecMismatch(w1.spec, w2.spec));
    }
    Ok(normalize(w1) == normalize(w2))
}

/// Breadth-first closure of `w` under all relation moves in both directions:
/// swaps, cancellation of `g g`, and insertion of `g g` while the length stays
/// at most `|w|`. The result is sorted.
pub fn oracle_closure(w: &Word, max_words: usize) -> Result<Vec<Word>, RewriteError> {
    if w.len() > DEFAULT_CLOSURE_MAX_LEN {
        return Err(RewriteError::TooLong { len: w.len(), max: DEFAULT_CLOSURE_MAX_LEN });
    }
    let pres = Presentation::of(w.spec);
    let start = w.letter_indices(&pres);
    let words = closure_letters(&pres, &start, w.len(), max_words)?;
    let mut words: Vec<Word> = words.iter().map(|l| Word::from_letters(&pres, l)).collect();
    words.sort();
    Ok(words)
}

pub(crate) fn closure_letters(
    pres: &Presentation,
    start: &[Letter],
    max_len: usize,
    max_words: usize,
) -> Result<Vec<Letters>, RewriteError> {
    let k = pres.len() as Letter;
    let start: Letters = start.iter().copied().collect();
    let mut seen: HashSet<Letters> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let visit = |next: Letters, seen: &mut HashSet<Letters>, queue: &mut VecDeque<Letters>| {
        if seen.len() >= max_words && !seen.contains(&next) {
            return Err(RewriteError::BudgetExceeded { limit: max_words });
        }
        if seen.insert(next.clone()) {
            queue.push_back(next);
        }
        Ok(())
    };
    while let Some(cur) = queue.pop_front() {
        for i in 0..cur.len().saturating_sub(1) {
            if let Some(mv) = move_at(pres, &cur, i) {
                let next = apply_letters(pres, &cur, mv).expect("applicable");
                visit(next, &mut seen, &mut queue)?;
            }
        }
        if cur.len() + 2 <= max_len {
            for i in 0..=cur.len() {
                for g in 0..k {
                    let mut next = cur.clone();
                    next.insert(i, g);
                    next.insert(i, g);
                    visit(next, &mut seen, &mut queue)?;
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// A reproducible pseudorandom word of the given length.
pub fn random_word(spec: GroupSpec, length: usize, seed: u64) -> Word {
    let gens = spec.generators();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = (0..length).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
    Word { spec, letters }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aj(n: u32) -> GroupSpec {
        GroupSpec::affine(n).unwrap()
    }

    fn w(spec: GroupSpec, text: &str) -> Word {
        Word::parse(spec, text).unwrap()
    }

    #[test]
    fn free_reduce_examples() {
        let s = aj(3);
        assert!(free_reduce(&w(s, "1,2;1,2")).is_empty());
        assert!(free_reduce(&w(s, "1,2;2,3;2,3;1,2")).is_empty());
        assert_eq!(free_reduce(&w(s, "1,2;1,3")), w(s, "1,2;1,3"));
    }

    #[test]
    fn applicable_moves_examples() {
        let s = aj(3);
        let moves = applicable_moves(&w(s, "1,3;2,3"));
        assert_eq!(moves, vec![RewriteMove { kind: MoveKind::NestedFlipLeft, position: 0 }]);
        assert_eq!(apply_move(&w(s, "1,3;2,3"), moves[0]).unwrap(), w(s, "1,2;1,3"));
        let moves = applicable_moves(&w(aj(5), "1,2;3,5"));
        assert!(moves.contains(&RewriteMove { kind: MoveKind::CommuteSwap, position: 0 }));
        assert!(applicable_moves(&w(s, "1,2")).is_empty());
        assert!(applicable_moves(&w(s, "1,2;2,3")).is_empty());
        let bad = RewriteMove { kind: MoveKind::CommuteSwap, position: 0 };
        assert!(matches!(apply_move(&w(s, "1,2;2,3"), bad), Err(RewriteError::InvalidMove(_))));
    }

    #[test]
    fn moves_are_involutions() {
        let s = aj(4);
        for seed in 0..200 {
            let word = random_word(s, 6, seed);
            for mv in applicable_moves(&word) {
                if mv.kind == MoveKind::FreeCancel {
                    continue;
                }
                let once = apply_move(&word, mv).unwrap();
                let back = applicable_moves(&once).into_iter().find(|m| m.position == mv.position).unwrap();
                assert_eq!(apply_move(&once, back).unwrap(), word);
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let s = aj(3);
        assert_eq!(normalize(&w(s, "1,2;1,2;2,3")).word(), &w(s, "2,3"));
        assert_eq!(normalize(&w(s, "1,3;2,3")), normalize(&w(s, "1,2;1,3")));
        assert_eq!(normalize(&w(s, "1,2;1,3")).word(), &w(s, "1,3;2,3"));
        assert!(normalize(&w(s, "1,2;1,2")).is_empty());
    }

    #[test]
    fn equal_examples() {
        let s5 = aj(5);
        assert!(equal(&w(s5, "1,2;3,5"), &w(s5, "3,5;1,2")).unwrap());
        let s = aj(3);
        assert!(!equal(&w(s, "1,2"), &w(s, "2,3")).unwrap());
        let word = w(s, "1,2;3,2;2,1");
        assert!(equal(&word, &word).unwrap());
        assert!(matches!(equal(&w(s, "1,2"), &w(s5, "1,2")), Err(RewriteError::SpecMismatch(..))));
    }

    #[test]
    fn closure_examples() {
        let s = aj(3);
        let c = oracle_closure(&w(s, "1,2;1,2"), DEFAULT_CLOSURE_BUDGET).unwrap();
        assert!(c.contains(&Word::identity(s)));
        let c = oracle_closure(&w(s, "1,3;2,3"), DEFAULT_CLOSURE_BUDGET).unwrap();
        assert_eq!(c, vec![w(s, "1,2;1,3"), w(s, "1,3;2,3")]);
        let c = oracle_closure(&w(s, "1,2;2,3"), DEFAULT_CLOSURE_BUDGET).unwrap();
        assert_eq!(c, vec![w(s, "1,2;2,3")]);
        assert!(matches!(
            oracle_closure(&w(s, "1,2;1,2;1,2;1,2"), 10),
            Err(RewriteError::BudgetExceeded { limit: 10 })
        ));
        let long = random_word(s, 9, 3);
        assert!(matches!(oracle_closure(&long, 10), Err(RewriteError::TooLong { .. })));
    }

    #[test]
    fn random_word_is_reproducible() {
        let s = aj(3);
        assert!(random_word(s, 0, 9).is_empty());
        assert_eq!(random_word(s, 4, 7), random_word(s, 4, 7));
        assert_eq!(random_word(s, 4, 7).len(), 4);
        assert_ne!(random_word(aj(5), 6, 1), random_word(aj(5), 6, 2));
    }

    #[test]
    fn local_fixpoints_are_not_unique_in_j6() {
        // s12 commutes with s56 and s35, which block each other, so two
        // different adjacent-move fixpoints represent the same element.
        let j6 = GroupSpec::cactus(6).unwrap();
        let a = w(j6, "5,6;3,5;1,2");
        let b = w(j6, "1,2;5,6;3,5");
        assert_eq!(normalize_by_moves(&a), a);
        assert_eq!(normalize_by_moves(&b), b);
        assert!(equal(&a, &b).unwrap());
        assert_eq!(normalize(&a).word(), &b);
    }

    #[test]
    fn trace_steps_are_single_moves() {
        let s = aj(4);
        for seed in 0..100 {
            let word = random_word(s, 7, seed);
            let (nf, steps) = normalize_traced(&word);
            let mut prev = word.clone();
            for step in &steps {
                let ok = applicable_moves(&prev).into_iter().any(|mv| apply_move(&prev, mv).as_ref() == Ok(step));
                assert!(ok, "{prev} -> {step}");
                prev = step.clone();
            }
            assert_eq!(&prev, nf.word());
        }
    }
}
