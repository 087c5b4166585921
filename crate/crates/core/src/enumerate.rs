//! Exact counting of pattern avoiders by prefix-pruned depth-first search.
//!
//! A permutation is built left to right. For every pattern the search keeps
//! the value sets of partial occurrences (occurrences of each proper prefix of
//! the pattern inside the current prefix of the permutation) and a bitmask of
//! the values whose appending would complete an occurrence. Extending the
//! prefix only ever adds to this state, so backtracking is a truncation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{Pattern, PatternTriple, Permutation};

/// Default ceiling on `n` for materializing avoiders.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

/// Largest length the bitmask search supports.
pub const MAX_SEARCH_LEN: usize = 62;

#[derive(Debug, Clone)]
struct PatternPlan {
    len: usize,
    /// `ranks[l]` is the 1-based rank of `q[l]` among `q[0..=l]`.
    ranks: Vec<u32>,
}

impl PatternPlan {
    fn new(p: &Pattern) -> Self {
        let q = p.values();
        let ranks = (0..q.len())
            .map(|l| 1 + q[..l].iter().filter(|&&v| v < q[l]).count() as u32)
            .collect();
        PatternPlan { len: q.len(), ranks }
    }
}

/// Compiled avoidance problem for a fixed set of patterns.
#[derive(Debug, Clone)]
pub struct AvoidanceSet {
    plans: Vec<PatternPlan>,
    /// first slot in the flattened partial-occurrence lists for each plan
    offsets: Vec<usize>,
    slots: usize,
    contains_empty: bool,
    contains_singleton: bool,
}

impl AvoidanceSet {
    pub fn new(patterns: &[Pattern]) -> Self {
        let plans: Vec<PatternPlan> = patterns.iter().map(PatternPlan::new).collect();
        let mut offsets = Vec::with_capacity(plans.len());
        let mut slots = 0;
        for p in &plans {
            offsets.push(slots);
            slots += p.len.saturating_sub(2);
        }
        AvoidanceSet {
            contains_empty: plans.iter().any(|p| p.len == 0),
            contains_singleton: plans.iter().any(|p| p.len == 1),
            plans,
            offsets,
            slots,
        }
    }

    pub fn from_triple(t: &PatternTriple) -> Self {
        Self::new(t.patterns())
    }

    fn search(&self, n: usize) -> Search {
        assert!(n <= MAX_SEARCH_LEN, "search length {n} exceeds {MAX_SEARCH_LEN}");
        let full = if n == 0 { 0 } else { ((1u64 << n) - 1) << 1 };
        let initial = if self.contains_singleton { full } else { 0 };
        Search {
            set: self.clone(),
            n,
            full,
            prefix: Vec::with_capacity(n),
            used: 0,
            forbidden: vec![initial],
            lists: vec![Vec::new(); self.slots],
            undo: Vec::new(),
        }
    }

    /// Counts avoiders of length `n` whose one-line notation starts with `prefix`.
    pub fn count_with_prefix(&self, n: usize, prefix: &[usize]) -> BigUint {
        if self.contains_empty {
            return BigUint::default();
        }
        let mut s = self.search(n);
        for &c in prefix {
            if !s.try_push(c) {
                return BigUint::default();
            }
        }
        BigUint::from(s.count_completions())
    }

    /// Number of avoiders of length `n`, split over the first two letters.
    pub fn count(&self, n: usize) -> BigUint {
        if self.contains_empty {
            return BigUint::default();
        }
        if n < 3 {
            return self.count_with_prefix(n, &[]);
        }
        first_two_letters(n)
            .into_par_iter()
            .map(|(a, b)| self.count_with_prefix(n, &[a, b]))
            .sum()
    }

    /// Folds `f` over every avoider of length `n`, in parallel over the first
    /// two letters; partial results are merged with `merge`.
    pub fn fold<A, F, M>(&self, n: usize, init: impl Fn() -> A + Sync, f: F, merge: M) -> A
    where
        A: Send,
        F: Fn(&mut A, &[usize]) + Sync,
        M: Fn(A, A) -> A + Sync,
    {
        if self.contains_empty {
            return init();
        }
        let run = |prefix: &[usize]| {
            let mut acc = init();
            let mut s = self.search(n);
            if prefix.iter().all(|&c| s.try_push(c)) {
                s.visit(&mut |leaf| f(&mut acc, leaf));
            }
            acc
        };
        if n < 3 {
            return run(&[]);
        }
        first_two_letters(n)
            .into_par_iter()
            .map(|(a, b)| run(&[a, b]))
            .reduce(&init, &merge)
    }
}

fn first_two_letters(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|a| (1..=n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect()
}

struct Search {
    set: AvoidanceSet,
    n: usize,
    full: u64,
    prefix: Vec<usize>,
    used: u64,
    /// `forbidden[d]`: values that may not follow the first `d` letters
    forbidden: Vec<u64>,
    lists: Vec<Vec<u64>>,
    undo: Vec<usize>,
}

/// Values strictly between the `(rank-1)`-th and `rank`-th smallest member
/// of `occ` (with sentinels `0` and `n+1`).
#[inline]
fn gap(occ: u64, rank: u32, n: usize) -> u64 {
    let mut bits = occ;
    let mut lower = 0u32;
    for _ in 1..rank {
        lower = bits.trailing_zeros();
        bits &= bits - 1;
    }
    let upper = if bits == 0 { n as u32 + 1 } else { bits.trailing_zeros() };
    let below_upper = (1u64 << upper) - 1;
    let through_lower = (1u64 << (lower + 1)) - 1;
    below_upper & !through_lower
}

#[inline]
fn rank_matches(occ: u64, c: usize, rank: u32) -> bool {
    (occ & ((1u64 << c) - 1)).count_ones() == rank - 1
}

impl Search {
    fn depth(&self) -> usize {
        self.prefix.len()
    }

    fn allowed(&self) -> u64 {
        self.full & !self.used & !self.forbidden[self.depth()]
    }

    fn try_push(&mut self, c: usize) -> bool {
        if c == 0 || c > self.n || self.allowed() & (1u64 << c) == 0 {
            return false;
        }
        self.push(c);
        true
    }

    fn push(&mut self, c: usize) {
        let bit = 1u64 << c;
        for l in &self.lists {
            self.undo.push(l.len());
        }
        let mut forbid = self.forbidden[self.depth()];
        for (plan, &base) in self.set.plans.iter().zip(&self.set.offsets) {
            let k = plan.len;
            if k < 2 {
                continue;
            }
            // grow partial occurrences, longest first, so new entries are not revisited
            for l in (1..=k.saturating_sub(2)).rev() {
                let rank = plan.ranks[l];
                let src = base + l - 1;
                for t in 0..self.lists[src].len() {
                    let occ = self.lists[src][t];
                    if rank_matches(occ, c, rank) {
                        let grown = occ | bit;
                        if l + 1 == k - 1 {
                            forbid |= gap(grown, plan.ranks[k - 1], self.n);
                        } else {
                            self.lists[src + 1].push(grown);
                        }
                    }
                }
            }
            if k == 2 {
                forbid |= gap(bit, plan.ranks[1], self.n);
            } else {
                self.lists[base].push(bit);
            }
        }
        self.prefix.push(c);
        self.used |= bit;
        self.forbidden.push(forbid);
    }

    fn pop(&mut self) {
        let c = self.prefix.pop().expect("pop on empty prefix");
        self.used &= !(1u64 << c);
        self.forbidden.pop();
        for l in self.lists.iter_mut().rev() {
            let len = self.undo.pop().expect("undo log underflow");
            l.truncate(len);
        }
    }

    fn count_completions(&mut self) -> u64 {
        let remaining = self.n - self.depth();
        if remaining == 0 {
            return 1;
        }
        let mut cands = self.allowed();
        if remaining == 1 {
            return u64::from(cands != 0);
        }
        let mut total = 0;
        while cands != 0 {
            let c = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            self.push(c);
            total += self.count_completions();
            self.pop();
        }
        total
    }

    fn visit(&mut self, f: &mut dyn FnMut(&[usize])) {
        if self.depth() == self.n {
            f(&self.prefix);
            return;
        }
        let mut cands = self.allowed();
        while cands != 0 {
            let c = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            self.push(c);
            self.visit(f);
            self.pop();
        }
    }
}

/// `|S_n(T)|`.
pub fn count_avoiders(n: usize, t: &PatternTriple) -> BigUint {
    AvoidanceSet::from_triple(t).count(n)
}

/// Counts `|S_m(T)|` for `m = 0..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSequence {
    pub triple: PatternTriple,
    pub counts: Vec<BigUint>,
}

impl CountSequence {
    pub fn compute(t: &PatternTriple, n_max: usize) -> Self {
        let set = AvoidanceSet::from_triple(t);
        CountSequence {
            triple: t.clone(),
            counts: (0..=n_max).map(|n| set.count(n)).collect(),
        }
    }
}

/// Structural shapes with dedicated counting support.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shape {
    /// `(n-1) π' n π''`
    SecondLargestFirstThenMax,
    /// `(d+1) n α`
    FirstIsDPlus1ThenMax { d: usize },
    /// starts `j1 j2`
    FirstTwo { j1: usize, j2: usize },
}

impl Shape {
    /// The forced prefix for length `n`, or `None` when no permutation of that
    /// length has the shape.
    fn prefix(&self, n: usize) -> Option<Vec<usize>> {
        match *self {
            Shape::SecondLargestFirstThenMax => (n >= 2).then(|| vec![n - 1]),
            Shape::FirstIsDPlus1ThenMax { d } => (n >= 2 && d + 1 < n).then(|| vec![d + 1, n]),
            Shape::FirstTwo { j1, j2 } => {
                (j1 != j2 && (1..=n).contains(&j1) && (1..=n).contains(&j2)).then(|| vec![j1, j2])
            }
        }
    }

    pub fn matches(&self, p: &[usize]) -> bool {
        self.prefix(p.len()).is_some_and(|pre| p.starts_with(&pre))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::SecondLargestFirstThenMax => f.write_str("SECOND_LARGEST_FIRST_THEN_MAX"),
            Shape::FirstIsDPlus1ThenMax { d } => write!(f, "FIRST_IS_D_PLUS_1_THEN_MAX:{d}"),
            Shape::FirstTwo { j1, j2 } => write!(f, "FIRST_TWO:{j1},{j2}"),
        }
    }
}

/// `NAME` or `NAME:params`, e.g. `FIRST_TWO:3,4`.
impl FromStr for Shape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let nums: Vec<usize> = if params.is_empty() {
            Vec::new()
        } else {
            params
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad shape parameter `{p}`")))
                })
                .collect::<Result<_>>()?
        };
        match (name.trim(), nums.as_slice()) {
            ("SECOND_LARGEST_FIRST_THEN_MAX", []) => Ok(Shape::SecondLargestFirstThenMax),
            ("FIRST_IS_D_PLUS_1_THEN_MAX", [d]) => Ok(Shape::FirstIsDPlus1ThenMax { d: *d }),
            ("FIRST_TWO", [j1, j2]) => Ok(Shape::FirstTwo { j1: *j1, j2: *j2 }),
            _ => Err(Error::InvalidInput(format!("unknown shape `{s}`"))),
        }
    }
}

/// Statistic by which avoiders are refined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StatisticKey {
    LrMaxima,
    FirstLetter,
    FirstTwoLetters,
    Shape(Shape),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StatValue {
    Single(usize),
    Pair(usize, usize),
    /// whether the permutation has the requested shape
    Matches(bool),
}

impl StatisticKey {
    /// `None` only for the empty permutation under a prefix statistic.
    pub fn evaluate(&self, p: &[usize]) -> Option<StatValue> {
        match self {
            StatisticKey::LrMaxima => {
                let perm = Permutation::from_vec_unchecked(p.to_vec());
                Some(StatValue::Single(perm.left_right_maxima()))
            }
            StatisticKey::FirstLetter => p.first().map(|&a| StatValue::Single(a)),
            StatisticKey::FirstTwoLetters => match p {
                [a, b, ..] => Some(StatValue::Pair(*a, *b)),
                _ => None,
            },
            StatisticKey::Shape(s) => Some(StatValue::Matches(s.matches(p))),
        }
    }
}

impl FromStr for StatisticKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "LR_MAXIMA" => Ok(StatisticKey::LrMaxima),
            "FIRST_LETTER" => Ok(StatisticKey::FirstLetter),
            "FIRST_TWO_LETTERS" => Ok(StatisticKey::FirstTwoLetters),
            other => other
                .strip_prefix("SHAPE_ID:")
                .ok_or_else(|| Error::InvalidInput(format!("unknown statistic `{s}`")))
                .and_then(|rest| rest.parse().map(StatisticKey::Shape)),
        }
    }
}

/// Census of `S_n(T)` by `key`. Permutations too short to carry the
/// statistic (for instance the empty permutation under `FIRST_LETTER`) are
/// left out, so marginals are exact for `n` at least the prefix length.
pub fn count_refined(n: usize, t: &PatternTriple, key: StatisticKey) -> BTreeMap<StatValue, BigUint> {
    let set = AvoidanceSet::from_triple(t);
    let census = set.fold(
        n,
        BTreeMap::<StatValue, u64>::new,
        |acc, p| {
            if let Some(v) = key.evaluate(p) {
                *acc.entry(v).or_default() += 1;
            }
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        },
    );
    census.into_iter().map(|(k, v)| (k, BigUint::from(v))).collect()
}

/// Number of avoiders of length `n` with the given shape; parameters that no
/// permutation of length `n` can satisfy give zero.
pub fn count_shape(n: usize, t: &PatternTriple, shape: Shape) -> BigUint {
    match shape.prefix(n) {
        Some(pre) => AvoidanceSet::from_triple(t).count_with_prefix(n, &pre),
        None => BigUint::default(),
    }
}

/// Refined counts for every `n` in a range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedCountTable {
    pub triple: PatternTriple,
    pub statistic: StatisticKey,
    pub table: BTreeMap<(usize, StatValue), BigUint>,
}

impl RefinedCountTable {
    pub fn compute(t: &PatternTriple, statistic: StatisticKey, n_max: usize) -> Self {
        let mut table = BTreeMap::new();
        for n in 0..=n_max {
            for (v, c) in count_refined(n, t, statistic) {
                table.insert((n, v), c);
            }
        }
        RefinedCountTable {
            triple: t.clone(),
            statistic,
            table,
        }
    }

    pub fn get(&self, n: usize, v: StatValue) -> BigUint {
        self.table.get(&(n, v)).cloned().unwrap_or_default()
    }

    pub fn marginal(&self, n: usize) -> BigUint {
        self.table
            .range((n, StatValue::Single(0))..)
            .take_while(|((m, _), _)| *m == n)
            .map(|(_, c)| c)
            .sum()
    }
}

/// Lexicographic stream of the avoiders of length `n`.
pub struct AvoiderIter {
    state: IterState,
}

enum IterState {
    Empty { emitted: bool },
    Running { search: Box<Search>, frames: Vec<u64> },
}

impl AvoiderIter {
    fn new(set: AvoidanceSet, n: usize) -> Self {
        let state = if n == 0 || set.contains_empty {
            IterState::Empty {
                emitted: set.contains_empty,
            }
        } else {
            let search = Box::new(set.search(n));
            let frames = vec![search.allowed()];
            IterState::Running { search, frames }
        };
        AvoiderIter { state }
    }
}

impl Iterator for AvoiderIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        match &mut self.state {
            IterState::Empty { emitted } => {
                if *emitted {
                    None
                } else {
                    *emitted = true;
                    Some(Permutation::default())
                }
            }
            IterState::Running { search, frames } => loop {
                let top = frames.last_mut()?;
                if *top == 0 {
                    frames.pop();
                    if search.depth() > 0 {
                        search.pop();
                    }
                    continue;
                }
                let c = top.trailing_zeros() as usize;
                *top &= *top - 1;
                search.push(c);
                if search.depth() == search.n {
                    let out = Permutation::from_vec_unchecked(search.prefix.clone());
                    search.pop();
                    return Some(out);
                }
                frames.push(search.allowed());
            },
        }
    }
}

pub fn enumerate_avoiders(n: usize, t: &PatternTriple) -> Result<AvoiderIter> {
    enumerate_avoiders_with_cap(n, t, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_avoiders_with_cap(n: usize, t: &PatternTriple, cap: usize) -> Result<AvoiderIter> {
    if n > cap {
        return Err(Error::Capacity(format!(
            "refusing to enumerate avoiders of length {n}; the cap is {cap}"
        )));
    }
    Ok(AvoiderIter::new(AvoidanceSet::from_triple(t), n))
}
