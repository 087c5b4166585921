//! Permutations in one-line notation, classical pattern containment and the
//! eight symmetries generated by reverse, complement and inverse.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}` in one-line notation. `n = 0` is allowed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// Validates that `values` is a rearrangement of `1..=len`.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{values:?} is not a rearrangement of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation(values)
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn decreasing(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn into_values(self) -> Vec<usize> {
        self.0
    }

    pub fn reverse(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Self {
        let n = self.len();
        Permutation(self.0.iter().map(|&v| n + 1 - v).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// Number of entries larger than everything to their left.
    pub fn left_right_maxima(&self) -> usize {
        let mut max = 0;
        let mut count = 0;
        for &v in &self.0 {
            if v > max {
                max = v;
                count += 1;
            }
        }
        count
    }

    pub fn contains(&self, pattern: &Pattern) -> bool {
        contains(self, pattern)
    }

    pub fn avoids_all(&self, patterns: &[Pattern]) -> bool {
        patterns.iter().all(|p| !contains(self, p))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Digits when every entry is a single digit, comma-separated otherwise.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim().parse::<usize>().map_err(|_| {
                        Error::InvalidPermutation(format!("bad entry `{t}` in `{s}`"))
                    })
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::InvalidPermutation(format!("bad digit `{c}` in `{s}`")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

/// Replaces the smallest entry by 1, the next smallest by 2, and so on.
pub fn standardize(word: &[usize]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by_key(|&i| word[i]);
    if order.windows(2).any(|w| word[w[0]] == word[w[1]]) {
        return Err(Error::InvalidInput(format!(
            "cannot standardize {word:?}: repeated entries"
        )));
    }
    let mut out = vec![0; word.len()];
    for (rank, &i) in order.iter().enumerate() {
        out[i] = rank + 1;
    }
    Ok(Permutation(out))
}

/// A classical pattern.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pattern(Permutation);

impl Pattern {
    pub fn new(perm: Permutation) -> Self {
        Pattern(perm)
    }

    pub fn perm(&self) -> &Permutation {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        self.0.values()
    }
}

impl From<Permutation> for Pattern {
    fn from(p: Permutation) -> Self {
        Pattern(p)
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({})", self.0)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse().map(Pattern)
    }
}

/// Backtracking matcher: places pattern entries left to right and abandons a
/// partial embedding as soon as one relative order disagrees.
pub fn contains(host: &Permutation, pattern: &Pattern) -> bool {
    let k = pattern.len();
    if k == 0 {
        return true;
    }
    if k > host.len() {
        return false;
    }
    let h = host.values();
    let p = pattern.values();
    let mut chosen = Vec::with_capacity(k);
    embed(h, p, 0, &mut chosen)
}

fn embed(h: &[usize], p: &[usize], start: usize, chosen: &mut Vec<usize>) -> bool {
    let idx = chosen.len();
    if idx == p.len() {
        return true;
    }
    let remaining = p.len() - idx;
    for pos in start..=h.len() - remaining {
        let v = h[pos];
        let consistent = chosen
            .iter()
            .zip(p)
            .all(|(&w, &q)| (w < v) == (q < p[idx]));
        if consistent {
            chosen.push(v);
            if embed(h, p, pos + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// One of the eight maps `i^a c^b r^d` of the symmetry group of the square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Symmetry {
    pub reverse: bool,
    pub complement: bool,
    pub inverse: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry {
        reverse: false,
        complement: false,
        inverse: false,
    };

    pub fn all() -> impl Iterator<Item = Symmetry> {
        (0..8u8).map(|bits| Symmetry {
            reverse: bits & 1 != 0,
            complement: bits & 2 != 0,
            inverse: bits & 4 != 0,
        })
    }

    /// Applies reverse, then complement, then inverse.
    pub fn apply(&self, p: &Permutation) -> Permutation {
        let mut q = p.clone();
        if self.reverse {
            q = q.reverse();
        }
        if self.complement {
            q = q.complement();
        }
        if self.inverse {
            q = q.inverse();
        }
        q
    }

    pub fn apply_triple(&self, t: &PatternTriple) -> PatternTriple {
        let [a, b, c] = t.patterns();
        PatternTriple::from_array([
            Pattern(self.apply(a.perm())),
            Pattern(self.apply(b.perm())),
            Pattern(self.apply(c.perm())),
        ])
        .expect("symmetries are bijective on patterns")
    }
}

/// Three distinct patterns of length 4, kept in lexicographic order.
#[derive(Clone)]
pub struct PatternTriple {
    patterns: [Pattern; 3],
    case_id: Option<u32>,
}

impl PatternTriple {
    pub fn new(a: Pattern, b: Pattern, c: Pattern) -> Result<Self> {
        Self::from_array([a, b, c])
    }

    pub fn from_array(mut patterns: [Pattern; 3]) -> Result<Self> {
        if let Some(p) = patterns.iter().find(|p| p.len() != 4) {
            return Err(Error::InvalidTriple(format!("{p} is not a 4-letter pattern")));
        }
        patterns.sort();
        if patterns[0] == patterns[1] || patterns[1] == patterns[2] {
            return Err(Error::InvalidTriple(format!(
                "patterns must be distinct: {}, {}, {}",
                patterns[0], patterns[1], patterns[2]
            )));
        }
        Ok(PatternTriple {
            patterns,
            case_id: None,
        })
    }

    pub fn with_case_id(mut self, case_id: u32) -> Self {
        self.case_id = Some(case_id);
        self
    }

    pub fn case_id(&self) -> Option<u32> {
        self.case_id
    }

    pub fn patterns(&self) -> &[Pattern; 3] {
        &self.patterns
    }

    pub fn contains_pattern(&self, p: &Pattern) -> bool {
        self.patterns.contains(p)
    }

    /// Orbit under the symmetry group; every member is canonically sorted.
    pub fn symmetry_class(&self) -> BTreeSet<PatternTriple> {
        Symmetry::all()
            .map(|g| g.apply_triple(self))
            .collect()
    }
}

pub fn symmetry_class(t: &PatternTriple) -> BTreeSet<PatternTriple> {
    t.symmetry_class()
}

// Identity of a triple is its canonical pattern list; the case tag is metadata.
impl PartialEq for PatternTriple {
    fn eq(&self, other: &Self) -> bool {
        self.patterns == other.patterns
    }
}

impl Eq for PatternTriple {}

impl PartialOrd for PatternTriple {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PatternTriple {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.patterns.cmp(&other.patterns)
    }
}

impl Hash for PatternTriple {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.patterns.hash(state);
    }
}

impl fmt::Debug for PatternTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternTriple({self})")
    }
}

impl fmt::Display for PatternTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.patterns;
        write!(f, "{{{a},{b},{c}}}")
    }
}

/// Accepts `1324,2143,3421`, optionally wrapped in braces.
impl FromStr for PatternTriple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidTriple(format!(
                "expected three comma-separated patterns, got `{s}`"
            )));
        }
        let pats = parts
            .iter()
            .map(|p| {
                if p.len() != 4 {
                    return Err(Error::InvalidTriple(format!("`{p}` is not a 4-letter pattern")));
                }
                p.parse::<Pattern>()
            })
            .collect::<Result<Vec<_>>>()?;
        let [a, b, c]: [Pattern; 3] = pats.try_into().expect("length checked");
        PatternTriple::new(a, b, c)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    /// Exhaustive scan over all k-subsets of positions.
    pub(crate) fn contains_naive(host: &Permutation, pattern: &Pattern) -> bool {
        let n = host.len();
        let k = pattern.len();
        if k > n {
            return false;
        }
        fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                subsets(n, k, i + 1, cur, out);
                cur.pop();
            }
        }
        let mut all = Vec::new();
        subsets(n, k, 0, &mut Vec::new(), &mut all);
        all.iter().any(|pos| {
            let word: Vec<usize> = pos.iter().map(|&i| host.values()[i]).collect();
            standardize(&word).unwrap() == *pattern.perm()
        })
    }

    fn arb_perm(max_n: usize) -> impl Strategy<Value = Permutation> {
        (0..=max_n)
            .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    #[test]
    fn containment_examples() {
        assert!(!perm("213").contains(&pat("132")));
        assert!(perm("1324").contains(&pat("1324")));
        assert!(!perm("123").contains(&pat("1324")));
        assert!(perm("").contains(&Pattern::default()));
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&[5, 2, 9]).unwrap(), perm("213"));
        assert_eq!(standardize(&[]).unwrap(), Permutation::default());
        assert_eq!(standardize(&[3, 5, 1, 4]).unwrap(), perm("2413"));
        assert!(matches!(standardize(&[3, 3]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn symmetry_examples() {
        let p = perm("1324");
        assert_eq!(p.complement(), perm("4231"));
        assert_eq!(p.reverse(), perm("4231"));
        assert_eq!(p.inverse(), perm("1324"));
    }

    #[test]
    fn left_right_maxima_examples() {
        assert_eq!(perm("2413").left_right_maxima(), 2);
        assert_eq!(Permutation::decreasing(7).left_right_maxima(), 1);
        assert_eq!(Permutation::identity(7).left_right_maxima(), 7);
        assert_eq!(Permutation::default().left_right_maxima(), 0);
    }

    #[test]
    fn text_format() {
        assert_eq!(perm("1324").to_string(), "1324");
        let long = Permutation::new(vec![10, 3, 2, 1, 4, 5, 6, 7, 8, 9]).unwrap();
        assert_eq!(long.to_string(), "10,3,2,1,4,5,6,7,8,9");
        assert_eq!(long.to_string().parse::<Permutation>().unwrap(), long);
        assert!("1224".parse::<Permutation>().is_err());
        assert!("12a".parse::<Permutation>().is_err());
    }

    #[test]
    fn triple_is_canonical() {
        let t: PatternTriple = "3421,1324,2143".parse().unwrap();
        assert_eq!(t.to_string(), "{1324,2143,3421}");
        assert!("1324,1324,2143".parse::<PatternTriple>().is_err());
        assert!("1324,2143".parse::<PatternTriple>().is_err());
        assert!("1324,213,2143".parse::<PatternTriple>().is_err());
    }

    #[test]
    fn orbit_contains_self_and_divides_eight() {
        let t: PatternTriple = "1324,2143,3412".parse().unwrap();
        let orbit = t.symmetry_class();
        assert!(orbit.contains(&t));
        assert_eq!(8 % orbit.len(), 0);
        // every element of this triple is fixed by reverse-complement and inverse
        assert_eq!(orbit.len(), 2);
    }

    #[test]
    fn symmetry_group_is_closed() {
        let p = perm("2413576");
        let images: BTreeSet<Permutation> = Symmetry::all().map(|g| g.apply(&p)).collect();
        for g in Symmetry::all() {
            for q in &images {
                assert!(images.contains(&g.apply(q)));
            }
        }
    }

    proptest! {
        #[test]
        fn matcher_agrees_with_naive_scan(host in arb_perm(8), q in arb_perm(4)) {
            let q = Pattern::new(q);
            prop_assert_eq!(contains(&host, &q), contains_naive(&host, &q));
        }

        #[test]
        fn containment_is_symmetry_invariant(host in arb_perm(8), q in arb_perm(4)) {
            let q = Pattern::new(q);
            let c = contains(&host, &q);
            for g in Symmetry::all() {
                prop_assert_eq!(c, contains(&g.apply(&host), &Pattern::new(g.apply(q.perm()))));
            }
        }

        #[test]
        fn containment_monotone_under_extension(host in arb_perm(8), q in arb_perm(4), cut in 0usize..=8) {
            let q = Pattern::new(q);
            let cut = cut.min(host.len());
            let prefix = standardize(&host.values()[..cut]).unwrap();
            if contains(&prefix, &q) {
                prop_assert!(contains(&host, &q));
            }
        }

        #[test]
        fn standardize_is_idempotent(p in arb_perm(9)) {
            prop_assert_eq!(standardize(p.values()).unwrap(), p);
        }

        #[test]
        fn left_right_maxima_bounds(p in arb_perm(9)) {
            let m = p.left_right_maxima();
            if !p.is_empty() {
                prop_assert!(m >= 1);
            }
            prop_assert_eq!(m == p.len(), p == Permutation::identity(p.len()));
        }
    }

    #[test]
    fn matcher_agrees_with_naive_on_random_s7() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let q = pat("1324");
        for _ in 0..500 {
            let mut v: Vec<usize> = (1..=7).collect();
            v.shuffle(&mut rng);
            let host = Permutation::new(v).unwrap();
            assert_eq!(contains(&host, &q), contains_naive(&host, &q));
        }
    }
}
