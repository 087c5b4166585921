//! Labelled generating forests for avoiders, grown by inserting a new
//! maximum into the active sites of each permutation.
//!
//! A [`RuleSystem`] supplies root labels at level 2 and the ordered child
//! labels of each label. [`census`] evolves only the label counts, which is
//! polynomial in the level; [`materialize`] grows the actual permutations
//! for small levels and checks them against the labels the rules predict.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::perm::{PatternTriple, Permutation};

/// A succession-rule system. Roots sit at level 2 and correspond, in order,
/// to the permutations `12` and `21`.
pub trait RuleSystem {
    type Label: Clone + Ord + fmt::Display + fmt::Debug;

    /// The case the forest enumerates.
    fn case_id(&self) -> u32;

    fn triple(&self) -> PatternTriple;

    /// Labels of `12` and `21`.
    fn roots(&self) -> [Self::Label; 2];

    /// Child labels in order of increasing insertion site.
    fn children(&self, label: &Self::Label) -> Vec<Self::Label>;

    /// Number of active sites the label stands for.
    fn active_sites(&self, label: &Self::Label) -> usize;

    /// The label read off a permutation directly, when the labelling is
    /// intrinsic rather than inherited.
    fn observed_label(&self, _perm: &[usize], _active: &[usize]) -> Option<Self::Label> {
        None
    }
}

/// `(k, s)`: `k` active sites, `s` of them right of the last ascent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SiteLabel {
    pub k: usize,
    pub s: usize,
}

impl fmt::Display for SiteLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.s)
    }
}

/// `k^flavor`: `k` active sites, flavor in `1..=5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlavorLabel {
    pub k: usize,
    pub flavor: u8,
}

impl fmt::Display for FlavorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.k, self.flavor)
    }
}

/// Forest for `{1234,1324,3412}`, labelled by active sites and their position
/// relative to the largest ascent index.
#[derive(Debug, Clone, Copy, Default)]
pub struct Case69;

/// Forest for `{1324,3412,3421}` with five label flavors.
#[derive(Debug, Clone, Copy, Default)]
pub struct Case88;

pub fn rules_case69() -> Case69 {
    Case69
}

pub fn rules_case88() -> Case88 {
    Case88
}

fn site(k: usize, s: usize) -> SiteLabel {
    SiteLabel { k, s }
}

fn flav(k: usize, flavor: u8) -> FlavorLabel {
    FlavorLabel { k, flavor }
}

impl RuleSystem for Case69 {
    type Label = SiteLabel;

    fn case_id(&self) -> u32 {
        69
    }

    fn triple(&self) -> PatternTriple {
        "1234,1324,3412".parse::<PatternTriple>().expect("valid triple").with_case_id(69)
    }

    fn roots(&self) -> [SiteLabel; 2] {
        [site(3, 2), site(3, 3)]
    }

    fn children(&self, l: &SiteLabel) -> Vec<SiteLabel> {
        let (k, s) = (l.k, l.s);
        let mut out = Vec::with_capacity(k + 1);
        if s == 0 {
            out.extend((1..=k).map(|j| site(j, 0)));
        } else if s == 1 {
            out.push(site(2, 1));
            out.extend((2..k).map(|j| site(j, 0)));
            out.push(site(k, 1));
        } else if s < k {
            out.push(site(s + 1, s));
            out.extend((3..=k - s + 1).map(|j| site(j, 1)));
            out.push(site(k - s + 2, 2));
            out.extend((k - s + 2..=k).map(|j| site(j, 1)));
        } else {
            out.push(site(k + 1, k + 1));
            out.extend((2..=k).rev().map(|j| site(k + 1, j)));
        }
        out
    }

    fn active_sites(&self, l: &SiteLabel) -> usize {
        l.k
    }

    fn observed_label(&self, perm: &[usize], active: &[usize]) -> Option<SiteLabel> {
        // Sites and ascent indices are 1-based; site i precedes perm[i-1].
        let lai = (1..perm.len()).rev().find(|&j| perm[j - 1] < perm[j]).unwrap_or(0);
        let s = active.iter().filter(|&&site| site > lai).count();
        Some(site(active.len(), s))
    }
}

impl RuleSystem for Case88 {
    type Label = FlavorLabel;

    fn case_id(&self) -> u32 {
        88
    }

    fn triple(&self) -> PatternTriple {
        "1324,3412,3421".parse::<PatternTriple>().expect("valid triple").with_case_id(88)
    }

    fn roots(&self) -> [FlavorLabel; 2] {
        [flav(3, 3), flav(3, 1)]
    }

    /// A range like `2^5 .. m^5` is empty when `m < 2`.
    fn children(&self, l: &FlavorLabel) -> Vec<FlavorLabel> {
        let k = l.k;
        let fives = |hi: usize| (2..=hi).map(|j| flav(j, 5));
        let mut out = Vec::with_capacity(k);
        match l.flavor {
            1 => {
                out.push(flav(3, 1));
                out.extend(fives(k.saturating_sub(2)));
                out.push(flav(k + 1, 1));
                out.push(flav(k + 1, 2));
            }
            2 => {
                out.push(flav(3, 3));
                out.extend(fives(k.saturating_sub(3)));
                out.push(flav(k - 1, 4));
                out.push(flav(k, 4));
                out.push(flav(k + 1, 3));
            }
            3 if k == 2 => {
                out.push(flav(2, 3));
                out.push(flav(3, 4));
            }
            3 => {
                out.push(flav(3, 3));
                out.extend(fives(k.saturating_sub(2)));
                out.push(flav(k, 4));
                out.push(flav(k + 1, 3));
            }
            4 => {
                out.push(flav(2, 3));
                out.extend(fives(k - 1));
                out.push(flav(k + 1, 4));
            }
            5 => out.extend((1..=k).map(|j| flav(j, 5))),
            other => panic!("flavor {other} out of range"),
        }
        out
    }

    fn active_sites(&self, l: &FlavorLabel) -> usize {
        l.k
    }
}

/// Label counts at one level of the forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMultiset<L: Ord> {
    pub level: usize,
    pub counts: BTreeMap<L, BigUint>,
}

impl<L: Ord> LabelMultiset<L> {
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }
}

/// Label censuses for levels `2..=n_max`.
pub fn census<R: RuleSystem>(rs: &R, n_max: usize) -> Vec<LabelMultiset<R::Label>> {
    if n_max < 2 {
        return Vec::new();
    }
    let mut counts: BTreeMap<R::Label, BigUint> = BTreeMap::new();
    for root in rs.roots() {
        *counts.entry(root).or_insert_with(BigUint::zero) += 1u32;
    }
    let mut out = vec![LabelMultiset { level: 2, counts }];
    for level in 3..=n_max {
        let mut next: BTreeMap<R::Label, BigUint> = BTreeMap::new();
        for (label, c) in &out.last().expect("nonempty").counts {
            for child in rs.children(label) {
                *next.entry(child).or_insert_with(BigUint::zero) += c;
            }
        }
        out.push(LabelMultiset { level, counts: next });
    }
    out
}

/// Vertex totals for levels `2..=n_max`.
pub fn level_counts<R: RuleSystem>(rs: &R, n_max: usize) -> Vec<BigUint> {
    census(rs, n_max).iter().map(LabelMultiset::total).collect()
}

/// Outcome of growing the forest as actual permutations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MaterializationReport {
    /// Vertices per level, starting at level 2.
    pub vertices: Vec<usize>,
    pub checked: usize,
    /// Human-readable descriptions of the first disagreements found.
    pub mismatches: Vec<String>,
    pub mismatch_count: usize,
}

impl MaterializationReport {
    pub fn is_ok(&self) -> bool {
        self.mismatch_count == 0
    }

    fn flag(&mut self, msg: String) {
        self.mismatch_count += 1;
        if self.mismatches.len() < 20 {
            self.mismatches.push(msg);
        }
    }
}

/// 1-based sites of `perm` where inserting `n+1` keeps the permutation in
/// the class.
pub fn active_sites(perm: &[usize], triple: &PatternTriple) -> Vec<usize> {
    let n = perm.len();
    (0..=n)
        .filter(|&i| {
            let child = insert_max(perm, i);
            Permutation::from_vec_unchecked(child).avoids_all(triple.patterns())
        })
        .map(|i| i + 1)
        .collect()
}

fn insert_max(perm: &[usize], at: usize) -> Vec<usize> {
    let mut child = Vec::with_capacity(perm.len() + 1);
    child.extend_from_slice(&perm[..at]);
    child.push(perm.len() + 1);
    child.extend_from_slice(&perm[at..]);
    child
}

/// Grows the forest from `12` and `21` up to level `n_max`, carrying the
/// rule-predicted label of every vertex, and checks that it agrees with
/// the permutation: the number of active sites, the number of children,
/// and the directly observed label where the system defines one.
pub fn materialize<R: RuleSystem>(rs: &R, n_max: usize) -> MaterializationReport {
    let triple = rs.triple();
    let mut report = MaterializationReport::default();
    let [r12, r21] = rs.roots();
    let mut level: Vec<(Vec<usize>, R::Label)> = vec![(vec![1, 2], r12), (vec![2, 1], r21)];
    let mut n = 2;
    while n <= n_max {
        report.vertices.push(level.len());
        let mut next = Vec::new();
        for (perm, label) in &level {
            report.checked += 1;
            let active = active_sites(perm, &triple);
            let shown = Permutation::from_vec_unchecked(perm.clone());
            if active.len() != rs.active_sites(label) {
                report.flag(format!(
                    "{shown}: label {label} promises {} active sites, found {}",
                    rs.active_sites(label),
                    active.len()
                ));
            }
            if let Some(observed) = rs.observed_label(perm, &active) {
                if &observed != label {
                    report.flag(format!("{shown}: rules give {label}, permutation has {observed}"));
                }
            }
            let kids = rs.children(label);
            if kids.len() != active.len() {
                report.flag(format!(
                    "{shown}: {label} has {} children by the rules, {} active sites",
                    kids.len(),
                    active.len()
                ));
                continue;
            }
            if n < n_max {
                for (&site, kid) in active.iter().zip(kids) {
                    next.push((insert_max(perm, site - 1), kid));
                }
            }
        }
        level = next;
        n += 1;
    }
    report
}

/// Series `1 + x + Σ_{n≥2} totals[n]·x^n` as integer coefficients `0..=n_max`.
pub fn series_from_levels<R: RuleSystem>(rs: &R, n_max: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::one(); n_max.min(1) + 1];
    out.extend(level_counts(rs, n_max));
    out.truncate(n_max + 1);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::count_avoiders;

    #[test]
    fn case69_rule_examples() {
        let r = Case69;
        assert_eq!(r.children(&site(3, 3)), vec![site(4, 4), site(4, 3), site(4, 2)]);
        assert_eq!(r.children(&site(3, 2)), vec![site(3, 2), site(3, 2), site(3, 1)]);
        assert_eq!(r.children(&site(4, 2)), vec![site(3, 2), site(3, 1), site(4, 2), site(4, 1)]);
        assert_eq!(r.children(&site(3, 0)), vec![site(1, 0), site(2, 0), site(3, 0)]);
        assert_eq!(r.children(&site(4, 1)), vec![site(2, 1), site(2, 0), site(3, 0), site(4, 1)]);
    }

    #[test]
    fn case88_rule_examples() {
        let r = Case88;
        assert_eq!(r.children(&flav(2, 3)), vec![flav(2, 3), flav(3, 4)]);
        assert_eq!(r.children(&flav(1, 5)), vec![flav(1, 5)]);
        assert_eq!(r.children(&flav(3, 1)), vec![flav(3, 1), flav(4, 1), flav(4, 2)]);
        assert_eq!(
            r.children(&flav(5, 2)),
            vec![flav(3, 3), flav(2, 5), flav(4, 4), flav(5, 4), flav(6, 3)]
        );
    }

    #[test]
    fn arity_equals_active_sites() {
        for k in 1..30 {
            for s in 0..=k {
                if k >= 2 || s == 0 {
                    assert_eq!(Case69.children(&site(k, s)).len(), k, "({k},{s})");
                }
            }
            for f in 1..=5u8 {
                let valid = match f {
                    1 => k >= 3,
                    2 => k >= 4,
                    3 => k >= 2,
                    4 => k >= 3,
                    _ => true,
                };
                if valid {
                    assert_eq!(Case88.children(&flav(k, f)).len(), k, "{k}^{f}");
                }
            }
        }
    }

    #[test]
    fn conservation() {
        let c = census(&Case69, 10);
        for w in c.windows(2) {
            let produced: BigUint = w[0]
                .counts
                .iter()
                .map(|(l, n)| n * BigUint::from(Case69.children(l).len()))
                .sum();
            assert_eq!(produced, w[1].total());
        }
    }

    #[test]
    fn levels_match_brute_force() {
        let t69 = Case69.triple();
        let t88 = Case88.triple();
        let l69 = level_counts(&Case69, 10);
        let l88 = level_counts(&Case88, 10);
        for n in 2..=10 {
            assert_eq!(l69[n - 2], count_avoiders(n, &t69), "case 69, n = {n}");
            assert_eq!(l88[n - 2], count_avoiders(n, &t88), "case 88, n = {n}");
        }
    }

    #[test]
    fn materialized_labels_agree() {
        let r69 = materialize(&Case69, 8);
        assert!(r69.is_ok(), "{:?}", r69.mismatches);
        let r88 = materialize(&Case88, 8);
        assert!(r88.is_ok(), "{:?}", r88.mismatches);
        let t = Case69.triple();
        let expect: Vec<usize> = (2..=8).map(|n| count_avoiders(n, &t).try_into().unwrap()).collect();
        assert_eq!(r69.vertices, expect);
    }

    #[test]
    fn observed_label_of_worked_example() {
        let p = [3, 2, 6, 5, 4, 1];
        let t = Case69.triple();
        let active = active_sites(&p, &t);
        assert_eq!(active, vec![1, 2, 3, 4]);
        assert_eq!(Case69.observed_label(&p, &active), Some(site(4, 2)));
    }
}
