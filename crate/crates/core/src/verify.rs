//! Cross-checks of registry formulas against brute-force counts, one record
//! per case, length and channel.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rayon::prelude::*;
use serde_json::{Map, Number, Value};

use crate::enumerate::{count_avoiders, count_refined, count_shape, Shape, StatValue, StatisticKey};
use crate::error::{Error, Result};
use crate::gentree::{level_counts, Case69, Case88, RuleSystem};
use crate::gf::{CaseId, Registry, RegistryEntry};
use crate::perm::PatternTriple;
use crate::recurrences::{table_case231, table_case241};

/// Source of the claimed count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Channel {
    /// registry series coefficient
    Series,
    /// generating-forest level total
    Tree,
    /// recurrence-table row sum
    Recurrence,
    /// lemma-level series against a statistic-filtered count
    Refined,
}

impl Channel {
    pub const ALL: [Channel; 4] = [Channel::Series, Channel::Tree, Channel::Recurrence, Channel::Refined];

    pub fn name(&self) -> &'static str {
        match self {
            Channel::Series => "SERIES",
            Channel::Tree => "TREE",
            Channel::Recurrence => "RECURRENCE",
            Channel::Refined => "REFINED",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Channel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Channel::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidInput(format!("unknown channel `{s}`")))
    }
}

/// A claimed count; non-integers are kept as text so they can be reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claimed {
    Integer(BigInt),
    Other(String),
}

impl fmt::Display for Claimed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claimed::Integer(v) => write!(f, "{v}"),
            Claimed::Other(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationRecord {
    pub case: CaseId,
    pub n: usize,
    pub channel: Channel,
    pub brute: BigUint,
    pub claimed: Claimed,
    pub matched: bool,
    pub elapsed_ms: u64,
}

impl VerificationRecord {
    fn new(case: CaseId, n: usize, channel: Channel, brute: BigUint, claimed: Claimed, started: Instant) -> Self {
        let matched = matches!(&claimed, Claimed::Integer(c) if *c == BigInt::from(brute.clone()));
        VerificationRecord {
            case,
            n,
            channel,
            brute,
            claimed,
            matched,
            elapsed_ms: started.elapsed().as_millis() as u64,
        }
    }

    /// One JSON object with keys `case`, `n`, `channel`, `brute`, `claimed`,
    /// `match`, `elapsed_ms`. Counts are exact JSON integers; `case` is an
    /// integer for main cases and a string such as `"49.G2"` for lemmas.
    pub fn to_json(&self) -> Value {
        let exact = |s: String| Value::Number(s.parse::<Number>().expect("decimal integer"));
        let mut m = Map::new();
        m.insert(
            "case".into(),
            if self.case.is_main() {
                Value::from(self.case.number)
            } else {
                Value::from(self.case.to_string())
            },
        );
        m.insert("n".into(), Value::from(self.n));
        m.insert("channel".into(), Value::from(self.channel.name()));
        m.insert("brute".into(), exact(self.brute.to_string()));
        m.insert(
            "claimed".into(),
            match &self.claimed {
                Claimed::Integer(v) => exact(v.to_string()),
                Claimed::Other(s) => Value::from(s.clone()),
            },
        );
        m.insert("match".into(), Value::from(self.matched));
        m.insert("elapsed_ms".into(), Value::from(self.elapsed_ms));
        Value::Object(m)
    }

    pub fn to_json_line(&self) -> String {
        self.to_json().to_string()
    }
}

/// The statistic a lemma entry refines, keyed by its tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaStatistic {
    /// avoiders with exactly this many left-right maxima
    LrMaxima(usize),
    Shape(Shape),
    /// avoiders whose largest letter is second
    MaxSecond,
}

pub fn lemma_statistic(id: &CaseId) -> Option<LemmaStatistic> {
    match id.lemma.as_deref()? {
        "H" => Some(LemmaStatistic::Shape(Shape::SecondLargestFirstThenMax)),
        "G2" => Some(LemmaStatistic::LrMaxima(2)),
        "J0" => Some(LemmaStatistic::Shape(Shape::FirstIsDPlus1ThenMax { d: 0 })),
        "J" => Some(LemmaStatistic::MaxSecond),
        _ => None,
    }
}

/// Brute-force count of avoiders of length `n` with the statistic.
pub fn lemma_count(stat: LemmaStatistic, n: usize, t: &PatternTriple) -> BigUint {
    match stat {
        LemmaStatistic::LrMaxima(m) => count_refined(n, t, StatisticKey::LrMaxima)
            .remove(&StatValue::Single(m))
            .unwrap_or_default(),
        LemmaStatistic::Shape(s) => count_shape(n, t, s),
        LemmaStatistic::MaxSecond => (0..n.saturating_sub(1))
            .map(|d| count_shape(n, t, Shape::FirstIsDPlus1ThenMax { d }))
            .sum(),
    }
}

/// Channels that apply to a case beyond the series check.
pub fn channels_for(registry: &Registry, case: u32) -> Vec<Channel> {
    let mut out = vec![Channel::Series];
    match case {
        69 | 88 => out.push(Channel::Tree),
        231 | 241 => out.push(Channel::Recurrence),
        _ => {}
    }
    if registry
        .entries()
        .iter()
        .any(|e| e.case_id.number == case && lemma_statistic(&e.case_id).is_some())
    {
        out.push(Channel::Refined);
    }
    out
}

fn series_claims(entry: &RegistryEntry, n_max: usize) -> Result<Vec<Claimed>> {
    let s = entry.series(n_max as i32 + 1)?;
    (0..=n_max as i32)
        .map(|k| {
            let c = s.coefficient(k)?;
            Ok(match c.as_integer() {
                Some(v) => Claimed::Integer(v),
                None => Claimed::Other(c.to_string()),
            })
        })
        .collect()
}

fn tree_claims(case: u32, n_max: usize) -> Vec<BigUint> {
    let levels = match case {
        69 => level_counts(&Case69, n_max.max(2)),
        _ => level_counts(&Case88, n_max.max(2)),
    };
    let mut out = vec![BigUint::one(), BigUint::one()];
    out.extend(levels);
    out.truncate(n_max + 1);
    out
}

fn tree_triple(case: u32) -> PatternTriple {
    match case {
        69 => Case69.triple(),
        _ => Case88.triple(),
    }
}

/// Runs the requested channels for one case at every length `0..=n_max`.
pub fn verify_case(registry: &Registry, case: u32, n_max: usize, channels: &[Channel]) -> Result<Vec<VerificationRecord>> {
    let entry = registry.case(case)?;
    let available = channels_for(registry, case);
    for ch in channels {
        if !available.contains(ch) {
            return Err(Error::InvalidInput(format!("channel {ch} does not apply to case {case}")));
        }
    }
    let t = &entry.triple;
    let mut brute_cache: BTreeMap<usize, BigUint> = BTreeMap::new();
    let mut brute_at = |n: usize| -> BigUint { brute_cache.entry(n).or_insert_with(|| count_avoiders(n, t)).clone() };
    let mut records = Vec::new();
    for &ch in channels {
        match ch {
            Channel::Series => {
                let claims = series_claims(entry, n_max)?;
                for (n, claim) in claims.into_iter().enumerate() {
                    let started = Instant::now();
                    let b = brute_at(n);
                    records.push(VerificationRecord::new(entry.case_id.clone(), n, ch, b, claim, started));
                }
            }
            Channel::Tree => {
                if tree_triple(case) != *t {
                    return Err(Error::Validation(format!("forest and registry disagree on the triple of case {case}")));
                }
                for (n, claim) in tree_claims(case, n_max).into_iter().enumerate() {
                    let started = Instant::now();
                    let b = brute_at(n);
                    records.push(VerificationRecord::new(
                        entry.case_id.clone(),
                        n,
                        ch,
                        b,
                        Claimed::Integer(claim.into()),
                        started,
                    ));
                }
            }
            Channel::Recurrence => {
                let table = if case == 231 { table_case231(n_max.max(1)) } else { table_case241(n_max.max(2)) };
                if table.triple() != *t {
                    return Err(Error::Validation(format!("recurrence and registry disagree on the triple of case {case}")));
                }
                for n in 0..=n_max {
                    let started = Instant::now();
                    let b = brute_at(n);
                    let claim = Claimed::Integer(table.total(n).into());
                    records.push(VerificationRecord::new(entry.case_id.clone(), n, ch, b, claim, started));
                }
            }
            Channel::Refined => {
                for lemma in registry.entries().iter().filter(|e| e.case_id.number == case) {
                    let Some(stat) = lemma_statistic(&lemma.case_id) else { continue };
                    let claims = series_claims(lemma, n_max)?;
                    for (n, claim) in claims.into_iter().enumerate() {
                        let started = Instant::now();
                        let b = lemma_count(stat, n, &lemma.triple);
                        records.push(VerificationRecord::new(lemma.case_id.clone(), n, ch, b, claim, started));
                    }
                }
            }
        }
    }
    sort_records(&mut records);
    Ok(records)
}

/// Series channel for every main registry entry.
pub fn verify_all(registry: &Registry, n_max: usize) -> Result<Vec<VerificationRecord>> {
    let cases: Vec<u32> = registry.main_entries().map(|e| e.case_id.number).collect();
    let per_case: Vec<Vec<VerificationRecord>> = cases
        .par_iter()
        .map(|&c| verify_case(registry, c, n_max, &[Channel::Series]))
        .collect::<Result<_>>()?;
    let mut records: Vec<VerificationRecord> = per_case.into_iter().flatten().collect();
    sort_records(&mut records);
    Ok(records)
}

pub fn sort_records(records: &mut [VerificationRecord]) {
    records.sort_by(|a, b| (&a.case, a.n, a.channel).cmp(&(&b.case, b.n, b.channel)));
}

/// Plain-text table: one row per case and channel.
pub fn summary_table(records: &[VerificationRecord]) -> String {
    let mut groups: BTreeMap<(CaseId, Channel), (usize, usize, usize)> = BTreeMap::new();
    for r in records {
        let g = groups.entry((r.case.clone(), r.channel)).or_insert((usize::MAX, 0, 0));
        g.0 = g.0.min(r.n);
        g.1 = g.1.max(r.n);
        if !r.matched {
            g.2 += 1;
        }
    }
    let mut out = format!("{:<8} {:<11} {:>7} {}\n", "case", "channel", "n", "status");
    for ((case, ch), (lo, hi, bad)) in groups {
        let status = if bad == 0 { "ok".to_string() } else { format!("MISMATCH ({bad})") };
        out.push_str(&format!("{:<8} {:<11} {:>7} {}\n", case.to_string(), ch.name(), format!("{lo}..{hi}"), status));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let r = VerificationRecord {
            case: CaseId::main(80),
            n: 4,
            channel: Channel::Series,
            brute: 21u32.into(),
            claimed: Claimed::Integer(21.into()),
            matched: true,
            elapsed_ms: 0,
        };
        assert_eq!(
            r.to_json_line(),
            r#"{"case":80,"n":4,"channel":"SERIES","brute":21,"claimed":21,"match":true,"elapsed_ms":0}"#
        );
        let big = VerificationRecord { brute: "123456789012345678901234567890".parse().unwrap(), ..r };
        assert!(big.to_json_line().contains(r#""brute":123456789012345678901234567890"#));
    }

    #[test]
    fn channels() {
        let reg = Registry::builtin();
        assert_eq!(channels_for(&reg, 69), vec![Channel::Series, Channel::Tree]);
        assert_eq!(channels_for(&reg, 241), vec![Channel::Series, Channel::Recurrence]);
        assert_eq!(channels_for(&reg, 151), vec![Channel::Series, Channel::Refined]);
        assert_eq!(channels_for(&reg, 29), vec![Channel::Series]);
        assert!(verify_case(&reg, 29, 5, &[Channel::Tree]).is_err());
        assert_eq!(verify_case(&reg, 237, 5, &[Channel::Series]).unwrap_err(), Error::CaseNotFound("237".into()));
        assert_eq!("tree".parse::<Channel>().unwrap(), Channel::Tree);
    }

    #[test]
    fn all_channels_agree_small() {
        let reg = Registry::builtin();
        for case in [49, 69, 80, 84, 88, 151, 231, 241] {
            let chans = channels_for(&reg, case);
            let recs = verify_case(&reg, case, 8, &chans).unwrap();
            let bad: Vec<_> = recs.iter().filter(|r| !r.matched).collect();
            assert!(bad.is_empty(), "{bad:?}");
        }
    }

    #[test]
    fn records_sorted_and_summarized() {
        let reg = Registry::builtin();
        let recs = verify_case(&reg, 88, 4, &[Channel::Tree, Channel::Series]).unwrap();
        assert_eq!(recs.len(), 10);
        assert_eq!((recs[0].n, recs[0].channel), (0, Channel::Series));
        assert_eq!((recs[1].n, recs[1].channel), (0, Channel::Tree));
        let table = summary_table(&recs);
        assert!(table.contains("88       SERIES         0..4 ok"), "{table}");
    }

    #[test]
    fn two_maxima_form_with_geometric_term_undercounts() {
        // The same sum with x^4/(1-2x) in place of x^4 L^2/(1-x) falls short
        // by exactly x^5/((1-x)(1-2x)^2).
        let reg = Registry::builtin();
        let h = &reg.get(&"49.H".parse().unwrap()).unwrap().expr;
        let mut b = std::collections::HashMap::new();
        b.insert("H".to_string(), h.clone());
        let variant = crate::gf::parse_with_bindings(
            "(x^4*C^5+x^5/(1-x)^5+x^5/(1-x)^4+x^4/(1-2*x)+H)/(1-x)",
            &b,
        )
        .unwrap();
        let variant = crate::gf::eval(&variant, 12).unwrap();
        let used = reg.get(&"49.G2".parse().unwrap()).unwrap().series(12).unwrap();
        let gap = crate::gf::eval(&crate::gf::parse("x^5/((1-x)*(1-2*x)^2)").unwrap(), 12).unwrap();
        assert_eq!(&used - &variant, gap);
        let t = &reg.case(49).unwrap().triple;
        for n in 0..=9 {
            let c = used.coefficient(n as i32).unwrap().as_integer().unwrap();
            assert_eq!(BigInt::from(lemma_count(LemmaStatistic::LrMaxima(2), n, t)), c);
        }
    }
}
