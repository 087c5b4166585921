use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use super::{eval, parse_with_bindings, GfExpr};
use crate::error::{Error, Result};
use crate::perm::PatternTriple;
use crate::series::LaurentSeries;

/// Environment variable naming a registry file that replaces the built-in one.
pub const REGISTRY_ENV: &str = "PATWILF_REGISTRY";

const BUILTIN: &str = include_str!("../../data/registry.txt");

/// A case number, optionally qualified by a lemma tag (`49`, `49.H`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CaseId {
    pub number: u32,
    pub lemma: Option<String>,
}

impl CaseId {
    pub fn main(number: u32) -> Self {
        CaseId { number, lemma: None }
    }

    pub fn is_main(&self) -> bool {
        self.lemma.is_none()
    }
}

impl From<u32> for CaseId {
    fn from(n: u32) -> Self {
        CaseId::main(n)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lemma {
            Some(l) => write!(f, "{}.{l}", self.number),
            None => write!(f, "{}", self.number),
        }
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("invalid case id `{s}`"));
        let (num, lemma) = match s.split_once('.') {
            Some((n, l)) => {
                if l.is_empty() || !l.chars().all(|c| c.is_ascii_alphanumeric()) {
                    return Err(bad());
                }
                (n, Some(l.to_string()))
            }
            None => (s, None),
        };
        let number = num.parse().map_err(|_| bad())?;
        Ok(CaseId { number, lemma })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegistryEntry {
    pub case_id: CaseId,
    pub triple: PatternTriple,
    /// `let` lines in file order, as (name, text).
    pub bindings: Vec<(String, String)>,
    pub expr_text: String,
    /// The expression with every binding expanded.
    pub expr: GfExpr,
    pub provenance: String,
    /// 1-based line of the `case:` header.
    pub line: usize,
}

impl RegistryEntry {
    /// The entry's power series below `x^order`.
    pub fn series(&self, order: i32) -> Result<LaurentSeries> {
        let s = eval(&self.expr, order)?;
        if s.valuation() < 0 {
            return Err(Error::Validation(format!(
                "case {} has a pole of order {} at x = 0",
                self.case_id,
                -s.valuation()
            )));
        }
        Ok(s)
    }
}

#[derive(Debug, Clone)]
pub struct Registry {
    entries: Vec<RegistryEntry>,
}

impl Registry {
    /// The registry compiled into the library.
    pub fn builtin() -> Self {
        Self::parse_str(BUILTIN).expect("built-in registry is well-formed")
    }

    /// The file named by `PATWILF_REGISTRY`, or the built-in registry.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(REGISTRY_ENV) {
            Some(path) if !path.is_empty() => Self::load(Path::new(&path)),
            _ => Ok(Self::builtin()),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse_str(&text)
    }

    pub fn parse_str(text: &str) -> Result<Self> {
        let mut entries: Vec<RegistryEntry> = Vec::new();
        let mut stanza = Stanza::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                stanza.finish(&mut entries)?;
                continue;
            }
            if line.starts_with('#') {
                continue;
            }
            stanza.feed(line, line_no)?;
        }
        stanza.finish(&mut entries)?;
        Ok(Registry { entries })
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    /// Entries without a lemma tag.
    pub fn main_entries(&self) -> impl Iterator<Item = &RegistryEntry> {
        self.entries.iter().filter(|e| e.case_id.is_main())
    }

    pub fn get(&self, id: &CaseId) -> Result<&RegistryEntry> {
        self.entries
            .iter()
            .find(|e| &e.case_id == id)
            .ok_or_else(|| Error::CaseNotFound(id.to_string()))
    }

    pub fn case(&self, number: u32) -> Result<&RegistryEntry> {
        self.get(&CaseId::main(number))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn load_err(line: usize, message: impl Into<String>) -> Error {
    Error::RegistryLoad {
        line,
        message: message.into(),
    }
}

#[derive(Default)]
struct Stanza {
    start: usize,
    case_id: Option<CaseId>,
    triple: Option<PatternTriple>,
    bindings: Vec<(String, String)>,
    expanded: HashMap<String, GfExpr>,
    f: Option<(String, GfExpr)>,
    provenance: Option<String>,
}

impl Stanza {
    fn feed(&mut self, line: &str, line_no: usize) -> Result<()> {
        if self.start == 0 {
            self.start = line_no;
        }
        let located = |e: Error| load_err(line_no, e.to_string());
        if let Some(rest) = line.strip_prefix("let ") {
            let (name, body) = rest
                .split_once('=')
                .ok_or_else(|| load_err(line_no, "expected `let <name> = <expr>`"))?;
            let name = name.trim();
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid || matches!(name, "x" | "C" | "r5" | "sqrt") {
                return Err(load_err(line_no, format!("invalid binding name `{name}`")));
            }
            if self.f.is_some() {
                return Err(load_err(line_no, "`let` after `f:`"));
            }
            let e = parse_with_bindings(body.trim(), &self.expanded).map_err(located)?;
            self.expanded.insert(name.to_string(), e);
            self.bindings.push((name.to_string(), body.trim().to_string()));
            return Ok(());
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| load_err(line_no, format!("unrecognized line `{line}`")))?;
        let value = value.trim();
        let dup = |k: &str| load_err(line_no, format!("repeated `{k}:` in one stanza"));
        match key.trim() {
            "case" => {
                if self.case_id.is_some() {
                    return Err(dup("case"));
                }
                self.case_id = Some(value.parse().map_err(located)?);
            }
            "triple" => {
                if self.triple.is_some() {
                    return Err(dup("triple"));
                }
                self.triple = Some(value.parse().map_err(located)?);
            }
            "f" => {
                if self.f.is_some() {
                    return Err(dup("f"));
                }
                let e = parse_with_bindings(value, &self.expanded).map_err(located)?;
                self.f = Some((value.to_string(), e));
            }
            "ref" => {
                if self.provenance.is_some() {
                    return Err(dup("ref"));
                }
                self.provenance = Some(value.to_string());
            }
            other => return Err(load_err(line_no, format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    fn finish(&mut self, entries: &mut Vec<RegistryEntry>) -> Result<()> {
        if self.start == 0 {
            return Ok(());
        }
        let s = std::mem::take(self);
        let missing = |k: &str| load_err(s.start, format!("stanza is missing `{k}:`"));
        let case_id = s.case_id.clone().ok_or_else(|| missing("case"))?;
        let mut triple = s.triple.clone().ok_or_else(|| missing("triple"))?;
        let (expr_text, expr) = s.f.clone().ok_or_else(|| missing("f"))?;
        if entries.iter().any(|e| e.case_id == case_id) {
            return Err(load_err(s.start, format!("duplicate case id {case_id}")));
        }
        triple = triple.with_case_id(case_id.number);
        entries.push(RegistryEntry {
            case_id,
            triple,
            bindings: s.bindings,
            expr_text,
            expr,
            provenance: s.provenance.unwrap_or_default(),
            line: s.start,
        });
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn builtin_contents() {
        let r = Registry::builtin();
        let mains: Vec<u32> = r.main_entries().map(|e| e.case_id.number).collect();
        assert_eq!(
            mains,
            vec![
                29, 30, 35, 49, 69, 72, 75, 76, 80, 84, 86, 88, 93, 99, 132, 150, 151, 153, 156, 158, 172,
                180, 184, 187, 193, 195, 210, 211, 212, 213, 227, 231, 241
            ]
        );
        for lemma in ["49.H", "49.G2", "80.G2", "84.G2", "151.J0", "151.J"] {
            r.get(&lemma.parse().unwrap()).unwrap();
        }
        assert_eq!(r.case(237).unwrap_err(), Error::CaseNotFound("237".into()));
        assert_eq!(r.case(29).unwrap().triple.to_string(), "{1324,2143,3421}");
        let e241 = r.case(241).unwrap();
        assert_eq!(e241.bindings.len(), 2);
        assert!(e241.bindings[0].1.contains("r5") && e241.bindings[0].1.contains("sqrt"));
    }

    #[test]
    fn small_coefficients_of_main_entries() {
        let r = Registry::builtin();
        let want: Vec<BigInt> = [1, 1, 2, 6, 21].iter().map(|&v| BigInt::from(v)).collect();
        for e in r.main_entries() {
            let c = e.series(5).unwrap().integer_coefficients(5).unwrap();
            assert_eq!(c, want, "case {}", e.case_id);
        }
    }

    #[test]
    fn render_round_trip() {
        for e in Registry::builtin().entries() {
            assert_eq!(super::super::parse(&e.expr.render()).unwrap(), e.expr, "case {}", e.case_id);
        }
    }

    #[test]
    fn load_errors() {
        let dup = "case: 1\ntriple: 1324,1234,4321\nf: 1\n\ncase: 1\ntriple: 1324,1234,4321\nf: x\n";
        assert_eq!(
            Registry::parse_str(dup).unwrap_err(),
            Error::RegistryLoad { line: 5, message: "duplicate case id 1".into() }
        );
        let bad = "# c\ncase: 2\ntriple: 1324,1234,4321\nf: (1-x\n";
        assert!(matches!(Registry::parse_str(bad), Err(Error::RegistryLoad { line: 4, .. })));
        let bad_triple = "case: 2\ntriple: 1324,1324,4321\nf: 1\n";
        assert!(matches!(Registry::parse_str(bad_triple), Err(Error::RegistryLoad { line: 2, .. })));
        assert!(matches!(Registry::parse_str("case: 3\nf: 1\n"), Err(Error::RegistryLoad { line: 1, .. })));
        assert!(matches!(Registry::parse_str("hello\n"), Err(Error::RegistryLoad { line: 1, .. })));
    }

    #[test]
    fn case_ids() {
        assert_eq!("49.G2".parse::<CaseId>().unwrap().to_string(), "49.G2");
        assert_eq!("241".parse::<CaseId>().unwrap(), CaseId::main(241));
        assert!("x".parse::<CaseId>().is_err());
        assert!("49.".parse::<CaseId>().is_err());
    }
}
