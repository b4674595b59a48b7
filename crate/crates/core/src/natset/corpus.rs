use super::{parse_ast, NatSet};
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::path::Path;

/// Named sets available to expressions.
#[derive(Clone, Debug)]
pub struct Corpus {
    sets: BTreeMap<String, NatSet>,
}

impl Corpus {
    /// `pow2`, `qset` and `squares`.
    pub fn builtin() -> Self {
        let mut sets = BTreeMap::new();
        sets.insert("pow2".to_string(), NatSet::powers_of_two());
        sets.insert("qset".to_string(), NatSet::q_set());
        sets.insert("squares".to_string(), NatSet::squares());
        Corpus { sets }
    }

    pub fn get(&self, name: &str) -> Option<&NatSet> {
        self.sets.get(name)
    }

    pub fn insert(&mut self, name: impl Into<String>, set: NatSet) {
        self.sets.insert(name.into(), set);
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.sets.keys().map(String::as_str)
    }

    /// Adds `name = expr` lines; later lines may refer to earlier names.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn load_str(&mut self, text: &str) -> Result<()> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, expr) = line
                .split_once('=')
                .ok_or_else(|| Error::Eval(format!("corpus line {}: expected `name = expr`", lineno + 1)))?;
            let name = name.trim();
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid || matches!(name, "N" | "empty" | "ap" | "per" | "interval") {
                return Err(Error::Eval(format!("corpus line {}: invalid name `{name}`", lineno + 1)));
            }
            let set = parse_ast(expr)
                .and_then(|e| e.eval(self))
                .map_err(|e| Error::Eval(format!("corpus line {}: {e}", lineno + 1)))?;
            self.sets.insert(name.to_string(), set);
        }
        Ok(())
    }

    pub fn load_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Eval(format!("cannot read corpus {}: {e}", path.display())))?;
        self.load_str(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::natset::parse_expr_with;

    #[test]
    fn load_and_reference() {
        let mut c = Corpus::builtin();
        c.load_str("# comment\nevens = ap(0,2)\nodds = evens >> 1\n").unwrap();
        assert_eq!(parse_expr_with("odds", &c).unwrap(), NatSet::ap(1, 2));
        assert!(c.load_str("bad line").is_err());
        assert!(c.load_str("N = ap(0,1)").is_err());
    }
}
