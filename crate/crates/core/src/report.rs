//! Verdict records and their text renderings.

use crate::exact::{format_rational, Rational};

/// Outcome of a single exact check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub check: &'static str,
    pub holds: bool,
    /// Left and right sides at the deciding case (first failure, or the last case checked).
    pub lhs: Rational,
    pub rhs: Rational,
    /// Case index of the first failure, if any.
    pub witness: Option<u64>,
    /// Number of cases examined.
    pub cases: u64,
}

impl ToRecord for Report {
    fn to_record(&self) -> Record {
        let mut r = Record::new(self.check);
        r.push("holds", self.holds);
        r.push_rational("lhs", &self.lhs);
        r.push_rational("rhs", &self.rhs);
        r.push(
            "witness",
            self.witness
                .map(|w| w.to_string())
                .unwrap_or_else(|| "none".into()),
        );
        r.push("cases", self.cases);
        r
    }
}

/// An ordered list of `key=value` pairs describing one result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        Record {
            fields: vec![("kind".into(), kind.into())],
        }
    }

    pub fn push(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn push_rational(&mut self, key: &str, q: &Rational) -> &mut Self {
        self.push(key, format_rational(q))
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// One self-describing line: `kind=cov lhs=4/3 ...`.
    pub fn machine_line(&self) -> String {
        self.fields
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Aligned `key: value` lines for humans.
    pub fn text_block(&self) -> String {
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        self.fields
            .iter()
            .map(|(k, v)| format!("{k:>width$}: {v}\n"))
            .collect()
    }
}

pub trait ToRecord {
    fn to_record(&self) -> Record;
}
