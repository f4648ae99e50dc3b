//! Verification report shared by the verify_* operations.

use num_bigint::BigInt;

use crate::qpoly::QPoly;

/// Value attached to a report line: exact polynomial, exact integer, or a
/// short status text.
#[derive(Clone, Debug)]
pub enum ReportValue {
    Poly(QPoly),
    Int(BigInt),
    Text(String),
}

impl std::fmt::Display for ReportValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReportValue::Poly(p) => write!(f, "{p}"),
            ReportValue::Int(n) => write!(f, "{n}"),
            ReportValue::Text(t) => write!(f, "{t}"),
        }
    }
}

/// One checked item: a key (usually a partition or divisor), the computed
/// value, and whether the check passed.
#[derive(Clone, Debug)]
pub struct ReportItem {
    pub key: String,
    pub value: ReportValue,
    pub pass: bool,
}

/// Outcome of a verifier run, in canonical (deterministic) item order.
#[derive(Clone, Debug)]
pub struct Report {
    pub title: String,
    pub items: Vec<ReportItem>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            items: Vec::new(),
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: ReportValue, pass: bool) {
        self.items.push(ReportItem {
            key: key.into(),
            value,
            pass,
        });
    }

    pub fn push_text(&mut self, key: impl Into<String>, value: impl Into<String>, pass: bool) {
        self.push(key, ReportValue::Text(value.into()), pass);
    }

    pub fn push_poly(&mut self, key: impl Into<String>, value: &QPoly, pass: bool) {
        self.push(key, ReportValue::Poly(value.clone()), pass);
    }

    pub fn push_int(&mut self, key: impl Into<String>, value: impl Into<BigInt>, pass: bool) {
        self.push(key, ReportValue::Int(value.into()), pass);
    }

    pub fn pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }
}
