//! The golden corpus: presentations with a known classification.
//!
//! `orsolv examples` runs it and exits nonzero on any mismatch.

use crate::classifier::{classify, Certificate, CertificateKind, Status, Verdict};
use crate::presentation::Presentation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Detail {
    None,
    Power(usize),
    Tower(usize),
    Genus(usize),
    MagnusSpan(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    /// A certificate of this kind must be present; when `primary` is set it
    /// must also come first.
    Certificate {
        kind: CertificateKind,
        detail: Detail,
        primary: bool,
    },
    KnownNotResiduallySolvable,
}

#[derive(Clone, Debug)]
pub struct GoldenCase {
    pub name: &'static str,
    pub text: String,
    pub expected: Expected,
}

/// `[a, [a,b][w,w^b]]` with `w = [a,b]^-1 [a,b]^a`, written out.
pub const REGISTRY_TEXT: &str = "a,b ; [a, [a,b] [([a,b]^-1 [a,b]^a), ([a,b]^-1 [a,b]^a)^b]]";

fn tower_text(k: usize) -> String {
    let mut s = "x".to_string();
    for _ in 0..k {
        s = format!("[{s},y]");
    }
    format!("x,y ; {s}")
}

pub fn corpus() -> Vec<GoldenCase> {
    use CertificateKind as K;
    let cert = |kind, detail, primary| Expected::Certificate {
        kind,
        detail,
        primary,
    };
    let mut v = vec![GoldenCase {
        name: "positive relator",
        text: "a,b ; abab".into(),
        expected: cert(K::PositiveRelator, Detail::None, true),
    }];
    for n in 1..=3 {
        v.push(GoldenCase {
            name: "commutator power family",
            text: format!("a,b ; [a,[a,b]^{n}]"),
            expected: cert(K::CommutatorPowerFamily, Detail::Power(n), n > 1),
        });
    }
    for k in 1..=3 {
        v.push(GoldenCase {
            name: "basic tower",
            text: tower_text(k),
            expected: cert(K::BasicTower, Detail::Tower(k), k == 3),
        });
    }
    v.push(GoldenCase {
        name: "surface relator",
        text: "a,b,c,d ; [a,b][c,d]".into(),
        expected: cert(K::SurfaceRelator, Detail::Genus(2), false),
    });
    v.push(GoldenCase {
        name: "registered counterexample",
        text: REGISTRY_TEXT.into(),
        expected: Expected::KnownNotResiduallySolvable,
    });
    v.push(GoldenCase {
        name: "magnus free-by-cyclic",
        text: "a,b ; [a,[a,b]]".into(),
        expected: cert(K::MagnusFreeByCyclic, Detail::MagnusSpan(3), false),
    });
    v
}

fn detail_of(c: &Certificate) -> Detail {
    match c {
        Certificate::CommutatorPowerFamily { n, .. } => Detail::Power(*n),
        Certificate::BasicTower(m) => Detail::Tower(m.k),
        Certificate::SurfaceRelator { pairs } => Detail::Genus(pairs.len()),
        Certificate::MagnusFreeByCyclic(v) => Detail::MagnusSpan(v.span),
        _ => Detail::None,
    }
}

pub fn matches(expected: &Expected, v: &Verdict) -> bool {
    match *expected {
        Expected::KnownNotResiduallySolvable => {
            v.status == Status::KnownNotResiduallySolvable && v.certificates.is_empty()
        }
        Expected::Certificate {
            kind,
            detail,
            primary,
        } => {
            if v.status != Status::CertifiedResiduallySolvable {
                return false;
            }
            let found = v
                .certificates
                .iter()
                .any(|c| c.kind() == kind && (detail == Detail::None || detail_of(c) == detail));
            found && (!primary || v.primary().map(|c| c.kind()) == Some(kind))
        }
    }
}

fn detail_suffix(d: Detail) -> String {
    match d {
        Detail::None => String::new(),
        Detail::Power(n) => format!("(n={n})"),
        Detail::Tower(k) => format!("(k={k})"),
        Detail::Genus(g) => format!("(genus={g})"),
        Detail::MagnusSpan(s) => format!("(span={s})"),
    }
}

pub fn describe_expected(e: &Expected) -> String {
    match *e {
        Expected::KnownNotResiduallySolvable => Status::KnownNotResiduallySolvable.name().into(),
        Expected::Certificate {
            kind,
            detail,
            primary,
        } => {
            let p = if primary { " primary" } else { "" };
            format!("{}{}{p}", kind.name(), detail_suffix(detail))
        }
    }
}

pub fn describe_actual(v: &Verdict) -> String {
    if v.certificates.is_empty() {
        return v.status.name().to_string();
    }
    v.certificates
        .iter()
        .map(|c| format!("{}{}", c.kind().name(), detail_suffix(detail_of(c))))
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Clone, Debug)]
pub struct GoldenOutcome {
    pub case: GoldenCase,
    pub actual: String,
    pub ok: bool,
}

/// Runs every case. A case that fails to parse counts as a mismatch.
pub fn run_corpus() -> Vec<GoldenOutcome> {
    corpus()
        .into_iter()
        .map(|case| match Presentation::parse(&case.text) {
            Ok(p) => {
                let v = classify(&p);
                GoldenOutcome {
                    ok: matches(&case.expected, &v),
                    actual: describe_actual(&v),
                    case,
                }
            }
            Err(e) => GoldenOutcome {
                actual: format!("parse error: {e}"),
                ok: false,
                case,
            },
        })
        .collect()
}
