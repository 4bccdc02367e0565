//! The analysis report printed by `orsolv analyze`, in human and JSON form.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::classifier::{classify, Verdict, REGISTRY_REFERENCE};
use crate::magnus::{first_applicable, lemma_check, magnus_rewrite};
use crate::oracle::{build_catalog, separate};
use crate::presentation::{freiheitssatz_report, Presentation};
use crate::word::Word;

pub const SCHEMA: &str = "orsolv/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationEcho {
    pub generators: Vec<String>,
    pub relator: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub kind: String,
    pub summary: String,
    pub witness: Value,
    pub paper_ref: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub a: String,
    pub b: String,
    pub reference: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreiheitssatzEntry {
    pub occurring: Vec<String>,
    pub free_factors: Vec<String>,
    pub maximal_free_bases: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MagnusEntry {
    pub eliminated: String,
    pub r0: String,
    pub mu: i64,
    pub nu: i64,
    pub span: i64,
    pub applicable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleEntry {
    pub word: String,
    pub separated: bool,
    pub group: Option<String>,
    /// Image of each generator, as an element index of `group`.
    pub images: Option<Vec<usize>>,
    pub max_order: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub presentation: PresentationEcho,
    pub status: String,
    pub certificates: Vec<CertificateEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub registry: Option<RegistryEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub freiheitssatz: Option<FreiheitssatzEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub magnus: Option<MagnusEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleEntry>,
    pub timing_ms: u64,
}

/// Classifies `p`, adds Magnus details when some generator has exponent sum
/// zero, and optionally asks the oracle to separate `word` from 1.
pub fn analyze(p: &Presentation, word: Option<(&Word, usize)>) -> (AnalysisReport, Verdict) {
    let start = Instant::now();
    let verdict = classify(p);
    let names = p.generators();
    let show_gen = |g: crate::Gen| names[g.0].clone();

    let certificates = verdict
        .certificates
        .iter()
        .map(|c| CertificateEntry {
            kind: c.kind().name().to_string(),
            summary: c.summary(names),
            witness: c.witness_json(names),
            paper_ref: c.reference().to_string(),
        })
        .collect();

    let registry = verdict.registry.map(|m| RegistryEntry {
        a: show_gen(m.a),
        b: show_gen(m.b),
        reference: REGISTRY_REFERENCE.to_string(),
    });

    let show_all = |gs: &[crate::Gen]| gs.iter().map(|&g| show_gen(g)).collect::<Vec<_>>();
    let freiheitssatz = freiheitssatz_report(p).ok().map(|f| FreiheitssatzEntry {
        occurring: show_all(&f.occurring),
        free_factors: show_all(&f.free_factors),
        maximal_free_bases: f.maximal_free_bases.iter().map(|b| show_all(b)).collect(),
    });

    let magnus = first_applicable(p)
        .or_else(|| lemma_check(p).into_iter().next())
        .and_then(|v| {
            let r0 = magnus_rewrite(p, v.eliminated).ok()?;
            Some(MagnusEntry {
                eliminated: show_gen(v.eliminated),
                r0: r0.display(names).to_string(),
                mu: v.mu,
                nu: v.nu,
                span: v.span,
                applicable: v.applicable,
            })
        });

    let oracle = word.map(|(w, max_order)| {
        let catalog = build_catalog(max_order);
        let sep = separate(p, w, &catalog);
        OracleEntry {
            word: p.show(w),
            separated: sep.is_some(),
            group: sep.as_ref().map(|s| s.group_name.clone()),
            images: sep.map(|s| s.hom.images),
            max_order,
        }
    });

    let report = AnalysisReport {
        schema: SCHEMA.to_string(),
        presentation: PresentationEcho {
            generators: names.to_vec(),
            relator: p.relator_expr().display(names).to_string(),
        },
        status: verdict.status.name().to_string(),
        certificates,
        registry,
        freiheitssatz,
        magnus,
        oracle,
        timing_ms: start.elapsed().as_millis() as u64,
    };
    (report, verdict)
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "schema: {}", self.schema)?;
        writeln!(
            f,
            "presentation: <{} ; {}>",
            self.presentation.generators.join(", "),
            self.presentation.relator
        )?;
        writeln!(f, "status: {}", self.status)?;
        if self.certificates.is_empty() {
            writeln!(f, "certificates: none")?;
        } else {
            writeln!(f, "certificates:")?;
        }
        for (i, c) in self.certificates.iter().enumerate() {
            let tag = if i == 0 { " (primary)" } else { "" };
            writeln!(f, "  - {}{}: {}", c.kind, tag, c.summary)?;
            writeln!(f, "    witness: {}", c.witness)?;
            writeln!(f, "    paper_ref: {}", c.paper_ref)?;
        }
        if let Some(r) = &self.registry {
            writeln!(f, "registry: a = {}, b = {}", r.a, r.b)?;
            writeln!(f, "  reference: {}", r.reference)?;
        }
        if let Some(fr) = &self.freiheitssatz {
            let bases: Vec<String> = fr
                .maximal_free_bases
                .iter()
                .map(|b| format!("{{{}}}", b.join(", ")))
                .collect();
            writeln!(
                f,
                "freiheitssatz: occurring {{{}}}",
                fr.occurring.join(", ")
            )?;
            writeln!(f, "  free_factors: {{{}}}", fr.free_factors.join(", "))?;
            writeln!(f, "  maximal_free_bases: {}", bases.join(" "))?;
        }
        if let Some(m) = &self.magnus {
            writeln!(f, "magnus: eliminated {}", m.eliminated)?;
            writeln!(f, "  r0: {}", m.r0)?;
            writeln!(
                f,
                "  mu = {}, nu = {}, span = {}, applicable = {}",
                m.mu, m.nu, m.span, m.applicable
            )?;
        }
        if let Some(o) = &self.oracle {
            write!(f, "oracle: word {} (max order {}): ", o.word, o.max_order)?;
            match (&o.group, &o.images) {
                (Some(g), Some(im)) => writeln!(f, "separated in {g}, images {im:?}")?,
                _ => writeln!(f, "not separated")?,
            }
        }
        writeln!(f, "timing_ms: {}", self.timing_ms)
    }
}
