//! Sufficient criteria for residual solvability, applied in a fixed order.
//!
//! Every rule that matches contributes a [`Certificate`] carrying enough data
//! to re-check the match without re-running the search ([`verify_certificate`]).
//! All matchers work on the cyclically reduced relator and are invariant under
//! cyclic rotation, inversion, and renaming of generators.

use serde_json::{json, Value};

use crate::hall::{recognize_tower, tower_relator, TowerMatch};
use crate::magnus::{first_applicable, magnus_rewrite, MagnusVerdict};
use crate::presentation::{Presentation, WordExpr};
use crate::word::{cyclically_equivalent, Gen, Word};

/// Rule identifiers, in precedence order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CertificateKind {
    FreeGroup,
    PositiveRelator,
    PositiveQuotientForm,
    CommutatorOfPositiveWords,
    CommutatorPowerFamily,
    BasicTower,
    MagnusFreeByCyclic,
    SurfaceRelator,
}

impl CertificateKind {
    pub const ALL: [CertificateKind; 8] = [
        CertificateKind::FreeGroup,
        CertificateKind::PositiveRelator,
        CertificateKind::PositiveQuotientForm,
        CertificateKind::CommutatorOfPositiveWords,
        CertificateKind::CommutatorPowerFamily,
        CertificateKind::BasicTower,
        CertificateKind::MagnusFreeByCyclic,
        CertificateKind::SurfaceRelator,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::FreeGroup => "FreeGroup",
            CertificateKind::PositiveRelator => "PositiveRelator",
            CertificateKind::PositiveQuotientForm => "PositiveQuotientForm",
            CertificateKind::CommutatorOfPositiveWords => "CommutatorOfPositiveWords",
            CertificateKind::CommutatorPowerFamily => "CommutatorPowerFamily",
            CertificateKind::BasicTower => "BasicTower",
            CertificateKind::MagnusFreeByCyclic => "MagnusFreeByCyclic",
            CertificateKind::SurfaceRelator => "SurfaceRelator",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        CertificateKind::ALL.into_iter().find(|k| k.name() == s)
    }

    /// The result the certificate rests on.
    pub fn reference(self) -> &'static str {
        match self {
            CertificateKind::FreeGroup => {
                "free groups are residually nilpotent, hence residually solvable"
            }
            CertificateKind::PositiveRelator => {
                "G. Baumslag: one-relator groups with a positive relator are residually solvable"
            }
            CertificateKind::PositiveQuotientForm => {
                "G. Baumslag: relator u w^-1 with u, w positive and every exponent sum zero gives a free-by-cyclic group"
            }
            CertificateKind::CommutatorOfPositiveWords => {
                "relator [u, w] with u, w positive is of the form u' w'^-1 with u', w' positive; free-by-cyclic"
            }
            CertificateKind::CommutatorPowerFamily => {
                "<a, b ; [a, [a,b]^n]>: normal closure of b is an ascending union of amalgams of cyclic groups; residually solvable"
            }
            CertificateKind::BasicTower => {
                "<x, y ; [s_k, y]>, s_1 = x, s_(k+1) = [s_k, y]: Magnus breakdown gives free-by-cyclic"
            }
            CertificateKind::MagnusFreeByCyclic => {
                "Magnus breakdown: extreme subscripts occurring once make the normal closure free; free-by-cyclic"
            }
            CertificateKind::SurfaceRelator => {
                "surface groups are fully residually free, hence residually solvable"
            }
        }
    }
}

/// One matched criterion together with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    FreeGroup,
    /// The relator (or its inverse, when `inverted`) is positive.
    PositiveRelator {
        inverted: bool,
    },
    /// The relator is cyclically `u w⁻¹`.
    PositiveQuotientForm {
        u: Word,
        w: Word,
    },
    /// The relator is cyclically `[u, w]` (or its inverse).
    CommutatorOfPositiveWords {
        u: Word,
        w: Word,
        from_expression: bool,
    },
    /// The relator is cyclically `[a, [a,b]^n]` (or its inverse).
    CommutatorPowerFamily {
        n: usize,
        a: Gen,
        b: Gen,
    },
    BasicTower(TowerMatch),
    MagnusFreeByCyclic(MagnusVerdict),
    /// The relator is cyclically `[a₁,b₁]⋯[a_g,b_g]` (or its inverse).
    SurfaceRelator {
        pairs: Vec<(Gen, Gen)>,
    },
}

impl Certificate {
    pub fn kind(&self) -> CertificateKind {
        match self {
            Certificate::FreeGroup => CertificateKind::FreeGroup,
            Certificate::PositiveRelator { .. } => CertificateKind::PositiveRelator,
            Certificate::PositiveQuotientForm { .. } => CertificateKind::PositiveQuotientForm,
            Certificate::CommutatorOfPositiveWords { .. } => {
                CertificateKind::CommutatorOfPositiveWords
            }
            Certificate::CommutatorPowerFamily { .. } => CertificateKind::CommutatorPowerFamily,
            Certificate::BasicTower(_) => CertificateKind::BasicTower,
            Certificate::MagnusFreeByCyclic(_) => CertificateKind::MagnusFreeByCyclic,
            Certificate::SurfaceRelator { .. } => CertificateKind::SurfaceRelator,
        }
    }

    pub fn reference(&self) -> &'static str {
        self.kind().reference()
    }

    /// Short human summary of the witness.
    pub fn summary(&self, names: &[String]) -> String {
        let n = |g: &Gen| {
            names
                .get(g.0)
                .cloned()
                .unwrap_or_else(|| format!("g{}", g.0))
        };
        match self {
            Certificate::FreeGroup => "relator is trivial".into(),
            Certificate::PositiveRelator { inverted } => {
                if *inverted {
                    "inverse of the relator is positive".into()
                } else {
                    "relator is positive".into()
                }
            }
            Certificate::PositiveQuotientForm { u, w } => {
                format!("u = {}, w = {}", u.display(names), w.display(names))
            }
            Certificate::CommutatorOfPositiveWords { u, w, .. } => {
                format!(
                    "[u, w] with u = {}, w = {}",
                    u.display(names),
                    w.display(names)
                )
            }
            Certificate::CommutatorPowerFamily { n: k, a, b } => {
                format!("n = {k}, a = {}, b = {}", n(a), n(b))
            }
            Certificate::BasicTower(m) => format!("k = {}, x = {}, y = {}", m.k, n(&m.x), n(&m.y)),
            Certificate::MagnusFreeByCyclic(v) => format!(
                "eliminate {}, witness {}: mu = {}, nu = {}, span = {}",
                n(&v.eliminated),
                n(&v.witness),
                v.mu,
                v.nu,
                v.span
            ),
            Certificate::SurfaceRelator { pairs } => {
                let shown: Vec<String> = pairs
                    .iter()
                    .map(|(a, b)| format!("[{},{}]", n(a), n(b)))
                    .collect();
                format!("genus {}: {}", pairs.len(), shown.join(""))
            }
        }
    }

    pub fn witness_json(&self, names: &[String]) -> Value {
        let n = |g: &Gen| {
            names
                .get(g.0)
                .cloned()
                .unwrap_or_else(|| format!("g{}", g.0))
        };
        match self {
            Certificate::FreeGroup => json!({}),
            Certificate::PositiveRelator { inverted } => json!({ "inverted": inverted }),
            Certificate::PositiveQuotientForm { u, w } => json!({
                "u": u.display(names).to_string(),
                "w": w.display(names).to_string(),
            }),
            Certificate::CommutatorOfPositiveWords {
                u,
                w,
                from_expression,
            } => json!({
                "u": u.display(names).to_string(),
                "w": w.display(names).to_string(),
                "from_expression": from_expression,
            }),
            Certificate::CommutatorPowerFamily { n: k, a, b } => {
                json!({ "n": k, "a": n(a), "b": n(b) })
            }
            Certificate::BasicTower(m) => json!({ "k": m.k, "x": n(&m.x), "y": n(&m.y) }),
            Certificate::MagnusFreeByCyclic(v) => json!({
                "eliminated": n(&v.eliminated),
                "witness": n(&v.witness),
                "mu": v.mu,
                "nu": v.nu,
                "span": v.span,
                "stated_rank": v.stated_rank,
            }),
            Certificate::SurfaceRelator { pairs } => json!({
                "genus": pairs.len(),
                "pairs": pairs.iter().map(|(a, b)| vec![n(a), n(b)]).collect::<Vec<_>>(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    CertifiedResiduallySolvable,
    KnownNotResiduallySolvable,
    Unknown,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::CertifiedResiduallySolvable => "certified",
            Status::KnownNotResiduallySolvable => "known_not_residually_solvable",
            Status::Unknown => "unknown",
        }
    }
}

/// Generator renaming under which the relator matches the registered
/// non-residually-solvable relator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegistryMatch {
    pub a: Gen,
    pub b: Gen,
}

pub const REGISTRY_REFERENCE: &str =
    "G. Baumslag: [a, [a,b][w,w^b]] with w = [a,b]^-1 [a,b]^a is not residually solvable; w lies in every derived term";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    /// Every matching certificate, in precedence order.
    pub certificates: Vec<Certificate>,
    pub registry: Option<RegistryMatch>,
}

impl Verdict {
    pub fn primary(&self) -> Option<&Certificate> {
        self.certificates.first()
    }

    pub fn kinds(&self) -> Vec<CertificateKind> {
        self.certificates.iter().map(|c| c.kind()).collect()
    }

    pub fn find(&self, kind: CertificateKind) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.kind() == kind)
    }
}

pub fn classify(p: &Presentation) -> Verdict {
    let r = p.relator_cyclic();
    let mut certificates = Vec::new();
    if r.is_empty() {
        certificates.push(Certificate::FreeGroup);
    } else {
        certificates.extend(match_positive(r));
        certificates.extend(match_positive_quotient(r));
        certificates.extend(match_positive_commutator(p));
        certificates.extend(match_commutator_power(r));
        certificates.extend(recognize_tower(p).map(Certificate::BasicTower));
        certificates.extend(first_applicable(p).map(Certificate::MagnusFreeByCyclic));
        certificates.extend(match_surface(r));
    }
    let registry = match_registry(r);
    let status = if !certificates.is_empty() {
        Status::CertifiedResiduallySolvable
    } else if registry.is_some() {
        Status::KnownNotResiduallySolvable
    } else {
        Status::Unknown
    };
    Verdict {
        status,
        certificates,
        registry,
    }
}

fn match_positive(r: &Word) -> Option<Certificate> {
    if r.is_positive() {
        Some(Certificate::PositiveRelator { inverted: false })
    } else if r.inverse().is_positive() {
        Some(Certificate::PositiveRelator { inverted: true })
    } else {
        None
    }
}

/// Rotates a cyclically reduced word to the form `N · P` with `N` all
/// negative and `P` all positive, if it has exactly one block of each.
fn negative_positive_split(r: &Word) -> Option<(Word, Word)> {
    let letters = r.letters();
    let n = letters.len();
    if n < 2 {
        return None;
    }
    let start =
        (0..n).find(|&i| !letters[i].is_positive() && letters[(i + n - 1) % n].is_positive())?;
    let rot = r.rotate(start);
    let m = rot
        .letters()
        .iter()
        .take_while(|l| !l.is_positive())
        .count();
    let (neg, pos) = rot.letters().split_at(m);
    if pos.is_empty() || !pos.iter().all(|l| l.is_positive()) {
        return None;
    }
    Some((
        Word::from_letters(neg.iter().copied()),
        Word::from_letters(pos.iter().copied()),
    ))
}

fn all_exponent_sums_zero(r: &Word) -> bool {
    r.occurring_generators()
        .into_iter()
        .all(|g| r.exponent_sum(g) == 0)
}

fn match_positive_quotient(r: &Word) -> Option<Certificate> {
    if !all_exponent_sums_zero(r) {
        return None;
    }
    let (neg, pos) = negative_positive_split(r)?;
    Some(Certificate::PositiveQuotientForm {
        u: pos,
        w: neg.inverse(),
    })
}

/// `[u, w]` with `u`, `w` positive.
///
/// Every such commutator is conjugate to one of the form `[x s, y s]` with
/// `x`, `y` nonempty and cyclically equal to `x⁻¹ s⁻¹ y⁻¹ · x s y`, so it
/// suffices to split the positive block `P = x s y` and the inverted
/// negative block `N⁻¹ = y s x`: at most `|r|²` candidate splits.
fn match_positive_commutator(p: &Presentation) -> Option<Certificate> {
    let r = p.relator_cyclic();
    if let Some((u, w)) = positive_commutator_from_expr(p.relator_expr()) {
        let c = u.commutator(&w).cyclic_core();
        if !c.is_empty() && cyclically_equivalent(&c, r) {
            return Some(Certificate::CommutatorOfPositiveWords {
                u,
                w,
                from_expression: true,
            });
        }
    }
    let (u, w) = positive_commutator_from_word(r)?;
    Some(Certificate::CommutatorOfPositiveWords {
        u,
        w,
        from_expression: false,
    })
}

fn positive_commutator_from_expr(e: &WordExpr) -> Option<(Word, Word)> {
    match e {
        WordExpr::Commutator(u, w) => {
            let (u, w) = (u.expand(), w.expand());
            (u.is_positive() && w.is_positive()).then_some((u, w))
        }
        WordExpr::Product(parts) if parts.len() == 1 => positive_commutator_from_expr(&parts[0]),
        _ => None,
    }
}

pub fn positive_commutator_from_word(r: &Word) -> Option<(Word, Word)> {
    if !all_exponent_sums_zero(r) {
        return None;
    }
    let (neg, pos) = negative_positive_split(r)?;
    let ninv = neg.inverse();
    let (p, q) = (pos.letters(), ninv.letters());
    let m = p.len();
    if q.len() != m {
        return None;
    }
    for i in 1..m {
        for j in 1..=(m - i) {
            let x = &p[..i];
            let s = &p[i..m - j];
            let y = &p[m - j..];
            if &q[..j] == y && &q[j..m - i] == s && &q[m - i..] == x {
                let u = Word::from_letters(x.iter().chain(s).copied());
                let w = Word::from_letters(y.iter().chain(s).copied());
                return Some((u, w));
            }
        }
    }
    None
}

/// `[a, [a,b]^n]` over generators 0 and 1.
pub fn commutator_power_pattern(n: usize) -> Word {
    let a = Word::generator(Gen(0));
    let b = Word::generator(Gen(1));
    a.commutator(&a.commutator(&b).pow(n as i64))
}

/// Relator of the registered non-residually-solvable group over generators
/// 0 and 1: `[a, [a,b][w,w^b]]` with `w = [a,b]⁻¹ [a,b]^a`.
pub fn registry_pattern() -> Word {
    let a = Word::generator(Gen(0));
    let b = Word::generator(Gen(1));
    let ab = a.commutator(&b);
    let w = registry_word();
    let v = ab.multiply(&w.commutator(&w.conjugate(&b)));
    a.commutator(&v)
}

/// `w = [a,b]⁻¹ [a,b]^a` over generators 0 and 1.
pub fn registry_word() -> Word {
    let a = Word::generator(Gen(0));
    let b = Word::generator(Gen(1));
    let ab = a.commutator(&b);
    ab.inverse().multiply(&ab.conjugate(&a))
}

/// Tries both assignments of the two generators occurring in `r` to the
/// pattern's generators 0 and 1.
fn match_two_generator_pattern(r: &Word, pattern_core: &Word) -> Option<(Gen, Gen)> {
    if pattern_core.len() != r.len() {
        return None;
    }
    let occ: Vec<Gen> = r.occurring_generators().into_iter().collect();
    if occ.len() != 2 {
        return None;
    }
    for (a, b) in [(occ[0], occ[1]), (occ[1], occ[0])] {
        let renamed = pattern_core.rename(|g| if g == Gen(0) { a } else { b });
        if cyclically_equivalent(&renamed, r) {
            return Some((a, b));
        }
    }
    None
}

fn match_commutator_power(r: &Word) -> Option<Certificate> {
    // The cyclic core of [a, [a,b]^n] has exactly 8n letters.
    if !r.len().is_multiple_of(8) || r.is_empty() {
        return None;
    }
    let n = r.len() / 8;
    let core = commutator_power_pattern(n).cyclic_core();
    let (a, b) = match_two_generator_pattern(r, &core)?;
    Some(Certificate::CommutatorPowerFamily { n, a, b })
}

fn match_registry(r: &Word) -> Option<RegistryMatch> {
    let core = registry_pattern().cyclic_core();
    match_two_generator_pattern(r, &core).map(|(a, b)| RegistryMatch { a, b })
}

/// Reads a word as consecutive `x⁻¹ y⁻¹ x y` blocks over pairwise
/// distinct generators.
fn surface_pairs(w: &Word) -> Option<Vec<(Gen, Gen)>> {
    let l = w.letters();
    if l.is_empty() || !l.len().is_multiple_of(4) {
        return None;
    }
    let mut used = std::collections::BTreeSet::new();
    let mut pairs = Vec::new();
    for block in l.chunks(4) {
        let (x, y) = (block[2], block[3]);
        if !x.is_positive()
            || !y.is_positive()
            || x.gen == y.gen
            || block[0] != x.inverse()
            || block[1] != y.inverse()
            || !used.insert(x.gen)
            || !used.insert(y.gen)
        {
            return None;
        }
        pairs.push((x.gen, y.gen));
    }
    Some(pairs)
}

fn match_surface(r: &Word) -> Option<Certificate> {
    if !r.len().is_multiple_of(4) {
        return None;
    }
    for cand in [r.clone(), r.inverse()] {
        for k in 0..cand.len() {
            if let Some(pairs) = surface_pairs(&cand.rotate(k)) {
                return Some(Certificate::SurfaceRelator { pairs });
            }
        }
    }
    None
}

/// Re-derives a certificate from its witness alone.
pub fn verify_certificate(p: &Presentation, c: &Certificate) -> bool {
    let r = p.relator_cyclic();
    let in_range = |g: &Gen| g.0 < p.rank();
    match c {
        Certificate::FreeGroup => r.is_empty(),
        Certificate::PositiveRelator { inverted } => {
            if *inverted {
                r.inverse().is_positive()
            } else {
                r.is_positive()
            }
        }
        Certificate::PositiveQuotientForm { u, w } => {
            u.is_positive()
                && w.is_positive()
                && p.gens().all(|g| r.exponent_sum(g) == 0)
                && cyclically_equivalent(&u.multiply(&w.inverse()).cyclic_core(), r)
        }
        Certificate::CommutatorOfPositiveWords { u, w, .. } => {
            let c = u.commutator(w).cyclic_core();
            u.is_positive() && w.is_positive() && !c.is_empty() && cyclically_equivalent(&c, r)
        }
        Certificate::CommutatorPowerFamily { n, a, b } => {
            if *n == 0 || a == b || !in_range(a) || !in_range(b) {
                return false;
            }
            let core = commutator_power_pattern(*n)
                .rename(|g| if g == Gen(0) { *a } else { *b })
                .cyclic_core();
            cyclically_equivalent(&core, r)
        }
        Certificate::BasicTower(m) => {
            m.k >= 1
                && m.x != m.y
                && in_range(&m.x)
                && in_range(&m.y)
                && cyclically_equivalent(&tower_relator(m.x, m.y, m.k).cyclic_core(), r)
        }
        Certificate::MagnusFreeByCyclic(v) => {
            let Ok(rw) = magnus_rewrite(p, v.eliminated) else {
                return false;
            };
            let Some(e) = rw.extremes.get(&v.witness) else {
                return false;
            };
            v.applicable
                && e.mu == v.mu
                && e.nu == v.nu
                && v.mu < v.nu
                && e.count_at_mu == 1
                && e.count_at_nu == 1
                && v.span == v.nu - v.mu + 1
        }
        Certificate::SurfaceRelator { pairs } => {
            let mut seen = std::collections::BTreeSet::new();
            let distinct = pairs
                .iter()
                .all(|(a, b)| in_range(a) && in_range(b) && seen.insert(*a) && seen.insert(*b));
            let product = pairs.iter().fold(Word::identity(), |acc, (a, b)| {
                acc.multiply(&Word::generator(*a).commutator(&Word::generator(*b)))
            });
            distinct && !pairs.is_empty() && cyclically_equivalent(&product.cyclic_core(), r)
        }
    }
}
