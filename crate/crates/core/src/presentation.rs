//! One-relator presentations and relator expressions.

use std::fmt;

use crate::parser::{self, ParseError};
use crate::word::{Gen, Word};

/// Relator expression tree, as written by the user.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordExpr {
    Symbol(Gen),
    Power(Box<WordExpr>, i64),
    /// `Conjugate(g, h)` is `g^h = h⁻¹ g h`.
    Conjugate(Box<WordExpr>, Box<WordExpr>),
    /// `Commutator(u, v)` is `[u, v] = u⁻¹ v⁻¹ u v`.
    Commutator(Box<WordExpr>, Box<WordExpr>),
    Product(Vec<WordExpr>),
    Inverse(Box<WordExpr>),
}

impl WordExpr {
    pub fn sym(g: usize) -> Self {
        WordExpr::Symbol(Gen(g))
    }

    pub fn power(e: WordExpr, n: i64) -> Self {
        WordExpr::Power(Box::new(e), n)
    }

    pub fn conj(g: WordExpr, h: WordExpr) -> Self {
        WordExpr::Conjugate(Box::new(g), Box::new(h))
    }

    pub fn comm(u: WordExpr, v: WordExpr) -> Self {
        WordExpr::Commutator(Box::new(u), Box::new(v))
    }

    pub fn inv(e: WordExpr) -> Self {
        WordExpr::Inverse(Box::new(e))
    }

    /// Expression spelling out a word letter by letter.
    pub fn from_word(w: &Word) -> Self {
        WordExpr::Product(
            w.letters()
                .iter()
                .map(|l| {
                    let s = WordExpr::Symbol(l.gen);
                    if l.is_positive() {
                        s
                    } else {
                        WordExpr::power(s, -1)
                    }
                })
                .collect(),
        )
    }

    /// Expands the tree into a freely reduced word.
    pub fn expand(&self) -> Word {
        match self {
            WordExpr::Symbol(g) => Word::generator(*g),
            WordExpr::Power(e, n) => e.expand().pow(*n),
            WordExpr::Conjugate(g, h) => g.expand().conjugate(&h.expand()),
            WordExpr::Commutator(u, v) => u.expand().commutator(&v.expand()),
            WordExpr::Product(parts) => parts
                .iter()
                .fold(Word::identity(), |acc, e| acc.multiply(&e.expand())),
            WordExpr::Inverse(e) => e.expand().inverse(),
        }
    }

    pub fn symbols(&self, out: &mut Vec<Gen>) {
        match self {
            WordExpr::Symbol(g) => out.push(*g),
            WordExpr::Power(e, _) | WordExpr::Inverse(e) => e.symbols(out),
            WordExpr::Conjugate(a, b) | WordExpr::Commutator(a, b) => {
                a.symbols(out);
                b.symbols(out);
            }
            WordExpr::Product(parts) => parts.iter().for_each(|p| p.symbols(out)),
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> DisplayExpr<'a> {
        DisplayExpr { expr: self, names }
    }

    fn is_atom(&self) -> bool {
        match self {
            WordExpr::Symbol(_) | WordExpr::Commutator(..) => true,
            WordExpr::Product(parts) => {
                parts.is_empty() || (parts.len() == 1 && parts[0].is_atom())
            }
            _ => false,
        }
    }
}

pub struct DisplayExpr<'a> {
    expr: &'a WordExpr,
    names: &'a [String],
}

impl DisplayExpr<'_> {
    fn sub<'b>(&'b self, e: &'b WordExpr) -> DisplayExpr<'b> {
        DisplayExpr {
            expr: e,
            names: self.names,
        }
    }

    fn atom(&self, f: &mut fmt::Formatter<'_>, e: &WordExpr) -> fmt::Result {
        if e.is_atom() {
            write!(f, "{}", self.sub(e))
        } else {
            write!(f, "({})", self.sub(e))
        }
    }
}

impl fmt::Display for DisplayExpr<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.expr {
            WordExpr::Symbol(g) => match self.names.get(g.0) {
                Some(n) => write!(f, "{n}"),
                None => write!(f, "g{}", g.0),
            },
            WordExpr::Power(e, n) => {
                self.atom(f, e)?;
                write!(f, "^{n}")
            }
            WordExpr::Inverse(e) => {
                self.atom(f, e)?;
                write!(f, "^-1")
            }
            WordExpr::Conjugate(g, h) => {
                self.atom(f, g)?;
                write!(f, "^")?;
                self.atom(f, h)
            }
            WordExpr::Commutator(u, v) => write!(f, "[{},{}]", self.sub(u), self.sub(v)),
            WordExpr::Product(parts) => {
                if parts.is_empty() {
                    return write!(f, "1");
                }
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    match p {
                        WordExpr::Product(_) if !p.is_atom() => write!(f, "({})", self.sub(p))?,
                        _ => write!(f, "{}", self.sub(p))?,
                    }
                }
                Ok(())
            }
        }
    }
}

/// `⟨ generators ; relator ⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relator_expr: WordExpr,
    relator: Word,
    relator_cyclic: Word,
}

impl Presentation {
    /// Builds a presentation; every symbol must index into `generators`.
    pub fn new(generators: Vec<String>, relator_expr: WordExpr) -> Result<Self, ParseError> {
        let mut seen = std::collections::HashSet::new();
        for g in &generators {
            if !seen.insert(g.as_str()) {
                return Err(ParseError::DuplicateGenerator(g.clone()));
            }
        }
        let mut syms = Vec::new();
        relator_expr.symbols(&mut syms);
        if let Some(bad) = syms.iter().find(|g| g.0 >= generators.len()) {
            return Err(ParseError::UnknownGenerator(format!("g{}", bad.0)));
        }
        let relator = relator_expr.expand();
        let relator_cyclic = relator.cyclic_core();
        Ok(Presentation {
            generators,
            relator_expr,
            relator,
            relator_cyclic,
        })
    }

    pub fn from_word(generators: Vec<String>, relator: &Word) -> Result<Self, ParseError> {
        Presentation::new(generators, WordExpr::from_word(relator))
    }

    /// Presentation on generators named `a, b, c, ...` (then `g26`, `g27`, ...).
    pub fn with_default_names(q: usize, relator: &Word) -> Self {
        Presentation::from_word(default_names(q), relator)
            .expect("default names are distinct and cover the relator")
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parser::parse_presentation(text)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> {
        (0..self.generators.len()).map(Gen)
    }

    pub fn gen_by_name(&self, name: &str) -> Option<Gen> {
        self.generators.iter().position(|g| g == name).map(Gen)
    }

    pub fn relator_expr(&self) -> &WordExpr {
        &self.relator_expr
    }

    pub fn relator(&self) -> &Word {
        &self.relator
    }

    pub fn relator_cyclic(&self) -> &Word {
        &self.relator_cyclic
    }

    /// The relator reduces to the identity, so the group is free.
    pub fn has_empty_relator(&self) -> bool {
        self.relator.is_empty()
    }

    pub fn show(&self, w: &Word) -> String {
        w.display(&self.generators).to_string()
    }

    /// Same group with the relator replaced by another word.
    pub fn with_relator(&self, relator: &Word) -> Presentation {
        Presentation::from_word(self.generators.clone(), relator).expect("generator list unchanged")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "<{} ; {}>",
            self.generators.join(", "),
            self.relator_expr.display(&self.generators)
        )
    }
}

pub fn default_names(q: usize) -> Vec<String> {
    (0..q)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("g{i}")
            }
        })
        .collect()
}

/// What the Freiheitssatz says about a one-relator presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreiheitssatzReport {
    /// Generators occurring in the cyclically reduced relator.
    pub occurring: Vec<Gen>,
    /// Generators not occurring at all; each splits off as a free factor.
    pub free_factors: Vec<Gen>,
    /// The maximal proper subsets of `occurring`; every subset of one of
    /// these freely generates a free subgroup.
    pub maximal_free_bases: Vec<Vec<Gen>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("Freiheitssatz does not apply: the relator is trivial")]
pub struct NotApplicable;

pub fn freiheitssatz_report(p: &Presentation) -> Result<FreiheitssatzReport, NotApplicable> {
    if p.relator_cyclic().is_empty() {
        return Err(NotApplicable);
    }
    let occ = p.relator_cyclic().occurring_generators();
    let occurring: Vec<Gen> = occ.iter().copied().collect();
    let free_factors = p.gens().filter(|g| !occ.contains(g)).collect();
    let maximal_free_bases = if occurring.len() < 2 {
        Vec::new()
    } else {
        occurring
            .iter()
            .map(|&skip| occurring.iter().copied().filter(|&g| g != skip).collect())
            .collect()
    };
    Ok(FreiheitssatzReport {
        occurring,
        free_factors,
        maximal_free_bases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> WordExpr {
        WordExpr::sym(0)
    }
    fn b() -> WordExpr {
        WordExpr::sym(1)
    }

    #[test]
    fn expand_nested_commutator() {
        let e = WordExpr::comm(a(), WordExpr::comm(a(), b()));
        assert_eq!(e.expand().to_signed(), vec![-1, -2, -1, 2, 1, -2, 1, 2]);
    }

    #[test]
    fn expand_power() {
        let e = WordExpr::power(WordExpr::comm(a(), b()), 2);
        assert_eq!(e.expand().to_signed(), vec![-1, -2, 1, 2, -1, -2, 1, 2]);
        assert!(WordExpr::power(a(), 0).expand().is_empty());
    }

    #[test]
    fn expand_conjugate_matches_word_algebra() {
        // w = [a,b]^-1 [a,b]^a, then w^b
        let ab = WordExpr::comm(a(), b());
        let w = WordExpr::Product(vec![
            WordExpr::power(ab.clone(), -1),
            WordExpr::conj(ab, a()),
        ]);
        let direct = WordExpr::conj(w.clone(), b()).expand();
        let wa = Word::from_signed(&[-1, -2, 1, 2]);
        let ww = wa
            .inverse()
            .multiply(&wa.conjugate(&Word::from_signed(&[1])));
        let bw = Word::from_signed(&[2]);
        let manual = Word::from_letters(
            bw.inverse()
                .letters()
                .iter()
                .chain(ww.letters())
                .chain(bw.letters())
                .copied(),
        );
        assert_eq!(direct, manual);
        assert_eq!(w.expand(), ww);
    }

    #[test]
    fn product_is_homomorphic() {
        let e1 = WordExpr::comm(a(), b());
        let e2 = WordExpr::conj(b(), a());
        let prod = WordExpr::Product(vec![e1.clone(), e2.clone()]);
        assert_eq!(prod.expand(), e1.expand().multiply(&e2.expand()));
    }

    #[test]
    fn freiheitssatz_examples() {
        let p = Presentation::parse("a,b;[a,b]").unwrap();
        let r = freiheitssatz_report(&p).unwrap();
        assert_eq!(r.occurring, vec![Gen(0), Gen(1)]);
        assert_eq!(r.maximal_free_bases, vec![vec![Gen(1)], vec![Gen(0)]]);
        assert!(r.free_factors.is_empty());

        let p = Presentation::parse("a,b,c;[a,b]").unwrap();
        let r = freiheitssatz_report(&p).unwrap();
        assert_eq!(r.free_factors, vec![Gen(2)]);

        let p = Presentation::parse("a; a^2").unwrap();
        let r = freiheitssatz_report(&p).unwrap();
        assert_eq!(r.occurring, vec![Gen(0)]);
        assert!(r.maximal_free_bases.is_empty());

        let p = Presentation::parse("a,b; a a^-1").unwrap();
        assert_eq!(freiheitssatz_report(&p), Err(NotApplicable));
    }

    #[test]
    fn display_parses_back() {
        let p = Presentation::parse("<a,b | [a,[a,b]^3]^b (a b)^-2 a^(b a)>").unwrap();
        let again = Presentation::parse(&p.to_string()).unwrap();
        assert_eq!(again.relator(), p.relator());
        assert_eq!(again.generators(), p.generators());
    }
}
