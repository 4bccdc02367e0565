//! Magnus rewriting of a relator over subscripted conjugates.
//!
//! Fix a generator `t` with exponent sum zero in the relator. Every other
//! generator `x` is replaced by the family `x_i = t⁻ⁱ x tⁱ`. Scanning the
//! cyclically reduced relator left to right, a letter `x^ε` preceded by
//! t-exponent total `k` becomes `x_{-k}^ε`; since the total t-exponent is
//! zero the result `r₀` is a word in the `x_i` alone.
//!
//! If some `x` reaches its minimum subscript `mu` and maximum subscript `nu`
//! exactly once each and `mu < nu`, the normal closure of the non-`t`
//! generators is free and the group is free-by-cyclic.

use std::collections::BTreeMap;
use std::fmt;

use crate::presentation::Presentation;
use crate::word::{free_reduce, FreeLetter, Gen, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MagnusError {
    #[error("generator {0:?} has nonzero exponent sum {1} in the relator")]
    NonZeroExponentSum(Gen, i64),
    #[error("the relator is trivial")]
    EmptyRelator,
}

/// `base_subscript^sign`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubscriptedLetter {
    pub base: Gen,
    pub subscript: i64,
    pub sign: i32,
}

impl FreeLetter for SubscriptedLetter {
    fn inv(self) -> Self {
        SubscriptedLetter {
            sign: -self.sign,
            ..self
        }
    }
}

impl SubscriptedLetter {
    pub fn new(base: Gen, subscript: i64, sign: i32) -> Self {
        SubscriptedLetter {
            base,
            subscript,
            sign,
        }
    }
}

/// Subscript extremes of one base generator in `r₀`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Extremes {
    pub mu: i64,
    pub nu: i64,
    /// Occurrences of `x_mu`, either sign.
    pub count_at_mu: usize,
    /// Occurrences of `x_nu`, either sign.
    pub count_at_nu: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewrittenRelator {
    pub eliminated: Gen,
    pub word0: Vec<SubscriptedLetter>,
    pub extremes: BTreeMap<Gen, Extremes>,
}

impl RewrittenRelator {
    pub fn display<'a>(&'a self, names: &'a [String]) -> DisplaySubscripted<'a> {
        DisplaySubscripted {
            letters: &self.word0,
            names,
        }
    }
}

pub fn extremes_of(word0: &[SubscriptedLetter]) -> BTreeMap<Gen, Extremes> {
    let mut out: BTreeMap<Gen, Extremes> = BTreeMap::new();
    for l in word0 {
        let e = out.entry(l.base).or_insert(Extremes {
            mu: l.subscript,
            nu: l.subscript,
            count_at_mu: 0,
            count_at_nu: 0,
        });
        e.mu = e.mu.min(l.subscript);
        e.nu = e.nu.max(l.subscript);
    }
    for l in word0 {
        let e = out.get_mut(&l.base).expect("entry created above");
        if l.subscript == e.mu {
            e.count_at_mu += 1;
        }
        if l.subscript == e.nu {
            e.count_at_nu += 1;
        }
    }
    out
}

/// Rewrites the cyclically reduced relator of `p` eliminating `t`.
pub fn magnus_rewrite(p: &Presentation, t: Gen) -> Result<RewrittenRelator, MagnusError> {
    rewrite_word(p.relator_cyclic(), t)
}

pub fn rewrite_word(r: &Word, t: Gen) -> Result<RewrittenRelator, MagnusError> {
    if r.is_empty() {
        return Err(MagnusError::EmptyRelator);
    }
    let sum = r.exponent_sum(t);
    if sum != 0 {
        return Err(MagnusError::NonZeroExponentSum(t, sum));
    }
    let mut level = 0i64;
    let mut letters = Vec::with_capacity(r.len());
    for l in r.letters() {
        if l.gen == t {
            level += l.sign() as i64;
        } else {
            letters.push(SubscriptedLetter::new(l.gen, -level, l.sign()));
        }
    }
    debug_assert_eq!(level, 0);
    let word0 = free_reduce(letters);
    let extremes = extremes_of(&word0);
    Ok(RewrittenRelator {
        eliminated: t,
        word0,
        extremes,
    })
}

/// Substitutes `x_i = t⁻ⁱ x tⁱ` back and freely reduces.
pub fn expand_rewritten(r0: &RewrittenRelator) -> Word {
    expand_letters(&r0.word0, r0.eliminated)
}

pub fn expand_letters(word0: &[SubscriptedLetter], t: Gen) -> Word {
    let tw = Word::generator(t);
    word0.iter().fold(Word::identity(), |acc, l| {
        let x = Word::letter(Letter::new(l.base, l.sign));
        acc.multiply(&x.conjugate(&tw.pow(l.subscript)))
    })
}

/// Adds `j` to every subscript (conjugation of `r₀` by `t^j`).
pub fn shift_relator(word0: &[SubscriptedLetter], j: i64) -> Vec<SubscriptedLetter> {
    word0
        .iter()
        .map(|l| SubscriptedLetter {
            subscript: l.subscript + j,
            ..*l
        })
        .collect()
}

/// One application of the freeness test: eliminate `eliminated`, inspect
/// the subscripts of `witness`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnusVerdict {
    pub applicable: bool,
    pub eliminated: Gen,
    pub witness: Gen,
    pub mu: i64,
    pub nu: i64,
    pub count_at_mu: usize,
    pub count_at_nu: usize,
    /// `nu - mu + 1`.
    pub span: i64,
    /// Rank of the free normal closure as the classical two-generator
    /// statement gives it (`nu - mu + 1`). Not always the true rank: for
    /// `⟨b, x ; [b, x]⟩` the normal closure of `x` is infinite cyclic.
    pub stated_rank: Option<i64>,
}

impl MagnusVerdict {
    fn from_extremes(p_rank: usize, t: Gen, x: Gen, e: &Extremes) -> Self {
        let applicable = e.mu < e.nu && e.count_at_mu == 1 && e.count_at_nu == 1;
        let span = e.nu - e.mu + 1;
        MagnusVerdict {
            applicable,
            eliminated: t,
            witness: x,
            mu: e.mu,
            nu: e.nu,
            count_at_mu: e.count_at_mu,
            count_at_nu: e.count_at_nu,
            span,
            stated_rank: (p_rank == 2).then_some(span),
        }
    }
}

/// Runs the test for every generator with zero exponent sum, against every
/// other generator occurring in `r₀`.
pub fn lemma_check(p: &Presentation) -> Vec<MagnusVerdict> {
    let r = p.relator_cyclic();
    if r.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for t in p.gens() {
        let Ok(rw) = magnus_rewrite(p, t) else {
            continue;
        };
        for (&x, e) in &rw.extremes {
            out.push(MagnusVerdict::from_extremes(p.rank(), t, x, e));
        }
    }
    out
}

pub fn first_applicable(p: &Presentation) -> Option<MagnusVerdict> {
    lemma_check(p).into_iter().find(|v| v.applicable)
}

pub struct DisplaySubscripted<'a> {
    letters: &'a [SubscriptedLetter],
    names: &'a [String],
}

impl fmt::Display for DisplaySubscripted<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let name = self
                .names
                .get(l.base.0)
                .cloned()
                .unwrap_or_else(|| format!("g{}", l.base.0));
            write!(f, "{name}_{}", l.subscript)?;
            if l.sign < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl(base: usize, sub: i64, sign: i32) -> SubscriptedLetter {
        SubscriptedLetter::new(Gen(base), sub, sign)
    }

    #[test]
    fn nested_commutator_rewrite() {
        let p = Presentation::parse("a,b;[a,[a,b]]").unwrap();
        let rw = magnus_rewrite(&p, Gen(0)).unwrap();
        assert_eq!(
            rw.word0,
            vec![sl(1, 1, -1), sl(1, 2, 1), sl(1, 1, -1), sl(1, 0, 1)]
        );
        assert_eq!(
            rw.display(p.generators()).to_string(),
            "b_1^-1 b_2 b_1^-1 b_0"
        );
        let e = rw.extremes[&Gen(1)];
        assert_eq!((e.mu, e.nu, e.count_at_mu, e.count_at_nu), (0, 2, 1, 1));
        assert_eq!(expand_rewritten(&rw), *p.relator_cyclic());
    }

    #[test]
    fn plain_commutator_rewrite() {
        let p = Presentation::parse("a,b;[a,b]").unwrap();
        let rw = magnus_rewrite(&p, Gen(0)).unwrap();
        assert_eq!(rw.word0, vec![sl(1, 1, -1), sl(1, 0, 1)]);
        let e = rw.extremes[&Gen(1)];
        assert_eq!((e.mu, e.nu, e.count_at_mu, e.count_at_nu), (0, 1, 1, 1));
        assert_eq!(expand_rewritten(&rw).to_signed(), vec![-1, -2, 1, 2]);
    }

    #[test]
    fn expand_small_cases() {
        assert_eq!(expand_letters(&[sl(1, 0, 1)], Gen(0)).to_signed(), vec![2]);
        assert_eq!(
            expand_letters(
                &[sl(1, 1, -1), sl(1, 2, 1), sl(1, 1, -1), sl(1, 0, 1)],
                Gen(0)
            )
            .to_signed(),
            vec![-1, -2, -1, 2, 1, -2, 1, 2]
        );
    }

    #[test]
    fn commutator_power_family_round_trips() {
        for n in 1..=4 {
            let p = Presentation::parse(&format!("a,b;[a,[a,b]^{n}]")).unwrap();
            let rw = magnus_rewrite(&p, Gen(0)).unwrap();
            assert_eq!(expand_rewritten(&rw), *p.relator_cyclic());
            // Only b_0, b_1, b_2 appear.
            assert!(rw.word0.iter().all(|l| (0..=2).contains(&l.subscript)));
        }
    }

    #[test]
    fn shifts() {
        let w0 = vec![sl(1, 1, -1), sl(1, 2, 1), sl(1, 1, -1), sl(1, 0, 1)];
        assert_eq!(
            shift_relator(&w0, 1),
            vec![sl(1, 2, -1), sl(1, 3, 1), sl(1, 2, -1), sl(1, 1, 1)]
        );
        assert_eq!(shift_relator(&w0, 0), w0);
        assert_eq!(shift_relator(&shift_relator(&w0, 3), -3), w0);
    }

    #[test]
    fn errors() {
        let p = Presentation::parse("a,b;abab").unwrap();
        assert_eq!(
            magnus_rewrite(&p, Gen(0)),
            Err(MagnusError::NonZeroExponentSum(Gen(0), 2))
        );
        let p = Presentation::parse("a,b;a a^-1").unwrap();
        assert_eq!(magnus_rewrite(&p, Gen(0)), Err(MagnusError::EmptyRelator));
    }

    #[test]
    fn lemma_examples() {
        let p = Presentation::parse("a,b;[a,[a,b]]").unwrap();
        let v = first_applicable(&p).unwrap();
        assert_eq!(
            (v.eliminated, v.witness, v.mu, v.nu, v.span),
            (Gen(0), Gen(1), 0, 2, 3)
        );
        assert_eq!(v.stated_rank, Some(3));

        let p = Presentation::parse("x,y;[[x,y],y]").unwrap();
        let v = lemma_check(&p)
            .into_iter()
            .find(|v| v.eliminated == Gen(1))
            .unwrap();
        assert!(v.applicable);

        let p = Presentation::parse("a,b;abab").unwrap();
        assert!(lemma_check(&p).is_empty());
    }

    #[test]
    fn single_level_not_applicable() {
        // t does not occur, so every x lands at subscript 0.
        let p = Presentation::parse("t,x; x^2").unwrap();
        let vs = lemma_check(&p);
        let v = vs.iter().find(|v| v.eliminated == Gen(0)).unwrap();
        assert_eq!((v.mu, v.nu), (0, 0));
        assert!(!v.applicable);
    }
}
