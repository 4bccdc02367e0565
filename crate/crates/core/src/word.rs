//! Free-group word algebra.
//!
//! A [`Word`] is always freely reduced: no letter is ever adjacent to its own
//! inverse. Every constructor and operation re-establishes that invariant, so
//! two words are equal as group elements of the free group exactly when their
//! letter sequences are equal.
//!
//! Conventions: `[u, v] = u⁻¹ v⁻¹ u v` and `g^h = h⁻¹ g h`.

use std::collections::BTreeSet;
use std::fmt;

/// Position of a generator in a presentation's generator list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen(pub usize);

impl Gen {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A signed generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: Gen,
    inverted: bool,
}

impl Letter {
    pub fn new(gen: Gen, sign: i32) -> Self {
        assert!(sign == 1 || sign == -1, "letter sign must be +1 or -1");
        Letter {
            gen,
            inverted: sign < 0,
        }
    }

    pub fn pos(gen: usize) -> Self {
        Letter::new(Gen(gen), 1)
    }

    pub fn neg(gen: usize) -> Self {
        Letter::new(Gen(gen), -1)
    }

    pub fn sign(self) -> i32 {
        if self.inverted {
            -1
        } else {
            1
        }
    }

    pub fn is_positive(self) -> bool {
        !self.inverted
    }

    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inverted: !self.inverted,
        }
    }
}

/// Anything with a formal inverse that can be freely cancelled.
pub trait FreeLetter: Copy + Eq {
    fn inv(self) -> Self;
}

impl FreeLetter for Letter {
    fn inv(self) -> Self {
        self.inverse()
    }
}

/// Pushes `letter` onto a reduced buffer, cancelling against the top if possible.
pub fn push_reduced<T: FreeLetter>(buf: &mut Vec<T>, letter: T) {
    if buf.last().is_some_and(|&top| top == letter.inv()) {
        buf.pop();
    } else {
        buf.push(letter);
    }
}

/// Freely reduces an arbitrary letter sequence.
pub fn free_reduce<T: FreeLetter>(letters: impl IntoIterator<Item = T>) -> Vec<T> {
    let mut buf = Vec::new();
    for l in letters {
        push_reduced(&mut buf, l);
    }
    buf
}

/// Inverse of a reduced sequence over any free alphabet.
pub fn invert_letters<T: FreeLetter>(letters: &[T]) -> Vec<T> {
    letters.iter().rev().map(|l| l.inv()).collect()
}

/// A freely reduced word in a free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Word {
            letters: free_reduce(letters),
        }
    }

    pub fn letter(l: Letter) -> Self {
        Word { letters: vec![l] }
    }

    pub fn generator(g: Gen) -> Self {
        Word::letter(Letter::new(g, 1))
    }

    /// Builds a word from signed one-based generator numbers: `1` is the first
    /// generator, `-2` the inverse of the second. Zeros are ignored.
    pub fn from_signed(codes: &[i64]) -> Self {
        Word::from_letters(codes.iter().filter(|&&c| c != 0).map(|&c| {
            let gen = Gen(c.unsigned_abs() as usize - 1);
            Letter::new(gen, if c > 0 { 1 } else { -1 })
        }))
    }

    /// Inverse of [`Word::from_signed`].
    pub fn to_signed(&self) -> Vec<i64> {
        self.letters
            .iter()
            .map(|l| (l.gen.0 as i64 + 1) * l.sign() as i64)
            .collect()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut buf = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut buf, l);
        }
        Word { letters: buf }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: invert_letters(&self.letters),
        }
    }

    /// `self^h = h⁻¹ self h`.
    pub fn conjugate(&self, h: &Word) -> Word {
        h.inverse().multiply(self).multiply(h)
    }

    /// `[self, v] = self⁻¹ v⁻¹ self v`.
    pub fn commutator(&self, v: &Word) -> Word {
        self.inverse()
            .multiply(&v.inverse())
            .multiply(self)
            .multiply(v)
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&f), Some(&l)) => self.letters.len() == 1 || f != l.inverse(),
            _ => true,
        }
    }

    /// Splits the word as `conjugator⁻¹ · core · conjugator` with `core`
    /// cyclically reduced, so that `self == core.conjugate(&conjugator)`.
    pub fn cyclically_reduce(&self) -> (Word, Word) {
        let n = self.letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k] == self.letters[n - 1 - k].inverse() {
            k += 1;
        }
        let core = Word {
            letters: self.letters[k..n - k].to_vec(),
        };
        let conjugator = Word {
            letters: self.letters[n - k..].to_vec(),
        };
        (core, conjugator)
    }

    pub fn cyclic_core(&self) -> Word {
        self.cyclically_reduce().0
    }

    pub fn exponent_sum(&self, g: Gen) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == g)
            .map(|l| l.sign() as i64)
            .sum()
    }

    /// Exponent sums of the first `q` generators.
    pub fn exponent_vector(&self, q: usize) -> Vec<i64> {
        let mut v = vec![0; q];
        for l in &self.letters {
            if l.gen.0 < q {
                v[l.gen.0] += l.sign() as i64;
            }
        }
        v
    }

    /// Nonempty and every letter has exponent +1.
    pub fn is_positive(&self) -> bool {
        !self.letters.is_empty() && self.letters.iter().all(|l| l.is_positive())
    }

    pub fn occurring_generators(&self) -> BTreeSet<Gen> {
        self.letters.iter().map(|l| l.gen).collect()
    }

    /// Rotation starting at letter `k`. Only meaningful for cyclically
    /// reduced words, where every rotation is again reduced.
    pub fn rotate(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return Word::identity();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word::from_letters(letters)
    }

    /// Applies a generator map letter by letter.
    pub fn rename(&self, map: impl Fn(Gen) -> Gen) -> Word {
        Word::from_letters(
            self.letters
                .iter()
                .map(|l| Letter::new(map(l.gen), l.sign())),
        )
    }

    /// Formats the word with generator names; the identity prints as `1`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> DisplayWord<'a> {
        DisplayWord { word: self, names }
    }
}

/// Is `a` a cyclic rotation of `b`?
pub fn is_rotation(a: &Word, b: &Word) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let n = a.len();
    (0..n).any(|k| (0..n).all(|i| a.letters[i] == b.letters[(i + k) % n]))
}

/// Equal up to cyclic rotation and inversion. Both inputs are expected to be
/// cyclically reduced.
pub fn cyclically_equivalent(a: &Word, b: &Word) -> bool {
    is_rotation(a, b) || is_rotation(a, &b.inverse())
}

pub struct DisplayWord<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        // Runs of the same letter print as powers.
        let letters = &self.word.letters;
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let mut j = i + 1;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = self
                .names
                .get(letters[i].gen.0)
                .cloned()
                .unwrap_or_else(|| format!("g{}", letters[i].gen.0));
            let exp = (j - i) as i64 * letters[i].sign() as i64;
            if exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{exp}")?;
            }
            i = j;
        }
        Ok(())
    }
}
