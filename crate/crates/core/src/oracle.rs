//! Finite solvable quotients as an empirical separation oracle.
//!
//! Any assignment of generator images in a finite group `S` under which the
//! relator evaluates to the identity extends to a homomorphism from the
//! one-relator group into `S`. If `S` is solvable and a word `w` survives,
//! `w` is nontrivial in a solvable quotient. Failing to find such a map
//! within the catalog is evidence only.

use std::collections::{HashMap, VecDeque};

use serde_json::{json, Value};

use crate::presentation::Presentation;
use crate::word::Word;

/// A finite group given by its multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub name: String,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    /// Number of steps for the derived series to reach the trivial group.
    pub derived_length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("multiplication table is not associative")]
    NotAssociative,
    #[error("element 0 is not a two-sided identity")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("derived series stabilises at order {0}; the group is not solvable")]
    NotSolvable(usize),
}

/// Composition `(p·q)(x) = q(p(x))`.
fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    p.iter().map(|&x| q[x]).collect()
}

impl FiniteGroup {
    pub const IDENTITY: usize = 0;

    /// Closes a set of permutations of `0..degree` under composition.
    pub fn from_permutations(
        name: &str,
        degree: usize,
        gens: &[Vec<usize>],
    ) -> Result<Self, GroupError> {
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let prod = compose(&elems[i], g);
                if !index.contains_key(&prod) {
                    index.insert(prod.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(prod);
                }
            }
        }
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&compose(a, b)]).collect())
            .collect();
        FiniteGroup::from_table(name, table)
    }

    /// Checks the group axioms and computes the derived length.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(GroupError::NoIdentity);
        }
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n)
                .find(|&b| table[a][b] == 0 && table[b][a] == 0)
                .ok_or(GroupError::NoInverse(a))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative);
                    }
                }
            }
        }
        let mut g = FiniteGroup {
            name: name.to_string(),
            table,
            inverses,
            derived_length: 0,
        };
        let series = g.derived_series();
        let last = series.last().expect("series starts with the whole group");
        if last.len() != 1 {
            return Err(GroupError::NotSolvable(last.len()));
        }
        g.derived_length = series.len() - 1;
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Smallest subgroup containing `gens`.
    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut elems = vec![0];
        let mut i = 0;
        while i < elems.len() {
            for &g in gens {
                let p = self.mul(elems[i], g);
                if !inside[p] {
                    inside[p] = true;
                    elems.push(p);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    /// Derived series as sorted element lists, from the whole group down to
    /// the point where it stabilises.
    pub fn derived_series(&self) -> Vec<Vec<usize>> {
        let mut series = vec![(0..self.order()).collect::<Vec<_>>()];
        loop {
            let h = series.last().unwrap();
            let mut comms = Vec::new();
            for &x in h {
                for &y in h {
                    let c = self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y));
                    comms.push(c);
                }
            }
            comms.sort_unstable();
            comms.dedup();
            let next = self.closure(&comms);
            if next.len() == h.len() {
                return series;
            }
            series.push(next);
        }
    }

    /// Evaluates a word left to right under generator images.
    pub fn evaluate(&self, w: &Word, images: &[usize]) -> usize {
        w.letters().iter().fold(Self::IDENTITY, |acc, l| {
            let x = images[l.gen.0];
            self.mul(acc, if l.is_positive() { x } else { self.inv(x) })
        })
    }

    pub fn summary_json(&self) -> Value {
        json!({
            "name": self.name,
            "order": self.order(),
            "derived_length": self.derived_length,
        })
    }
}

fn cycle(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

pub const DEFAULT_MAX_ORDER: usize = 24;

/// Cyclic `C₂…C₁₂`, Klein four, dihedral `D₃…D₆`, `S₄`, `A₄` and the
/// nonabelian group of order 21, keeping those of order ≤ `max_order`.
pub fn build_catalog(max_order: usize) -> Vec<FiniteGroup> {
    let mut specs: Vec<(String, usize, Vec<Vec<usize>>)> = Vec::new();
    for n in 2..=12 {
        specs.push((format!("C{n}"), n, vec![cycle(n)]));
    }
    specs.push(("V4".into(), 4, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]]));
    for n in 3..=6 {
        let reflection = (0..n).map(|i| (n - i) % n).collect();
        specs.push((format!("D{n}"), n, vec![cycle(n), reflection]));
    }
    specs.push(("S4".into(), 4, vec![vec![1, 0, 2, 3], cycle(4)]));
    specs.push(("A4".into(), 4, vec![vec![1, 2, 0, 3], vec![0, 2, 3, 1]]));
    specs.push((
        "C7:C3".into(),
        7,
        vec![cycle(7), (0..7).map(|x| 2 * x % 7).collect()],
    ));
    specs
        .into_iter()
        .map(|(name, degree, gens)| {
            FiniteGroup::from_permutations(&name, degree, &gens)
                .expect("catalog generators define solvable groups")
        })
        .filter(|g| g.order() <= max_order)
        .collect()
}

pub fn catalog_json(catalog: &[FiniteGroup]) -> Value {
    Value::Array(catalog.iter().map(FiniteGroup::summary_json).collect())
}

/// Generator images; the relator maps to the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    pub images: Vec<usize>,
}

/// Image tuples in lexicographic order, first generator most significant.
fn tuples(order: usize, q: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = order.checked_pow(q as u32).expect("too many image tuples");
    (0..total).map(move |mut code| {
        let mut t = vec![0; q];
        for slot in t.iter_mut().rev() {
            *slot = code % order;
            code /= order;
        }
        t
    })
}

pub fn enumerate_homs(p: &Presentation, s: &FiniteGroup) -> Vec<Hom> {
    let r = p.relator();
    tuples(s.order(), p.rank())
        .filter(|t| s.evaluate(r, t) == FiniteGroup::IDENTITY)
        .map(|images| Hom { images })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Separation {
    pub group: usize,
    pub group_name: String,
    pub hom: Hom,
    /// Image of the separated word.
    pub image: usize,
}

/// First catalog group and hom under which the relator dies and `w` survives.
pub fn separate(p: &Presentation, w: &Word, catalog: &[FiniteGroup]) -> Option<Separation> {
    let r = p.relator();
    for (gi, s) in catalog.iter().enumerate() {
        for t in tuples(s.order(), p.rank()) {
            if s.evaluate(r, &t) != FiniteGroup::IDENTITY {
                continue;
            }
            let image = s.evaluate(w, &t);
            if image != FiniteGroup::IDENTITY {
                return Some(Separation {
                    group: gi,
                    group_name: s.name.clone(),
                    hom: Hom { images: t },
                    image,
                });
            }
        }
    }
    None
}

/// `Z^q / ℤ·v` for the relator's exponent vector `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianizationData {
    pub exponent_vector: Vec<i64>,
    /// gcd of the exponent vector, 0 when the vector is zero.
    pub invariant_factor: u64,
    pub rank_free_part: usize,
}

impl AbelianizationData {
    pub fn structure(&self) -> String {
        let free = match self.rank_free_part {
            0 => None,
            1 => Some("Z".to_string()),
            r => Some(format!("Z^{r}")),
        };
        let torsion = (self.invariant_factor > 1).then(|| format!("Z/{}", self.invariant_factor));
        match (free, torsion) {
            (Some(f), Some(t)) => format!("{f} + {t}"),
            (Some(f), None) => f,
            (None, Some(t)) => t,
            (None, None) => "0".to_string(),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn abelianization(p: &Presentation) -> AbelianizationData {
    let v = p.relator().exponent_vector(p.rank());
    let d = v.iter().fold(0, |acc, &x| gcd(acc, x.unsigned_abs()));
    AbelianizationData {
        rank_free_part: if d == 0 { p.rank() } else { p.rank() - 1 },
        exponent_vector: v,
        invariant_factor: d,
    }
}

/// Is `w` nontrivial in the abelianization, i.e. is its exponent vector
/// outside `ℤ·v` for the relator vector `v`?
pub fn separate_in_abelianization(p: &Presentation, w: &Word) -> bool {
    let r = p.relator().exponent_vector(p.rank());
    let x = w.exponent_vector(p.rank());
    let Some(i) = r.iter().position(|&c| c != 0) else {
        return x.iter().any(|&c| c != 0);
    };
    if x[i] % r[i] != 0 {
        return true;
    }
    let lambda = x[i] / r[i];
    x.iter().zip(&r).any(|(&xi, &ri)| xi != lambda * ri)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn by_name<'a>(cat: &'a [FiniteGroup], name: &str) -> &'a FiniteGroup {
        cat.iter().find(|g| g.name == name).unwrap()
    }

    #[test]
    fn catalog_contents() {
        let cat = build_catalog(24);
        let orders: Vec<(String, usize, usize)> = cat
            .iter()
            .map(|g| (g.name.clone(), g.order(), g.derived_length))
            .collect();
        let expected = [
            ("C2", 2, 1),
            ("C3", 3, 1),
            ("C4", 4, 1),
            ("C5", 5, 1),
            ("C6", 6, 1),
            ("C7", 7, 1),
            ("C8", 8, 1),
            ("C9", 9, 1),
            ("C10", 10, 1),
            ("C11", 11, 1),
            ("C12", 12, 1),
            ("V4", 4, 1),
            ("D3", 6, 2),
            ("D4", 8, 2),
            ("D5", 10, 2),
            ("D6", 12, 2),
            ("S4", 24, 3),
            ("A4", 12, 2),
            ("C7:C3", 21, 2),
        ];
        let expected: Vec<(String, usize, usize)> = expected
            .iter()
            .map(|&(n, o, d)| (n.to_string(), o, d))
            .collect();
        assert_eq!(orders, expected);

        let small: Vec<String> = build_catalog(6).into_iter().map(|g| g.name).collect();
        assert_eq!(small, ["C2", "C3", "C4", "C5", "C6", "V4", "D3"]);
    }

    #[test]
    fn dihedral_eight() {
        let cat = build_catalog(24);
        let d4 = by_name(&cat, "D4");
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.derived_length, 2);
        let series = d4.derived_series();
        assert_eq!(series.iter().map(Vec::len).collect::<Vec<_>>(), [8, 2, 1]);
    }

    #[test]
    fn non_solvable_rejected() {
        // A5 from (0 1 2) and (0 1 2 3 4).
        let err =
            FiniteGroup::from_permutations("A5", 5, &[vec![1, 2, 0, 3, 4], cycle(5)]).unwrap_err();
        assert_eq!(err, GroupError::NotSolvable(60));
    }

    #[test]
    fn broken_table_rejected() {
        let t = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 2, 0]];
        assert!(FiniteGroup::from_table("bad", t).is_err());
    }

    #[test]
    fn homs_into_small_groups() {
        let cat = build_catalog(24);
        let c2 = by_name(&cat, "C2");
        let c3 = by_name(&cat, "C3");
        let p = Presentation::parse("a,b;[a,b]").unwrap();
        assert_eq!(enumerate_homs(&p, c2).len(), 4);
        let p = Presentation::parse("a;a^2").unwrap();
        assert_eq!(enumerate_homs(&p, c3), vec![Hom { images: vec![0] }]);
        let p = Presentation::parse("a,b;abab").unwrap();
        let homs: Vec<Vec<usize>> = enumerate_homs(&p, c2)
            .into_iter()
            .map(|h| h.images)
            .collect();
        assert_eq!(homs, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn separations() {
        let cat = build_catalog(24);
        let p = Presentation::parse("a,b;[a,b]").unwrap();
        let s = separate(&p, &Word::from_signed(&[1]), &cat).unwrap();
        assert_eq!(s.group_name, "C2");
        assert_eq!(s.hom.images, vec![1, 0]);

        let p = Presentation::parse("a,b;abab").unwrap();
        let s = separate(&p, &Word::from_signed(&[1, 2]), &cat).unwrap();
        // In C2 every tuple kills abab; ab survives first at a -> 0, b -> 1.
        assert_eq!(s.group_name, "C2");
        assert_eq!(s.hom.images, vec![0, 1]);
        let c2 = by_name(&cat, "C2");
        assert_eq!(c2.evaluate(p.relator(), &s.hom.images), 0);
    }

    #[test]
    fn abelianizations() {
        let a = abelianization(&Presentation::parse("a,b;[a,b]").unwrap());
        assert_eq!(
            (a.exponent_vector.clone(), a.invariant_factor),
            (vec![0, 0], 0)
        );
        assert_eq!(a.structure(), "Z^2");
        let a = abelianization(&Presentation::parse("a,b;abab").unwrap());
        assert_eq!(
            (a.exponent_vector.clone(), a.invariant_factor),
            (vec![2, 2], 2)
        );
        assert_eq!(a.structure(), "Z + Z/2");
        let a = abelianization(&Presentation::parse("a,b;a b^-1 a").unwrap());
        assert_eq!(a.structure(), "Z");
    }

    #[test]
    fn abelian_separation() {
        let p = Presentation::parse("a,b;[a,b]").unwrap();
        assert!(separate_in_abelianization(&p, &Word::from_signed(&[1])));
        assert!(!separate_in_abelianization(
            &p,
            &Word::from_signed(&[-1, -2, 1, 2])
        ));
        let p = Presentation::parse("a,b;abab").unwrap();
        assert!(separate_in_abelianization(&p, &Word::from_signed(&[1, -2])));
        assert!(!separate_in_abelianization(
            &p,
            &Word::from_signed(&[2, 1, 2, 1])
        ));
        assert!(separate_in_abelianization(&p, &Word::from_signed(&[1, 2])));
    }
}
