//! Finite group presentations and free-word algebra.
//!
//! Words are canonical free-reduced syllable sequences. Conventions, all in
//! one place because mixing them is the main correctness hazard of the
//! crossed-relator construction:
//!
//! * word-level commutator (also the DSL's `[u,v]`): `u^-1 v^-1 u v`;
//! * word-level conjugation is the right action `u^v = v^-1 u v`;
//! * element-level commutator ([`crate::group::GroupTable::commutator`]):
//!   `x y x^-1 y^-1`, with left conjugation `g x g^-1`.
//!
//! The two commutator forms exchange under inverting both arguments, so the
//! crossed-commutator subgroup generated over all element pairs is the same
//! either way; the element-level biderivation checks in `tensor` pin the
//! left-action form down explicitly.

use std::fmt;

use crate::abelian::IntegerMatrix;

mod families;
mod nu;
mod parse;

pub use families::{family_presentation, family_table, FamilyDescriptor};
pub use nu::{nu_presentation, NuPresentation};
pub use parse::{parse_presentation, ParseError, ParseErrorKind};

/// One syllable: a generator id with a nonzero exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub gen: usize,
    pub exp: i64,
}

/// A free-reduced word: adjacent syllables have distinct generators and no
/// syllable has exponent zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(gen: usize) -> Self {
        Word {
            syllables: vec![Syllable { gen, exp: 1 }],
        }
    }

    pub fn from_syllables<I: IntoIterator<Item = (usize, i64)>>(iter: I) -> Self {
        let mut w = Word::identity();
        for (gen, exp) in iter {
            w.push(gen, exp);
        }
        w
    }

    fn push(&mut self, gen: usize, exp: i64) {
        if exp == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some(last) if last.gen == gen => {
                last.exp += exp;
                if last.exp == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push(Syllable { gen, exp }),
        }
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = self.clone();
        for s in &other.syllables {
            out.push(s.gen, s.exp);
        }
        out
    }

    pub fn inverse(&self) -> Word {
        Word {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    gen: s.gen,
                    exp: -s.exp,
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        if k == 0 {
            return Word::identity();
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// `u^-1 v^-1 u v`
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().multiply(&v.inverse()).multiply(u).multiply(v)
    }

    /// Right conjugation `self^v = v^-1 self v`.
    pub fn conjugated_by(&self, v: &Word) -> Word {
        v.inverse().multiply(self).multiply(v)
    }

    /// Substitute a word for every generator.
    pub fn map_generators(&self, f: impl Fn(usize) -> Word) -> Word {
        let mut out = Word::identity();
        for s in &self.syllables {
            out = out.multiply(&f(s.gen).pow(s.exp));
        }
        out
    }

    /// Number of letters after expanding exponents.
    pub fn letter_len(&self) -> usize {
        self.syllables
            .iter()
            .map(|s| s.exp.unsigned_abs() as usize)
            .sum()
    }

    /// Expanded letters as `(generator, inverted)` pairs.
    pub fn letters(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.syllables.iter().flat_map(|s| {
            let inverted = s.exp < 0;
            std::iter::repeat((s.gen, inverted)).take(s.exp.unsigned_abs() as usize)
        })
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.syllables.iter().map(|s| s.gen).max()
    }

    /// Sum of exponents per generator over `gen_count` generators.
    pub fn exponent_sums(&self, gen_count: usize) -> Vec<i64> {
        let mut sums = vec![0i64; gen_count];
        for s in &self.syllables {
            sums[s.gen] += s.exp;
        }
        sums
    }

    fn render(&self, names: &[String]) -> String {
        if self.is_identity() {
            return "1".to_string();
        }
        self.syllables
            .iter()
            .map(|s| {
                let name = &names[s.gen];
                if s.exp == 1 {
                    name.clone()
                } else {
                    format!("{name}^{}", s.exp)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A finite presentation: ordered generator names and relator words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Relators that free-reduce to the identity are vacuous and dropped.
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Self {
        assert!(!names.is_empty(), "a presentation needs generators");
        for (i, n) in names.iter().enumerate() {
            assert!(
                !names[..i].contains(n),
                "duplicate generator name {n:?}"
            );
        }
        let g = names.len();
        let relators: Vec<Word> = relators.into_iter().filter(|w| !w.is_identity()).collect();
        for r in &relators {
            assert!(
                r.max_generator().map_or(true, |m| m < g),
                "relator references an undeclared generator"
            );
        }
        Self { names, relators }
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn render_word(&self, w: &Word) -> String {
        w.render(&self.names)
    }

    /// Exponent-sum matrix (one row per relator); feeding it to
    /// `abelian_from_relations` yields `G^ab`.
    pub fn abelianized_relation_matrix(&self) -> IntegerMatrix {
        let rows: Vec<Vec<i64>> = self
            .relators
            .iter()
            .map(|r| r.exponent_sums(self.generator_count()))
            .collect();
        if rows.is_empty() {
            IntegerMatrix::zero(0, self.generator_count())
        } else {
            IntegerMatrix::from_rows(&rows)
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel: Vec<String> = self.relators.iter().map(|r| r.render(&self.names)).collect();
        write!(f, "{} | {}", self.names.join(", "), rel.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(pairs: &[(usize, i64)]) -> Word {
        Word::from_syllables(pairs.iter().copied())
    }

    #[test]
    fn free_reduction_is_canonical() {
        let x = w(&[(0, 2), (0, -2), (1, 1)]);
        assert_eq!(x, w(&[(1, 1)]));
        let x = w(&[(0, 1), (1, 1), (1, -1), (0, -1)]);
        assert!(x.is_identity());
    }

    #[test]
    fn commutator_of_generator_with_itself_vanishes() {
        let a = Word::generator(0);
        assert!(Word::commutator(&a, &a).is_identity());
        assert!(Word::commutator(&a, &a.pow(3)).is_identity());
    }

    #[test]
    fn inverse_reverses_products() {
        let u = w(&[(0, 1), (1, -1)]);
        assert_eq!(u.inverse(), w(&[(1, 1), (0, -1)]));
        let v = w(&[(2, 3), (0, 1)]);
        assert_eq!(
            u.multiply(&v).inverse(),
            v.inverse().multiply(&u.inverse())
        );
    }

    #[test]
    fn substitution() {
        // a -> xy in a^2 b gives xyxyb.
        let word = w(&[(0, 2), (1, 1)]);
        let sub = word.map_generators(|g| {
            if g == 0 {
                w(&[(2, 1), (3, 1)])
            } else {
                Word::generator(g)
            }
        });
        assert_eq!(sub, w(&[(2, 1), (3, 1), (2, 1), (3, 1), (1, 1)]));
    }

    #[test]
    fn letters_expand_exponents() {
        let word = w(&[(0, 2), (1, -3)]);
        let letters: Vec<_> = word.letters().collect();
        assert_eq!(
            letters,
            vec![(0, false), (0, false), (1, true), (1, true), (1, true)]
        );
        assert_eq!(word.letter_len(), 5);
    }

    #[test]
    fn abelianized_matrix() {
        let p = parse_presentation("a | a^6").unwrap();
        let m = p.abelianized_relation_matrix();
        assert_eq!(m.rows(), 1);
        assert_eq!(*m.get(0, 0), 6.into());
        let ab = crate::abelian::abelian_from_relations(1, &m).unwrap();
        assert_eq!(ab.invariant_factors(), &[6]);

        let s3 = parse_presentation("a, b | a^3, b^2, (a b)^2").unwrap();
        let ab =
            crate::abelian::abelian_from_relations(2, &s3.abelianized_relation_matrix()).unwrap();
        assert_eq!(ab.invariant_factors(), &[2]);

        let f20 = parse_presentation("a, b | a^5, b^4, b a b^-1 a^-2").unwrap();
        let ab =
            crate::abelian::abelian_from_relations(2, &f20.abelianized_relation_matrix()).unwrap();
        assert_eq!(ab.invariant_factors(), &[4]);
    }
}
