//! Todd-Coxeter coset enumeration.
//!
//! Two strategies share the table and coincidence machinery: relator-based
//! fill (HLT) with lookahead and on-threshold compaction, and definition-order
//! fill (Felsch) driven by a deduction stack. Both produce the same
//! standardized table on success, which the acceptance suite exploits as a
//! built-in cross-check.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::{Presentation, Word};

mod enumerate;
mod perm;

pub use perm::{permutation_rep, regular_representation, subgroup_index, REGULAR_REP_MAX};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Hlt,
    Felsch,
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Strategy::Hlt => write!(f, "hlt"),
            Strategy::Felsch => write!(f, "felsch"),
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hlt" => Ok(Strategy::Hlt),
            "felsch" => Ok(Strategy::Felsch),
            other => Err(format!("unknown strategy {other:?} (use hlt or felsch)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationConfig {
    /// Hard cap on live cosets; exceeding it is the failure signal for
    /// enumerations that do not fit.
    pub max_live_cosets: usize,
    pub strategy: Strategy,
    /// Number of dead rows tolerated before the table is compacted.
    pub compaction_threshold: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        Self {
            max_live_cosets: 12_000_000,
            strategy: Strategy::Hlt,
            compaction_threshold: 1_500_000,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct EnumerationStats {
    pub total_cosets_defined: u64,
    pub coincidences: u64,
    pub peak_live_cosets: usize,
    pub final_cosets: usize,
    /// Wall time is kept out of serialized reports so repeated runs are
    /// byte-identical; it is still available in-process.
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("live coset limit {limit} exceeded ({stats:?})")]
    CosetLimitExceeded {
        limit: usize,
        stats: Box<EnumerationStats>,
    },
    #[error("subgroup generator word references generator {gen} of {count}")]
    MalformedSubgroupWord { gen: usize, count: usize },
    #[error("coset table is not complete")]
    IncompleteTable,
    #[error("regular representation of {0} cosets exceeds the table bound {REGULAR_REP_MAX}")]
    TableTooLarge(usize),
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
}

/// A complete, compacted, standardized coset table. Cosets are `1..=n`
/// (coset 1 is the subgroup); columns alternate generator and inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    generator_count: usize,
    n_cosets: usize,
    /// `(n_cosets + 1) * 2 * generator_count`, row 0 unused.
    entries: Vec<u32>,
}

impl CosetTable {
    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn n_cosets(&self) -> usize {
        self.n_cosets
    }

    #[inline]
    fn columns(&self) -> usize {
        2 * self.generator_count
    }

    /// Apply one letter (column index) to a coset.
    #[inline]
    pub fn apply(&self, coset: u32, letter: u32) -> u32 {
        self.entries[coset as usize * self.columns() + letter as usize]
    }

    /// Trace a letter string from a coset.
    pub fn trace(&self, start: u32, letters: &[u32]) -> u32 {
        letters.iter().fold(start, |c, &l| self.apply(c, l))
    }

    /// Trace a word (signed syllables) from a coset.
    pub fn trace_word(&self, start: u32, word: &Word) -> u32 {
        word.letters().fold(start, |c, (gen, inverted)| {
            self.apply(c, (2 * gen + usize::from(inverted)) as u32)
        })
    }

    /// Letter encoding of a word: column indices `2*gen (+1 for inverse)`.
    pub fn word_letters(word: &Word) -> Vec<u32> {
        word.letters()
            .map(|(gen, inverted)| (2 * gen + usize::from(inverted)) as u32)
            .collect()
    }
}

/// Enumerate the cosets of the subgroup generated by `subgroup` in the group
/// presented by `p`.
pub fn enumerate(
    p: &Presentation,
    subgroup: &[Word],
    config: &EnumerationConfig,
) -> Result<(CosetTable, EnumerationStats), EnumerationError> {
    let g = p.generator_count();
    for w in subgroup {
        if let Some(max) = w.max_generator() {
            if max >= g {
                return Err(EnumerationError::MalformedSubgroupWord { gen: max, count: g });
            }
        }
    }
    enumerate::run(p, subgroup, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn enum_count(text: &str, subgroup: &[Word]) -> usize {
        let p = parse_presentation(text).unwrap();
        let (t, stats) = enumerate(&p, subgroup, &EnumerationConfig::default()).unwrap();
        assert_eq!(t.n_cosets(), stats.final_cosets);
        t.n_cosets()
    }

    #[test]
    fn cyclic_five() {
        assert_eq!(enum_count("a | a^5", &[]), 5);
    }

    #[test]
    fn s3_trivial_subgroup() {
        assert_eq!(enum_count("a, b | a^3, b^2, (a b)^2", &[]), 6);
    }

    #[test]
    fn s3_over_a3() {
        assert_eq!(
            enum_count("a, b | a^3, b^2, (a b)^2", &[Word::generator(0)]),
            2
        );
    }

    #[test]
    fn both_strategies_agree() {
        for text in [
            "a | a^12",
            "a, b | a^3, b^2, (a b)^2",
            "a, b | a^3, b^2, (a b)^3",
            "a, b | a^5, b^4, b a b^-1 a^-2",
            "a, b | a^9, b^2, (a b)^2",
        ] {
            let p = parse_presentation(text).unwrap();
            let hlt = enumerate(&p, &[], &EnumerationConfig::default()).unwrap();
            let felsch = enumerate(
                &p,
                &[],
                &EnumerationConfig {
                    strategy: Strategy::Felsch,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(hlt.0.n_cosets(), felsch.0.n_cosets(), "{text}");
            // Standardization makes the tables identical, not just equinumerous.
            assert_eq!(hlt.0, felsch.0, "{text}");
        }
    }

    #[test]
    fn relators_close_from_every_coset() {
        let p = parse_presentation("a, b | a^3, b^2, (a b)^3").unwrap();
        let (t, _) = enumerate(&p, &[], &EnumerationConfig::default()).unwrap();
        assert_eq!(t.n_cosets(), 12);
        for r in p.relators() {
            let letters = CosetTable::word_letters(r);
            for c in 1..=t.n_cosets() as u32 {
                assert_eq!(t.trace(c, &letters), c);
            }
        }
    }

    #[test]
    fn subgroup_generators_fix_row_one() {
        let p = parse_presentation("a, b | a^5, b^4, b a b^-1 a^-2").unwrap();
        let sub = [Word::generator(1)];
        let (t, _) = enumerate(&p, &sub, &EnumerationConfig::default()).unwrap();
        assert_eq!(t.n_cosets(), 5);
        assert_eq!(t.trace_word(1, &Word::generator(1)), 1);
    }

    #[test]
    fn coset_limit_is_an_error() {
        let p = parse_presentation("a, b | a^2, b^3, (a b)^7").unwrap(); // infinite (2,3,7) triangle-ish
        let config = EnumerationConfig {
            max_live_cosets: 500,
            compaction_threshold: 100,
            ..Default::default()
        };
        match enumerate(&p, &[], &config) {
            Err(EnumerationError::CosetLimitExceeded { limit, .. }) => assert_eq!(limit, 500),
            other => panic!("expected coset limit error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_subgroup_word() {
        let p = parse_presentation("a | a^5").unwrap();
        let err = enumerate(&p, &[Word::generator(3)], &EnumerationConfig::default());
        assert!(matches!(
            err,
            Err(EnumerationError::MalformedSubgroupWord { gen: 3, count: 1 })
        ));
    }

    #[test]
    fn determinism() {
        let p = parse_presentation("a, b | a^7, b^6, b a b^-1 a^-3").unwrap();
        let one = enumerate(&p, &[], &EnumerationConfig::default()).unwrap();
        let two = enumerate(&p, &[], &EnumerationConfig::default()).unwrap();
        assert_eq!(one.0, two.0);
        assert_eq!(one.1.total_cosets_defined, two.1.total_cosets_defined);
    }
}
