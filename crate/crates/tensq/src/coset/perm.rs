//! From coset tables to permutations and multiplication tables.

use super::{enumerate, CosetTable, EnumerationConfig, EnumerationError, EnumerationStats};
use crate::group::GroupTable;
use crate::presentation::{Presentation, Word};

/// Regular representations are materialized as full tables only up to this
/// many elements; anything larger stays a coset table.
pub const REGULAR_REP_MAX: usize = 4096;

/// One permutation per generator: point `c - 1` maps to `c * g - 1` on the
/// live cosets of a complete table.
pub fn permutation_rep(table: &CosetTable) -> Result<Vec<Vec<u32>>, EnumerationError> {
    let n = table.n_cosets();
    let mut perms = Vec::with_capacity(table.generator_count());
    for gen in 0..table.generator_count() {
        let mut perm = Vec::with_capacity(n);
        for c in 1..=n as u32 {
            let image = table.apply(c, 2 * gen as u32);
            if image == 0 {
                return Err(EnumerationError::IncompleteTable);
            }
            perm.push(image - 1);
        }
        perms.push(perm);
    }
    Ok(perms)
}

/// Breadth-first representative words: `words[c]` carries coset `1` to
/// coset `c` (as table letters).
pub fn coset_words(table: &CosetTable) -> Vec<Vec<u32>> {
    let n = table.n_cosets();
    let cols = 2 * table.generator_count();
    let mut words: Vec<Option<Vec<u32>>> = vec![None; n + 1];
    words[0] = Some(Vec::new()); // unused slot, cosets are 1-based
    words[1] = Some(Vec::new());
    let mut queue = std::collections::VecDeque::from([1u32]);
    while let Some(c) = queue.pop_front() {
        for col in 0..cols as u32 {
            let d = table.apply(c, col);
            if d != 0 && words[d as usize].is_none() {
                let mut w = words[c as usize].clone().expect("visited");
                w.push(col);
                words[d as usize] = Some(w);
                queue.push_back(d);
            }
        }
    }
    words
        .into_iter()
        .map(|w| w.expect("complete table is transitive"))
        .collect()
}

/// The presented group as a full multiplication table, from the coset action
/// on the trivial subgroup. Element `i` is coset `i + 1`; multiplication
/// traces the representative word of the right factor.
pub fn regular_representation(
    p: &Presentation,
    config: &EnumerationConfig,
) -> Result<(GroupTable, EnumerationStats), EnumerationError> {
    let (table, stats) = enumerate(p, &[], config)?;
    let n = table.n_cosets();
    if n > REGULAR_REP_MAX {
        return Err(EnumerationError::TableTooLarge(n));
    }
    let words = coset_words(&table);
    let mut entries = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            entries[x * n + y] = table.trace((x + 1) as u32, &words[y + 1]) - 1;
        }
    }
    let generators: Vec<u32> = (0..p.generator_count())
        .map(|gen| table.apply(1, 2 * gen as u32) - 1)
        .collect();
    let group = GroupTable::new(n, entries, generators, None)?;
    Ok((group, stats))
}

/// Index of the subgroup generated by `subgroup` in the presented group:
/// the number of live cosets after enumeration.
pub fn subgroup_index(
    p: &Presentation,
    subgroup: &[Word],
    config: &EnumerationConfig,
) -> Result<(usize, EnumerationStats), EnumerationError> {
    let (table, stats) = enumerate(p, subgroup, config)?;
    Ok((table.n_cosets(), stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::is_isomorphic;
    use crate::presentation::parse_presentation;

    #[test]
    fn cyclic_five_is_a_five_cycle() {
        let p = parse_presentation("a | a^5").unwrap();
        let (t, _) = enumerate(&p, &[], &EnumerationConfig::default()).unwrap();
        let perms = permutation_rep(&t).unwrap();
        assert_eq!(perms.len(), 1);
        let perm = &perms[0];
        let mut seen = vec![false; 5];
        let mut point = 0u32;
        for _ in 0..5 {
            assert!(!std::mem::replace(&mut seen[point as usize], true));
            point = perm[point as usize];
        }
        assert_eq!(point, 0);
    }

    #[test]
    fn s3_permutations_generate_order_six() {
        let p = parse_presentation("a, b | a^3, b^2, (a b)^2").unwrap();
        let (g, _) = regular_representation(&p, &EnumerationConfig::default()).unwrap();
        assert_eq!(g.order(), 6);
        let s3 = crate::group::dihedral_group(3).unwrap();
        assert!(is_isomorphic(&g, &s3).unwrap());
    }

    #[test]
    fn a4_regular_representation() {
        let p = parse_presentation("a, b | a^3, b^2, (a b)^3").unwrap();
        let (g, _) = regular_representation(&p, &EnumerationConfig::default()).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.derived_subgroup().order(), 4);
    }

    #[test]
    fn metacyclic_f20_order() {
        let p = parse_presentation("a, b | a^5, b^4, b a b^-1 a^-2").unwrap();
        let (g, _) = regular_representation(&p, &EnumerationConfig::default()).unwrap();
        assert_eq!(g.order(), 20);
        let f20 = crate::group::metacyclic_group(5, 4, 2).unwrap();
        assert!(is_isomorphic(&g, &f20).unwrap());
    }

    #[test]
    fn index_equals_regular_order_over_trivial() {
        let p = parse_presentation("a, b | a^9, b^2, (a b)^2").unwrap();
        let (idx, _) = subgroup_index(&p, &[], &EnumerationConfig::default()).unwrap();
        let (g, _) = regular_representation(&p, &EnumerationConfig::default()).unwrap();
        assert_eq!(idx, g.order());
    }

    #[test]
    fn relators_act_trivially() {
        let p = parse_presentation("a, b | a^5, b^4, b a b^-1 a^-2").unwrap();
        let (t, _) = enumerate(&p, &[], &EnumerationConfig::default()).unwrap();
        for r in p.relators() {
            let letters = CosetTable::word_letters(r);
            for c in 1..=t.n_cosets() as u32 {
                assert_eq!(t.trace(c, &letters), c);
            }
        }
    }
}
