//! Isomorphism testing by generator-image backtracking.
//!
//! Intended for orders up to ~1000. A fingerprint pre-filter rejects most
//! non-isomorphic pairs; the search then maps a short generating sequence of
//! `A` onto order- and centralizer-compatible elements of `B`, extending each
//! partial assignment to the generated subgroup and pruning on the first
//! inconsistency. The node budget makes the worst case a distinct timeout
//! verdict rather than an open-ended run.

use super::{GroupError, GroupTable};

const ISO_NODE_BUDGET: u64 = 10_000_000;

pub fn is_isomorphic(a: &GroupTable, b: &GroupTable) -> Result<bool, GroupError> {
    if a.order() != b.order() {
        return Ok(false);
    }
    // Abelian groups are classified by their invariants.
    if let (Some(x), Some(y)) = (a.abelian_invariants(), b.abelian_invariants()) {
        return Ok(x == y);
    }
    Ok(isomorphism(a, b)?.is_some())
}

/// An explicit isomorphism `A -> B` as an image array, or None.
pub fn isomorphism(a: &GroupTable, b: &GroupTable) -> Result<Option<Vec<u32>>, GroupError> {
    if a.order() != b.order() {
        return Ok(None);
    }
    if a.order() == 1 {
        return Ok(Some(vec![0]));
    }
    if a.is_abelian() != b.is_abelian() || a.fingerprint() != b.fingerprint() {
        return Ok(None);
    }
    let gens = generating_sequence(a);
    let inv_a: Vec<(u64, usize)> = (0..a.order())
        .map(|x| (a.element_order(x), centralizer_size(a, x)))
        .collect();
    let inv_b: Vec<(u64, usize)> = (0..b.order())
        .map(|x| (b.element_order(x), centralizer_size(b, x)))
        .collect();
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&g| {
            (0..b.order())
                .filter(|&h| inv_b[h] == inv_a[g as usize])
                .map(|h| h as u32)
                .collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return Ok(None);
    }

    let mut nodes = 0u64;
    let mut images = vec![0u32; gens.len()];
    match assign(a, b, &gens, &candidates, &mut images, 0, &mut nodes) {
        Ok(Some(map)) => {
            // The closure already checked every generator edge; a final full
            // pass makes the verdict unconditional.
            for x in 0..a.order() {
                for y in 0..a.order() {
                    if map[a.mul(x, y)] as usize != b.mul(map[x] as usize, map[y] as usize) {
                        return Err(GroupError::InvalidTable(
                            "isomorphism candidate failed the full product check".into(),
                        ));
                    }
                }
            }
            Ok(Some(map))
        }
        other => other,
    }
}

fn assign(
    a: &GroupTable,
    b: &GroupTable,
    gens: &[u32],
    candidates: &[Vec<u32>],
    images: &mut Vec<u32>,
    level: usize,
    nodes: &mut u64,
) -> Result<Option<Vec<u32>>, GroupError> {
    if level == gens.len() {
        return match close_partial(a, b, gens, images, nodes)? {
            Some((map, reached)) if reached == a.order() => Ok(Some(map)),
            _ => Ok(None),
        };
    }
    for &cand in &candidates[level] {
        images[level] = cand;
        // Partial consistency: the subgroup generated so far must map.
        if close_partial(a, b, &gens[..=level], images, nodes)?.is_some() {
            if let Some(found) = assign(a, b, gens, candidates, images, level + 1, nodes)? {
                return Ok(Some(found));
            }
        }
    }
    Ok(None)
}

/// Closes the subgroup generated by a prefix of the generators while
/// propagating images. Returns the (possibly partial) image map plus the
/// number of elements reached, or None on the first conflict
/// (non-well-defined or non-injective partial map). Unreached elements map
/// to `u32::MAX`.
fn close_partial(
    a: &GroupTable,
    b: &GroupTable,
    gens: &[u32],
    images: &[u32],
    nodes: &mut u64,
) -> Result<Option<(Vec<u32>, usize)>, GroupError> {
    let n = a.order();
    let mut map = vec![u32::MAX; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head] as usize;
        head += 1;
        for (i, &g) in gens.iter().enumerate() {
            *nodes += 1;
            if *nodes > ISO_NODE_BUDGET {
                return Err(GroupError::IsoTimeout(ISO_NODE_BUDGET));
            }
            let y = a.mul(x, g as usize);
            let img = b.mul(map[x] as usize, images[i] as usize) as u32;
            if map[y] == u32::MAX {
                if used[img as usize] {
                    return Ok(None); // not injective
                }
                map[y] = img;
                used[img as usize] = true;
                queue.push(y as u32);
            } else if map[y] != img {
                return Ok(None); // not well-defined
            }
        }
    }
    let reached = queue.len();
    Ok(Some((map, reached)))
}

/// Deterministic generating sequence: highest element order first (fewer
/// image candidates), then repeatedly the smallest element outside the
/// closure.
fn generating_sequence(g: &GroupTable) -> Vec<u32> {
    let n = g.order();
    let mut gens: Vec<u32> = Vec::new();
    let mut in_cl = vec![false; n];
    in_cl[0] = true;
    let mut size = 1;
    let first = (1..n)
        .max_by_key(|&x| (g.element_order(x), usize::MAX - x))
        .expect("nontrivial group");
    let mut next = Some(first as u32);
    while size < n {
        let pick = next
            .take()
            .unwrap_or_else(|| (0..n).find(|&x| !in_cl[x]).expect("closure not full") as u32);
        gens.push(pick);
        let mut frontier: Vec<u32> = (0..n as u32).filter(|&x| in_cl[x as usize]).collect();
        while let Some(x) = frontier.pop() {
            for &gen in &gens {
                let y = g.mul(x as usize, gen as usize) as u32;
                if !in_cl[y as usize] {
                    in_cl[y as usize] = true;
                    size += 1;
                    frontier.push(y);
                }
            }
        }
    }
    if gens.is_empty() {
        gens.push(0);
    }
    gens
}

fn centralizer_size(g: &GroupTable, x: usize) -> usize {
    (0..g.order())
        .filter(|&y| g.mul(x, y) == g.mul(y, x))
        .count()
}

#[cfg(test)]
mod tests {
    use super::super::constructors::*;
    use super::*;

    #[test]
    fn order_mismatch_short_circuits() {
        let a = cyclic_group(4).unwrap();
        let b = cyclic_group(5).unwrap();
        assert!(!is_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn z4_vs_klein() {
        let z4 = cyclic_group(4).unwrap();
        let v4 = abelian_group(&[2, 2]).unwrap();
        assert!(!is_isomorphic(&z4, &v4).unwrap());
    }

    #[test]
    fn two_presentations_of_s3() {
        let a = dihedral_group(3).unwrap();
        let b = metacyclic_group(3, 2, 2).unwrap();
        assert!(is_isomorphic(&a, &b).unwrap());
        let map = isomorphism(&a, &b).unwrap().unwrap();
        assert_eq!(map.len(), 6);
        assert_eq!(map[0], 0);
    }

    #[test]
    fn q8_vs_d8() {
        let q8 = quaternion_group();
        let d8 = dihedral_group(4).unwrap();
        assert!(!is_isomorphic(&q8, &d8).unwrap());
    }

    #[test]
    fn z3_q8_products() {
        let a = direct_product(&cyclic_group(3).unwrap(), &quaternion_group());
        let b = direct_product(&quaternion_group(), &cyclic_group(3).unwrap());
        assert!(is_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn reflexive_and_symmetric() {
        let groups = [
            dihedral_group(6).unwrap(),
            alternating_four(),
            metacyclic_group(5, 4, 2).unwrap(),
            extraspecial_exponent_p(3).unwrap(),
        ];
        for g in &groups {
            assert!(is_isomorphic(g, g).unwrap());
        }
        for g in &groups {
            for h in &groups {
                assert_eq!(
                    is_isomorphic(g, h).unwrap(),
                    is_isomorphic(h, g).unwrap()
                );
            }
        }
    }

    #[test]
    fn extraspecial_types_differ() {
        let a = extraspecial_exponent_p(3).unwrap();
        let b = extraspecial_exponent_p2(3).unwrap();
        assert!(!is_isomorphic(&a, &b).unwrap());
        assert!(is_isomorphic(&a, &extraspecial_exponent_p(3).unwrap()).unwrap());
    }

    #[test]
    fn isomorphism_implies_fingerprint_equality() {
        let a = direct_product(&cyclic_group(5).unwrap(), &metacyclic_group(7, 4, -1).unwrap());
        let b = direct_product(&metacyclic_group(7, 4, -1).unwrap(), &cyclic_group(5).unwrap());
        assert!(is_isomorphic(&a, &b).unwrap());
        assert_eq!(a.fingerprint(), b.fingerprint());
    }
}
