//! Concrete finite groups as full multiplication tables, with subgroup,
//! quotient, invariant and isomorphism machinery.
//!
//! Elements are dense indices `0..order` with the identity fixed at 0; all
//! element sets are sorted index vectors, so set equality is vector equality.
//!
//! Convention: `commutator(x, y) = x y x^-1 y^-1` and conjugation acts on the
//! left, `conj(g, x) = g x g^-1`. The word-level commutator used in relators
//! is the inverted form; see `presentation` for the translation.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::abelian::{factorize, is_prime, FiniteAbelianGroup};
use crate::rng::{SplitMix64, CHECK_SEED};

mod cayley;
mod constructors;
mod iso;
mod structure;

pub use cayley::parse_cayley_table;
pub use constructors::{
    abelian_by_cyclic, abelian_group, alternating_four, cyclic_group, dihedral_group,
    direct_product, extraspecial_exponent_p, extraspecial_exponent_p2, generalized_dihedral,
    metacyclic_group, quaternion_group, semidirect_product,
};
pub use iso::{is_isomorphic, isomorphism};
pub use structure::{recognize_structure, ExtraspecialKind, StructureDescriptor};

/// Full associativity is verified up to this order; larger tables get 10^4
/// seeded random triples. Constructors are associative by construction, so
/// sampling only guards against ingestion bugs.
const FULL_ASSOC_BOUND: usize = 64;
const SAMPLED_PAIRS: usize = 10_000;
/// Homomorphisms are verified on all pairs up to this source order.
const FULL_HOM_BOUND: usize = 600;
const COMPLEMENT_SEARCH_BOUND: u64 = 5_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("group order must be positive")]
    EmptyGroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} does not divide the group order {1}")]
    NotADivisor(u64, u64),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("not a homomorphism: images[{x}*{y}] != images[{x}]*images[{y}]")]
    NotAHomomorphism { x: usize, y: usize },
    #[error("isomorphism search exceeded {0} nodes")]
    IsoTimeout(u64),
    #[error("complement search exceeded {0} candidate subgroups")]
    SearchBoundExceeded(u64),
    #[error("cayley table input: {0}")]
    CayleyFormat(String),
}

/// A finite group as its complete multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    generators: Vec<u32>,
    name: Option<String>,
}

impl GroupTable {
    /// Validates the table invariants: identity at index 0, two-sided
    /// inverses, rows/columns permutations, associativity (full below
    /// `FULL_ASSOC_BOUND`, seeded sample above) and generator closure.
    pub fn new(
        order: usize,
        table: Vec<u32>,
        generators: Vec<u32>,
        name: Option<String>,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::EmptyGroup);
        }
        if table.len() != order * order {
            return Err(GroupError::InvalidTable(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v as usize >= order) {
            return Err(GroupError::InvalidTable(format!(
                "entry {bad} out of range for order {order}"
            )));
        }
        let at = |x: usize, y: usize| table[x * order + y] as usize;
        for x in 0..order {
            if at(0, x) != x || at(x, 0) != x {
                return Err(GroupError::InvalidTable(format!(
                    "index 0 is not a two-sided identity at element {x}"
                )));
            }
        }
        // Rows and columns must be permutations.
        let mut seen = vec![false; order];
        for x in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for y in 0..order {
                if std::mem::replace(&mut seen[at(x, y)], true) {
                    return Err(GroupError::InvalidTable(format!("row {x} repeats a value")));
                }
            }
            seen.iter_mut().for_each(|s| *s = false);
            for y in 0..order {
                if std::mem::replace(&mut seen[at(y, x)], true) {
                    return Err(GroupError::InvalidTable(format!(
                        "column {x} repeats a value"
                    )));
                }
            }
        }
        let mut inverse = vec![0u32; order];
        for x in 0..order {
            match (0..order).find(|&y| at(x, y) == 0) {
                Some(y) if at(y, x) == 0 => inverse[x] = y as u32,
                _ => {
                    return Err(GroupError::InvalidTable(format!(
                        "element {x} has no two-sided inverse"
                    )))
                }
            }
        }
        let assoc = |x: usize, y: usize, z: usize| at(at(x, y), z) == at(x, at(y, z));
        if order <= FULL_ASSOC_BOUND {
            for x in 0..order {
                for y in 0..order {
                    for z in 0..order {
                        if !assoc(x, y, z) {
                            return Err(GroupError::InvalidTable(format!(
                                "associativity fails at ({x}, {y}, {z})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = SplitMix64::new(CHECK_SEED);
            for _ in 0..SAMPLED_PAIRS {
                let (x, y, z) = (rng.below(order), rng.below(order), rng.below(order));
                if !assoc(x, y, z) {
                    return Err(GroupError::InvalidTable(format!(
                        "associativity fails at sampled ({x}, {y}, {z})"
                    )));
                }
            }
        }
        let group = Self {
            order,
            table,
            inverse,
            generators: generators.clone(),
            name,
        };
        let closure = group.closure_of(&generators);
        if closure.len() != order {
            return Err(GroupError::InvalidTable(format!(
                "generators reach only {} of {} elements",
                closure.len(),
                order
            )));
        }
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = Some(name.into());
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x] as usize
    }

    /// `x y x^-1 y^-1`
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.mul(x, y), self.inv(x)), self.inv(y))
    }

    /// Left conjugation `g x g^-1`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut cur = x;
        let mut n = 1;
        while cur != 0 {
            cur = self.mul(cur, x);
            n += 1;
        }
        n
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order).fold(1u64, |acc, x| lcm(acc, self.element_order(x)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (x..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    fn closure_of(&self, seeds: &[u32]) -> Vec<u32> {
        let mut in_set = vec![false; self.order];
        in_set[0] = true;
        let mut frontier = vec![0u32];
        let mut out = vec![0u32];
        while let Some(x) = frontier.pop() {
            for &s in seeds {
                let y = self.table[x as usize * self.order + s as usize];
                if !in_set[y as usize] {
                    in_set[y as usize] = true;
                    out.push(y);
                    frontier.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Subgroup generated by `seeds` (closure under multiplication; inverses
    /// come for free in a finite group).
    pub fn subgroup_generated(&self, seeds: &[u32]) -> Subgroup {
        let elements = self.closure_of(seeds);
        let is_normal = self.is_normal_set(&elements);
        Subgroup {
            parent_order: self.order,
            elements,
            is_normal,
        }
    }

    fn is_normal_set(&self, elements: &[u32]) -> bool {
        let mut member = vec![false; self.order];
        for &x in elements {
            member[x as usize] = true;
        }
        (0..self.order).all(|g| elements.iter().all(|&x| member[self.conj(g, x as usize)]))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            parent_order: self.order,
            elements: vec![0],
            is_normal: true,
        }
    }

    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup {
            parent_order: self.order,
            elements: (0..self.order as u32).collect(),
            is_normal: true,
        }
    }

    /// Subgroup generated by all commutators.
    pub fn derived_subgroup(&self) -> Subgroup {
        let mut seeds = Vec::new();
        for x in 0..self.order {
            for y in x + 1..self.order {
                let c = self.commutator(x, y) as u32;
                if c != 0 {
                    seeds.push(c);
                }
            }
        }
        seeds.sort_unstable();
        seeds.dedup();
        let sub = self.subgroup_generated(&seeds);
        debug_assert!(sub.is_normal);
        sub
    }

    pub fn center(&self) -> Subgroup {
        let elements: Vec<u32> = (0..self.order)
            .filter(|&z| (0..self.order).all(|x| self.mul(z, x) == self.mul(x, z)))
            .map(|z| z as u32)
            .collect();
        Subgroup {
            parent_order: self.order,
            elements,
            is_normal: true,
        }
    }

    /// Quotient by a normal subgroup: the coset multiplication table (cosets
    /// ordered by minimal element, so the identity coset is index 0) plus the
    /// projection.
    pub fn quotient(&self, n: &Subgroup) -> Result<(GroupTable, Homomorphism), GroupError> {
        assert_eq!(n.parent_order, self.order, "subgroup of a different group");
        if !n.is_normal {
            return Err(GroupError::NotNormal);
        }
        let mut coset_of = vec![u32::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            for &h in &n.elements {
                coset_of[self.mul(x, h as usize)] = c;
            }
            reps.push(x);
        }
        let q = reps.len();
        let mut table = vec![0u32; q * q];
        for (a, &ra) in reps.iter().enumerate() {
            for (b, &rb) in reps.iter().enumerate() {
                table[a * q + b] = coset_of[self.mul(ra, rb)];
            }
        }
        let mut gens: Vec<u32> = self
            .generators
            .iter()
            .map(|&g| coset_of[g as usize])
            .filter(|&g| g != 0)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() && q > 1 {
            gens = greedy_generators_from(&table, q);
        }
        let quotient = GroupTable::new(q, table, gens, None)?;
        let projection = Homomorphism::new(self, &quotient, coset_of)?;
        Ok((quotient, projection))
    }

    /// Invariant factors of `G / G'`, plus the quotient table realizing the
    /// abelianization and the projection onto it.
    pub fn abelianization(&self) -> (FiniteAbelianGroup, GroupTable, Homomorphism) {
        let derived = self.derived_subgroup();
        let (quotient, projection) = self.quotient(&derived).expect("derived subgroup is normal");
        let invariants = quotient
            .abelian_invariants()
            .expect("quotient by derived subgroup is abelian");
        (invariants, quotient, projection)
    }

    /// Invariant factors of an abelian table, recovered from element-order
    /// counts: at each prime, `#{x : x^(p^k) = 1} = p^(sum_i min(lambda_i, k))`
    /// determines the partition `lambda`. Returns None when not abelian.
    pub fn abelian_invariants(&self) -> Option<FiniteAbelianGroup> {
        if !self.is_abelian() {
            return None;
        }
        let orders: Vec<u64> = (0..self.order).map(|x| self.element_order(x)).collect();
        let n = self.order as u64;
        let mut moduli: Vec<u64> = Vec::new();
        for (p, max_e) in factorize(n) {
            // f[k] = log_p #{x : x^(p^k) = 1}
            let mut f = vec![0u32; max_e as usize + 2];
            for k in 1..=max_e {
                let pk = p.pow(k);
                let count = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
                let mut log = 0u32;
                let mut c = count;
                while c > 1 {
                    debug_assert_eq!(c % p, 0, "element count is not a power of {p}");
                    c /= p;
                    log += 1;
                }
                f[k as usize] = log;
            }
            f[max_e as usize + 1] = f[max_e as usize];
            for k in 1..=max_e as usize {
                let at_least_k = f[k] - f[k - 1];
                let at_least_k1 = f[k + 1] - f[k];
                for _ in 0..(at_least_k - at_least_k1) {
                    moduli.push(p.pow(k as u32));
                }
            }
        }
        Some(FiniteAbelianGroup::from_moduli(&moduli))
    }

    /// The elements of p-power order, when they form the full p-part of the
    /// group: the unique (hence normal) Sylow p-subgroup. `None` when the
    /// Sylow subgroup is not normal.
    pub fn normal_sylow(&self, p: u64) -> Result<Option<Subgroup>, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let n = self.order as u64;
        if n % p != 0 {
            return Err(GroupError::NotADivisor(p, n));
        }
        let mut p_part = 1u64;
        let mut m = n;
        while m % p == 0 {
            m /= p;
            p_part *= p;
        }
        let elements: Vec<u32> = (0..self.order)
            .filter(|&x| {
                let mut o = self.element_order(x);
                while o % p == 0 {
                    o /= p;
                }
                o == 1
            })
            .map(|x| x as u32)
            .collect();
        if elements.len() as u64 != p_part {
            return Ok(None);
        }
        let mut member = vec![false; self.order];
        for &x in &elements {
            member[x as usize] = true;
        }
        let closed = elements.iter().all(|&x| {
            elements
                .iter()
                .all(|&y| member[self.mul(x as usize, y as usize)])
        });
        if !closed {
            return Err(GroupError::InvalidTable(
                "p-power elements of full p-part size do not close".into(),
            ));
        }
        let is_normal = self.is_normal_set(&elements);
        debug_assert!(is_normal, "unique Sylow subgroup must be normal");
        Ok(Some(Subgroup {
            parent_order: self.order,
            elements,
            is_normal,
        }))
    }

    /// Searches for a complement of the normal subgroup `n`: a subgroup `H`
    /// with `H \cap N = 1` and `|H| |N| = |G|`, exhaustively over subgroups
    /// generated by at most 3 elements. Smaller generating sets are tried
    /// first, so a cyclic complement is found whenever one exists.
    pub fn find_complement(&self, n: &Subgroup) -> Result<Option<Subgroup>, GroupError> {
        self.find_complement_bounded(n, COMPLEMENT_SEARCH_BOUND)
    }

    fn find_complement_bounded(
        &self,
        n: &Subgroup,
        search_bound: u64,
    ) -> Result<Option<Subgroup>, GroupError> {
        assert_eq!(n.parent_order, self.order);
        assert!(n.is_normal, "complement search expects a normal subgroup");
        let target = self.order / n.elements.len();
        if target == 1 {
            return Ok(Some(self.trivial_subgroup()));
        }
        let mut in_n = vec![false; self.order];
        for &x in &n.elements {
            in_n[x as usize] = true;
        }
        // A complement's non-identity elements avoid N and have order
        // dividing |G|/|N|, with the whole cyclic subgroup avoiding N.
        let candidates: Vec<u32> = (1..self.order)
            .filter(|&x| {
                if in_n[x] || target as u64 % self.element_order(x) != 0 {
                    return false;
                }
                let mut cur = x;
                while cur != 0 {
                    if in_n[cur] {
                        return false;
                    }
                    cur = self.mul(cur, x);
                }
                true
            })
            .map(|x| x as u32)
            .collect();
        let mut budget = search_bound;
        let mut hit_bound = false;
        let try_seeds = |seeds: &[u32], budget: &mut u64| -> Option<Subgroup> {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            let sub = self.subgroup_generated(seeds);
            if sub.elements.len() == target
                && sub.elements.iter().all(|&x| x == 0 || !in_n[x as usize])
            {
                Some(sub)
            } else {
                None
            }
        };
        for i in 0..candidates.len() {
            if let Some(h) = try_seeds(&[candidates[i]], &mut budget) {
                return Ok(Some(h));
            }
        }
        for i in 0..candidates.len() {
            for j in i + 1..candidates.len() {
                if let Some(h) = try_seeds(&[candidates[i], candidates[j]], &mut budget) {
                    return Ok(Some(h));
                }
            }
        }
        if budget == 0 {
            return Err(GroupError::SearchBoundExceeded(search_bound));
        }
        'outer: for i in 0..candidates.len() {
            for j in i + 1..candidates.len() {
                for k in j + 1..candidates.len() {
                    if budget == 0 {
                        hit_bound = true;
                        break 'outer;
                    }
                    if let Some(h) =
                        try_seeds(&[candidates[i], candidates[j], candidates[k]], &mut budget)
                    {
                        return Ok(Some(h));
                    }
                }
            }
        }
        if hit_bound || budget == 0 {
            return Err(GroupError::SearchBoundExceeded(search_bound));
        }
        Ok(None)
    }

    /// Extracts a subgroup as its own GroupTable; `map[i]` is the parent
    /// index of the new element `i`.
    pub fn subgroup_table(&self, sub: &Subgroup) -> (GroupTable, Vec<u32>) {
        assert_eq!(sub.parent_order, self.order);
        let map = sub.elements.clone();
        let mut index_of = vec![u32::MAX; self.order];
        for (i, &x) in map.iter().enumerate() {
            index_of[x as usize] = i as u32;
        }
        let m = map.len();
        let mut table = vec![0u32; m * m];
        for (a, &xa) in map.iter().enumerate() {
            for (b, &xb) in map.iter().enumerate() {
                let prod = index_of[self.mul(xa as usize, xb as usize)];
                assert_ne!(prod, u32::MAX, "subgroup set is not closed");
                table[a * m + b] = prod;
            }
        }
        let gens = greedy_generators_from(&table, m);
        let group = GroupTable::new(m, table, gens, None).expect("subgroup table is a group");
        (group, map)
    }

    pub fn fingerprint(&self) -> GroupFingerprint {
        let mut histogram: BTreeMap<u64, usize> = BTreeMap::new();
        for x in 0..self.order {
            *histogram.entry(self.element_order(x)).or_default() += 1;
        }
        GroupFingerprint {
            order: self.order as u64,
            exponent: self.exponent(),
            order_histogram: histogram.into_iter().collect(),
            derived_order: self.derived_subgroup().order() as u64,
            center_order: self.center().order() as u64,
            abelian_invariants: self.abelian_invariants(),
        }
    }
}

/// Deterministic small generating set: repeatedly adjoin the smallest
/// element outside the closure so far. On a malformed table (no identity
/// row) the closure may stop growing; bail out then and let table
/// validation report the defect.
pub(crate) fn greedy_generators_from(table: &[u32], order: usize) -> Vec<u32> {
    let mut gens: Vec<u32> = Vec::new();
    let mut in_closure = vec![false; order];
    in_closure[0] = true;
    let mut size = 1;
    while size < order {
        let next = (0..order).find(|&x| !in_closure[x]).expect("closure not full") as u32;
        gens.push(next);
        let mut frontier: Vec<u32> = (0..order as u32)
            .filter(|&x| in_closure[x as usize])
            .collect();
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = table[x as usize * order + g as usize];
                if !in_closure[y as usize] {
                    in_closure[y as usize] = true;
                    size += 1;
                    frontier.push(y);
                }
            }
        }
        if !in_closure[next as usize] {
            break;
        }
    }
    gens
}

fn lcm(a: u64, b: u64) -> u64 {
    a / crate::abelian::gcd(a, b) * b
}

/// A subgroup of a parent table, as a sorted element-index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent_order: usize,
    elements: Vec<u32>,
    is_normal: bool,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&(x as u32)).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.parent_order == other.parent_order
            && self.elements.iter().all(|&x| other.contains(x as usize))
    }
}

/// A homomorphism between two tables, as the image array of every source
/// element. Verified on construction (all pairs up to source order 600,
/// a seeded 10^4-pair sample above).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source_order: usize,
    target_order: usize,
    images: Vec<u32>,
}

impl Homomorphism {
    pub fn new(
        source: &GroupTable,
        target: &GroupTable,
        images: Vec<u32>,
    ) -> Result<Self, GroupError> {
        assert_eq!(images.len(), source.order());
        assert!(images.iter().all(|&y| (y as usize) < target.order()));
        if images[0] != 0 {
            return Err(GroupError::NotAHomomorphism { x: 0, y: 0 });
        }
        let check = |x: usize, y: usize| {
            images[source.mul(x, y)] as usize == target.mul(images[x] as usize, images[y] as usize)
        };
        let n = source.order();
        if n <= FULL_HOM_BOUND {
            for x in 0..n {
                for y in 0..n {
                    if !check(x, y) {
                        return Err(GroupError::NotAHomomorphism { x, y });
                    }
                }
            }
        } else {
            let mut rng = SplitMix64::new(CHECK_SEED);
            for _ in 0..SAMPLED_PAIRS {
                let (x, y) = (rng.below(n), rng.below(n));
                if !check(x, y) {
                    return Err(GroupError::NotAHomomorphism { x, y });
                }
            }
        }
        Ok(Self {
            source_order: source.order(),
            target_order: target.order(),
            images,
        })
    }

    pub fn image_of(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn source_order(&self) -> usize {
        self.source_order
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    /// Sorted, deduplicated image set.
    pub fn image_elements(&self) -> Vec<u32> {
        let mut v = self.images.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn kernel(&self, source: &GroupTable) -> Subgroup {
        assert_eq!(source.order(), self.source_order);
        let elements: Vec<u32> = (0..self.source_order)
            .filter(|&x| self.images[x] == 0)
            .map(|x| x as u32)
            .collect();
        let is_normal = source.is_normal_set(&elements);
        debug_assert!(is_normal, "kernels are normal");
        Subgroup {
            parent_order: self.source_order,
            elements,
            is_normal,
        }
    }

    pub fn is_surjective(&self) -> bool {
        self.image_elements().len() == self.target_order
    }

    pub fn is_injective(&self) -> bool {
        self.image_elements().len() == self.source_order
    }
}

/// Cheap isomorphism-invariant summary; equal fingerprints are necessary
/// (not sufficient) for isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFingerprint {
    pub order: u64,
    pub exponent: u64,
    pub order_histogram: Vec<(u64, usize)>,
    pub derived_order: u64,
    pub center_order: u64,
    pub abelian_invariants: Option<FiniteAbelianGroup>,
}

impl fmt::Display for GroupFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "order={}, exponent={}, |G'|={}, |Z|={}",
            self.order, self.exponent, self.derived_order, self.center_order
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let g = cyclic_group(1).unwrap();
        assert_eq!(g.order(), 1);
        let g = cyclic_group(6).unwrap();
        assert_eq!(g.element_order(1), 6);
        let g = cyclic_group(20).unwrap();
        assert_eq!(g.exponent(), 20);
        assert_eq!(g.abelian_invariants().unwrap().invariant_factors(), &[20]);
        assert!(cyclic_group(0).is_err());
    }

    #[test]
    fn direct_products() {
        let z2 = cyclic_group(2).unwrap();
        let z3 = cyclic_group(3).unwrap();
        let g = direct_product(&z2, &z3);
        assert_eq!(g.order(), 6);
        assert!((0..6).any(|x| g.element_order(x) == 6));
        let v = direct_product(&z2, &z2);
        assert_eq!(v.exponent(), 2);
        assert_eq!(v.order(), 4);
        let q8 = quaternion_group();
        let g = direct_product(&q8, &z3);
        assert_eq!(g.order(), 24);
        assert_eq!(g.derived_subgroup().order(), 2);
    }

    #[test]
    fn semidirect_s3_and_f20() {
        let s3 = dihedral_group(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.derived_subgroup().order(), 3);
        let f20 = metacyclic_group(5, 4, 2).unwrap();
        assert_eq!(f20.order(), 20);
        let (ab, _, _) = f20.abelianization();
        assert_eq!(ab.invariant_factors(), &[4]);
    }

    #[test]
    fn frobenius75_derived_subgroup() {
        let g = abelian_by_cyclic(&[5, 5], 3, &[vec![0, 1], vec![-1, -1]]).unwrap();
        assert_eq!(g.order(), 75);
        let d = g.derived_subgroup();
        assert_eq!(d.order(), 25);
        let (dt, _) = g.subgroup_table(&d);
        assert_eq!(dt.abelian_invariants().unwrap().invariant_factors(), &[5, 5]);
    }

    #[test]
    fn derived_subgroups() {
        let z6 = cyclic_group(6).unwrap();
        assert_eq!(z6.derived_subgroup().order(), 1);
        let a4 = alternating_four();
        let d = a4.derived_subgroup();
        assert_eq!(d.order(), 4);
        let (dt, _) = a4.subgroup_table(&d);
        assert_eq!(dt.exponent(), 2);
        let d18 = dihedral_group(9).unwrap();
        let d = d18.derived_subgroup();
        assert_eq!(d.order(), 9);
        let (dt, _) = d18.subgroup_table(&d);
        assert_eq!(dt.abelian_invariants().unwrap().invariant_factors(), &[9]);
    }

    #[test]
    fn centers() {
        let g = cyclic_group(1).unwrap();
        assert_eq!(g.center().order(), 1);
        let s3 = dihedral_group(3).unwrap();
        assert_eq!(s3.center().order(), 1);
        let q8 = quaternion_group();
        assert_eq!(q8.center().order(), 2);
    }

    #[test]
    fn quotients() {
        let s3 = dihedral_group(3).unwrap();
        let whole = s3.full_subgroup();
        let (q, _) = s3.quotient(&whole).unwrap();
        assert_eq!(q.order(), 1);
        let a4 = alternating_four();
        let v4 = a4.derived_subgroup();
        let (q, pi) = a4.quotient(&v4).unwrap();
        assert_eq!(q.order(), 3);
        assert!(pi.is_surjective());
        let a3 = s3.derived_subgroup();
        let (q, _) = s3.quotient(&a3).unwrap();
        assert_eq!(q.order(), 2);
        // Non-normal subgroups are rejected.
        let refl = s3.subgroup_generated(&[(1..6)
            .find(|&x| s3.element_order(x) == 2)
            .unwrap() as u32]);
        assert!(!refl.is_normal());
        assert!(matches!(s3.quotient(&refl), Err(GroupError::NotNormal)));
    }

    #[test]
    fn abelianizations() {
        let (ab, _, _) = cyclic_group(6).unwrap().abelianization();
        assert_eq!(ab.invariant_factors(), &[6]);
        let (ab, _, _) = dihedral_group(10).unwrap().abelianization();
        assert_eq!(ab.invariant_factors(), &[2, 2]);
    }

    #[test]
    fn exponents() {
        assert_eq!(cyclic_group(12).unwrap().exponent(), 12);
        assert_eq!(quaternion_group().exponent(), 4);
        assert_eq!(alternating_four().exponent(), 6);
    }

    #[test]
    fn normal_sylows() {
        let z12 = cyclic_group(12).unwrap();
        let s = z12.normal_sylow(2).unwrap().unwrap();
        assert_eq!(s.order(), 4);
        let s3 = dihedral_group(3).unwrap();
        let s = s3.normal_sylow(3).unwrap().unwrap();
        assert_eq!(s.order(), 3);
        assert!(s.is_normal());
        assert!(s3.normal_sylow(2).unwrap().is_none());
        assert!(matches!(s3.normal_sylow(4), Err(GroupError::NotPrime(4))));
        assert!(matches!(
            s3.normal_sylow(5),
            Err(GroupError::NotADivisor(5, 6))
        ));
    }

    #[test]
    fn subgroup_generation() {
        let a4 = alternating_four();
        assert_eq!(a4.subgroup_generated(&[]).order(), 1);
        let x = (1..12).find(|&i| a4.element_order(i) == 3).unwrap();
        assert_eq!(a4.subgroup_generated(&[x as u32]).order(), 3);
        // Commutator seeds close to the Klein four-subgroup.
        let seeds: Vec<u32> = (0..12)
            .flat_map(|a| (0..12).map(move |b| (a, b)))
            .map(|(a, b)| a4.commutator(a, b) as u32)
            .filter(|&c| c != 0)
            .collect();
        assert_eq!(a4.subgroup_generated(&seeds).order(), 4);
    }

    #[test]
    fn complements() {
        let s3 = dihedral_group(3).unwrap();
        let a3 = s3.derived_subgroup();
        let h = s3.find_complement(&a3).unwrap().unwrap();
        assert_eq!(h.order(), 2);
        let f20 = metacyclic_group(5, 4, 2).unwrap();
        let d = f20.derived_subgroup();
        assert_eq!(d.order(), 5);
        let h = f20.find_complement(&d).unwrap().unwrap();
        assert_eq!(h.order(), 4);
        let (ht, _) = f20.subgroup_table(&h);
        assert_eq!(ht.abelian_invariants().unwrap().invariant_factors(), &[4]);
        let q8 = quaternion_group();
        let z = q8.center();
        assert!(q8.find_complement(&z).unwrap().is_none());
    }

    #[test]
    fn complement_search_bound_is_distinct_from_absent() {
        let g = dihedral_group(10).unwrap();
        let d = g.derived_subgroup();
        // A one-closure budget cannot finish the search.
        match g.find_complement_bounded(&d, 1) {
            Err(GroupError::SearchBoundExceeded(1)) => {}
            other => panic!("expected search-bound error, got {other:?}"),
        }
        // The unbounded search succeeds on the same input.
        assert!(g.find_complement(&d).unwrap().is_some());
    }

    #[test]
    fn abelian_invariants_from_counts() {
        let g = direct_product(&cyclic_group(2).unwrap(), &cyclic_group(4).unwrap());
        assert_eq!(g.abelian_invariants().unwrap().invariant_factors(), &[2, 4]);
        let g = direct_product(&cyclic_group(6).unwrap(), &cyclic_group(4).unwrap());
        assert_eq!(g.abelian_invariants().unwrap().invariant_factors(), &[2, 12]);
        assert!(dihedral_group(3).unwrap().abelian_invariants().is_none());
    }

    #[test]
    fn sylow_conjugation_invariance() {
        let g = metacyclic_group(7, 3, 2).unwrap();
        let s = g.normal_sylow(7).unwrap().unwrap();
        let mut rng = SplitMix64::new(CHECK_SEED);
        for _ in 0..50 {
            let x = rng.below(g.order());
            for &e in s.elements() {
                assert!(s.contains(g.conj(x, e as usize)));
            }
        }
    }

    #[test]
    fn fingerprints_match_for_equal_groups() {
        let a = dihedral_group(3).unwrap();
        let b = metacyclic_group(3, 2, 2).unwrap(); // Z3 : Z2 inverting = S3
        assert_eq!(a.fingerprint(), b.fingerprint());
    }
}
