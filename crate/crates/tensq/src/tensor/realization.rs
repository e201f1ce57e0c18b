//! Concrete realization of the double-copy group from its coset table:
//! word-tracked closure of the first copy, extraction of the
//! crossed-commutator subgroup as a multiplication table, the diagonal
//! subgroup, and the commutator-induced map back onto the group.
//!
//! Element-level pairing convention (matching the group-side commutator):
//! `g (x) h` is realized as `g h^phi g^-1 (h^phi)^-1`, with conjugation
//! acting on the left inside the pairing.

use std::collections::HashMap;

use super::{CheckResult, TensorError};
use crate::coset::CosetTable;
use crate::exec::{self, Parallelism};
use crate::group::{GroupTable, Homomorphism, Subgroup};
use crate::presentation::NuPresentation;
use crate::rng::{SplitMix64, CHECK_SEED};

pub(super) struct NuRealization {
    nu_table: CosetTable,
    copy_size: usize,
    /// Letter word (first-copy columns) reaching each group element.
    word_of_g: Vec<Vec<u32>>,
    point_to_index: HashMap<u32, u32>,
    pub tensor_table: GroupTable,
    pub nabla: Subgroup,
    pub kappa: Homomorphism,
}

impl NuRealization {
    pub fn nu_order(&self) -> usize {
        self.nu_table.n_cosets()
    }

    pub fn build(
        nu: &NuPresentation,
        nu_table: CosetTable,
        g_table: &GroupTable,
        parallelism: Parallelism,
    ) -> Result<Self, TensorError> {
        let g = nu.copy_size();
        let n = g_table.order();

        // Close the first copy inside nu with word tracking.
        let first_copy = close_first_copy(&nu_table, g);
        if first_copy.len() != n {
            return Err(TensorError::Inconsistency(format!(
                "first copy closes to {} points, |G| = {n}",
                first_copy.len()
            )));
        }
        let mut word_of_g: Vec<Option<Vec<u32>>> = vec![None; n];
        for (_, word) in first_copy {
            let elem = eval_in_group(g_table, g, &word);
            if word_of_g[elem].is_some() {
                return Err(TensorError::Inconsistency(
                    "two first-copy points map to one group element".into(),
                ));
            }
            word_of_g[elem] = Some(word);
        }
        let word_of_g: Vec<Vec<u32>> = word_of_g
            .into_iter()
            .map(|w| w.ok_or_else(|| TensorError::Inconsistency("first copy misses an element".into())))
            .collect::<Result<_, _>>()?;

        // All n^2 pairing points, then the distinct generators in first-seen
        // order.
        let pair_points = exec::map_indexed(parallelism, n * n, |idx| {
            let (x, y) = (idx / n, idx % n);
            let letters = pairing_letters(&word_of_g[x], &word_of_g[y], g);
            nu_table.trace(1, &letters)
        });
        let mut gen_words: Vec<(u32, Vec<u32>)> = Vec::new();
        let mut seen: HashMap<u32, ()> = HashMap::new();
        for idx in 0..n * n {
            let point = pair_points[idx];
            if point != 1 && seen.insert(point, ()).is_none() {
                let (x, y) = (idx / n, idx % n);
                gen_words.push((point, pairing_letters(&word_of_g[x], &word_of_g[y], g)));
            }
        }

        // Subgroup closure with word tracking.
        let mut word_at: HashMap<u32, Vec<u32>> = HashMap::new();
        word_at.insert(1, Vec::new());
        let mut queue = std::collections::VecDeque::from([1u32]);
        while let Some(point) = queue.pop_front() {
            let base = word_at[&point].clone();
            for (_, gw) in &gen_words {
                let next = nu_table.trace(point, gw);
                if !word_at.contains_key(&next) {
                    let mut w = base.clone();
                    w.extend_from_slice(gw);
                    word_at.insert(next, w);
                    queue.push_back(next);
                }
            }
        }

        let mut points: Vec<u32> = word_at.keys().copied().collect();
        points.sort_unstable();
        let t = points.len();
        let point_to_index: HashMap<u32, u32> = points
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i as u32))
            .collect();
        let word_by_index: Vec<Vec<u32>> =
            points.iter().map(|p| word_at[p].clone()).collect();

        // Multiplication table of the tensor subgroup, row-parallel.
        let rows = exec::map_indexed(parallelism, t, |i| {
            let mut row = Vec::with_capacity(t);
            for w in &word_by_index {
                let prod = nu_table.trace(points[i], w);
                row.push(point_to_index[&prod]);
            }
            row
        });
        let entries: Vec<u32> = rows.into_iter().flatten().collect();
        let generators: Vec<u32> = gen_words
            .iter()
            .map(|(p, _)| point_to_index[p])
            .collect();
        let tensor_table = GroupTable::new(t, entries, generators, None)
            .map_err(|e| TensorError::Inconsistency(format!("tensor subgroup table: {e}")))?;

        // Diagonal subgroup: pairings of every element with itself.
        let diag: Vec<u32> = (0..n)
            .map(|x| {
                let p = pair_points[x * n + x];
                point_to_index[&p]
            })
            .filter(|&i| i != 0)
            .collect();
        let nabla = tensor_table.subgroup_generated(&diag);

        // kappa: fold both copies back onto the group generators.
        let kappa_images: Vec<u32> = word_by_index
            .iter()
            .map(|w| eval_in_group(g_table, g, w) as u32)
            .collect();
        let kappa = Homomorphism::new(&tensor_table, g_table, kappa_images)
            .map_err(|e| TensorError::Inconsistency(format!("kappa is not a homomorphism: {e}")))?;

        Ok(NuRealization {
            nu_table,
            copy_size: g,
            word_of_g,
            point_to_index,
            tensor_table,
            nabla,
            kappa,
        })
    }

    fn pairing_point(&self, x: usize, y: usize) -> u32 {
        let letters = pairing_letters(&self.word_of_g[x], &self.word_of_g[y], self.copy_size);
        self.nu_table.trace(1, &letters)
    }

    /// Both defining relation families, element-level, on seeded random
    /// triples: with left conjugation written `^u v`,
    /// `(a b (x) h) = (^a b (x) ^a h)(a (x) h)` and
    /// `(gg (x) a b) = (g (x) a)(^a g (x) ^a b)`.
    pub fn biderivation_check(&self, g_table: &GroupTable, samples: usize) -> CheckResult {
        let n = g_table.order();
        let mut rng = SplitMix64::new(CHECK_SEED);
        let mut checked = 0usize;
        for _ in 0..samples {
            let g1 = rng.below(n);
            let g = rng.below(n);
            let h = rng.below(n);

            // (g1 g (x) h) = (^g1 g (x) ^g1 h)(g1 (x) h)
            let lhs = self.pairing_point(g_table.mul(g1, g), h);
            let mid = self.pairing_point(g_table.conj(g1, g), g_table.conj(g1, h));
            let rhs = self
                .nu_table
                .trace(mid, &self.pairing_word(g1, h));
            if lhs != rhs {
                return CheckResult::fail(
                    "biderivation-relations",
                    format!("left relation fails at (g1, g, h) = ({g1}, {g}, {h})"),
                );
            }

            // (g (x) h1 h) = (g (x) h1)(^h1 g (x) ^h1 h)
            let (h1, h2) = (g1, h);
            let lhs = self.pairing_point(g, g_table.mul(h1, h2));
            let first = self.pairing_point(g, h1);
            let rhs = self.nu_table.trace(
                first,
                &self.pairing_word(g_table.conj(h1, g), g_table.conj(h1, h2)),
            );
            if lhs != rhs {
                return CheckResult::fail(
                    "biderivation-relations",
                    format!("right relation fails at (g, h1, h) = ({g}, {h1}, {h2})"),
                );
            }
            checked += 1;
        }
        CheckResult::pass(
            "biderivation-relations",
            format!("both relation families hold on {checked} random triples"),
        )
    }

    fn pairing_word(&self, x: usize, y: usize) -> Vec<u32> {
        pairing_letters(&self.word_of_g[x], &self.word_of_g[y], self.copy_size)
    }

    /// `kappa(g (x) h) = g h g^-1 h^-1` on seeded random pairs.
    pub fn kappa_commutator_check(&self, g_table: &GroupTable, samples: usize) -> CheckResult {
        let n = g_table.order();
        let mut rng = SplitMix64::new(CHECK_SEED ^ 0x9E37);
        for _ in 0..samples {
            let g = rng.below(n);
            let h = rng.below(n);
            let point = self.pairing_point(g, h);
            let Some(&idx) = self.point_to_index.get(&point) else {
                return CheckResult::fail(
                    "kappa-commutator",
                    format!("pairing of ({g}, {h}) lands outside the tensor subgroup"),
                );
            };
            if self.kappa.image_of(idx as usize) != g_table.commutator(g, h) {
                return CheckResult::fail(
                    "kappa-commutator",
                    format!("kappa(g (x) h) != [g, h] at ({g}, {h})"),
                );
            }
        }
        CheckResult::pass(
            "kappa-commutator",
            format!("kappa(g (x) h) = [g, h] on {samples} random pairs"),
        )
    }
}

/// BFS closure of the first copy inside nu, tracking one representative
/// letter word per point.
fn close_first_copy(nu_table: &CosetTable, copy_size: usize) -> Vec<(u32, Vec<u32>)> {
    let mut out: Vec<(u32, Vec<u32>)> = vec![(1, Vec::new())];
    let mut seen: HashMap<u32, usize> = HashMap::from([(1, 0)]);
    let mut head = 0;
    while head < out.len() {
        let (point, word) = out[head].clone();
        head += 1;
        for col in 0..2 * copy_size as u32 {
            let next = nu_table.apply(point, col);
            if !seen.contains_key(&next) {
                let mut w = word.clone();
                w.push(col);
                seen.insert(next, out.len());
                out.push((next, w));
            }
        }
    }
    out
}

/// `g h^phi g^-1 (h^phi)^-1` as nu-table letters; `phi` shifts a first-copy
/// column by `2 * copy_size`.
fn pairing_letters(g_word: &[u32], h_word: &[u32], copy_size: usize) -> Vec<u32> {
    let shift = 2 * copy_size as u32;
    let h_phi: Vec<u32> = h_word.iter().map(|&l| l + shift).collect();
    let mut out = Vec::with_capacity(2 * (g_word.len() + h_word.len()));
    out.extend_from_slice(g_word);
    out.extend_from_slice(&h_phi);
    out.extend(g_word.iter().rev().map(|&l| l ^ 1));
    out.extend(h_phi.iter().rev().map(|&l| l ^ 1));
    out
}

/// Evaluate a nu-letter word in the group, folding the second copy onto the
/// first (the defining property of the commutator-induced map).
fn eval_in_group(g_table: &GroupTable, copy_size: usize, letters: &[u32]) -> usize {
    let mut acc = 0usize;
    for &l in letters {
        let col = if l >= 2 * copy_size as u32 {
            l - 2 * copy_size as u32
        } else {
            l
        };
        let gen = g_table.generators()[(col / 2) as usize] as usize;
        let factor = if col & 1 == 1 { g_table.inv(gen) } else { gen };
        acc = g_table.mul(acc, factor);
    }
    acc
}
