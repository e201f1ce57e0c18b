//! The working enumerator: growable table, union-find coincidence handling,
//! HLT and Felsch driver loops, compaction and standardization.

use std::collections::{BTreeSet, VecDeque};
use std::time::Instant;

use super::{CosetTable, EnumerationConfig, EnumerationError, EnumerationStats, Strategy};
use crate::presentation::{Presentation, Word};

struct Machine {
    cols: usize,
    /// Row-major entries, row 0 unused, 0 = undefined.
    table: Vec<u32>,
    /// Union-find over coset ids; parent[c] == c iff c is live.
    parent: Vec<u32>,
    live: usize,
    defined: u64,
    coincidences: u64,
    peak_live: usize,
    dead_queue: VecDeque<u32>,
    /// Felsch deduction stack of (coset, column) definitions.
    deductions: Vec<(u32, u32)>,
    track_deductions: bool,
}

impl Machine {
    fn new(generator_count: usize, track_deductions: bool) -> Self {
        let cols = 2 * generator_count;
        let mut m = Machine {
            cols,
            table: Vec::new(),
            parent: Vec::new(),
            live: 0,
            defined: 0,
            coincidences: 0,
            peak_live: 0,
            dead_queue: VecDeque::new(),
            deductions: Vec::new(),
            track_deductions,
        };
        m.push_row(); // dummy row 0
        m.push_row(); // coset 1
        m.live = 1;
        m.defined = 1;
        m.peak_live = 1;
        m
    }

    fn push_row(&mut self) {
        if self.table.len() == self.table.capacity() {
            let extra_rows = (self.rows() / 8).clamp(1024, 1 << 20);
            self.table.reserve_exact(extra_rows * self.cols);
            self.parent.reserve_exact(extra_rows);
        }
        self.table.resize(self.table.len() + self.cols, 0);
        self.parent.push(self.parent.len() as u32);
    }

    /// Number of allocated rows including the dummy row 0.
    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn dead_rows(&self) -> usize {
        self.rows() - 1 - self.live
    }

    #[inline]
    fn entry(&self, c: u32, col: u32) -> u32 {
        self.table[c as usize * self.cols + col as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, col: u32, v: u32) {
        self.table[c as usize * self.cols + col as usize] = v;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn find(&mut self, mut c: u32) -> u32 {
        while self.parent[c as usize] != c {
            let up = self.parent[self.parent[c as usize] as usize];
            self.parent[c as usize] = up;
            c = up;
        }
        c
    }

    fn new_coset(&mut self, from: u32, col: u32) -> u32 {
        let id = self.rows() as u32;
        self.push_row();
        self.set(from, col, id);
        self.set(id, col ^ 1, from);
        self.live += 1;
        self.defined += 1;
        self.peak_live = self.peak_live.max(self.live);
        if self.track_deductions {
            self.deductions.push((from, col));
        }
        id
    }

    /// Record one new edge pair; both slots must be free.
    fn deduce(&mut self, a: u32, col: u32, b: u32) {
        debug_assert_eq!(self.entry(a, col), 0);
        debug_assert_eq!(self.entry(b, col ^ 1), 0);
        self.set(a, col, b);
        self.set(b, col ^ 1, a);
        if self.track_deductions {
            self.deductions.push((a, col));
        }
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.find(a);
        let b = self.find(b);
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.live -= 1;
        self.coincidences += 1;
        self.dead_queue.push_back(kill);
    }

    /// Queue-transfer coincidence processing: merge, then move every edge of
    /// each dead row onto its representative, merging further whenever two
    /// edges disagree.
    fn coincide(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(gamma) = self.dead_queue.pop_front() {
            for col in 0..self.cols as u32 {
                let delta = self.entry(gamma, col);
                if delta == 0 {
                    continue;
                }
                // The reverse slot of (gamma, col) is exactly (delta, col^1);
                // undefine it so the edge can be re-anchored on the reps.
                debug_assert!(self.entry(delta, col ^ 1) == gamma);
                self.set(delta, col ^ 1, 0);
                let mu = self.find(gamma);
                let nu = self.find(delta);
                let t_mu = self.entry(mu, col);
                if t_mu != 0 {
                    self.merge(nu, t_mu);
                } else {
                    let t_nu = self.entry(nu, col ^ 1);
                    if t_nu != 0 {
                        self.merge(mu, t_nu);
                    } else {
                        self.deduce(mu, col, nu);
                    }
                }
            }
        }
    }

    /// Scan one relator (as letters) from `start`, filling undefined entries
    /// when `fill` is set; a completed scan with mismatched ends coincides.
    fn scan(&mut self, start: u32, letters: &[u32], fill: bool) {
        let mut f = start;
        let mut i = 0usize;
        let mut b = start;
        let mut j = letters.len();
        loop {
            while i < j {
                let t = self.entry(f, letters[i]);
                if t == 0 {
                    break;
                }
                f = t;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincide(f, b);
                }
                return;
            }
            while j > i {
                let t = self.entry(b, letters[j - 1] ^ 1);
                if t == 0 {
                    break;
                }
                b = t;
                j -= 1;
            }
            if j == i {
                if f != b {
                    self.coincide(f, b);
                }
                return;
            }
            if j == i + 1 {
                // Both slots are undefined precisely because both scans
                // stopped here.
                self.deduce(f, letters[i], b);
                return;
            }
            if !fill {
                return;
            }
            f = self.new_coset(f, letters[i]);
            i += 1;
        }
    }

    /// Deduction-driven checking (Felsch): every relator rotation through a
    /// newly defined edge is scanned without filling.
    fn process_deductions(&mut self, rotations: &RotationTable) {
        while let Some((alpha, col)) = self.deductions.pop() {
            if !self.is_live(alpha) {
                continue;
            }
            for rot in &rotations.by_first[col as usize] {
                if !self.is_live(alpha) {
                    break;
                }
                self.scan(alpha, rot, false);
            }
            if !self.is_live(alpha) {
                continue;
            }
            let beta = self.entry(alpha, col);
            if beta == 0 {
                continue;
            }
            for rot in &rotations.by_first[(col ^ 1) as usize] {
                if !self.is_live(beta) {
                    break;
                }
                self.scan(beta, rot, false);
            }
        }
    }

    /// One no-fill pass of every relator over every live coset; collapses
    /// whatever can be deduced before giving up or compacting.
    fn lookahead(&mut self, relators: &[Vec<u32>]) {
        let mut c = 1u32;
        while (c as usize) < self.rows() {
            if self.is_live(c) {
                for r in relators {
                    if !self.is_live(c) {
                        break;
                    }
                    self.scan(c, r, false);
                }
            }
            c += 1;
        }
    }

    /// Drop dead rows, renumbering live cosets in id order. Returns the new
    /// value for an old scan pointer.
    fn compact(&mut self, old_pointer: u32) -> u32 {
        debug_assert!(self.dead_queue.is_empty());
        let rows = self.rows();
        let mut new_of = vec![0u32; rows];
        let mut next = 1u32;
        for c in 1..rows as u32 {
            if self.is_live(c) {
                new_of[c as usize] = next;
                next += 1;
            }
        }
        let pointer = (1..rows as u32)
            .filter(|&c| c < old_pointer && self.is_live(c))
            .count() as u32
            + 1;
        let mut table = vec![0u32; next as usize * self.cols];
        for c in 1..rows as u32 {
            if !self.is_live(c) {
                continue;
            }
            let nc = new_of[c as usize] as usize;
            for col in 0..self.cols {
                let d = self.table[c as usize * self.cols + col];
                if d != 0 {
                    let d = self.find(d);
                    table[nc * self.cols + col] = new_of[d as usize];
                }
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        // Deductions reference old ids; with the stack empty at every
        // compaction point nothing needs remapping.
        debug_assert!(self.deductions.is_empty());
        pointer
    }

    fn first_incomplete(&self) -> Option<(u32, u32)> {
        for c in 1..self.rows() as u32 {
            if !self.is_live(c) {
                continue;
            }
            for col in 0..self.cols as u32 {
                if self.entry(c, col) == 0 {
                    return Some((c, col));
                }
            }
        }
        None
    }

    fn stats(&self, wall_time: std::time::Duration) -> EnumerationStats {
        EnumerationStats {
            total_cosets_defined: self.defined,
            coincidences: self.coincidences,
            peak_live_cosets: self.peak_live,
            final_cosets: self.live,
            wall_time,
        }
    }

    /// Compact, then renumber cosets breadth-first by first definition
    /// (row 1 first, columns in order), yielding the canonical table.
    fn standardize(mut self) -> CosetTable {
        self.compact(1);
        let n = self.live;
        let cols = self.cols;
        debug_assert!(self.first_incomplete().is_none());
        let mut new_of = vec![0u32; n + 1];
        let mut old_of = vec![0u32; n + 1];
        new_of[1] = 1;
        old_of[1] = 1;
        let mut next = 2u32;
        for new_gamma in 1..=n {
            let old_gamma = old_of[new_gamma];
            for col in 0..cols as u32 {
                let delta = self.entry(old_gamma, col) as usize;
                if new_of[delta] == 0 {
                    new_of[delta] = next;
                    old_of[next as usize] = delta as u32;
                    next += 1;
                }
            }
        }
        debug_assert_eq!(next as usize, n + 1);
        let mut entries = vec![0u32; (n + 1) * cols];
        for new_gamma in 1..=n {
            let old_gamma = old_of[new_gamma];
            for col in 0..cols {
                let delta = self.entry(old_gamma, col as u32);
                entries[new_gamma * cols + col] = new_of[delta as usize];
            }
        }
        CosetTable {
            generator_count: cols / 2,
            n_cosets: n,
            entries,
        }
    }
}

/// Relator rotations bucketed by first letter, for Felsch deduction scans.
struct RotationTable {
    by_first: Vec<Vec<Vec<u32>>>,
}

impl RotationTable {
    fn build(relators: &[Vec<u32>], cols: usize) -> Self {
        let mut buckets: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); cols];
        for r in relators {
            let inv: Vec<u32> = r.iter().rev().map(|&l| l ^ 1).collect();
            for w in [r, &inv] {
                for s in 0..w.len() {
                    let rot: Vec<u32> = w[s..].iter().chain(&w[..s]).copied().collect();
                    buckets[rot[0] as usize].insert(rot);
                }
            }
        }
        RotationTable {
            by_first: buckets.into_iter().map(|b| b.into_iter().collect()).collect(),
        }
    }
}

/// Letters of every relator, cyclically reduced, deduplicated, identity
/// relators dropped. Cyclic reduction replaces a relator by a conjugate with
/// the same normal closure; the standardized output is unaffected.
fn prepare_relators(p: &Presentation) -> Vec<Vec<u32>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in p.relators() {
        let mut letters = CosetTable::word_letters(r);
        while letters.len() >= 2 && *letters.first().unwrap() == *letters.last().unwrap() ^ 1 {
            letters.pop();
            letters.remove(0);
        }
        if !letters.is_empty() && seen.insert(letters.clone()) {
            out.push(letters);
        }
    }
    out
}

pub(super) fn run(
    p: &Presentation,
    subgroup: &[Word],
    config: &EnumerationConfig,
) -> Result<(CosetTable, EnumerationStats), EnumerationError> {
    let start = Instant::now();
    let relators = prepare_relators(p);
    let subgroup_letters: Vec<Vec<u32>> = subgroup.iter().map(CosetTable::word_letters).collect();
    let mut m = Machine::new(
        p.generator_count(),
        matches!(config.strategy, Strategy::Felsch),
    );
    match config.strategy {
        Strategy::Hlt => run_hlt(&mut m, &relators, &subgroup_letters, config)?,
        Strategy::Felsch => run_felsch(&mut m, &relators, &subgroup_letters, config)?,
    }
    let stats_wall = start.elapsed();
    let mut stats = m.stats(stats_wall);
    let table = m.standardize();
    stats.final_cosets = table.n_cosets();
    Ok((table, stats))
}

fn run_hlt(
    m: &mut Machine,
    relators: &[Vec<u32>],
    subgroup: &[Vec<u32>],
    config: &EnumerationConfig,
) -> Result<(), EnumerationError> {
    for w in subgroup {
        m.scan(1, w, true);
    }
    let mut c = 1u32;
    loop {
        while (c as usize) < m.rows() && !m.is_live(c) {
            c += 1;
        }
        if c as usize >= m.rows() {
            // Coincidence transfers can re-open entries of processed rows;
            // sweep before declaring the table complete.
            match m.first_incomplete() {
                Some((row, _)) => {
                    c = row;
                    continue;
                }
                None => return Ok(()),
            }
        }
        if m.live >= config.max_live_cosets {
            m.lookahead(relators);
            c = m.compact(c);
            if m.live >= config.max_live_cosets {
                return Err(EnumerationError::CosetLimitExceeded {
                    limit: config.max_live_cosets,
                    stats: Box::new(m.stats(Default::default())),
                });
            }
            continue;
        }
        // Lookahead can keep dipping just below the cap forever on an
        // infinite index; a total-definition bound makes failure definite.
        if m.defined > 8 * config.max_live_cosets as u64 + 10_000 {
            return Err(EnumerationError::CosetLimitExceeded {
                limit: config.max_live_cosets,
                stats: Box::new(m.stats(Default::default())),
            });
        }
        for r in relators {
            if !m.is_live(c) {
                break;
            }
            m.scan(c, r, true);
        }
        if m.is_live(c) {
            for col in 0..m.cols as u32 {
                if m.entry(c, col) == 0 {
                    m.new_coset(c, col);
                }
            }
        }
        if m.dead_rows() >= config.compaction_threshold {
            // compact(c + 1) is the new id of the first live row after c,
            // whether or not c itself survived its own scans.
            c = m.compact(c + 1);
            continue;
        }
        c += 1;
    }
}

fn run_felsch(
    m: &mut Machine,
    relators: &[Vec<u32>],
    subgroup: &[Vec<u32>],
    config: &EnumerationConfig,
) -> Result<(), EnumerationError> {
    let rotations = RotationTable::build(relators, m.cols);
    for w in subgroup {
        m.scan(1, w, true);
        m.process_deductions(&rotations);
    }
    let mut row = 1u32;
    let mut col = 0u32;
    loop {
        m.process_deductions(&rotations);
        if m.live >= config.max_live_cosets {
            return Err(EnumerationError::CosetLimitExceeded {
                limit: config.max_live_cosets,
                stats: Box::new(m.stats(Default::default())),
            });
        }
        // Advance to the next undefined entry of a live row.
        loop {
            if (row as usize) >= m.rows() {
                break;
            }
            if !m.is_live(row) || col as usize >= m.cols {
                row += 1;
                col = 0;
                continue;
            }
            if m.entry(row, col) == 0 {
                break;
            }
            col += 1;
        }
        if (row as usize) >= m.rows() {
            match m.first_incomplete() {
                Some((r, cl)) => {
                    row = r;
                    col = cl;
                }
                None => return Ok(()),
            }
        }
        m.new_coset(row, col);
    }
}

#[cfg(test)]
mod verify {
    use super::*;

    /// Structural self-check used by the module tests: paired edges and
    /// relator closure over the finished table.
    pub(super) fn table_is_consistent(t: &CosetTable, p: &Presentation) -> bool {
        let cols = 2 * t.generator_count();
        for c in 1..=t.n_cosets() as u32 {
            for col in 0..cols as u32 {
                let d = t.apply(c, col);
                if d == 0 || t.apply(d, col ^ 1) != c {
                    return false;
                }
            }
        }
        p.relators().iter().all(|r| {
            let letters = CosetTable::word_letters(r);
            (1..=t.n_cosets() as u32).all(|c| t.trace(c, &letters) == c)
        })
    }
}
