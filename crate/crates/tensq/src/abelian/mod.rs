//! Finite abelian groups in invariant-factor form, the abelian tensor
//! product, and the quadratic functor Gamma with its brute-force oracle.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod gamma;
mod matrix;

pub use gamma::{gamma_oracle, gamma_whitehead, GAMMA_ORACLE_MAX};
pub use matrix::{abelian_from_relations, smith_normal_form, IntegerMatrix, SmithNormalForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("the presented quotient is infinite")]
    InfiniteQuotient,
    #[error("oracle size bound exceeded: |A| = {0} > {GAMMA_ORACLE_MAX}")]
    OracleSizeExceeded(u64),
    #[error("not a divisibility chain of integers >= 2: {0:?}")]
    NotAChain(Vec<u64>),
}

/// A finite abelian group as its invariant factor list `d1 | d2 | ... | dk`,
/// every factor at least 2. The empty list is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self {
            invariant_factors: Vec::new(),
        }
    }

    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 1, "cyclic group order must be positive");
        if n == 1 {
            Self::trivial()
        } else {
            Self {
                invariant_factors: vec![n],
            }
        }
    }

    /// Validates that `factors` already is an invariant-factor chain.
    pub fn new(factors: Vec<u64>) -> Result<Self, AbelianError> {
        let chain_ok = factors.iter().all(|&d| d >= 2)
            && factors.windows(2).all(|w| w[1] % w[0] == 0);
        if chain_ok {
            Ok(Self {
                invariant_factors: factors,
            })
        } else {
            Err(AbelianError::NotAChain(factors))
        }
    }

    /// Canonicalizes an arbitrary list of cyclic orders into invariant
    /// factors: `[4, 6]` becomes `[2, 12]`. Moduli of 1 are dropped.
    pub fn from_moduli(moduli: &[u64]) -> Self {
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &m in moduli {
            assert!(m >= 1, "moduli must be positive");
            for (p, e) in factorize(m) {
                primary.entry(p).or_default().push(e);
            }
        }
        for exps in primary.values_mut() {
            exps.sort_unstable();
        }
        let slots = primary.values().map(Vec::len).max().unwrap_or(0);
        // Largest exponent of every prime goes into the last factor, and so on
        // down; that is exactly the invariant-factor chain.
        let mut factors = vec![1u64; slots];
        for (p, exps) in &primary {
            for (back, &e) in exps.iter().rev().enumerate() {
                factors[slots - 1 - back] *= p.pow(e);
            }
        }
        Self {
            invariant_factors: factors.into_iter().filter(|&d| d > 1).collect(),
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// prime -> ascending exponents of the primary decomposition.
    pub fn primary_decomposition(&self) -> BTreeMap<u64, Vec<u32>> {
        let mut primary: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for &d in &self.invariant_factors {
            for (p, e) in factorize(d) {
                primary.entry(p).or_default().push(e);
            }
        }
        for exps in primary.values_mut() {
            exps.sort_unstable();
        }
        primary
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut moduli = self.invariant_factors.clone();
        moduli.extend_from_slice(&other.invariant_factors);
        Self::from_moduli(&moduli)
    }

    /// Abelian tensor product: direct sum of `Z_gcd(di, ej)` over all pairs.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut moduli = Vec::new();
        for &d in &self.invariant_factors {
            for &e in &other.invariant_factors {
                moduli.push(gcd(d, e));
            }
        }
        Self::from_moduli(&moduli)
    }

    /// Abelian exterior square: direct sum of `Z_gcd(di, dj)` over `i < j`.
    pub fn exterior_square(&self) -> Self {
        let f = &self.invariant_factors;
        let mut moduli = Vec::new();
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                moduli.push(gcd(f[i], f[j]));
            }
        }
        Self::from_moduli(&moduli)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z{d}"))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Per-prime exponent `d_i` of the tensor-order formula for groups with
/// abelianization of odd order: with ascending exponents `e_1 <= ... <= e_k`
/// at prime `p`, `d = sum_j (k - j) e_j`. The prime 2 is flagged
/// inapplicable (`None`).
pub fn theorem_order_exponents(ab: &FiniteAbelianGroup) -> BTreeMap<u64, Option<u64>> {
    ab.primary_decomposition()
        .into_iter()
        .map(|(p, exps)| {
            if p == 2 {
                (p, None)
            } else {
                let k = exps.len() as u64;
                let d = exps
                    .iter()
                    .enumerate()
                    .map(|(idx, &e)| (k - (idx as u64 + 1)) * e as u64)
                    .sum();
                (p, Some(d))
            }
        })
        .collect()
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}
