//! Structure recognition against the small zoo of target groups: cyclic
//! groups, abelian groups, Q8, extraspecial groups of order q^3, and cyclic
//! direct factors over those. Descriptors are matched by constructing the
//! candidate and testing isomorphism, so "unrecognized" is a sound verdict,
//! never a guess.

use std::fmt;

use super::constructors::{
    cyclic_group, direct_product, extraspecial_exponent_p, extraspecial_exponent_p2,
    quaternion_group,
};
use super::{is_isomorphic, GroupError, GroupFingerprint, GroupTable};
use crate::abelian::factorize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtraspecialKind {
    ExponentP,
    ExponentPSquared,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureDescriptor {
    Trivial,
    Cyclic(u64),
    /// Non-cyclic abelian, by invariant factors.
    Abelian(Vec<u64>),
    Quaternion8,
    Extraspecial { p: u64, kind: ExtraspecialKind },
    /// `Z_m x H` with `H` non-abelian from the zoo.
    CyclicTimes(u64, Box<StructureDescriptor>),
    Unrecognized(Box<GroupFingerprint>),
}

impl StructureDescriptor {
    pub fn is_recognized(&self) -> bool {
        !matches!(self, StructureDescriptor::Unrecognized(_))
    }
}

impl fmt::Display for StructureDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureDescriptor::Trivial => write!(f, "1"),
            StructureDescriptor::Cyclic(n) => write!(f, "Z{n}"),
            StructureDescriptor::Abelian(factors) => {
                write!(f, "{}", primary_form(factors))
            }
            StructureDescriptor::Quaternion8 => write!(f, "Q8"),
            StructureDescriptor::Extraspecial { p, kind } => match kind {
                ExtraspecialKind::ExponentP => write!(f, "ES({p}^3, exp {p})"),
                ExtraspecialKind::ExponentPSquared => write!(f, "ES({p}^3, exp {p}^2)"),
            },
            StructureDescriptor::CyclicTimes(m, h) => write!(f, "Z{m} x {h}"),
            StructureDescriptor::Unrecognized(fp) => write!(f, "unrecognized({fp})"),
        }
    }
}

/// `[2,2,2,70]` renders as `Z2^4 x Z5 x Z7`.
fn primary_form(invariant_factors: &[u64]) -> String {
    use std::collections::BTreeMap;
    let mut counts: BTreeMap<(u64, u32), usize> = BTreeMap::new();
    for &d in invariant_factors {
        for (p, e) in factorize(d) {
            *counts.entry((p, e)).or_default() += 1;
        }
    }
    counts
        .into_iter()
        .map(|((p, e), mult)| {
            let base = if e == 1 {
                format!("Z{p}")
            } else {
                format!("Z{}", p.pow(e))
            };
            if mult == 1 {
                base
            } else {
                format!("{base}^{mult}")
            }
        })
        .collect::<Vec<_>>()
        .join(" x ")
}

/// Names `g` when it lies in the target zoo; otherwise reports the
/// fingerprint. Isomorphism timeouts propagate as errors.
pub fn recognize_structure(g: &GroupTable) -> Result<StructureDescriptor, GroupError> {
    if let Some(inv) = g.abelian_invariants() {
        return Ok(match inv.rank() {
            0 => StructureDescriptor::Trivial,
            1 => StructureDescriptor::Cyclic(inv.invariant_factors()[0]),
            _ => StructureDescriptor::Abelian(inv.invariant_factors().to_vec()),
        });
    }
    let n = g.order() as u64;
    for (h_order, candidates) in nonabelian_candidates(n) {
        let m = n / h_order;
        for kind in candidates {
            let h = build_candidate(&kind)?;
            let full = if m == 1 {
                h
            } else {
                direct_product(&cyclic_group(m)?, &h)
            };
            if is_isomorphic(g, &full)? {
                return Ok(if m == 1 {
                    kind
                } else {
                    StructureDescriptor::CyclicTimes(m, Box::new(kind))
                });
            }
        }
    }
    Ok(StructureDescriptor::Unrecognized(Box::new(g.fingerprint())))
}

/// Divisors of `n` that can be the non-abelian factor: 8 (for Q8) and odd
/// prime cubes, each with the candidate descriptors to try.
fn nonabelian_candidates(n: u64) -> Vec<(u64, Vec<StructureDescriptor>)> {
    let mut out = Vec::new();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        if d == 8 {
            out.push((d, vec![StructureDescriptor::Quaternion8]));
        } else if let [(p, 3)] = factorize(d)[..] {
            if p > 2 {
                out.push((
                    d,
                    vec![
                        StructureDescriptor::Extraspecial {
                            p,
                            kind: ExtraspecialKind::ExponentP,
                        },
                        StructureDescriptor::Extraspecial {
                            p,
                            kind: ExtraspecialKind::ExponentPSquared,
                        },
                    ],
                ));
            }
        }
    }
    out
}

fn build_candidate(desc: &StructureDescriptor) -> Result<GroupTable, GroupError> {
    match desc {
        StructureDescriptor::Quaternion8 => Ok(quaternion_group()),
        StructureDescriptor::Extraspecial { p, kind } => match kind {
            ExtraspecialKind::ExponentP => extraspecial_exponent_p(*p),
            ExtraspecialKind::ExponentPSquared => extraspecial_exponent_p2(*p),
        },
        _ => unreachable!("only non-abelian zoo members are constructed here"),
    }
}

#[cfg(test)]
mod tests {
    use super::super::constructors::*;
    use super::*;

    #[test]
    fn recognizes_abelian_forms() {
        let g = abelian_group(&[2, 2, 2, 2, 5]).unwrap();
        let d = recognize_structure(&g).unwrap();
        assert_eq!(d, StructureDescriptor::Abelian(vec![2, 2, 2, 10]));
        assert_eq!(d.to_string(), "Z2^4 x Z5");
        let g = cyclic_group(140).unwrap();
        assert_eq!(
            recognize_structure(&g).unwrap(),
            StructureDescriptor::Cyclic(140)
        );
        let g = cyclic_group(1).unwrap();
        assert_eq!(recognize_structure(&g).unwrap(), StructureDescriptor::Trivial);
    }

    #[test]
    fn recognizes_q8() {
        let d = recognize_structure(&quaternion_group()).unwrap();
        assert_eq!(d, StructureDescriptor::Quaternion8);
    }

    #[test]
    fn recognizes_heisenberg_27() {
        let g = extraspecial_exponent_p(3).unwrap();
        assert_eq!(g.center().order(), 3);
        assert_eq!(g.derived_subgroup().order(), 3);
        assert_eq!(g.exponent(), 3);
        let d = recognize_structure(&g).unwrap();
        assert_eq!(
            d,
            StructureDescriptor::Extraspecial {
                p: 3,
                kind: ExtraspecialKind::ExponentP
            }
        );
    }

    #[test]
    fn recognizes_cyclic_times_q8() {
        let g = direct_product(&cyclic_group(15).unwrap(), &quaternion_group());
        let d = recognize_structure(&g).unwrap();
        assert_eq!(
            d,
            StructureDescriptor::CyclicTimes(15, Box::new(StructureDescriptor::Quaternion8))
        );
        assert_eq!(d.to_string(), "Z15 x Q8");
    }

    #[test]
    fn unrecognized_is_a_result() {
        let s4ish = dihedral_group(4).unwrap(); // D8 is outside the zoo
        let d = recognize_structure(&s4ish).unwrap();
        assert!(!d.is_recognized());
        assert!(d.to_string().starts_with("unrecognized"));
    }
}
