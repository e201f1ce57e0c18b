//! Named families of finite groups, each realized both as a presentation and
//! as a multiplication table so the two constructions can be cross-checked.

use std::fmt;

use super::{Presentation, Word};
use crate::group::{
    abelian_by_cyclic, alternating_four, cyclic_group, dihedral_group, direct_product,
    metacyclic_group, GroupError, GroupTable,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyDescriptor {
    /// `Z_n`
    Cyclic(u64),
    /// Dihedral group of order `2n`: `<a, b | a^n, b^2, (a b)^2>`.
    Dihedral(u64),
    /// `Z_m : Z_n` with action `a -> a^r`; requires `r^n = 1 mod m`.
    Metacyclic { m: u64, n: u64, r: i64 },
    A4,
    /// Abelian group (by moduli) extended by `Z_n` acting through an integer
    /// matrix: generator `j` maps to `prod_i e_i^(matrix[j][i])`.
    AbelianByCyclic {
        moduli: Vec<u64>,
        n: u64,
        matrix: Vec<Vec<i64>>,
    },
    Direct(Box<FamilyDescriptor>, Box<FamilyDescriptor>),
}

impl FamilyDescriptor {
    pub fn direct(a: FamilyDescriptor, b: FamilyDescriptor) -> FamilyDescriptor {
        FamilyDescriptor::Direct(Box::new(a), Box::new(b))
    }

    /// Generalized dihedral group over the given abelian moduli.
    pub fn generalized_dihedral(moduli: Vec<u64>) -> FamilyDescriptor {
        let k = moduli.len();
        let matrix = (0..k)
            .map(|j| (0..k).map(|i| if i == j { -1 } else { 0 }).collect())
            .collect();
        FamilyDescriptor::AbelianByCyclic {
            moduli,
            n: 2,
            matrix,
        }
    }
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyDescriptor::Cyclic(n) => write!(f, "cyclic({n})"),
            FamilyDescriptor::Dihedral(n) => write!(f, "dihedral({n})"),
            FamilyDescriptor::Metacyclic { m, n, r } => write!(f, "metacyclic({m},{n},{r})"),
            FamilyDescriptor::A4 => write!(f, "a4"),
            FamilyDescriptor::AbelianByCyclic { moduli, n, .. } => {
                let inner: Vec<String> = moduli.iter().map(|m| m.to_string()).collect();
                write!(f, "[{}]:Z{n}", inner.join("x"))
            }
            FamilyDescriptor::Direct(a, b) => write!(f, "{a} x {b}"),
        }
    }
}

/// A presentation whose regular representation matches `family_table` (the
/// acceptance tests check this by isomorphism).
pub fn family_presentation(desc: &FamilyDescriptor) -> Result<Presentation, GroupError> {
    // Validating through the table constructor catches every invalid action
    // parameter in one place.
    family_table(desc)?;
    Ok(build_presentation(desc))
}

/// The multiplication-table realization of the same family member.
pub fn family_table(desc: &FamilyDescriptor) -> Result<GroupTable, GroupError> {
    match desc {
        FamilyDescriptor::Cyclic(n) => cyclic_group(*n),
        FamilyDescriptor::Dihedral(n) => dihedral_group(*n),
        FamilyDescriptor::Metacyclic { m, n, r } => metacyclic_group(*m, *n, *r),
        FamilyDescriptor::A4 => Ok(alternating_four()),
        FamilyDescriptor::AbelianByCyclic { moduli, n, matrix } => {
            abelian_by_cyclic(moduli, *n, matrix)
        }
        FamilyDescriptor::Direct(a, b) => Ok(direct_product(&family_table(a)?, &family_table(b)?)),
    }
}

fn build_presentation(desc: &FamilyDescriptor) -> Presentation {
    match desc {
        FamilyDescriptor::Cyclic(n) => Presentation::new(
            vec!["a".into()],
            vec![Word::generator(0).pow(*n as i64)],
        ),
        FamilyDescriptor::Dihedral(n) => {
            let a = Word::generator(0);
            let b = Word::generator(1);
            Presentation::new(
                vec!["a".into(), "b".into()],
                vec![
                    a.pow(*n as i64),
                    b.pow(2),
                    a.multiply(&b).pow(2),
                ],
            )
        }
        FamilyDescriptor::Metacyclic { m, n, r } => {
            let a = Word::generator(0);
            let b = Word::generator(1);
            // b a b^-1 a^-r
            let action = b
                .multiply(&a)
                .multiply(&b.inverse())
                .multiply(&a.pow(-r));
            Presentation::new(
                vec!["a".into(), "b".into()],
                vec![a.pow(*m as i64), b.pow(*n as i64), action],
            )
        }
        FamilyDescriptor::A4 => {
            let a = Word::generator(0);
            let b = Word::generator(1);
            Presentation::new(
                vec!["a".into(), "b".into()],
                vec![a.pow(3), b.pow(2), a.multiply(&b).pow(3)],
            )
        }
        FamilyDescriptor::AbelianByCyclic { moduli, n, matrix } => {
            let k = moduli.len();
            let mut names: Vec<String> = (1..=k).map(|i| format!("e{i}")).collect();
            names.push("t".into());
            let t = Word::generator(k);
            let mut relators = Vec::new();
            for (j, &m) in moduli.iter().enumerate() {
                relators.push(Word::generator(j).pow(m as i64));
            }
            for i in 0..k {
                for j in i + 1..k {
                    relators.push(Word::commutator(
                        &Word::generator(i),
                        &Word::generator(j),
                    ));
                }
            }
            relators.push(t.pow(*n as i64));
            for j in 0..k {
                let image = Word::from_syllables(
                    (0..k).map(|i| (i, matrix[j][i])),
                );
                // t e_j t^-1 image^-1
                relators.push(
                    t.multiply(&Word::generator(j))
                        .multiply(&t.inverse())
                        .multiply(&image.inverse()),
                );
            }
            Presentation::new(names, relators)
        }
        FamilyDescriptor::Direct(a, b) => {
            let pa = build_presentation(a);
            let pb = build_presentation(b);
            let offset = pa.generator_count();
            let mut names = pa.names().to_vec();
            for base in pb.names() {
                let mut candidate = base.clone();
                let mut suffix = 2;
                while names.contains(&candidate) {
                    candidate = format!("{base}{suffix}");
                    suffix += 1;
                }
                names.push(candidate);
            }
            let mut relators = pa.relators().to_vec();
            relators.extend(
                pb.relators()
                    .iter()
                    .map(|r| r.map_generators(|g| Word::generator(g + offset))),
            );
            for i in 0..offset {
                for j in offset..names.len() {
                    relators.push(Word::commutator(
                        &Word::generator(i),
                        &Word::generator(j),
                    ));
                }
            }
            Presentation::new(names, relators)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_10_presentation() {
        let p = family_presentation(&FamilyDescriptor::Dihedral(10)).unwrap();
        assert_eq!(p.to_string(), "a, b | a^10, b^2, a b a b");
        let t = family_table(&FamilyDescriptor::Dihedral(10)).unwrap();
        assert_eq!(t.order(), 20);
    }

    #[test]
    fn metacyclic_f20() {
        let d = FamilyDescriptor::Metacyclic { m: 5, n: 4, r: 2 };
        let p = family_presentation(&d).unwrap();
        assert_eq!(p.generator_count(), 2);
        assert_eq!(family_table(&d).unwrap().order(), 20);
        // 2^4 = 16 = 1 mod 5 is required; r = 3 also works (3^4 = 81), but an
        // action of order 3 into Aut(Z5) = Z4 cannot.
        assert!(family_presentation(&FamilyDescriptor::Metacyclic { m: 5, n: 3, r: 2 }).is_err());
    }

    #[test]
    fn order84_composite() {
        let d = FamilyDescriptor::AbelianByCyclic {
            moduli: vec![2, 2, 7],
            n: 3,
            matrix: vec![vec![0, 1, 0], vec![1, 1, 0], vec![0, 0, 2]],
        };
        let t = family_table(&d).unwrap();
        assert_eq!(t.order(), 84);
        assert_eq!(t.derived_subgroup().order(), 28);
        let p = family_presentation(&d).unwrap();
        assert_eq!(p.generator_count(), 4);
    }

    #[test]
    fn direct_composites_rename() {
        let d = FamilyDescriptor::direct(
            FamilyDescriptor::Cyclic(5),
            FamilyDescriptor::Metacyclic { m: 7, n: 4, r: -1 },
        );
        let p = family_presentation(&d).unwrap();
        assert_eq!(p.names(), &["a", "a2", "b"]);
        assert_eq!(family_table(&d).unwrap().order(), 140);
    }

    #[test]
    fn generalized_dihedral_shortcut() {
        let d = FamilyDescriptor::generalized_dihedral(vec![3, 3]);
        let t = family_table(&d).unwrap();
        assert_eq!(t.order(), 18);
        assert_eq!(t.derived_subgroup().order(), 9);
    }
}
