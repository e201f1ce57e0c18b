//! The double-copy presentation: two copies of the generators, both copies
//! of the original relators, and crossed-commutator relators tying them
//! together. The subgroup generated by the crossed commutators
//! `[x_i, x_j^phi]` inside the presented group realizes the tensor square.

use super::{Presentation, Word};

#[derive(Debug, Clone)]
pub struct NuPresentation {
    presentation: Presentation,
    copy_size: usize,
    tensor_generators: Vec<Word>,
}

impl NuPresentation {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Generators per copy (the original presentation's generator count).
    pub fn copy_size(&self) -> usize {
        self.copy_size
    }

    pub fn first_copy(&self) -> std::ops::Range<usize> {
        0..self.copy_size
    }

    pub fn second_copy(&self) -> std::ops::Range<usize> {
        self.copy_size..2 * self.copy_size
    }

    /// The `g^2` crossed-commutator words `[x_i, x_j^phi]`, row-major in
    /// `(i, j)`.
    pub fn tensor_generators(&self) -> &[Word] {
        &self.tensor_generators
    }

    /// The copy swap on words over the first copy: `x_i -> x_i^phi`.
    pub fn phi(&self, word: &Word) -> Word {
        let g = self.copy_size;
        word.map_generators(|gen| {
            debug_assert!(gen < g, "phi applies to first-copy words");
            Word::generator(gen + g)
        })
    }
}

/// Builds the double-copy presentation of `p`: generators `x_1..x_g` and
/// `x_1^phi..x_g^phi`, relators
///
/// 1. every relator of `p` in the `x_i`,
/// 2. the same relators in the `x_i^phi`,
/// 3. for every ordered generator triple `(i, j, k)` both crossed relators
///    `[x_i, x_j^phi]^{x_k} = [x_i^{x_k}, (x_j^{x_k})^phi]` and
///    `[x_i, x_j^phi]^{x_k^phi} = [x_i^{x_k}, (x_j^{x_k})^phi]`,
///
/// with `[u, v] = u^-1 v^-1 u v` and `u^v = v^-1 u v`.
pub fn nu_presentation(p: &Presentation) -> NuPresentation {
    let g = p.generator_count();
    let mut names = p.names().to_vec();
    for base in p.names() {
        let mut candidate = format!("{base}_phi");
        while names.contains(&candidate) {
            candidate.push('_');
        }
        names.push(candidate);
    }

    let mut relators = Vec::with_capacity(2 * p.relators().len() + 2 * g * g * g);
    relators.extend(p.relators().iter().cloned());
    for r in p.relators() {
        relators.push(r.map_generators(|gen| Word::generator(gen + g)));
    }

    let x = |i: usize| Word::generator(i);
    let xphi = |i: usize| Word::generator(i + g);
    let mut tensor_generators = Vec::with_capacity(g * g);
    for i in 0..g {
        for j in 0..g {
            tensor_generators.push(Word::commutator(&x(i), &xphi(j)));
        }
    }
    for i in 0..g {
        for j in 0..g {
            let bracket = Word::commutator(&x(i), &xphi(j));
            for k in 0..g {
                let xi_k = x(i).conjugated_by(&x(k));
                let xj_k = x(j).conjugated_by(&x(k));
                let xj_k_phi = xj_k.map_generators(|gen| Word::generator(gen + g));
                let rhs = Word::commutator(&xi_k, &xj_k_phi);
                let r1 = bracket.conjugated_by(&x(k)).multiply(&rhs.inverse());
                let r2 = bracket.conjugated_by(&xphi(k)).multiply(&rhs.inverse());
                debug_assert!(!r1.is_identity() && !r2.is_identity());
                relators.push(r1);
                relators.push(r2);
            }
        }
    }

    NuPresentation {
        presentation: Presentation::new(names, relators),
        copy_size: g,
        tensor_generators,
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_presentation;
    use super::*;

    #[test]
    fn cyclic_counts() {
        let p = parse_presentation("a | a^7").unwrap();
        let nu = nu_presentation(&p);
        assert_eq!(nu.presentation().generator_count(), 2);
        // 2 copy relators + 2 crossed relators for the single triple.
        assert_eq!(nu.presentation().relators().len(), 2 + 2);
        assert_eq!(nu.tensor_generators().len(), 1);
    }

    #[test]
    fn s3_counts() {
        let p = parse_presentation("a, b | a^3, b^2, (a b)^2").unwrap();
        let nu = nu_presentation(&p);
        assert_eq!(nu.presentation().generator_count(), 4);
        assert_eq!(nu.presentation().relators().len(), 6 + 2 * 8);
        assert_eq!(nu.tensor_generators().len(), 4);
        assert_eq!(nu.first_copy(), 0..2);
        assert_eq!(nu.second_copy(), 2..4);
    }

    #[test]
    fn name_collisions_resolved() {
        let p = parse_presentation("a, a_phi | a^2, a_phi^2").unwrap();
        let nu = nu_presentation(&p);
        let names = nu.presentation().names();
        assert_eq!(names.len(), 4);
        let mut dedup = names.to_vec();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 4);
    }

    #[test]
    fn crossed_relator_shape() {
        let p = parse_presentation("a | a^5").unwrap();
        let nu = nu_presentation(&p);
        // [a, a_phi]^a [a^a, (a^a)^phi]^-1 with a^a = a reduces to
        // a^-1 [a, a_phi] a [a, a_phi]^-1.
        let r1 = &nu.presentation().relators()[2];
        let bracket = Word::commutator(&Word::generator(0), &Word::generator(1));
        let expected = bracket
            .conjugated_by(&Word::generator(0))
            .multiply(&bracket.inverse());
        assert_eq!(r1, &expected);
    }
}
