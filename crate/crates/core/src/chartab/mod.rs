//! Exact character tables by the Dixon–Schneider method.
//!
//! Central characters are found as common eigenvectors of the class
//! multiplication matrices over F_p, with `p ≡ 1 (mod exponent)`. Each
//! eigenvector determines a character modulo p, and the eigenvalue
//! multiplicities of `ρ(g)` over the e-th roots of unity lift it back to an
//! exact cyclotomic integer.

mod modular;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::One;
use thiserror::Error;

use crate::cyclotomic::{is_prime, primitive_root, Cyclotomic, FpScalar, Rational};
use crate::group::{ConjugacyClassSet, FiniteGroup, Subgroup};

use modular::simultaneous_eigenvectors;

/// Upper bound on the primes tried for the modular stage.
pub const DEFAULT_PRIME_BOUND: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChartabError {
    #[error("no prime below {bound} produced a consistent character table")]
    NoPrime { bound: u64 },
}

/// An irreducible character, one value per conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    values: Vec<Cyclotomic>,
    degree: u64,
}

impl Character {
    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, class: usize) -> &Cyclotomic {
        &self.values[class]
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_linear(&self) -> bool {
        self.degree == 1
    }
}

/// `maps[s][i]` is the class of `g_i^s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerMaps {
    maps: Vec<Vec<usize>>,
}

impl PowerMaps {
    pub fn map(&self, s: usize) -> &[usize] {
        &self.maps[s]
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }
}

pub fn power_maps(group: &FiniteGroup, classes: &ConjugacyClassSet, exponent: u64) -> PowerMaps {
    let maps = (0..exponent)
        .map(|s| {
            classes
                .representatives()
                .iter()
                .map(|&g| {
                    classes
                        .class_of(group.pow(g, s))
                        .expect("powers stay in the subgroup")
                })
                .collect()
        })
        .collect();
    PowerMaps { maps }
}

/// Primes `p ≡ 1 (mod exponent)` with `p > 2·sqrt(order)`, ascending, below `bound`.
pub fn candidate_primes(order: usize, exponent: u64, bound: u64) -> impl Iterator<Item = u64> {
    let floor = 2 * (order as u64).sqrt();
    // p > 2·sqrt(order) ⇔ p² > 4·order for integers.
    let start = floor.max(1);
    (start..bound)
        .filter(move |&p| p * p > 4 * order as u64 && p % exponent == 1 % exponent && is_prime(p))
}

/// Smallest admissible prime for the modular stage.
pub fn choose_prime(order: usize, exponent: u64, bound: u64) -> Result<u64, ChartabError> {
    candidate_primes(order, exponent, bound)
        .next()
        .ok_or(ChartabError::NoPrime { bound })
}

/// Complete irreducible character table of `h`.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    subgroup: Subgroup,
    classes: ConjugacyClassSet,
    exponent: u64,
    prime: u64,
    root: u64,
    power_maps: PowerMaps,
    characters: Vec<Character>,
    modular: Vec<Vec<u64>>,
}

impl CharacterTable {
    pub fn compute(group: &FiniteGroup, h: &Subgroup) -> Result<Self, ChartabError> {
        Self::compute_with_bound(group, h, DEFAULT_PRIME_BOUND)
    }

    pub fn compute_with_bound(
        group: &FiniteGroup,
        h: &Subgroup,
        prime_bound: u64,
    ) -> Result<Self, ChartabError> {
        let classes = group.conjugacy_classes(h);
        let exponent = group.subgroup_exponent(h);
        let power_maps = power_maps(group, &classes, exponent);
        for p in candidate_primes(h.order(), exponent, prime_bound) {
            if let Some((characters, modular, root)) =
                try_prime(group, h, &classes, &power_maps, exponent, p)
            {
                return Ok(CharacterTable {
                    subgroup: h.clone(),
                    classes,
                    exponent,
                    prime: p,
                    root,
                    power_maps,
                    characters,
                    modular,
                });
            }
        }
        Err(ChartabError::NoPrime { bound: prime_bound })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn classes(&self) -> &ConjugacyClassSet {
        &self.classes
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// The primitive e-th root of unity mod p identified with ζ_e.
    pub fn root_mod_p(&self) -> u64 {
        self.root
    }

    pub fn power_maps(&self) -> &PowerMaps {
        &self.power_maps
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn character(&self, j: usize) -> &Character {
        &self.characters[j]
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    /// Values of character `j` modulo p, as found by the modular stage.
    pub fn modular_values(&self, j: usize) -> &[u64] {
        &self.modular[j]
    }

    /// Value of character `j` at element `g` of the subgroup.
    pub fn value_at(&self, j: usize, g: usize) -> Option<&Cyclotomic> {
        self.classes.class_of(g).map(|c| self.characters[j].value(c))
    }

    /// Index of the character with exactly these class values.
    pub fn find(&self, values: &[Cyclotomic]) -> Option<usize> {
        self.characters.iter().position(|c| {
            c.values.len() == values.len()
                && c.values.iter().zip(values).all(|(a, b)| (a - b).is_zero())
        })
    }

    /// `[χ, ψ]` for class functions on this table's classes.
    pub fn inner_product(&self, chi: &[Cyclotomic], psi: &[Cyclotomic]) -> Cyclotomic {
        inner_product(&self.classes, chi, psi)
    }
}

/// `(1/|H|) Σ_h χ(h)·conj(ψ(h))`, summed classwise.
pub fn inner_product(classes: &ConjugacyClassSet, chi: &[Cyclotomic], psi: &[Cyclotomic]) -> Cyclotomic {
    assert_eq!(chi.len(), classes.len());
    assert_eq!(psi.len(), classes.len());
    let order = chi
        .iter()
        .chain(psi)
        .map(Cyclotomic::order)
        .fold(1u32, num_integer::lcm);
    let mut acc = Cyclotomic::zero(order);
    for (i, (a, b)) in chi.iter().zip(psi).enumerate() {
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let size = Rational::from_integer(BigInt::from(classes.size(i)));
        acc = &acc + &(a * &b.conj()).scale(&size);
    }
    acc.scale(&Rational::new(
        BigInt::one(),
        BigInt::from(classes.group_order()),
    ))
}

type TableParts = (Vec<Character>, Vec<Vec<u64>>, u64);

fn try_prime(
    group: &FiniteGroup,
    h: &Subgroup,
    classes: &ConjugacyClassSet,
    power_maps: &PowerMaps,
    exponent: u64,
    p: u64,
) -> Option<TableParts> {
    let k = classes.len();
    let order = h.order() as u64;
    let fp = |v: u64| FpScalar::new(v, p);
    let eigenvectors = simultaneous_eigenvectors(group, classes, p)?;
    if eigenvectors.len() != k {
        return None;
    }
    let inverse_class: Vec<usize> = classes
        .representatives()
        .iter()
        .map(|&g| classes.class_of(group.inv(g)).expect("closed under inverses"))
        .collect();
    let root = fp(primitive_root(p)).pow((p - 1) / exponent);
    let e_inv = fp(exponent).inv()?;
    let max_degree = order.sqrt();

    let mut rows: Vec<(Character, Vec<u64>)> = Vec::with_capacity(k);
    for w in eigenvectors {
        let w0 = fp(w[0]).inv()?;
        let omega: Vec<FpScalar> = w.iter().map(|&x| fp(x) * w0).collect();
        // Σ ω_i ω_{i*} / |C_i| = |H| / χ(1)².
        let s = (0..k).fold(fp(0), |acc, i| {
            acc + omega[i] * omega[inverse_class[i]] * fp(classes.size(i) as u64).inv().expect("p ∤ |C_i|")
        });
        let degree_sq = fp(order) * s.inv()?;
        let degree = (1..=max_degree).find(|&d| fp(d * d) == degree_sq)?;
        let modular: Vec<u64> = (0..k)
            .map(|i| {
                (omega[i] * fp(degree) * fp(classes.size(i) as u64).inv().expect("p ∤ |C_i|")).value()
            })
            .collect();

        let mut values = Vec::with_capacity(k);
        for i in 0..k {
            let mut terms = Vec::new();
            let mut total = 0u64;
            for kk in 0..exponent {
                let mut acc = fp(0);
                for s in 0..exponent {
                    let zeta = root.pow((exponent - (kk * s) % exponent) % exponent);
                    acc = acc + fp(modular[power_maps.map(s as usize)[i]]) * zeta;
                }
                let mult = (acc * e_inv).value();
                if mult > degree {
                    return None;
                }
                total += mult;
                if mult > 0 {
                    terms.push((Rational::from_integer(BigInt::from(mult)), kk as u32));
                }
            }
            if total != degree {
                return None;
            }
            values.push(Cyclotomic::from_terms(exponent as u32, terms));
        }
        rows.push((Character { values, degree }, modular));
    }
    if rows.iter().map(|(c, _)| c.degree * c.degree).sum::<u64>() != order {
        return None;
    }
    rows.sort_by(|a, b| {
        a.0.degree
            .cmp(&b.0.degree)
            .then_with(|| a.0.values.cmp(&b.0.values))
    });
    let (characters, modular) = rows.into_iter().unzip();
    Some((characters, modular, root.value()))
}
