//! Clifford codes of an error group: projectors, inertia data and the
//! stabilizer/true-Clifford classification.

mod classify;
mod inertia;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::chartab::{CharacterTable, ChartabError, DEFAULT_PRIME_BOUND};
use crate::cyclotomic::{CycMatrix, Cyclotomic, Rational};
use crate::group::{FiniteGroup, GroupError, Subgroup};
use crate::repn::{CentralCharacter, ErrorGroupCert, RepnError, UnitaryRep};

pub use classify::{
    Classification, ClassificationVerdict, EvidenceRow, StabilizerWitness, TestOutcomes,
    VerdictKind,
};
pub use inertia::{AdmissibleFamily, CenterExtension, DetectabilityCensus, InertiaData};

#[derive(Debug, Error)]
pub enum CliffordError {
    #[error("not an error group: {0:?}")]
    NotAnErrorGroup(ErrorGroupCert),
    #[error("character {chi} of normal subgroup {normal} is not a constituent of the representation")]
    NotConstituent { normal: usize, chi: usize },
    #[error("trace of the projector is not a positive integer: {0}")]
    NonIntegerTrace(String),
    #[error("multiplicity [χ, φ_N] is not a non-negative integer: {0}")]
    NonIntegerMultiplicity(String),
    #[error("center extension is ill-defined: {0}")]
    IllDefinedExtension(String),
    #[error("element {0} does not act on the code by a scalar")]
    NotScalarOnCode(usize),
    #[error("classification tests disagree: {0}")]
    Disagreement(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Chartab(#[from] ChartabError),
    #[error(transparent)]
    Repn(#[from] RepnError),
}

/// A normal subgroup together with its character table, class sums and
/// the restriction of φ.
#[derive(Debug)]
pub struct NormalData {
    subgroup: Subgroup,
    table: CharacterTable,
    class_sums: Vec<CycMatrix>,
    phi: Vec<Cyclotomic>,
}

impl NormalData {
    fn new(rep: &UnitaryRep, subgroup: Subgroup, prime_bound: u64) -> Result<Self, CliffordError> {
        let table = CharacterTable::compute_with_bound(rep.group(), &subgroup, prime_bound)?;
        let phi = rep.restrict(table.classes());
        let class_sums = table
            .classes()
            .classes()
            .iter()
            .map(|class| sum_matrices(class.iter().map(|&g| rep.matrix(g))))
            .collect();
        Ok(NormalData {
            subgroup,
            table,
            class_sums,
            phi,
        })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    /// `Σ_{n∈C} ρ(n)` for every class C of the subgroup.
    pub fn class_sums(&self) -> &[CycMatrix] {
        &self.class_sums
    }

    /// φ restricted to the subgroup, per class.
    pub fn phi(&self) -> &[Cyclotomic] {
        &self.phi
    }

    /// `[χ_j, φ_N]`.
    pub fn multiplicity(&self, j: usize) -> Result<u64, CliffordError> {
        let m = self.table.inner_product(self.table.character(j).values(), &self.phi);
        m.to_integer()
            .and_then(|v| v.to_u64())
            .ok_or_else(|| CliffordError::NonIntegerMultiplicity(m.to_string()))
    }
}

/// A Clifford code `(G, ρ, N, χ)` with its exact projector.
#[derive(Debug, Clone)]
pub struct CliffordCode {
    normal: usize,
    chi: usize,
    subgroup: Subgroup,
    chi_values: Vec<Cyclotomic>,
    chi_degree: u64,
    multiplicity: u64,
    projector: CycMatrix,
    dim: u64,
}

impl CliffordCode {
    /// Position of N in the sorted normal-subgroup list.
    pub fn normal_index(&self) -> usize {
        self.normal
    }

    /// Row of χ in the character table of N.
    pub fn chi_index(&self) -> usize {
        self.chi
    }

    pub fn normal(&self) -> &Subgroup {
        &self.subgroup
    }

    /// χ on the classes of N.
    pub fn chi_values(&self) -> &[Cyclotomic] {
        &self.chi_values
    }

    pub fn chi_degree(&self) -> u64 {
        self.chi_degree
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn projector(&self) -> &CycMatrix {
        &self.projector
    }

    pub fn dim(&self) -> u64 {
        self.dim
    }
}

/// Everything fixed by `(G, ρ)`: the representation, its central
/// character and the data of every normal subgroup.
#[derive(Debug)]
pub struct CliffordContext {
    rep: UnitaryRep,
    alpha: CentralCharacter,
    normals: Vec<Arc<NormalData>>,
}

impl CliffordContext {
    pub fn new(rep: UnitaryRep) -> Result<Self, CliffordError> {
        Self::with_prime_bound(rep, DEFAULT_PRIME_BOUND)
    }

    pub fn with_prime_bound(rep: UnitaryRep, prime_bound: u64) -> Result<Self, CliffordError> {
        let cert = rep.verify_error_group();
        if !cert.is_valid() {
            return Err(CliffordError::NotAnErrorGroup(cert));
        }
        let alpha = rep.central_character()?;
        let normals = rep
            .group()
            .normal_subgroups()
            .into_par_iter()
            .map(|n| NormalData::new(&rep, n, prime_bound).map(Arc::new))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CliffordContext {
            rep,
            alpha,
            normals,
        })
    }

    pub fn rep(&self) -> &UnitaryRep {
        &self.rep
    }

    pub fn group(&self) -> &FiniteGroup {
        self.rep.group()
    }

    pub fn central_character(&self) -> &CentralCharacter {
        &self.alpha
    }

    /// φ(1).
    pub fn phi_degree(&self) -> u64 {
        self.rep.degree() as u64
    }

    pub fn normals(&self) -> &[Arc<NormalData>] {
        &self.normals
    }

    pub fn normal(&self, k: usize) -> &NormalData {
        &self.normals[k]
    }

    pub fn normal_index(&self, h: &Subgroup) -> Option<usize> {
        self.normals.binary_search_by(|n| n.subgroup.cmp(h)).ok()
    }

    /// Every Clifford code, ordered by N and then by table row of χ.
    pub fn enumerate_codes(&self) -> Result<Vec<CliffordCode>, CliffordError> {
        let per_normal = (0..self.normals.len())
            .into_par_iter()
            .map(|k| {
                let data = &self.normals[k];
                let mut codes = Vec::new();
                for j in 0..data.table.len() {
                    if data.multiplicity(j)? > 0 {
                        codes.push(self.code(k, j)?);
                    }
                }
                Ok(codes)
            })
            .collect::<Result<Vec<_>, CliffordError>>()?;
        Ok(per_normal.into_iter().flatten().collect())
    }

    /// The code of character `chi` of normal subgroup `normal`.
    pub fn code(&self, normal: usize, chi: usize) -> Result<CliffordCode, CliffordError> {
        let data = &self.normals[normal];
        let multiplicity = data.multiplicity(chi)?;
        let projector = self.build_projector(normal, chi)?;
        let dim = code_dimension(&projector)?;
        let character = data.table.character(chi);
        Ok(CliffordCode {
            normal,
            chi,
            subgroup: data.subgroup.clone(),
            chi_values: character.values().to_vec(),
            chi_degree: character.degree(),
            multiplicity,
            projector,
            dim,
        })
    }

    /// `P = χ(1)/|N| Σ_n χ(n⁻¹) ρ(n)`, summed over classes of N.
    pub fn build_projector(&self, normal: usize, chi: usize) -> Result<CycMatrix, CliffordError> {
        let data = &self.normals[normal];
        let values = data.table.character(chi).values();
        let p = isotypic_projector(values, data.subgroup.order(), &data.class_sums);
        if p.is_zero() {
            return Err(CliffordError::NotConstituent { normal, chi });
        }
        Ok(p)
    }

    /// Classifies every code; results keep the order of `codes`.
    pub fn classify_all(&self, codes: &[CliffordCode]) -> Result<Vec<Classification>, CliffordError> {
        codes.par_iter().map(|c| self.classify(c)).collect()
    }
}

/// `Σ m` over an iterator of equally shaped matrices, skipping zero entries.
pub(crate) fn sum_matrices<'a>(mats: impl Iterator<Item = &'a CycMatrix>) -> CycMatrix {
    let mut mats = mats.peekable();
    let first = mats.peek().expect("at least one matrix");
    let (r, c) = (first.rows(), first.cols());
    let mut acc: Vec<Option<Cyclotomic>> = vec![None; r * c];
    let mut order = 1u32;
    for m in mats {
        order = num_integer::lcm(order, m.order());
        for (slot, x) in acc.iter_mut().zip(m.entries()) {
            if x.is_zero() {
                continue;
            }
            *slot = Some(match slot.take() {
                Some(s) => &s + x,
                None => x.clone(),
            });
        }
    }
    finish(acc, r, c, order)
}

/// `deg/|H| Σ_C conj(χ(C)) K_C` for class sums `K_C`.
pub(crate) fn isotypic_projector(chi: &[Cyclotomic], h_order: usize, class_sums: &[CycMatrix]) -> CycMatrix {
    let deg = chi[0].to_rational().expect("degree is rational");
    let (r, c) = (class_sums[0].rows(), class_sums[0].cols());
    let mut acc: Vec<Option<Cyclotomic>> = vec![None; r * c];
    let mut order = 1u32;
    for (value, sum) in chi.iter().zip(class_sums) {
        if value.is_zero() {
            continue;
        }
        let coef = value.conj();
        order = num_integer::lcm(order, num_integer::lcm(coef.order(), sum.order()));
        for (slot, x) in acc.iter_mut().zip(sum.entries()) {
            if x.is_zero() {
                continue;
            }
            let term = &coef * x;
            *slot = Some(match slot.take() {
                Some(s) => &s + &term,
                None => term,
            });
        }
    }
    let scale = deg / Rational::from_integer(BigInt::from(h_order));
    finish(acc, r, c, order).scale_rational(&scale)
}

fn finish(acc: Vec<Option<Cyclotomic>>, r: usize, c: usize, order: u32) -> CycMatrix {
    let entries = acc
        .into_iter()
        .map(|x| {
            x.unwrap_or_else(|| Cyclotomic::zero(order))
                .embed(order)
                .expect("order divides the lcm")
        })
        .collect();
    CycMatrix::new(r, c, entries).expect("shape is preserved")
}

/// `trace P`, which must be a positive integer.
pub fn code_dimension(projector: &CycMatrix) -> Result<u64, CliffordError> {
    let t = projector.trace();
    t.to_integer()
        .and_then(|v| v.to_u64())
        .filter(|&v| v > 0)
        .ok_or_else(|| CliffordError::NonIntegerTrace(t.to_string()))
}

#[cfg(test)]
mod tests;
