use num_bigint::BigInt;
use serde::Serialize;

use super::{
    AdmissibleFamily, CenterExtension, CliffordCode, CliffordContext, CliffordError,
    DetectabilityCensus, InertiaData,
};
use crate::cyclotomic::{CycMatrix, Cyclotomic, Rational};
use crate::group::Subgroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Stabilizer,
    TrueClifford,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Stabilizer => "stabilizer",
            VerdictKind::TrueClifford => "true_clifford",
        }
    }
}

/// Outcome of each of the three equivalent stabilizer tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TestOutcomes {
    /// Some `A ∈ 𝒜` has `dim Q = |A ∩ Z(G)|·φ(1)/|A|`.
    pub any_member: bool,
    /// A maximal-order `A ∈ 𝒜` has `dim Q = |Z(G)|·φ(1)/|A|`.
    pub maximal_member: bool,
    /// Some `A ∈ 𝒜` with `Z(G) ≤ A` has `χ_Z(1)² = |N_Z|/|A|`.
    pub degree_criterion: bool,
}

impl TestOutcomes {
    pub fn agree(&self) -> bool {
        self.any_member == self.maximal_member && self.maximal_member == self.degree_criterion
    }
}

/// A linear character θ of A with `ρ(a)P = θ(a)P`, and the stabilizer
/// projector `P_A = 1/|A| Σ θ(a⁻¹)ρ(a)`.
#[derive(Debug, Clone)]
pub struct StabilizerWitness {
    pub subgroup: Subgroup,
    /// θ(a), aligned with `subgroup.members()`.
    pub theta: Vec<Cyclotomic>,
    pub projector: CycMatrix,
}

impl StabilizerWitness {
    pub fn theta_at(&self, a: usize) -> Option<&Cyclotomic> {
        self.subgroup
            .members()
            .binary_search(&a)
            .ok()
            .map(|i| &self.theta[i])
    }
}

/// The quantities compared for one `A ∈ 𝒜`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvidenceRow {
    pub a_order: usize,
    pub contains_center: bool,
    /// `|N_Z|/|A|`.
    pub normal_quotient: Rational,
    /// `|G|/|A|`.
    pub group_quotient: Rational,
    /// `χ(1)²`.
    pub target: u64,
    /// `|A ∩ Z(G)|·φ(1)/|A|`, the dimension of the stabilizer code of A.
    pub stabilizer_dim: Rational,
}

#[derive(Debug, Clone)]
pub struct ClassificationVerdict {
    pub kind: VerdictKind,
    pub tests: TestOutcomes,
    pub witness: Option<StabilizerWitness>,
    pub evidence: Vec<EvidenceRow>,
}

/// A code with all derived data.
#[derive(Debug, Clone)]
pub struct Classification {
    pub extension: CenterExtension,
    pub inertia: InertiaData,
    pub family: AdmissibleFamily,
    pub verdict: ClassificationVerdict,
    pub census: DetectabilityCensus,
}

fn ratio(a: usize, b: usize) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

impl CliffordContext {
    /// Full pipeline for one code: center extension, inertia, quasikernel,
    /// admissible family and the three stabilizer tests.
    pub fn classify(&self, code: &CliffordCode) -> Result<Classification, CliffordError> {
        let extension = self.extend_by_center(code)?;
        let inertia_group = self.inertia_group(code);
        let inertia = self.inertia_character(code, inertia_group)?;
        let g = self.group();
        let center = self.rep.center();
        if !code.subgroup.is_subset_of(&inertia.inertia)
            || !center.is_subset_of(&inertia.quasikernel)
        {
            return Err(CliffordError::Inconsistent(
                "quasikernel sandwich Z(G) ≤ Z(ϑ), N ≤ T violated".into(),
            ));
        }
        let family = self.admissible_family(&inertia.quasikernel)?;
        let verdict = self.decide(code, &extension, &inertia, &family)?;
        let census = self.detectability_census(&inertia);
        debug_assert_eq!(census.group_order, g.order());
        Ok(Classification {
            extension,
            inertia,
            family,
            verdict,
            census,
        })
    }

    fn decide(
        &self,
        code: &CliffordCode,
        extension: &CenterExtension,
        inertia: &InertiaData,
        family: &AdmissibleFamily,
    ) -> Result<ClassificationVerdict, CliffordError> {
        let g = self.group();
        let center = self.rep.center();
        let z = center.order() as u64;
        let phi1 = self.phi_degree();
        let dim = code.dim;

        let any_member = family.members.iter().any(|a| {
            let az = g.intersection(a, center).order() as u64;
            dim * a.order() as u64 == az * phi1
        });
        let witness_a = family
            .maximal
            .iter()
            .map(|&i| &family.members[i])
            .find(|a| dim * a.order() as u64 == z * phi1);
        let maximal_member = witness_a.is_some();
        let deg_sq = extension.chi_degree * extension.chi_degree;
        let nz = extension.subgroup.order() as u64;
        let degree_criterion = family
            .members
            .iter()
            .zip(&family.contains_center)
            .any(|(a, &has_z)| has_z && deg_sq * a.order() as u64 == nz);

        let tests = TestOutcomes {
            any_member,
            maximal_member,
            degree_criterion,
        };
        if !tests.agree() {
            return Err(CliffordError::Disagreement(format!(
                "{tests:?} for |N| = {}, χ(1) = {}, dim Q = {dim}",
                code.subgroup.order(),
                code.chi_degree
            )));
        }

        if let Some(a) = witness_a {
            let witness = self.stabilizer_witness(code, inertia, a)?;
            if !witness.projector.equals(&code.projector) {
                return Err(CliffordError::Inconsistent(
                    "stabilizer witness projector differs from P".into(),
                ));
            }
            return Ok(ClassificationVerdict {
                kind: VerdictKind::Stabilizer,
                tests,
                witness: Some(witness),
                evidence: Vec::new(),
            });
        }

        let evidence = family
            .members
            .iter()
            .zip(&family.contains_center)
            .map(|(a, &contains_center)| EvidenceRow {
                a_order: a.order(),
                contains_center,
                normal_quotient: ratio(extension.subgroup.order(), a.order()),
                group_quotient: ratio(g.order(), a.order()),
                target: deg_sq,
                stabilizer_dim: ratio(g.intersection(a, center).order() * phi1 as usize, a.order()),
            })
            .collect();
        Ok(ClassificationVerdict {
            kind: VerdictKind::TrueClifford,
            tests,
            witness: None,
            evidence,
        })
    }

    /// θ and `P_A` for an admissible A.
    pub fn stabilizer_witness(
        &self,
        code: &CliffordCode,
        inertia: &InertiaData,
        a: &Subgroup,
    ) -> Result<StabilizerWitness, CliffordError> {
        let g = self.group();
        let theta = a
            .members()
            .iter()
            .map(|&x| self.scalar_on_code(code, inertia, x))
            .collect::<Result<Vec<_>, _>>()?;
        let at = |x: usize| &theta[a.members().binary_search(&x).expect("closed")];
        for &x in a.members() {
            for &y in a.members() {
                if !(at(g.mul(x, y)) - &(at(x) * at(y))).is_zero() {
                    return Err(CliffordError::Inconsistent(
                        "θ is not a homomorphism on A".into(),
                    ));
                }
            }
        }
        let class_sums: Vec<CycMatrix> = a.members().iter().map(|&x| self.rep.matrix(x).clone()).collect();
        let projector = super::isotypic_projector(&theta, a.order(), &class_sums);
        Ok(StabilizerWitness {
            subgroup: a.clone(),
            theta,
            projector,
        })
    }
}
