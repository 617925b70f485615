use serde::Serialize;

use super::{CliffordCode, CliffordContext, CliffordError};
use crate::cyclotomic::{CycMatrix, Cyclotomic};
use crate::group::Subgroup;

/// The inertia group T of a code, ϑ on T and the quasikernel Z(ϑ).
#[derive(Debug, Clone)]
pub struct InertiaData {
    pub inertia: Subgroup,
    /// ϑ(t), aligned with `inertia.members()`.
    pub theta: Vec<Cyclotomic>,
    pub theta_degree: u64,
    pub quasikernel: Subgroup,
}

impl InertiaData {
    pub fn theta_at(&self, t: usize) -> Option<&Cyclotomic> {
        self.inertia
            .members()
            .binary_search(&t)
            .ok()
            .map(|i| &self.theta[i])
    }

    /// `g ∉ T − Z(ϑ)`.
    pub fn detectable(&self, g: usize) -> bool {
        !self.inertia.contains(g) || self.quasikernel.contains(g)
    }
}

/// Abelian subgroups of Z(ϑ) that are normal in G.
#[derive(Debug, Clone)]
pub struct AdmissibleFamily {
    pub members: Vec<Subgroup>,
    /// Positions in `members` of the maximal-order subgroups.
    pub maximal: Vec<usize>,
    /// Per member, whether it contains Z(G).
    pub contains_center: Vec<bool>,
}

impl AdmissibleFamily {
    pub fn maximal_members(&self) -> impl Iterator<Item = &Subgroup> {
        self.maximal.iter().map(|&i| &self.members[i])
    }
}

/// `(N_Z, χ_Z)` with `N_Z = N·Z(G)` and `χ_Z(zn) = α(z)χ(n)`.
#[derive(Debug, Clone)]
pub struct CenterExtension {
    pub normal: usize,
    pub chi: usize,
    pub subgroup: Subgroup,
    pub chi_values: Vec<Cyclotomic>,
    pub chi_degree: u64,
    /// N already contained Z(G).
    pub unchanged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DetectabilityCensus {
    pub group_order: usize,
    pub inertia_order: usize,
    pub quasikernel_order: usize,
    pub undetectable: usize,
}

impl CliffordContext {
    /// `T = {g : χ(gng⁻¹) = χ(n) ∀n ∈ N}`, tested once per coset of N.
    pub fn inertia_group(&self, code: &CliffordCode) -> Subgroup {
        let g = self.group();
        let data = self.normal(code.normal);
        let classes = data.table.classes();
        let chi = &code.chi_values;
        let mut seen = vec![false; g.order()];
        let mut members = Vec::new();
        for x in 0..g.order() {
            if seen[x] {
                continue;
            }
            let coset: Vec<usize> = data.subgroup.members().iter().map(|&n| g.mul(x, n)).collect();
            for &y in &coset {
                seen[y] = true;
            }
            let stabilises = classes.representatives().iter().enumerate().all(|(i, &n)| {
                let c = classes
                    .class_of(g.conjugate(x, n))
                    .expect("N is normal");
                (&chi[c] - &chi[i]).is_zero()
            });
            if stabilises {
                members.extend(coset);
            }
        }
        members.sort_unstable();
        Subgroup::from_sorted(members)
    }

    /// ϑ(t) = trace(ρ(t)P) on T and the quasikernel.
    pub fn inertia_character(
        &self,
        code: &CliffordCode,
        inertia: Subgroup,
    ) -> Result<InertiaData, CliffordError> {
        let theta: Vec<Cyclotomic> = inertia
            .members()
            .iter()
            .map(|&t| self.rep.matrix(t).trace_of_product(&code.projector))
            .collect();
        let dim_sq = Cyclotomic::from_int(1, (code.dim * code.dim) as i64);
        let kernel: Vec<usize> = inertia
            .members()
            .iter()
            .zip(&theta)
            .filter(|(_, v)| (&v.abs_squared() - &dim_sq).is_zero())
            .map(|(&t, _)| t)
            .collect();
        if !self.group().is_subgroup(&kernel) {
            return Err(CliffordError::Inconsistent("quasikernel is not a subgroup".into()));
        }
        if theta[0].to_i64() != Some(code.dim as i64) {
            return Err(CliffordError::Inconsistent(format!(
                "ϑ(1) = {} differs from dim Q = {}",
                theta[0], code.dim
            )));
        }
        Ok(InertiaData {
            inertia,
            theta,
            theta_degree: code.dim,
            quasikernel: Subgroup::from_sorted(kernel),
        })
    }

    /// All subgroups of Z(ϑ) that are abelian and normal in G.
    pub fn admissible_family(&self, quasikernel: &Subgroup) -> Result<AdmissibleFamily, CliffordError> {
        let g = self.group();
        let center = self.rep.center();
        let members: Vec<Subgroup> = g
            .subgroups_within(quasikernel)?
            .into_iter()
            .filter(|a| g.is_abelian(a) && g.is_normal(a))
            .collect();
        let top = members.iter().map(Subgroup::order).max().unwrap_or(1);
        let maximal = (0..members.len()).filter(|&i| members[i].order() == top).collect();
        let contains_center = members.iter().map(|a| center.is_subset_of(a)).collect();
        Ok(AdmissibleFamily {
            members,
            maximal,
            contains_center,
        })
    }

    /// Extends `(N, χ)` to `(N·Z(G), χ_Z)` and checks the projector is unchanged.
    pub fn extend_by_center(&self, code: &CliffordCode) -> Result<CenterExtension, CliffordError> {
        let g = self.group();
        let center = self.rep.center();
        let n = &code.subgroup;
        let data = self.normal(code.normal);
        let chi_at = |x: usize| -> &Cyclotomic {
            &code.chi_values[data.table.classes().class_of(x).expect("x lies in N")]
        };
        let alpha = |z: usize| self.alpha.alpha(z).expect("central element");

        let deg = Cyclotomic::from_int(1, code.chi_degree as i64);
        for &z in center.members().iter().filter(|&&z| n.contains(z)) {
            if !(chi_at(z) - &(alpha(z) * &deg)).is_zero() {
                return Err(CliffordError::IllDefinedExtension(format!(
                    "χ({}) = {} but α·χ(1) = {}",
                    g.word_string(z),
                    chi_at(z),
                    alpha(z) * &deg
                )));
            }
        }
        if center.is_subset_of(n) {
            return Ok(CenterExtension {
                normal: code.normal,
                chi: code.chi,
                subgroup: n.clone(),
                chi_values: code.chi_values.clone(),
                chi_degree: code.chi_degree,
                unchanged: true,
            });
        }

        let nz = g.join(n, center);
        let k = self.normal_index(&nz).ok_or_else(|| {
            CliffordError::Inconsistent("N·Z(G) missing from the normal subgroups".into())
        })?;
        let ext = self.normal(k);
        let values: Vec<Cyclotomic> = ext
            .table
            .classes()
            .representatives()
            .iter()
            .map(|&x| {
                let z = center
                    .members()
                    .iter()
                    .copied()
                    .find(|&z| n.contains(g.mul(g.inv(z), x)))
                    .expect("x lies in N·Z(G)");
                alpha(z) * chi_at(g.mul(g.inv(z), x))
            })
            .collect();
        let j = ext.table.find(&values).ok_or_else(|| {
            CliffordError::IllDefinedExtension("χ_Z is not an irreducible character of N·Z(G)".into())
        })?;
        let projector = self.build_projector(k, j)?;
        if !projector.equals(&code.projector) {
            return Err(CliffordError::Inconsistent(
                "projector changed under center extension".into(),
            ));
        }
        Ok(CenterExtension {
            normal: k,
            chi: j,
            subgroup: nz,
            chi_values: values,
            chi_degree: code.chi_degree,
            unchanged: false,
        })
    }

    pub fn detectability_census(&self, inertia: &InertiaData) -> DetectabilityCensus {
        DetectabilityCensus {
            group_order: self.group().order(),
            inertia_order: inertia.inertia.order(),
            quasikernel_order: inertia.quasikernel.order(),
            undetectable: inertia.inertia.order() - inertia.quasikernel.order(),
        }
    }

    /// θ on `a` with `ρ(a)P = θ(a)P`, checked exactly.
    pub(crate) fn scalar_on_code(
        &self,
        code: &CliffordCode,
        inertia: &InertiaData,
        a: usize,
    ) -> Result<Cyclotomic, CliffordError> {
        let theta = inertia
            .theta_at(a)
            .ok_or(CliffordError::NotScalarOnCode(a))?;
        let scalar = theta.scale(&crate::cyclotomic::Rational::new(1.into(), code.dim.into()));
        let lhs: CycMatrix = self.rep.matrix(a) * &code.projector;
        if !lhs.equals(&code.projector.scale(&scalar)) {
            return Err(CliffordError::NotScalarOnCode(a));
        }
        Ok(scalar)
    }
}
