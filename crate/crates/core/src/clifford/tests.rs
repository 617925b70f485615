use super::*;
use crate::catalog::{example1, example1_named_elements, example2, example2_d, make_pauli_bundle, GroupBundle};

fn context(bundle: GroupBundle) -> CliffordContext {
    CliffordContext::new(UnitaryRep::new(bundle.default_group().unwrap())).unwrap()
}

fn half(order: u32, k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(order, k).scale(&Rational::new(1.into(), 2.into()))
}

fn example1_code(ctx: &CliffordContext) -> CliffordCode {
    let g = ctx.group();
    let e = example1_named_elements(g);
    let n = g.subgroup_generated(&[e["b"], e["c"], e["d"], e["e"]]);
    let k = ctx.normal_index(&n).unwrap();
    let table = ctx.normal(k).table();
    let reps = [
        e["1"],
        e["e"],
        e["d"],
        e["c"],
        g.mul(e["c"], e["e"]),
        g.mul(e["c"], e["d"]),
        e["b"],
        g.mul(e["b"], e["d"]),
        g.mul(e["b"], e["c"]),
        g.mul(g.mul(e["b"], e["c"]), e["d"]),
    ];
    let expected = [2, -2, 0, 2, -2, 0, 0, 0, 0, 0];
    let j = (0..table.len())
        .find(|&j| {
            reps.iter()
                .zip(expected)
                .all(|(&r, v)| table.value_at(j, r).unwrap().to_i64() == Some(v))
        })
        .expect("character with the listed values");
    ctx.code(k, j).unwrap()
}

#[test]
fn example1_code_is_a_stabilizer_code() {
    let ctx = context(example1());
    let g = ctx.group();
    let names = example1_named_elements(g);
    let code = example1_code(&ctx);
    assert_eq!(code.normal().order(), 16);
    assert_eq!((code.chi_degree(), code.multiplicity(), code.dim()), (2, 1, 2));
    let one = Cyclotomic::one(4);
    let zero = Cyclotomic::zero(4);
    let diag = CycMatrix::diagonal(&[one.clone(), one, zero.clone(), zero]).unwrap();
    assert_eq!(code.projector(), &diag);

    let c = ctx.classify(&code).unwrap();
    assert_eq!(&c.inertia.inertia, code.normal());
    let ce = g.subgroup_generated(&[names["c"], names["e"]]);
    assert_eq!(c.inertia.quasikernel, ce);
    assert!(!g.is_cyclic(&ce));
    assert_eq!(c.verdict.kind, VerdictKind::Stabilizer);
    assert!(c.verdict.tests.agree());
    let w = c.verdict.witness.as_ref().unwrap();
    assert_eq!(w.subgroup, ce);
    assert!(w.projector.equals(code.projector()));
    let mut values: Vec<i64> = w.theta.iter().map(|t| t.to_i64().unwrap()).collect();
    values.sort_unstable();
    assert_eq!(values, vec![-1, -1, 1, 1]);
    // χ(e) = -2 = χ(1)·θ(e) forces θ(e) = -1.
    assert_eq!(w.theta_at(names["e"]).unwrap().to_i64(), Some(-1));
    assert_eq!(w.theta_at(names["c"]).unwrap().to_i64(), Some(1));
    assert_eq!(c.census.undetectable, 12);
    assert!(c.family.maximal_members().any(|a| *a == ce));
}

#[test]
fn example2_code_is_a_true_clifford_code() {
    let ctx = context(example2());
    let g = ctx.group();
    let gens = g.generators().to_vec();
    let d = g.index_of(&example2_d().embed(g.cyclotomic_order()).unwrap()).unwrap();
    let n = g.subgroup_generated(&[gens[0], gens[2], d]);
    assert_eq!(n.order(), 108);
    let k = ctx.normal_index(&n).unwrap();

    let m = g.cyclotomic_order();
    let mut rows = vec![vec![Cyclotomic::zero(m); 6]; 6];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = half(m, 0);
    }
    for (r, c) in [(0, 3), (1, 5), (2, 4)] {
        rows[r][c] = half(4, 1);
        rows[c][r] = half(4, 3);
    }
    let expected_p = CycMatrix::from_rows(rows).unwrap();

    let codes = ctx.enumerate_codes().unwrap();
    let code = codes
        .iter()
        .find(|c| c.normal_index() == k && c.projector().equals(&expected_p))
        .expect("the displayed projector occurs");
    assert_eq!((code.chi_degree(), code.dim()), (3, 3));
    let c = ctx.classify(code).unwrap();
    assert_eq!(&c.inertia.inertia, code.normal());
    assert_eq!(c.inertia.quasikernel.order(), 6);
    assert_eq!(c.verdict.kind, VerdictKind::TrueClifford);
    let maximal: Vec<&Subgroup> = c.family.maximal_members().collect();
    assert_eq!(maximal, vec![ctx.rep().center()]);
    let mut quotients: Vec<String> = c.verdict.evidence.iter().map(|e| e.group_quotient.to_string()).collect();
    quotients.sort_by_key(|q| std::cmp::Reverse(q.parse::<u64>().unwrap()));
    assert_eq!(quotients, ["216", "108", "72", "36"]);
    assert!(c.verdict.evidence.iter().all(|e| e.target == 9));
}

#[test]
fn projectors_are_hermitian_idempotents_commuting_with_n() {
    let ctx = context(example1());
    let g = ctx.group();
    for code in ctx.enumerate_codes().unwrap() {
        let p = code.projector();
        assert!((p * p).equals(p));
        assert!(p.adjoint().equals(p));
        for &n in code.normal().members() {
            let r = ctx.rep().matrix(n);
            assert!((r * p).equals(&(p * r)));
        }
        let z = g.intersection(code.normal(), ctx.rep().center()).order() as u64;
        let deg = code.chi_degree();
        assert_eq!(code.dim() * code.normal().order() as u64, deg * deg * ctx.phi_degree() * z);
        assert_eq!(code.dim(), code.multiplicity() * deg);
    }
}

#[test]
fn isotypic_projectors_sum_to_identity() {
    let ctx = context(example2());
    let codes = ctx.enumerate_codes().unwrap();
    for k in 0..ctx.normals().len() {
        let sum = sum_matrices(codes.iter().filter(|c| c.normal_index() == k).map(|c| c.projector()));
        assert!(sum.is_identity(), "normal subgroup {k}");
    }
}

#[test]
fn whole_group_and_center_give_the_identity() {
    let ctx = context(example2());
    let codes = ctx.enumerate_codes().unwrap();
    let last = ctx.normals().len() - 1;
    let center = ctx.normal_index(ctx.rep().center()).unwrap();
    for k in [0, center, last] {
        let here: Vec<_> = codes.iter().filter(|c| c.normal_index() == k).collect();
        assert_eq!(here.len(), 1);
        assert!(here[0].projector().is_identity());
        assert_eq!(here[0].dim(), 6);
    }
}

#[test]
fn non_constituent_is_rejected() {
    let ctx = context(example1());
    let k = ctx.normals().len() - 1;
    let j = (0..ctx.normal(k).table().len())
        .find(|&j| ctx.normal(k).multiplicity(j).unwrap() == 0)
        .unwrap();
    assert!(matches!(
        ctx.build_projector(k, j),
        Err(CliffordError::NotConstituent { .. })
    ));
}

#[test]
fn extension_by_center_keeps_the_projector() {
    let ctx = context(example2());
    let center = ctx.rep().center().clone();
    let mut extended = 0;
    for code in ctx.enumerate_codes().unwrap() {
        let ext = ctx.extend_by_center(&code).unwrap();
        assert_eq!(ext.unchanged, center.is_subset_of(code.normal()));
        assert!(center.is_subset_of(&ext.subgroup));
        assert_eq!(ext.chi_degree, code.chi_degree());
        assert!(ctx.build_projector(ext.normal, ext.chi).unwrap().equals(code.projector()));
        extended += usize::from(!ext.unchanged);
    }
    assert!(extended > 0);
}

#[test]
fn abelian_normal_subgroups_give_stabilizer_codes() {
    for bundle in [example1(), example2(), make_pauli_bundle(1).unwrap()] {
        let ctx = context(bundle);
        let codes = ctx.enumerate_codes().unwrap();
        for (code, c) in codes.iter().zip(ctx.classify_all(&codes).unwrap()) {
            if ctx.group().is_abelian(code.normal()) {
                assert_eq!(c.verdict.kind, VerdictKind::Stabilizer);
            }
            assert!(c.inertia.detectable(ctx.group().identity()));
            assert_eq!(c.inertia.theta[0].to_i64(), Some(code.dim() as i64));
        }
    }
}

#[test]
fn true_clifford_witnesses_are_strictly_larger() {
    let ctx = context(example2());
    let codes = ctx.enumerate_codes().unwrap();
    for (code, c) in codes.iter().zip(ctx.classify_all(&codes).unwrap()) {
        for a in &c.family.members {
            let w = ctx.stabilizer_witness(code, &c.inertia, a).unwrap();
            assert!((&w.projector * code.projector()).equals(code.projector()));
            let t = code_dimension(&w.projector).unwrap();
            match c.verdict.kind {
                VerdictKind::TrueClifford => assert!(t > code.dim()),
                VerdictKind::Stabilizer => assert!(t >= code.dim()),
            }
        }
    }
}
