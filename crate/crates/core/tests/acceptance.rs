//! Acceptance criteria, one test per criterion. Each prints a single
//! `criterion k: PASS|FAIL ...` line before asserting.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use cliffcodes::catalog::{example1_named_elements, example2_d, survey_paths, RunConfig};
use cliffcodes::chartab::CharacterTable;
use cliffcodes::clifford::{code_dimension, VerdictKind};
use cliffcodes::cyclotomic::{CycMatrix, Cyclotomic, Rational};
use cliffcodes::group::FiniteGroup;
use cliffcodes::oracle;
use common::{analysed, context, fixture, Analysed};

const ORACLE_TOLERANCE: f64 = 1e-9;

fn report(k: u32, checks: &[(&str, bool)], elapsed: Duration) {
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    if failed.is_empty() {
        println!("criterion {k}: PASS ({} checks, {:.2?})", checks.len(), elapsed);
    } else {
        println!("criterion {k}: FAIL ({:.2?}); failed: {}", elapsed, failed.join("; "));
    }
    for (name, ok) in checks {
        println!("  [{}] {name}", if *ok { "ok" } else { "FAIL" });
    }
    assert!(failed.is_empty(), "criterion {k} failed: {failed:?}");
}

fn int_matrix(order: u32, diag: &[i64]) -> CycMatrix {
    let values: Vec<Cyclotomic> = diag.iter().map(|&v| Cyclotomic::from_int(order, v)).collect();
    CycMatrix::diagonal(&values).unwrap()
}

#[test]
fn criterion_1_example1_end_to_end() {
    let start = Instant::now();
    let ctx = context("example1");
    let g = ctx.group();
    let names = example1_named_elements(g);
    let mut checks = vec![
        ("|G| = 32", g.order() == 32),
        ("|Z(G)| = 2", ctx.rep().center().order() == 2),
        ("d = 4", ctx.rep().degree() == 4),
    ];

    let n = g.subgroup_generated(&[names["b"], names["c"], names["d"], names["e"]]);
    checks.push(("N = <b, c, d, e> has order 16 and is normal", n.order() == 16 && g.is_normal(&n)));
    let k = ctx.normal_index(&n).expect("N is normal");
    let table = ctx.normal(k).table();
    let m = |x: &str, y: &str| g.mul(names[x], names[y]);
    let reps = [
        names["1"],
        names["e"],
        names["d"],
        names["c"],
        m("c", "e"),
        m("c", "d"),
        names["b"],
        m("b", "d"),
        m("b", "c"),
        g.mul(m("b", "c"), names["d"]),
    ];
    let distinct: std::collections::BTreeSet<usize> =
        reps.iter().map(|&r| table.classes().class_of(r).unwrap()).collect();
    checks.push(("the ten listed representatives lie in distinct classes", distinct.len() == 10));
    let expected = [2, -2, 0, 2, -2, 0, 0, 0, 0, 0];
    let chi = (0..table.len()).find(|&j| {
        reps.iter()
            .zip(expected)
            .all(|(&r, v)| table.value_at(j, r).unwrap() == &Cyclotomic::from_int(1, v).embed(table.value_at(j, r).unwrap().order()).unwrap())
    });
    checks.push(("degree-2 character with values (2,-2,0,2,-2,0,0,0,0,0)", chi.is_some()));
    let code = ctx.code(k, chi.unwrap()).unwrap();
    checks.push(("chi(1) = 2", code.chi_degree() == 2));
    let p = code.projector();
    checks.push((
        "P = diag(1,1,0,0) exactly",
        p == &int_matrix(p.order(), &[1, 1, 0, 0]),
    ));
    let c = ctx.classify(&code).unwrap();
    checks.push(("T = N", c.inertia.inertia == n));
    let ce = g.subgroup_generated(&[names["c"], names["e"]]);
    checks.push(("Z(theta) = <c, e> of order 4", c.inertia.quasikernel == ce && ce.order() == 4));
    checks.push(("Z(theta) is not cyclic", !g.is_cyclic(&c.inertia.quasikernel)));
    checks.push(("verdict = stabilizer", c.verdict.kind == VerdictKind::Stabilizer));
    let a_order = c.verdict.witness.as_ref().map_or(0, |w| w.subgroup.order());
    checks.push((
        "chi(1)^2 = 4 = |N|/|A|",
        code.chi_degree().pow(2) == 4 && a_order > 0 && n.order() / a_order == 4,
    ));

    let witness = c.verdict.witness.as_ref();
    let theta: BTreeMap<&str, Option<i64>> = ["1", "c", "e"]
        .into_iter()
        .map(|x| (x, witness.and_then(|w| w.theta_at(names[x])).and_then(Cyclotomic::to_i64)))
        .collect();
    let ce_value = witness.and_then(|w| w.theta_at(m("c", "e"))).and_then(Cyclotomic::to_i64);
    let mut multiset: Vec<Option<i64>> = vec![theta["1"], theta["e"], theta["c"], ce_value];
    multiset.sort();
    checks.push((
        "witness values on (1, e, c, ce) form the multiset {1,1,-1,-1}",
        multiset == vec![Some(-1), Some(-1), Some(1), Some(1)],
    ));
    println!(
        "  witness: theta(1) = {:?}, theta(e) = {:?}, theta(c) = {:?}, theta(ce) = {:?}",
        theta["1"], theta["e"], theta["c"], ce_value
    );
    checks.push(("theta(e) = 1", theta["e"] == Some(1)));
    checks.push(("theta(c) = -1", theta["c"] == Some(-1)));
    let elapsed = start.elapsed();
    checks.push(("runtime < 10 s", elapsed < Duration::from_secs(10)));
    report(1, &checks, elapsed);
}

#[test]
fn criterion_2_example2_end_to_end() {
    let start = Instant::now();
    let ctx = context("example2");
    let g = ctx.group();
    let mut checks = vec![
        ("|Z(G)| = 6", ctx.rep().center().order() == 6),
        ("d = 6", ctx.rep().degree() == 6),
        ("|G| = 216", g.order() == 216),
    ];
    let gens = g.generators().to_vec();
    let d = g.index_of(&example2_d().embed(g.cyclotomic_order()).unwrap());
    checks.push(("D lies in <A, B, C>", d.is_some()));
    let n = g.subgroup_generated(&[gens[0], gens[2], d.unwrap()]);
    checks.push(("N = <A, C, D> has order 108", n.order() == 108));
    let k = ctx.normal_index(&n).expect("N is normal");

    let order = g.cyclotomic_order();
    let half = Rational::new(1.into(), 2.into());
    let mut rows = vec![vec![Cyclotomic::zero(order); 6]; 6];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = Cyclotomic::from_rational(order, &half);
    }
    let i_half = Cyclotomic::root_of_unity(4, 1).scale(&half).embed(order).unwrap();
    for (r, c) in [(0, 3), (1, 5), (2, 4)] {
        rows[r][c] = i_half.clone();
        rows[c][r] = -&i_half;
    }
    let expected = CycMatrix::from_rows(rows).unwrap();
    let table = ctx.normal(k).table();
    let code = (0..table.len())
        .filter(|&j| ctx.normal(k).multiplicity(j).unwrap() > 0)
        .map(|j| ctx.code(k, j).unwrap())
        .find(|c| c.projector() == &expected);
    checks.push(("a constituent of N yields exactly the displayed rank-3 projector", code.is_some()));
    let code = code.unwrap();
    checks.push(("chi(1) = 3", code.chi_degree() == 3));
    checks.push(("rank 3", code_dimension(code.projector()).unwrap() == 3));
    let c = ctx.classify(&code).unwrap();
    checks.push(("T = N", c.inertia.inertia == n));
    checks.push(("|Z(theta)| = 6", c.inertia.quasikernel.order() == 6));
    checks.push(("verdict = true Clifford", c.verdict.kind == VerdictKind::TrueClifford));
    let maximal: Vec<_> = c.family.maximal_members().collect();
    let unique_six = maximal.len() == 1 && maximal[0].order() == 6;
    checks.push(("unique maximal A of order 6", unique_six));
    let stab = c
        .verdict
        .evidence
        .iter()
        .find(|e| e.a_order == 6)
        .map(|e| e.stabilizer_dim.clone());
    checks.push((
        "dimQ = 3 differs from |Z(G)|phi(1)/|A| = 6",
        code.dim() == 3 && stab == Some(Rational::from_integer(6.into())),
    ));
    let elapsed = start.elapsed();
    checks.push(("runtime < 120 s", elapsed < Duration::from_secs(120)));
    report(2, &checks, elapsed);
}

#[test]
fn criterion_3_table_row_reproduction() {
    let start = Instant::now();
    let config = RunConfig {
        only_true_clifford: true,
        ..RunConfig::default()
    };
    let survey = survey_paths(&[fixture("example1"), fixture("example2")], &config).unwrap();
    for row in &survey.rows {
        println!("  row: {row:?}");
    }
    let row = survey.rows.first();
    let checks = [
        ("no bundle failed", survey.failures.is_empty()),
        ("exactly one row", survey.rows.len() == 1),
        (
            "row columns (216, example2, 6, 108, 3, 3)",
            row.is_some_and(|r| {
                (r.group_order, r.group_name.as_str(), r.phi_degree, r.normal_order, r.chi_degree, r.dim_q)
                    == (216, "example2", 6, 108, 3, 3)
            }),
        ),
    ];
    report(3, &checks, start.elapsed());
}

const PROPERTY_FIXTURES: [&str; 4] = ["example1", "example2", "pauli1", "pauli2"];

fn property_violations(a: &Analysed) -> Vec<String> {
    let ctx = &a.ctx;
    let g: &FiniteGroup = ctx.group();
    let center = ctx.rep().center();
    let mut out = Vec::new();
    for (code, c) in a.codes.iter().zip(&a.classified) {
        let p = code.projector();
        let tag = format!("N{} chi{}", code.normal_index(), code.chi_index());
        if !(p * p).equals(p) {
            out.push(format!("{tag}: P^2 != P"));
        }
        if !p.adjoint().equals(p) {
            out.push(format!("{tag}: P != P^dagger"));
        }
        if code
            .normal()
            .members()
            .iter()
            .any(|&n| !(ctx.rep().matrix(n) * p).equals(&(p * ctx.rep().matrix(n))))
        {
            out.push(format!("{tag}: P does not commute with rho(N)"));
        }
        let z = g.intersection(code.normal(), center).order() as u64;
        let deg = code.chi_degree();
        let trace = p.trace();
        let formula = Rational::new(
            (deg * deg * ctx.phi_degree() * z).into(),
            (code.normal().order() as u64).into(),
        );
        if trace.to_rational() != Some(formula) {
            out.push(format!("{tag}: trace formula"));
        }
        let raw = ctx.normal(code.normal_index()).table().inner_product(
            code.chi_values(),
            ctx.normal(code.normal_index()).phi(),
        );
        if raw.to_i64() != Some(code.multiplicity() as i64) || code.dim() != code.multiplicity() * deg {
            out.push(format!("{tag}: multiplicity"));
        }
        let sandwich = center.is_subset_of(&c.inertia.quasikernel)
            && c.inertia.quasikernel.is_subset_of(&c.inertia.inertia)
            && code.normal().is_subset_of(&c.inertia.inertia);
        if !sandwich {
            out.push(format!("{tag}: quasikernel sandwich"));
        }
    }
    for k in 0..ctx.normals().len() {
        let ps: Vec<&CycMatrix> = a
            .codes
            .iter()
            .filter(|c| c.normal_index() == k)
            .map(|c| c.projector())
            .collect();
        let sum = ps[1..].iter().fold(ps[0].clone(), |acc, p| &acc + *p);
        if !sum.is_identity() {
            out.push(format!("N{k}: isotypic projectors do not sum to I"));
        }
    }
    out
}

#[test]
fn criterion_4_property_suite() {
    let start = Instant::now();
    let mut checks = Vec::new();
    let mut lines = Vec::new();
    for name in PROPERTY_FIXTURES {
        let a = analysed(name);
        let v = property_violations(&a);
        lines.push(format!("  {name}: {} codes, {} violations", a.codes.len(), v.len()));
        for x in v.iter().take(5) {
            lines.push(format!("    {x}"));
        }
        checks.push((name, v.is_empty()));
    }
    for l in lines {
        println!("{l}");
    }
    let named: Vec<(&str, bool)> = checks.iter().map(|(n, ok)| (*n, *ok)).collect();
    report(4, &named, start.elapsed());
}

#[test]
fn criterion_5_verdict_triple_agreement() {
    let start = Instant::now();
    let mut checks = Vec::new();
    for name in PROPERTY_FIXTURES {
        let ctx = context(name);
        let codes = ctx.enumerate_codes().unwrap();
        let mut disagreements = 0;
        for code in &codes {
            match ctx.classify(code) {
                Ok(c) if c.verdict.tests.agree() => {}
                _ => disagreements += 1,
            }
        }
        println!("  {name}: {} codes, {disagreements} disagreements", codes.len());
        checks.push((name, disagreements == 0));
    }
    report(5, &checks, start.elapsed());
}

fn table_violations(g: &FiniteGroup, t: &CharacterTable) -> usize {
    let classes = t.classes();
    let h = classes.group_order();
    let mut bad = 0;
    for i in 0..t.len() {
        for j in 0..t.len() {
            let ip = t.inner_product(t.character(i).values(), t.character(j).values());
            let want = if i == j { 1 } else { 0 };
            if ip.to_i64() != Some(want) {
                bad += 1;
            }
        }
    }
    for k in 0..classes.len() {
        for l in 0..classes.len() {
            let s = t.characters().iter().fold(Cyclotomic::zero(1), |acc, chi| {
                &acc + &(chi.value(k) * &chi.value(l).conj())
            });
            let want = if k == l { (h / classes.size(k)) as i64 } else { 0 };
            if s.to_i64() != Some(want) {
                bad += 1;
            }
        }
    }
    let squares: u64 = t.characters().iter().map(|c| c.degree() * c.degree()).sum();
    if squares != h as u64 {
        bad += 1;
    }
    let e = t.exponent() as u32;
    for j in 0..t.len() {
        for (c, v) in t.character(j).values().iter().enumerate() {
            let reduced = v.embed(e).ok().and_then(|v| v.reduce_mod_p(t.prime(), t.root_mod_p()));
            if reduced != Some(t.modular_values(j)[c]) {
                bad += 1;
            }
        }
    }
    let _ = g;
    bad
}

#[test]
fn criterion_6_character_table_exactness() {
    let start = Instant::now();
    let mut checks = Vec::new();
    for name in PROPERTY_FIXTURES {
        let ctx = context(name);
        let bad: usize = ctx
            .normals()
            .iter()
            .map(|n| table_violations(ctx.group(), n.table()))
            .sum();
        println!("  {name}: {} tables, {bad} violations", ctx.normals().len());
        checks.push((name, bad == 0));
    }
    report(6, &checks, start.elapsed());
}

fn oracle_deviation(a: &Analysed) -> f64 {
    let mut worst = 0.0f64;
    let mut cache = BTreeMap::new();
    for code in &a.codes {
        let k = code.normal_index();
        let spectral = cache
            .entry(k)
            .or_insert_with(|| oracle::normal_projectors(&a.ctx, k));
        let (_, dev) = oracle::closest(code.projector(), spectral).expect("non-empty spectrum");
        worst = worst.max(dev);
    }
    worst
}

#[test]
fn criterion_7_oracle_equivalence() {
    let start = Instant::now();
    let mut checks = Vec::new();
    for name in ["example1", "example2", "pauli1", "pauli2", "pauli3"] {
        let a = analysed(name);
        let worst = oracle_deviation(&a);
        println!("  {name}: {} codes, max entrywise deviation {worst:.3e}", a.codes.len());
        checks.push((name, worst <= ORACLE_TOLERANCE));
    }
    report(7, &checks, start.elapsed());
}

#[test]
fn criterion_8_pauli_survey() {
    let start = Instant::now();
    let a = analysed("pauli2");
    let true_clifford = a
        .classified
        .iter()
        .filter(|c| c.verdict.kind == VerdictKind::TrueClifford)
        .count();
    let worst = oracle_deviation(&a);
    println!(
        "  pauli2: |G| = {}, {} codes, {true_clifford} true Clifford, oracle deviation {worst:.3e}",
        a.ctx.group().order(),
        a.codes.len()
    );
    let elapsed = start.elapsed();
    let checks = [
        ("order 32", a.ctx.group().order() == 32),
        ("zero true-Clifford codes", true_clifford == 0),
        ("oracle agrees within 1e-9", worst <= ORACLE_TOLERANCE),
        ("runtime < 60 s", elapsed < Duration::from_secs(60)),
    ];
    report(8, &checks, elapsed);
}
