//! Shipped bundles: the two worked examples and the Pauli groups.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use super::{CatalogError, GroupBundle};
use crate::cyclotomic::{CycMatrix, Cyclotomic};
use crate::group::FiniteGroup;

fn int_matrix(order: u32, rows: &[&[i64]]) -> CycMatrix {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|&v| Cyclotomic::from_int(order, v)).collect())
        .collect();
    CycMatrix::from_rows(rows).expect("rectangular")
}

fn metadata(pairs: Value) -> Map<String, Value> {
    match pairs {
        Value::Object(m) => m,
        _ => unreachable!("metadata literal is an object"),
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CycMatrix, b: &CycMatrix) -> CycMatrix {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let rows = (0..ar * br)
        .map(|i| {
            (0..ac * bc)
                .map(|j| a.get(i / br, j / bc) * b.get(i % br, j % bc))
                .collect()
        })
        .collect();
    CycMatrix::from_rows(rows).expect("rectangular")
}

/// ρ(a) and ρ(ab) of the order-32 error group `⟨a, b, c, d, e⟩`.
pub fn example1_generators() -> Vec<CycMatrix> {
    let a = int_matrix(
        4,
        &[&[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, -1, 0, 0]],
    );
    let ab = int_matrix(
        4,
        &[&[0, 0, 0, -1], &[0, 0, -1, 0], &[0, 1, 0, 0], &[-1, 0, 0, 0]],
    );
    vec![a, ab]
}

pub fn example1() -> GroupBundle {
    GroupBundle::from_matrices(
        "example1",
        metadata(json!({
            "description": "order-32 error group generated by rho(a), rho(ab); degree 4",
            "small_group_id": [32, 6]
        })),
        4,
        &example1_generators(),
    )
    .expect("valid generators")
}

/// Elements a, b, c, d, e of the order-32 group, recovered from the two
/// generators through `b = a⁻¹(ab)`, `c = [b, a]`, `d = a²`, `e = [c, a]`,
/// with `[x, y] = x⁻¹y⁻¹xy`.
pub fn example1_named_elements(group: &FiniteGroup) -> BTreeMap<&'static str, usize> {
    let gens = group.generators();
    let (a, ab) = (gens[0], gens[1]);
    let comm = |x: usize, y: usize| {
        group.mul(group.mul(group.inv(x), group.inv(y)), group.mul(x, y))
    };
    let b = group.mul(group.inv(a), ab);
    let c = comm(b, a);
    let d = group.mul(a, a);
    let e = comm(c, a);
    BTreeMap::from([
        ("1", group.identity()),
        ("a", a),
        ("b", b),
        ("c", c),
        ("d", d),
        ("e", e),
    ])
}

fn omega(k: i64) -> Cyclotomic {
    Cyclotomic::root_of_unity(12, k)
}

/// A, B, C of the order-216 error group of degree 6.
pub fn example2_generators() -> Vec<CycMatrix> {
    let perm = [1, 2, 0, 5, 3, 4];
    let a_rows = (0..6)
        .map(|i| {
            (0..6)
                .map(|j| Cyclotomic::from_int(12, (perm[i] == j) as i64))
                .collect()
        })
        .collect();
    let a = CycMatrix::from_rows(a_rows).expect("square");
    let b = CycMatrix::diagonal(&[
        omega(3),
        omega(7),
        omega(11),
        -omega(3),
        -omega(11),
        -omega(7),
    ])
    .expect("square");
    let c = kron(
        &int_matrix(12, &[&[0, 1], &[-1, 0]]),
        &CycMatrix::identity(3, 12),
    );
    vec![a, b, c]
}

/// `D = diag(1, ω₃, ω₃², 1, ω₃², ω₃)` with `ω₃ = ω⁴`.
pub fn example2_d() -> CycMatrix {
    CycMatrix::diagonal(&[omega(0), omega(4), omega(8), omega(0), omega(8), omega(4)])
        .expect("square")
}

pub fn example2() -> GroupBundle {
    GroupBundle::from_matrices(
        "example2",
        metadata(json!({
            "description": "order-216 error group generated by A, B, C; degree 6, omega = E(12)",
            "small_group_id": [216, 66]
        })),
        12,
        &example2_generators(),
    )
    .expect("valid generators")
}

/// `X` and `Z` acting on each of `qubits` tensor positions.
pub fn make_pauli_bundle(qubits: u32) -> Result<GroupBundle, CatalogError> {
    if !(1..=3).contains(&qubits) {
        return Err(CatalogError::QubitsOutOfRange(qubits));
    }
    let x = int_matrix(2, &[&[0, 1], &[1, 0]]);
    let z = int_matrix(2, &[&[1, 0], &[0, -1]]);
    let i2 = CycMatrix::identity(2, 2);
    let at = |k: u32, p: &CycMatrix| {
        (0..qubits).fold(None::<CycMatrix>, |acc, pos| {
            let f = if pos == k { p } else { &i2 };
            Some(match acc {
                None => f.clone(),
                Some(m) => kron(&m, f),
            })
        })
        .expect("at least one qubit")
    };
    let mut gens = Vec::new();
    for k in 0..qubits {
        gens.push(at(k, &x));
        gens.push(at(k, &z));
    }
    GroupBundle::from_matrices(
        format!("pauli{qubits}"),
        metadata(json!({
            "description": format!("{qubits}-qubit Pauli group, order {}", 1u64 << (2 * qubits + 1)),
            "qubits": qubits
        })),
        2,
        &gens,
    )
}
