//! Golden values for the shipped cigarette-enterprise project.

use ahp_core::fixtures::{
    cigarette_efficiency, CIGARETTE_EFFICIENCY, CIGARETTE_EFFICIENCY_VERBATIM,
};
use ahp_core::io::{parse_project, serialize_project, ProjectError};
use ahp_core::{
    evaluate, rank, sensitivity, AggregationMethod, AhpError, EvaluationResult, RiTable,
};
use approx::assert_abs_diff_eq;

const LOCAL: [(&str, &[f64]); 7] = [
    ("A", &[0.245, 0.1775, 0.1575, 0.155, 0.1625, 0.1025]),
    ("B1", &[1.0]),
    ("B2", &[0.194, 0.136, 0.298, 0.372]),
    ("B3", &[0.1675, 0.105, 0.185, 0.2125, 0.155, 0.175]),
    ("B4", &[0.38, 0.236, 0.188, 0.196]),
    ("B5", &[0.285, 0.155, 0.17, 0.1725, 0.2175]),
    ("B6", &[0.406, 0.364, 0.23]),
];

const GLOBAL: [(&str, f64); 23] = [
    ("C11", 0.245),
    ("C24", 0.06603),
    ("C41", 0.0589),
    ("C23", 0.052895),
    ("C51", 0.0463125),
    ("C61", 0.041615),
    ("C62", 0.03731),
    ("C42", 0.03658),
    ("C55", 0.03534375),
    ("C21", 0.034435),
    ("C34", 0.03346875),
    ("C44", 0.03038),
    ("C43", 0.02914),
    ("C33", 0.0291375),
    ("C54", 0.02803125),
    ("C53", 0.027625),
    ("C36", 0.0275625),
    ("C31", 0.02638125),
    ("C52", 0.0251875),
    ("C35", 0.0244125),
    ("C22", 0.02414),
    ("C63", 0.023575),
    ("C32", 0.0165375),
];

fn evaluated() -> EvaluationResult {
    let h = cigarette_efficiency()
        .to_hierarchy(AggregationMethod::GeometricMean)
        .unwrap();
    evaluate(&h, &RiTable::saaty()).unwrap()
}

#[test]
fn structure() {
    let doc = cigarette_efficiency();
    let h = doc.skeleton().unwrap();
    assert_eq!(h.root().id, "A");
    assert_eq!(h.root().children.len(), 6);
    assert_eq!(h.leaves().count(), 23);
    assert_eq!(h.internal_nodes().count(), 7);
}

#[test]
fn local_weights_and_consistency() {
    let r = evaluated();
    for (node, expected) in LOCAL {
        let n = r.node(node).unwrap();
        assert_eq!(n.weights.len(), expected.len(), "{node}");
        for (got, want) in n.weights.weights.iter().zip(expected) {
            assert_abs_diff_eq!(*got, *want, epsilon = 1e-3);
        }
        let c = &n.consistency;
        assert_abs_diff_eq!(c.mu_max, expected.len() as f64, epsilon = 1e-3);
        assert!(c.ci <= 1e-3 && c.cr <= 2e-3 && c.passed, "{node}: {c:?}");
    }
    assert!(r.all_passed);
}

#[test]
fn composite_weights_and_order() {
    let r = evaluated();
    let table = rank(&r);
    for (leaf, want) in GLOBAL {
        assert_abs_diff_eq!(table.get(leaf).unwrap().global_weight, want, epsilon = 1e-4);
    }
    let expected: Vec<&str> = GLOBAL.iter().map(|(id, _)| *id).collect();
    assert_eq!(table.ids(), expected);
    assert_abs_diff_eq!(table.total(), 1.0, epsilon = 1e-9);
    assert_eq!(table.get("C24").unwrap().parent_id, "B2");
}

#[test]
fn global_weight_is_path_product() {
    let r = evaluated();
    let local = r.local_weights();
    for row in &r.composite.rows {
        let expected = local[&row.parent_id] * local[&row.leaf_id];
        assert_abs_diff_eq!(row.global_weight, expected, epsilon = 1e-15);
    }
}

#[test]
fn what_if_b6() {
    let r = evaluated();
    let local = r.local_weights();
    let t = sensitivity(&r, "B6", 0.30).unwrap();
    // C61 = 0.30 x its local weight (~0.406).
    assert_abs_diff_eq!(
        t.get("C61").unwrap().global_weight,
        0.30 * local["C61"],
        epsilon = 1e-15
    );
    assert_abs_diff_eq!(t.get("C61").unwrap().global_weight, 0.1218, epsilon = 1e-4);
    let factor = (1.0 - 0.30) / (1.0 - local["B6"]);
    assert_abs_diff_eq!(
        t.get("C11").unwrap().global_weight,
        local["B1"] * factor,
        epsilon = 1e-15
    );
    assert_abs_diff_eq!(t.total(), 1.0, epsilon = 1e-9);
    // The original evaluation is untouched.
    assert_eq!(r.composite.rows[0].leaf_id, "C11");
    assert_eq!(t.rows[0].leaf_id, "C11");
    assert_eq!(t.rows[1].leaf_id, "C61");
}

#[test]
fn verbatim_matrices_are_caught() {
    let doc = parse_project(CIGARETTE_EFFICIENCY_VERBATIM).unwrap();
    let failures: Vec<_> = doc
        .validate_matrices()
        .into_iter()
        .filter_map(|(node, res)| res.err().map(|e| (node, e)))
        .collect();
    assert_eq!(failures.len(), 2);
    assert!(matches!(
        &failures[0],
        (n, ProjectError::Matrix { source: AhpError::ReciprocityViolation { row: 2, col: 5, .. }, .. }) if n == "A"
    ));
    assert!(matches!(
        &failures[1],
        (n, ProjectError::Matrix { source: AhpError::ReciprocityViolation { row: 0, col: 3, .. }, .. }) if n == "B5"
    ));
}

#[test]
fn canonical_round_trip() {
    let once = serialize_project(&parse_project(CIGARETTE_EFFICIENCY).unwrap());
    let twice = serialize_project(&parse_project(&once).unwrap());
    assert_eq!(once, twice);
    assert_eq!(
        once, CIGARETTE_EFFICIENCY,
        "shipped fixture is stored canonically"
    );
    assert!(once.contains("[1, 1.3803, 1.5556"));
    let doc = parse_project(&once).unwrap();
    assert_eq!(doc.matrices["A"][0][1], 1.3803);
    assert_eq!(doc, cigarette_efficiency());
}
