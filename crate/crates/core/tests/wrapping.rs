mod common;

use railyard::parse_diagram;
use railyard::pipeline::{compile, LayoutParams, OrderMode, WrapMode, WrapOrder};

#[test]
fn global_and_local_agree_with_enumeration() {
    common::wrap_optimality(200, 200).unwrap();
}

#[test]
fn weighted_search_agrees_with_enumeration() {
    common::weighted_optimality(150).unwrap();
}

#[test]
fn default_order_goldens() {
    common::default_order_regression().unwrap();
}

#[test]
fn weighted_order_compiles() {
    let d = parse_diagram(common::INSERT_STMT).unwrap();
    let order = WrapOrder { mode: OrderMode::Weighted, ..Default::default() };
    let p = LayoutParams { target_width: 700.0, wrap_mode: WrapMode::Global, order, ..Default::default() };
    let c = compile(&d, &p).unwrap();
    assert!(c.chosen_content <= 700.0 + 1e-9);
}

#[test]
fn exhausted_budget_degrades_to_local() {
    let d = parse_diagram(common::INSERT_STMT).unwrap();
    let p = LayoutParams { target_width: 600.0, wrap_mode: WrapMode::Global, search_budget: 10, ..Default::default() };
    let c = compile(&d, &p).unwrap();
    assert!(c.degraded);
    let local = compile(&d, &LayoutParams { wrap_mode: WrapMode::Local, ..p.clone() }).unwrap();
    assert_eq!(c.wraps, local.wraps);
}

#[test]
fn wider_targets_wrap_less() {
    let d = parse_diagram(common::INSERT_STMT).unwrap();
    let mut last = f64::INFINITY;
    for t in [420.0, 700.0, 1000.0, 2000.0, 4000.0] {
        let c = compile(&d, &LayoutParams::with_width(t)).unwrap();
        assert!(c.wrap_penalty <= last, "penalty rose at {t}");
        last = c.wrap_penalty;
    }
}
