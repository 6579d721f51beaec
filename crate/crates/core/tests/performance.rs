mod common;

#[test]
fn insert_statement_within_interactive_budget() {
    common::performance(10, 500.0).unwrap();
}
