mod common;

use railyard::frontends::regex::regex_source_to_diagram;
use railyard::frontends::{bnf_rule_to_diagram, parse_bnf};
use railyard::{canonicalize, LayoutError};

#[test]
fn translation_rows() {
    common::frontend_goldens().unwrap();
}

#[test]
fn empty_language_elimination() {
    common::empty_elimination(500).unwrap();
}

#[test]
fn zero_is_eliminated_before_translation() {
    assert_eq!(regex_source_to_diagram("a | 0").unwrap().unwrap().to_string(), "\"a\"");
    assert_eq!(regex_source_to_diagram("a 0*").unwrap().unwrap().to_string(), "(\"a\" ())");
    assert!(matches!(regex_source_to_diagram("a 0").unwrap(), Err(LayoutError::EmptyLanguage)));
    assert!(regex_source_to_diagram("a (").is_err());
}

#[test]
fn translations_are_stable_under_canonicalization() {
    let g = parse_bnf("s := a <b> c | | <d> e f\nt := <s> <s>").unwrap();
    for rule in &g.rules {
        let d = canonicalize(&bnf_rule_to_diagram(rule));
        assert_eq!(canonicalize(&d), d);
    }
}
