pub mod bnf;
pub mod regex;

pub use bnf::{bnf_rule_to_diagram, parse_bnf, BnfAtom, BnfGrammar, BnfRule};
pub use regex::{eliminate_empty, parse_regex, print_regex, regex_to_diagram, Eliminated, Regex};
