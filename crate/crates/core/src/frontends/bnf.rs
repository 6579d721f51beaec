//! BNF grammars: `name := alt | alt ...`, where an alternative is a
//! whitespace-separated list of terminals and `<rule>` references. A rule
//! continues until the next `name :=`.

use std::collections::HashSet;

use crate::diagram::Diagram;
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BnfAtom {
    Terminal(String),
    RuleRef(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BnfRule {
    pub name: String,
    pub alternatives: Vec<Vec<BnfAtom>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BnfGrammar {
    pub rules: Vec<BnfRule>,
}

impl BnfGrammar {
    pub fn rule(&self, name: &str) -> Option<&BnfRule> {
        self.rules.iter().find(|r| r.name == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Define,
    Bar,
    Word(String),
    Quoted(String),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = text[i..].chars().next().unwrap();
        if c.is_whitespace() {
            i += c.len_utf8();
            continue;
        }
        if c == '"' {
            let start = i;
            i += 1;
            let mut s = String::new();
            let mut closed = false;
            while i < bytes.len() {
                let ch = text[i..].chars().next().unwrap();
                i += ch.len_utf8();
                match ch {
                    '\\' if i < bytes.len() => {
                        let e = text[i..].chars().next().unwrap();
                        i += e.len_utf8();
                        s.push(e);
                    }
                    '"' => {
                        closed = true;
                        break;
                    }
                    _ => s.push(ch),
                }
            }
            if !closed {
                return Err(ParseError::new(start, "unterminated quoted terminal"));
            }
            out.push((Tok::Quoted(s), start));
            continue;
        }
        let start = i;
        while i < bytes.len() {
            let ch = text[i..].chars().next().unwrap();
            if ch.is_whitespace() {
                break;
            }
            i += ch.len_utf8();
        }
        let word = &text[start..i];
        let tok = match word {
            ":=" | "::=" => Tok::Define,
            "|" => Tok::Bar,
            _ => Tok::Word(word.to_string()),
        };
        out.push((tok, start));
    }
    Ok(out)
}

fn rule_ref(word: &str) -> Option<&str> {
    let inner = word.strip_prefix('<')?.strip_suffix('>')?;
    (!inner.is_empty()).then_some(inner)
}

pub fn parse_bnf(text: &str) -> Result<BnfGrammar, ParseError> {
    let toks = lex(text)?;
    let mut grammar = BnfGrammar::default();
    let mut seen = HashSet::new();
    let mut i = 0;
    if toks.is_empty() {
        return Err(ParseError::new(0, "empty grammar"));
    }
    while i < toks.len() {
        let (name, noff) = match (&toks[i], toks.get(i + 1)) {
            ((Tok::Word(w), off), Some((Tok::Define, _))) => (rule_ref(w).unwrap_or(w).to_string(), *off),
            ((_, off), _) => return Err(ParseError::new(*off, "expected `name :=`")),
        };
        if !seen.insert(name.clone()) {
            return Err(ParseError::new(noff, format!("duplicate rule name `{name}`")));
        }
        i += 2;
        let mut alternatives = vec![Vec::new()];
        while i < toks.len() {
            if matches!(toks.get(i + 1), Some((Tok::Define, _))) && matches!(toks[i].0, Tok::Word(_)) {
                break;
            }
            match &toks[i] {
                (Tok::Bar, _) => alternatives.push(Vec::new()),
                (Tok::Define, off) => return Err(ParseError::new(*off, "unexpected `:=`")),
                (Tok::Quoted(s), _) => alternatives.last_mut().unwrap().push(BnfAtom::Terminal(s.clone())),
                (Tok::Word(w), _) => {
                    let atom = match rule_ref(w) {
                        Some(r) => BnfAtom::RuleRef(r.to_string()),
                        None => BnfAtom::Terminal(w.clone()),
                    };
                    alternatives.last_mut().unwrap().push(atom);
                }
            }
            i += 1;
        }
        grammar.rules.push(BnfRule { name, alternatives });
    }
    Ok(grammar)
}

fn atom_diagram(a: &BnfAtom) -> Diagram {
    match a {
        BnfAtom::Terminal(t) => Diagram::terminal(t.clone()),
        BnfAtom::RuleRef(r) => Diagram::nonterminal(r.clone()),
    }
}

fn alternative_diagram(alt: &[BnfAtom]) -> Diagram {
    match alt {
        [] => Diagram::epsilon(),
        [one] => atom_diagram(one),
        many => Diagram::seq(many.iter().map(atom_diagram).collect()),
    }
}

/// Alternatives fold into right-nested positive stacks.
pub fn bnf_rule_to_diagram(rule: &BnfRule) -> Diagram {
    let mut alts = rule.alternatives.iter().rev().map(|a| alternative_diagram(a));
    let last = alts.next().unwrap_or_else(Diagram::epsilon);
    alts.fold(last, |acc, d| Diagram::plus(d, acc))
}
