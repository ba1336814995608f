//! The automaton definition file format.
//!
//! UTF-8, line-oriented. `#` starts a comment. The first meaningful line is
//! the header `alphabet: <sym0> <sym1> ...`; the first symbol is the
//! distinguished letter. Each following line declares one state:
//!
//! ```text
//! state <name> [<section name per letter>] perm <image symbol per letter>
//! ```
//!
//! The name `1` is reserved for the identity state, which is always available
//! without declaration. Symbols are mapped to letter indices at parse time, so
//! the core stays alphabet-agnostic.
//!
//! ```
//! let text = "alphabet: 0 1\nstate a [b 1] perm 0 1\nstate b [a 1] perm 1 0\n";
//! let parsed = automata_groups::parse_machine(text).unwrap();
//! let b = parsed.element("b").unwrap();
//! assert_eq!(b.act(&parsed.word("00").unwrap()), parsed.word("10").unwrap());
//! ```

use std::collections::{BTreeMap, HashMap};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::element::Element;
use crate::error::ParseError;
use crate::machine::{MealyMachine, StateId};
use crate::perm::Perm;

/// Result of parsing a definition file: the raw machine plus the name table.
#[derive(Debug, Clone)]
pub struct ParsedMachine {
    machine: MealyMachine,
    names: Vec<(String, StateId)>,
    symbols: Vec<String>,
}

impl ParsedMachine {
    pub fn machine(&self) -> &MealyMachine {
        &self.machine
    }

    pub fn alphabet(&self) -> Alphabet {
        self.machine.alphabet()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    /// Declared state names in file order (the implicit `1` is not listed).
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(|(n, _)| n.as_str())
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        if name == "1" {
            // the implicit identity is always the last state
            return Some(self.machine.state_count() - 1);
        }
        self.names.iter().find(|(n, _)| n == name).map(|(_, q)| *q)
    }

    /// The canonical element for a declared state (or `1`).
    pub fn element(&self, name: &str) -> Option<Element> {
        self.state_id(name)
            .map(|q| Element::from_machine(&self.machine, q))
    }

    /// All declared states as canonical elements, in file order.
    pub fn elements(&self) -> Vec<(String, Element)> {
        self.names
            .iter()
            .map(|(n, q)| (n.clone(), Element::from_machine(&self.machine, *q)))
            .collect()
    }

    /// Parse a word given in alphabet symbols. Tokens may be separated by
    /// whitespace or commas; when every symbol is a single character an
    /// unseparated string like `0110` is accepted too.
    pub fn word(&self, text: &str) -> Result<Word, ParseError> {
        parse_word(&self.symbols, text)
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        format_word(&self.symbols, word)
    }
}

/// Parse an automaton definition file.
pub fn parse_machine(text: &str) -> Result<ParsedMachine, ParseError> {
    let mut symbols: Option<(usize, Vec<String>)> = None;
    struct RawState {
        line: usize,
        name: String,
        sections: Vec<String>,
        perm: Perm,
    }
    let mut states: Vec<RawState> = Vec::new();

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("alphabet:") {
            if symbols.is_some() {
                return Err(ParseError::Syntax {
                    line: line_no,
                    msg: "duplicate alphabet header".into(),
                });
            }
            let syms: Vec<String> = rest.split_whitespace().map(|s| s.to_string()).collect();
            if syms.len() < 2 {
                return Err(ParseError::AlphabetTooSmall);
            }
            let mut seen = HashMap::new();
            for s in &syms {
                if seen.insert(s.clone(), ()).is_some() {
                    return Err(ParseError::Syntax {
                        line: line_no,
                        msg: format!("repeated alphabet symbol `{s}`"),
                    });
                }
            }
            symbols = Some((line_no, syms));
            continue;
        }
        let Some((_, syms)) = &symbols else {
            return Err(ParseError::MissingAlphabet);
        };
        let d = syms.len();
        let Some(rest) = line.strip_prefix("state") else {
            return Err(ParseError::Syntax {
                line: line_no,
                msg: format!("expected `state` or `alphabet:`, found `{line}`"),
            });
        };
        let rest = rest.trim_start();
        let Some(open) = rest.find('[') else {
            return Err(ParseError::Syntax { line: line_no, msg: "missing `[`".into() });
        };
        let Some(close) = rest.find(']') else {
            return Err(ParseError::Syntax { line: line_no, msg: "missing `]`".into() });
        };
        if close < open {
            return Err(ParseError::Syntax { line: line_no, msg: "mismatched brackets".into() });
        }
        let name = rest[..open].trim();
        if name.is_empty() || name.split_whitespace().count() != 1 {
            return Err(ParseError::Syntax {
                line: line_no,
                msg: "state name must be a single token".into(),
            });
        }
        if name == "1" {
            return Err(ParseError::ReservedName { line: line_no });
        }
        if states.iter().any(|s| s.name == name) {
            return Err(ParseError::DuplicateState { line: line_no, name: name.into() });
        }
        let sections: Vec<String> =
            rest[open + 1..close].split_whitespace().map(|s| s.to_string()).collect();
        if sections.len() != d {
            return Err(ParseError::Syntax {
                line: line_no,
                msg: format!("expected {d} sections, found {}", sections.len()),
            });
        }
        let tail = rest[close + 1..].trim_start();
        let Some(perm_part) = tail.strip_prefix("perm") else {
            return Err(ParseError::Syntax { line: line_no, msg: "missing `perm`".into() });
        };
        let image_syms: Vec<&str> = perm_part.split_whitespace().collect();
        if image_syms.len() != d {
            return Err(ParseError::Syntax {
                line: line_no,
                msg: format!("expected {d} permutation images, found {}", image_syms.len()),
            });
        }
        let mut images = Vec::with_capacity(d);
        for s in &image_syms {
            let Some(i) = syms.iter().position(|t| t == s) else {
                return Err(ParseError::UnknownLetter { line: line_no, symbol: (*s).into() });
            };
            images.push(i);
        }
        let Some(perm) = Perm::from_images(images) else {
            return Err(ParseError::NotAPermutation { line: line_no });
        };
        states.push(RawState { line: line_no, name: name.into(), sections, perm });
    }

    let Some((_, syms)) = symbols else {
        return Err(ParseError::MissingAlphabet);
    };
    let d = syms.len();
    let alphabet = Alphabet::new(d);

    // declared states first, implicit identity last
    let identity_id = states.len();
    let id_of = |name: &str, line: usize| -> Result<StateId, ParseError> {
        if name == "1" {
            return Ok(identity_id);
        }
        states
            .iter()
            .position(|s| s.name == name)
            .ok_or_else(|| ParseError::UnknownState { line, name: name.into() })
    };

    let mut outputs = Vec::with_capacity(states.len() + 1);
    let mut next = Vec::with_capacity(states.len() + 1);
    for st in &states {
        let mut row = Vec::with_capacity(d);
        for target in &st.sections {
            row.push(id_of(target, st.line)?);
        }
        outputs.push(st.perm.clone());
        next.push(row);
    }
    outputs.push(Perm::identity(d));
    next.push(vec![identity_id; d]);

    let names: Vec<(String, StateId)> =
        states.iter().enumerate().map(|(q, s)| (s.name.clone(), q)).collect();
    Ok(ParsedMachine {
        machine: MealyMachine::new(alphabet, outputs, next),
        names,
        symbols: syms.clone(),
    })
}

/// Parse a word over the given symbols.
pub fn parse_word(symbols: &[String], text: &str) -> Result<Word, ParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    let tokens: Vec<&str> =
        trimmed.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
    let lookup = |tok: &str| symbols.iter().position(|s| s == tok);
    let single_char = symbols.iter().all(|s| s.chars().count() == 1);
    let mut word = Vec::new();
    for tok in tokens {
        if let Some(i) = lookup(tok) {
            word.push(i);
        } else if single_char {
            for c in tok.chars() {
                let s = c.to_string();
                let Some(i) = lookup(&s) else {
                    return Err(ParseError::BadWordSymbol { symbol: s });
                };
                word.push(i);
            }
        } else {
            return Err(ParseError::BadWordSymbol { symbol: tok.into() });
        }
    }
    Ok(word)
}

/// Render a word in alphabet symbols.
pub fn format_word(symbols: &[String], word: &[Letter]) -> String {
    let single_char = symbols.iter().all(|s| s.chars().count() == 1);
    let parts: Vec<&str> = word.iter().map(|&x| symbols[x].as_str()).collect();
    if single_char {
        parts.concat()
    } else {
        parts.join(" ")
    }
}

/// Decimal symbols `0..d`.
pub fn decimal_symbols(d: usize) -> Vec<String> {
    (0..d).map(|i| i.to_string()).collect()
}

/// Symbols for the block alphabet `X^k`: each block is written as the
/// concatenation of its base symbols.
pub fn block_symbols(base: &[String], alphabet: Alphabet, k: usize) -> Vec<String> {
    let blocked = alphabet.power(k);
    (0..blocked.size())
        .map(|b| {
            alphabet
                .decode_block(b, k)
                .into_iter()
                .map(|x| base[x].as_str())
                .collect::<Vec<_>>()
                .concat()
        })
        .collect()
}

/// Render named elements (sharing one alphabet) as a definition file.
/// Unnamed sections get fresh `q<i>` names; identity sections render as `1`.
/// Parsing the output yields elements equal to the inputs.
pub fn render_machines(symbols: &[String], named: &[(String, Element)]) -> String {
    assert!(!named.is_empty(), "nothing to render");
    let alphabet = named[0].1.alphabet();
    assert_eq!(symbols.len(), alphabet.size(), "one symbol per letter");

    // section references resolve to the first name given to an element
    let mut name_of: BTreeMap<Element, String> = BTreeMap::new();
    let mut lines: Vec<(String, Element)> = Vec::new();
    for (name, g) in named {
        assert_eq!(g.alphabet(), alphabet, "alphabet mismatch between elements");
        assert_ne!(name, "1", "`1` is reserved for the identity");
        assert!(lines.iter().all(|(n, _)| n != name), "duplicate state name `{name}`");
        name_of.entry(*g).or_insert_with(|| name.clone());
        lines.push((name.clone(), *g));
    }

    let mut queue: Vec<Element> = named.iter().map(|(_, g)| *g).collect();
    let mut fresh = 0usize;
    let mut head = 0;
    while head < queue.len() {
        let g = queue[head];
        head += 1;
        for s in g.decompose().sections {
            if !s.is_trivial() && !name_of.contains_key(&s) {
                let aux = loop {
                    let candidate = format!("q{fresh}");
                    fresh += 1;
                    if named.iter().all(|(n, _)| *n != candidate) {
                        break candidate;
                    }
                };
                name_of.insert(s, aux.clone());
                lines.push((aux, s));
                queue.push(s);
            }
        }
    }

    let mut out = String::new();
    out.push_str("alphabet:");
    for s in symbols {
        out.push(' ');
        out.push_str(s);
    }
    out.push('\n');
    for (name, g) in lines {
        let dec = g.decompose();
        let sections: Vec<String> = dec
            .sections
            .iter()
            .map(|s| if s.is_trivial() { "1".to_string() } else { name_of[s].clone() })
            .collect();
        let images: Vec<String> =
            dec.root.images().iter().map(|&y| symbols[y].clone()).collect();
        out.push_str(&format!(
            "state {name} [{}] perm {}\n",
            sections.join(" "),
            images.join(" ")
        ));
    }
    out
}
