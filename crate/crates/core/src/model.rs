//! The `.mdl` text format for algebras and spaces.
//!
//! ```text
//! # comments run to the end of the line
//! algebra {
//!   m: 1
//!   elements: 0 1
//!   leq: (0,1)
//!   N: 0->1 1->0
//!   G: 0->0 1->1
//!   H: 0->0 1->1
//! }
//! ```
//!
//! Spaces use `points`, `g`, `RG` and `RH` in place of `elements`, `N`, `G`
//! and `H`. `leq` lists generating pairs; its closure is computed. An empty
//! list may be written `N/A`. Layout is free: line breaks are whitespace.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::algebra::TmsAlgebra;
use crate::lattice::lattice_from_poset;
use crate::poset::Poset;
use crate::space::{Relation, TmsSpace};
use crate::{Error, Result};

/// Placeholder for an empty list.
const EMPTY: &str = "N/A";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Algebra,
    Space,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::Space => "space",
        }
    }

    fn carrier_key(self) -> &'static str {
        match self {
            Kind::Algebra => "elements",
            Kind::Space => "points",
        }
    }

    fn map_keys(self) -> &'static [&'static str] {
        match self {
            Kind::Algebra => &["N", "G", "H"],
            Kind::Space => &["g"],
        }
    }

    fn relation_keys(self) -> &'static [&'static str] {
        match self {
            Kind::Algebra => &[],
            Kind::Space => &["RG", "RH"],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Algebra(TmsAlgebra),
    Space(TmsSpace),
}

impl Structure {
    pub fn kind(&self) -> Kind {
        match self {
            Structure::Algebra(_) => Kind::Algebra,
            Structure::Space(_) => Kind::Space,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Structure::Algebra(a) => a.len(),
            Structure::Space(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A structure with a name for each carrier index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    names: Vec<String>,
    structure: Structure,
}

pub(crate) fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || "_.'/^*+~!?".contains(c)
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name != EMPTY && name.chars().all(is_name_char)
}

impl Model {
    pub fn new(names: Vec<String>, structure: Structure) -> Result<Self> {
        if names.len() != structure.len() {
            return Err(Error::Shape(format!(
                "{} names for {} elements",
                names.len(),
                structure.len()
            )));
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::Semantic(format!(
                    "`{name}` is not a valid element name"
                )));
            }
            if let Some(j) = seen.insert(name.as_str(), i) {
                return Err(Error::Semantic(format!(
                    "name `{name}` used for elements {j} and {i}"
                )));
            }
        }
        Ok(Model { names, structure })
    }

    /// Names `prefix0, prefix1, ...`.
    pub fn with_prefix(structure: Structure, prefix: &str) -> Self {
        let names = (0..structure.len())
            .map(|i| format!("{prefix}{i}"))
            .collect();
        Model::new(names, structure).expect("generated names are valid and distinct")
    }

    /// Default names: `x0, x1, ...` for algebras and `p0, p1, ...` for spaces.
    pub fn with_default_names(structure: Structure) -> Self {
        let prefix = match structure.kind() {
            Kind::Algebra => "x",
            Kind::Space => "p",
        };
        Self::with_prefix(structure, prefix)
    }

    pub fn algebra(algebra: TmsAlgebra) -> Self {
        Self::with_default_names(Structure::Algebra(algebra))
    }

    pub fn space(space: TmsSpace) -> Self {
        Self::with_default_names(Structure::Space(space))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn into_structure(self) -> Structure {
        self.structure
    }

    pub fn kind(&self) -> Kind {
        self.structure.kind()
    }

    pub fn to_document(&self) -> ModelDocument {
        let name = |i: usize| self.names[i].clone();
        let pair = |(a, b): (usize, usize)| (name(a), name(b));
        let arrows = |table: &[usize]| -> Vec<(String, String)> {
            table
                .iter()
                .enumerate()
                .map(|(x, &y)| (name(x), name(y)))
                .collect()
        };
        let mut sections = Vec::new();
        let (m, poset) = match &self.structure {
            Structure::Algebra(a) => (a.m(), a.lattice().order()),
            Structure::Space(s) => (s.m(), s.poset()),
        };
        let leq = poset.covers().into_iter().map(pair).collect();
        match &self.structure {
            Structure::Algebra(a) => {
                sections.push(("N".to_string(), Entry::Arrows(arrows(a.negation_table()))));
                sections.push(("G".to_string(), Entry::Arrows(arrows(a.future_table()))));
                sections.push(("H".to_string(), Entry::Arrows(arrows(a.past_table()))));
            }
            Structure::Space(s) => {
                sections.push(("g".to_string(), Entry::Arrows(arrows(s.reversal()))));
                sections.push((
                    "RG".to_string(),
                    Entry::Pairs(s.future().pairs().map(pair).collect()),
                ));
                sections.push((
                    "RH".to_string(),
                    Entry::Pairs(s.past().pairs().map(pair).collect()),
                ));
            }
        }
        ModelDocument {
            kind: self.kind(),
            m,
            elements: self.names.clone(),
            leq,
            sections,
        }
    }
}

/// The contents of one `key:` block of a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Arrows(Vec<(String, String)>),
    Pairs(Vec<(String, String)>),
}

/// A model as named data, before any structural checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelDocument {
    pub kind: Kind,
    pub m: u32,
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
    /// Operation or relation blocks in render order.
    pub sections: Vec<(String, Entry)>,
}

impl ModelDocument {
    /// Flat key/value tree: maps become objects, pair lists become arrays of
    /// two-element arrays.
    pub fn to_json(&self) -> Value {
        let pairs =
            |ps: &[(String, String)]| -> Value { ps.iter().map(|(a, b)| json!([a, b])).collect() };
        let mut obj = Map::new();
        obj.insert("kind".into(), json!(self.kind.keyword()));
        obj.insert("m".into(), json!(self.m));
        obj.insert(self.kind.carrier_key().into(), json!(self.elements));
        obj.insert("leq".into(), pairs(&self.leq));
        for (key, entry) in &self.sections {
            let value = match entry {
                Entry::Arrows(arrows) => {
                    let map: BTreeMap<&str, &str> = arrows
                        .iter()
                        .map(|(a, b)| (a.as_str(), b.as_str()))
                        .collect();
                    json!(map)
                }
                Entry::Pairs(ps) => pairs(ps),
            };
            obj.insert(key.clone(), value);
        }
        Value::Object(obj)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let list = |items: Vec<String>| {
            if items.is_empty() {
                EMPTY.to_string()
            } else {
                items.join(" ")
            }
        };
        let pairs =
            |ps: &[(String, String)]| list(ps.iter().map(|(a, b)| format!("({a},{b})")).collect());
        writeln!(out, "{} {{", self.kind.keyword()).unwrap();
        writeln!(out, "  m: {}", self.m).unwrap();
        writeln!(
            out,
            "  {}: {}",
            self.kind.carrier_key(),
            self.elements.join(" ")
        )
        .unwrap();
        writeln!(out, "  leq: {}", pairs(&self.leq)).unwrap();
        for (key, entry) in &self.sections {
            let body = match entry {
                Entry::Arrows(arrows) => {
                    list(arrows.iter().map(|(a, b)| format!("{a}->{b}")).collect())
                }
                Entry::Pairs(ps) => pairs(ps),
            };
            writeln!(out, "  {key}: {body}").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Renders a model in the `.mdl` format.
pub fn render_model(model: &Model) -> String {
    model.to_document().render()
}

// ---------------------------------------------------------------- lexing

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Colon,
    Arrow,
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let single = match c {
                '#' => break,
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                '{' => Some(Tok::LBrace),
                '}' => Some(Tok::RBrace),
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                ',' => Some(Tok::Comma),
                ':' => Some(Tok::Colon),
                _ => None,
            };
            if let Some(tok) = single {
                out.push(Token {
                    tok,
                    line: line_no,
                    column,
                });
                i += 1;
            } else if c == '-' {
                if chars.get(i + 1) == Some(&'>') {
                    out.push(Token {
                        tok: Tok::Arrow,
                        line: line_no,
                        column,
                    });
                    i += 2;
                } else {
                    return Err(parse_error(line_no, column, "expected `->`"));
                }
            } else if is_name_char(c) {
                let start = i;
                while i < chars.len() && is_name_char(chars[i]) {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line: line_no,
                    column,
                });
            } else {
                return Err(parse_error(
                    line_no,
                    column,
                    format!("unexpected character `{c}`"),
                ));
            }
        }
    }
    let (line, column) = match text.lines().enumerate().last() {
        Some((i, l)) => (i + 1, l.chars().count() + 1),
        None => (1, 1),
    };
    out.push(Token {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

// ---------------------------------------------------------------- parsing

#[derive(Clone, Debug)]
enum Item {
    Name(String),
    Arrow(String, String),
    Pair(String, String),
}

#[derive(Clone, Debug)]
struct Section {
    key: String,
    line: usize,
    column: usize,
    items: Vec<Item>,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Token> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            Err(parse_error(
                t.line,
                t.column,
                format!("expected {what}, found {}", describe(&t.tok)),
            ))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) => Ok(s),
            other => Err(parse_error(
                t.line,
                t.column,
                format!("expected {what}, found {}", describe(&other)),
            )),
        }
    }

    fn document(&mut self) -> Result<(Token, String, Vec<Section>)> {
        let head = self.peek().clone();
        let kind = self.ident("`algebra` or `space`")?;
        self.expect(Tok::LBrace, "`{`")?;
        let mut sections = Vec::new();
        loop {
            match (&self.peek().tok, self.peek_at(1)) {
                (Tok::RBrace, _) => {
                    self.next();
                    break;
                }
                (Tok::Ident(_), Tok::Colon) => sections.push(self.section()?),
                _ => {
                    let t = self.peek().clone();
                    return Err(parse_error(
                        t.line,
                        t.column,
                        format!("expected `key:` or `}}`, found {}", describe(&t.tok)),
                    ));
                }
            }
        }
        let t = self.peek().clone();
        if t.tok != Tok::Eof {
            return Err(parse_error(t.line, t.column, "unexpected input after `}`"));
        }
        Ok((head, kind, sections))
    }

    fn section(&mut self) -> Result<Section> {
        let head = self.peek().clone();
        let key = self.ident("key")?;
        self.expect(Tok::Colon, "`:`")?;
        let mut items = Vec::new();
        loop {
            match (&self.peek().tok, self.peek_at(1)) {
                (Tok::Ident(_), Tok::Colon) | (Tok::RBrace, _) | (Tok::Eof, _) => break,
                (Tok::Ident(_), Tok::Arrow) => {
                    let a = self.ident("element")?;
                    self.next();
                    let b = self.ident("element after `->`")?;
                    items.push(Item::Arrow(a, b));
                }
                (Tok::Ident(_), _) => items.push(Item::Name(self.ident("element")?)),
                (Tok::LParen, _) => {
                    self.next();
                    let a = self.ident("element")?;
                    self.expect(Tok::Comma, "`,`")?;
                    let b = self.ident("element")?;
                    self.expect(Tok::RParen, "`)`")?;
                    items.push(Item::Pair(a, b));
                }
                (other, _) => {
                    let t = self.peek();
                    return Err(parse_error(
                        t.line,
                        t.column,
                        format!("unexpected {}", describe(other)),
                    ));
                }
            }
        }
        Ok(Section {
            key,
            line: head.line,
            column: head.column,
            items,
        })
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::LBrace => "`{`".into(),
        Tok::RBrace => "`}`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Colon => "`:`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::Eof => "end of input".into(),
    }
}

fn semantic(message: impl Into<String>) -> Error {
    Error::Semantic(message.into())
}

/// Items of a section, with a lone `N/A` read as the empty list.
fn items_of(section: &Section) -> &[Item] {
    match section.items.as_slice() {
        [Item::Name(n)] if n == EMPTY => &[],
        items => items,
    }
}

/// Parses the syntax of a document and checks it against the grammar of
/// its kind, without building the structure.
pub fn parse_document(text: &str) -> Result<ModelDocument> {
    let mut parser = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let (head, kind_word, sections) = parser.document()?;
    let kind = match kind_word.as_str() {
        "algebra" => Kind::Algebra,
        "space" => Kind::Space,
        other => {
            return Err(parse_error(
                head.line,
                head.column,
                format!("expected `algebra` or `space`, found `{other}`"),
            ))
        }
    };

    let mut by_key: HashMap<&str, &Section> = HashMap::new();
    for s in &sections {
        let known = s.key == "m"
            || s.key == "leq"
            || s.key == kind.carrier_key()
            || kind.map_keys().contains(&s.key.as_str())
            || kind.relation_keys().contains(&s.key.as_str());
        if !known {
            return Err(semantic(format!(
                "line {}: key `{}` does not belong in a {} model",
                s.line,
                s.key,
                kind.keyword()
            )));
        }
        if by_key.insert(s.key.as_str(), s).is_some() {
            return Err(semantic(format!(
                "line {}: key `{}` given twice",
                s.line, s.key
            )));
        }
    }
    let require = |key: &str| {
        by_key
            .get(key)
            .copied()
            .ok_or_else(|| semantic(format!("missing `{key}`")))
    };

    let m_section = require("m")?;
    let m = match m_section.items.as_slice() {
        [Item::Name(v)] => v.parse::<u32>().ok().filter(|&m| m >= 1),
        _ => None,
    }
    .ok_or_else(|| {
        parse_error(
            m_section.line,
            m_section.column,
            "`m` must be a positive integer",
        )
    })?;

    let carrier = require(kind.carrier_key())?;
    let mut elements = Vec::new();
    for item in &carrier.items {
        match item {
            Item::Name(n) => elements.push(n.clone()),
            _ => {
                return Err(parse_error(
                    carrier.line,
                    carrier.column,
                    format!("`{}` lists plain names", kind.carrier_key()),
                ))
            }
        }
    }

    let pairs_of = |section: &Section| -> Result<Vec<(String, String)>> {
        items_of(section)
            .iter()
            .map(|item| match item {
                Item::Pair(a, b) => Ok((a.clone(), b.clone())),
                _ => Err(parse_error(
                    section.line,
                    section.column,
                    format!("`{}` lists pairs `(a,b)`", section.key),
                )),
            })
            .collect()
    };
    let arrows_of = |section: &Section| -> Result<Vec<(String, String)>> {
        items_of(section)
            .iter()
            .map(|item| match item {
                Item::Arrow(a, b) => Ok((a.clone(), b.clone())),
                _ => Err(parse_error(
                    section.line,
                    section.column,
                    format!("`{}` lists maps `a->b`", section.key),
                )),
            })
            .collect()
    };

    let leq = match by_key.get("leq") {
        Some(s) => pairs_of(s)?,
        None => Vec::new(),
    };
    let mut out_sections = Vec::new();
    for key in kind.map_keys() {
        out_sections.push((key.to_string(), Entry::Arrows(arrows_of(require(key)?)?)));
    }
    for key in kind.relation_keys() {
        out_sections.push((key.to_string(), Entry::Pairs(pairs_of(require(key)?)?)));
    }
    Ok(ModelDocument {
        kind,
        m,
        elements,
        leq,
        sections: out_sections,
    })
}

impl ModelDocument {
    /// Resolves names and builds the structure.
    pub fn build(&self) -> Result<Model> {
        let n = self.elements.len();
        if n == 0 {
            return Err(semantic(format!("`{}` is empty", self.kind.carrier_key())));
        }
        let mut index: HashMap<&str, usize> = HashMap::new();
        for (i, name) in self.elements.iter().enumerate() {
            if name == EMPTY {
                return Err(semantic(format!("`{EMPTY}` cannot name an element")));
            }
            if index.insert(name, i).is_some() {
                return Err(semantic(format!("element `{name}` declared twice")));
            }
        }
        let lookup = |key: &str, name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| semantic(format!("{key}: unknown element `{name}`")))
        };
        let resolve_pairs = |key: &str, ps: &[(String, String)]| -> Result<Vec<(usize, usize)>> {
            ps.iter()
                .map(|(a, b)| Ok((lookup(key, a)?, lookup(key, b)?)))
                .collect()
        };
        let resolve_map = |key: &str, arrows: &[(String, String)]| -> Result<Vec<usize>> {
            let mut table = vec![None; n];
            for (a, b) in arrows {
                let (x, y) = (lookup(key, a)?, lookup(key, b)?);
                if let Some(prev) = table[x] {
                    if prev != y {
                        return Err(semantic(format!("{key} maps `{a}` twice")));
                    }
                }
                table[x] = Some(y);
            }
            table
                .into_iter()
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| semantic(format!("{key} not total")))
        };
        let name = |i: usize| self.elements[i].as_str();

        let leq = resolve_pairs("leq", &self.leq)?;
        let poset = build_poset_named(n, &leq, &name)?;
        let mut maps: HashMap<&str, Vec<usize>> = HashMap::new();
        let mut relations: HashMap<&str, Relation> = HashMap::new();
        for (key, entry) in &self.sections {
            match entry {
                Entry::Arrows(a) => {
                    maps.insert(key.as_str(), resolve_map(key, a)?);
                }
                Entry::Pairs(p) => {
                    relations.insert(
                        key.as_str(),
                        Relation::from_pairs(n, &resolve_pairs(key, p)?)?,
                    );
                }
            }
        }
        let mut take_map = |key: &str| {
            maps.remove(key)
                .ok_or_else(|| semantic(format!("missing `{key}`")))
        };
        let structure = match self.kind {
            Kind::Algebra => {
                let lattice = lattice_from_poset(&poset).map_err(|e| lattice_error(e, &name))?;
                let (neg, g, h) = (take_map("N")?, take_map("G")?, take_map("H")?);
                Structure::Algebra(TmsAlgebra::new(lattice, neg, g, h, self.m)?)
            }
            Kind::Space => {
                let g = take_map("g")?;
                let mut take_rel = |key: &str| {
                    relations
                        .remove(key)
                        .ok_or_else(|| semantic(format!("missing `{key}`")))
                };
                let (rg, rh) = (take_rel("RG")?, take_rel("RH")?);
                Structure::Space(TmsSpace::new(poset, g, rg, rh, self.m)?)
            }
        };
        Model::new(self.elements.clone(), structure)
    }
}

fn build_poset_named<'a>(
    n: usize,
    pairs: &[(usize, usize)],
    name: &impl Fn(usize) -> &'a str,
) -> Result<Poset> {
    Poset::generated(n, pairs).map_err(|e| match e {
        Error::Cycle(a, b) => semantic(format!(
            "leq: `{}` and `{}` lie on a cycle",
            name(a),
            name(b)
        )),
        other => other,
    })
}

fn lattice_error<'a>(e: Error, name: &impl Fn(usize) -> &'a str) -> Error {
    match e {
        Error::NotBounded => semantic("leq: no least or greatest element, not a bounded lattice"),
        Error::NotALattice(a, b, what) => semantic(format!(
            "leq: `{}` and `{}` have no {what}",
            name(a),
            name(b)
        )),
        Error::NotDistributive(x, y, z) => semantic(format!(
            "leq: not distributive at x={}, y={}, z={}",
            name(x),
            name(y),
            name(z)
        )),
        other => other,
    }
}

/// Parses a `.mdl` document into a named algebra or space.
pub fn parse_model(text: &str) -> Result<Model> {
    parse_document(text)?.build()
}
