//! The structure file format: one `key = value` field per line, `#` comments,
//! a leading `kind` field. Values are name lists (`a, b`), set lists
//! (`{a}, {a, b}`), order pairs (`a < b`), covers (`a : {b, c}`) and product
//! entries (`a * b = c`). Emission is canonical, so a canonical file
//! round-trips byte for byte.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Space,
    Frame,
    Monoid,
    Preorder,
    Covrel,
    Formal,
    Game,
}

impl Kind {
    const ALL: [(Kind, &'static str); 7] = [
        (Kind::Space, "space"),
        (Kind::Frame, "frame"),
        (Kind::Monoid, "monoid"),
        (Kind::Preorder, "preorder"),
        (Kind::Covrel, "covrel"),
        (Kind::Formal, "formal"),
        (Kind::Game, "game"),
    ];

    pub fn name(self) -> &'static str {
        Kind::ALL.iter().find(|(k, _)| *k == self).map(|(_, n)| *n).unwrap()
    }

    fn parse(s: &str) -> Option<Kind> {
        Kind::ALL.iter().find(|(_, n)| *n == s).map(|(k, _)| *k)
    }

    /// Allowed keys with their value shape and whether the key may repeat
    /// or be omitted.
    fn keys(self) -> &'static [(&'static str, Shape, Arity)] {
        use Arity::*;
        use Shape::*;
        match self {
            Kind::Space => &[
                ("points", Names, One),
                ("opens", Sets, One),
                ("regular", Word, Optional),
            ],
            Kind::Frame | Kind::Preorder => &[("elements", Names, One), ("order", Relation, Many)],
            Kind::Covrel => &[
                ("elements", Names, One),
                ("order", Relation, Many),
                ("cover", Cover, Many),
            ],
            Kind::Monoid => &[("points", Names, One), ("basis", Sets, Many)],
            Kind::Game => &[
                ("points", Names, One),
                ("basis", Sets, Many),
                ("target", Sets, One),
                ("start", Sets, Optional),
            ],
            Kind::Formal => &[
                ("elements", Names, One),
                ("unit", Word, One),
                ("mul", Product, Many),
                ("axiom", Cover, Many),
            ],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    Word,
    Names,
    Sets,
    Relation,
    Cover,
    Product,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Arity {
    One,
    Optional,
    Many,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Word(String),
    Names(Vec<String>),
    Sets(Vec<Vec<String>>),
    Relation(Vec<(String, String)>),
    Cover(String, Vec<String>),
    Product(String, String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Line {
    /// Text after the `#`, kept verbatim.
    Comment(String),
    Field(String, Value),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFile {
    pub kind: Kind,
    pub lines: Vec<Line>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            f.write_str(&self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn is_name_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, ',' | '{' | '}' | ':' | '<' | '*' | '=' | '#')
}

struct Cursor<'a> {
    rest: &'a str,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest.is_empty()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if let Some(r) = self.rest.strip_prefix(c) {
            self.rest = r;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.line, format!("expected '{c}' at '{}'", self.rest))
        }
    }

    fn name(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let end = self.rest.find(|c| !is_name_char(c)).unwrap_or(self.rest.len());
        if end == 0 {
            return err(self.line, format!("expected a name at '{}'", self.rest));
        }
        let (n, r) = self.rest.split_at(end);
        self.rest = r;
        Ok(n.to_string())
    }

    fn set(&mut self) -> Result<Vec<String>, ParseError> {
        self.expect('{')?;
        let mut out = Vec::new();
        if self.eat('}') {
            return Ok(out);
        }
        loop {
            out.push(self.name()?);
            if self.eat('}') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    /// A possibly empty comma-separated list.
    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, ParseError>) -> Result<Vec<T>, ParseError> {
        let mut out = Vec::new();
        if self.at_end() {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.at_end() {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            err(self.line, format!("unexpected trailing text '{}'", self.rest))
        }
    }
}

fn parse_value(shape: Shape, text: &str, line: usize) -> Result<Value, ParseError> {
    let mut c = Cursor { rest: text, line };
    let v = match shape {
        Shape::Word => Value::Word(c.name()?),
        Shape::Names => Value::Names(c.list(|c| c.name())?),
        Shape::Sets => Value::Sets(c.list(|c| c.set())?),
        Shape::Relation => Value::Relation(c.list(|c| {
            let a = c.name()?;
            c.expect('<')?;
            Ok((a, c.name()?))
        })?),
        Shape::Cover => {
            let a = c.name()?;
            c.expect(':')?;
            Value::Cover(a, c.set()?)
        }
        Shape::Product => {
            let a = c.name()?;
            c.expect('*')?;
            let b = c.name()?;
            c.expect('=')?;
            Value::Product(a, b, c.name()?)
        }
    };
    c.finish()?;
    Ok(v)
}

pub fn parse(text: &str) -> Result<StructureFile, ParseError> {
    let mut kind = None;
    let mut lines = Vec::new();
    let mut counts: Vec<(&'static str, usize, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(c) = t.strip_prefix('#') {
            lines.push(Line::Comment(c.to_string()));
            continue;
        }
        let Some((key, value)) = t.split_once('=') else {
            return err(ln, "expected 'key = value'");
        };
        let key = key.trim();
        let Some(k) = kind else {
            if key != "kind" {
                return err(ln, "the first field must be 'kind'");
            }
            let v = value.trim();
            kind = Some(Kind::parse(v).ok_or_else(|| ParseError {
                line: ln,
                message: format!("unknown kind '{v}'"),
            })?);
            continue;
        };
        let Some(&(name, shape, arity)) = Kind::keys(k).iter().find(|(n, _, _)| *n == key) else {
            return err(ln, format!("unknown key '{key}' for kind {k}"));
        };
        match counts.iter_mut().find(|(n, _, _)| *n == name) {
            Some((_, _, first)) if arity != Arity::Many => {
                return err(ln, format!("duplicate key '{name}' (first on line {first})"));
            }
            Some((_, count, _)) => *count += 1,
            None => counts.push((name, 1, ln)),
        }
        lines.push(Line::Field(name.to_string(), parse_value(shape, value, ln)?));
    }
    let Some(kind) = kind else {
        return err(0, "missing 'kind' field");
    };
    for &(name, _, arity) in Kind::keys(kind) {
        if arity == Arity::One && !counts.iter().any(|(n, _, _)| *n == name) {
            return err(0, format!("missing key '{name}' for kind {kind}"));
        }
    }
    Ok(StructureFile { kind, lines })
}

fn set_text(s: &[String]) -> String {
    format!("{{{}}}", s.join(", "))
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Word(w) => f.write_str(w),
            Value::Names(ns) => f.write_str(&ns.join(", ")),
            Value::Sets(ss) => {
                let parts: Vec<String> = ss.iter().map(|s| set_text(s)).collect();
                f.write_str(&parts.join(", "))
            }
            Value::Relation(ps) => {
                let parts: Vec<String> = ps.iter().map(|(a, b)| format!("{a} < {b}")).collect();
                f.write_str(&parts.join(", "))
            }
            Value::Cover(a, s) => write!(f, "{a} : {}", set_text(s)),
            Value::Product(a, b, c) => write!(f, "{a} * {b} = {c}"),
        }
    }
}

/// Canonical text of a structure file.
pub fn emit(file: &StructureFile) -> String {
    let mut out = format!("kind = {}\n", file.kind);
    for l in &file.lines {
        match l {
            Line::Comment(c) => out.push_str(&format!("#{c}\n")),
            Line::Field(k, v) => {
                let v = v.to_string();
                if v.is_empty() {
                    out.push_str(&format!("{k} =\n"));
                } else {
                    out.push_str(&format!("{k} = {v}\n"));
                }
            }
        }
    }
    out
}

impl StructureFile {
    pub fn values<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a Value> + 'a {
        self.lines.iter().filter_map(move |l| match l {
            Line::Field(k, v) if k == key => Some(v),
            _ => None,
        })
    }

    pub fn value(&self, key: &str) -> Option<&Value> {
        self.lines.iter().find_map(|l| match l {
            Line::Field(k, v) if k == key => Some(v),
            _ => None,
        })
    }

    pub fn names(&self, key: &str) -> Vec<String> {
        match self.value(key) {
            Some(Value::Names(ns)) => ns.clone(),
            _ => Vec::new(),
        }
    }

    pub fn word(&self, key: &str) -> Option<&str> {
        match self.value(key) {
            Some(Value::Word(w)) => Some(w),
            _ => None,
        }
    }

    pub fn sets(&self, key: &str) -> Vec<Vec<Vec<String>>> {
        self.values(key)
            .filter_map(|v| match v {
                Value::Sets(s) => Some(s.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn relation(&self) -> Vec<(String, String)> {
        self.values("order")
            .flat_map(|v| match v {
                Value::Relation(ps) => ps.clone(),
                _ => Vec::new(),
            })
            .collect()
    }

    pub fn covers(&self, key: &str) -> Vec<(String, Vec<String>)> {
        self.values(key)
            .filter_map(|v| match v {
                Value::Cover(a, s) => Some((a.clone(), s.clone())),
                _ => None,
            })
            .collect()
    }

    pub fn products(&self) -> Vec<(String, String, String)> {
        self.values("mul")
            .filter_map(|v| match v {
                Value::Product(a, b, c) => Some((a.clone(), b.clone(), c.clone())),
                _ => None,
            })
            .collect()
    }
}

/// Parses a set list given on the command line, such as `{a}, {b, c}`.
pub fn parse_set_list(text: &str) -> Result<Vec<Vec<String>>, ParseError> {
    match parse_value(Shape::Sets, text, 0)? {
        Value::Sets(s) => Ok(s),
        _ => unreachable!(),
    }
}

/// Parses a judgment given on the command line, such as `a : {b, c}`.
pub fn parse_judgment(text: &str) -> Result<(String, Vec<String>), ParseError> {
    match parse_value(Shape::Cover, text, 0)? {
        Value::Cover(a, s) => Ok((a, s)),
        _ => unreachable!(),
    }
}
