//! Line-oriented parser for `.lat` files.

use std::fmt;

use crate::lattice::{validate, Lattice, LatticeError, Presentation, StructuralError, ValidationReport};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SourceSpan {
    pub file: Option<String>,
    /// 1-based line.
    pub line: usize,
    /// 1-based columns, end exclusive.
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub span: SourceSpan,
    pub severity: Severity,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        if let Some(file) = &self.span.file {
            write!(f, "{file}:")?;
        }
        write!(f, "{}:{}: {sev}: {}", self.span.line, self.span.start, self.message)
    }
}

#[derive(Clone, Debug)]
pub struct ParseResult {
    /// Present when there were no errors.
    pub presentation: Option<Presentation>,
    pub diagnostics: Vec<Diagnostic>,
    pub validation: Option<ValidationReport>,
    /// Present when the presentation also validates.
    pub lattice: Option<Lattice>,
}

impl ParseResult {
    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.severity == Severity::Error)
    }

    pub fn has_errors(&self) -> bool {
        self.errors().next().is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Colon,
    Arrow,
    Equals,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

struct Parser<'a> {
    file: Option<&'a str>,
    diagnostics: Vec<Diagnostic>,
    p: Presentation,
    seen_format: bool,
    last_line: usize,
}

impl<'a> Parser<'a> {
    fn span(&self, line: usize, start: usize, end: usize) -> SourceSpan {
        SourceSpan {
            file: self.file.map(str::to_string),
            line,
            start,
            end,
        }
    }

    fn error(&mut self, line: usize, start: usize, end: usize, message: impl Into<String>) {
        let span = self.span(line, start, end);
        self.diagnostics.push(Diagnostic {
            span,
            severity: Severity::Error,
            message: message.into(),
        });
    }

    fn lex(&mut self, line: usize, text: &str) -> Option<Vec<Token>> {
        let chars: Vec<char> = text.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if is_ident_char(c) {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    start: start + 1,
                    end: i + 1,
                });
            } else if c == ':' {
                out.push(Token { tok: Tok::Colon, start: col, end: col + 1 });
                i += 1;
            } else if c == '=' {
                out.push(Token { tok: Tok::Equals, start: col, end: col + 1 });
                i += 1;
            } else if c == '-' && chars.get(i + 1) == Some(&'>') {
                out.push(Token { tok: Tok::Arrow, start: col, end: col + 2 });
                i += 2;
            } else {
                self.error(line, col, col + 1, format!("unexpected character `{c}`"));
                return None;
            }
        }
        Some(out)
    }

    fn idents(&mut self, line: usize, toks: &[Token]) -> Option<Vec<(String, usize, usize)>> {
        let mut out = Vec::new();
        for t in toks {
            match &t.tok {
                Tok::Ident(s) => out.push((s.clone(), t.start, t.end)),
                _ => {
                    self.error(line, t.start, t.end, "expected an identifier");
                    return None;
                }
            }
        }
        Some(out)
    }

    /// Resolves a path, reporting the first unknown or mismatched arrow.
    fn path(&mut self, line: usize, toks: &[Token], what: &str) -> Option<Vec<String>> {
        let ids = self.idents(line, toks)?;
        if ids.is_empty() {
            let col = toks.first().map_or(1, |t| t.start);
            self.error(line, col, col + 1, format!("empty {what}"));
            return None;
        }
        for (name, s, e) in &ids {
            if self.p.arrow(name).is_err() {
                self.error(line, *s, *e, format!("{what} refers to unknown arrow `{name}`"));
                return None;
            }
        }
        let names: Vec<String> = ids.iter().map(|(n, _, _)| n.clone()).collect();
        if let Err(err) = self.p.path(&names) {
            let (s, e) = (ids[0].1, ids[ids.len() - 1].2);
            self.error(line, s, e, format!("{what}: {err}"));
            return None;
        }
        Some(names)
    }

    fn split_at_equals<'t>(&mut self, line: usize, toks: &'t [Token], kw_end: usize) -> Option<(&'t [Token], &'t [Token])> {
        match toks.iter().position(|t| t.tok == Tok::Equals) {
            Some(k) => Some((&toks[..k], &toks[k + 1..])),
            None => {
                self.error(line, kw_end, kw_end + 1, "expected `<path> = <path>`");
                None
            }
        }
    }

    fn statement(&mut self, line: usize, toks: &[Token]) {
        let Tok::Ident(kw) = &toks[0].tok else {
            self.error(line, toks[0].start, toks[0].end, "expected a keyword");
            return;
        };
        let (kw_start, kw_end) = (toks[0].start, toks[0].end);
        let rest = &toks[1..];
        if !self.seen_format && kw != "format" {
            self.error(line, kw_start, kw_end, "missing `format 1` header");
            self.seen_format = true;
        }
        match kw.as_str() {
            "format" => {
                let ok = matches!(rest, [Token { tok: Tok::Ident(v), .. }] if v == "1");
                if !ok {
                    self.error(line, kw_start, kw_end, "unsupported format; expected `format 1`");
                }
                if self.seen_format {
                    self.error(line, kw_start, kw_end, "`format` must be the first statement");
                }
                self.seen_format = true;
            }
            "node" => {
                let Some(ids) = self.idents(line, rest) else { return };
                if ids.is_empty() {
                    self.error(line, kw_start, kw_end, "`node` needs at least one identifier");
                }
                for (name, s, e) in ids {
                    if self.p.add_node(&name).is_err() {
                        self.error(line, s, e, format!("duplicate node `{name}`"));
                    }
                }
            }
            "init" | "fin" => {
                let Some(ids) = self.idents(line, rest) else { return };
                let [(name, s, e)] = ids.as_slice() else {
                    self.error(line, kw_start, kw_end, format!("`{kw}` takes exactly one node"));
                    return;
                };
                let already = if kw == "init" { self.p.init() } else { self.p.fin() };
                if already.is_some() {
                    self.error(line, kw_start, kw_end, format!("`{kw}` declared twice"));
                    return;
                }
                let res = if kw == "init" { self.p.set_init(name) } else { self.p.set_fin(name) };
                if res.is_err() {
                    self.error(line, *s, *e, format!("unknown node `{name}`"));
                }
            }
            "arrow" => match rest {
                [Token { tok: Tok::Ident(id), start: is, end: ie }, Token { tok: Tok::Colon, .. }, Token { tok: Tok::Ident(src), start: ss, end: se }, Token { tok: Tok::Arrow, .. }, Token { tok: Tok::Ident(dst), start: ds, end: de }] =>
                {
                    let mut ok = true;
                    for (n, s, e) in [(src, ss, se), (dst, ds, de)] {
                        if self.p.node(n).is_err() {
                            self.error(line, *s, *e, format!("unknown node `{n}`"));
                            ok = false;
                        }
                    }
                    if ok {
                        if let Err(StructuralError::DuplicateArrow(_)) = self.p.add_arrow(id, src, dst) {
                            self.error(line, *is, *ie, format!("duplicate arrow `{id}`"));
                        }
                    }
                }
                _ => self.error(line, kw_start, kw_end, "expected `arrow <id>: <src> -> <dst>`"),
            },
            "rel" => {
                let Some((l, r)) = self.split_at_equals(line, rest, kw_end) else { return };
                let (Some(lhs), Some(rhs)) = (self.path(line, l, "relation side"), self.path(line, r, "relation side")) else {
                    return;
                };
                if let Err(err) = self.p.add_relation(&lhs, &rhs, false) {
                    let end = rest.last().map_or(kw_end, |t| t.end);
                    self.error(line, kw_start, end, err.to_string());
                }
            }
            "null" => {
                let Some(path) = self.path(line, rest, "null mark") else { return };
                self.p.add_null(&path).expect("path already resolved");
            }
            "strict" => {
                if let [Token { tok: Tok::Ident(n), start, end }] = rest {
                    if let Ok(idx) = n.parse::<usize>() {
                        if self.p.set_strict(idx, true).is_err() {
                            let count = self.p.relations().len();
                            self.error(line, *start, *end, format!("strict mark refers to relation {idx}, but only {count} are declared"));
                        }
                        return;
                    }
                }
                let Some((l, r)) = self.split_at_equals(line, rest, kw_end) else { return };
                let (Some(lhs), Some(rhs)) = (self.path(line, l, "strict mark"), self.path(line, r, "strict mark")) else {
                    return;
                };
                if let Err(err) = self.p.set_strict_by_sides(&lhs, &rhs) {
                    let end = rest.last().map_or(kw_end, |t| t.end);
                    self.error(line, kw_start, end, err.to_string());
                }
            }
            other => self.error(line, kw_start, kw_end, format!("unknown keyword `{other}`")),
        }
    }
}

/// Parses `.lat` text. Never panics; every problem becomes a diagnostic.
pub fn parse_lattice(text: &str) -> ParseResult {
    parse_lattice_named(text, None)
}

pub fn parse_lattice_named(text: &str, file: Option<&str>) -> ParseResult {
    let mut parser = Parser {
        file,
        diagnostics: Vec::new(),
        p: Presentation::new(),
        seen_format: false,
        last_line: 1,
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        parser.last_line = line;
        let content = raw.split('#').next().unwrap_or("");
        let Some(toks) = parser.lex(line, content) else { continue };
        if toks.is_empty() {
            continue;
        }
        parser.statement(line, &toks);
    }
    if !parser.seen_format {
        parser.error(1, 1, 1, "missing `format 1` header");
    }
    let last = parser.last_line;
    if parser.p.init().is_none() {
        parser.error(last, 1, 1, "no `init` node declared");
    }
    if parser.p.fin().is_none() {
        parser.error(last, 1, 1, "no `fin` node declared");
    }
    let Parser { diagnostics, p, .. } = parser;
    if diagnostics.iter().any(|d| d.severity == Severity::Error) {
        return ParseResult {
            presentation: None,
            diagnostics,
            validation: None,
            lattice: None,
        };
    }
    let validation = match validate(&p) {
        Ok(r) => Some(r),
        Err(LatticeError::TooLarge(_)) | Err(_) => None,
    };
    let lattice = match &validation {
        Some(r) if r.passed() => Lattice::new(p.clone()).ok(),
        _ => None,
    };
    ParseResult {
        presentation: Some(p),
        diagnostics,
        validation,
        lattice,
    }
}
