//! Text format for graphs, rules, diagrams and algebra expressions.
//!
//! ```text
//! graph E { v1, v2, e1: v1->v2 }
//! rule A { in {v1} out {} map {} }
//! rule B { in {} out {w1} map {} }
//! diagram D = A after B along { w1->v1 }
//! let X = A *[dpo] B - D
//! print [A, B]
//! ```

use std::fmt;

/// Error codes, one per failure family.
pub mod code {
    pub const UNKNOWN_NAME: &str = "E001";
    pub const MALFORMED_EDGE: &str = "E002";
    pub const NON_INJECTIVE: &str = "E003";
    pub const SYNTAX: &str = "E004";
    pub const NOT_A_MORPHISM: &str = "E005";
    pub const INVALID_MATCH: &str = "E006";
    pub const DUPLICATE: &str = "E007";
    pub const TYPE: &str = "E008";
    pub const NOT_IRREDUCIBLE: &str = "E009";
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: &'static str,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl Diagnostic {
    pub fn new(code: &'static str, pos: Pos, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            code,
            line: pos.line,
            col: pos.col,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}] at {}:{}: {}", self.code, self.line, self.col, self.message)
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub text: String,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphItem {
    Vertex(Ident),
    Edge { name: Ident, src: Ident, tgt: Ident },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphRef {
    Named(Ident),
    Inline(Vec<GraphItem>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pair {
    pub from: Ident,
    pub to: Ident,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramExpr {
    Name(Ident),
    Paren(Box<DiagramExpr>),
    /// `left after right along { … }`: `right` happens first.
    After {
        left: Box<DiagramExpr>,
        right: Box<DiagramExpr>,
        along: Vec<Pair>,
        pos: Pos,
    },
    Superpose {
        op: String,
        left: Box<DiagramExpr>,
        right: Box<DiagramExpr>,
        pos: Pos,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Number {
        text: String,
        pos: Pos,
    },
    Name(Ident),
    Paren(Box<Expr>),
    Neg(Box<Expr>, Pos),
    Call {
        func: Ident,
        ty: Option<Ident>,
        args: Vec<Expr>,
    },
    /// `+`, `-`, `*`, `⊛`, `**`, `⊎`, `&`, with an optional rewriting type.
    Binary {
        op: String,
        ty: Option<Ident>,
        left: Box<Expr>,
        right: Box<Expr>,
        pos: Pos,
    },
    Commutator {
        left: Box<Expr>,
        right: Box<Expr>,
        ty: Option<Ident>,
        pos: Pos,
    },
    Dagger {
        inner: Box<Expr>,
        spelling: String,
    },
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Number { pos, .. } | Expr::Neg(_, pos) | Expr::Binary { pos, .. } | Expr::Commutator { pos, .. } => *pos,
            Expr::Name(i) => i.pos,
            Expr::Call { func, .. } => func.pos,
            Expr::Paren(e) | Expr::Dagger { inner: e, .. } => e.pos(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Graph {
        name: Ident,
        body: Vec<GraphItem>,
    },
    Rule {
        name: Ident,
        input: GraphRef,
        output: GraphRef,
        map: Vec<Pair>,
    },
    Diagram {
        name: Ident,
        expr: DiagramExpr,
    },
    Let {
        name: Ident,
        expr: Expr,
    },
    Print(Expr),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub items: Vec<Item>,
}

// ---- lexer -----------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Sym(&'static str),
    Newline,
    Eof,
}

const SYMBOLS: [&str; 22] = [
    "->", "**", "^dag", "{", "}", "(", ")", "[", "]", ",", ";", ":", "=", "+", "-", "*", "⊛", "⊎", "&", "†", "'", "/",
];

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '.' || c == '∅'
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, Diagnostic> {
    let mut out = Vec::new();
    for (ln, line) in src.lines().enumerate() {
        let chars: Vec<(usize, char)> = line.char_indices().collect();
        let mut i = 0;
        while i < chars.len() {
            let (byte, c) = chars[i];
            let pos = Pos { line: ln + 1, col: i + 1 };
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < chars.len() && chars[i].1 == '/' && chars[i + 1].1.is_ascii_digit() {
                    i += 1;
                    while i < chars.len() && chars[i].1.is_ascii_digit() {
                        i += 1;
                    }
                }
                out.push((Tok::Number(chars[start..i].iter().map(|x| x.1).collect()), pos));
                continue;
            }
            if is_ident_char(c) {
                let start = i;
                while i < chars.len() && is_ident_char(chars[i].1) {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().map(|x| x.1).collect()), pos));
                continue;
            }
            let rest = &line[byte..];
            match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                Some(s) => {
                    out.push((Tok::Sym(s), pos));
                    i += s.chars().count();
                }
                None => return Err(Diagnostic::new(code::SYNTAX, pos, format!("unexpected character `{c}`"))),
            }
        }
        out.push((
            Tok::Newline,
            Pos {
                line: ln + 1,
                col: chars.len() + 1,
            },
        ));
    }
    let end = out.last().map_or(Pos { line: 1, col: 1 }, |t| t.1);
    out.push((Tok::Eof, end));
    Ok(out)
}

// ---- parser ----------------------------------------------------------------

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    /// Inside braces or brackets newlines are plain whitespace.
    depth: usize,
}

type PResult<T> = Result<T, Diagnostic>;

const KEYWORDS: [&str; 9] = ["graph", "rule", "diagram", "let", "print", "in", "out", "map", "after"];

impl Parser {
    fn skip_newlines_if_nested(&mut self) {
        while self.depth > 0 && self.toks[self.at].0 == Tok::Newline {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> &Tok {
        self.skip_newlines_if_nested();
        &self.toks[self.at].0
    }

    fn peek_at(&mut self, k: usize) -> &Tok {
        self.skip_newlines_if_nested();
        let mut j = self.at;
        for _ in 0..k {
            j += 1;
            while self.depth > 0 && j < self.toks.len() && self.toks[j].0 == Tok::Newline {
                j += 1;
            }
        }
        &self.toks[j.min(self.toks.len() - 1)].0
    }

    fn pos(&mut self) -> Pos {
        self.skip_newlines_if_nested();
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        self.skip_newlines_if_nested();
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn is_sym(&mut self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> PResult<Pos> {
        let pos = self.pos();
        if self.eat_sym(s) {
            Ok(pos)
        } else {
            Err(self.unexpected(&format!("`{s}`")))
        }
    }

    fn unexpected(&mut self, wanted: &str) -> Diagnostic {
        let pos = self.pos();
        let found = match self.peek().clone() {
            Tok::Ident(s) | Tok::Number(s) => format!("`{s}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Newline => "end of line".to_string(),
            Tok::Eof => "end of input".to_string(),
        };
        Diagnostic::new(code::SYNTAX, pos, format!("expected {wanted}, found {found}"))
    }

    fn is_word(&mut self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == w)
    }

    fn expect_word(&mut self, w: &str) -> PResult<()> {
        if self.is_word(w) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{w}`")))
        }
    }

    fn ident(&mut self) -> PResult<Ident> {
        match self.peek().clone() {
            Tok::Ident(text) => {
                let pos = self.bump().1;
                Ok(Ident { text, pos })
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    fn open(&mut self, s: &str) -> PResult<Pos> {
        let p = self.expect_sym(s)?;
        self.depth += 1;
        Ok(p)
    }

    fn close(&mut self, s: &str) -> PResult<()> {
        self.expect_sym(s)?;
        self.depth -= 1;
        Ok(())
    }

    fn document(&mut self) -> PResult<Document> {
        let mut items = Vec::new();
        loop {
            while self.toks[self.at].0 == Tok::Newline {
                self.at += 1;
            }
            if self.toks[self.at].0 == Tok::Eof {
                return Ok(Document { items });
            }
            items.push(self.item()?);
            match self.toks[self.at].0 {
                Tok::Newline | Tok::Eof => {}
                Tok::Sym(";") => self.at += 1,
                _ => return Err(self.unexpected("end of line")),
            }
        }
    }

    fn item(&mut self) -> PResult<Item> {
        if self.is_word("graph") {
            self.bump();
            let name = self.ident()?;
            let body = self.graph_body()?;
            Ok(Item::Graph { name, body })
        } else if self.is_word("rule") {
            self.bump();
            let name = self.ident()?;
            self.open("{")?;
            self.expect_word("in")?;
            let input = self.graph_ref()?;
            self.expect_word("out")?;
            let output = self.graph_ref()?;
            self.expect_word("map")?;
            let map = self.pairs()?;
            self.close("}")?;
            Ok(Item::Rule { name, input, output, map })
        } else if self.is_word("diagram") {
            self.bump();
            let name = self.ident()?;
            self.expect_sym("=")?;
            let expr = self.diagram_expr()?;
            Ok(Item::Diagram { name, expr })
        } else if self.is_word("let") {
            self.bump();
            let name = self.ident()?;
            self.expect_sym("=")?;
            let expr = self.expr()?;
            Ok(Item::Let { name, expr })
        } else if self.is_word("print") {
            self.bump();
            Ok(Item::Print(self.expr()?))
        } else {
            Err(self.unexpected("`graph`, `rule`, `diagram`, `let` or `print`"))
        }
    }

    fn graph_ref(&mut self) -> PResult<GraphRef> {
        if self.is_sym("{") {
            Ok(GraphRef::Inline(self.graph_body()?))
        } else {
            Ok(GraphRef::Named(self.ident()?))
        }
    }

    fn graph_body(&mut self) -> PResult<Vec<GraphItem>> {
        self.open("{")?;
        let mut items = Vec::new();
        while !self.is_sym("}") {
            let name = self.ident()?;
            if self.eat_sym(":") {
                let src = self.edge_end(&name, "source")?;
                if !self.eat_sym("->") {
                    let pos = self.pos();
                    return Err(Diagnostic::new(
                        code::MALFORMED_EDGE,
                        pos,
                        format!("edge `{}` needs the form `name: source->target`", name.text),
                    ));
                }
                let tgt = self.edge_end(&name, "target")?;
                items.push(GraphItem::Edge { name, src, tgt });
            } else if self.is_sym("->") {
                let pos = self.pos();
                return Err(Diagnostic::new(
                    code::MALFORMED_EDGE,
                    pos,
                    format!("edge from `{}` has no name; write `e: {}->…`", name.text, name.text),
                ));
            } else {
                items.push(GraphItem::Vertex(name));
            }
            if !self.eat_sym(",") && !self.eat_sym(";") && !self.is_sym("}") && !matches!(self.peek(), Tok::Ident(_)) {
                return Err(self.unexpected("`,` or `}`"));
            }
        }
        self.close("}")?;
        Ok(items)
    }

    fn edge_end(&mut self, edge: &Ident, which: &str) -> PResult<Ident> {
        match self.peek().clone() {
            Tok::Ident(_) => self.ident(),
            _ => {
                let pos = self.pos();
                Err(Diagnostic::new(
                    code::MALFORMED_EDGE,
                    pos,
                    format!("edge `{}` is missing its {which} vertex", edge.text),
                ))
            }
        }
    }

    fn pairs(&mut self) -> PResult<Vec<Pair>> {
        self.open("{")?;
        let mut out = Vec::new();
        while !self.is_sym("}") {
            let from = self.ident()?;
            self.expect_sym("->")?;
            let to = self.ident()?;
            out.push(Pair { from, to });
            if !self.eat_sym(",") && !self.eat_sym(";") && !self.is_sym("}") && !matches!(self.peek(), Tok::Ident(_)) {
                return Err(self.unexpected("`,` or `}`"));
            }
        }
        self.close("}")?;
        Ok(out)
    }

    fn diagram_expr(&mut self) -> PResult<DiagramExpr> {
        let mut left = self.diagram_after()?;
        loop {
            let pos = self.pos();
            let op = if self.eat_sym("⊎") {
                "⊎"
            } else if self.eat_sym("&") {
                "&"
            } else {
                return Ok(left);
            };
            let right = self.diagram_after()?;
            left = DiagramExpr::Superpose {
                op: op.to_string(),
                left: Box::new(left),
                right: Box::new(right),
                pos,
            };
        }
    }

    fn diagram_after(&mut self) -> PResult<DiagramExpr> {
        let mut left = self.diagram_atom()?;
        while self.is_word("after") {
            let pos = self.pos();
            self.bump();
            let right = self.diagram_atom()?;
            self.expect_word("along")?;
            let along = self.pairs()?;
            left = DiagramExpr::After {
                left: Box::new(left),
                right: Box::new(right),
                along,
                pos,
            };
        }
        Ok(left)
    }

    fn diagram_atom(&mut self) -> PResult<DiagramExpr> {
        if self.is_sym("(") {
            self.open("(")?;
            let inner = self.diagram_expr()?;
            self.close(")")?;
            Ok(DiagramExpr::Paren(Box::new(inner)))
        } else {
            Ok(DiagramExpr::Name(self.ident()?))
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut left = self.term()?;
        loop {
            let pos = self.pos();
            let op = if self.eat_sym("+") {
                "+"
            } else if self.eat_sym("-") {
                "-"
            } else {
                return Ok(left);
            };
            let right = self.term()?;
            left = Expr::Binary {
                op: op.to_string(),
                ty: None,
                left: Box::new(left),
                right: Box::new(right),
                pos,
            };
        }
    }

    /// A `[type]` suffix: `[` name `]` where the name is not followed by a comma.
    fn type_suffix(&mut self) -> PResult<Option<Ident>> {
        if self.is_sym("[") && matches!(self.peek_at(1), Tok::Ident(_)) && matches!(self.peek_at(2), Tok::Sym("]")) {
            self.open("[")?;
            let ty = self.ident()?;
            self.close("]")?;
            Ok(Some(ty))
        } else {
            Ok(None)
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut left = self.unary()?;
        loop {
            let pos = self.pos();
            let op = ["**", "*", "⊛", "⊎", "&"].into_iter().find(|s| self.is_sym(s));
            let Some(op) = op else { return Ok(left) };
            self.bump();
            let ty = if matches!(op, "**" | "*" | "⊛") {
                self.type_suffix()?
            } else {
                None
            };
            let right = self.unary()?;
            left = Expr::Binary {
                op: op.to_string(),
                ty,
                left: Box::new(left),
                right: Box::new(right),
                pos,
            };
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        if self.eat_sym("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?), pos));
        }
        let mut e = self.atom()?;
        loop {
            let spelling = ["†", "^dag", "'"].into_iter().find(|s| self.is_sym(s));
            let Some(s) = spelling else { return Ok(e) };
            self.bump();
            e = Expr::Dagger {
                inner: Box::new(e),
                spelling: s.to_string(),
            };
        }
    }

    fn atom(&mut self) -> PResult<Expr> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Number(text) => {
                self.bump();
                Ok(Expr::Number { text, pos })
            }
            Tok::Sym("(") => {
                self.open("(")?;
                let e = self.expr()?;
                self.close(")")?;
                Ok(Expr::Paren(Box::new(e)))
            }
            Tok::Sym("[") => {
                self.open("[")?;
                let left = self.expr()?;
                self.expect_sym(",")?;
                let right = self.expr()?;
                self.close("]")?;
                let ty = self.type_suffix()?;
                Ok(Expr::Commutator {
                    left: Box::new(left),
                    right: Box::new(right),
                    ty,
                    pos,
                })
            }
            Tok::Ident(name) => {
                if KEYWORDS.contains(&name.as_str()) {
                    return Err(self.unexpected("an expression"));
                }
                let func = self.ident()?;
                let ty = if self.is_sym("[") { self.type_suffix()? } else { None };
                if self.is_sym("(") {
                    self.open("(")?;
                    let mut args = Vec::new();
                    while !self.is_sym(")") {
                        args.push(self.expr()?);
                        if !self.eat_sym(",") {
                            break;
                        }
                    }
                    self.close(")")?;
                    Ok(Expr::Call { func, ty, args })
                } else if ty.is_some() {
                    Err(Diagnostic::new(code::SYNTAX, pos, format!("`{}` takes no type", func.text)))
                } else {
                    Ok(Expr::Name(func))
                }
            }
            _ => Err(self.unexpected("an expression")),
        }
    }
}

pub fn parse(src: &str) -> Result<Document, Diagnostic> {
    let toks = lex(src)?;
    Parser { toks, at: 0, depth: 0 }.document()
}

/// A single expression, as given on the command line.
pub fn parse_expr(src: &str) -> Result<Expr, Diagnostic> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, depth: 1 };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("end of expression"));
    }
    Ok(e)
}

// ---- printer ---------------------------------------------------------------

fn print_graph_body(items: &[GraphItem]) -> String {
    let parts: Vec<String> = items
        .iter()
        .map(|i| match i {
            GraphItem::Vertex(v) => v.text.clone(),
            GraphItem::Edge { name, src, tgt } => format!("{}: {}->{}", name.text, src.text, tgt.text),
        })
        .collect();
    if parts.is_empty() {
        "{}".to_string()
    } else {
        format!("{{ {} }}", parts.join(", "))
    }
}

fn print_pairs(pairs: &[Pair]) -> String {
    if pairs.is_empty() {
        "{}".to_string()
    } else {
        format!(
            "{{ {} }}",
            pairs
                .iter()
                .map(|p| format!("{}->{}", p.from.text, p.to.text))
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

fn print_graph_ref(g: &GraphRef) -> String {
    match g {
        GraphRef::Named(n) => n.text.clone(),
        GraphRef::Inline(items) => print_graph_body(items),
    }
}

pub fn print_diagram_expr(d: &DiagramExpr) -> String {
    match d {
        DiagramExpr::Name(n) => n.text.clone(),
        DiagramExpr::Paren(inner) => format!("({})", print_diagram_expr(inner)),
        DiagramExpr::After { left, right, along, .. } => {
            format!(
                "{} after {} along {}",
                print_diagram_expr(left),
                print_diagram_expr(right),
                print_pairs(along)
            )
        }
        DiagramExpr::Superpose { op, left, right, .. } => format!("{} {op} {}", print_diagram_expr(left), print_diagram_expr(right)),
    }
}

fn ty_suffix(ty: &Option<Ident>) -> String {
    ty.as_ref().map(|t| format!("[{}]", t.text)).unwrap_or_default()
}

pub fn print_expr(e: &Expr) -> String {
    match e {
        Expr::Number { text, .. } => text.clone(),
        Expr::Name(n) => n.text.clone(),
        Expr::Paren(inner) => format!("({})", print_expr(inner)),
        Expr::Neg(inner, _) => format!("-{}", print_expr(inner)),
        Expr::Call { func, ty, args } => {
            format!(
                "{}{}({})",
                func.text,
                ty_suffix(ty),
                args.iter().map(print_expr).collect::<Vec<_>>().join(", ")
            )
        }
        Expr::Binary { op, ty, left, right, .. } => format!("{} {op}{} {}", print_expr(left), ty_suffix(ty), print_expr(right)),
        Expr::Commutator { left, right, ty, .. } => format!("[{}, {}]{}", print_expr(left), print_expr(right), ty_suffix(ty)),
        Expr::Dagger { inner, spelling } => format!("{}{spelling}", print_expr(inner)),
    }
}

pub fn print(doc: &Document) -> String {
    let mut out = String::new();
    for item in &doc.items {
        let line = match item {
            Item::Graph { name, body } => format!("graph {} {}", name.text, print_graph_body(body)),
            Item::Rule { name, input, output, map } => format!(
                "rule {} {{ in {} out {} map {} }}",
                name.text,
                print_graph_ref(input),
                print_graph_ref(output),
                print_pairs(map)
            ),
            Item::Diagram { name, expr } => format!("diagram {} = {}", name.text, print_diagram_expr(expr)),
            Item::Let { name, expr } => format!("let {} = {}", name.text, print_expr(expr)),
            Item::Print(e) => format!("print {}", print_expr(e)),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Comments and whitespace removed; two documents that agree here print alike.
pub fn normalize(src: &str) -> String {
    src.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.chars().filter(|c| !c.is_whitespace()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_items() {
        let doc = parse("graph V1 { v1 }\nrule A { in {v1} out {} map {} }\nprint 2 * A *[dpo] adag†").unwrap();
        assert_eq!(doc.items.len(), 3);
        assert_eq!(
            print(&doc),
            "graph V1 { v1 }\nrule A { in { v1 } out {} map {} }\nprint 2 * A *[dpo] adag†\n"
        );
    }

    #[test]
    fn commutator_versus_type() {
        let e = parse_expr("[a, adag][spoa] - a *[dpo] [a, I]").unwrap();
        assert_eq!(print_expr(&e), "[a, adag][spoa] - a *[dpo] [a, I]");
    }

    #[test]
    fn diagnostics_have_codes() {
        let err = parse("graph G { v1, e1: v1-> }").unwrap_err();
        assert_eq!((err.code, err.line), (code::MALFORMED_EDGE, 1));
        let err = parse("graph G { v1 v2\n  v1->v2 }").unwrap_err();
        assert_eq!((err.code, err.line, err.col), (code::MALFORMED_EDGE, 2, 5));
        assert_eq!(parse("rule { }").unwrap_err().code, code::SYNTAX);
    }
}
