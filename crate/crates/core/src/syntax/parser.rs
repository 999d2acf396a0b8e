use crate::term::{sym, Atom, Builtin, Clause, ProgramPair, Term, Var};

use super::lexer::{tokenize, Tok, Token};
use super::{ParseError, ParsedQuery, SourceProgram};

/// Infix operators: (precedence, left-associative).
pub(crate) fn infix(name: &str) -> Option<(u32, bool)> {
    match name {
        "=" | "\\=" | "<" | ">" | "=<" | ">=" | "is" => Some((700, false)),
        "+" | "-" => Some((500, true)),
        "*" => Some((400, true)),
        _ => None,
    }
}

const ARG_PREC: u32 = 999;

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    anon: &'a mut u32,
}

enum Neck {
    Fact,
    Rule,
    Co,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos).or(self.toks.last()) {
            Some(t) => (t.line, t.col),
            None => (1, 1),
        }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        let (l, c) = self.here();
        ParseError::new(l, c, msg)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn expect_sym(&mut self, s: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::Sym(s)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{s}', found {}", describe(self.peek()))))
        }
    }

    fn peek_infix(&self) -> Option<(String, u32, bool)> {
        let name = match self.peek()? {
            Tok::Sym(s) => (*s).to_string(),
            Tok::Name(n) if n == "is" => n.clone(),
            _ => return None,
        };
        infix(&name).map(|(p, left)| (name, p, left))
    }

    fn expr(&mut self, max: u32) -> Result<Term, ParseError> {
        let mut left = self.primary()?;
        let mut left_prec = 0;
        while let Some((op, prec, left_assoc)) = self.peek_infix() {
            if prec > max {
                break;
            }
            if left_prec > prec || (!left_assoc && left_prec == prec) {
                return Err(self.error(format!("operator priority clash at '{op}'")));
            }
            self.pos += 1;
            let right = self.expr(prec - 1)?;
            left = Term::Compound(sym(&op), vec![left, right]);
            left_prec = prec;
        }
        Ok(left)
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Term::Int(n)),
            Some(Tok::Sym("-")) => match self.bump() {
                Some(Tok::Int(n)) => Ok(Term::Int(-n)),
                other => {
                    self.pos -= 1;
                    Err(self.error(format!("expected integer after '-', found {}", describe(other.as_ref()))))
                }
            },
            Some(Tok::Var(name)) => {
                if name == "_" {
                    *self.anon += 1;
                    Ok(Term::Var(Var::new(&format!("_G{}", self.anon))))
                } else {
                    Ok(Term::Var(Var::new(&name)))
                }
            }
            Some(Tok::Name(name)) => {
                if self.peek() == Some(&Tok::Sym("(")) {
                    self.pos += 1;
                    let mut args = vec![self.expr(ARG_PREC)?];
                    while self.peek() == Some(&Tok::Sym(",")) {
                        self.pos += 1;
                        args.push(self.expr(ARG_PREC)?);
                    }
                    self.expect_sym(")")?;
                    Ok(Term::Compound(sym(&name), args))
                } else {
                    Ok(Term::constant(&name))
                }
            }
            Some(Tok::Sym("[")) => {
                if self.peek() == Some(&Tok::Sym("]")) {
                    self.pos += 1;
                    return Ok(Term::nil());
                }
                let mut items = vec![self.expr(ARG_PREC)?];
                while self.peek() == Some(&Tok::Sym(",")) {
                    self.pos += 1;
                    items.push(self.expr(ARG_PREC)?);
                }
                let tail = if self.peek() == Some(&Tok::Sym("|")) {
                    self.pos += 1;
                    self.expr(ARG_PREC)?
                } else {
                    Term::nil()
                };
                self.expect_sym("]")?;
                Ok(Term::list(items, tail))
            }
            Some(Tok::Sym("(")) => {
                let t = self.expr(1200)?;
                self.expect_sym(")")?;
                Ok(t)
            }
            other => {
                self.pos -= 1;
                Err(self.error(format!("expected a term, found {}", describe(other.as_ref()))))
            }
        }
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let (line, col) = self.here();
        match self.expr(ARG_PREC)? {
            Term::Compound(f, args) => Ok(Atom { pred: f, args }),
            other => Err(ParseError::new(line, col, format!("{other} is not a callable atom"))),
        }
    }

    /// Comma-separated atoms; `true` is dropped.
    fn body(&mut self) -> Result<Vec<Atom>, ParseError> {
        let mut out = Vec::new();
        loop {
            let a = self.atom()?;
            if !(a.args.is_empty() && &*a.pred == "true") {
                out.push(a);
            }
            if self.peek() == Some(&Tok::Sym(",")) {
                self.pos += 1;
            } else {
                return Ok(out);
            }
        }
    }

    fn clause(&mut self) -> Result<(Neck, Clause), ParseError> {
        let (line, col) = self.here();
        let head = self.atom()?;
        if let Some(b) = Builtin::of(&head) {
            return Err(ParseError::new(line, col, format!("cannot define clauses for builtin {}/2", b.name())));
        }
        let (neck, body) = match self.bump() {
            Some(Tok::End) => return Ok((Neck::Fact, Clause::fact(head))),
            Some(Tok::Neck) => (Neck::Rule, self.body()?),
            Some(Tok::CoNeck) => {
                if self.peek() == Some(&Tok::End) {
                    (Neck::Co, Vec::new())
                } else {
                    (Neck::Co, self.body()?)
                }
            }
            other => {
                self.pos -= 1;
                return Err(self.error(format!("expected '.', ':-' or ':~', found {}", describe(other.as_ref()))));
            }
        };
        match self.bump() {
            Some(Tok::End) => Ok((neck, Clause::new(head, body))),
            other => {
                self.pos -= 1;
                Err(self.error(format!("expected '.', found {}", describe(other.as_ref()))))
            }
        }
    }

    fn skip_past_end(&mut self) {
        while let Some(t) = self.bump() {
            if t == Tok::End {
                break;
            }
        }
    }
}

fn describe(t: Option<&Tok>) -> String {
    match t {
        None => "end of input".into(),
        Some(Tok::Name(n)) => format!("'{n}'"),
        Some(Tok::Var(v)) => format!("variable {v}"),
        Some(Tok::Int(n)) => format!("integer {n}"),
        Some(Tok::Sym(s)) => format!("'{s}'"),
        Some(Tok::Neck) => "':-'".into(),
        Some(Tok::CoNeck) => "':~'".into(),
        Some(Tok::Query) => "'?-'".into(),
        Some(Tok::End) => "'.'".into(),
    }
}

pub fn parse_program(src: &SourceProgram) -> Result<ProgramPair, Vec<ParseError>> {
    let with_origin = |e: ParseError| e.in_file(&src.origin);
    let toks = tokenize(&src.text).map_err(|e| vec![with_origin(e)])?;
    let mut anon = 0;
    let mut p = Parser { toks: &toks, pos: 0, anon: &mut anon };
    let mut prog = ProgramPair::default();
    let mut errors = Vec::new();
    while p.peek().is_some() {
        match p.clause() {
            Ok((Neck::Co, c)) => prog.coclauses.push(c),
            Ok((_, c)) => prog.clauses.push(c),
            Err(e) => {
                errors.push(with_origin(e));
                p.skip_past_end();
            }
        }
    }
    if errors.is_empty() {
        Ok(prog)
    } else {
        Err(errors)
    }
}

pub fn parse_query(text: &str) -> Result<ParsedQuery, ParseError> {
    let toks = tokenize(text)?;
    let mut anon = 0;
    let mut p = Parser { toks: &toks, pos: 0, anon: &mut anon };
    if p.peek() == Some(&Tok::Query) {
        p.pos += 1;
    }
    if p.peek().is_none() {
        return Err(p.error("empty query"));
    }
    let atoms = p.body()?;
    if p.peek() == Some(&Tok::End) {
        p.pos += 1;
    }
    if p.peek().is_some() {
        return Err(p.error(format!("unexpected {} after query", describe(p.peek()))));
    }
    Ok(ParsedQuery { atoms })
}

/// A single term, optionally followed by `.`.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let toks = tokenize(text)?;
    let mut anon = 0;
    let mut p = Parser { toks: &toks, pos: 0, anon: &mut anon };
    let t = p.expr(1200)?;
    if p.peek() == Some(&Tok::End) {
        p.pos += 1;
    }
    if p.peek().is_some() {
        return Err(p.error(format!("unexpected {} after term", describe(p.peek()))));
    }
    Ok(t)
}
