//! Parenthesized prefix syntax: `(and (ind X) (exists= 2 Y (sub Y X)))`.
//! `#` starts a comment that runs to the end of the line.

use super::formula::*;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Word(String),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '\'' | '=' | '-')
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (l, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let at = (l + 1, i + 1);
            match c {
                '#' => break,
                '(' | ')' => {
                    out.push(Token {
                        tok: if c == '(' { Tok::Open } else { Tok::Close },
                        line: at.0,
                        column: at.1,
                    });
                    i += 1;
                }
                c if c.is_whitespace() => i += 1,
                c if is_word_char(c) => {
                    let start = i;
                    while i < chars.len() && is_word_char(chars[i]) {
                        i += 1;
                    }
                    out.push(Token {
                        tok: Tok::Word(chars[start..i].iter().collect()),
                        line: at.0,
                        column: at.1,
                    });
                }
                c => return Err(Error::syntax(at.0, at.1, format!("unexpected character `{c}`"))),
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn err_here(&self, msg: impl Into<String>) -> Error {
        let (line, column) = self.peek().map_or(self.end, |t| (t.line, t.column));
        Error::syntax(line, column, msg)
    }

    fn open(&mut self) -> Result<()> {
        match self.peek() {
            Some(Token { tok: Tok::Open, .. }) => {
                self.pos += 1;
                Ok(())
            }
            None => Err(self.err_here("unbalanced parentheses: expected a formula")),
            Some(_) => Err(self.err_here("expected `(`")),
        }
    }

    fn close(&mut self) -> Result<()> {
        match self.peek() {
            Some(Token { tok: Tok::Close, .. }) => {
                self.pos += 1;
                Ok(())
            }
            None => Err(self.err_here("unbalanced parentheses: missing `)`")),
            Some(_) => Err(self.err_here("expected `)`")),
        }
    }

    fn word(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Token { tok: Tok::Word(w), .. }) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            None => Err(self.err_here(format!("unbalanced parentheses: expected {what}"))),
            Some(_) => Err(self.err_here(format!("expected {what}"))),
        }
    }

    fn var(&mut self) -> Result<String> {
        let (line, column) = self.peek().map_or(self.end, |t| (t.line, t.column));
        let v = self.word("a variable")?;
        if !v.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
            return Err(Error::syntax(line, column, format!("bad variable name `{v}`")));
        }
        Ok(v)
    }

    fn formula(&mut self) -> Result<Formula> {
        self.open()?;
        let (line, column) = self.peek().map_or(self.end, |t| (t.line, t.column));
        let op = self.word("an operator")?;
        let f = match op.as_str() {
            "ind" => ind(&self.var()?),
            "sub" => {
                let x = self.var()?;
                sub(&x, &self.var()?)
            }
            "eq" => {
                let x = self.var()?;
                eq(&x, &self.var()?)
            }
            "not" => not(self.formula()?),
            "and" | "or" => {
                let mut parts = vec![self.formula()?, self.formula()?];
                while matches!(self.peek(), Some(Token { tok: Tok::Open, .. })) {
                    parts.push(self.formula()?);
                }
                if op == "and" {
                    and_all(parts)
                } else {
                    or_any(parts)
                }
            }
            "implies" => {
                let f = self.formula()?;
                implies(f, self.formula()?)
            }
            "iff" => {
                let f = self.formula()?;
                iff(f, self.formula()?)
            }
            "exists" => {
                let x = self.var()?;
                exists(&x, self.formula()?)
            }
            "forall" => {
                let x = self.var()?;
                forall(&x, self.formula()?)
            }
            "exists=" => {
                let (l, c) = self.peek().map_or(self.end, |t| (t.line, t.column));
                let k = self.word("a count")?;
                let k: usize = k
                    .parse()
                    .map_err(|_| Error::syntax(l, c, format!("expected a count, found `{k}`")))?;
                let x = self.var()?;
                exists_exactly(k, &x, self.formula()?)
            }
            other => return Err(Error::syntax(line, column, format!("unknown operator `{other}`"))),
        };
        self.close()?;
        Ok(f)
    }
}

/// Parses one formula; anything after it other than comments is an error.
pub fn parse(text: &str) -> Result<Formula> {
    let toks = tokenize(text)?;
    let end = text
        .lines()
        .enumerate()
        .last()
        .map_or((1, 1), |(i, l)| (i + 1, l.chars().count() + 1));
    let mut p = Parser { toks, pos: 0, end };
    let f = p.formula()?;
    if let Some(t) = p.peek() {
        let msg = if t.tok == Tok::Close {
            "unbalanced parentheses: unexpected `)`"
        } else {
            "trailing input after the formula"
        };
        return Err(Error::syntax(t.line, t.column, msg));
    }
    Ok(f)
}

/// Canonical single-line form. Right-nested chains of `and`/`or` print as one
/// n-ary operator, which [`parse`] folds back the same way.
pub fn print(f: &Formula) -> String {
    let mut out = String::new();
    write(f, &mut out);
    out
}

fn write(f: &Formula, out: &mut String) {
    use Formula::*;
    match f {
        Ind(x) => {
            out.push_str("(ind ");
            out.push_str(x);
            out.push(')');
        }
        Sub(x, y) | Eq(x, y) => {
            out.push_str(if matches!(f, Sub(..)) { "(sub " } else { "(eq " });
            out.push_str(x);
            out.push(' ');
            out.push_str(y);
            out.push(')');
        }
        Not(g) => {
            out.push_str("(not ");
            write(g, out);
            out.push(')');
        }
        And(..) | Or(..) => {
            let is_and = matches!(f, And(..));
            out.push_str(if is_and { "(and" } else { "(or" });
            let mut cur = f;
            loop {
                match (cur, is_and) {
                    (And(g, h), true) | (Or(g, h), false) => {
                        out.push(' ');
                        write(g, out);
                        cur = h;
                    }
                    _ => {
                        out.push(' ');
                        write(cur, out);
                        break;
                    }
                }
            }
            out.push(')');
        }
        Implies(g, h) | Iff(g, h) => {
            out.push_str(if matches!(f, Implies(..)) { "(implies " } else { "(iff " });
            write(g, out);
            out.push(' ');
            write(h, out);
            out.push(')');
        }
        Exists(x, g) | Forall(x, g) => {
            out.push_str(if matches!(f, Exists(..)) { "(exists " } else { "(forall " });
            out.push_str(x);
            out.push(' ');
            write(g, out);
            out.push(')');
        }
        ExistsExactly(k, x, g) => {
            out.push_str(&format!("(exists= {k} {x} "));
            write(g, out);
            out.push(')');
        }
    }
}

/// Multi-line form for reading: one operand per line, two-space indent.
pub fn pretty(f: &Formula) -> String {
    let mut out = String::new();
    pretty_into(f, 0, &mut out);
    out
}

fn pretty_into(f: &Formula, indent: usize, out: &mut String) {
    let flat = print(f);
    let pad = "  ".repeat(indent);
    if flat.len() + pad.len() <= 80 {
        out.push_str(&pad);
        out.push_str(&flat);
        out.push('\n');
        return;
    }
    use Formula::*;
    let (head, kids): (String, Vec<&Formula>) = match f {
        Not(g) => ("not".into(), vec![g]),
        And(..) | Or(..) => {
            let is_and = matches!(f, And(..));
            let mut kids = Vec::new();
            let mut cur = f;
            loop {
                match (cur, is_and) {
                    (And(g, h), true) | (Or(g, h), false) => {
                        kids.push(&**g);
                        cur = h;
                    }
                    _ => {
                        kids.push(cur);
                        break;
                    }
                }
            }
            ((if is_and { "and" } else { "or" }).into(), kids)
        }
        Implies(g, h) => ("implies".into(), vec![g, h]),
        Iff(g, h) => ("iff".into(), vec![g, h]),
        Exists(x, g) => (format!("exists {x}"), vec![g]),
        Forall(x, g) => (format!("forall {x}"), vec![g]),
        ExistsExactly(k, x, g) => (format!("exists= {k} {x}"), vec![g]),
        Ind(_) | Sub(..) | Eq(..) => unreachable!("atoms are short"),
    };
    out.push_str(&pad);
    out.push('(');
    out.push_str(&head);
    out.push('\n');
    for k in kids {
        pretty_into(k, indent + 1, out);
    }
    out.push_str(&pad);
    out.push_str(")\n");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atoms_and_sing() {
        assert_eq!(parse("(sub X Y)").unwrap(), sub("X", "Y"));
        let sing = parse("(exists= 2 Xp (sub Xp X))").unwrap();
        assert_eq!(sing, exists_exactly(2, "Xp", sub("Xp", "X")));
        assert_eq!(print(&sing), "(exists= 2 Xp (sub Xp X))");
    }

    #[test]
    fn errors_carry_positions() {
        match parse("(and (ind X)") {
            Err(Error::Syntax { line, message, .. }) => {
                assert_eq!(line, 1);
                assert!(message.contains("unbalanced"), "{message}");
            }
            other => panic!("{other:?}"),
        }
        match parse("# comment\n(frob X)") {
            Err(Error::Syntax { line: 2, column: 2, message }) => assert!(message.contains("unknown operator")),
            other => panic!("{other:?}"),
        }
        assert!(parse("(ind X))").is_err());
        assert!(parse("(exists= two X (ind X))").is_err());
    }

    #[test]
    fn nary_round_trip() {
        let f = parse("(and (ind A) (ind B) (or (ind C) (ind D) (ind E)))").unwrap();
        assert_eq!(print(&f), "(and (ind A) (ind B) (or (ind C) (ind D) (ind E)))");
        // A left-nested chain keeps its shape.
        let g = and(and(ind("A"), ind("B")), ind("C"));
        assert_eq!(parse(&print(&g)).unwrap(), g);
        assert_eq!(parse(&pretty(&g)).unwrap(), g);
    }
}
