use std::collections::HashMap;

use super::{Binding, ModelDoc};
use crate::automata::{Alphabet, Regex};
use crate::error::{ParseError, Result};
use crate::transducer::{PairRegex, SymbolPair};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Plus,
    Star,
    Slash,
    LParen,
    RParen,
    Semi,
    Colon,
    Equals,
    Newline,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

const SPECIAL: &[char] = &['+', '*', '/', '(', ')', ';', ':', '=', '#'];

/// Newlines inside parentheses are dropped so that a parenthesised regex
/// may span lines.
fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut open: Vec<(usize, usize)> = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, column) = (li + 1, i + 1);
            let push = |tok, out: &mut Vec<Token>| out.push(Token { tok, line, column });
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let simple = match c {
                '+' => Some(Tok::Plus),
                '*' => Some(Tok::Star),
                '/' => Some(Tok::Slash),
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                ';' => Some(Tok::Semi),
                ':' => Some(Tok::Colon),
                '=' => Some(Tok::Equals),
                _ => None,
            };
            if let Some(t) = simple {
                match t {
                    Tok::LParen => open.push((line, column)),
                    Tok::RParen => {
                        open.pop();
                    }
                    _ => {}
                }
                push(t, &mut out);
                i += 1;
                continue;
            }
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() && !SPECIAL.contains(&chars[i]) {
                i += 1;
            }
            push(Tok::Ident(chars[start..i].iter().collect()), &mut out);
        }
        if open.is_empty() {
            out.push(Token {
                tok: Tok::Newline,
                line: li + 1,
                column: chars.len() + 1,
            });
        }
    }
    if let Some(&(line, column)) = open.first() {
        return Err(ParseError::new(line, column, "unclosed `(`"));
    }
    let line = text.lines().count().max(1);
    out.push(Token {
        tok: Tok::End,
        line: line + 1,
        column: 1,
    });
    Ok(out)
}

/// Kind of a regex: a `let` body starts undecided and is fixed by its
/// first leaf.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Context {
    Plain,
    Pair,
}

/// Leaf produced while the kind of the surrounding expression is unknown.
#[derive(Clone, Debug)]
enum Leaf {
    Sym(String),
    Pair(SymbolPair),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    alphabet: Option<Alphabet>,
    lets: Vec<(String, Binding)>,
    kinds: HashMap<String, Option<Context>>,
    skip_newlines: bool,
}

fn is_eps(name: &str) -> bool {
    name == "eps" || name == "λ"
}

impl Parser {
    fn peek(&mut self) -> &Token {
        if self.skip_newlines {
            while self.toks[self.pos].tok == Tok::Newline {
                self.pos += 1;
            }
        }
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        self.peek();
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, at: &Token, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(at.line, at.column, message))
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Token, ParseError> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            self.error(&t, format!("expected {what}, found {}", describe(&t.tok)))
        }
    }

    /// `;` or end of line or end of input.
    fn end_statement(&mut self) -> Result<(), ParseError> {
        let t = self.next();
        match t.tok {
            Tok::Semi | Tok::Newline | Tok::End => Ok(()),
            _ => self.error(&t, format!("unexpected {}", describe(&t.tok))),
        }
    }

    fn alphabet(&self, at: &Token) -> Result<&Alphabet, ParseError> {
        match &self.alphabet {
            Some(a) => Ok(a),
            None => self.error(at, "the alphabet must be declared before any expression"),
        }
    }

    fn document(mut self) -> Result<ModelDoc, ParseError> {
        let mut init: Option<Regex> = None;
        let mut bad: Option<Regex> = None;
        let mut trans: Vec<PairRegex> = Vec::new();
        loop {
            let t = self.next();
            let keyword = match &t.tok {
                Tok::Newline | Tok::Semi => continue,
                Tok::End => break,
                Tok::Ident(k) => k.clone(),
                other => return self.error(&t, format!("expected a statement, found {}", describe(other))),
            };
            match keyword.as_str() {
                "alphabet" => {
                    if self.alphabet.is_some() {
                        return self.error(&t, "duplicate alphabet declaration");
                    }
                    self.expect(Tok::Colon, "`:`")?;
                    let mut symbols = Vec::new();
                    loop {
                        let s = self.next();
                        match s.tok.clone() {
                            Tok::Ident(name) => symbols.push(name),
                            Tok::Semi | Tok::Newline | Tok::End => break,
                            other => return self.error(&s, format!("unexpected {} in alphabet", describe(&other))),
                        }
                    }
                    if symbols.iter().any(|s| is_eps(s)) {
                        return self.error(&t, "`eps` cannot be a symbol");
                    }
                    match Alphabet::new(symbols) {
                        Ok(a) => self.alphabet = Some(a),
                        Err(e) => return self.error(&t, e.to_string()),
                    }
                }
                "let" => {
                    let name_tok = self.next();
                    let Tok::Ident(name) = name_tok.tok.clone() else {
                        return self.error(&name_tok, "expected a name after `let`");
                    };
                    let alphabet = self.alphabet(&name_tok)?;
                    if alphabet.index_of(&name).is_some() || alphabet.split_run(&name).is_some() || is_eps(&name) {
                        return self.error(&name_tok, format!("name `{name}` clashes with alphabet symbols"));
                    }
                    if self.kinds.contains_key(&name) {
                        return self.error(&name_tok, format!("`{name}` is already defined"));
                    }
                    self.expect(Tok::Equals, "`=`")?;
                    self.skip_newlines = true;
                    let mut kind = None;
                    let body = self.union(&mut kind);
                    let semi = body.and_then(|b| {
                        self.expect(Tok::Semi, "`;` after let binding")?;
                        Ok(b)
                    });
                    self.skip_newlines = false;
                    let body = semi?;
                    let binding = match kind {
                        Some(Context::Pair) => Binding::Pair(body.try_map(&mut |l| match l {
                            Leaf::Pair(p) => Ok::<_, ()>(p.clone()),
                            Leaf::Sym(_) => Err(()),
                        }).expect("kind checked")),
                        _ => Binding::Plain(body.try_map(&mut |l| match l {
                            Leaf::Sym(s) => Ok::<_, ()>(s.clone()),
                            Leaf::Pair(_) => Err(()),
                        }).expect("kind checked")),
                    };
                    self.kinds.insert(name.clone(), kind);
                    self.lets.push((name, binding));
                }
                "init" | "bad" => {
                    self.expect(Tok::Colon, "`:`")?;
                    self.alphabet(&t)?;
                    let slot = if keyword == "init" { &init } else { &bad };
                    if slot.is_some() {
                        return self.error(&t, format!("duplicate `{keyword}` declaration"));
                    }
                    let mut kind = Some(Context::Plain);
                    let r = self.union(&mut kind)?;
                    self.end_statement()?;
                    let r = r
                        .try_map(&mut |l| match l {
                            Leaf::Sym(s) => Ok::<_, ()>(s.clone()),
                            Leaf::Pair(_) => Err(()),
                        })
                        .expect("context checked");
                    if keyword == "init" {
                        init = Some(r);
                    } else {
                        bad = Some(r);
                    }
                }
                "trans" => {
                    self.expect(Tok::Colon, "`:`")?;
                    self.alphabet(&t)?;
                    let mut kind = Some(Context::Pair);
                    let r = self.union(&mut kind)?;
                    self.end_statement()?;
                    trans.push(
                        r.try_map(&mut |l| match l {
                            Leaf::Pair(p) => Ok::<_, ()>(p.clone()),
                            Leaf::Sym(_) => Err(()),
                        })
                        .expect("context checked"),
                    );
                }
                other => {
                    return self.error(
                        &t,
                        format!("unknown statement `{other}` (expected alphabet, let, init, trans or bad)"),
                    )
                }
            }
        }
        let end = self.toks.last().expect("end token").clone();
        if self.alphabet.is_none() && self.lets.is_empty() && init.is_none() && bad.is_none() && trans.is_empty() {
            return self.error(&end, "empty model");
        }
        let alphabet = match self.alphabet.take() {
            Some(a) => a,
            None => return self.error(&end, "missing `alphabet:` declaration"),
        };
        let Some(init) = init else {
            return self.error(&end, "missing `init:` declaration");
        };
        let Some(bad) = bad else {
            return self.error(&end, "missing `bad:` declaration");
        };
        if trans.is_empty() {
            return self.error(&end, "missing `trans:` declaration");
        }
        Ok(ModelDoc {
            alphabet,
            lets: self.lets,
            init,
            trans,
            bad,
        })
    }

    fn union(&mut self, kind: &mut Option<Context>) -> Result<Regex<Leaf>, ParseError> {
        let mut r = self.concat(kind)?;
        while self.peek().tok == Tok::Plus {
            self.next();
            r = r.union(self.concat(kind)?);
        }
        Ok(r)
    }

    fn concat(&mut self, kind: &mut Option<Context>) -> Result<Regex<Leaf>, ParseError> {
        let mut parts = vec![self.postfix(kind)?];
        while matches!(self.peek().tok, Tok::Ident(_) | Tok::LParen) {
            parts.push(self.postfix(kind)?);
        }
        Ok(Regex::seq(parts))
    }

    fn postfix(&mut self, kind: &mut Option<Context>) -> Result<Regex<Leaf>, ParseError> {
        let mut r = self.atom(kind)?;
        while self.peek().tok == Tok::Star {
            self.next();
            r = r.star();
        }
        Ok(r)
    }

    /// Fixes the kind of the expression on its first leaf and rejects
    /// leaves of the other kind.
    fn settle(&self, at: &Token, kind: &mut Option<Context>, leaf: Context) -> Result<(), ParseError> {
        match *kind {
            None => {
                *kind = Some(leaf);
                Ok(())
            }
            Some(k) if k == leaf => Ok(()),
            Some(Context::Pair) => self.error(
                at,
                "bare symbol in a transition relation; every position must be a pair `a/b` to stay length-preserving",
            ),
            Some(_) => self.error(at, "symbol pair `a/b` outside a transition relation"),
        }
    }

    fn symbol(&self, t: &Token, name: &str) -> Result<String, ParseError> {
        if self.alphabet(t)?.index_of(name).is_some() {
            Ok(name.to_string())
        } else {
            self.error(t, format!("unknown symbol `{name}`"))
        }
    }

    fn atom(&mut self, kind: &mut Option<Context>) -> Result<Regex<Leaf>, ParseError> {
        let t = self.next();
        match t.tok.clone() {
            Tok::LParen => {
                let r = self.union(kind)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(r)
            }
            Tok::Ident(name) if is_eps(&name) => Ok(Regex::Epsilon),
            Tok::Ident(name) => {
                if self.peek().tok == Tok::Slash {
                    self.next();
                    let out = self.next();
                    let Tok::Ident(out_name) = out.tok.clone() else {
                        return self.error(&out, "expected an output symbol after `/`");
                    };
                    let input = self.symbol(&t, &name)?;
                    let output = self.symbol(&out, &out_name)?;
                    self.settle(&t, kind, Context::Pair)?;
                    return Ok(Regex::Sym(Leaf::Pair(SymbolPair::new(input, output))));
                }
                if let Some(k) = self.kinds.get(&name).copied() {
                    if let Some(k) = k {
                        self.settle(&t, kind, k)?;
                    }
                    return Ok(Regex::Ref(name));
                }
                let alphabet = self.alphabet(&t)?;
                let symbols = if alphabet.index_of(&name).is_some() {
                    vec![name.clone()]
                } else if let Some(split) = alphabet.split_run(&name) {
                    split.iter().map(|&i| alphabet.symbol(i).to_string()).collect()
                } else {
                    return self.error(&t, format!("unknown symbol or undefined name `{name}`"));
                };
                self.settle(&t, kind, Context::Plain)?;
                Ok(Regex::seq(symbols.into_iter().map(|s| Regex::Sym(Leaf::Sym(s)))))
            }
            other => self.error(&t, format!("expected an expression, found {}", describe(&other))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Colon => "`:`".into(),
        Tok::Equals => "`=`".into(),
        Tok::Newline => "end of line".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses the model text without compiling it.
pub fn parse_model_doc(text: &str) -> Result<ModelDoc> {
    let parser = Parser {
        toks: lex(text)?,
        pos: 0,
        alphabet: None,
        lets: Vec::new(),
        kinds: HashMap::new(),
        skip_newlines: false,
    };
    Ok(parser.document()?)
}

/// Parses a single plain regex over `alphabet`, as written after `init:`.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Regex> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
        alphabet: Some(alphabet.clone()),
        lets: Vec::new(),
        kinds: HashMap::new(),
        skip_newlines: true,
    };
    let mut kind = Some(Context::Plain);
    let r = parser.union(&mut kind)?;
    parser.expect(Tok::End, "end of expression")?;
    Ok(r
        .try_map(&mut |l| match l {
            Leaf::Sym(s) => Ok::<_, ()>(s.clone()),
            Leaf::Pair(_) => Err(()),
        })
        .expect("context checked"))
}
