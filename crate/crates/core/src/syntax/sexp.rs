//! S-expression reader with source positions.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Sexp {
    Atom(String, Pos),
    /// `( ... )`
    List(Vec<Sexp>, Pos),
    /// `[ ... ]`
    Seq(Vec<Sexp>, Pos),
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) | Sexp::Seq(_, p) => *p,
        }
    }

    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(s, _) => Some(s),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReadError {
    pub pos: Pos,
    pub msg: String,
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl Reader<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<Option<Sexp>, ReadError> {
        self.skip_blank();
        let start = self.pos;
        let Some(&c) = self.chars.peek() else {
            return Ok(None);
        };
        match c {
            '(' | '[' => {
                self.bump();
                let close = if c == '(' { ')' } else { ']' };
                let mut items = Vec::new();
                loop {
                    self.skip_blank();
                    match self.chars.peek() {
                        None => {
                            return Err(ReadError {
                                pos: start,
                                msg: format!("unclosed `{c}`"),
                            })
                        }
                        Some(&d) if d == close => {
                            self.bump();
                            break;
                        }
                        Some(&d @ (')' | ']')) => {
                            return Err(ReadError {
                                pos: self.pos,
                                msg: format!("expected `{close}`, found `{d}`"),
                            })
                        }
                        Some(_) => items.push(self.read()?.expect("input is not exhausted")),
                    }
                }
                Ok(Some(if c == '(' {
                    Sexp::List(items, start)
                } else {
                    Sexp::Seq(items, start)
                }))
            }
            ')' | ']' => Err(ReadError {
                pos: start,
                msg: format!("unexpected `{c}`"),
            }),
            _ => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | '[' | ']' | ';') {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(Some(Sexp::Atom(s, start)))
            }
        }
    }
}

/// Reads every top-level form in `src`.
pub fn read_all(src: &str) -> Result<Vec<Sexp>, ReadError> {
    let mut r = Reader {
        chars: src.chars().peekable(),
        pos: Pos { line: 1, col: 1 },
    };
    let mut out = Vec::new();
    while let Some(s) = r.read()? {
        out.push(s);
    }
    Ok(out)
}

/// Reads exactly one form.
pub fn read_one(src: &str) -> Result<Sexp, ReadError> {
    let mut forms = read_all(src)?;
    match forms.len() {
        1 => Ok(forms.pop().expect("one form")),
        0 => Err(ReadError {
            pos: Pos { line: 1, col: 1 },
            msg: "empty input".into(),
        }),
        _ => Err(ReadError {
            pos: forms[1].pos(),
            msg: "trailing input after the first form".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_track_lines() {
        let forms = read_all("; header\n(a\n  [b c])").unwrap();
        let Sexp::List(items, p) = &forms[0] else { panic!() };
        assert_eq!(*p, Pos { line: 2, col: 1 });
        assert_eq!(items[1].pos(), Pos { line: 3, col: 3 });
    }

    #[test]
    fn unbalanced() {
        assert_eq!(read_all("(a (b)").unwrap_err().pos, Pos { line: 1, col: 1 });
        assert_eq!(read_all("(a]").unwrap_err().pos, Pos { line: 1, col: 3 });
        assert!(read_all(")").is_err());
        assert!(read_one("a b").is_err());
    }
}
