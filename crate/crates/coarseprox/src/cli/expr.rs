//! Set expressions: `expr := atom | comb "(" expr {"," expr} ")"`.

use std::fmt;

use crate::backends::{AnySet, BackendKind, GeneratorSet};
use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use crate::setalg_q::{QSet, RatAP};
use crate::setalg_z::EPSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetExpr {
    Empty,
    All,
    Finite(Vec<Rat>),
    /// Tail progression `{a, a + d, …}`.
    Ap(Rat, Rat),
    Interval {
        lo: Rat,
        hi: Option<Rat>,
        lo_open: bool,
        hi_open: bool,
    },
    Evens,
    Odds,
    Nat,
    Squares,
    Pow2,
    Neg(Box<SetExpr>),
    Union(Vec<SetExpr>),
    Inter(Vec<SetExpr>),
    Compl(Box<SetExpr>),
    Diff(Box<SetExpr>, Box<SetExpr>),
}

fn fmt_num(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        rat::fmt_rat(x)
    }
}

fn flag(open: bool) -> &'static str {
    if open {
        "open"
    } else {
        "closed"
    }
}

fn join(f: &mut fmt::Formatter<'_>, name: &str, xs: &[SetExpr]) -> fmt::Result {
    write!(f, "{name}(")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Empty => write!(f, "empty"),
            SetExpr::All => write!(f, "all"),
            SetExpr::Finite(xs) => {
                let xs: Vec<String> = xs.iter().map(fmt_num).collect();
                write!(f, "finite{{{}}}", xs.join(", "))
            }
            SetExpr::Ap(a, d) => write!(f, "ap({}, {})", fmt_num(a), fmt_num(d)),
            SetExpr::Interval {
                lo,
                hi,
                lo_open,
                hi_open,
            } => {
                let hi = hi.as_ref().map_or_else(|| "inf".to_string(), fmt_num);
                write!(
                    f,
                    "interval({}, {hi}, {}, {})",
                    fmt_num(lo),
                    flag(*lo_open),
                    flag(*hi_open)
                )
            }
            SetExpr::Evens => write!(f, "evens"),
            SetExpr::Odds => write!(f, "odds"),
            SetExpr::Nat => write!(f, "nat"),
            SetExpr::Squares => write!(f, "squares"),
            SetExpr::Pow2 => write!(f, "pow2"),
            SetExpr::Neg(e) => write!(f, "neg({e})"),
            SetExpr::Union(xs) => join(f, "union", xs),
            SetExpr::Inter(xs) => join(f, "inter", xs),
            SetExpr::Compl(e) => write!(f, "compl({e})"),
            SetExpr::Diff(a, b) => write!(f, "diff({a}, {b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Num(Rat),
    Open,
    Close,
    LBrace,
    RBrace,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Num(x) => write!(f, "number {}", fmt_num(x)),
            Tok::Open => write!(f, "`(`"),
            Tok::Close => write!(f, "`)`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut pos = Pos { line: 1, column: 1 };
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let start = pos;
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                pos.line += 1;
                pos.column = 1;
            } else {
                pos.column += 1;
            }
            c
        };
        let simple = match c {
            '(' => Some(Tok::Open),
            ')' => Some(Tok::Close),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = simple {
            bump(&mut chars);
            out.push((t, start));
        } else if c.is_whitespace() {
            bump(&mut chars);
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut w = String::new();
            while chars
                .peek()
                .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
            {
                w.extend(bump(&mut chars));
            }
            out.push((Tok::Word(w), start));
        } else if c.is_ascii_digit() || c == '-' || c == '/' {
            let mut w = String::new();
            while chars
                .peek()
                .is_some_and(|c| c.is_ascii_digit() || *c == '-' || *c == '/')
            {
                w.extend(bump(&mut chars));
            }
            let x =
                rat::parse_rat(&w).map_err(|_| syntax(start, format!("malformed number `{w}`")))?;
            out.push((Tok::Num(x), start));
        } else {
            return Err(syntax(start, format!("unexpected character `{c}`")));
        }
    }
    out.push((Tok::End, pos));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.at]
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let (t, p) = self.next();
        if t == want {
            Ok(())
        } else {
            Err(syntax(p, format!("expected {want}, found {t}")))
        }
    }

    fn number(&mut self) -> Result<Rat> {
        match self.next() {
            (Tok::Num(x), _) => Ok(x),
            (t, p) => Err(syntax(p, format!("expected a number, found {t}"))),
        }
    }

    fn bound(&mut self) -> Result<Option<Rat>> {
        match self.peek() {
            (Tok::Word(w), _) if w == "inf" => {
                self.next();
                Ok(None)
            }
            _ => self.number().map(Some),
        }
    }

    fn openness(&mut self) -> Result<bool> {
        match self.next() {
            (Tok::Word(w), _) if w == "open" => Ok(true),
            (Tok::Word(w), _) if w == "closed" => Ok(false),
            (t, p) => Err(syntax(p, format!("expected `open` or `closed`, found {t}"))),
        }
    }

    fn args(&mut self) -> Result<Vec<SetExpr>> {
        self.expect(Tok::Open)?;
        let mut xs = vec![self.expr()?];
        while self.peek().0 == Tok::Comma {
            self.next();
            xs.push(self.expr()?);
        }
        self.expect(Tok::Close)?;
        Ok(xs)
    }

    fn arity(&mut self, name: &str, pos: Pos, n: usize) -> Result<Vec<SetExpr>> {
        let xs = self.args()?;
        if xs.len() != n {
            return Err(syntax(
                pos,
                format!("`{name}` takes {n} argument(s), found {}", xs.len()),
            ));
        }
        Ok(xs)
    }

    fn expr(&mut self) -> Result<SetExpr> {
        let (t, pos) = self.next();
        let Tok::Word(w) = t else {
            return Err(syntax(pos, format!("expected a set expression, found {t}")));
        };
        Ok(match w.as_str() {
            "empty" => SetExpr::Empty,
            "all" => SetExpr::All,
            "evens" => SetExpr::Evens,
            "odds" => SetExpr::Odds,
            "nat" => SetExpr::Nat,
            "squares" => SetExpr::Squares,
            "pow2" => SetExpr::Pow2,
            "finite" => {
                self.expect(Tok::LBrace)?;
                let mut xs = Vec::new();
                if self.peek().0 != Tok::RBrace {
                    xs.push(self.number()?);
                    while self.peek().0 == Tok::Comma {
                        self.next();
                        xs.push(self.number()?);
                    }
                }
                self.expect(Tok::RBrace)?;
                SetExpr::Finite(xs)
            }
            "ap" => {
                self.expect(Tok::Open)?;
                let a = self.number()?;
                self.expect(Tok::Comma)?;
                let d = self.number()?;
                self.expect(Tok::Close)?;
                SetExpr::Ap(a, d)
            }
            "interval" => {
                self.expect(Tok::Open)?;
                let lo = self.number()?;
                self.expect(Tok::Comma)?;
                let hi = self.bound()?;
                self.expect(Tok::Comma)?;
                let lo_open = self.openness()?;
                self.expect(Tok::Comma)?;
                let hi_open = self.openness()?;
                self.expect(Tok::Close)?;
                SetExpr::Interval {
                    lo,
                    hi,
                    lo_open,
                    hi_open,
                }
            }
            "union" => SetExpr::Union(self.args()?),
            "inter" => SetExpr::Inter(self.args()?),
            "neg" => SetExpr::Neg(Box::new(self.arity(&w, pos, 1)?.remove(0))),
            "compl" => SetExpr::Compl(Box::new(self.arity(&w, pos, 1)?.remove(0))),
            "diff" => {
                let mut xs = self.arity(&w, pos, 2)?;
                let b = xs.pop().expect("two arguments");
                SetExpr::Diff(Box::new(xs.pop().expect("two arguments")), Box::new(b))
            }
            _ => return Err(syntax(pos, format!("unknown atom `{w}`"))),
        })
    }
}

pub fn parse_expr(text: &str) -> Result<SetExpr> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let e = p.expr()?;
    match p.next() {
        (Tok::End, _) => Ok(e),
        (t, pos) => Err(syntax(pos, format!("unexpected {t} after the expression"))),
    }
}

fn unsupported(what: &str, kind: BackendKind) -> Error {
    Error::ClassMismatch(format!("`{what}` has no meaning on the {kind} backend"))
}

fn integer(x: &Rat, kind: BackendKind) -> Result<i64> {
    if x.is_integer() {
        Ok(*x.numer())
    } else {
        Err(Error::ClassMismatch(format!(
            "{} is not an integer, as the {kind} backend requires",
            rat::fmt_rat(x)
        )))
    }
}

fn step(d: &Rat, kind: BackendKind) -> Result<u64> {
    let d = integer(d, kind)?;
    u64::try_from(d)
        .ok()
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::InvalidSet(format!("step {d} must be positive")))
}

fn fold<T>(
    xs: &[SetExpr],
    f: impl Fn(&SetExpr) -> Result<T>,
    op: impl Fn(&T, &T) -> T,
) -> Result<T> {
    let mut it = xs.iter();
    let mut acc = f(it.next().expect("combinators take at least one argument"))?;
    for x in it {
        acc = op(&acc, &f(x)?);
    }
    Ok(acc)
}

fn to_z(e: &SetExpr) -> Result<EPSet> {
    let kind = BackendKind::ZMetric;
    Ok(match e {
        SetExpr::Empty => EPSet::empty(),
        SetExpr::All => EPSet::all(),
        SetExpr::Finite(xs) => EPSet::finite(
            xs.iter()
                .map(|x| integer(x, kind))
                .collect::<Result<Vec<_>>>()?,
        ),
        SetExpr::Ap(a, d) => EPSet::tail_ap(integer(a, kind)?, step(d, kind)?)?,
        SetExpr::Evens => EPSet::evens(),
        SetExpr::Odds => EPSet::odds(),
        SetExpr::Nat => EPSet::ray_up(0),
        SetExpr::Neg(x) => to_z(x)?.reflect(),
        SetExpr::Union(xs) => fold(xs, to_z, EPSet::union)?,
        SetExpr::Inter(xs) => fold(xs, to_z, EPSet::inter)?,
        SetExpr::Compl(x) => to_z(x)?.complement(),
        SetExpr::Diff(a, b) => to_z(a)?.diff(&to_z(b)?),
        SetExpr::Interval { .. } => return Err(unsupported("interval", kind)),
        SetExpr::Squares => return Err(unsupported("squares", kind)),
        SetExpr::Pow2 => return Err(unsupported("pow2", kind)),
    })
}

fn to_q(e: &SetExpr) -> Result<QSet> {
    let kind = BackendKind::QHalfline;
    Ok(match e {
        SetExpr::Empty => QSet::empty(),
        SetExpr::All => QSet::all(),
        SetExpr::Finite(xs) => QSet::points(xs)?,
        SetExpr::Ap(a, d) => QSet::ap(&RatAP::new(*a, *d)?),
        SetExpr::Interval {
            lo,
            hi,
            lo_open,
            hi_open,
        } => QSet::interval(*lo, *hi, *lo_open, *hi_open)?,
        SetExpr::Nat => QSet::naturals(),
        SetExpr::Union(xs) => fold(xs, to_q, QSet::union)?,
        SetExpr::Inter(xs) => fold(xs, to_q, QSet::inter)?,
        SetExpr::Compl(x) => to_q(x)?.complement(),
        SetExpr::Diff(a, b) => to_q(a)?.diff(&to_q(b)?),
        SetExpr::Evens => return Err(unsupported("evens", kind)),
        SetExpr::Odds => return Err(unsupported("odds", kind)),
        SetExpr::Neg(_) => return Err(unsupported("neg", kind)),
        SetExpr::Squares => return Err(unsupported("squares", kind)),
        SetExpr::Pow2 => return Err(unsupported("pow2", kind)),
    })
}

fn to_w(e: &SetExpr) -> Result<GeneratorSet> {
    Ok(match e {
        SetExpr::Squares => GeneratorSet::squares(),
        SetExpr::Pow2 => GeneratorSet::powers_of_two(),
        SetExpr::Neg(x) => to_w(x)?.reflect(),
        SetExpr::Union(xs) => fold(xs, to_w, GeneratorSet::union)?,
        SetExpr::Inter(xs) => fold(xs, to_w, GeneratorSet::inter)?,
        SetExpr::Compl(x) => to_w(x)?.complement(),
        SetExpr::Diff(a, b) => to_w(a)?.diff(&to_w(b)?),
        SetExpr::Interval { .. } => return Err(unsupported("interval", BackendKind::Windowed)),
        atom => GeneratorSet::from_epset(&to_z(atom)?),
    })
}

/// The set an expression denotes on a backend.
pub fn elaborate(e: &SetExpr, kind: BackendKind) -> Result<AnySet> {
    Ok(match kind {
        BackendKind::ZMetric => AnySet::Z(to_z(e)?),
        BackendKind::QHalfline => AnySet::Q(to_q(e)?),
        BackendKind::Windowed => AnySet::W(to_w(e)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    #[test]
    fn parses_nested_combinators() {
        let e = parse_expr("compl(union(ap(0,2), finite{1}))").unwrap();
        let want = SetExpr::Compl(Box::new(SetExpr::Union(vec![
            SetExpr::Ap(int(0), int(2)),
            SetExpr::Finite(vec![int(1)]),
        ])));
        assert_eq!(e, want);
    }

    #[test]
    fn reports_error_positions() {
        match parse_expr("ap(0,)") {
            Err(Error::Syntax {
                line: 1, column: 6, ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse_expr("union(evens,\n  bogus)") {
            Err(Error::Syntax {
                line: 2,
                column: 3,
                message,
            }) => assert!(message.contains("unknown atom")),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_expr("evens odds").is_err());
        assert!(parse_expr("neg(evens, odds)").is_err());
    }

    #[test]
    fn unit_interval_and_rationals() {
        let e = parse_expr("interval(0,1,open,open)").unwrap();
        let a = elaborate(&e, BackendKind::QHalfline).unwrap();
        assert_eq!(a.as_q().unwrap(), &crate::normality::unit_interval());
        let e = parse_expr("  interval( 1/2 , inf , closed , open )").unwrap();
        assert_eq!(
            e,
            SetExpr::Interval {
                lo: rat(1, 2),
                hi: None,
                lo_open: false,
                hi_open: true
            }
        );
    }

    #[test]
    fn printing_round_trips() {
        for text in [
            "diff(all, finite{-3, 0, 7})",
            "inter(neg(ap(1, 3)), odds, evens)",
            "union(interval(1/3, inf, open, open), ap(1/2, 3/2), nat, finite{})",
            "compl(squares)",
        ] {
            let e = parse_expr(text).unwrap();
            assert_eq!(e.to_string(), text);
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
        }
    }

    #[test]
    fn class_mismatches_are_rejected() {
        let interval = parse_expr("interval(0,1,open,open)").unwrap();
        assert!(matches!(
            elaborate(&interval, BackendKind::ZMetric),
            Err(Error::ClassMismatch(_))
        ));
        assert!(matches!(
            elaborate(&SetExpr::Evens, BackendKind::QHalfline),
            Err(Error::ClassMismatch(_))
        ));
        assert!(matches!(
            elaborate(&SetExpr::Squares, BackendKind::ZMetric),
            Err(Error::ClassMismatch(_))
        ));
        assert!(elaborate(&parse_expr("finite{1/2}").unwrap(), BackendKind::ZMetric).is_err());
        assert!(elaborate(&SetExpr::Squares, BackendKind::Windowed).is_ok());
    }
}
