//! A small boolean language over subset predicates, used by the miner.
//!
//! ```text
//! expr := term (('&' | '|') term)*
//! term := '!' term | '(' expr ')' | atom
//! ```
//!
//! `&` and `|` share one precedence level and associate to the left, so
//! `a | b & c` means `(a | b) & c`.

use std::fmt;

use crate::classes::{
    is_alpha_open, is_b_open, is_beta_open, is_pre_open, is_regular_closed, is_regular_open, is_semi_open,
};
use crate::error::{Error, Result};
use crate::space::BiOperatorSpace;
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    Open,
    Closed,
    RegularOpen,
    RegularClosed,
    PreOpen,
    SemiOpen,
    AlphaOpen,
    BetaOpen,
    /// Classical `b_open`.
    BOpen,
    /// Operator-space `B_open`.
    BigBOpen,
    /// 1-based operator index.
    TStarOpen(usize),
    BDense,
    BClosed,
}

impl Atom {
    const PLAIN: [(&'static str, Atom); 12] = [
        ("open", Atom::Open),
        ("closed", Atom::Closed),
        ("regular_open", Atom::RegularOpen),
        ("regular_closed", Atom::RegularClosed),
        ("pre_open", Atom::PreOpen),
        ("semi_open", Atom::SemiOpen),
        ("alpha_open", Atom::AlphaOpen),
        ("beta_open", Atom::BetaOpen),
        ("b_open", Atom::BOpen),
        ("B_open", Atom::BigBOpen),
        ("B_dense", Atom::BDense),
        ("B_closed", Atom::BClosed),
    ];

    fn eval(self, space: &BiOperatorSpace, s: Subset) -> Result<bool> {
        let t = space.topology();
        Ok(match self {
            Atom::Open => t.is_open(s),
            Atom::Closed => t.is_closed(s),
            Atom::RegularOpen => is_regular_open(t, s),
            Atom::RegularClosed => is_regular_closed(t, s),
            Atom::PreOpen => is_pre_open(t, s),
            Atom::SemiOpen => is_semi_open(t, s),
            Atom::AlphaOpen => is_alpha_open(t, s),
            Atom::BetaOpen => is_beta_open(t, s),
            Atom::BOpen => is_b_open(t, s),
            Atom::BigBOpen => space.is_b_open(s),
            Atom::TStarOpen(i) => space.is_t_star_open(i, s)?,
            Atom::BDense => space.is_b_dense(s),
            Atom::BClosed => space.is_b_closed(s),
        })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::TStarOpen(i) => write!(f, "t_star_open({i})"),
            other => {
                let name = Atom::PLAIN.iter().find(|(_, a)| a == other).map(|(n, _)| *n);
                f.write_str(name.unwrap_or("?"))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Atom(Atom),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser { src, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn eval(&self, space: &BiOperatorSpace, s: Subset) -> Result<bool> {
        match self {
            Expr::Atom(a) => a.eval(space, s),
            Expr::Not(e) => Ok(!e.eval(space, s)?),
            Expr::And(l, r) => Ok(l.eval(space, s)? && r.eval(space, s)?),
            Expr::Or(l, r) => Ok(l.eval(space, s)? || r.eval(space, s)?),
        }
    }

    /// Largest operator index mentioned by a `t_star_open` atom.
    pub fn max_operator_index(&self) -> usize {
        match self {
            Expr::Atom(Atom::TStarOpen(i)) => *i,
            Expr::Atom(_) => 0,
            Expr::Not(e) => e.max_operator_index(),
            Expr::And(l, r) | Expr::Or(l, r) => l.max_operator_index().max(r.max_operator_index()),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(a) => write!(f, "{a}"),
            Expr::Not(e) => write!(f, "!{e}"),
            Expr::And(l, r) => write!(f, "({l} & {r})"),
            Expr::Or(l, r) => write!(f, "({l} | {r})"),
        }
    }
}

struct Parser<'s> {
    src: &'s str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some('&') => {
                    self.pos += 1;
                    lhs = Expr::And(Box::new(lhs), Box::new(self.term()?));
                }
                Some('|') => {
                    self.pos += 1;
                    lhs = Expr::Or(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('!') => {
                self.pos += 1;
                Ok(Expr::Not(Box::new(self.term()?)))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.atom(),
            Some(_) => Err(self.error("expected '!', '(' or an atom")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.src.len() - start);
        self.pos += len;
        &self.src[start..start + len]
    }

    fn atom(&mut self) -> Result<Expr> {
        let start = self.pos;
        let name = self.ident().to_string();
        if let Some((_, a)) = Atom::PLAIN.iter().find(|(n, _)| *n == name) {
            return Ok(Expr::Atom(*a));
        }
        if name == "t_star_open" {
            self.expect('(')?;
            self.skip_ws();
            let digits = self.ident().to_string();
            let index: usize = match digits.parse() {
                Ok(i) if i >= 1 => i,
                _ => {
                    self.pos -= digits.len();
                    return Err(self.error("expected a positive operator index"));
                }
            };
            self.expect(')')?;
            return Ok(Expr::Atom(Atom::TStarOpen(index)));
        }
        Err(Error::UnknownAtom { name, position: start })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::Topology;

    #[test]
    fn parses_left_to_right() {
        let e = Expr::parse("open | closed & !b_open").unwrap();
        assert_eq!(e.to_string(), "((open | closed) & !b_open)");
        let e = Expr::parse(" B_open & !t_star_open(1)&!t_star_open( 2 ) ").unwrap();
        assert_eq!(e.max_operator_index(), 2);
        assert_eq!(
            Expr::parse("!(pre_open|semi_open)").unwrap().to_string(),
            "!(pre_open | semi_open)"
        );
    }

    #[test]
    fn error_positions() {
        assert_eq!(
            Expr::parse("b_open & !"),
            Err(Error::Parse {
                position: 10,
                message: "unexpected end of input".into()
            })
        );
        assert!(matches!(Expr::parse("b_open &"), Err(Error::Parse { position: 8, .. })));
        assert!(matches!(Expr::parse("(open"), Err(Error::Parse { position: 5, .. })));
        assert!(matches!(Expr::parse("open )"), Err(Error::Parse { position: 5, .. })));
        assert!(matches!(
            Expr::parse("t_star_open(0)"),
            Err(Error::Parse { position: 12, .. })
        ));
        assert_eq!(
            Expr::parse("open & bopen"),
            Err(Error::UnknownAtom {
                name: "bopen".into(),
                position: 7
            })
        );
        // atoms are case sensitive
        assert!(matches!(Expr::parse("Open"), Err(Error::UnknownAtom { .. })));
    }

    #[test]
    fn evaluates_on_sierpinski() {
        let sp = BiOperatorSpace::canonical(Topology::sierpinski());
        let a = Subset::singleton(0);
        let b = Subset::singleton(1);
        let e = Expr::parse("open & !closed").unwrap();
        assert!(e.eval(&sp, a).unwrap());
        assert!(!e.eval(&sp, b).unwrap());
        assert!(!Expr::parse("B_open").unwrap().eval(&sp, b).unwrap());
        assert!(Expr::parse("B_closed").unwrap().eval(&sp, b).unwrap());
        assert!(Expr::parse("t_star_open(3)").unwrap().eval(&sp, a).is_err());
    }
}
