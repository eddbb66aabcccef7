//! Text forms accepted on the command line: algebra elements, weights,
//! pair sequences and partitions.

use superalg_core::algebra::normal_form;
use superalg_core::rational::parse_q;
use superalg_core::{AlgebraElement, AlgebraKind, Generator, Signature, Weight, Q};

use crate::CliError;

/// An element together with the text it was read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedElement {
    pub source: String,
    pub element: AlgebraElement,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..]
                .chars()
                .next()
                .map_or(0, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn error(&self, msg: impl Into<String>) -> CliError {
        CliError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next().filter(|&c| f(c)) {
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn digits(&mut self) -> Result<&'a str, CliError> {
        let d = self.take_while(|c| c.is_ascii_digit());
        if d.is_empty() {
            Err(self.error("expected digits"))
        } else {
            Ok(d)
        }
    }

    fn rational(&mut self) -> Result<Q, CliError> {
        let start = self.pos;
        let n = self.digits()?;
        let d = if self.eat('/') { self.digits()? } else { "1" };
        parse_q(&format!("{n}/{d}")).ok_or(CliError::Syntax {
            pos: start,
            msg: "zero denominator".into(),
        })
    }

    fn factor(&mut self, sig: &Signature) -> Result<Vec<Generator>, CliError> {
        let start = self.pos;
        let name = self.take_while(|c| c.is_ascii_alphabetic());
        let (kind, raising) = match name {
            "x" => (AlgebraKind::Weyl, true),
            "d" => (AlgebraKind::Weyl, false),
            "xi" => (AlgebraKind::Clifford, true),
            "eta" => (AlgebraKind::Clifford, false),
            "" => return Err(self.error("expected a generator")),
            _ => {
                return Err(CliError::Syntax {
                    pos: start,
                    msg: format!("unknown generator {name:?}"),
                })
            }
        };
        if kind != sig.kind {
            return Err(CliError::GeneratorMismatch {
                generator: name.into(),
                signature: sig.to_string(),
            });
        }
        self.expect('[')?;
        let neg = self.eat('-');
        let idx_pos = self.pos;
        let index: i32 = self.digits()?.parse().map_err(|_| CliError::Syntax {
            pos: idx_pos,
            msg: "index too large".into(),
        })?;
        let index = if neg { -index } else { index };
        self.expect(']')?;
        if index == 0 {
            return Err(superalg_core::Error::ZeroIndex.into());
        }
        let exp: u32 = if self.eat('^') {
            let p = self.pos;
            self.digits()?.parse().map_err(|_| CliError::Syntax {
                pos: p,
                msg: "exponent too large".into(),
            })?
        } else {
            1
        };
        if exp > 1 && sig.is_fermionic(index) {
            return Err(CliError::Syntax {
                pos: start,
                msg: format!("exponent {exp} at nilpotent index {index}"),
            });
        }
        let g = if raising {
            Generator::raising(index)
        } else {
            Generator::lowering(index)
        };
        Ok(vec![g; exp as usize])
    }

    fn at_factor(&mut self) -> bool {
        self.peek().is_some_and(|c| c.is_ascii_alphabetic())
    }

    fn term(&mut self, sig: &Signature) -> Result<(Q, Vec<Generator>), CliError> {
        let mut coeff = Q::from_integer(1.into());
        let mut word = Vec::new();
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            coeff = self.rational()?;
            if !self.eat('*') {
                return Ok((coeff, word));
            }
        }
        word.extend(self.factor(sig)?);
        loop {
            if self.eat('*') || self.at_factor() {
                word.extend(self.factor(sig)?);
            } else {
                return Ok((coeff, word));
            }
        }
    }
}

/// Reads `text` and normal-orders it in `sig`.
pub fn parse_element(text: &str, sig: &Signature) -> Result<ParsedElement, CliError> {
    let mut c = Cursor { src: text, pos: 0 };
    let mut total = AlgebraElement::zero(*sig);
    let mut negative = c.eat('-');
    loop {
        let (coeff, word) = c.term(sig)?;
        let coeff = if negative { -coeff } else { coeff };
        total = total.add(&normal_form(&word, coeff, sig)?)?;
        match c.peek() {
            None => break,
            Some('+') => negative = false,
            Some('-') => negative = true,
            Some(_) => return Err(c.error("expected '+' or '-'")),
        }
        c.pos += 1;
    }
    Ok(ParsedElement {
        source: text.to_string(),
        element: total,
    })
}

/// `i=v` entries separated by commas, optionally in braces; the keys `+tail`
/// and `-tail` set the constant tails. `0` or the empty string is zero.
pub fn parse_weight(text: &str) -> Result<Weight, CliError> {
    let body = text
        .trim()
        .trim_start_matches('{')
        .trim_end_matches('}')
        .trim();
    if body.is_empty() || body == "0" {
        return Ok(Weight::zero());
    }
    let bad = |m: String| CliError::Syntax { pos: 0, msg: m };
    let mut entries = Vec::new();
    let (mut pos_tail, mut neg_tail) = (Q::from_integer(0.into()), Q::from_integer(0.into()));
    for part in body.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| bad(format!("expected index=value in {part:?}")))?;
        let v = parse_q(v).ok_or_else(|| bad(format!("bad rational {v:?}")))?;
        match k.trim() {
            "+tail" => pos_tail = v,
            "-tail" => neg_tail = v,
            k => {
                let i: i32 = k.parse().map_err(|_| bad(format!("bad index {k:?}")))?;
                if i == 0 {
                    return Err(superalg_core::Error::ZeroIndex.into());
                }
                entries.push((i, v));
            }
        }
    }
    let window = entries
        .iter()
        .map(|(i, _)| i.unsigned_abs())
        .max()
        .unwrap_or(0);
    let mut w = Weight::with_tails(pos_tail, neg_tail, window);
    for (i, v) in entries {
        w.set(i, v);
    }
    Ok(w)
}

/// `a:b` pairs separated by commas, e.g. `1:0,2:0,3:0`.
pub fn parse_pairs(text: &str) -> Result<Vec<(u32, u8)>, CliError> {
    let bad = |m: String| CliError::Syntax { pos: 0, msg: m };
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|p| {
            let (a, b) = p
                .split_once(':')
                .ok_or_else(|| bad(format!("expected a:b in {p:?}")))?;
            let a = a
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad a in {p:?}")))?;
            let b = b
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad b in {p:?}")))?;
            Ok((a, b))
        })
        .collect()
}

/// Comma-separated parts, e.g. `3,2,1`.
pub fn parse_partition(text: &str) -> Result<Vec<u32>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|p| {
            p.trim().parse().map_err(|_| CliError::Syntax {
                pos: 0,
                msg: format!("bad part {p:?}"),
            })
        })
        .collect()
}
