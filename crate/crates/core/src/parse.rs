//! Text form of monomial ideals.
//!
//! ```text
//! [ring <n>;] gen (, gen)*      gen := factor (* factor)*      factor := x<i> | x<i>^<e>
//! ```
//!
//! Whitespace is ignored anywhere, variable indices are one-based, and without
//! a `ring` header the ring size is the largest index used.

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, Ring, MAX_EXPONENT};

/// Outcome of parsing, keeping track of discarded non-minimal generators.
#[derive(Debug, Clone)]
pub struct ParsedIdeal {
    pub ideal: MonomialIdeal,
    /// Number of input generators that were not minimal (or repeated).
    pub dropped_generators: usize,
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Cursor { chars, pos: 0, src }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |(o, _)| *o)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.error(format!("expected '{want}', found '{c}'")),
            None => self.error(format!("expected '{want}', found end of input")),
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(c) = self.peek() {
            let Some(d) = c.to_digit(10) else { break };
            value = match value.checked_mul(10).and_then(|v| v.checked_add(u64::from(d))) {
                Some(v) => v,
                None => return self.error("number too large"),
            };
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("expected a number");
        }
        Ok(value)
    }

    fn at_keyword(&self, kw: &str) -> bool {
        kw.chars()
            .enumerate()
            .all(|(k, c)| self.chars.get(self.pos + k).map(|(_, x)| *x) == Some(c))
    }
}

type Factor = (usize, u32, usize);

fn parse_generator(cur: &mut Cursor<'_>) -> Result<Vec<Factor>> {
    let mut factors = Vec::new();
    loop {
        let at = cur.offset();
        cur.expect('x')?;
        let index = cur.number()?;
        if index == 0 {
            return Err(Error::Parse {
                position: at,
                message: "variable indices are one-based".into(),
            });
        }
        let exponent = if cur.peek() == Some('^') {
            cur.bump();
            let e_at = cur.offset();
            let e = cur.number()?;
            if e == 0 {
                return Err(Error::Parse {
                    position: e_at,
                    message: "exponents must be at least 1".into(),
                });
            }
            if e > u64::from(MAX_EXPONENT) {
                return Err(Error::Parse {
                    position: e_at,
                    message: format!("exponent {e} exceeds 2^31-1"),
                });
            }
            e as u32
        } else {
            1
        };
        factors.push((index as usize, exponent, at));
        if cur.peek() == Some('*') {
            cur.bump();
        } else {
            return Ok(factors);
        }
    }
}

/// Parses an ideal, reporting how many generators were non-minimal.
pub fn parse_ideal_detailed(text: &str) -> Result<ParsedIdeal> {
    let mut cur = Cursor::new(text);
    let mut declared: Option<usize> = None;
    if cur.at_keyword("ring") {
        cur.pos += 4;
        let at = cur.offset();
        let n = cur.number()?;
        if n == 0 {
            return Err(Error::Parse {
                position: at,
                message: "ring needs at least one variable".into(),
            });
        }
        declared = Some(n as usize);
        cur.expect(';')?;
    }
    if cur.peek().is_none() {
        return cur.error("expected at least one generator");
    }
    let mut raw = Vec::new();
    loop {
        raw.push(parse_generator(&mut cur)?);
        match cur.bump() {
            None => break,
            Some(',') => continue,
            Some(c) => {
                cur.pos -= 1;
                return cur.error(format!("unexpected '{c}'"));
            }
        }
    }
    let max_index = raw.iter().flatten().map(|f| f.0).max().unwrap_or(1);
    let n = match declared {
        Some(n) => {
            if let Some(&(idx, _, at)) = raw.iter().flatten().find(|f| f.0 > n) {
                return Err(Error::Parse {
                    position: at,
                    message: format!("x{idx} is outside the declared ring of {n} variables"),
                });
            }
            n
        }
        None => max_index,
    };
    let mut gens = Vec::with_capacity(raw.len());
    for factors in &raw {
        let mut exps = vec![0u32; n];
        for &(idx, e, at) in factors {
            let slot = &mut exps[idx - 1];
            match slot.checked_add(e).filter(|v| *v <= MAX_EXPONENT) {
                Some(v) => *slot = v,
                None => {
                    return Err(Error::Parse {
                        position: at,
                        message: "exponent exceeds 2^31-1".into(),
                    })
                }
            }
        }
        gens.push(Monomial::from_exponents(exps));
    }
    let count = gens.len();
    let ideal = MonomialIdeal::new(Ring::standard(n), gens)?;
    Ok(ParsedIdeal {
        dropped_generators: count - ideal.generators().len(),
        ideal,
    })
}

pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    parse_ideal_detailed(text).map(|p| p.ideal)
}

/// Parses a single monomial such as `x1*x2^2` (or `1`) in a ring of `n` variables.
pub fn parse_monomial(text: &str, n: usize) -> Result<Monomial> {
    if text.trim() == "1" {
        return Ok(Monomial::one(n));
    }
    let ideal = parse_ideal(&format!("ring {n}; {text}"))?;
    match ideal.generators() {
        [g] => Ok(g.clone()),
        _ => Err(Error::Parse {
            position: 0,
            message: "expected a single monomial".into(),
        }),
    }
}
