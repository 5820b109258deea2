//! Line-oriented presentation format:
//!
//! ```text
//! group p=3 n=3 name=heisenberg_3_1
//! # comments run to end of line
//! g1^p = id
//! [g2,g1] = g3
//! ```

use std::collections::HashSet;

use super::{is_prime, PcError, PcPresentation, Word};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> PcError {
        PcError::Syntax { line: self.line, column: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.as_bytes().get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), PcError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.err(format!("expected '{}', found '{}'", c as char, x as char))),
            None => Err(self.err(format!("expected '{}', found end of line", c as char))),
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(kw) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64, PcError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text.as_bytes()[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        self.text[start..self.pos].parse().map_err(|_| PcError::Syntax {
            line: self.line,
            column: start + 1,
            message: "number too large".into(),
        })
    }

    fn token(&mut self) -> Result<&'a str, PcError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() {
            let c = self.text.as_bytes()[self.pos];
            if !c.is_ascii_whitespace() && c != b'#' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if start == self.pos {
            return Err(self.err("expected a name token"));
        }
        Ok(&self.text[start..self.pos])
    }

    /// `g<k>` as a 0-based index.
    fn generator(&mut self, ngens: usize) -> Result<usize, PcError> {
        self.skip_ws();
        let col = self.pos + 1;
        if !self.keyword("g") {
            return Err(self.err("expected a generator g<k>"));
        }
        let k = self.number()? as usize;
        if k == 0 || k > ngens {
            return Err(PcError::Syntax {
                line: self.line,
                column: col,
                message: format!("generator g{k} out of range 1..={ngens}"),
            });
        }
        Ok(k - 1)
    }

    fn word(&mut self, ngens: usize, prime: u32) -> Result<Word, PcError> {
        if self.keyword("id") {
            return Ok(Word::identity());
        }
        let mut letters: Vec<(usize, u32)> = Vec::new();
        loop {
            let col = self.pos + 1;
            let g = self.generator(ngens)?;
            let e = if self.peek() == Some(b'^') {
                self.pos += 1;
                self.number()?
            } else {
                1
            };
            if e >= prime as u64 {
                return Err(PcError::ExponentRange { gen: g + 1, exp: e, prime, line: Some(self.line) });
            }
            if letters.last().is_some_and(|&(h, _)| h >= g) {
                return Err(PcError::Syntax {
                    line: self.line,
                    column: col,
                    message: "generator indices in a word must strictly increase".into(),
                });
            }
            letters.push((g, e as u32));
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(Word::new(letters))
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    }
}

pub fn parse_presentation(text: &str) -> Result<PcPresentation, PcError> {
    let mut lines = text.lines().enumerate().map(|(k, l)| (k + 1, strip_comment(l)));
    let (header_line, header) = loop {
        match lines.next() {
            Some((k, l)) if l.trim().is_empty() => {
                let _ = k;
                continue;
            }
            Some(found) => break found,
            None => {
                return Err(PcError::Syntax { line: 1, column: 1, message: "missing 'group' header".into() })
            }
        }
    };
    let mut cur = Cursor { text: header, pos: 0, line: header_line };
    if !cur.keyword("group") {
        return Err(cur.err("expected 'group p=<prime> n=<count>'"));
    }
    cur.skip_ws();
    if !cur.keyword("p") {
        return Err(cur.err("expected 'p='"));
    }
    cur.expect(b'=')?;
    let prime = cur.number()?;
    if !cur.keyword("n") {
        return Err(cur.err("expected 'n='"));
    }
    cur.expect(b'=')?;
    let ngens = cur.number()? as usize;
    let mut name = None;
    if cur.keyword("name") {
        cur.expect(b'=')?;
        name = Some(cur.token()?.to_string());
    }
    if !cur.at_end() {
        return Err(cur.err("unexpected trailing input after header"));
    }
    if prime > u32::MAX as u64 || !is_prime(prime) {
        return Err(PcError::NotPrime(prime));
    }
    let prime = prime as u32;
    let mut pres = PcPresentation::new(prime, ngens)?;
    pres.set_name(name);

    let mut seen_power = HashSet::new();
    let mut seen_comm = HashSet::new();
    for (line, body) in lines {
        if body.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor { text: body, pos: 0, line };
        if cur.peek() == Some(b'[') {
            cur.pos += 1;
            let j = cur.generator(ngens)?;
            cur.expect(b',')?;
            let i = cur.generator(ngens)?;
            cur.expect(b']')?;
            cur.expect(b'=')?;
            let w = cur.word(ngens, prime)?;
            if !cur.at_end() {
                return Err(cur.err("unexpected trailing input"));
            }
            if !seen_comm.insert((j, i)) {
                return Err(PcError::DuplicateRule { rule: format!("[g{},g{}]", j + 1, i + 1), line: Some(line) });
            }
            pres.set_commutator_at(j, i, w, Some(line))?;
        } else {
            let g = cur.generator(ngens)?;
            cur.expect(b'^')?;
            if !cur.keyword("p") {
                let order = cur.number()?;
                if order != prime as u64 {
                    return Err(PcError::RelativeOrder { gen: g + 1, order, prime, line: Some(line) });
                }
            }
            cur.expect(b'=')?;
            let w = cur.word(ngens, prime)?;
            if !cur.at_end() {
                return Err(cur.err("unexpected trailing input"));
            }
            if !seen_power.insert(g) {
                return Err(PcError::DuplicateRule { rule: format!("g{}^p", g + 1), line: Some(line) });
            }
            pres.set_power_at(g, w, Some(line))?;
        }
    }
    Ok(pres)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_source() {
        let p = parse_presentation("group p=3 n=3 name=G1\n# Heisenberg\n[g2,g1] = g3   # c\n").unwrap();
        assert_eq!(p.prime(), 3);
        assert_eq!(p.ngens(), 3);
        assert_eq!(p.name(), Some("G1"));
        assert_eq!(p.commutator_rule(1, 0), Some(&Word::new([(2, 1)])));
        assert!(p.power_rule(0).is_identity());
        assert!(p.commutator_rule(2, 0).is_none());
    }

    #[test]
    fn bare_cyclic() {
        let p = parse_presentation("group p=5 n=1").unwrap();
        assert_eq!(p.order(), 5);
    }

    #[test]
    fn reversed_commutator_is_weighting_error() {
        let e = parse_presentation("group p=3 n=3\n[g1,g2] = g3\n").unwrap_err();
        assert!(matches!(e, PcError::Weighting { line: Some(2), .. }), "{e}");
    }

    #[test]
    fn unweighted_word_rejected() {
        let e = parse_presentation("group p=3 n=2\n[g2,g1] = g2\n").unwrap_err();
        assert!(matches!(e, PcError::Weighting { .. }));
        let e = parse_presentation("group p=3 n=2\ng2^p = g1\n").unwrap_err();
        assert!(matches!(e, PcError::Weighting { .. }));
    }

    #[test]
    fn non_prime_and_relative_order() {
        assert_eq!(parse_presentation("group p=4 n=2").unwrap_err(), PcError::NotPrime(4));
        let e = parse_presentation("group p=3 n=2\ng1^9 = g2\n").unwrap_err();
        assert!(matches!(e, PcError::RelativeOrder { order: 9, .. }));
        assert!(parse_presentation("group p=3 n=2\ng1^3 = g2\n").is_ok());
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_presentation("group p=3 n=2\n\n[g2 g1] = id\n").unwrap_err() {
            PcError::Syntax { line, column, .. } => {
                assert_eq!(line, 3);
                assert_eq!(column, 5);
            }
            e => panic!("unexpected {e}"),
        }
        assert!(matches!(parse_presentation("").unwrap_err(), PcError::Syntax { line: 1, .. }));
        assert!(matches!(parse_presentation("grp p=3 n=1").unwrap_err(), PcError::Syntax { .. }));
        assert!(matches!(
            parse_presentation("group p=3 n=3\ng1^p = g3*g2\n").unwrap_err(),
            PcError::Syntax { .. }
        ));
        assert!(matches!(
            parse_presentation("group p=3 n=2\ng1^p = g2^3\n").unwrap_err(),
            PcError::ExponentRange { .. }
        ));
        assert!(matches!(
            parse_presentation("group p=3 n=2\ng1^p = g2\ng1^p = id\n").unwrap_err(),
            PcError::DuplicateRule { .. }
        ));
    }

    #[test]
    fn print_round_trip() {
        let src = "group p=3 n=4 name=M81\ng2^p = g3\ng3^p = g4\n[g2,g1] = g4\n";
        let p = parse_presentation(src).unwrap();
        assert_eq!(p.to_string(), src);
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
    }
}
