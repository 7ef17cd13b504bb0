use super::{validate_fragment, Formula, Fragment, RESERVED};
use crate::error::{Error, Result};

type Unary = fn(Formula) -> Formula;

/// Parses `text` and checks the result against `fragment`.
///
/// Precedence from loosest to tightest: `<->`, `->` (right-assoc), `|`, `&`,
/// then the prefix operators `~`, `C`, and the boxes.
pub fn parse(text: &str, fragment: Fragment) -> Result<Formula> {
    let f = parse_unchecked(text)?;
    validate_fragment(&f, fragment).map_err(|violations| Error::Fragment { fragment, violations })?;
    Ok(f)
}

/// Parses without a fragment check. The result may mix every operator.
pub fn parse_unchecked(text: &str) -> Result<Formula> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let f = p.iff()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self, lit: &str) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(lit.as_bytes())
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.peek(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{lit}`")))
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.implication()?;
        while self.eat("<->") {
            let rhs = self.implication()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if self.eat("->") {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while self.eat("|") {
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat("&") {
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        self.skip_ws();
        if self.eat("~") {
            return Ok(Formula::not(self.unary()?));
        }
        // Longest spellings first so `[u']` is not read as `[u`.
        let prefixes: [(&str, Unary); 6] = [
            ("[u']", Formula::box_u_prime),
            ("<u'>", Formula::diamond_u_prime),
            ("[u]", Formula::box_u),
            ("<u>", Formula::diamond_u),
            ("[U]", Formula::ubox),
            ("<U>", Formula::udiamond),
        ];
        for (lit, build) in prefixes {
            if self.eat(lit) {
                return Ok(build(self.unary()?));
            }
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("(") {
            let f = self.iff()?;
            self.expect(")")?;
            return Ok(f);
        }
        if self.eat("#T") {
            return Ok(Formula::top());
        }
        if self.eat("#F") {
            return Ok(Formula::bot());
        }
        let word = self.word();
        match word {
            "" => Err(self.err("expected a formula")),
            "_t" => Err(Error::ReservedSymbol { pos: start }),
            "C" => Ok(Formula::constancy(self.unary()?)),
            "D" if self.eat("^{") => {
                let cond = self.iff()?;
                self.expect("}")?;
                self.expect("(")?;
                let premises = self.optional_list(";")?;
                self.expect(";")?;
                let concl = self.iff()?;
                self.expect(")")?;
                Ok(Formula::reldep(cond, premises, concl))
            }
            "D" => {
                self.expect("(")?;
                let premises = self.optional_list(";")?;
                self.expect(";")?;
                let concl = self.iff()?;
                self.expect(")")?;
                Ok(Formula::dep(premises, concl))
            }
            "I" => {
                self.expect("(")?;
                let left = self.list()?;
                self.expect(";")?;
                let cond = self.optional_list(";")?;
                self.expect(";")?;
                let right = self.list()?;
                self.expect(")")?;
                Ok(Formula::indep(left, cond, right))
            }
            w if w.as_bytes()[0].is_ascii_lowercase() => Ok(Formula::prop(w)),
            w => {
                self.pos = start;
                Err(self.err(format!("unknown operator `{w}`")))
            }
        }
    }

    /// Identifier-like run: `[A-Za-z_][A-Za-z0-9_]*`.
    fn word(&mut self) -> &'a str {
        let start = self.pos;
        let ok_first = |b: u8| b.is_ascii_alphabetic() || b == b'_';
        if self.pos < self.src.len() && ok_first(self.src[self.pos]) {
            self.pos += 1;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
            {
                self.pos += 1;
            }
        }
        let w = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice");
        if w.starts_with('_') && w != RESERVED {
            self.pos = start;
            return "";
        }
        w
    }

    fn list(&mut self) -> Result<Vec<Formula>> {
        let mut items = vec![self.iff()?];
        while self.eat(",") {
            items.push(self.iff()?);
        }
        Ok(items)
    }

    fn optional_list(&mut self, terminator: &str) -> Result<Vec<Formula>> {
        if self.peek(terminator) {
            Ok(Vec::new())
        } else {
            self.list()
        }
    }
}
