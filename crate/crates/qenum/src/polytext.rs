//! Text syntax for exact polynomials.
//!
//! ```text
//! 1/2*x^2 + 3/2*y^2
//! (1/2 - w + 3*w^2)*M_0_1 - M_1_1
//! ```
//!
//! Inside parentheses `w` is the root of unity ζ_p; outside it is an
//! ordinary variable name. Whitespace, including newlines, is ignored and
//! `#` starts a comment running to the end of the line.

use std::fmt;

use qenum_core::algebra::{CycloNumber, MultiPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

struct Cursor<'a> {
    chars: Vec<(usize, usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        let mut chars = Vec::new();
        let (mut line, mut col) = (1, 1);
        let mut in_comment = false;
        for ch in src.chars() {
            if ch == '#' {
                in_comment = true;
            }
            if ch == '\n' {
                in_comment = false;
            } else if !in_comment && !ch.is_whitespace() {
                chars.push((line, col, ch));
            }
            if ch == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        Cursor { chars, pos: 0, src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.2)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (line, col) = match self.chars.get(self.pos) {
            Some(&(l, c, _)) => (l, c),
            None => {
                let lines = self.src.lines().count().max(1);
                let last = self.src.lines().last().map_or(0, |l| l.chars().count());
                (lines, last + 1)
            }
        };
        ParseError {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, ch: char) -> Result<(), ParseError> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{ch}'")))
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().map(|c| c.2).collect())
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if !self.eat('^') {
            return Ok(1);
        }
        let d = self.digits().ok_or_else(|| self.err("expected an exponent"))?;
        d.parse().map_err(|_| self.err("exponent too large"))
    }

    /// `int` or `int/int`.
    fn rational(&mut self) -> Result<Option<Rational>, ParseError> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        if !self.eat('/') {
            return Ok(Some(num.parse().expect("digit string")));
        }
        let den_at = self.pos;
        let den = self.digits().ok_or_else(|| self.err("expected a denominator"))?;
        if den.bytes().all(|b| b == b'0') {
            self.pos = den_at;
            return Err(self.err("zero denominator"));
        }
        Ok(Some(format!("{num}/{den}").parse().expect("digit strings")))
    }

    fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return None;
        }
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().map(|c| c.2).collect())
    }
}

/// Parses `text` as a polynomial over ℚ(ζ_prime) in `vars`.
pub fn parse_poly(text: &str, prime: u32, vars: &[String]) -> Result<MultiPoly, ParseError> {
    let mut cur = Cursor::new(text);
    if cur.peek().is_none() {
        return Err(cur.err("empty polynomial"));
    }
    let mut terms = Vec::new();
    let mut negate = cur.eat('-');
    loop {
        let (exps, c) = term(&mut cur, prime, vars)?;
        terms.push((exps, if negate { -&c } else { c }));
        match cur.peek() {
            None => break,
            Some('+') => negate = false,
            Some('-') => negate = true,
            Some(ch) => return Err(cur.err(format!("unexpected '{ch}'"))),
        }
        cur.bump();
    }
    Ok(MultiPoly::from_terms(prime, vars.to_vec(), terms).expect("exponents sized to vars"))
}

fn term(cur: &mut Cursor, prime: u32, vars: &[String]) -> Result<(Vec<u32>, CycloNumber), ParseError> {
    let mut exps = vec![0; vars.len()];
    let coeff = if cur.peek() == Some('(') {
        cur.bump();
        let c = cyclo(cur, prime)?;
        cur.expect(')')?;
        Some(c)
    } else {
        cur.rational()?.map(|r| CycloNumber::from_rational(prime, r))
    };
    let need_factor = match &coeff {
        Some(_) => cur.eat('*'),
        None => true,
    };
    if need_factor {
        loop {
            let at = cur.pos;
            let name = cur.ident().ok_or_else(|| cur.err("expected a variable"))?;
            let Some(i) = vars.iter().position(|v| *v == name) else {
                cur.pos = at;
                return Err(cur.err(format!("unknown variable '{name}', expected one of {}", vars.join(", "))));
            };
            exps[i] += cur.exponent()?;
            if !cur.eat('*') {
                break;
            }
        }
    }
    Ok((exps, coeff.unwrap_or_else(|| CycloNumber::one(prime))))
}

fn cyclo(cur: &mut Cursor, prime: u32) -> Result<CycloNumber, ParseError> {
    let mut acc = CycloNumber::zero(prime);
    let mut negate = cur.eat('-');
    loop {
        let r = cur.rational()?;
        let power = if r.is_none() || cur.eat('*') {
            if !cur.eat('w') {
                return Err(cur.err("expected 'w'"));
            }
            cur.exponent()?
        } else {
            0
        };
        let mut t = CycloNumber::zeta_pow(prime, power);
        if let Some(r) = r {
            t = t.scale(&r);
        }
        acc = if negate { &acc - &t } else { &acc + &t };
        match cur.peek() {
            Some('+') => negate = false,
            Some('-') => negate = true,
            _ => return Ok(acc),
        }
        cur.bump();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use qenum_core::algebra::{rat, var_names};

    fn xyzw() -> Vec<String> {
        var_names(&["x", "y", "z", "w"])
    }

    #[test]
    fn parses_canonical_examples() {
        let vars = var_names(&["x", "y"]);
        let f = parse_poly("1/2*x^2 + 3/2*y^2", 2, &vars).unwrap();
        assert_eq!(f.to_string(), "1/2*x^2 + 3/2*y^2");
        let g = parse_poly("(1/2 - w + 3*w^2)*x", 5, &vars).unwrap();
        assert_eq!(g.to_string(), "(1/2 - w + 3*w^2)*x");
        assert!(parse_poly("0", 2, &vars).unwrap().is_zero());
    }

    #[test]
    fn w_is_a_variable_outside_parentheses() {
        let f = parse_poly("x*z - (w)*w^2", 3, &xyzw()).unwrap();
        assert_eq!(f.coeff(&[0, 0, 0, 2]), -&CycloNumber::zeta_pow(3, 1));
    }

    #[test]
    fn reduces_high_powers_of_w() {
        // ω² = −1 − ω
        let f = parse_poly("(w^2)", 3, &var_names(&["x"])).unwrap();
        assert_eq!(f.to_string(), "(-1 - w)");
    }

    #[test]
    fn accumulates_repeated_monomials() {
        let f = parse_poly("x*y + y*x - 2*x*y + 1", 2, &var_names(&["x", "y"])).unwrap();
        assert_eq!(f.to_string(), "1");
    }

    #[test]
    fn diagnostics_carry_positions() {
        let vars = var_names(&["x", "y"]);
        let e = parse_poly("x +\n  3*q", 2, &vars).unwrap_err();
        assert_eq!((e.line, e.col), (2, 5));
        let e = parse_poly("1/0*x", 2, &vars).unwrap_err();
        assert_eq!((e.line, e.col, e.msg.as_str()), (1, 3, "zero denominator"));
        assert!(parse_poly("", 2, &vars).is_err());
        assert!(parse_poly("x ^", 2, &vars).is_err());
        assert!(parse_poly("(1 + w", 3, &vars).is_err());
    }

    #[test]
    fn comments_are_ignored() {
        let f = parse_poly("# bell\nx^2 # leading\n + y^2\n", 2, &var_names(&["x", "y"])).unwrap();
        assert_eq!(f.to_string(), "x^2 + y^2");
    }

    fn arb_poly(p: u32) -> impl Strategy<Value = MultiPoly> {
        let coeff = prop::collection::vec((-20i64..20, 1i64..6), (p - 1) as usize)
            .prop_map(move |cs| {
                let rs: Vec<Rational> = cs.into_iter().map(|(a, b)| rat(a, b)).collect();
                CycloNumber::from_power_coeffs(p, &rs)
            });
        let term = (prop::collection::vec(0u32..4, 4), coeff);
        prop::collection::vec(term, 0..6)
            .prop_map(move |ts| MultiPoly::from_terms(p, xyzw(), ts).unwrap())
    }

    proptest! {
        #[test]
        fn round_trip_rational(f in arb_poly(2)) {
            prop_assert_eq!(parse_poly(&f.to_string(), 2, &xyzw()).unwrap(), f);
        }

        #[test]
        fn round_trip_cyclotomic(f in arb_poly(5)) {
            prop_assert_eq!(parse_poly(&f.to_string(), 5, &xyzw()).unwrap(), f);
        }
    }
}
