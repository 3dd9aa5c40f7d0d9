//! Line-oriented stabilizer code files.
//!
//! ```text
//! # Bell pair
//! q 2
//! n 2
//! gen 1 1 | 0 0
//! gen 0 0 | 1 1
//! ```
//!
//! Extension fields may name their modulus by coefficients, constant term
//! first: `modulus 1 1 1` is `t² + t + 1`. Field elements are written as
//! indices `Σ c_k p^k` with the constant coefficient varying fastest.

use std::fmt;

use qenum_core::code::StabilizerCode;
use qenum_core::error_basis::ErrorLabel;
use qenum_core::field::FieldSpec;
use qenum_core::Error as CoreError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeFileError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for CodeFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for CodeFileError {}

struct Token<'a> {
    col: usize,
    text: &'a str,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let line = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain([(line.len(), ' ')]) {
        let sep = ch.is_whitespace() || ch == '|';
        match (start, sep) {
            (None, false) => start = Some(i),
            (Some(s), true) => {
                out.push(Token { col: s + 1, text: &line[s..i] });
                start = None;
            }
            _ => {}
        }
        if ch == '|' {
            out.push(Token { col: i + 1, text: "|" });
        }
    }
    out
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> CodeFileError {
    CodeFileError {
        line,
        col,
        msg: msg.into(),
    }
}

fn number(line: usize, tok: &Token) -> Result<u32, CodeFileError> {
    tok.text
        .parse()
        .map_err(|_| err(line, tok.col, format!("expected a non-negative integer, found '{}'", tok.text)))
}

fn single_value(line: usize, toks: &[Token]) -> Result<u32, CodeFileError> {
    match toks {
        [_, v] => number(line, v),
        [kw] => Err(err(line, kw.col + kw.text.len(), format!("'{}' needs a value", kw.text))),
        [_, _, extra, ..] => Err(err(line, extra.col, "unexpected trailing input")),
        [] => unreachable!("caller checked the keyword"),
    }
}

fn ensure_spec(
    spec: &mut Option<FieldSpec>,
    q: Option<(u32, usize)>,
    modulus: &Option<Vec<u32>>,
    line: usize,
) -> Result<(), CodeFileError> {
    if spec.is_some() {
        return Ok(());
    }
    let (qv, qline) = q.ok_or_else(|| err(line, 1, "'q' must come first"))?;
    let built = match modulus {
        Some(m) => FieldSpec::with_modulus(qv, m),
        None => FieldSpec::new(qv),
    };
    *spec = Some(built.map_err(|e| err(qline, 1, e.to_string()))?);
    Ok(())
}

pub fn parse_code(text: &str) -> Result<StabilizerCode, CodeFileError> {
    let mut q: Option<(u32, usize)> = None;
    let mut modulus: Option<Vec<u32>> = None;
    let mut spec: Option<FieldSpec> = None;
    let mut n: Option<usize> = None;
    let mut gens: Vec<(ErrorLabel, usize)> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        last_line = ln;
        let toks = tokens(raw);
        let Some(kw) = toks.first() else { continue };
        match kw.text {
            "q" => {
                if q.is_some() {
                    return Err(err(ln, kw.col, "duplicate 'q'"));
                }
                q = Some((single_value(ln, &toks)?, ln));
            }
            "modulus" => {
                if q.is_none() {
                    return Err(err(ln, kw.col, "'modulus' must follow 'q'"));
                }
                if modulus.is_some() || spec.is_some() {
                    return Err(err(ln, kw.col, "'modulus' must appear once, before 'n' and 'gen'"));
                }
                if toks.len() < 2 {
                    return Err(err(ln, kw.col + kw.text.len(), "'modulus' needs coefficients"));
                }
                let coeffs = toks[1..].iter().map(|t| number(ln, t)).collect::<Result<Vec<_>, _>>()?;
                modulus = Some(coeffs);
                ensure_spec(&mut spec, q, &modulus, ln).map_err(|e| err(ln, toks[1].col, e.msg))?;
            }
            "n" => {
                if n.is_some() {
                    return Err(err(ln, kw.col, "duplicate 'n'"));
                }
                let v = single_value(ln, &toks)?;
                if v == 0 {
                    return Err(err(ln, toks[1].col, "'n' must be positive"));
                }
                n = Some(v as usize);
            }
            "gen" => {
                ensure_spec(&mut spec, q, &modulus, ln)?;
                let nv = n.ok_or_else(|| err(ln, kw.col, "'n' must precede 'gen'"))?;
                let bar = toks
                    .iter()
                    .position(|t| t.text == "|")
                    .ok_or_else(|| err(ln, kw.col, "expected 'a1 .. an | b1 .. bn'"))?;
                let (a, b) = (&toks[1..bar], &toks[bar + 1..]);
                for (part, side) in [(a, "X"), (b, "Z")] {
                    if part.len() != nv {
                        let col = part.first().map_or(toks[bar].col, |t| t.col);
                        return Err(err(ln, col, format!("{side} part has {} entries, expected {nv}", part.len())));
                    }
                }
                let sp = spec.as_ref().expect("ensured above");
                let mut values = Vec::with_capacity(2 * nv);
                for t in a.iter().chain(b) {
                    let v = number(ln, t)?;
                    if v >= sp.q() {
                        return Err(err(ln, t.col, format!("element {v} out of range for q = {}", sp.q())));
                    }
                    values.push(v);
                }
                let label = ErrorLabel::from_indices(sp, &values[..nv], &values[nv..])
                    .map_err(|e| err(ln, kw.col, e.to_string()))?;
                gens.push((label, ln));
            }
            other => return Err(err(ln, kw.col, format!("unknown directive '{other}'"))),
        }
    }

    let end = last_line.max(1);
    if q.is_none() {
        return Err(err(end, 1, "missing 'q'"));
    }
    ensure_spec(&mut spec, q, &modulus, end)?;
    let n = n.ok_or_else(|| err(end, 1, "missing 'n'"))?;
    let lines: Vec<usize> = gens.iter().map(|g| g.1).collect();
    let labels = gens.into_iter().map(|g| g.0).collect();
    StabilizerCode::new(spec.expect("ensured above"), n, labels).map_err(|e| match e {
        CoreError::NonCommuting(i, j) => err(lines[j], 1, format!("generator {} does not commute with generator {}", j + 1, i + 1)),
        CoreError::InconsistentPhase => err(
            *lines.last().unwrap_or(&end),
            1,
            "generators with phase +1 close to a group containing a nontrivial multiple of the identity",
        ),
        other => err(end, 1, other.to_string()),
    })
}

/// Renders a code back into the file format.
pub fn render_code(code: &StabilizerCode) -> String {
    let mut s = format!("q {}\n", code.q());
    let spec = code.spec();
    if spec.s() > 1 {
        let m: Vec<String> = spec.modulus().iter().map(u32::to_string).collect();
        s += &format!("modulus {}\n", m.join(" "));
    }
    s += &format!("n {}\n", code.n());
    for g in code.generators() {
        let a: Vec<String> = g.a().iter().map(|e| e.index().to_string()).collect();
        let b: Vec<String> = g.b().iter().map(|e| e.index().to_string()).collect();
        s += &format!("gen {} | {}\n", a.join(" "), b.join(" "));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_pair() {
        let c = parse_code("# Bell\nq 2\nn 2\ngen 1 1 | 0 0\ngen 0 0|1 1 # ZZ\n").unwrap();
        assert_eq!(c.group().len(), 4);
        assert_eq!(render_code(&c), "q 2\nn 2\ngen 1 1 | 0 0\ngen 0 0 | 1 1\n");
    }

    #[test]
    fn round_trip_with_modulus() {
        let src = "q 4\nmodulus 1 1 1\nn 1\ngen 1 | 1\n";
        let c = parse_code(src).unwrap();
        assert_eq!(render_code(&c), src);
        assert_eq!(render_code(&parse_code(&render_code(&c)).unwrap()), src);
    }

    #[test]
    fn no_generators() {
        let c = parse_code("q 3\nn 1\n").unwrap();
        assert_eq!(c.group().len(), 1);
    }

    fn pos(src: &str) -> (usize, usize) {
        let e = parse_code(src).unwrap_err();
        (e.line, e.col)
    }

    #[test]
    fn diagnostics() {
        assert_eq!(pos("q 2\nn 2\ngen 1 x | 0 0\n"), (3, 7));
        assert_eq!(pos("q 2\nn 2\ngen 1 1 0 0\n"), (3, 1));
        assert_eq!(pos("q 2\nn 2\ngen 1 | 0 0\n"), (3, 5));
        assert_eq!(pos("q 2\nn 1\ngen 2 | 0\n"), (3, 5));
        assert_eq!(pos("q 2\nfoo 3\n"), (2, 1));
        assert_eq!(pos("q\n"), (1, 2));
        assert_eq!(pos("n 1\ngen 0 | 0\n"), (2, 1));
        assert_eq!(pos("q 6\nn 1\n"), (1, 1));
        assert_eq!(pos("q 4\nmodulus 1 0 1\nn 1\n"), (2, 9));
        assert_eq!(pos("q 2\nn 1\ngen 1 | 0\ngen 0 | 1\n"), (4, 1));
        assert_eq!(pos("q 2\nn 1\ngen 1 | 1\n"), (3, 1));
        assert_eq!(pos("q 2\n"), (1, 1));
        assert_eq!(pos("q 2\nn 0\n"), (2, 3));
    }
}
