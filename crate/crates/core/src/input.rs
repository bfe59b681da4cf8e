//! Problem files: a small line-oriented text format for polynomial systems.
//!
//! ```text
//! # Example
//! vars: x y
//! order: lex
//! division: janet
//! x^2*y - 1
//! x*y^2 - 1
//! ```
//!
//! `vars:` and `order:` must precede the polynomials; `division:` is
//! optional. Coefficients are integers or fractions `a/b`; each polynomial is
//! stored as its primitive integer multiple.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::division::Division;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub vars: Vec<String>,
    pub order: MonomialOrder,
    pub division: Option<Division>,
    pub polys: Vec<Polynomial>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_system(text: &str) -> Result<ProblemFile> {
    let mut vars: Option<Vec<String>> = None;
    let mut order: Option<MonomialOrder> = None;
    let mut division = None;
    let mut polys = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let offset = content.len() - content.trim_start().len();
        if let Some((key, value)) = header(trimmed) {
            let value_col = offset + trimmed.find(':').expect("header colon") + 2;
            match key.as_str() {
                "vars" => {
                    let names: Vec<String> = value
                        .split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|s| !s.is_empty())
                        .map(str::to_string)
                        .collect();
                    if names.is_empty() {
                        return Err(err(line_no, value_col, "no variables declared"));
                    }
                    for (i, name) in names.iter().enumerate() {
                        if !is_identifier(name) {
                            return Err(err(line_no, value_col, format!("invalid variable name '{name}'")));
                        }
                        if names[..i].contains(name) {
                            return Err(err(line_no, value_col, format!("variable '{name}' declared twice")));
                        }
                    }
                    vars = Some(names);
                }
                "order" => {
                    order = Some(
                        MonomialOrder::from_name(value.trim())
                            .ok_or_else(|| err(line_no, value_col, format!("unknown order '{}'", value.trim())))?,
                    );
                }
                "division" => {
                    division = Some(
                        Division::from_name(value.trim()).ok_or_else(|| {
                            err(line_no, value_col, format!("unknown division '{}'", value.trim()))
                        })?,
                    );
                }
                _ => return Err(err(line_no, offset + 1, format!("unknown header '{key}'"))),
            }
            continue;
        }
        let Some(vars) = &vars else {
            return Err(err(line_no, offset + 1, "polynomial before the 'vars:' header"));
        };
        let Some(order) = order else {
            return Err(err(line_no, offset + 1, "polynomial before the 'order:' header"));
        };
        let body = trimmed.trim_end_matches([',', ';']);
        let p = parse_at(body, vars, order, line_no, offset + 1)?;
        if p.is_zero() {
            return Err(err(line_no, offset + 1, "polynomial is zero"));
        }
        polys.push(p);
    }
    let vars = vars.ok_or_else(|| err(last_line.max(1), 1, "missing 'vars:' header"))?;
    let order = order.ok_or_else(|| err(last_line.max(1), 1, "missing 'order:' header"))?;
    if polys.is_empty() {
        return Err(err(last_line.max(1), 1, "the system has no polynomials"));
    }
    Ok(ProblemFile {
        vars,
        order,
        division,
        polys,
    })
}

fn header(line: &str) -> Option<(String, &str)> {
    let (key, value) = line.split_once(':')?;
    let key = key.trim();
    if key.chars().all(|c| c.is_ascii_alphabetic()) && !key.is_empty() {
        Some((key.to_ascii_lowercase(), value))
    } else {
        None
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses a single polynomial over the given variables.
pub fn parse_polynomial(text: &str, vars: &[String], order: MonomialOrder) -> Result<Polynomial> {
    parse_at(text, vars, order, 1, 1)
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col0: usize,
    vars: &'a [String],
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        err(self.line, self.col0 + self.pos, message)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn exponent(&mut self) -> Result<u32> {
        let start = self.pos;
        let n = self.integer()?;
        u32::try_from(n).map_err(|_| err(self.line, self.col0 + start, "exponent too large"))
    }

    fn coefficient(&mut self) -> Result<BigRational> {
        let num = self.integer()?;
        self.skip_ws();
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let den = self.integer()?;
            if den.is_zero() {
                return Err(err(self.line, self.col0 + at, "zero denominator"));
            }
            return Ok(BigRational::new(num, den));
        }
        Ok(BigRational::from_integer(num))
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        if name.is_empty() || !is_identifier(&name) {
            return Err(err(self.line, self.col0 + start, "expected a variable"));
        }
        let var = self
            .vars
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| err(self.line, self.col0 + start, format!("undeclared variable '{name}'")))?;
        self.skip_ws();
        let mut e = 1;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            e = self.exponent()?;
        }
        exps[var] += e;
        Ok(())
    }

    fn term(&mut self) -> Result<(BigRational, Monomial)> {
        let mut coeff = BigRational::one();
        let mut exps = vec![0u32; self.vars.len()];
        let mut first = true;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= self.coefficient()?,
                Some(c) if c.is_ascii_alphabetic() || c == '_' => self.factor(&mut exps)?,
                Some(_) if first => return Err(self.error("expected a term")),
                None => return Err(self.error("unexpected end of input")),
                Some(c) => return Err(self.error(format!("unexpected '{c}'"))),
            }
            first = false;
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                continue;
            }
            return Ok((coeff, Monomial::new(exps)));
        }
    }
}

fn parse_at(text: &str, vars: &[String], order: MonomialOrder, line: usize, col0: usize) -> Result<Polynomial> {
    let mut cur = Cursor {
        chars: text.chars().collect(),
        pos: 0,
        line,
        col0,
        vars,
    };
    let mut terms: Vec<(BigRational, Monomial)> = Vec::new();
    cur.skip_ws();
    if cur.peek().is_none() {
        return Err(cur.error("empty polynomial"));
    }
    let mut first = true;
    loop {
        cur.skip_ws();
        let Some(c) = cur.peek() else { break };
        let mut negative = false;
        if c == '+' || c == '-' {
            negative = c == '-';
            cur.pos += 1;
        } else if !first {
            return Err(cur.error(format!("expected '+' or '-', found '{c}'")));
        }
        let (mut coeff, mono) = cur.term()?;
        if negative {
            coeff = -coeff;
        }
        terms.push((coeff, mono));
        first = false;
    }
    let denom_lcm = terms
        .iter()
        .fold(BigInt::one(), |acc, (c, _)| acc.lcm(c.denom()));
    let ints = terms.into_iter().map(|(c, m)| {
        let scaled = c * BigRational::from_integer(denom_lcm.clone());
        (scaled.to_integer(), m)
    });
    Ok(Polynomial::from_terms(vars.len(), order, ints)?.primitive())
}

/// Default names `x1 .. xn`.
pub fn default_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

pub fn format_polynomial(p: &Polynomial, vars: &[String]) -> String {
    p.display(vars).to_string()
}

pub fn format_system(file: &ProblemFile) -> String {
    let mut out = format!("vars: {}\norder: {}\n", file.vars.join(" "), file.order);
    if let Some(d) = file.division {
        out.push_str(&format!("division: {d}\n"));
    }
    for p in &file.polys {
        out.push_str(&format_polynomial(p, &file.vars));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use MonomialOrder::Lex;

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn parses_example_system() {
        let f = parse_system("vars: x y\norder: lex\nx^2*y - 1\nx*y^2 - 1").unwrap();
        assert_eq!(f.vars, xy());
        assert_eq!(f.order, Lex);
        assert_eq!(f.division, None);
        assert_eq!(
            f.polys,
            vec![
                Polynomial::from_exps(Lex, &[(1, &[2, 1]), (-1, &[0, 0])]),
                Polynomial::from_exps(Lex, &[(1, &[1, 2]), (-1, &[0, 0])]),
            ]
        );
    }

    #[test]
    fn sign_and_whitespace_variants_agree() {
        let a = parse_polynomial("- x + y", &xy(), Lex).unwrap();
        let b = parse_polynomial("+y -x", &xy(), Lex).unwrap();
        let c = parse_polynomial("x-y", &xy(), Lex).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn rational_coefficients_become_primitive() {
        let p = parse_polynomial("1/2*x^2 + 1/3*y", &xy(), Lex).unwrap();
        assert_eq!(p, Polynomial::from_exps(Lex, &[(3, &[2, 0]), (2, &[0, 1])]));
        let q = parse_polynomial("4*x*x + 6", &xy(), Lex).unwrap();
        assert_eq!(q, Polynomial::from_exps(Lex, &[(2, &[2, 0]), (3, &[0, 0])]));
    }

    #[test]
    fn undeclared_variable_is_named() {
        let e = parse_system("vars: x y\norder: lex\nx^2*w").unwrap_err();
        match e {
            Error::Parse { line, column, message } => {
                assert_eq!((line, column), (3, 5));
                assert!(message.contains("'w'"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_system("order: lex\nx").is_err());
        assert!(parse_system("vars: x\nx").is_err());
        assert!(parse_system("vars: x\norder: lex\n").is_err());
        assert!(parse_system("vars: x\norder: lexx\nx").is_err());
        assert!(parse_system("vars: x\norder: lex\nx - x").is_err());
        assert!(parse_polynomial("x +", &xy(), Lex).is_err());
        assert!(parse_polynomial("x y", &xy(), Lex).is_err());
        assert!(parse_polynomial("x^", &xy(), Lex).is_err());
        assert!(parse_polynomial("1/0*x", &xy(), Lex).is_err());
        assert!(parse_polynomial("", &xy(), Lex).is_err());
    }

    #[test]
    fn division_header_and_comments() {
        let f = parse_system("# system\nvars: x, y\norder: degrevlex\ndivision: pommaret\nx*y - 1 # tail\n").unwrap();
        assert_eq!(f.division, Some(Division::Pommaret));
        assert_eq!(f.polys.len(), 1);
    }

    #[test]
    fn print_then_parse_round_trips() {
        let f = parse_system("vars: a b c\norder: deglex\n3*a^2*b - 7*c + 5\n-a*b*c^4 + 2/3*b\nc").unwrap();
        let text = format_system(&f);
        assert_eq!(parse_system(&text).unwrap(), f);
    }
}
