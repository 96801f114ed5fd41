//! Expression language for rational functions of one variable.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | '+' unary | power
//! power   := primary ('^' ['-'] integer)?
//! primary := number | identifier | '(' expr ')'
//! ```
//!
//! Arithmetic is exact over the rationals. The denominator is factored by
//! square-free decomposition; each square-free factor is solved numerically.

use extfd::fracdiff::{real_poly_roots, Poly, RationalFunction};
use extfd::C64;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::CliError;

type Q = BigRational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Q),
    Ident(String),
    Op(char),
}

fn syntax(pos: usize, message: impl Into<String>) -> CliError {
    CliError::Syntax {
        pos,
        message: message.into(),
    }
}

/// Exact decimal literal: digits, optional fraction, optional exponent.
fn decimal(text: &str, pos: usize) -> Result<Q, CliError> {
    let (mant, exp) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], Some(&text[i + 1..])),
        None => (text, None),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(syntax(pos, format!("malformed number '{text}'")));
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = digits
        .parse()
        .map_err(|_| syntax(pos, format!("malformed number '{text}'")))?;
    let mut scale: i64 = -(frac.len() as i64);
    if let Some(e) = exp {
        let e: i64 = e
            .parse()
            .map_err(|_| syntax(pos, format!("malformed exponent in '{text}'")))?;
        scale += e;
    }
    if scale.unsigned_abs() > 4000 {
        return Err(syntax(pos, format!("exponent out of range in '{text}'")));
    }
    let ten = BigInt::from(10);
    let p = num_traits::pow(ten, scale.unsigned_abs() as usize);
    Ok(if scale >= 0 {
        Q::from_integer(n * p)
    } else {
        Q::new(n, p)
    })
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, CliError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    i = j;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            out.push((Tok::Num(decimal(&text[start..i], start)?), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(syntax(i, format!("unexpected character '{}'", &text[i..].chars().next().unwrap())));
        }
    }
    Ok(out)
}

/// num/den over the rationals.
#[derive(Debug, Clone)]
struct Frac {
    num: Poly<Q>,
    den: Poly<Q>,
}

impl Frac {
    fn constant(c: Q) -> Self {
        Frac {
            num: Poly::constant(c),
            den: Poly::constant(Q::one()),
        }
    }

    fn var() -> Self {
        Frac {
            num: Poly::new(vec![Q::zero(), Q::one()]),
            den: Poly::constant(Q::one()),
        }
    }

    fn add(&self, o: &Frac) -> Frac {
        Frac {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
    }

    fn neg(&self) -> Frac {
        Frac {
            num: self.num.scale(&-Q::one()),
            den: self.den.clone(),
        }
    }

    fn mul(&self, o: &Frac) -> Frac {
        Frac {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
    }

    fn recip(&self, pos: usize) -> Result<Frac, CliError> {
        if self.num.is_zero() {
            return Err(syntax(pos, "division by zero"));
        }
        Ok(Frac {
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
    variable: Option<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Frac, CliError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Frac, CliError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.peek() == Some(&Tok::Op('/')) {
                self.at += 1;
                let pos = self.pos();
                acc = acc.mul(&self.unary()?.recip(pos)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Frac, CliError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Frac, CliError> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let pos = self.pos();
        let n = match self.peek() {
            Some(Tok::Num(q)) if q.is_integer() && !q.is_negative() => q
                .to_integer()
                .to_u32()
                .filter(|&n| n <= 256)
                .ok_or_else(|| syntax(pos, "exponent too large"))?,
            _ => return Err(syntax(pos, "expected a non-negative integer exponent")),
        };
        self.at += 1;
        let mut out = Frac::constant(Q::one());
        for _ in 0..n {
            out = out.mul(&base);
        }
        if negative {
            out = out.recip(pos)?;
        }
        Ok(out)
    }

    fn primary(&mut self) -> Result<Frac, CliError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(q)) => {
                self.at += 1;
                Ok(Frac::constant(q))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                match &self.variable {
                    Some(v) if *v != name => Err(syntax(
                        pos,
                        format!("second variable '{name}'; expressions use the single variable '{v}'"),
                    )),
                    _ => {
                        self.variable = Some(name);
                        Ok(Frac::var())
                    }
                }
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(syntax(self.pos(), "expected ')'"));
                }
                Ok(inner)
            }
            Some(Tok::Op(c)) => Err(syntax(pos, format!("unexpected '{c}'"))),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

/// A parsed rational function with its exact reduced form.
#[derive(Debug, Clone)]
pub struct ParsedRational {
    pub rf: RationalFunction<C64>,
    /// reduced numerator, scaled so that the denominator is monic
    pub numerator: Poly<Q>,
    /// reduced monic denominator
    pub denominator: Poly<Q>,
    pub variable: String,
}

fn to_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Parse `text` into a proper rational function with numerically located
/// poles.
pub fn parse_rational(text: &str) -> Result<ParsedRational, CliError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        variable: None,
    };
    let f = p.expr()?;
    if p.at < p.toks.len() {
        return Err(syntax(p.pos(), "trailing input"));
    }
    let g = f.num.gcd(&f.den);
    let mut num = f.num.div_rem(&g).0;
    let mut den = f.den.div_rem(&g).0;
    let lead = den.leading().cloned().expect("denominator is nonzero");
    let inv = Q::one() / lead;
    num = num.scale(&inv);
    den = den.scale(&inv);
    let dd = den.degree().unwrap_or(0);
    if let Some(nd) = num.degree() {
        if nd >= dd {
            return Err(extfd::Error::Degree {
                numerator: nd,
                denominator: dd,
            }
            .into());
        }
    }
    let mut poles = Vec::new();
    for (factor, mult) in den.square_free() {
        let roots = if factor.degree() == Some(1) {
            vec![C64::new(to_f64(&-factor.coeffs()[0].clone()), 0.0)]
        } else {
            let coeffs: Vec<f64> = factor.coeffs().iter().map(to_f64).collect();
            real_poly_roots(&coeffs)?
        };
        poles.extend(roots.into_iter().map(|r| (r, mult)));
    }
    let num_c: Vec<C64> = num.coeffs().iter().map(|c| C64::new(to_f64(c), 0.0)).collect();
    let rf = RationalFunction::new(num_c, poles)?;
    Ok(ParsedRational {
        rf,
        numerator: num,
        denominator: den,
        variable: p.variable.unwrap_or_else(|| "z".into()),
    })
}

fn poly_text(coeffs: &[Q], var: &str) -> String {
    let mut parts = Vec::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let a = c.abs();
        let mag = if a.is_integer() { a.to_string() } else { format!("({a})") };
        let body = match k {
            0 => mag,
            1 => format!("{mag}*{var}"),
            _ => format!("{mag}*{var}^{k}"),
        };
        let neg = c < &Q::zero();
        if parts.is_empty() {
            parts.push(if neg { format!("-{body}") } else { body });
        } else {
            parts.push(format!("{}{body}", if neg { "-" } else { "+" }));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("")
    }
}

/// Print the reduced form with both polynomials expanded and exact
/// rational coefficients.
pub fn format_expanded(parsed: &ParsedRational) -> String {
    let var = &parsed.variable;
    format!(
        "({})/({})",
        poly_text(parsed.numerator.coeffs(), var),
        poly_text(parsed.denominator.coeffs(), var)
    )
}
