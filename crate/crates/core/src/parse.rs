//! Expression grammar for operators, forms and field extensions.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! exponent := '-'? integer | '(' '-'? integer ')'
//! atom     := integer | variable | 'D' | generator | '(' expr ')'
//! ```
//!
//! Operator products are taken in the Weyl algebra, so `D*x` is `x*D + 1`.
//! Division is only by nonzero constants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::diffop::{DiffOperator, Series};
use crate::error::{Error, Result};
use crate::exactalg::{Elem, Field, UniPoly};
use crate::puiseux::ExpForm;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Operator,
    Form,
    Poly,
}

/// `None` is the zero operator.
type Value = Option<DiffOperator>;

enum Atom {
    Var,
    Derivation,
    Other(Value),
}

fn err<T>(position: usize, expected: &[&str]) -> Result<T> {
    Err(Error::Parse { position, expected: expected.iter().map(|s| s.to_string()).collect() })
}

/// Names that can not be used for field generators.
pub fn is_reserved(name: &str) -> bool {
    matches!(name, "x" | "t" | "D" | "y" | "m")
}

fn add(a: Value, b: Value) -> Value {
    match (a, b) {
        (None, v) | (v, None) => v,
        (Some(a), Some(b)) => a.add(&b).ok(),
    }
}

fn mul(a: Value, b: Value) -> Result<Value> {
    match (a, b) {
        (Some(a), Some(b)) => Ok(Some(a.compose(&b)?)),
        _ => Ok(None),
    }
}

fn as_constant(v: &Value) -> Option<Elem> {
    let op = v.as_ref()?;
    if op.order() != 0 {
        return None;
    }
    let s = op.coeff(0);
    let terms: Vec<(i64, &Elem)> = s.terms().collect();
    match terms.as_slice() {
        [(0, c)] if s.is_exact() => Some((*c).clone()),
        _ => None,
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    field: &'a Field,
    mode: Mode,
    var: String,
    used_var: Option<String>,
}

impl<'a> Parser<'a> {
    fn new(src: &str, field: &'a Field, mode: Mode, var: &str) -> Parser<'a> {
        Parser { chars: src.chars().collect(), pos: 0, field, mode, var: var.to_string(), used_var: None }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.chars.len() && self.chars[self.pos].is_alphabetic() {
            self.pos += 1;
            while self.pos < self.chars.len() && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_') {
                self.pos += 1;
            }
            Some(self.chars[start..self.pos].iter().collect())
        } else {
            None
        }
    }

    fn constant(&self, c: Elem) -> Value {
        if self.field.is_zero(&c) {
            None
        } else {
            Some(DiffOperator::function(Series::constant(self.field, c)))
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = add(acc, t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = add(acc, t.map(|o| o.neg()));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let t = self.unary()?;
                acc = mul(acc, t)?;
            } else if self.peek() == Some('/') {
                self.pos += 1;
                let at = self.pos;
                let t = self.unary()?;
                let Some(c) = as_constant(&t) else {
                    return err(at, &["nonzero constant divisor"]);
                };
                let inv = self.field.inv(&c)?;
                acc = mul(acc, self.constant(inv))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Value> {
        if self.eat('-') {
            return Ok(self.unary()?.map(|o| o.neg()));
        }
        self.power()
    }

    fn exponent(&mut self) -> Result<(usize, i64)> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        self.skip_ws();
        let at = self.pos;
        let Some(n) = self.integer() else {
            return err(at, &["integer exponent"]);
        };
        let Some(mut n) = n.to_i64().filter(|v| *v <= 1 << 16) else {
            return err(at, &["exponent at most 65536"]);
        };
        if neg {
            n = -n;
        }
        if paren && !self.eat(')') {
            return err(self.pos, &["')'"]);
        }
        Ok((at, n))
    }

    fn power(&mut self) -> Result<Value> {
        self.skip_ws();
        let start = self.pos;
        let atom = if let Some(n) = self.integer() {
            Atom::Other(self.constant(self.field.from_rat(&BigRational::from_integer(n))))
        } else if self.eat('(') {
            let v = self.expr()?;
            if !self.eat(')') {
                return err(self.pos, &["')'", "'+'", "'-'", "'*'", "'/'"]);
            }
            Atom::Other(v)
        } else if let Some(name) = self.ident() {
            self.symbol(&name, start)?
        } else {
            return err(start, &["number", "symbol", "'('", "'-'"]);
        };
        let exp = if self.eat('^') { Some(self.exponent()?) } else { None };
        match atom {
            Atom::Var => {
                let e = exp.map(|e| e.1).unwrap_or(1);
                Ok(Some(DiffOperator::function(Series::monomial(self.field, self.field.one(), e))))
            }
            Atom::Derivation => {
                let (at, e) = exp.unwrap_or((start, 1));
                if e < 0 {
                    return err(at, &["nonnegative exponent"]);
                }
                let d = DiffOperator::derivation(self.field);
                let mut acc = DiffOperator::function(Series::one(self.field));
                for _ in 0..e {
                    acc = acc.compose(&d)?;
                }
                Ok(Some(acc))
            }
            Atom::Other(v) => match exp {
                None => Ok(v),
                Some((at, e)) if e < 0 => match as_constant(&v) {
                    Some(c) => Ok(self.constant(self.field.powi(&c, e)?)),
                    None => err(at, &["nonnegative exponent"]),
                },
                Some((_, e)) => {
                    let mut acc = self.constant(self.field.one());
                    for _ in 0..e {
                        acc = mul(acc, v.clone())?;
                    }
                    Ok(acc)
                }
            },
        }
    }

    fn symbol(&mut self, name: &str, start: usize) -> Result<Atom> {
        let is_var = match self.mode {
            Mode::Operator => name == "x",
            Mode::Form => name == "x" || name == "t",
            Mode::Poly => name == self.var,
        };
        if is_var {
            if let Some(u) = &self.used_var {
                if u != name {
                    let want = format!("'{}'", u);
                    return err(start, &[want.as_str()]);
                }
            }
            self.used_var = Some(name.to_string());
            return Ok(Atom::Var);
        }
        if name == "D" && self.mode == Mode::Operator {
            return Ok(Atom::Derivation);
        }
        let mut level = Some(self.field.clone());
        while let Some(l) = level {
            if l.generator_name() == Some(name) {
                let g = self.field.lift(&l, &l.generator())?;
                return Ok(Atom::Other(self.constant(g)));
            }
            level = l.base().cloned();
        }
        let mut expected: Vec<String> = match self.mode {
            Mode::Operator => vec!["'x'".into(), "'D'".into()],
            Mode::Form => vec!["'t'".into(), "'x'".into()],
            Mode::Poly => vec![format!("'{}'", self.var)],
        };
        let mut gens = self.field.generator_names();
        gens.sort();
        expected.extend(gens.into_iter().map(|g| format!("'{}'", g)));
        Err(Error::Parse { position: start, expected })
    }

    fn finish(&mut self, what: &[&str]) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            let mut exp = vec!["end of input"];
            exp.extend_from_slice(what);
            err(self.pos, &exp)
        }
    }
}

/// Parses an operator such as `x^3*D^2 - 1` over `field`.
pub fn parse_operator(src: &str, field: &Field) -> Result<DiffOperator> {
    let mut p = Parser::new(src, field, Mode::Operator, "x");
    let v = p.expr()?;
    p.finish(&["'+'", "'-'", "'*'", "'/'"])?;
    v.ok_or_else(|| Error::Invalid("the zero operator has no decomposition".into()))
}

/// Parses a form such as `2*t^-3 + 5*t^-1 ; m=2` (or `x^-1`).
pub fn parse_form(src: &str, field: &Field) -> Result<ExpForm> {
    let mut p = Parser::new(src, field, Mode::Form, "t");
    let v = p.expr()?;
    let mut m = 1u64;
    if p.eat(';') {
        let at = {
            p.skip_ws();
            p.pos
        };
        if p.ident().as_deref() != Some("m") {
            return err(at, &["'m'"]);
        }
        if !p.eat('=') {
            return err(p.pos, &["'='"]);
        }
        p.skip_ws();
        let at = p.pos;
        m = match p.integer().and_then(|n| n.to_u64()) {
            Some(n) if n > 0 => n,
            _ => return err(at, &["positive integer"]),
        };
        p.finish(&[])?;
    } else {
        p.finish(&["'+'", "'-'", "'*'", "'/'", "';'"])?;
    }
    if p.used_var.as_deref() == Some("x") && m != 1 {
        return err(0, &["'t' for a ramified form"]);
    }
    let Some(op) = v else {
        return Ok(ExpForm::zero(field));
    };
    let s = op.coeff(0);
    let mut terms = Vec::new();
    for (e, c) in s.terms() {
        if e >= 0 {
            return err(0, &["strictly negative exponents"]);
        }
        terms.push(((-e) as u64, c.clone()));
    }
    ExpForm::new(field, m, terms)
}

/// Parses a polynomial in `var` with coefficients in `field`.
pub fn parse_poly(src: &str, field: &Field, var: &str) -> Result<UniPoly> {
    let mut p = Parser::new(src, field, Mode::Poly, var);
    let v = p.expr()?;
    p.finish(&["'+'", "'-'", "'*'", "'/'"])?;
    let Some(op) = v else {
        return Ok(UniPoly::zero(field));
    };
    let s = op.coeff(0);
    let mut cs = Vec::new();
    for (e, c) in s.terms() {
        if e < 0 {
            return err(0, &["nonnegative exponents"]);
        }
        let e = e as usize;
        if cs.len() <= e {
            cs.resize(e + 1, field.zero());
        }
        cs[e] = c.clone();
    }
    Ok(UniPoly::new(field, cs))
}

/// The variable of an extension spec such as `z^2+1`: the one identifier that
/// is not already a generator of `base`.
fn extension_variable(src: &str, base: &Field) -> Result<String> {
    let gens = base.generator_names();
    let mut found: Option<(String, usize)> = None;
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            if gens.contains(&name) {
                continue;
            }
            if is_reserved(&name) {
                return err(start, &["generator name other than x, t, D, y, m"]);
            }
            match &found {
                Some((f, _)) if *f != name => return err(start, &[&format!("'{}'", f)]),
                _ => found = Some((name, start)),
            }
        } else {
            i += 1;
        }
    }
    found.map(|f| f.0).ok_or(()).or_else(|_| err(0, &["generator symbol"]))
}

/// Builds a field from specs such as `["adjoin: z^2+1"]`; each spec adjoins a
/// root of the given monic irreducible polynomial to the previous field.
/// `rationals`, `Q` or an empty list give the rationals.
pub fn parse_field(specs: &[String]) -> Result<Field> {
    let mut f = Field::rationals();
    for spec in specs {
        let s = spec.trim();
        if s.is_empty() || s == "rationals" || s == "Q" {
            continue;
        }
        let Some(rest) = s.strip_prefix("adjoin:") else {
            return err(0, &["'adjoin:'", "'rationals'"]);
        };
        let offset = s.len() - rest.len();
        let var = extension_variable(rest, &f).map_err(|e| shift(e, offset))?;
        let p = parse_poly(rest, &f, &var).map_err(|e| shift(e, offset))?;
        f = f.adjoin(&p, &var)?;
    }
    Ok(f)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { position, expected } => Error::Parse { position: position + by, expected },
        e => e,
    }
}
