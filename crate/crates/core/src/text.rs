//! Text forms.
//!
//! ```text
//! steinitz  := term ('*' term)*
//! term      := prime ['^' exp] | 'P' ['^' exp] | '1'
//! exp       := digits | 'inf'
//!
//! eval      := factor ('*' factor)*          (steinitz terms plus coefficients)
//! factor    := term | natural | '(' natural ['/' natural] ')'
//!
//! density   := 'inf' | natural ['/' natural] | 'sqrt(' d ')'
//!            | '(' ['-'] x ['+' | '-'] [y '*'] 'sqrt(' d ')' ')' ['/' z]
//!
//! set       := '[1..' n ']' | 'N' | 'S(' density ',' eval ')' | 'S+(' density ',' eval ')'
//! algebra   := 'alg(' set [';' 'st=' eval] ')' | 'unital(' eval ')' | 'mat(' n ')'
//! ```
//!
//! In `eval`, prime terms fix exponents exactly as in `steinitz`; the
//! coefficients are multiplied in afterwards, so `(1/2)*P^1` is `P^1` with
//! the exponent of 2 lowered by one.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::algebra::AlgebraDescriptor;
use crate::arith;
use crate::density::{DensityBound, QuadraticSurd};
use crate::error::{Error, ParseError, Result};
use crate::rational::PositiveRational;
use crate::saturated::SaturatedSet;
use crate::steinitz::{Exponent, Steinitz};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn at(&mut self, tok: &str) -> bool {
        self.skip_ws();
        self.rest().starts_with(tok)
    }

    fn eat(&mut self, tok: &str) -> bool {
        let hit = self.at(tok);
        if hit {
            self.pos += tok.len();
        }
        hit
    }

    fn found(&self) -> String {
        let rest = self.rest();
        let word: String = rest.chars().take_while(|c| c.is_alphanumeric()).collect();
        if word.is_empty() {
            rest.chars().next().map(String::from).unwrap_or_default()
        } else {
            word
        }
    }

    fn error(&mut self, expected: Vec<&'static str>) -> Error {
        self.skip_ws();
        ParseError {
            position: self.pos,
            expected,
            found: self.found(),
            message: None,
        }
        .into()
    }

    fn error_at(&self, position: usize, expected: Vec<&'static str>, message: String) -> Error {
        let mut c = Cursor::new(self.src);
        c.pos = position;
        ParseError {
            position,
            expected,
            found: c.found(),
            message: Some(message),
        }
        .into()
    }

    fn expect(&mut self, tok: &'static str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(vec![tok]))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let len = self
            .rest()
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if len == 0 {
            return None;
        }
        let d = &self.rest()[..len];
        self.pos += len;
        Some(d)
    }

    fn big(&mut self, what: &'static str) -> Result<BigUint> {
        match self.digits() {
            Some(d) => Ok(d.parse().expect("ascii digits")),
            None => Err(self.error(vec![what])),
        }
    }

    fn u64(&mut self, what: &'static str) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let n = self.big(what)?;
        n.to_u64()
            .ok_or_else(|| self.error_at(start, vec![what], "number too large".to_string()))
    }

    fn positive(&mut self, what: &'static str) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        match self.u64(what)? {
            0 => Err(self.error_at(start, vec![what], "must be positive".to_string())),
            n => Ok(n),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            Err(self.error(vec!["end of input"]))
        } else {
            Ok(())
        }
    }
}

fn whole<T>(text: &str, f: impl FnOnce(&mut Cursor<'_>) -> Result<T>) -> Result<T> {
    let mut c = Cursor::new(text);
    let value = f(&mut c)?;
    c.finish()?;
    Ok(value)
}

fn exponent(c: &mut Cursor<'_>) -> Result<Exponent> {
    if !c.eat("^") {
        return Ok(Exponent::finite(1));
    }
    if c.eat("inf") {
        return Ok(Exponent::Infinite);
    }
    match c.digits() {
        Some(d) => Ok(Exponent::Finite(d.parse().expect("ascii digits"))),
        None => Err(c.error(vec!["exponent", "inf"])),
    }
}

fn steinitz_expr(c: &mut Cursor<'_>, eval: bool) -> Result<Steinitz> {
    let mut default: Option<Exponent> = None;
    let mut primes: BTreeMap<u64, Exponent> = BTreeMap::new();
    let mut coefficient = PositiveRational::one();
    let expected = || {
        if eval {
            vec!["prime", "P", "natural", "("]
        } else {
            vec!["prime", "P", "1"]
        }
    };
    loop {
        c.skip_ws();
        let start = c.pos;
        if c.eat("P") {
            if default.is_some() {
                return Err(c.error_at(start, expected(), "P term appears twice".to_string()));
            }
            default = Some(exponent(c)?);
        } else if eval && c.eat("(") {
            let num = c.positive("natural")?;
            let den = if c.eat("/") {
                c.positive("natural")?
            } else {
                1
            };
            c.expect(")")?;
            coefficient = coefficient.mul(&PositiveRational::new(num, den)?);
        } else if c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
            let n = c.u64("prime")?;
            let powered = c.at("^");
            if n == 1 && !powered {
                // empty product
            } else if arith::is_prime(n) {
                if primes.contains_key(&n) {
                    return Err(c.error_at(start, expected(), alloc::format!("prime {n} appears twice")));
                }
                primes.insert(n, exponent(c)?);
            } else if eval && n > 0 && !powered {
                coefficient = coefficient.mul(&PositiveRational::from_natural(n)?);
            } else {
                return Err(c.error_at(start, vec!["prime"], alloc::format!("{n} is not a prime")));
            }
        } else {
            return Err(c.error(expected()));
        }
        if !c.eat("*") {
            break;
        }
    }
    let base = Steinitz::from_parts(default.unwrap_or_else(Exponent::zero), primes)?;
    if coefficient.is_one() {
        Ok(base)
    } else {
        base.scale(&coefficient)
    }
}

/// Parses the canonical Steinitz grammar (no coefficients).
pub fn parse_steinitz(text: &str) -> Result<Steinitz> {
    whole(text, |c| steinitz_expr(c, false))
}

/// Parses a Steinitz expression with optional rational coefficients.
pub fn eval_steinitz(text: &str) -> Result<Steinitz> {
    whole(text, |c| steinitz_expr(c, true))
}

impl FromStr for Steinitz {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_steinitz(text)
    }
}

fn density_expr(c: &mut Cursor<'_>) -> Result<DensityBound> {
    if c.eat("inf") {
        return Ok(DensityBound::Infinity);
    }
    if c.at("sqrt") {
        let d = sqrt_term(c)?;
        return DensityBound::surd(QuadraticSurd::sqrt(d)?);
    }
    if c.eat("(") {
        let negative = c.eat("-");
        let x = BigInt::from_biguint(
            if negative { num_bigint::Sign::Minus } else { num_bigint::Sign::Plus },
            c.big("integer")?,
        );
        c.skip_ws();
        if c.at("-") {
            return Err(c.error_at(c.pos, vec!["+"], "root coefficient must be positive".to_string()));
        }
        c.expect("+")?;
        let y = if c.at("sqrt") {
            BigUint::from(1u32)
        } else {
            let y = c.big("integer")?;
            c.expect("*")?;
            y
        };
        let d = sqrt_term(c)?;
        c.expect(")")?;
        let z = if c.eat("/") {
            BigUint::from(c.positive("natural")?)
        } else {
            BigUint::from(1u32)
        };
        return DensityBound::surd(QuadraticSurd::new(x, y, d, z)?);
    }
    if c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
        let u = c.positive("natural")?;
        let v = if c.eat("/") {
            c.positive("natural")?
        } else {
            1
        };
        return DensityBound::rational(u, v);
    }
    Err(c.error(vec!["inf", "natural", "(", "sqrt"]))
}

fn sqrt_term(c: &mut Cursor<'_>) -> Result<u64> {
    c.expect("sqrt")?;
    c.expect("(")?;
    let d = c.positive("natural")?;
    c.expect(")")?;
    Ok(d)
}

pub fn parse_density(text: &str) -> Result<DensityBound> {
    whole(text, density_expr)
}

impl FromStr for DensityBound {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_density(text)
    }
}

fn set_expr(c: &mut Cursor<'_>) -> Result<SaturatedSet> {
    if c.eat("[") {
        c.expect("1")?;
        c.expect("..")?;
        let n = c.positive("natural")?;
        c.expect("]")?;
        return SaturatedSet::segment(n);
    }
    if c.eat("N") {
        return Ok(SaturatedSet::all_naturals());
    }
    if c.eat("S") {
        let strict = c.eat("+");
        c.expect("(")?;
        let r = density_expr(c)?;
        c.expect(",")?;
        let base = steinitz_expr(c, true)?;
        c.expect(")")?;
        return SaturatedSet::finite_type(r, &base, strict);
    }
    Err(c.error(vec!["[", "N", "S", "S+"]))
}

pub fn parse_set(text: &str) -> Result<SaturatedSet> {
    whole(text, set_expr)
}

impl FromStr for SaturatedSet {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_set(text)
    }
}

fn algebra_expr(c: &mut Cursor<'_>) -> Result<AlgebraDescriptor> {
    if c.eat("alg") {
        c.expect("(")?;
        let spectrum = set_expr(c)?;
        let descriptor = if c.eat(";") {
            c.expect("st")?;
            c.expect("=")?;
            let st = steinitz_expr(c, true)?;
            AlgebraDescriptor::with_unit(&spectrum, &st)?
        } else {
            AlgebraDescriptor::from_spectrum(spectrum)
        };
        c.expect(")")?;
        return Ok(descriptor);
    }
    if c.eat("unital") {
        c.expect("(")?;
        let s = steinitz_expr(c, true)?;
        c.expect(")")?;
        return Ok(AlgebraDescriptor::spec_unital(&s));
    }
    if c.eat("mat") {
        c.expect("(")?;
        let n = c.positive("natural")?;
        c.expect(")")?;
        return AlgebraDescriptor::spec_matrix(n);
    }
    Err(c.error(vec!["alg", "unital", "mat"]))
}

pub fn parse_algebra(text: &str) -> Result<AlgebraDescriptor> {
    whole(text, algebra_expr)
}

impl FromStr for AlgebraDescriptor {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_algebra(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn parse_err(text: &str) -> ParseError {
        match parse_steinitz(text) {
            Err(Error::Parse(e)) => e,
            other => panic!("expected a parse error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn grammar_examples() {
        let x = parse_steinitz("2^inf*3^2").unwrap();
        assert_eq!(x.valuation(2), &Exponent::Infinite);
        assert_eq!(x.valuation(3), &Exponent::finite(2));
        let y = parse_steinitz("P^1*2^3").unwrap();
        assert_eq!(y.default_exponent(), &Exponent::finite(1));
        assert_eq!(format!("{y}"), "2^3*P^1");
        assert_eq!(parse_steinitz("P").unwrap(), Steinitz::all_primes());
        assert_eq!(parse_steinitz("1").unwrap(), Steinitz::one());
        assert_eq!(parse_steinitz(" 3 * 2 ").unwrap(), Steinitz::from_natural(6).unwrap());
        // Minimal presentation drops exceptions equal to the default.
        assert_eq!(format!("{}", parse_steinitz("P^1*5").unwrap()), "P^1");
    }

    #[test]
    fn grammar_errors_carry_positions() {
        let e = parse_err("4^2");
        assert_eq!(e.position, 0);
        assert_eq!(e.message.as_deref(), Some("4 is not a prime"));
        let e = parse_err("2*3*2");
        assert_eq!(e.position, 4);
        let e = parse_err("2^x");
        assert_eq!(e.position, 2);
        assert_eq!(e.expected, vec!["exponent", "inf"]);
        assert_eq!(format!("{e}"), "parse error at column 3: expected exponent or inf, found `x`");
        let e = parse_err("P*P");
        assert_eq!(e.position, 2);
        let e = parse_err("2*");
        assert_eq!(e.found, "");
        assert!(format!("{e}").ends_with("found end of input"));
        assert!(matches!(parse_steinitz("(1/2)*P^1"), Err(Error::Parse(_))));
    }

    #[test]
    fn eval_coefficients() {
        let half = eval_steinitz("(1/2)*P^1").unwrap();
        assert_eq!(half.valuation(2), &Exponent::zero());
        assert_eq!(half.valuation(3), &Exponent::finite(1));
        assert_eq!(
            eval_steinitz("(3/4)*2^inf*3").unwrap(),
            parse_steinitz("2^inf*3^2").unwrap()
        );
        assert_eq!(eval_steinitz("12").unwrap(), Steinitz::from_natural(12).unwrap());
        assert!(matches!(
            eval_steinitz("(1/4)*P^1"),
            Err(Error::NotDivisor { .. })
        ));
    }

    #[test]
    fn densities() {
        assert_eq!(parse_density("3/2").unwrap(), DensityBound::rational(3, 2).unwrap());
        assert_eq!(parse_density("inf").unwrap(), DensityBound::Infinity);
        let golden = parse_density("(1+sqrt(5))/2").unwrap();
        assert_eq!(format!("{golden}"), "(1+1*sqrt(5))/2");
        assert_eq!(parse_density(&format!("{golden}")).unwrap(), golden);
        assert_eq!(format!("{}", parse_density("sqrt(8)").unwrap_err()), "invalid quadratic surd: radicand must be a squarefree integer > 1");
        let neg = parse_density("(-1+3*sqrt(2))/1").unwrap();
        assert_eq!(parse_density(&format!("{neg}")).unwrap(), neg);
        assert!(matches!(parse_density("1/2"), Err(Error::DensityBelowOne(_))));
    }

    #[test]
    fn sets() {
        for text in ["[1..7]", "N", "S(inf, 2^inf)", "S(3/2, P^1)", "S+(3/2, P^1)", "S(5/2, 2^3*P^1)"] {
            assert_eq!(format!("{}", parse_set(text).unwrap()), text);
        }
        assert_eq!(format!("{}", parse_set("S(3/2, 2^inf*3)").unwrap()), "S(inf, 2^inf*3)");
        assert_eq!(format!("{}", parse_set("S(inf,6)").unwrap()), "N");
        assert!(matches!(parse_set("S(3/2, 6)"), Err(Error::NaturalBase(_))));
        assert!(matches!(parse_set("S(3/2 P^1)"), Err(Error::Parse(_))));
    }
}
