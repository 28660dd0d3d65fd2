//! Monomials and integer-coefficient polynomials as read from documents.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exponent vector in declared variable order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Weighted degree.
    pub fn degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    /// Number of variable factors counted with multiplicity.
    pub fn total_exponent(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Generator of the colon ideal `(self) : other`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a.saturating_sub(*b)).collect())
    }

    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// All monomials of weighted degree `d`, in descending graded-lex order
/// (first declared variable is largest).
pub fn monomials_of_degree(weights: &[u32], d: u32) -> Vec<Monomial> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let w = weights[i];
        let mut e = left / w;
        loop {
            cur[i] = e;
            rec(weights, i + 1, left - e * w, cur, out);
            if e == 0 {
                break;
            }
            e -= 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; weights.len()];
    rec(weights, 0, d, &mut cur, &mut out);
    out
}

/// Drops generators divisible by another one.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.total_exponent());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `K(t)` of the Hilbert series `K(t) / prod (1 - t^w)` of
/// `k[x] / (gens)`, as coefficients of `t^0, t^1, ...`.
pub fn hilbert_numerator(gens: &[Monomial], weights: &[u32]) -> Vec<i64> {
    let gens = minimalize(gens.to_vec());
    if gens.iter().any(Monomial::is_one) {
        return vec![0];
    }
    let coprime = gens.iter().enumerate().all(|(i, a)| {
        gens[i + 1..].iter().all(|b| a.0.iter().zip(&b.0).all(|(x, y)| *x == 0 || *y == 0))
    });
    if coprime {
        let mut k = vec![1i64];
        for g in &gens {
            k = sub_shifted(&k, &k, g.degree(weights) as usize);
        }
        return trim(k);
    }
    // K(I + (m)) = K(I) - t^deg(m) K(I : m)
    let (m, rest) = gens.split_last().unwrap();
    let colon: Vec<Monomial> = rest.iter().map(|g| g.colon(m)).collect();
    let k = sub_shifted(&hilbert_numerator(rest, weights), &hilbert_numerator(&colon, weights), m.degree(weights) as usize);
    trim(k)
}

fn sub_shifted(a: &[i64], b: &[i64], shift: usize) -> Vec<i64> {
    let mut out = a.to_vec();
    out.resize(out.len().max(b.len() + shift), 0);
    for (i, c) in b.iter().enumerate() {
        out[i + shift] -= c;
    }
    out
}

fn trim(mut k: Vec<i64>) -> Vec<i64> {
    while k.len() > 1 && *k.last().unwrap() == 0 {
        k.pop();
    }
    k
}

/// `prod (1 - t^d)` over `degrees`, times `k`.
pub fn times_cyclotomic(k: &[i64], degrees: &[u32]) -> Vec<i64> {
    let mut out = k.to_vec();
    for &d in degrees {
        out = sub_shifted(&out, &out, d as usize);
    }
    trim(out)
}

/// Polynomial with integer coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntPoly {
    pub terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Parses `text` over the given variable names.
    ///
    /// Accepted syntax: integer coefficients, `*`, `^`, `+`, `-` and
    /// whitespace, e.g. `x^2 - 3*x*y + y^2`.
    pub fn parse(text: &str, names: &[String]) -> Result<IntPoly> {
        Parser { text, names, pos: 0, bytes: text.as_bytes() }.poly()
    }

    pub fn map_coefficients(&self, f: impl Fn(&BigInt) -> BigInt) -> IntPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        IntPoly { terms }
    }

    pub fn format(&self, names: &[String]) -> String {
        format_terms(self.terms.iter().rev().map(|(m, c)| (m.format(names), c.to_string())))
    }
}

/// Joins `(word, coefficient)` pairs into `a - 2*b + c` style text.
pub(crate) fn format_terms(terms: impl IntoIterator<Item = (String, String)>) -> String {
    let mut out = String::new();
    for (word, coeff) in terms {
        let (neg, mag) = match coeff.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, coeff),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match (mag.as_str(), word.as_str()) {
            ("1", w) => out.push_str(w),
            (m, "1") => out.push_str(m),
            (m, w) => {
                out.push_str(m);
                out.push('*');
                out.push_str(w);
            }
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    names: &'a [String],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, reason: impl Into<String>) -> Error {
        Error::Polynomial { text: self.text.to_string(), reason: reason.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn poly(mut self) -> Result<IntPoly> {
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        let mut sign = BigInt::one();
        match self.peek() {
            Some(b'-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            None => return Err(self.err("empty polynomial")),
            _ => {}
        }
        loop {
            let (mono, coeff) = self.term()?;
            *terms.entry(mono).or_insert_with(BigInt::zero) += sign * coeff;
            match self.peek() {
                None => break,
                Some(b'+') => sign = BigInt::one(),
                Some(b'-') => sign = -BigInt::one(),
                Some(c) => return Err(self.err(format!("unexpected `{}`", c as char))),
            }
            self.pos += 1;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(IntPoly { terms })
    }

    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        let mut exps = vec![0u32; self.names.len()];
        let mut coeff = BigInt::one();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= self.integer()?,
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let name = self.ident();
                    let idx = self
                        .names
                        .iter()
                        .position(|n| *n == name)
                        .ok_or_else(|| Error::UnknownVariable { name: name.clone(), text: self.text.to_string() })?;
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        let n = self.integer()?;
                        e = u32::try_from(&n).map_err(|_| self.err("exponent out of range"))?;
                    }
                    exps[idx] += e;
                }
                Some(c) => return Err(self.err(format!("unexpected `{}`", c as char))),
                None => return Err(self.err("unexpected end of input")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial(exps), coeff))
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        self.text[start..self.pos].parse().map_err(|_| self.err("bad integer"))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        self.text[start..self.pos].to_string()
    }
}

#[cfg(test)]
mod tests {
    #[test]
    fn monomial_hilbert_numerators() {
        let m = |e: &[u32]| Monomial(e.to_vec());
        // (x^2, x*y, y^3) has the numerator of a complete intersection of degrees 2, 2
        assert_eq!(hilbert_numerator(&[m(&[2, 0]), m(&[1, 1]), m(&[0, 3])], &[1, 1]), [1, 0, -2, 0, 1]);
        assert_eq!(hilbert_numerator(&[m(&[2, 0]), m(&[1, 1]), m(&[0, 2])], &[1, 1]), [1, 0, -3, 2]);
        assert_eq!(hilbert_numerator(&[], &[1]), [1]);
        assert_eq!(hilbert_numerator(&[m(&[0, 0])], &[1, 1]), [0]);
        assert_eq!(hilbert_numerator(&[m(&[1, 1])], &[1, 2]), [1, 0, 0, -1]);
        assert_eq!(times_cyclotomic(&[1], &[2, 2]), [1, 0, -2, 0, 1]);
    }

    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_and_collects_terms() {
        let n = names(&["x", "y"]);
        let p = IntPoly::parse("x^2 - 3*x*y + y*x + 2", &n).unwrap();
        assert_eq!(p.terms.len(), 3);
        assert_eq!(p.terms[&Monomial(vec![1, 1])], BigInt::from(-2));
        assert_eq!(p.terms[&Monomial(vec![0, 0])], BigInt::from(2));
        assert_eq!(p.format(&n), "x^2 - 2*x*y + 2");
        let q = IntPoly::parse(" -x * x ", &n).unwrap();
        assert_eq!(q.terms[&Monomial(vec![2, 0])], BigInt::from(-1));
    }

    #[test]
    fn rejects_garbage() {
        let n = names(&["x"]);
        assert!(matches!(IntPoly::parse("x + z", &n), Err(Error::UnknownVariable { .. })));
        assert!(IntPoly::parse("x +", &n).is_err());
        assert!(IntPoly::parse("x ^ y", &n).is_err());
        assert!(IntPoly::parse("", &n).is_err());
        assert!(IntPoly::parse("x / 2", &n).is_err());
    }

    #[test]
    fn graded_lex_enumeration() {
        let m = monomials_of_degree(&[1, 1], 2);
        assert_eq!(m, vec![Monomial(vec![2, 0]), Monomial(vec![1, 1]), Monomial(vec![0, 2])]);
        let w = monomials_of_degree(&[1, 2], 4);
        assert_eq!(w, vec![Monomial(vec![4, 0]), Monomial(vec![2, 1]), Monomial(vec![0, 2])]);
        assert_eq!(monomials_of_degree(&[2], 3), vec![]);
        assert_eq!(monomials_of_degree(&[], 0), vec![Monomial(vec![])]);
    }
}
