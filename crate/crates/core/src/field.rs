//! Exact coefficient fields.
//!
//! Two fields are supported: the rationals (arbitrary precision, always
//! normalized) and prime fields `F_p` with `p < 2^31`. All algorithms in the
//! crate are generic over [`Field`]; the runtime choice is carried by
//! [`FieldSpec`] and dispatched once at the top level.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest admissible prime, so that products fit in `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// Field choice as it appears in presentation documents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Fp")]
    Prime { p: u64 },
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if p > MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        Ok(FieldSpec::Prime { p })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime { p } => *p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field given by a (cheap, clonable) context value.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    /// Human-readable form; prime-field residues print as signed integers.
    fn display(&self, a: &Self::Elem) -> String {
        a.to_string()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    /// Binomial coefficient `C(n, k)` reduced into the field.
    fn binomial(&self, n: u64, k: u64) -> Self::Elem {
        if k > n {
            return self.zero();
        }
        let k = k.min(n - k);
        let mut acc = BigInt::one();
        for i in 0..k {
            acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
        }
        self.from_bigint(&acc)
    }
}

/// The rational numbers with arbitrary-precision normalized fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

/// Element of a prime field, stored as its least non-negative residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue(pub u64);

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        FieldSpec::prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Signed representative in `(-p/2, p/2]`, used for display.
    pub fn signed(&self, a: &Residue) -> i64 {
        if a.0 > self.p / 2 {
            a.0 as i64 - self.p as i64
        } else {
            a.0 as i64
        }
    }
}

impl Field for PrimeField {
    type Elem = Residue;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime { p: self.p }
    }
    fn zero(&self) -> Residue {
        Residue(0)
    }
    fn one(&self) -> Residue {
        Residue(1 % self.p)
    }
    fn from_bigint(&self, n: &BigInt) -> Residue {
        let r = n.mod_floor(&BigInt::from(self.p));
        Residue(r.to_u64().expect("residue fits in u64"))
    }
    fn add(&self, a: &Residue, b: &Residue) -> Residue {
        Residue((a.0 + b.0) % self.p)
    }
    fn sub(&self, a: &Residue, b: &Residue) -> Residue {
        Residue((a.0 + self.p - b.0) % self.p)
    }
    fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        Residue(a.0 * b.0 % self.p)
    }
    fn neg(&self, a: &Residue) -> Residue {
        Residue((self.p - a.0) % self.p)
    }
    fn inv(&self, a: &Residue) -> Option<Residue> {
        if a.0 == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a.0 as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(Residue(t0.rem_euclid(self.p as i64) as u64))
    }
    fn is_zero(&self, a: &Residue) -> bool {
        a.0 == 0
    }
    fn display(&self, a: &Residue) -> String {
        self.signed(a).to_string()
    }
    fn binomial(&self, n: u64, k: u64) -> Residue {
        // Lucas: C(n, k) = prod C(n_i, k_i) over base-p digits.
        let (mut n, mut k) = (n, k);
        let mut acc = self.one();
        while n > 0 || k > 0 {
            let (ni, ki) = (n % self.p, k % self.p);
            if ki > ni {
                return self.zero();
            }
            let mut c = BigInt::one();
            let kk = ki.min(ni - ki);
            for i in 0..kk {
                c = c * BigInt::from(ni - i) / BigInt::from(i + 1);
            }
            acc = self.mul(&acc, &self.from_bigint(&c));
            n /= self.p;
            k /= self.p;
        }
        acc
    }
}

/// Reduces an integer coefficient into canonical form for `spec`.
pub(crate) fn reduce_integer(spec: FieldSpec, n: &BigInt) -> BigInt {
    match spec {
        FieldSpec::Rationals => n.clone(),
        FieldSpec::Prime { p } => n.mod_floor(&BigInt::from(p)),
    }
}
