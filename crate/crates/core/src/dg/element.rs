use std::collections::BTreeMap;

use crate::field::Field;
use crate::poly::Monomial;

/// A normalized word: a standard base monomial times extension variables
/// in adjunction order, each with its exponent (exterior exponents are 0/1,
/// even variables carry ordinary or divided-power exponents depending on the
/// tower flavor).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    /// `(variable index, exponent)` with strictly increasing indices and
    /// nonzero exponents.
    pub ext: Vec<(usize, u32)>,
    pub base: Monomial,
}

impl Word {
    pub fn unit(nvars: usize) -> Self {
        Word { ext: Vec::new(), base: Monomial::one(nvars) }
    }

    pub fn base_only(base: Monomial) -> Self {
        Word { ext: Vec::new(), base }
    }

    pub fn variable(nvars: usize, var: usize) -> Self {
        Word { ext: vec![(var, 1)], base: Monomial::one(nvars) }
    }

    /// Number of extension-variable factors, counted with multiplicity.
    pub fn ext_length(&self) -> u32 {
        self.ext.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.ext.iter().find(|(v, _)| *v == var).map_or(0, |(_, e)| *e)
    }
}

/// A finite linear combination of words with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<E> {
    terms: BTreeMap<Word, E>,
}

impl<E: Clone + PartialEq> Element<E> {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &E)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> Option<&E> {
        self.terms.get(w)
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn from_word<F: Field<Elem = E>>(field: &F, w: Word) -> Self {
        Self::from_terms(field, [(w, field.one())])
    }

    pub fn from_terms<F: Field<Elem = E>>(field: &F, terms: impl IntoIterator<Item = (Word, E)>) -> Self {
        let mut e = Self::zero();
        for (w, c) in terms {
            e.add_term(field, w, &c);
        }
        e
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, field: &F, w: Word, c: &E) {
        if field.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                let s = field.add(x, c);
                if field.is_zero(&s) {
                    self.terms.remove(&w);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(field, w.clone(), c);
        }
        out
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        if field.is_zero(c) {
            return Self::zero();
        }
        Element { terms: self.terms.iter().map(|(w, x)| (w.clone(), field.mul(x, c))).collect() }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.add(field, &other.scale(field, &field.neg(&field.one())))
    }
}
