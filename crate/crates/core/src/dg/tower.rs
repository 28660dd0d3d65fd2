use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use super::element::{Element, Word};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{collect_sparse, Matrix, SparseVec};
use crate::poly::{format_terms, Monomial};
use crate::ring::QuotientRing;

/// `Plain` towers use ordinary polynomial variables in even degrees
/// (minimal models); `Gamma` towers use divided-power variables
/// (acyclic closures). Odd variables are exterior in both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TowerFlavor {
    Plain,
    Gamma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarKind {
    Exterior,
    Polynomial,
    DividedPower,
}

impl VarKind {
    pub fn for_degree(flavor: TowerFlavor, hdeg: u32) -> Self {
        match (hdeg % 2, flavor) {
            (1, _) => VarKind::Exterior,
            (_, TowerFlavor::Plain) => VarKind::Polynomial,
            (_, TowerFlavor::Gamma) => VarKind::DividedPower,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionVariable<E> {
    pub name: String,
    pub hdeg: u32,
    pub wdeg: u32,
    pub kind: VarKind,
    pub differential: Element<E>,
}

/// A variable to adjoin: name, homological degree, internal degree, boundary.
#[derive(Clone, Debug)]
pub struct NewVariable<E> {
    pub name: String,
    pub hdeg: u32,
    pub wdeg: u32,
    pub differential: Element<E>,
}

/// Largest homological and internal degree for which pieces may be built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_hdeg: u32,
    pub max_idim: u32,
}

/// Ordered word basis of the bidegree `(hdeg, idim)` piece.
#[derive(Debug)]
pub struct PieceBasis {
    pub hdeg: u32,
    pub idim: u32,
    pub words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl PieceBasis {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// One row of the tower dump.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableDump {
    pub name: String,
    pub hdeg: u32,
    pub idim: u32,
    pub flavor: VarKind,
    pub differential: String,
}

/// A free graded-commutative (or Γ-free) extension of a quotient ring,
/// immutable once built. Adjoining variables produces a new tower.
#[derive(Debug)]
pub struct ExtensionTower<F: Field> {
    ring: Arc<QuotientRing<F>>,
    flavor: TowerFlavor,
    vars: Vec<ExtensionVariable<F::Elem>>,
    bounds: Bounds,
    bases: RwLock<HashMap<(u32, u32), Arc<PieceBasis>>>,
    matrices: RwLock<HashMap<(u32, u32), Arc<Matrix<F::Elem>>>>,
}

impl<F: Field> Clone for ExtensionTower<F> {
    fn clone(&self) -> Self {
        ExtensionTower {
            ring: Arc::clone(&self.ring),
            flavor: self.flavor,
            vars: self.vars.clone(),
            bounds: self.bounds,
            bases: RwLock::new(HashMap::new()),
            matrices: RwLock::new(HashMap::new()),
        }
    }
}

impl<F: Field> ExtensionTower<F> {
    pub fn new(ring: Arc<QuotientRing<F>>, flavor: TowerFlavor, bounds: Bounds) -> Self {
        ExtensionTower {
            ring,
            flavor,
            vars: Vec::new(),
            bounds,
            bases: RwLock::new(HashMap::new()),
            matrices: RwLock::new(HashMap::new()),
        }
    }

    pub fn ring(&self) -> &Arc<QuotientRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn flavor(&self) -> TowerFlavor {
        self.flavor
    }

    pub fn variables(&self) -> &[ExtensionVariable<F::Elem>] {
        &self.vars
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    /// Variables of homological degree `n`.
    pub fn variables_in_degree(&self, n: u32) -> impl Iterator<Item = &ExtensionVariable<F::Elem>> {
        self.vars.iter().filter(move |v| v.hdeg == n)
    }

    pub fn count_in_degree(&self, n: u32) -> usize {
        self.variables_in_degree(n).count()
    }

    pub fn with_bounds(&self, bounds: Bounds) -> Self {
        ExtensionTower { bounds, ..self.clone() }
    }

    /// Returns a new tower with `new` appended. Each boundary must be
    /// homogeneous of bidegree `(hdeg - 1, wdeg)` and may only involve
    /// variables adjoined before it.
    pub fn adjoin(&self, new: Vec<NewVariable<F::Elem>>) -> Result<Self> {
        let mut out = self.clone();
        for nv in new {
            if nv.hdeg == 0 || nv.wdeg == 0 {
                return Err(Error::BadDifferential(format!("{}: degrees must be positive", nv.name)));
            }
            for w in nv.differential.words() {
                if let Some((v, _)) = w.ext.iter().find(|(v, _)| *v >= out.vars.len()) {
                    return Err(Error::MixedTowers(*v));
                }
                if out.word_bidegree(w) != (nv.hdeg - 1, nv.wdeg) {
                    return Err(Error::BadDifferential(format!(
                        "{}: boundary is not homogeneous of bidegree ({}, {})",
                        nv.name,
                        nv.hdeg - 1,
                        nv.wdeg
                    )));
                }
            }
            out.vars.push(ExtensionVariable {
                kind: VarKind::for_degree(self.flavor, nv.hdeg),
                name: nv.name,
                hdeg: nv.hdeg,
                wdeg: nv.wdeg,
                differential: nv.differential,
            });
        }
        Ok(out)
    }

    pub fn word_bidegree(&self, w: &Word) -> (u32, u32) {
        let mut h = 0;
        let mut i = w.base.degree(self.ring.weights());
        for (v, e) in &w.ext {
            h += e * self.vars[*v].hdeg;
            i += e * self.vars[*v].wdeg;
        }
        (h, i)
    }

    /// Bidegree of a nonzero homogeneous element.
    pub fn bidegree(&self, a: &Element<F::Elem>) -> Option<(u32, u32)> {
        let mut degs = a.words().map(|w| self.word_bidegree(w));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn check_owned(&self, a: &Element<F::Elem>) -> Result<()> {
        for w in a.words() {
            if let Some((v, _)) = w.ext.iter().find(|(v, _)| *v >= self.vars.len()) {
                return Err(Error::MixedTowers(*v));
            }
            if w.base.0.len() != self.ring.nvars() {
                return Err(Error::MixedTowers(usize::MAX));
            }
        }
        Ok(())
    }

    pub fn one(&self) -> Element<F::Elem> {
        Element::from_word(self.field(), Word::unit(self.ring.nvars()))
    }

    /// The `i`-th extension variable as an element.
    pub fn var(&self, i: usize) -> Element<F::Elem> {
        Element::from_word(self.field(), Word::variable(self.ring.nvars(), i))
    }

    /// The `i`-th ring variable as an element of homological degree 0.
    pub fn base_var(&self, i: usize) -> Element<F::Elem> {
        Element::from_word(self.field(), Word::base_only(Monomial::var(self.ring.nvars(), i)))
    }

    /// Divided power `x^(k)` (or ordinary power in plain towers) of an even variable.
    pub fn power(&self, i: usize, k: u32) -> Element<F::Elem> {
        if k == 0 {
            return self.one();
        }
        let nv = self.ring.nvars();
        if self.vars[i].kind == VarKind::Exterior && k > 1 {
            return Element::zero();
        }
        Element::from_word(self.field(), Word { ext: vec![(i, k)], base: Monomial::one(nv) })
    }

    /// Product of two words: extension parts merged with Koszul signs and
    /// divided-power binomials, base monomials multiplied in the ring.
    fn mul_words(&self, a: &Word, b: &Word) -> Vec<(Word, F::Elem)> {
        let field = self.field();
        let mut coeff = field.one();
        let mut ext = Vec::with_capacity(a.ext.len() + b.ext.len());
        // Moving each odd factor of `b` left past the odd factors of `a`
        // with larger index contributes one sign each.
        let is_odd = |v: usize| self.vars[v].kind == VarKind::Exterior;
        let odd_a: Vec<usize> = a.ext.iter().map(|(v, _)| *v).filter(|v| is_odd(*v)).collect();
        let mut swaps = 0usize;
        for (v, _) in b.ext.iter().filter(|(v, _)| is_odd(*v)) {
            swaps += odd_a.iter().filter(|u| *u > v).count();
        }
        let (mut i, mut j) = (0, 0);
        while i < a.ext.len() || j < b.ext.len() {
            if j == b.ext.len() || (i < a.ext.len() && a.ext[i].0 < b.ext[j].0) {
                ext.push(a.ext[i]);
                i += 1;
            } else if i == a.ext.len() || b.ext[j].0 < a.ext[i].0 {
                ext.push(b.ext[j]);
                j += 1;
            } else {
                let (v, ea) = a.ext[i];
                let eb = b.ext[j].1;
                match self.vars[v].kind {
                    VarKind::Exterior => return Vec::new(),
                    VarKind::Polynomial => {}
                    VarKind::DividedPower => {
                        coeff = field.mul(&coeff, &field.binomial((ea + eb) as u64, ea as u64));
                        if field.is_zero(&coeff) {
                            return Vec::new();
                        }
                    }
                }
                ext.push((v, ea + eb));
                i += 1;
                j += 1;
            }
        }
        if swaps % 2 == 1 {
            coeff = field.neg(&coeff);
        }
        self.ring
            .mul_monomials(&a.base, &b.base)
            .into_iter()
            .map(|(m, c)| (Word { ext: ext.clone(), base: m }, field.mul(&c, &coeff)))
            .collect()
    }

    fn mul_unchecked(&self, a: &Element<F::Elem>, b: &Element<F::Elem>) -> Element<F::Elem> {
        let field = self.field();
        let mut out = Element::zero();
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                let c = field.mul(ca, cb);
                for (w, k) in self.mul_words(wa, wb) {
                    out.add_term(field, w, &field.mul(&c, &k));
                }
            }
        }
        out
    }

    /// Strictly graded-commutative product.
    pub fn multiply(&self, a: &Element<F::Elem>, b: &Element<F::Elem>) -> Result<Element<F::Elem>> {
        self.check_owned(a)?;
        self.check_owned(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    /// Left Leibniz rule: `d(ab) = d(a) b + (-1)^|a| a d(b)`, with
    /// `d(x^(i)) = d(x) x^(i-1)` on divided powers and `d(x^i) = i d(x) x^(i-1)`
    /// on ordinary powers. The base ring has zero differential.
    pub fn word_differential(&self, w: &Word) -> Element<F::Elem> {
        let field = self.field();
        let nv = self.ring.nvars();
        let mut out = Element::zero();
        let mut degree_before = 0u32;
        for k in 0..w.ext.len() {
            let (v, e) = w.ext[k];
            let var = &self.vars[v];
            let mut factor = var.differential.clone();
            if e > 1 {
                let rest = Element::from_word(field, Word { ext: vec![(v, e - 1)], base: Monomial::one(nv) });
                factor = self.mul_unchecked(&factor, &rest);
                if var.kind == VarKind::Polynomial {
                    factor = factor.scale(field, &field.from_i64(e as i64));
                }
            }
            let prefix = Element::from_word(field, Word { ext: w.ext[..k].to_vec(), base: w.base.clone() });
            let suffix = Element::from_word(field, Word { ext: w.ext[k + 1..].to_vec(), base: Monomial::one(nv) });
            let mut term = self.mul_unchecked(&self.mul_unchecked(&prefix, &factor), &suffix);
            if degree_before % 2 == 1 {
                term = term.scale(field, &field.neg(&field.one()));
            }
            out = out.add(field, &term);
            degree_before += e * var.hdeg;
        }
        out
    }

    pub fn differential(&self, a: &Element<F::Elem>) -> Result<Element<F::Elem>> {
        self.check_owned(a)?;
        let field = self.field();
        let mut out = Element::zero();
        for (w, c) in a.terms() {
            out = out.add(field, &self.word_differential(w).scale(field, c));
        }
        Ok(out)
    }

    fn check_bounds(&self, n: u32, d: u32) -> Result<()> {
        if n > self.bounds.max_hdeg {
            return Err(Error::BoundExceeded { what: "homological degree", value: n, bound: self.bounds.max_hdeg });
        }
        if d > self.bounds.max_idim {
            return Err(Error::BoundExceeded { what: "internal degree", value: d, bound: self.bounds.max_idim });
        }
        Ok(())
    }

    /// All words of bidegree `(n, d)`: extension parts enumerated in
    /// adjunction order, each followed by the standard monomials of the
    /// remaining internal degree.
    pub fn piece_basis(&self, n: u32, d: u32) -> Result<Arc<PieceBasis>> {
        self.check_bounds(n, d)?;
        if let Some(b) = self.bases.read().expect("basis cache poisoned").get(&(n, d)) {
            return Ok(Arc::clone(b));
        }
        let mut words = Vec::new();
        let mut cur = Vec::new();
        self.enumerate(0, n, Some(d), &mut cur, &mut |ext, left| {
            let left = left.expect("internal budget tracked");
            for m in &self.ring.piece(left).standard {
                words.push(Word { ext: ext.to_vec(), base: m.clone() });
            }
        });
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let basis = Arc::new(PieceBasis { hdeg: n, idim: d, words, index });
        let mut cache = self.bases.write().expect("basis cache poisoned");
        Ok(Arc::clone(cache.entry((n, d)).or_insert(basis)))
    }

    /// Extension parts of homological degree `n` with no base factor,
    /// regardless of internal degree.
    pub fn extension_words(&self, n: u32) -> Vec<Vec<(usize, u32)>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.enumerate(0, n, None, &mut cur, &mut |ext, _| out.push(ext.to_vec()));
        out
    }

    fn enumerate(
        &self,
        i: usize,
        n_left: u32,
        w_left: Option<u32>,
        cur: &mut Vec<(usize, u32)>,
        emit: &mut dyn FnMut(&[(usize, u32)], Option<u32>),
    ) {
        if n_left == 0 {
            emit(cur, w_left);
            return;
        }
        if i == self.vars.len() {
            return;
        }
        let v = &self.vars[i];
        let mut max_e = n_left / v.hdeg;
        if v.kind == VarKind::Exterior {
            max_e = max_e.min(1);
        }
        if let Some(w) = w_left {
            max_e = max_e.min(w / v.wdeg);
        }
        for e in (0..=max_e).rev() {
            if e > 0 {
                cur.push((i, e));
            }
            self.enumerate(i + 1, n_left - e * v.hdeg, w_left.map(|w| w - e * v.wdeg), cur, emit);
            if e > 0 {
                cur.pop();
            }
        }
    }

    /// Coordinates of a homogeneous element in the `(n, d)` basis.
    pub fn coordinates(&self, n: u32, d: u32, a: &Element<F::Elem>) -> Result<SparseVec<F::Elem>> {
        let basis = self.piece_basis(n, d)?;
        let mut entries = Vec::with_capacity(a.len());
        for (w, c) in a.terms() {
            let i = basis.position(w).ok_or_else(|| {
                Error::BadDifferential(format!("word {:?} does not lie in bidegree ({n}, {d})", w))
            })?;
            entries.push((i, c.clone()));
        }
        Ok(collect_sparse(self.field(), entries))
    }

    pub fn element_from_coordinates(&self, basis: &PieceBasis, v: &SparseVec<F::Elem>) -> Element<F::Elem> {
        Element::from_terms(self.field(), v.iter().map(|(i, c)| (basis.words[*i].clone(), c.clone())))
    }

    /// Matrix of `d: C_(n,d) -> C_(n-1,d)`; column `j` holds the coordinates
    /// of the boundary of word `j`.
    pub fn differential_matrix(&self, n: u32, d: u32) -> Result<Arc<Matrix<F::Elem>>> {
        self.check_bounds(n, d)?;
        if let Some(m) = self.matrices.read().expect("matrix cache poisoned").get(&(n, d)) {
            return Ok(Arc::clone(m));
        }
        let src = self.piece_basis(n, d)?;
        let m = if n == 0 {
            Matrix::zero(0, src.len())
        } else {
            let tgt = self.piece_basis(n - 1, d)?;
            let columns = src
                .words
                .iter()
                .map(|w| self.coordinates(n - 1, d, &self.word_differential(w)))
                .collect::<Result<Vec<_>>>()?;
            Matrix::from_columns(tgt.len(), columns)
        };
        let m = Arc::new(m);
        let mut cache = self.matrices.write().expect("matrix cache poisoned");
        Ok(Arc::clone(cache.entry((n, d)).or_insert(m)))
    }

    pub fn format_word(&self, w: &Word) -> String {
        let mut parts = Vec::new();
        if !w.base.is_one() {
            parts.push(w.base.format(self.ring.names()));
        }
        for (v, e) in &w.ext {
            let var = &self.vars[*v];
            parts.push(match (var.kind, e) {
                (_, 1) => var.name.clone(),
                (VarKind::DividedPower, e) => format!("{}^({e})", var.name),
                (_, e) => format!("{}^{e}", var.name),
            });
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn format_element(&self, a: &Element<F::Elem>) -> String {
        let field = self.field();
        format_terms(a.terms().map(|(w, c)| (self.format_word(w), field.display(c))))
    }

    pub fn dump(&self) -> Vec<VariableDump> {
        self.vars
            .iter()
            .map(|v| VariableDump {
                name: v.name.clone(),
                hdeg: v.hdeg,
                idim: v.wdeg,
                flavor: v.kind,
                differential: self.format_element(&v.differential),
            })
            .collect()
    }

    /// No boundary has a term that is a lone extension variable with unit
    /// base monomial, i.e. `d(Y)` lies in `m R[Y] + (Y)^2`.
    pub fn is_decomposable(&self) -> bool {
        self.vars.iter().all(|v| v.differential.words().all(|w| !(w.base.is_one() && w.ext_length() == 1)))
    }

    /// Every word of every boundary carries a base variable or at least two
    /// extension factors.
    pub fn satisfies_closure_minimality(&self) -> bool {
        self.vars.iter().all(|v| v.differential.words().all(|w| !w.base.is_one() || w.ext_length() >= 2))
    }

    /// Whether every entry of the `(n, d)` differential lands in `m` times the
    /// tower, i.e. every target word has a nontrivial base monomial.
    pub fn differential_in_maximal_ideal(&self, n: u32, d: u32) -> Result<bool> {
        if n == 0 {
            return Ok(true);
        }
        let m = self.differential_matrix(n, d)?;
        let tgt = self.piece_basis(n - 1, d)?;
        Ok(m.columns.iter().flatten().all(|(i, _)| !tgt.words[*i].base.is_one()))
    }
}
