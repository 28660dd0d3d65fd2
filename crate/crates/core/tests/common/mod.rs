//! Brute-force oracles that share no code with the library: their own
//! monomial enumeration, exact rational row reduction, quotient-ring
//! normal forms and a truncated minimal free resolution.
#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;
pub type Mono = Vec<u32>;
/// Sparse polynomial as monomial -> coefficient.
pub type Poly = Vec<(Mono, Q)>;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses the small polynomial syntax used by the fixtures.
pub fn parse(text: &str, names: &[&str]) -> Poly {
    let mut out: HashMap<Mono, Q> = HashMap::new();
    let cleaned = text.replace(' ', "").replace('-', "+-");
    for term in cleaned.split('+').filter(|t| !t.is_empty()) {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term),
        };
        let mut coeff = q(sign);
        let mut mono = vec![0u32; names.len()];
        for factor in body.split('*') {
            if let Ok(c) = factor.parse::<i64>() {
                coeff *= q(c);
                continue;
            }
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (n, e.parse::<u32>().unwrap()),
                None => (factor, 1),
            };
            let i = names.iter().position(|n| *n == name).unwrap_or_else(|| panic!("unknown variable {name}"));
            mono[i] += exp;
        }
        *out.entry(mono).or_insert_with(Q::zero) += coeff;
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub fn degree(m: &[u32], w: &[u32]) -> u32 {
    m.iter().zip(w).map(|(e, w)| e * w).sum()
}

/// All monomials of weighted degree `d`, in an arbitrary fixed order.
pub fn monomials(w: &[u32], d: u32) -> Vec<Mono> {
    fn go(w: &[u32], i: usize, left: u32, cur: &mut Mono, out: &mut Vec<Mono>) {
        if i == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=left / w[i] {
            cur[i] = e;
            go(w, i + 1, left - e * w[i], cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(w, 0, d, &mut vec![0; w.len()], &mut out);
    out
}

fn mul(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Dense rank over Q.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    echelon(rows).len()
}

/// Row-reduced echelon form; returns rows with their pivot columns.
pub fn echelon(rows: &[Vec<Q>]) -> Vec<(usize, Vec<Q>)> {
    let mut out: Vec<(usize, Vec<Q>)> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        for (p, row) in &out {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &c * y;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[p].recip();
            for x in v.iter_mut() {
                *x *= &inv;
            }
            for (_, row) in out.iter_mut() {
                if !row[p].is_zero() {
                    let c = row[p].clone();
                    for (x, y) in row.iter_mut().zip(&v) {
                        *x -= &c * y;
                    }
                }
            }
            out.push((p, v));
        }
    }
    out
}

/// Basis of the null space of `m` (given as rows, acting on column vectors).
pub fn null_space(m: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let ech = echelon(m);
    let pivots: Vec<usize> = ech.iter().map(|(p, _)| *p).collect();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Q::zero(); cols];
            v[free] = Q::one();
            for (p, row) in &ech {
                v[*p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Exact quotient `k[x]/I` with per-degree normal forms.
pub struct Quotient {
    pub weights: Vec<u32>,
    gens: Vec<Poly>,
    cache: HashMap<u32, Graded>,
}

pub struct Graded {
    pub monos: Vec<Mono>,
    pub standard: Vec<usize>,
    /// For each monomial, its coordinates in the standard basis.
    pub nf: Vec<Vec<Q>>,
}

impl Quotient {
    pub fn new(weights: &[u32], gens: Vec<Poly>) -> Self {
        Quotient { weights: weights.to_vec(), gens, cache: HashMap::new() }
    }

    pub fn graded(&mut self, d: u32) -> &Graded {
        if !self.cache.contains_key(&d) {
            let monos = monomials(&self.weights, d);
            let idx: HashMap<Mono, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut rows = Vec::new();
            for g in &self.gens {
                let gd = degree(&g[0].0, &self.weights);
                if gd > d {
                    continue;
                }
                for u in monomials(&self.weights, d - gd) {
                    let mut row = vec![Q::zero(); monos.len()];
                    for (m, c) in g {
                        row[idx[&mul(&u, m)]] += c;
                    }
                    rows.push(row);
                }
            }
            let ech = echelon(&rows);
            let pivots: Vec<usize> = ech.iter().map(|(p, _)| *p).collect();
            let standard: Vec<usize> = (0..monos.len()).filter(|c| !pivots.contains(c)).collect();
            let nf = (0..monos.len())
                .map(|i| {
                    if let Some(k) = standard.iter().position(|&s| s == i) {
                        let mut v = vec![Q::zero(); standard.len()];
                        v[k] = Q::one();
                        v
                    } else {
                        let (_, row) = ech.iter().find(|(p, _)| *p == i).unwrap();
                        standard.iter().map(|&s| -row[s].clone()).collect()
                    }
                })
                .collect();
            self.cache.insert(d, Graded { monos, standard, nf });
        }
        &self.cache[&d]
    }

    pub fn dim(&mut self, d: u32) -> usize {
        self.graded(d).standard.len()
    }

    /// Coordinates of `m * (standard basis element k of degree e)`.
    fn times(&mut self, m: &[u32], e: u32, k: usize) -> Vec<Q> {
        let s = {
            let g = self.graded(e);
            g.monos[g.standard[k]].clone()
        };
        let prod = mul(m, &s);
        let d = degree(&prod, &self.weights);
        let g = self.graded(d);
        let i = g.monos.iter().position(|x| *x == prod).unwrap();
        g.nf[i].clone()
    }

    fn poly_coords(&mut self, p: &Poly, d: u32) -> Vec<Q> {
        let g = self.graded(d);
        let mut v = vec![Q::zero(); g.standard.len()];
        for (m, c) in p {
            let i = g.monos.iter().position(|x| x == m).unwrap();
            for (x, y) in v.iter_mut().zip(&g.nf[i]) {
                *x += c * y;
            }
        }
        v
    }
}

/// Hilbert function of `k[x]/(gens)` through degree `top`.
pub fn hilbert(weights: &[u32], gens: &[Poly], top: u32) -> Vec<usize> {
    let mut r = Quotient::new(weights, gens.to_vec());
    (0..=top).map(|d| r.dim(d)).collect()
}

/// `μ(H_1)` of the Koszul complex on `f_1..f_r` over the quotient by
/// `base`, by dense linear algebra degree by degree:
/// `μ_d = dim Z_d - dim(B_d + sum_i x_i Z_(d - w_i))`.
pub fn koszul_h1_mu(weights: &[u32], base: &[Poly], fs: &[Poly], top: u32) -> usize {
    let mut r = Quotient::new(weights, base.to_vec());
    let fdeg: Vec<u32> = fs.iter().map(|f| degree(&f[0].0, weights)).collect();
    // K_1 in degree d: blocks R_(d - deg f_i); K_2: blocks R_(d - deg f_i - deg f_j), i < j.
    let block = |r: &mut Quotient, shifts: &[Option<u32>]| -> Vec<(usize, u32, usize)> {
        let mut out = Vec::new();
        for (b, s) in shifts.iter().enumerate() {
            if let Some(e) = s {
                for k in 0..r.dim(*e) {
                    out.push((b, *e, k));
                }
            }
        }
        out
    };
    let mut cycles: Vec<Vec<Vec<Q>>> = Vec::new();
    let mut k1_bases = Vec::new();
    let mut total = 0;
    for d in 0..=top {
        let k1 = block(&mut r, &fdeg.iter().map(|&g| d.checked_sub(g)).collect::<Vec<_>>());
        let pairs: Vec<(usize, usize)> =
            (0..fs.len()).flat_map(|i| (i + 1..fs.len()).map(move |j| (i, j))).collect();
        let k2 = block(&mut r, &pairs.iter().map(|&(i, j)| d.checked_sub(fdeg[i] + fdeg[j])).collect::<Vec<_>>());
        let k0 = r.dim(d);
        // d1: e_i * s -> f_i s
        let mut d1_cols = Vec::new();
        for &(i, e, k) in &k1 {
            let s = {
                let g = r.graded(e);
                g.monos[g.standard[k]].clone()
            };
            let prod: Poly = fs[i].iter().map(|(m, c)| (mul(m, &s), c.clone())).collect();
            d1_cols.push(r.poly_coords(&prod, d));
        }
        let d1_rows: Vec<Vec<Q>> = (0..k0).map(|row| d1_cols.iter().map(|c| c[row].clone()).collect()).collect();
        let z = null_space(&d1_rows, k1.len());
        // d2: e_i e_j * s -> f_i s e_j - f_j s e_i
        let pos = |b: usize, e: u32, k: usize| k1.iter().position(|&t| t == (b, e, k)).unwrap();
        let mut boundaries = Vec::new();
        for &(p, e, k) in &k2 {
            let (i, j) = pairs[p];
            let mut v = vec![Q::zero(); k1.len()];
            for (target, other, sign) in [(j, i, 1i64), (i, j, -1i64)] {
                let te = d - fdeg[target];
                for (m, c) in &fs[other] {
                    let coords = r.times(m, e, k);
                    for (kk, x) in coords.iter().enumerate() {
                        if !x.is_zero() {
                            v[pos(target, te, kk)] += x * c * q(sign);
                        }
                    }
                }
            }
            boundaries.push(v);
        }
        // x_v * Z_(d - w_v)
        let mut span = boundaries.clone();
        for (var, &w) in weights.iter().enumerate() {
            if w > d {
                continue;
            }
            let lower = &cycles[(d - w) as usize];
            let lower_basis: &Vec<(usize, u32, usize)> = &k1_bases[(d - w) as usize];
            let mut xv = vec![0u32; weights.len()];
            xv[var] = 1;
            for z in lower {
                let mut v = vec![Q::zero(); k1.len()];
                for (idx, c) in z.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (b, e, k) = lower_basis[idx];
                    let coords = r.times(&xv, e, k);
                    for (kk, x) in coords.iter().enumerate() {
                        if !x.is_zero() {
                            v[pos(b, e + w, kk)] += x * c;
                        }
                    }
                }
                span.push(v);
            }
        }
        total += z.len() - rank(&span);
        cycles.push(z);
        k1_bases.push(k1);
    }
    total
}

/// Betti numbers `b_0..b_n_max` of the residue field over `k[x]/(gens)`,
/// from a minimal graded free resolution built degree by degree through
/// internal degree `top`.
pub fn betti_oracle(weights: &[u32], gens: &[Poly], n_max: usize, top: u32) -> Vec<usize> {
    let mut s = Quotient::new(weights, gens.to_vec());
    // A free module is a list of generator degrees; a map F -> G stores
    // each generator's image as a vector over G's degree-a basis.
    let basis = |s: &mut Quotient, gdeg: &[u32], d: u32| -> Vec<(usize, u32, usize)> {
        let mut out = Vec::new();
        for (j, &a) in gdeg.iter().enumerate() {
            if a <= d {
                for k in 0..s.dim(d - a) {
                    out.push((j, d - a, k));
                }
            }
        }
        out
    };
    // Image of basis element (j, e, k) of F under the map with generator
    // images `imgs`, expressed in G's degree-d basis.
    fn apply(
        s: &mut Quotient,
        imgs: &[Vec<Q>],
        gdeg_f: &[u32],
        gdeg_g: &[u32],
        elem: (usize, u32, usize),
        g_basis_d: &[(usize, u32, usize)],
        basis_at: &dyn Fn(&mut Quotient, &[u32], u32) -> Vec<(usize, u32, usize)>,
    ) -> Vec<Q> {
        let (j, e, k) = elem;
        let a = gdeg_f[j];
        let src = basis_at(s, gdeg_g, a);
        let mono = {
            let g = s.graded(e);
            g.monos[g.standard[k]].clone()
        };
        let mut out = vec![Q::zero(); g_basis_d.len()];
        for (idx, c) in imgs[j].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (gj, ge, gk) = src[idx];
            let coords = s.times(&mono, ge, gk);
            for (kk, x) in coords.iter().enumerate() {
                if !x.is_zero() {
                    let t = g_basis_d.iter().position(|&b| b == (gj, ge + e, kk)).unwrap();
                    out[t] += x * c;
                }
            }
        }
        out
    }

    let mut betti = vec![1usize];
    // F_0 = S, F_1 -> F_0 sends generators to the variables.
    let mut prev_deg: Vec<u32> = vec![0];
    let mut cur_deg: Vec<u32> = weights.to_vec();
    let mut cur_imgs: Vec<Vec<Q>> = (0..weights.len())
        .map(|v| {
            let mut m = vec![0u32; weights.len()];
            m[v] = 1;
            let g = s.graded(weights[v]);
            let i = g.monos.iter().position(|x| *x == m).unwrap();
            g.nf[i].clone()
        })
        .collect();
    betti.push(cur_deg.len());
    for _ in 2..=n_max {
        // kernel of F_cur -> F_prev, degree by degree, and its minimal generators
        let mut kernels: Vec<(Vec<(usize, u32, usize)>, Vec<Vec<Q>>)> = Vec::new();
        let mut next_deg = Vec::new();
        let mut next_imgs = Vec::new();
        for d in 0..=top {
            let fb = basis(&mut s, &cur_deg, d);
            let gb = basis(&mut s, &prev_deg, d);
            let cols: Vec<Vec<Q>> =
                fb.iter().map(|&el| apply(&mut s, &cur_imgs, &cur_deg, &prev_deg, el, &gb, &basis)).collect();
            let rows: Vec<Vec<Q>> = (0..gb.len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
            let ker = null_space(&rows, fb.len());
            // m * K in degree d
            let mut span = Vec::new();
            for (var, &w) in weights.iter().enumerate() {
                if w > d {
                    continue;
                }
                let (lb, lk) = &kernels[(d - w) as usize];
                let mut xv = vec![0u32; weights.len()];
                xv[var] = 1;
                for z in lk {
                    let mut v = vec![Q::zero(); fb.len()];
                    for (idx, c) in z.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let (j, e, k) = lb[idx];
                        let coords = s.times(&xv, e, k);
                        for (kk, x) in coords.iter().enumerate() {
                            if !x.is_zero() {
                                let t = fb.iter().position(|&b| b == (j, e + w, kk)).unwrap();
                                v[t] += x * c;
                            }
                        }
                    }
                    span.push(v);
                }
            }
            let mut r = rank(&span);
            for z in &ker {
                span.push(z.clone());
                let r2 = rank(&span);
                if r2 > r {
                    r = r2;
                    next_deg.push(d);
                    next_imgs.push(z.clone());
                }
            }
            kernels.push((fb, ker));
        }
        betti.push(next_deg.len());
        prev_deg = std::mem::replace(&mut cur_deg, next_deg);
        cur_imgs = next_imgs;
    }
    betti
}

/// Deviations `ε_1..ε_n` recovered from Betti numbers by peeling factors
/// `(1 + t^n)^ε` (odd n) and `(1 - t^n)^(-ε)` (even n) off the series.
pub fn deviations_from_betti(betti: &[usize]) -> Vec<i64> {
    let n = betti.len() - 1;
    let mut eps = Vec::new();
    let mut product = vec![0i128; n + 1];
    product[0] = 1;
    for k in 1..=n {
        let e = betti[k] as i128 - product[k];
        eps.push(e as i64);
        for _ in 0..e.max(0) {
            if k % 2 == 1 {
                for i in (k..=n).rev() {
                    product[i] += product[i - k];
                }
            } else {
                for i in k..=n {
                    product[i] += product[i - k];
                }
            }
        }
    }
    eps
}
