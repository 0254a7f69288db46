//! Sparse bivariate polynomials over an exact field.
//!
//! Terms are kept in a map from (x-exponent, y-exponent) to nonzero
//! coefficient. The term order used for leading terms and normalization is
//! graded lexicographic with y > x.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::field::Field;
use crate::rat::{denominator_lcm, Rat};
use crate::unipoly::UniPoly;

/// A bivariate polynomial; no zero coefficients are stored.
#[derive(Clone, PartialEq, Debug)]
pub struct BiPoly<F: Field> {
    pub terms: BTreeMap<(u32, u32), F>,
}

impl<F: Field> BiPoly<F> {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        BiPoly { terms }
    }

    pub fn term(c: F, xe: u32, ye: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((xe, ye), c);
        }
        BiPoly { terms }
    }

    pub fn var_x() -> Self {
        BiPoly::term(F::one(), 1, 0)
    }

    pub fn var_y() -> Self {
        BiPoly::term(F::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), F)>>(it: I) -> Self {
        let mut p = BiPoly::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, key: (u32, u32), c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    /// Total degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn deg(&self) -> u32 {
        self.degree().unwrap_or(0)
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    pub fn coeff(&self, xe: u32, ye: u32) -> F {
        self.terms.get(&(xe, ye)).cloned().unwrap_or_else(F::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(k, a)| (*k, a.mul(c))).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = BiPoly::constant(F::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> BiPoly<G> {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter_map(|(k, c)| {
                    let g = f(c);
                    if g.is_zero() {
                        None
                    } else {
                        Some((*k, g))
                    }
                })
                .collect(),
        }
    }

    pub fn d_dx(&self) -> Self {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term((i - 1, j), c.mul(&F::from_i64(i as i64)));
            }
        }
        out
    }

    pub fn d_dy(&self) -> Self {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term((i, j - 1), c.mul(&F::from_i64(j as i64)));
            }
        }
        out
    }

    /// Section at x = a, as a polynomial in y.
    pub fn eval_x(&self, a: &F) -> UniPoly<F> {
        let mut coeffs = vec![F::zero(); self.deg_y() as usize + 1];
        for (&(i, j), c) in &self.terms {
            let mut p = c.clone();
            for _ in 0..i {
                p = p.mul(a);
            }
            coeffs[j as usize] = coeffs[j as usize].add(&p);
        }
        UniPoly::new(coeffs)
    }

    /// Section at y = a, as a polynomial in x.
    pub fn eval_y(&self, a: &F) -> UniPoly<F> {
        let mut coeffs = vec![F::zero(); self.deg_x() as usize + 1];
        for (&(i, j), c) in &self.terms {
            let mut p = c.clone();
            for _ in 0..j {
                p = p.mul(a);
            }
            coeffs[i as usize] = coeffs[i as usize].add(&p);
        }
        UniPoly::new(coeffs)
    }

    pub fn eval(&self, x: &F, y: &F) -> F {
        self.eval_x(x).eval(y)
    }

    /// Coefficient of y^j as a polynomial in x.
    pub fn y_coefficient(&self, j: u32) -> UniPoly<F> {
        let mut coeffs = vec![F::zero(); self.deg_x() as usize + 1];
        for (&(i, jj), c) in &self.terms {
            if jj == j {
                coeffs[i as usize] = c.clone();
            }
        }
        UniPoly::new(coeffs)
    }

    /// View as a polynomial in y with coefficients in F[x], lowest first.
    pub fn y_coefficients(&self) -> Vec<UniPoly<F>> {
        (0..=self.deg_y()).map(|j| self.y_coefficient(j)).collect()
    }

    pub fn from_y_coefficients(coeffs: &[UniPoly<F>]) -> Self {
        let mut out = BiPoly::zero();
        for (j, p) in coeffs.iter().enumerate() {
            for (i, c) in p.coeffs.iter().enumerate() {
                out.add_term((i as u32, j as u32), c.clone());
            }
        }
        out
    }

    /// Substitute x -> x + a.
    pub fn shift_x(&self, a: &F) -> Self {
        if a.is_zero() {
            return self.clone();
        }
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            // (x + a)^i expanded with a running binomial row
            let mut bin = F::one();
            let mut apow = vec![F::one()];
            for _ in 0..i {
                apow.push(apow.last().unwrap().mul(a));
            }
            for k in 0..=i {
                // bin = C(i, k)
                out.add_term((k, j), c.mul(&bin).mul(&apow[(i - k) as usize]));
                if k < i {
                    let num = F::from_i64((i - k) as i64);
                    let den = F::from_i64((k + 1) as i64);
                    bin = bin.mul(&num).div(&den);
                }
            }
        }
        out
    }

    /// Substitute y -> y + a.
    pub fn shift_y(&self, a: &F) -> Self {
        self.swap_vars().shift_x(a).swap_vars()
    }

    /// Substitute x -> x + s*y (a shear along y).
    pub fn shear_x(&self, s: &F) -> Self {
        if s.is_zero() {
            return self.clone();
        }
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            let mut bin = F::one();
            let mut spow = vec![F::one()];
            for _ in 0..i {
                spow.push(spow.last().unwrap().mul(s));
            }
            for k in 0..=i {
                out.add_term((k, j + (i - k)), c.mul(&bin).mul(&spow[(i - k) as usize]));
                if k < i {
                    let num = F::from_i64((i - k) as i64);
                    let den = F::from_i64((k + 1) as i64);
                    bin = bin.mul(&num).div(&den);
                }
            }
        }
        out
    }

    pub fn swap_vars(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    /// Homogeneous component of the given total degree.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j == d)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Leading monomial under grlex with y > x.
    pub fn leading_monomial(&self) -> Option<(u32, u32)> {
        self.terms
            .keys()
            .max_by(|a, b| grlex_cmp(**a, **b))
            .copied()
    }

    pub fn leading_coeff(&self) -> F {
        match self.leading_monomial() {
            Some(k) => self.terms[&k].clone(),
            None => F::zero(),
        }
    }

    /// Exact quotient self / rhs, or None when the division leaves a
    /// remainder. Single-divisor multivariate division under grlex.
    pub fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let div_lm = rhs.leading_monomial().unwrap();
        let div_lc = rhs.terms[&div_lm].clone();
        let mut rem = self.clone();
        let mut quo = BiPoly::zero();
        while let Some(lm) = rem.leading_monomial() {
            if lm.0 < div_lm.0 || lm.1 < div_lm.1 {
                return None;
            }
            let qm = (lm.0 - div_lm.0, lm.1 - div_lm.1);
            let qc = rem.terms[&lm].div(&div_lc);
            let t = BiPoly::term(qc, qm.0, qm.1);
            quo = quo.add(&t);
            rem = rem.sub(&t.mul(rhs));
        }
        Some(quo)
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        self_divides(self, other)
    }
}

fn self_divides<F: Field>(d: &BiPoly<F>, n: &BiPoly<F>) -> bool {
    n.exact_div(d).is_some()
}

/// Pseudo-division with respect to y: lc_y(q)^k * p = quo * q + rem with
/// deg_y(rem) < deg_y(q). Requires deg_y(q) >= 1.
pub fn pseudo_div_rem_y<F: Field>(p: &BiPoly<F>, q: &BiPoly<F>) -> (BiPoly<F>, BiPoly<F>) {
    let dq = q.deg_y();
    assert!(dq >= 1, "pseudo-division needs positive y-degree divisor");
    let lq = BiPoly::from_y_coefficients(core::slice::from_ref(&q.y_coefficient(dq)));
    let mut rem = p.clone();
    let mut quo = BiPoly::zero();
    while !rem.is_zero() {
        let dr = rem.deg_y();
        if dr < dq {
            break;
        }
        // rem <- rem * lq - lr * y^{dr-dq} * q; the top y-terms cancel
        let lr = rem.y_coefficient(dr);
        let lr_shift =
            BiPoly::from_y_coefficients(core::slice::from_ref(&lr)).mul(&BiPoly::term(
                F::one(),
                0,
                dr - dq,
            ));
        quo = quo.mul(&lq).add(&lr_shift);
        rem = rem.mul(&lq).sub(&lr_shift.mul(q));
    }
    (quo, rem)
}

/// Content with respect to y: gcd in F[x] of the y-coefficients (monic).
pub fn content_y<F: Field>(p: &BiPoly<F>) -> UniPoly<F> {
    let mut g = UniPoly::zero();
    for c in p.y_coefficients() {
        if !c.is_zero() {
            g = g.gcd(&c);
            if g.is_constant() {
                break;
            }
        }
    }
    g
}

/// Primitive part with respect to y (content divided out), over any field.
pub fn primitive_part_y_in<F: Field>(p: &BiPoly<F>) -> BiPoly<F> {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_y(p);
    if c.is_constant() {
        return p.clone();
    }
    let emb = BiPoly::from_y_coefficients(core::slice::from_ref(&c));
    p.exact_div(&emb).expect("content divides")
}

/// Greatest common divisor via the primitive polynomial remainder sequence
/// in (F[x])[y]. The result is primitive in y with a monic grlex leading
/// coefficient; the Q specialization re-normalizes to the integer
/// convention.
pub fn gcd_bipoly_in<F: Field>(p: &BiPoly<F>, q: &BiPoly<F>) -> BiPoly<F> {
    if p.is_zero() {
        return make_monic_grlex(q);
    }
    if q.is_zero() {
        return make_monic_grlex(p);
    }
    let cp = content_y(p);
    let cq = content_y(q);
    let cg = cp.gcd(&cq);
    let mut a = primitive_part_y_in(p);
    let mut b = primitive_part_y_in(q);
    if a.deg_y() < b.deg_y() {
        core::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() && b.deg_y() > 0 {
        let (_, r) = pseudo_div_rem_y(&a, &b);
        a = b;
        b = if r.is_zero() {
            BiPoly::zero()
        } else {
            primitive_part_y_in(&r)
        };
    }
    let core = if b.is_zero() {
        a
    } else {
        // a nonzero remainder of y-degree 0 means coprime primitive parts
        BiPoly::constant(F::one())
    };
    let cg_embed = BiPoly::from_y_coefficients(core::slice::from_ref(&cg));
    make_monic_grlex(&primitive_part_y_in(&core).mul(&cg_embed))
}

fn make_monic_grlex<F: Field>(p: &BiPoly<F>) -> BiPoly<F> {
    if p.is_zero() {
        return p.clone();
    }
    let lc = p.leading_coeff();
    p.scale(&lc.inv().expect("nonzero leading coefficient"))
}

/// Resultant with respect to y, by evaluation at x-points and Lagrange
/// interpolation. Requires positive y-degree on both sides.
pub fn resultant_y_in<F: Field>(p: &BiPoly<F>, q: &BiPoly<F>) -> UniPoly<F> {
    let dp = p.deg_y() as usize;
    let dq = q.deg_y() as usize;
    assert!(dp >= 1 && dq >= 1, "resultant needs positive y-degrees");
    let bound = dp * q.deg_x() as usize + dq * p.deg_x() as usize + 1;
    let lp = p.y_coefficient(p.deg_y());
    let lq = q.y_coefficient(q.deg_y());
    let mut xs: Vec<F> = Vec::with_capacity(bound);
    let mut vals: Vec<F> = Vec::with_capacity(bound);
    let mut k: i64 = 0;
    while xs.len() < bound {
        let x0 = F::from_i64(k);
        k += 1;
        // skip points that drop either leading coefficient
        if lp.eval(&x0).is_zero() || lq.eval(&x0).is_zero() {
            continue;
        }
        let pu = p.eval_x(&x0);
        let qu = q.eval_x(&x0);
        vals.push(pu.resultant(&qu));
        xs.push(x0);
    }
    lagrange_interpolate(&xs, &vals)
}

/// Lagrange interpolation through distinct points.
pub fn lagrange_interpolate<F: Field>(xs: &[F], ys: &[F]) -> UniPoly<F> {
    let mut out = UniPoly::zero();
    for (i, xi) in xs.iter().enumerate() {
        let mut num = UniPoly::one();
        let mut den = F::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                num = num.mul(&UniPoly::new(alloc::vec![xj.neg(), F::one()]));
                den = den.mul(&xi.sub(xj));
            }
        }
        out = out.add(&num.scale(&ys[i].div(&den)));
    }
    out
}

/// Graded lexicographic comparison with y > x.
pub fn grlex_cmp(a: (u32, u32), b: (u32, u32)) -> core::cmp::Ordering {
    let da = a.0 + a.1;
    let db = b.0 + b.1;
    da.cmp(&db).then(a.1.cmp(&b.1)).then(a.0.cmp(&b.0))
}

impl BiPoly<Rat> {
    pub fn from_i64_terms(ts: &[(i64, u32, u32)]) -> Self {
        BiPoly::from_terms(
            ts.iter()
                .map(|&(c, i, j)| ((i, j), Rat::from_integer(BigInt::from(c)))),
        )
    }

    /// Canonical form: integer coefficients with content 1 and positive
    /// leading coefficient under grlex with y > x.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = denominator_lcm(self.terms.values());
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = num_integer::Integer::gcd(&g, &(c.numer() * (&l / c.denom())));
        }
        let lead = self.leading_coeff();
        let mut scale = Rat::new(l, g);
        if (lead.clone() * scale.clone()).numer().is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }

    /// True when the two polynomials agree up to a nonzero rational factor.
    pub fn proportional_to(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }
}

/// Greatest common divisor over Q, in the canonical integer normalization.
pub fn gcd_bipoly(p: &BiPoly<Rat>, q: &BiPoly<Rat>) -> BiPoly<Rat> {
    gcd_bipoly_in(p, q).normalized()
}

/// Primitive part with respect to y over Q; rejects the zero polynomial.
pub fn primitive_part_y(p: &BiPoly<Rat>) -> crate::error::Result<BiPoly<Rat>> {
    if p.is_zero() {
        return Err(crate::error::Error::Precondition(
            alloc::string::String::from("primitive part of the zero polynomial"),
        ));
    }
    Ok(primitive_part_y_in(p).normalized())
}

/// Resultant with respect to y over Q; both inputs need positive y-degree.
pub fn resultant_y(p: &BiPoly<Rat>, q: &BiPoly<Rat>) -> crate::error::Result<UniPoly<Rat>> {
    if p.deg_y() < 1 || q.deg_y() < 1 || p.is_zero() || q.is_zero() {
        return Err(crate::error::Error::Precondition(
            alloc::string::String::from("resultant needs positive y-degree on both sides"),
        ));
    }
    Ok(resultant_y_in(p, q))
}

/// The monomials of total degree at most n, in the ansatz order: y-degree
/// descending, x-degree ascending inside a block.
pub fn ansatz_monomials(n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for j in (0..=n).rev() {
        for i in 0..=(n - j) {
            out.push((i, j));
        }
    }
    out
}
