//! Regular-point preparation and truncated power-series solutions of
//! dy/dx = B(x,y)/A(x,y).

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::bipoly::{gcd_bipoly, BiPoly};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::rat::{rat_i64, Rat};
use crate::unipoly::UniPoly;

/// A planar polynomial vector field (A, B) with its degree.
#[derive(Clone, PartialEq, Debug)]
pub struct VectorField {
    pub a: BiPoly<Rat>,
    pub b: BiPoly<Rat>,
    pub d: u32,
}

impl VectorField {
    /// Builds the field, checking A != 0 and coprimality of A and B.
    pub fn new(a: BiPoly<Rat>, b: BiPoly<Rat>) -> Result<VectorField> {
        if a.is_zero() {
            return Err(Error::Precondition("vector field with A = 0".to_string()));
        }
        let g = gcd_bipoly(&a, &b);
        if !g.is_constant() {
            return Err(Error::Precondition(
                "A and B must be coprime".to_string(),
            ));
        }
        let d = a.deg().max(b.deg()).max(1);
        Ok(VectorField { a, b, d })
    }

    /// The shifted field (A(x+x0, y), B(x+x0, y)).
    pub fn shift_x(&self, x0: &Rat) -> VectorField {
        VectorField {
            a: self.a.shift_x(x0),
            b: self.b.shift_x(x0),
            d: self.d,
        }
    }

    /// A(0, y) as a univariate polynomial.
    pub fn a_section(&self) -> UniPoly<Rat> {
        self.a.eval_x(&<Rat as Field>::zero())
    }

    pub fn b_section(&self) -> UniPoly<Rat> {
        self.b.eval_x(&<Rat as Field>::zero())
    }
}

/// Smallest shift x0 in {0, 1, 2, ...} such that A(x+x0, y) has a nonzero
/// section at x = 0, and (with the flag) coprime sections of A and B.
pub fn regular_shift(
    a: &BiPoly<Rat>,
    b: &BiPoly<Rat>,
    require_coprime_sections: bool,
) -> Result<(i64, BiPoly<Rat>, BiPoly<Rat>)> {
    if a.is_zero() {
        return Err(Error::Precondition("regular shift of A = 0".to_string()));
    }
    let d = a.deg().max(b.deg()) as i64;
    let cap = 2 * d * d + 2 * d + 4;
    for x0 in 0..=cap {
        let r = rat_i64(x0);
        let sa = a.shift_x(&r);
        let sb = b.shift_x(&r);
        let sec_a = sa.eval_x(&<Rat as Field>::zero());
        if sec_a.is_zero() {
            continue;
        }
        if require_coprime_sections {
            let sec_b = sb.eval_x(&<Rat as Field>::zero());
            if !sec_a.gcd(&sec_b).is_constant() {
                continue;
            }
        }
        return Ok((x0, sa, sb));
    }
    Err(Error::Precondition(
        "no regular shift found within the degree bound".to_string(),
    ))
}

/// A power series known modulo x^precision; coeffs.len() == precision.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<F: Field> {
    pub coeffs: Vec<F>,
}

impl<F: Field> TruncatedSeries<F> {
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn truncate(&self, sigma: usize) -> TruncatedSeries<F> {
        assert!(sigma <= self.coeffs.len());
        TruncatedSeries {
            coeffs: self.coeffs[..sigma].to_vec(),
        }
    }

    /// The underlying polynomial (degree < precision).
    pub fn poly(&self) -> UniPoly<F> {
        UniPoly::new(self.coeffs.clone())
    }
}

/// Truncated product mod x^sigma.
pub fn ts_mul<F: Field>(a: &[F], b: &[F], sigma: usize) -> Vec<F> {
    let mut out = vec![F::zero(); sigma.min(a.len() + b.len())];
    for (i, x) in a.iter().enumerate().take(sigma) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(sigma - i) {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out.truncate(sigma);
    out
}

/// Evaluate a bivariate polynomial at (x, s(x)) mod x^sigma, Horner in y.
pub fn eval_bipoly_at_series<F: Field>(f: &BiPoly<F>, s: &[F], sigma: usize) -> Vec<F> {
    let mut acc: Vec<F> = Vec::new();
    for coeff in f.y_coefficients().iter().rev() {
        acc = ts_mul(&acc, s, sigma);
        for (k, c) in coeff.coeffs.iter().enumerate().take(sigma) {
            if k >= acc.len() {
                acc.resize(k + 1, F::zero());
            }
            acc[k] = acc[k].add(c);
        }
    }
    acc.truncate(sigma);
    acc
}

/// Unique truncated series solution y of A(x,y) y' - B(x,y) = 0 mod
/// x^{sigma-1} with y(0) = c, over any coefficient field.
///
/// Coefficients are produced by the term-by-term recurrence: with y_n the
/// partial sum of degree < n, the residual coefficient of x^{n-1}
/// determines the next coefficient through division by n A(0, c).
pub fn solve_series_ivp_in<F: Field>(
    a: &BiPoly<F>,
    b: &BiPoly<F>,
    c: &F,
    sigma: usize,
) -> Result<TruncatedSeries<F>> {
    if sigma == 0 {
        return Err(Error::Precondition("series precision must be >= 1".to_string()));
    }
    let a0c = a.eval_x(&F::zero()).eval(c);
    let Some(a0c_inv) = a0c.inv() else {
        return Err(Error::SingularInitialCondition(format!("{c:?}")));
    };
    let mut y = vec![c.clone()];
    for n in 1..sigma {
        let av = eval_bipoly_at_series(a, &y, n);
        let bv = eval_bipoly_at_series(b, &y, n);
        let yp = ts_derivative(&y);
        let lhs = ts_mul(&av, &yp, n);
        let mut r = F::zero();
        if let Some(v) = lhs.get(n - 1) {
            r = r.add(v);
        }
        if let Some(v) = bv.get(n - 1) {
            r = r.sub(v);
        }
        let an = r
            .neg()
            .mul(&F::from_i64(n as i64).inv().expect("n nonzero"))
            .mul(&a0c_inv);
        y.push(an);
    }
    Ok(TruncatedSeries { coeffs: y })
}

fn ts_derivative<F: Field>(a: &[F]) -> Vec<F> {
    if a.len() <= 1 {
        return Vec::new();
    }
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.mul(&F::from_i64(k as i64)))
        .collect()
}

/// Series solution for a rational vector field and rational initial value.
pub fn solve_series_ivp(
    vf: &VectorField,
    c: &Rat,
    sigma: usize,
) -> Result<TruncatedSeries<Rat>> {
    solve_series_ivp_in(&vf.a, &vf.b, c, sigma)
}

/// Residual A(x, y(x)) y'(x) - B(x, y(x)) mod x^{sigma-1}; identically
/// zero for a correct solution.
pub fn series_residual<F: Field>(a: &BiPoly<F>, b: &BiPoly<F>, s: &TruncatedSeries<F>) -> Vec<F> {
    let sigma = s.precision();
    if sigma <= 1 {
        return Vec::new();
    }
    let av = eval_bipoly_at_series(a, &s.coeffs, sigma - 1);
    let bv = eval_bipoly_at_series(b, &s.coeffs, sigma - 1);
    let yp = ts_derivative(&s.coeffs);
    let lhs = ts_mul(&av, &yp, sigma - 1);
    let mut out = vec![F::zero(); sigma - 1];
    for k in 0..sigma - 1 {
        let mut v = F::zero();
        if let Some(x) = lhs.get(k) {
            v = v.add(x);
        }
        if let Some(x) = bv.get(k) {
            v = v.sub(x);
        }
        out[k] = v;
    }
    out
}

/// The swapped-and-shifted field whose series in s = y - c describes x as
/// a function of y through (0, c): returns (Ahat, Bhat) with
/// dv/ds = Bhat(s, v)/Ahat(s, v), v(0) = 0, where v = x and s = y - c.
pub fn x_of_y_field<F: Field>(a: &BiPoly<F>, b: &BiPoly<F>, c: &F) -> (BiPoly<F>, BiPoly<F>) {
    // independent variable u = y, dependent v = x. dv/du = A(v,u)/B(v,u).
    let a_sw = a.swap_vars();
    let b_sw = b.swap_vars();
    // shift the new independent variable by c: u = c + s
    (b_sw.shift_x(c), a_sw.shift_x(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i64;

    fn bp(ts: &[(i64, u32, u32)]) -> BiPoly<Rat> {
        BiPoly::from_i64_terms(ts)
    }

    #[test]
    fn geometric_series_example() {
        // A = x + 1, B = -y: y_c = c/(1+x); at c = 1 mod x^5
        let a = bp(&[(1, 1, 0), (1, 0, 0)]);
        let b = bp(&[(-1, 0, 1)]);
        let s = solve_series_ivp_in(&a, &b, &rat_i64(1), 5).unwrap();
        let expect: Vec<Rat> = [1, -1, 1, -1, 1].iter().map(|&k| rat_i64(k)).collect();
        assert_eq!(s.coeffs, expect);
    }

    #[test]
    fn constant_rhs() {
        // A = 1, B = 0: y stays at the initial value
        let a = bp(&[(1, 0, 0)]);
        let b = BiPoly::zero();
        let s = solve_series_ivp_in(&a, &b, &rat_i64(3), 4).unwrap();
        assert_eq!(s.coeffs, vec![rat_i64(3), rat_i64(0), rat_i64(0), rat_i64(0)]);
    }

    #[test]
    fn exact_line_solution() {
        // field from the first integral (x^2+xy-2)/(x+y+1) at c = 0: y = -x
        let a = bp(&[(1, 1, 0), (2, 0, 0)]);
        let b = bp(&[(-1, 2, 0), (-2, 1, 1), (-1, 0, 2), (-2, 1, 0), (-1, 0, 1), (-2, 0, 0)]);
        let s = solve_series_ivp_in(&a, &b, &rat_i64(0), 6).unwrap();
        let mut expect = vec![rat_i64(0); 6];
        expect[1] = rat_i64(-1);
        assert_eq!(s.coeffs, expect);
    }

    #[test]
    fn singular_initial_condition_rejected() {
        // A = x + y: A(0, 0) = 0
        let a = bp(&[(1, 1, 0), (1, 0, 1)]);
        let b = bp(&[(1, 0, 0)]);
        let e = solve_series_ivp_in(&a, &b, &rat_i64(0), 3);
        assert!(matches!(e, Err(Error::SingularInitialCondition(_))));
    }

    #[test]
    fn residual_vanishes() {
        let a = bp(&[(1, 2, 0), (1, 0, 1), (3, 0, 0)]);
        let b = bp(&[(2, 1, 1), (-1, 0, 2), (1, 1, 0)]);
        let s = solve_series_ivp_in(&a, &b, &rat_i64(1), 12).unwrap();
        let r = series_residual(&a, &b, &s);
        assert!(r.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn truncation_consistency() {
        let a = bp(&[(1, 1, 0), (1, 0, 0)]);
        let b = bp(&[(-1, 0, 1)]);
        let s8 = solve_series_ivp_in(&a, &b, &rat_i64(2), 8).unwrap();
        let s5 = solve_series_ivp_in(&a, &b, &rat_i64(2), 5).unwrap();
        assert_eq!(s8.truncate(5), s5);
    }

    #[test]
    fn regular_shift_examples() {
        // A = x + 1 is already regular
        let a = bp(&[(1, 1, 0), (1, 0, 0)]);
        let b = bp(&[(1, 0, 1)]);
        let (x0, _, _) = regular_shift(&a, &b, false).unwrap();
        assert_eq!(x0, 0);

        // A = x*y needs one step
        let a = bp(&[(1, 1, 1)]);
        let b = bp(&[(1, 0, 0)]);
        let (x0, sa, _) = regular_shift(&a, &b, false).unwrap();
        assert_eq!(x0, 1);
        assert!(!sa.eval_x(&rat_i64(0)).is_zero());

        // A = x(x-1) needs two
        let a = bp(&[(1, 2, 0), (-1, 1, 0)]);
        let b = bp(&[(1, 0, 0)]);
        let (x0, _, _) = regular_shift(&a, &b, false).unwrap();
        assert_eq!(x0, 2);
    }

    #[test]
    fn coprime_section_flag() {
        // A(0,y) = y and B(0,y) = y share a root at 0; shifting fixes it
        let a = bp(&[(1, 0, 1), (1, 1, 0)]);
        let b = bp(&[(1, 0, 1), (3, 1, 0), (1, 0, 0)]);
        let (x0, sa, sb) = regular_shift(&a, &b, true).unwrap();
        let ga = sa.eval_x(&rat_i64(0)).gcd(&sb.eval_x(&rat_i64(0)));
        assert!(ga.is_constant());
        assert!(x0 >= 0);
    }

    #[test]
    fn vector_field_invariants() {
        let a = bp(&[(1, 1, 0), (1, 0, 0)]);
        let b = bp(&[(-1, 0, 1)]);
        let vf = VectorField::new(a.clone(), b).unwrap();
        assert_eq!(vf.d, 1);
        // non-coprime pair rejected
        let e = VectorField::new(a.clone(), a.mul(&bp(&[(1, 0, 1)])));
        assert!(e.is_err());
    }
}
