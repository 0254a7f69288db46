//! The drivers for problem (P_N): generic (symbolic parameter),
//! probabilistic, deterministic and heuristic, plus verification and
//! spectrum-based simplification.

use alloc::string::ToString;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::annihilator::{
    build_guess_rows, certified_order, clear_row_denominators, guess_min_poly_at_order,
    min_ydeg_representative, modular_guess, Ansatz, GuessStatus, ModularGuess,
};
use crate::bipoly::{gcd_bipoly, gcd_bipoly_in, primitive_part_y_in, BiPoly};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::poly_kernel;
use crate::pade::{pade_hermite_guess, pade_order};
use crate::rat::{rat_i64, Rat};
use crate::ratfunc::{symbol_c, RatFunc};
use crate::series::{solve_series_ivp, solve_series_ivp_in, VectorField};
use crate::unipoly::UniPoly;

/// Outcome of a driver run.
#[derive(Clone, PartialEq, Debug)]
pub enum RfiOutcome {
    /// A verified reduced first integral P/Q of degree <= N.
    Found { p: BiPoly<Rat>, q: BiPoly<Rat> },
    /// Certified nonexistence of a rational first integral of degree <= N.
    None,
    /// Inconclusive; carries the (possibly bumped) second initial value.
    Unknown { next_c2: Rat },
}

impl RfiOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, RfiOutcome::Found { .. })
    }
}

/// Precision mode for the guessing stage.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum Precision {
    /// N^2 + 1 terms; kernel triviality certifies nonexistence.
    Certified,
    /// The Hermite-Pade order N(N+1)/2 + N - 1; heuristic only.
    Pade,
    /// A caller-chosen number of terms; heuristic unless >= N^2 + 1.
    Terms(usize),
}

impl Precision {
    pub fn order(&self, n: u32) -> usize {
        match self {
            Precision::Certified => certified_order(n),
            Precision::Pade => pade_order(n),
            Precision::Terms(t) => *t,
        }
    }

    pub fn is_certified(&self, n: u32) -> bool {
        self.order(n) >= certified_order(n)
    }
}

/// D(F) = A dF/dx + B dF/dy.
pub fn derivation_apply(vf: &VectorField, f: &BiPoly<Rat>) -> BiPoly<Rat> {
    vf.a.mul(&f.d_dx()).add(&vf.b.mul(&f.d_dy()))
}

/// Exact first-integral test: D(P) Q - P D(Q) = 0.
pub fn verify_first_integral(vf: &VectorField, p: &BiPoly<Rat>, q: &BiPoly<Rat>) -> Result<bool> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::Precondition("verify needs (P, Q) != (0, 0)".to_string()));
    }
    if is_constant_ratio(p, q) {
        return Err(Error::Precondition(
            "not a candidate first integral: P/Q is constant".to_string(),
        ));
    }
    let lhs = derivation_apply(vf, p).mul(q);
    let rhs = p.mul(&derivation_apply(vf, q));
    Ok(lhs == rhs)
}

/// True when P/Q lies in the ground field (including the 0/Q and P/0
/// degenerate shapes).
pub fn is_constant_ratio(p: &BiPoly<Rat>, q: &BiPoly<Rat>) -> bool {
    if p.is_zero() || q.is_zero() {
        return p.is_constant() && q.is_constant();
    }
    if p.is_constant() && q.is_constant() {
        return true;
    }
    // P/Q constant iff P * lc(Q) == Q * lc(P) on normalized forms
    p.normalized() == q.normalized()
}

fn require_regular(vf: &VectorField) -> Result<()> {
    if vf.a_section().is_zero() {
        return Err(Error::Precondition(
            "A(0, y) = 0; apply regular_shift first".to_string(),
        ));
    }
    Ok(())
}

/// Beyond this guessing order the exact kernel is replaced by the modular
/// lift-and-verify pipeline.
const MODULAR_ORDER_THRESHOLD: usize = 60;

enum Guesser {
    Linear(Precision),
    Pade,
}

impl Guesser {
    fn order(&self, n: u32) -> usize {
        match self {
            Guesser::Linear(p) => p.order(n),
            Guesser::Pade => pade_order(n),
        }
    }

    fn certified(&self, n: u32) -> bool {
        match self {
            Guesser::Linear(p) => p.is_certified(n),
            Guesser::Pade => false,
        }
    }
}

/// One minimal annihilator guess for the series through (0, c).
fn guess_at(vf: &VectorField, c: &Rat, n: u32, guesser: &Guesser) -> Result<Option<BiPoly<Rat>>> {
    let order = guesser.order(n);
    match guesser {
        Guesser::Pade => {
            let s = solve_series_ivp(vf, c, order)?;
            Ok(pade_hermite_guess(&s, n)?.found().cloned())
        }
        Guesser::Linear(_) => {
            if order > MODULAR_ORDER_THRESHOLD {
                match modular_guess(&vf.a, &vf.b, c, n, order)? {
                    ModularGuess::TrivialCertified => Ok(None),
                    ModularGuess::Candidate(m) => Ok(Some(m)),
                }
            } else {
                let s = solve_series_ivp(vf, c, order)?;
                Ok(guess_min_poly_at_order(&s, n, order)?.found().cloned())
            }
        }
    }
}

fn probabilistic_core(
    vf: &VectorField,
    c1: &Rat,
    c2: &Rat,
    n: u32,
    guesser: &Guesser,
) -> Result<RfiOutcome> {
    require_regular(vf)?;
    if n < 1 {
        return Err(Error::Precondition("degree bound N must be >= 1".to_string()));
    }
    let a0 = vf.a_section();
    for c in [c1, c2] {
        if a0.eval(c).is_zero() {
            return Err(Error::SingularInitialCondition(crate::rat::rat_to_string(c)));
        }
    }
    let certified = guesser.certified(n);

    let Some(m1) = guess_at(vf, c1, n, guesser)? else {
        return Ok(if certified {
            RfiOutcome::None
        } else {
            RfiOutcome::Unknown { next_c2: c2.clone() }
        });
    };

    // step (1d): move c2 off the roots of M1(0, y) A(0, y)
    let m1_section = m1.eval_x(&<Rat as Field>::zero());
    let mut c2 = c2.clone();
    while m1_section.eval(&c2).is_zero() || a0.eval(&c2).is_zero() {
        c2 = c2 + rat_i64(1);
    }

    let Some(m2) = guess_at(vf, &c2, n, guesser)? else {
        return Ok(if certified {
            RfiOutcome::None
        } else {
            RfiOutcome::Unknown { next_c2: c2 }
        });
    };

    match finish_candidate(vf, m1, m2)? {
        Some((p, q)) => Ok(RfiOutcome::Found { p, q }),
        None => Ok(RfiOutcome::Unknown { next_c2: c2 }),
    }
}

/// Final arbitration: reduce the pair and run the exact D-test.
fn finish_candidate(
    vf: &VectorField,
    m1: BiPoly<Rat>,
    m2: BiPoly<Rat>,
) -> Result<Option<(BiPoly<Rat>, BiPoly<Rat>)>> {
    if m1.is_zero() || m2.is_zero() {
        return Ok(None);
    }
    let g = gcd_bipoly(&m1, &m2);
    let (p, q) = if g.is_constant() {
        (m1, m2)
    } else {
        (
            m1.exact_div(&g).expect("gcd divides").normalized(),
            m2.exact_div(&g).expect("gcd divides").normalized(),
        )
    };
    if is_constant_ratio(&p, &q) {
        return Ok(None);
    }
    if verify_first_integral(vf, &p, &q)? {
        Ok(Some((p.normalized(), q.normalized())))
    } else {
        Ok(None)
    }
}

/// Probabilistic driver at certified precision N^2 + 1.
pub fn probabilistic_rfi(
    vf: &VectorField,
    c1: &Rat,
    c2: &Rat,
    n: u32,
) -> Result<RfiOutcome> {
    probabilistic_core(vf, c1, c2, n, &Guesser::Linear(Precision::Certified))
}

/// Probabilistic driver at an explicit precision mode.
pub fn probabilistic_rfi_with_precision(
    vf: &VectorField,
    c1: &Rat,
    c2: &Rat,
    n: u32,
    precision: Precision,
) -> Result<RfiOutcome> {
    probabilistic_core(vf, c1, c2, n, &Guesser::Linear(precision))
}

/// Heuristic driver: Hermite-Pade guessing at reduced order. Never
/// certifies nonexistence.
pub fn heuristic_rfi(vf: &VectorField, c1: &Rat, c2: &Rat, n: u32) -> Result<RfiOutcome> {
    probabilistic_core(vf, c1, c2, n, &Guesser::Pade)
}

/// Deterministic driver: repeats the probabilistic one over fresh initial
/// values, accumulating the bad set, until the spectrum-size bound rules
/// everything out.
pub fn deterministic_rfi(vf: &VectorField, n: u32, seed: u64) -> Result<RfiOutcome> {
    require_regular(vf)?;
    if n < 1 {
        return Err(Error::Precondition("degree bound N must be >= 1".to_string()));
    }
    let bd = (vf.d as u64) * (vf.d as u64 + 1) / 2;
    let budget = 2 * (n as u64) * (bd + 1) + 2;
    let mut span = budget.max(100) as i64;
    let a0 = vf.a_section();
    let mut omega: Vec<Rat> = Vec::new();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);

    while omega.len() as u64 <= budget {
        let mut draw = |excluded: &[Rat], omega: &[Rat], span: &mut i64| -> Rat {
            let mut tries = 0u32;
            loop {
                let r = (rng.next_u64() % (2 * *span as u64 + 1)) as i64 - *span;
                let c = rat_i64(r);
                if !omega.contains(&c) && !excluded.contains(&c) && !a0.eval(&c).is_zero() {
                    return c;
                }
                tries += 1;
                if tries % 1000 == 0 {
                    *span *= 2;
                }
            }
        };
        let c1 = draw(&[], &omega, &mut span);
        let c2 = draw(core::slice::from_ref(&c1), &omega, &mut span);
        match probabilistic_rfi(vf, &c1, &c2, n)? {
            RfiOutcome::Found { p, q } => return Ok(RfiOutcome::Found { p, q }),
            RfiOutcome::None => return Ok(RfiOutcome::None),
            RfiOutcome::Unknown { next_c2 } => {
                if !omega.contains(&c1) {
                    omega.push(c1);
                }
                if !omega.contains(&next_c2) {
                    omega.push(next_c2);
                }
            }
        }
    }
    Ok(RfiOutcome::None)
}

/// Generic driver: works with a symbolic initial value over Q(c), then
/// specializes. Found or None only.
pub fn generic_rfi(vf: &VectorField, n: u32) -> Result<RfiOutcome> {
    require_regular(vf)?;
    if n < 1 {
        return Err(Error::Precondition("degree bound N must be >= 1".to_string()));
    }
    let order = certified_order(n);
    let a_sym: BiPoly<RatFunc<Rat>> = vf.a.map_coeffs(|r| RatFunc::from_poly(UniPoly::constant(r.clone())));
    let b_sym: BiPoly<RatFunc<Rat>> = vf.b.map_coeffs(|r| RatFunc::from_poly(UniPoly::constant(r.clone())));
    let series = solve_series_ivp_in(&a_sym, &b_sym, &symbol_c(), order)?;

    let ansatz = Ansatz::new(n);
    let rows_sym = build_guess_rows(&ansatz, &series.coeffs, order);
    let rows: Vec<Vec<UniPoly<Rat>>> = rows_sym
        .iter()
        .map(|r| clear_row_denominators(r))
        .collect();
    let kernel = poly_kernel(rows);
    if kernel.is_empty() {
        return Ok(RfiOutcome::None);
    }
    // minimal-y-degree representative over Q(c)
    let mut basis = kernel;
    let Some(v) = min_ydeg_representative(&mut basis) else {
        return Ok(RfiOutcome::None);
    };
    // clear the c-denominators of the solution vector
    let cleared = clear_row_denominators(&v);
    // M(c, x, y) with coefficients in Q[c]; primitive part w.r.t. y over
    // Q[c][x] via a gcd in the variables (c, x)
    let m_param: Vec<BiPoly<Rat>> = param_poly_from_vec(&ansatz, &cleared, n);
    let m_param = param_primitive_y(m_param);

    // P := M(c0) for the first c0 making it nonconstant, Q := M(c1) for
    // the first later c1 with M(c1)/P nonconstant
    let deg_c = m_param
        .iter()
        .map(|p| p.deg_x())
        .max()
        .unwrap_or(0) as i64;
    let mut p_poly: Option<BiPoly<Rat>> = None;
    let mut q_poly: Option<BiPoly<Rat>> = None;
    for k in 0..=(2 * deg_c + 4) {
        let cand = param_eval(&m_param, &rat_i64(k));
        if cand.is_constant() {
            continue;
        }
        match &p_poly {
            None => p_poly = Some(cand),
            Some(p) => {
                if !p.proportional_to(&cand) {
                    q_poly = Some(cand);
                    break;
                }
            }
        }
    }
    let (Some(p), Some(q)) = (p_poly, q_poly) else {
        return Ok(RfiOutcome::None);
    };
    match finish_candidate(vf, p, q)? {
        Some((p, q)) => Ok(RfiOutcome::Found { p, q }),
        None => Ok(RfiOutcome::None),
    }
}

/// Solution vector -> list of y-coefficients, each a polynomial in (c, x)
/// keyed as (c-exponent, x-exponent).
fn param_poly_from_vec(ansatz: &Ansatz, v: &[UniPoly<Rat>], n: u32) -> Vec<BiPoly<Rat>> {
    let mut out = alloc::vec![BiPoly::zero(); n as usize + 1];
    for (slot, &(j, i)) in ansatz.layout.iter().enumerate() {
        for (ce, coeff) in v[slot].coeffs.iter().enumerate() {
            if !coeff.is_zero() {
                out[i as usize] = out[i as usize].add(&BiPoly::term(coeff.clone(), ce as u32, j));
            }
        }
    }
    out
}

/// Primitive part with respect to y where coefficients are polynomials in
/// (c, x): divide out the gcd of the coefficient list.
fn param_primitive_y(coeffs: Vec<BiPoly<Rat>>) -> Vec<BiPoly<Rat>> {
    let mut g = BiPoly::zero();
    for c in &coeffs {
        if !c.is_zero() {
            g = gcd_bipoly_in(&g, c);
            if g.is_constant() {
                break;
            }
        }
    }
    if g.is_zero() || g.is_constant() {
        return coeffs;
    }
    coeffs
        .into_iter()
        .map(|c| {
            if c.is_zero() {
                c
            } else {
                c.exact_div(&g).expect("content divides")
            }
        })
        .collect()
}

/// Evaluate the parameter c in a y-coefficient list, producing a bivariate
/// polynomial in (x, y).
fn param_eval(coeffs: &[BiPoly<Rat>], c0: &Rat) -> BiPoly<Rat> {
    let mut out = BiPoly::zero();
    for (i, pc) in coeffs.iter().enumerate() {
        // pc is keyed (c-exponent, x-exponent); evaluate the c slot
        let ux = pc.eval_x(c0);
        for (j, coeff) in ux.coeffs.iter().enumerate() {
            if !coeff.is_zero() {
                out = out.add(&BiPoly::term(coeff.clone(), j as u32, i as u32));
            }
        }
    }
    out.normalized()
}

/// Spectrum-guided compaction of a verified first integral.
pub fn simplify_rfi(
    vf: &VectorField,
    p: &BiPoly<Rat>,
    q: &BiPoly<Rat>,
) -> Result<(BiPoly<Rat>, BiPoly<Rat>)> {
    if !verify_first_integral(vf, p, q)? {
        return Err(Error::Precondition(
            "simplify requires a verified first integral".to_string(),
        ));
    }
    let n_in = p.deg().max(q.deg());
    let elements = crate::spectrum::spectrum_candidates(p, q)?;

    // Darboux factor pool: factors of spectrum members plus P and Q
    let mut pool: Vec<(BiPoly<Rat>, BiPoly<Rat>)> = Vec::new(); // (factor, cofactor)
    let mut push_factor = |f: &BiPoly<Rat>, pool: &mut Vec<(BiPoly<Rat>, BiPoly<Rat>)>| {
        if f.is_constant() {
            return;
        }
        let fnorm = f.normalized();
        if pool.iter().any(|(g, _)| *g == fnorm) {
            return;
        }
        let df = derivation_apply(vf, &fnorm);
        if let Some(cof) = df.exact_div(&fnorm) {
            pool.push((fnorm, cof));
        }
    };
    for el in &elements {
        for (f, _) in &el.factors {
            push_factor(f, &mut pool);
        }
    }
    push_factor(p, &mut pool);
    push_factor(q, &mut pool);
    for f in crate::spectrum::factor_extract(p) {
        push_factor(&f.0, &mut pool);
    }
    for f in crate::spectrum::factor_extract(q) {
        push_factor(&f.0, &mut pool);
    }

    // integer relations among the cofactors give candidate first integrals
    let mut best: (BiPoly<Rat>, BiPoly<Rat>) = (p.normalized(), q.normalized());
    let mut best_score = size_metric(&best.0, &best.1);
    if !pool.is_empty() {
        let rows: Vec<Vec<Rat>> = cofactor_matrix(&pool);
        let basis = crate::matrix::nullspace(&crate::matrix::Mat::from_rows(rows));
        let mut candidates: Vec<Vec<i64>> = Vec::new();
        for v in &basis {
            let ints = crate::rat::primitive_integer_vector(v);
            let as_i64: Option<Vec<i64>> = ints
                .iter()
                .map(|b| i64::try_from(b.clone()).ok())
                .collect();
            if let Some(e) = as_i64 {
                candidates.push(e.iter().map(|&x| -x).collect());
                candidates.push(e);
            }
        }
        // small combinations of two basis relations
        if basis.len() >= 2 {
            for i in 0..basis.len() {
                for j in i + 1..basis.len() {
                    for (si, sj) in [(1i64, 1i64), (1, -1)] {
                        let comb: Vec<Rat> = basis[i]
                            .iter()
                            .zip(basis[j].iter())
                            .map(|(a, b)| {
                                a.mul(&rat_i64(si)).add(&b.mul(&rat_i64(sj)))
                            })
                            .collect();
                        let ints = crate::rat::primitive_integer_vector(&comb);
                        let as_i64: Option<Vec<i64>> =
                            ints.iter().map(|b| i64::try_from(b.clone()).ok()).collect();
                        if let Some(e) = as_i64 {
                            candidates.push(e);
                        }
                    }
                }
            }
        }
        for e in candidates {
            let mut num = BiPoly::constant(<Rat as Field>::one());
            let mut den = BiPoly::constant(<Rat as Field>::one());
            for (k, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    for _ in 0..exp {
                        num = num.mul(&pool[k].0);
                    }
                } else if exp < 0 {
                    for _ in 0..(-exp) {
                        den = den.mul(&pool[k].0);
                    }
                }
            }
            if is_constant_ratio(&num, &den) {
                continue;
            }
            if num.deg().max(den.deg()) > n_in {
                continue;
            }
            let g = gcd_bipoly(&num, &den);
            let (num, den) = if g.is_constant() {
                (num, den)
            } else {
                (
                    num.exact_div(&g).unwrap(),
                    den.exact_div(&g).unwrap(),
                )
            };
            if verify_first_integral(vf, &num, &den).unwrap_or(false) {
                let cand = (num.normalized(), den.normalized());
                let score = size_metric(&cand.0, &cand.1);
                if score < best_score {
                    best = cand;
                    best_score = score;
                }
            }
        }
    }
    Ok(best)
}

/// Coefficient rows of the cofactor relation sum e_k Lambda_k = 0.
fn cofactor_matrix(pool: &[(BiPoly<Rat>, BiPoly<Rat>)]) -> Vec<Vec<Rat>> {
    use alloc::collections::BTreeSet;
    let mut monomials: BTreeSet<(u32, u32)> = BTreeSet::new();
    for (_, cof) in pool {
        monomials.extend(cof.terms.keys().copied());
    }
    monomials
        .into_iter()
        .map(|k| pool.iter().map(|(_, cof)| cof.coeff(k.0, k.1)).collect())
        .collect()
}

/// Size metric: total monomials, then max degree, then the integer
/// coefficient mass.
fn size_metric(p: &BiPoly<Rat>, q: &BiPoly<Rat>) -> (usize, u32, u64) {
    let monomials = p.num_terms() + q.num_terms();
    let deg = p.deg().max(q.deg());
    let mut mass = 0u64;
    for poly in [p, q] {
        for c in poly.terms.values() {
            mass = mass.saturating_add(
                num_traits::Signed::abs(c.numer()).bits() + c.denom().bits(),
            );
        }
    }
    (monomials, deg, mass)
}
