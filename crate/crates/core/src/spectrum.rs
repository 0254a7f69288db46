//! Rational spectrum candidates of a reduced first integral: pencil
//! members lambda P - mu Q that drop degree or factor over Q, with
//! reproducible witnesses. Feeds the simplification pass.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::bipoly::{content_y, gcd_bipoly, primitive_part_y_in, resultant_y_in, BiPoly};
use crate::error::{Error, Result};
use crate::factor::{factor_univariate, rational_roots};
use crate::field::Field;
use crate::rat::{rat_i64, Rat};
use crate::unipoly::UniPoly;

/// A projective candidate (lambda : mu) with the factor shape of the
/// member lambda P - mu Q as witness.
#[derive(Clone, PartialEq, Debug)]
pub struct SpectrumElement {
    pub lambda: Rat,
    pub mu: Rat,
    pub witness: SpectrumWitness,
    /// Factors of the member with multiplicities (best effort; products of
    /// the listed factors times the cont reproduce the member).
    pub factors: Vec<(BiPoly<Rat>, u32)>,
}

#[derive(Clone, PartialEq, Debug)]
pub enum SpectrumWitness {
    /// deg(lambda P - mu Q) < max(deg P, deg Q).
    DegreeDrop { degree: Option<u32> },
    /// The member splits or has a repeated factor over Q.
    Factorization,
}

/// All rational (lambda : mu) with lambda P - mu Q degree-dropping or
/// visibly factoring over Q. The end points (1:0) and (0:1) are always
/// examined.
pub fn spectrum_candidates(p: &BiPoly<Rat>, q: &BiPoly<Rat>) -> Result<Vec<SpectrumElement>> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::Precondition(
            "spectrum needs a nonzero reduced pair".to_string(),
        ));
    }
    let n = p.deg().max(q.deg());
    let mut points: Vec<(Rat, Rat)> = vec![(rat_i64(1), rat_i64(0)), (rat_i64(0), rat_i64(1))];

    // (a) degree drop: proportional leading forms
    let lp = p.homogeneous_part(n);
    let lq = q.homogeneous_part(n);
    if !lp.is_zero() && !lq.is_zero() {
        if let Some(t) = proportionality(&lp, &lq) {
            // lp = t * lq, so lp - t*lq = 0: member P - t Q drops degree
            push_point(&mut points, rat_i64(1), t);
        }
    }

    // (b) repeated factors: rational roots of the t-content of the
    // discriminant-style resultants in both variables
    for t0 in repeated_factor_candidates(p, q)? {
        push_point(&mut points, rat_i64(1), t0);
    }
    let swapped: Vec<Rat> = repeated_factor_candidates(q, p)?;
    for s0 in swapped {
        // Q - s P is proportional to s P - Q: the point (s : 1)
        if !s0.is_zero() {
            push_point(&mut points, s0, rat_i64(1));
        }
    }

    let mut out = Vec::new();
    for (lambda, mu) in points {
        let member = p.scale(&lambda).sub(&q.scale(&mu));
        if member.is_zero() {
            continue;
        }
        let factors = factor_extract(&member);
        let dropped = member.deg() < n;
        let nontrivial_split = factors.len() > 1 || factors.iter().any(|(_, m)| *m > 1);
        if dropped {
            out.push(SpectrumElement {
                lambda,
                mu,
                witness: SpectrumWitness::DegreeDrop {
                    degree: member.degree(),
                },
                factors,
            });
        } else if nontrivial_split {
            out.push(SpectrumElement {
                lambda,
                mu,
                witness: SpectrumWitness::Factorization,
                factors,
            });
        }
    }
    Ok(out)
}

fn push_point(points: &mut Vec<(Rat, Rat)>, lambda: Rat, mu: Rat) {
    for (l, m) in points.iter() {
        // same projective point: lambda * m == mu * l
        if lambda.mul(m) == mu.mul(l) {
            return;
        }
    }
    points.push((lambda, mu));
}

/// Scalar t with lp = t * lq, if the forms are proportional.
fn proportionality(lp: &BiPoly<Rat>, lq: &BiPoly<Rat>) -> Option<Rat> {
    let (key, lead_q) = lq.terms.iter().next_back()?;
    let t = lp.coeff(key.0, key.1).div(lead_q);
    if lp == &lq.scale(&t) {
        Some(t)
    } else {
        None
    }
}

/// Values t where P - t Q acquires a repeated factor of positive
/// y-degree: rational roots of the gcd over sample x-lines of
/// Res_y(R_t, dR_t/dy) in Q[t].
fn repeated_factor_candidates(p: &BiPoly<Rat>, q: &BiPoly<Rat>) -> Result<Vec<Rat>> {
    // R_t = P - t Q as a bivariate polynomial in (t, y) after fixing x
    if p.deg_y() == 0 && q.deg_y() == 0 {
        return Ok(Vec::new());
    }
    let mut acc: Option<UniPoly<Rat>> = None;
    let mut x_sample: i64 = 0;
    let mut samples = 0;
    while samples < 3 {
        let x0 = rat_i64(x_sample);
        x_sample += 1;
        if x_sample > 64 {
            break;
        }
        // member at the sample line, as a polynomial in (t, y)
        let pu = p.eval_x(&x0); // in y
        let qu = q.eval_x(&x0);
        if pu.is_zero() || qu.is_zero() {
            continue;
        }
        // build R(t, y) = pu(y) - t qu(y) keyed (t-exp, y-exp)
        let mut r: BiPoly<Rat> = BiPoly::zero();
        for (j, c) in pu.coeffs.iter().enumerate() {
            if !c.is_zero() {
                r = r.add(&BiPoly::term(c.clone(), 0, j as u32));
            }
        }
        for (j, c) in qu.coeffs.iter().enumerate() {
            if !c.is_zero() {
                r = r.add(&BiPoly::term(c.neg(), 1, j as u32));
            }
        }
        if r.deg_y() < 1 {
            continue;
        }
        let ry = r.d_dy();
        if ry.deg_y() < 1 {
            continue;
        }
        let res_t = resultant_y_in(&r, &ry); // polynomial in t
        if res_t.is_zero() {
            // the whole pencil is degenerate on this line; try another
            continue;
        }
        samples += 1;
        acc = Some(match acc {
            None => res_t,
            Some(a) => a.gcd(&res_t),
        });
        if acc.as_ref().map_or(false, UniPoly::is_constant) {
            return Ok(Vec::new());
        }
    }
    let Some(g) = acc else {
        return Ok(Vec::new());
    };
    if g.is_constant() {
        return Ok(Vec::new());
    }
    let mut out: Vec<Rat> = rational_roots(&g)?.into_iter().map(|(r, _)| r).collect();
    // verify each candidate by an exact squarefree test on the member
    out.retain(|t| {
        let member = p.sub(&q.scale(t));
        has_repeated_or_split(&member)
    });
    Ok(out)
}

fn has_repeated_or_split(member: &BiPoly<Rat>) -> bool {
    factor_extract(member).iter().any(|(_, m)| *m > 1)
        || factor_extract(member).len() > 1
}

/// Best-effort factor extraction over Q: integer content aside, pulls the
/// univariate x- and y-contents apart (fully factored) and splits the
/// primitive bivariate remainder by squarefree decomposition in y.
pub fn factor_extract(member: &BiPoly<Rat>) -> Vec<(BiPoly<Rat>, u32)> {
    let mut out: Vec<(BiPoly<Rat>, u32)> = Vec::new();
    if member.is_zero() || member.is_constant() {
        return out;
    }
    let mut push = |f: BiPoly<Rat>, m: u32, out: &mut Vec<(BiPoly<Rat>, u32)>| {
        if f.is_constant() {
            return;
        }
        let f = f.normalized();
        for (g, mult) in out.iter_mut() {
            if *g == f {
                *mult += m;
                return;
            }
        }
        out.push((f, m));
    };

    // content in x-direction: gcd of y-coefficients lives in Q[x]
    let cx = content_y(member);
    let mut rest = primitive_part_y_in(member);
    if !cx.is_constant() {
        if let Ok((_, fs)) = factor_univariate(&cx) {
            for (f, m) in fs {
                push(unipoly_to_bipoly_x(&f), m, &mut out);
            }
        }
    }
    // content in y-direction on the remainder
    let cy = content_y(&rest.swap_vars());
    if !cy.is_constant() {
        if let Ok((_, fs)) = factor_univariate(&cy) {
            for (f, m) in fs {
                push(unipoly_to_bipoly_x(&f).swap_vars(), m, &mut out);
            }
        }
        rest = primitive_part_y_in(&rest.swap_vars()).swap_vars();
    }
    if rest.is_constant() {
        return out;
    }
    // squarefree split in y of the doubly-primitive remainder
    for (part, mult) in squarefree_y(&rest) {
        // try one more x-direction squarefree split inside the part
        let again = squarefree_y(&part.swap_vars());
        if again.len() > 1 || again.iter().any(|(_, m)| *m > 1) {
            for (sub, m2) in again {
                push(sub.swap_vars(), m2 * mult, &mut out);
            }
        } else {
            push(part, mult, &mut out);
        }
    }
    out
}

fn unipoly_to_bipoly_x(p: &UniPoly<Rat>) -> BiPoly<Rat> {
    let mut out = BiPoly::zero();
    for (i, c) in p.coeffs.iter().enumerate() {
        if !c.is_zero() {
            out = out.add(&BiPoly::term(c.clone(), i as u32, 0));
        }
    }
    out
}

/// Squarefree decomposition with respect to y by iterated gcds with the
/// y-derivative; parts are returned with their multiplicities.
fn squarefree_y(f: &BiPoly<Rat>) -> Vec<(BiPoly<Rat>, u32)> {
    if f.deg_y() == 0 {
        return vec![(f.clone(), 1)];
    }
    let fy = f.d_dy();
    let g = gcd_bipoly(f, &fy);
    if g.is_constant() {
        return vec![(f.clone(), 1)];
    }
    // f squarefree part w = f / g; recurse on g with multiplicities
    let mut out: Vec<(BiPoly<Rat>, u32)> = Vec::new();
    let mut cur = f.clone();
    let mut mult = 1u32;
    loop {
        let cy = cur.d_dy();
        if cur.deg_y() == 0 {
            if !cur.is_constant() {
                out.push((cur, mult));
            }
            break;
        }
        let g = gcd_bipoly(&cur, &cy);
        if g.is_constant() {
            out.push((cur, mult));
            break;
        }
        let w = cur.exact_div(&g).expect("gcd divides");
        // w contains each squarefree factor once; g the rest
        let wg = gcd_bipoly(&w, &g);
        let only_here = w.exact_div(&wg).expect("gcd divides");
        if !only_here.is_constant() {
            out.push((only_here.normalized(), mult));
        }
        cur = g;
        mult += 1;
    }
    out
}
