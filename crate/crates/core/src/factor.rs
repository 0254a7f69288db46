//! Univariate factorization over Q: Yun squarefree decomposition, modular
//! distinct/equal-degree factorization, Hensel lifting and naive factor
//! recombination.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::modp::{self, poly as pp};
use crate::rat::Rat;
use crate::unipoly::UniPoly;

/// Complete factorization over Q: a rational constant and monic irreducible
/// factors with multiplicities whose product reproduces the input exactly.
pub fn factor_univariate(p: &UniPoly<Rat>) -> Result<(Rat, Vec<(UniPoly<Rat>, u32)>)> {
    let deg = p
        .degree()
        .ok_or_else(|| Error::Precondition("factorization of the zero polynomial".to_string()))?;
    if deg == 0 {
        return Err(Error::Precondition(
            "factorization of a constant polynomial".to_string(),
        ));
    }
    let mut constant = p.leading();
    let monic = p.monic();

    let mut factors: Vec<(UniPoly<Rat>, u32)> = Vec::new();
    for (part, mult) in yun_squarefree(&monic) {
        if part.is_constant() {
            continue;
        }
        for f in factor_squarefree(&part)? {
            let lc = f.leading();
            for _ in 0..mult {
                constant = constant.mul(&lc);
            }
            factors.push((f.monic(), mult));
        }
    }
    factors.sort_by(|a, b| {
        a.0.deg()
            .cmp(&b.0.deg())
            .then_with(|| format_key(&a.0).cmp(&format_key(&b.0)))
    });
    Ok((constant, factors))
}

fn format_key(p: &UniPoly<Rat>) -> Vec<(BigInt, BigInt)> {
    p.coeffs
        .iter()
        .map(|c| (c.numer().clone(), c.denom().clone()))
        .collect()
}

/// Rational roots with multiplicities, read off the linear factors.
pub fn rational_roots(p: &UniPoly<Rat>) -> Result<Vec<(Rat, u32)>> {
    if p.is_zero() || p.is_constant() {
        return Ok(Vec::new());
    }
    let (_, factors) = factor_univariate(p)?;
    Ok(factors
        .into_iter()
        .filter(|(f, _)| f.deg() == 1)
        .map(|(f, m)| (f.coeff(0).neg(), m))
        .collect())
}

/// Yun's squarefree decomposition of a monic polynomial: returns parts
/// a_i with input = prod a_i^i.
pub fn yun_squarefree(f: &UniPoly<Rat>) -> Vec<(UniPoly<Rat>, u32)> {
    let fp = f.derivative();
    let d = f.gcd(&fp);
    if d.is_constant() {
        return vec![(f.clone(), 1)];
    }
    let mut out = Vec::new();
    let mut b = f.div_rem(&d).0;
    let mut c = fp.div_rem(&d).0;
    let mut i = 1u32;
    loop {
        let z = c.sub(&b.derivative());
        if b.is_constant() {
            break;
        }
        let a = b.gcd(&z);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.div_rem(&a).0;
        c = z.div_rem(&a).0;
        i += 1;
    }
    out
}

/// Factor a squarefree monic rational polynomial into irreducibles over Q
/// (returned with integer primitive coefficients, not monic).
fn factor_squarefree(f: &UniPoly<Rat>) -> Result<Vec<UniPoly<Rat>>> {
    let fz = f.normalized_integer();
    let n = fz.deg();
    if n == 1 {
        return Ok(vec![fz]);
    }
    let coeffs = fz.integer_coeffs();
    let lc = coeffs.last().unwrap().clone();

    // a prime where f stays squarefree and the leading coefficient survives
    let mut chosen: Option<(u64, Vec<u64>)> = None;
    for &p in &modp::PRIMES {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp: Vec<u64> = coeffs.iter().map(|c| modp::bigint_mod(c, p)).collect();
        let g = pp::gcd(&fp, &pp::derivative(&fp, p), p);
        if g.len() == 1 {
            chosen = Some((p, fp));
            break;
        }
    }
    let (p, fp) = chosen.ok_or_else(|| {
        Error::ModularFailure("no squarefree prime for factorization".to_string())
    })?;

    let modular = modular_factors(&fp, p);
    if modular.len() == 1 {
        return Ok(vec![fz]);
    }

    // lift to p^k beyond twice the factor coefficient bound
    let bound: BigInt = (BigInt::one() << n) * coeffs.iter().map(|c| c.abs()).sum::<BigInt>()
        * lc.abs()
        * 2
        + 1;
    let mut pk = BigInt::from(p);
    let mut k = 1usize;
    while pk < bound {
        pk = &pk * BigInt::from(p);
        k += 1;
    }
    let lifted = hensel_lift_list(&coeffs, &modular, p, k);
    Ok(recombine(&fz, lifted, &pk))
}

/// Distinct-degree then equal-degree factorization of a squarefree monic
/// polynomial mod p. Returns monic irreducible factors.
fn modular_factors(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let li = modp::invm(*f.last().unwrap(), p).unwrap();
    let fm = pp::scale(f, li, p);
    let mut out = Vec::new();
    let mut v = fm.clone();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 0usize;
    while v.len() > 1 {
        d += 1;
        if 2 * d > v.len() - 1 {
            out.push(v.clone());
            break;
        }
        h = pp::pow_mod(&h, p, &v, p);
        let hm = pp::sub(&h, &x, p);
        let g = pp::gcd(&hm, &v, p);
        if g.len() > 1 {
            for w in equal_degree_split(&g, d, p) {
                out.push(w);
            }
            v = pp::div_rem(&v, &g, p).0;
            h = pp::rem(&h, &v, p);
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: f is a monic squarefree
/// product of irreducibles all of degree d.
fn equal_degree_split(f: &[u64], d: usize, p: u64) -> Vec<Vec<u64>> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(
        0x9e3779b97f4a7c15u64 ^ (n as u64) ^ pp::eval(f, 3, p),
    );
    let e: BigInt = (BigInt::from(p).pow(d as u32) - 1) / 2;
    loop {
        let mut r: Vec<u64> = (0..n).map(|_| rng.next_u64() % p).collect();
        pp::trim(&mut r);
        if r.len() <= 1 {
            continue;
        }
        let s = pp::pow_mod_big(&r, &e, f, p);
        let s1 = pp::sub(&s, &[1], p);
        let g = pp::gcd(&s1, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let rest = pp::div_rem(f, &g, p).0;
            let mut out = equal_degree_split(&g, d, p);
            out.extend(equal_degree_split(&rest, d, p));
            return out;
        }
    }
}

// --- Hensel lifting over Z/p^k ---------------------------------------

fn zmod(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

fn zp_trim(v: &mut Vec<BigInt>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn zp_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        out.push(zmod(
            &(a.get(k).unwrap_or(&zero) + b.get(k).unwrap_or(&zero)),
            m,
        ));
    }
    zp_trim(&mut out);
    out
}

fn zp_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        out.push(zmod(
            &(a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero)),
            m,
        ));
    }
    zp_trim(&mut out);
    out
}

fn zp_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = zmod(&(&out[i + j] + x * y), m);
        }
    }
    zp_trim(&mut out);
    out
}

/// Division with remainder by a monic divisor over Z/m.
fn zp_div_rem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (db..r.len()).rev() {
        let f = zmod(&r[k], m);
        if !f.is_zero() {
            q[k - db] = f.clone();
            for j in 0..=db {
                r[k - db + j] = zmod(&(&r[k - db + j] - &f * &b[j]), m);
            }
        }
    }
    zp_trim(&mut r);
    zp_trim(&mut q);
    (q, r)
}

struct HenselPair {
    g: Vec<BigInt>,
    h: Vec<BigInt>,
}

/// One quadratic Hensel step: from f = g*h mod m and s*g + t*h = 1 mod m
/// (h monic) to the same data mod m^2.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let m2 = m * m;
    let e = zp_sub(f, &zp_mul(g, h, &m2), &m2);
    let (q, r) = zp_div_rem_monic(&zp_mul(s, &e, &m2), h, &m2);
    let g1 = zp_add(&zp_add(g, &zp_mul(t, &e, &m2), &m2), &zp_mul(&q, g, &m2), &m2);
    let h1 = zp_add(h, &r, &m2);
    let one = vec![BigInt::one()];
    let b = zp_sub(
        &zp_add(&zp_mul(s, &g1, &m2), &zp_mul(t, &h1, &m2), &m2),
        &one,
        &m2,
    );
    let (c, d) = zp_div_rem_monic(&zp_mul(s, &b, &m2), &h1, &m2);
    let s1 = zp_sub(s, &d, &m2);
    let t1 = zp_sub(&zp_sub(t, &zp_mul(t, &b, &m2), &m2), &zp_mul(&c, &g1, &m2), &m2);
    (g1, h1, s1, t1)
}

/// Lift the modular factorization f = lc * prod(factors) (factors monic
/// mod p) to monic factors mod p^k, by recursive two-way splitting.
fn hensel_lift_list(f: &[BigInt], factors: &[Vec<u64>], p: u64, k: usize) -> Vec<Vec<BigInt>> {
    let mut pk = BigInt::from(p);
    for _ in 1..k {
        pk = &pk * BigInt::from(p);
    }
    let fz: Vec<BigInt> = f.iter().map(|c| zmod(c, &pk)).collect();
    lift_rec(&fz, factors, p, &pk)
}

fn lift_rec(f: &[BigInt], factors: &[Vec<u64>], p: u64, pk: &BigInt) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        // make f monic mod p^k
        let li = modinv_big(f.last().unwrap(), pk);
        let out: Vec<BigInt> = f.iter().map(|c| zmod(&(c * &li), pk)).collect();
        return vec![out];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let pb = BigInt::from(p);

    // g carries the leading coefficient, h is monic
    let mut gp = vec![zmod(f.last().unwrap(), &pb)];
    for fac in left {
        let fb: Vec<BigInt> = fac.iter().map(|&c| BigInt::from(c)).collect();
        gp = zp_mul(&gp, &fb, &pb);
    }
    let mut hp = vec![BigInt::one()];
    for fac in right {
        let fb: Vec<BigInt> = fac.iter().map(|&c| BigInt::from(c)).collect();
        hp = zp_mul(&hp, &fb, &pb);
    }
    // Bezout data mod p via word arithmetic
    let gu: Vec<u64> = gp.iter().map(|c| modp::bigint_mod(c, p)).collect();
    let hu: Vec<u64> = hp.iter().map(|c| modp::bigint_mod(c, p)).collect();
    let (su, tu) = bezout_mod_p(&gu, &hu, p);
    let mut s: Vec<BigInt> = su.iter().map(|&c| BigInt::from(c)).collect();
    let mut t: Vec<BigInt> = tu.iter().map(|&c| BigInt::from(c)).collect();

    let mut g = gp;
    let mut h = hp;
    let mut m = pb;
    while &m < pk {
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    let g: Vec<BigInt> = g.iter().map(|c| zmod(c, pk)).collect();
    let h: Vec<BigInt> = h.iter().map(|c| zmod(c, pk)).collect();
    let mut out = lift_rec(&g, left, p, pk);
    out.extend(lift_rec(&h, right, p, pk));
    out
}

fn modinv_big(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient invertible mod p^k");
    e.x.mod_floor(m)
}

/// Extended Euclid mod p: s*g + t*h = 1.
fn bezout_mod_p(g: &[u64], h: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r0 = g.to_vec();
    let mut r1 = h.to_vec();
    let mut s0 = vec![1u64];
    let mut s1 = Vec::new();
    let mut t0 = Vec::new();
    let mut t1 = vec![1u64];
    pp::trim(&mut r0);
    pp::trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = pp::div_rem(&r0, &r1, p);
        let s = pp::sub(&s0, &pp::mul(&q, &s1, p), p);
        let t = pp::sub(&t0, &pp::mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    assert!(r0.len() == 1, "inputs coprime mod p");
    let li = modp::invm(r0[0], p).unwrap();
    (pp::scale(&s0, li, p), pp::scale(&t0, li, p))
}

// --- recombination ----------------------------------------------------

fn symmetric_lift(v: &[BigInt], pk: &BigInt) -> Vec<BigInt> {
    let half = pk / BigInt::from(2);
    v.iter()
        .map(|c| {
            let r = zmod(c, pk);
            if r > half {
                r - pk
            } else {
                r
            }
        })
        .collect()
}

fn primitive_z(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    let mut out: Vec<BigInt> = v.iter().map(|c| c / &g).collect();
    if out.last().map_or(false, Signed::is_negative) {
        for c in out.iter_mut() {
            *c = -c.clone();
        }
    }
    out
}

fn z_to_unipoly(v: &[BigInt]) -> UniPoly<Rat> {
    UniPoly::new(v.iter().map(|c| Rat::from_integer(c.clone())).collect())
}

/// Zassenhaus subset recombination of the lifted modular factors.
fn recombine(f: &UniPoly<Rat>, lifted: Vec<Vec<BigInt>>, pk: &BigInt) -> Vec<UniPoly<Rat>> {
    let mut remaining = f.normalized_integer();
    let mut pool = lifted;
    let mut out = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= pool.len() {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            // candidate = lc(remaining) * prod(subset) symmetric-lifted
            let lc = remaining.integer_coeffs().last().unwrap().clone();
            let mut cand = vec![zmod(&lc, pk)];
            for &i in &subset {
                cand = zp_mul(&cand, &pool[i], pk);
            }
            let cand = primitive_z(&symmetric_lift(&cand, pk));
            let candq = z_to_unipoly(&cand);
            if !candq.is_constant() {
                let (q, r) = remaining.div_rem(&candq);
                if r.is_zero() {
                    out.push(candq);
                    remaining = q.normalized_integer();
                    let keep: Vec<Vec<BigInt>> = pool
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !subset.contains(i))
                        .map(|(_, v)| v.clone())
                        .collect();
                    pool = keep;
                    continue 'outer;
                }
            }
            // next subset of the same size
            if !next_subset(&mut subset, pool.len()) {
                break;
            }
        }
        size += 1;
    }
    if !remaining.is_constant() {
        out.push(remaining);
    }
    out
}

fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - (k - i) {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i64;

    fn poly(cs: &[i64]) -> UniPoly<Rat> {
        UniPoly::from_i64_slice(cs)
    }

    fn product(c: &Rat, fs: &[(UniPoly<Rat>, u32)]) -> UniPoly<Rat> {
        let mut p = UniPoly::constant(c.clone());
        for (f, m) in fs {
            for _ in 0..*m {
                p = p.mul(f);
            }
        }
        p
    }

    #[test]
    fn splits_difference_of_squares() {
        let p = poly(&[-1, 0, 1]); // c^2 - 1
        let (c, fs) = factor_univariate(&p).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(_, m)| *m == 1));
        assert_eq!(product(&c, &fs), p);
        assert!(fs.contains(&(poly(&[-1, 1]), 1)));
        assert!(fs.contains(&(poly(&[1, 1]), 1)));
    }

    #[test]
    fn c4_plus_1_is_irreducible() {
        let p = poly(&[1, 0, 0, 0, 1]);
        let (c, fs) = factor_univariate(&p).unwrap();
        assert_eq!(c, rat_i64(1));
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0], (p, 1));
    }

    #[test]
    fn perfect_square_with_content() {
        // 2c^2 + 4c + 2 = 2 (c+1)^2
        let p = poly(&[2, 4, 2]);
        let (c, fs) = factor_univariate(&p).unwrap();
        assert_eq!(c, rat_i64(2));
        assert_eq!(fs, vec![(poly(&[1, 1]), 2)]);
    }

    #[test]
    fn product_identity_on_mixed_input() {
        // (c^2+c+1)(c-3)^2 (2c+5)
        let p = poly(&[1, 1, 1])
            .mul(&poly(&[-3, 1]))
            .mul(&poly(&[-3, 1]))
            .mul(&poly(&[5, 2]));
        let (c, fs) = factor_univariate(&p).unwrap();
        assert_eq!(product(&c, &fs), p);
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn rational_roots_found() {
        // roots 1/2 (double) and -3
        let p = poly(&[1, -2]).mul(&poly(&[1, -2])).mul(&poly(&[3, 1]));
        let roots = rational_roots(&p).unwrap();
        assert!(roots.contains(&(Rat::new(1.into(), 2.into()), 2)));
        assert!(roots.contains(&(rat_i64(-3), 1)));
    }

    #[test]
    fn constant_rejected() {
        assert!(factor_univariate(&poly(&[7])).is_err());
        assert!(factor_univariate(&UniPoly::zero()).is_err());
    }
}
