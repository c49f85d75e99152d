//! Factorization of squarefree primitive integer polynomials by the
//! Zassenhaus method: factor modulo a prime, Hensel-lift, recombine.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type ModPoly = Vec<u64>;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn trim(mut v: ModPoly) -> ModPoly {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn mp_sub(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

fn mp_mul(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    let pp = p as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u128 * y as u128) % pp;
        }
    }
    trim(out.into_iter().map(|v| v as u64).collect())
}

fn mp_divrem(a: &[u64], b: &[u64], p: u64) -> (ModPoly, ModPoly) {
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let inv = invmod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let c = mulmod(r[dr], inv, p);
        let s = dr - db;
        for (i, &bc) in b.iter().enumerate() {
            r[s + i] = (r[s + i] + p - mulmod(c, bc, p)) % p;
        }
        q[s] = c;
        r = trim(r);
    }
    (trim(q), r)
}

fn mp_rem(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    mp_divrem(a, b, p).1
}

fn mp_monic(a: &[u64], p: u64) -> ModPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = invmod(lc, p);
            a.iter().map(|&c| mulmod(c, inv, p)).collect()
        }
    }
}

fn mp_gcd(a: &[u64], b: &[u64], p: u64) -> ModPoly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = mp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    mp_monic(&x, p)
}

/// `(s, t)` with `s*a + t*b = 1` for coprime `a`, `b`.
fn mp_bezout(a: &[u64], b: &[u64], p: u64) -> (ModPoly, ModPoly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = mp_divrem(&r0, &r1, p);
        let s2 = mp_sub(&s0, &mp_mul(&q, &s1, p), p);
        let t2 = mp_sub(&t0, &mp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = invmod(r0[0], p);
    let sc = |v: &[u64]| -> ModPoly { trim(v.iter().map(|&c| mulmod(c, inv, p)).collect()) };
    (sc(&s0), sc(&t0))
}

fn mp_powmod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> ModPoly {
    let mut result = vec![1u64];
    let b = mp_rem(base, m, p);
    let bits = e.bits();
    for i in (0..bits).rev() {
        result = mp_rem(&mp_mul(&result, &result, p), m, p);
        if e.bit(i) {
            result = mp_rem(&mp_mul(&result, &b, p), m, p);
        }
    }
    result
}

fn mp_derivative(a: &[u64], p: u64) -> ModPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn ddf(f: &[u64], p: u64) -> Vec<(ModPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut d = 0;
    while f.len() > 1 && 2 * (d + 1) < f.len() {
        d += 1;
        h = mp_powmod(&h, &pe, &f, p);
        let g = mp_gcd(&mp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = mp_divrem(&f, &g, p).0;
            h = mp_rem(&h, &f, p);
            out.push((g, d));
        }
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus) into monic irreducibles.
fn edf(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: ModPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = mp_sub(&mp_powmod(&a, &e, f, p), &[1], p);
        let g = mp_gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let q = mp_divrem(f, &g, p).0;
            let mut out = edf(&g, d, p, rng);
            out.extend(edf(&mp_monic(&q, p), d, p, rng));
            return out;
        }
    }
}

fn factor_mod_p(f: &[u64], p: u64, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let f = mp_monic(f, p);
    let mut out = Vec::new();
    for (g, d) in ddf(&f, p) {
        out.extend(edf(&g, d, p, rng));
    }
    out
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn reduce(f: &[BigInt], p: u64) -> ModPoly {
    let pb = BigInt::from(p);
    trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn zp_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out.into_iter().map(|c| c.mod_floor(m)).collect()
}

fn lift_mod(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts `target ≡ g*h (mod p)` (all monic) to modulus `p^a`.
fn hensel_pair(target: &[BigInt], g: &[u64], h: &[u64], p: u64, a: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (s, t) = mp_bezout(g, h, p);
    let pb = BigInt::from(p);
    let mut gz = lift_mod(g);
    let mut hz = lift_mod(h);
    let mut pk = pb.clone();
    for _ in 1..a {
        let next = &pk * &pb;
        let prod = zp_mul(&gz, &hz, &next);
        let mut e = Vec::with_capacity(target.len());
        for i in 0..target.len() {
            let diff = (&target[i] - prod.get(i).cloned().unwrap_or_default()).mod_floor(&next);
            let q = diff / &pk;
            e.push(q.mod_floor(&pb).to_u64().unwrap());
        }
        let e = trim(e);
        if !e.is_empty() {
            let dh = mp_rem(&mp_mul(&e, &s, p), h, p);
            let dg = mp_rem(&mp_mul(&e, &t, p), g, p);
            for (i, c) in dg.iter().enumerate() {
                gz[i] = (&gz[i] + &pk * BigInt::from(*c)).mod_floor(&next);
            }
            for (i, c) in dh.iter().enumerate() {
                hz[i] = (&hz[i] + &pk * BigInt::from(*c)).mod_floor(&next);
            }
        }
        pk = next;
    }
    (gz, hz)
}

fn content(f: &[BigInt]) -> BigInt {
    f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn primitive_part(f: Vec<BigInt>) -> Vec<BigInt> {
    let c = content(&f);
    let mut out: Vec<BigInt> = if c.is_zero() || c.is_one() { f } else { f.into_iter().map(|x| x / &c).collect() };
    if out.last().map(|l| l.is_negative()).unwrap_or(false) {
        out = out.into_iter().map(|x| -x).collect();
    }
    out
}

/// Exact division in Z[y]; `None` if `b` does not divide `a`.
pub(crate) fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.len() > a.len() {
        return None;
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); a.len() - db];
    for s in (0..q.len()).rev() {
        let top = &r[s + db];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (i, bc) in b.iter().enumerate() {
            r[s + i] -= &c * bc;
        }
        q[s] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

const PRIME_TRIALS: usize = 5;

/// Factors a squarefree, primitive `f` of positive degree with positive
/// leading coefficient into irreducible primitive factors (positive leading
/// coefficients). Coefficients are lowest degree first.
pub fn factor_squarefree(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);

    // choose a prime giving the fewest modular factors
    let mut best: Option<(u64, Vec<ModPoly>)> = None;
    let mut candidate: u64 = 1 << 20;
    let mut tried = 0;
    while tried < PRIME_TRIALS {
        candidate += 1;
        if !is_prime(candidate) {
            continue;
        }
        let p = candidate;
        let fp = reduce(f, p);
        if fp.len() != f.len() {
            continue;
        }
        let g = mp_gcd(&fp, &mp_derivative(&fp, p), p);
        if g.len() != 1 {
            continue;
        }
        tried += 1;
        let facs = factor_mod_p(&fp, p, &mut rng);
        if facs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().map(|(_, b)| facs.len() < b.len()).unwrap_or(true) {
            best = Some((p, facs));
        }
    }
    let (p, mut facs) = best.expect("a suitable prime exists");
    facs.sort();

    // lifting bound: 2 * |lc| * 2^n * ||f||_1
    let norm1: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm1;
    let pb = BigInt::from(p);
    let mut a = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        a += 1;
    }

    // monic target lc^{-1} f mod p^a
    let lc_inv = mod_inverse(&lc, &m);
    let monic: Vec<BigInt> = f.iter().map(|c| (c * &lc_inv).mod_floor(&m)).collect();

    let mut lifted: Vec<Vec<BigInt>> = Vec::new();
    let mut target = monic;
    for i in 0..facs.len() - 1 {
        let g = &facs[i];
        let rest = facs[i + 1..].iter().fold(vec![1u64], |acc, h| mp_mul(&acc, h, p));
        let (gz, hz) = hensel_pair(&target, g, &rest, p, a);
        lifted.push(gz);
        target = hz;
    }
    lifted.push(target);

    // recombination
    let mut result = Vec::new();
    let mut fcur = f.to_vec();
    let mut remaining = lifted;
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut idx: Vec<usize> = (0..s).collect();
        let mut found = false;
        loop {
            let lcur = fcur.last().unwrap().clone();
            let mut prod = vec![lcur];
            for &i in &idx {
                prod = zp_mul(&prod, &remaining[i], &m);
            }
            let cand = primitive_part(prod.iter().map(|c| sym_mod(c, &m)).collect());
            if let Some(q) = zdiv_exact(&fcur, &cand) {
                result.push(cand);
                fcur = q;
                let mut keep = Vec::new();
                for (j, r) in remaining.into_iter().enumerate() {
                    if !idx.contains(&j) {
                        keep.push(r);
                    }
                }
                remaining = keep;
                found = true;
                break;
            }
            if !next_combination(&mut idx, remaining.len()) {
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if fcur.len() > 1 {
        result.push(primitive_part(fcur));
    }
    result
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one() || (-&e.gcd).is_one());
    let x = if e.gcd.sign() == Sign::Minus { -e.x } else { e.x };
    x.mod_floor(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(cs: &[i64]) -> Vec<BigInt> {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn irreducible_quartic() {
        let f = z(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree(&f), vec![f]);
    }

    #[test]
    fn product_of_cyclotomics() {
        // (y^2 + y + 1)(y^4 + y^3 + y^2 + y + 1)(3y - 2)
        let a = z(&[1, 1, 1]);
        let b = z(&[1, 1, 1, 1, 1]);
        let c = z(&[-2, 3]);
        let f = mul(&mul(&a, &b), &c);
        let mut got = factor_squarefree(&f);
        got.sort_by_key(|g| g.len());
        assert_eq!(got, vec![c, a, b]);
    }

    #[test]
    fn swinnerton_dyer_like_polynomial_stays_whole() {
        // minimal polynomial of sqrt2 + sqrt3 + sqrt5, degree 8
        let f = z(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
        assert_eq!(factor_squarefree(&f).len(), 1);
    }
}
