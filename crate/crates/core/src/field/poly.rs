//! Dense polynomials over GF(p), coefficients stored constant term first.

use crate::arith;

pub(crate) type Poly = Vec<u64>;

fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse.
    pow_mod_int(a, p - 2, p)
}

fn pow_mod_int(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Remainder of `a` modulo the monic or non-monic polynomial `f`.
pub(crate) fn rem(a: &Poly, f: &Poly, p: u64) -> Poly {
    let mut r = a.clone();
    trim(&mut r);
    let df = f.len() - 1;
    let lead_inv = inv_mod(*f.last().unwrap(), p);
    while r.len() > df {
        let shift = r.len() - 1 - df;
        let c = r.last().unwrap() * lead_inv % p;
        for (i, &fc) in f.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - c * fc % p) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod(a: &Poly, b: &Poly, f: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, f, p)
}

pub(crate) fn pow_mod(base: &Poly, mut e: u128, f: &Poly, p: u64) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        e >>= 1;
        if e > 0 {
            b = mul_mod(&b, &b, f, p);
        }
    }
    rem(&acc, f, p)
}

fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut a = a.clone();
    let mut b = b.clone();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn sub(a: &Poly, b: &Poly, p: u64) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

/// Rabin's irreducibility test for a monic `f` of degree m over GF(p).
pub(crate) fn is_irreducible(f: &Poly, p: u64) -> bool {
    let m = f.len() - 1;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    // frob[k] = x^(p^k) mod f for k = 0..=m
    let mut frob = vec![rem(&x, f, p)];
    for k in 1..=m {
        let prev = &frob[k - 1];
        frob.push(pow_mod(prev, p as u128, f, p));
    }
    if !sub(&frob[m], &x, p).is_empty() {
        return false;
    }
    for l in arith::prime_factors(m as u64) {
        let k = m / l as usize;
        let g = gcd(f, &sub(&frob[k], &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Monic polynomial of degree m with the given non-leading coefficients.
fn monic_from_digits(lower: &[u64]) -> Poly {
    let mut f = lower.to_vec();
    f.push(1);
    f
}

/// Smallest monic irreducible of degree m, coefficients compared from the
/// constant term upwards.
pub(crate) fn smallest_irreducible(p: u64, m: usize) -> Poly {
    let mut lower = vec![0u64; m];
    loop {
        let f = monic_from_digits(&lower);
        if is_irreducible(&f, p) {
            return f;
        }
        // increment with c_{m-1} as the least significant position so that
        // c_0 is compared first
        let mut i = m;
        loop {
            assert!(i > 0, "no irreducible polynomial of degree {m} over GF({p})");
            i -= 1;
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = 0;
        }
    }
}

/// Packs a coefficient vector (constant first) into sum c_i p^i.
pub(crate) fn pack(a: &Poly, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| acc * p + c)
}

pub(crate) fn unpack(mut u: u64, p: u64, m: usize) -> Poly {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(u % p);
        u /= p;
    }
    trim(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_gf13_quadratics() {
        // x^2 + 3x + 1 has discriminant 5, a non-residue mod 13
        assert!(is_irreducible(&vec![1, 3, 1], 13));
        // x^2 + x + 1 has discriminant -3 = 10 = 6^2
        assert!(!is_irreducible(&vec![1, 1, 1], 13));
        assert!(!is_irreducible(&vec![0, 1, 1], 13));
        assert_eq!(smallest_irreducible(13, 2), vec![1, 3, 1]);
    }

    #[test]
    fn brute_force_agrees_for_small_degrees() {
        // a cubic or quadratic is irreducible iff it has no root
        for p in [3u64, 5, 7] {
            for deg in [2usize, 3] {
                let total = p.pow(deg as u32);
                for idx in 0..total {
                    let f = monic_from_digits(&unpack(idx, p, deg).iter().copied().chain(std::iter::repeat(0)).take(deg).collect::<Vec<_>>());
                    let has_root = (0..p).any(|x| {
                        f.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) == 0
                    });
                    assert_eq!(is_irreducible(&f, p), !has_root, "p={p} f={f:?}");
                }
            }
        }
    }

    #[test]
    fn pack_roundtrip() {
        assert_eq!(pack(&vec![2, 12, 1], 13), 2 + 12 * 13 + 169);
        assert_eq!(unpack(pack(&vec![4, 0, 2], 5), 5, 3), vec![4, 0, 2]);
    }
}
