//! Finite fields GF(p^m) of odd characteristic in discrete-log form.
//!
//! A field is realized from the smallest monic irreducible polynomial of
//! degree m over GF(p) (coefficients compared from the constant term up)
//! and the smallest primitive element θ in packed polynomial order. Elements
//! are stored by their discrete logarithm: code 0 is zero and code i ≥ 1 is
//! θ^(i-1). Multiplication is index arithmetic; addition goes through a
//! Zech-logarithm table.

mod poly;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// Largest field order for which tables are built unless configured otherwise.
pub const DEFAULT_TABLE_LIMIT: u64 = 1 << 22;

/// An element of a specific realized field. Equality is equality of codes
/// within the same field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    q: u32,
    code: u32,
}

impl FieldElement {
    /// Wire encoding: 0 for zero, i for θ^(i-1).
    pub fn code(self) -> u32 {
        self.code
    }

    /// Order of the field this element belongs to.
    pub fn field_order(self) -> u64 {
        self.q as u64
    }

    pub fn is_zero(self) -> bool {
        self.code == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.code == 0 {
            write!(f, "0")
        } else {
            write!(f, "θ^{}", self.code - 1)
        }
    }
}

/// JSON descriptor of a realized field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub m: u32,
    /// Modulus coefficients, constant term first.
    pub modulus: Vec<u64>,
    /// θ in packed polynomial form, sum of c_i p^i.
    pub theta: u64,
}

struct Tables {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u64>,
    theta_poly: u32,
    /// exp[i] = packed polynomial of θ^i, i < q-1
    exp: Vec<u32>,
    /// log[u] = code of the element with packed polynomial u
    log: Vec<u32>,
    /// zech[k] = code of 1 + θ^k
    zech: Vec<u32>,
}

/// A realized GF(p^m). Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FieldSpec {
    t: Arc<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.t.p, self.t.m)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.t.q == other.t.q
    }
}

impl Eq for FieldSpec {}

/// Builds GF(p^m) with the default table limit.
pub fn make_field(p: u64, m: u32) -> Result<FieldSpec> {
    FieldSpec::new(p, m, DEFAULT_TABLE_LIMIT)
}

/// Builds GF(q) for an odd prime power q.
pub fn make_field_of_order(q: u64, table_limit: u64) -> Result<FieldSpec> {
    let (p, m) = arith::prime_power(q).ok_or(Error::NotAPrimePower(q))?;
    if p == 2 {
        return Err(Error::NotAPrimePower(q));
    }
    FieldSpec::new(p, m, table_limit)
}

impl FieldSpec {
    pub fn new(p: u64, m: u32, table_limit: u64) -> Result<Self> {
        if p % 2 == 0 || !arith::is_prime(p) {
            return Err(Error::CompositeCharacteristic(p));
        }
        if m == 0 {
            return Err(Error::InvalidDegree);
        }
        let order = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if order > table_limit as u128 || order > u32::MAX as u128 {
            return Err(Error::TableLimitExceeded {
                order,
                limit: table_limit,
            });
        }
        let q = order as u64;
        let md = m as usize;
        let modulus = poly::smallest_irreducible(p, md);

        let qm1 = q - 1;
        let primes = arith::prime_factors(qm1);
        let one: poly::Poly = vec![1];
        let theta_poly = (1..q)
            .find(|&u| {
                let cand = poly::unpack(u, p, md);
                primes
                    .iter()
                    .all(|&l| poly::pow_mod(&cand, (qm1 / l) as u128, &modulus, p) != one)
            })
            .expect("a finite field has a primitive element");

        let exp = exp_table(p, md, &modulus, theta_poly, qm1);
        let mut log = vec![0u32; q as usize];
        let mut seen = vec![false; q as usize];
        for (i, &u) in exp.iter().enumerate() {
            assert!(!seen[u as usize], "θ is not primitive");
            seen[u as usize] = true;
            log[u as usize] = i as u32 + 1;
        }
        assert!(!seen[0] && seen[1..].iter().all(|&s| s));

        let zech = exp
            .iter()
            .map(|&u| {
                let c0 = u as u64 % p;
                let w = u as u64 - c0 + (c0 + 1) % p;
                log[w as usize]
            })
            .collect();

        Ok(FieldSpec {
            t: Arc::new(Tables {
                p: p as u32,
                m,
                q: q as u32,
                modulus,
                theta_poly: theta_poly as u32,
                exp,
                log,
                zech,
            }),
        })
    }

    pub fn p(&self) -> u64 {
        self.t.p as u64
    }

    pub fn m(&self) -> u32 {
        self.t.m
    }

    pub fn q(&self) -> u64 {
        self.t.q as u64
    }

    pub fn modulus(&self) -> &[u64] {
        &self.t.modulus
    }

    /// θ as a packed polynomial.
    pub fn theta_poly(&self) -> u64 {
        self.t.theta_poly as u64
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p(),
            m: self.m(),
            modulus: self.t.modulus.clone(),
            theta: self.theta_poly(),
        }
    }

    /// Rebuilds the field named by a descriptor and checks that it is the
    /// canonical realization.
    pub fn from_descriptor(d: &FieldDescriptor, table_limit: u64) -> Result<Self> {
        let f = FieldSpec::new(d.p, d.m, table_limit)?;
        if f.t.modulus != d.modulus || f.theta_poly() != d.theta {
            return Err(Error::DescriptorMismatch(f.q()));
        }
        Ok(f)
    }

    #[inline]
    fn make(&self, code: u32) -> FieldElement {
        FieldElement { q: self.t.q, code }
    }

    #[inline]
    fn own(&self, x: FieldElement) -> u32 {
        assert!(
            x.q == self.t.q,
            "element of GF({}) used with GF({})",
            x.q,
            self.t.q
        );
        x.code
    }

    /// Validates that `x` belongs to this field.
    pub fn check(&self, x: FieldElement) -> Result<FieldElement> {
        if x.q != self.t.q {
            return Err(Error::FieldMismatch {
                expected: self.q(),
                found: x.q as u64,
            });
        }
        Ok(x)
    }

    pub fn zero(&self) -> FieldElement {
        self.make(0)
    }

    pub fn one(&self) -> FieldElement {
        self.make(1)
    }

    /// The designated primitive element θ.
    pub fn theta(&self) -> FieldElement {
        self.make(if self.t.q == 2 { 1 } else { 2 })
    }

    /// Element with the given wire encoding.
    pub fn element(&self, code: u64) -> Result<FieldElement> {
        if code >= self.q() {
            return Err(Error::InvalidElement {
                code,
                q: self.q(),
            });
        }
        Ok(self.make(code as u32))
    }

    /// θ^k for any integer k.
    pub fn exp(&self, k: i64) -> FieldElement {
        let qm1 = (self.t.q - 1) as i64;
        self.make(k.rem_euclid(qm1) as u32 + 1)
    }

    /// Discrete logarithm base θ, in 0..q-1.
    pub fn log(&self, x: FieldElement) -> Option<u64> {
        let c = self.own(x);
        (c != 0).then(|| c as u64 - 1)
    }

    /// Image of an integer under Z -> GF(p) ⊂ GF(q).
    pub fn from_int(&self, i: i64) -> FieldElement {
        let c = i.rem_euclid(self.t.p as i64) as usize;
        self.make(self.t.log[c])
    }

    /// Element with packed polynomial representation u = sum c_i p^i.
    pub fn from_poly(&self, u: u64) -> Result<FieldElement> {
        if u >= self.q() {
            return Err(Error::InvalidElement {
                code: u,
                q: self.q(),
            });
        }
        Ok(self.make(self.t.log[u as usize]))
    }

    /// Packed polynomial representation.
    pub fn to_poly(&self, x: FieldElement) -> u64 {
        let c = self.own(x);
        if c == 0 {
            0
        } else {
            self.t.exp[c as usize - 1] as u64
        }
    }

    /// The residue if `x` lies in the prime field.
    pub fn to_int(&self, x: FieldElement) -> Option<u64> {
        let u = self.to_poly(x);
        (u < self.p()).then_some(u)
    }

    /// All elements in ascending encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.t.q).map(move |c| self.make(c))
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.make(self.add_code(self.own(x), self.own(y)))
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let ny = self.neg_code(self.own(y));
        self.make(self.add_code(self.own(x), ny))
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        self.make(self.neg_code(self.own(x)))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.make(self.mul_code(self.own(x), self.own(y)))
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, x: FieldElement) -> FieldElement {
        let c = self.own(x);
        assert!(c != 0, "inverse of zero");
        self.make(self.inv_code(c))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.mul(x, self.inv(y))
    }

    /// x^e for a signed exponent; negative exponents require x ≠ 0.
    pub fn pow(&self, x: FieldElement, e: i64) -> FieldElement {
        let c = self.own(x);
        if c == 0 {
            assert!(e >= 0, "negative power of zero");
            return if e == 0 { self.one() } else { self.zero() };
        }
        let qm1 = (self.t.q - 1) as i128;
        let k = ((c as i128 - 1) * e as i128).rem_euclid(qm1);
        self.make(k as u32 + 1)
    }

    /// x -> x^p.
    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.p() as i64)
    }

    pub fn product<I: IntoIterator<Item = FieldElement>>(&self, it: I) -> FieldElement {
        it.into_iter().fold(self.one(), |acc, x| self.mul(acc, x))
    }

    pub fn sum<I: IntoIterator<Item = FieldElement>>(&self, it: I) -> FieldElement {
        it.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }

    /// Quadratic character: +1 on nonzero squares, -1 on non-squares.
    pub fn quadratic_character(&self, x: FieldElement) -> Result<i8> {
        match self.own(x) {
            0 => Err(Error::ZeroArgument),
            c => Ok(if (c - 1) % 2 == 0 { 1 } else { -1 }),
        }
    }

    /// Shorthand for the quadratic character; panics on zero.
    pub fn eta(&self, x: FieldElement) -> i8 {
        self.quadratic_character(x)
            .expect("quadratic character of zero")
    }

    pub fn is_square(&self, x: FieldElement) -> bool {
        let c = self.own(x);
        c != 0 && (c - 1) % 2 == 0
    }

    /// Canonical square root: the root with the smaller discrete log.
    pub fn sqrt(&self, x: FieldElement) -> Option<FieldElement> {
        match self.own(x) {
            0 => Some(self.zero()),
            c if (c - 1) % 2 == 0 => Some(self.make((c - 1) / 2 + 1)),
            _ => None,
        }
    }

    /// Orders p^d of the subfields, d | m, ascending.
    pub fn subfield_orders(&self) -> Vec<u64> {
        arith::divisors(self.m() as u64)
            .into_iter()
            .map(|d| self.p().pow(d as u32))
            .collect()
    }

    /// (q-1)/(r-1), the log step generating GF(r)*.
    pub fn subfield_step(&self, r: u64) -> Result<u64> {
        let q = self.q();
        let not_sub = Error::NotASubfield { r, q };
        let d = arith::log_exact(r, self.p()).ok_or(not_sub.clone())?;
        if self.m() % d != 0 || (q - 1) % (r - 1) != 0 {
            return Err(not_sub);
        }
        Ok((q - 1) / (r - 1))
    }

    pub fn in_subfield(&self, x: FieldElement, r: u64) -> Result<bool> {
        let step = self.subfield_step(r)?;
        Ok(match self.log(x) {
            None => true,
            Some(k) => k % step == 0,
        })
    }

    /// {0} ∪ ⟨θ^((q-1)/(r-1))⟩ in ascending encoding order.
    pub fn subfield_elements(&self, r: u64) -> Result<Vec<FieldElement>> {
        let step = self.subfield_step(r)? as i64;
        let mut out = Vec::with_capacity(r as usize);
        out.push(self.zero());
        out.extend((0..r as i64 - 1).map(|k| self.exp(k * step)));
        Ok(out)
    }

    /// All GF(r)-combinations of `basis`, lexicographic in the coefficient
    /// vector (first basis element most significant, coefficients in
    /// subfield order).
    pub fn span_subspace(&self, r: u64, basis: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let coeffs = self.subfield_elements(r)?;
        for &b in basis {
            self.check(b)?;
        }
        let mut span = vec![self.zero()];
        for &b in basis.iter().rev() {
            let mut next = Vec::with_capacity(span.len() * coeffs.len());
            for &c in &coeffs {
                let cb = self.mul(c, b);
                next.extend(span.iter().map(|&s| self.add(cb, s)));
            }
            span = next;
        }
        let mut seen = vec![false; self.q() as usize];
        for x in &span {
            if std::mem::replace(&mut seen[x.code as usize], true) {
                return Err(Error::DependentBasis(r));
            }
        }
        Ok(span)
    }

    // Raw code arithmetic for inner loops.

    #[inline]
    pub(crate) fn add_code(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let qm1 = self.t.q - 1;
        let (i, j) = (a - 1, b - 1);
        let d = if j >= i { j - i } else { j + qm1 - i };
        let z = self.t.zech[d as usize];
        if z == 0 {
            return 0;
        }
        let s = i + z - 1;
        (if s >= qm1 { s - qm1 } else { s }) + 1
    }

    #[inline]
    pub(crate) fn mul_code(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let qm1 = self.t.q - 1;
        let s = (a - 1) + (b - 1);
        (if s >= qm1 { s - qm1 } else { s }) + 1
    }

    #[inline]
    pub(crate) fn neg_code(&self, a: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let qm1 = self.t.q - 1;
        let s = (a - 1) + qm1 / 2;
        (if s >= qm1 { s - qm1 } else { s }) + 1
    }

    #[inline]
    pub(crate) fn inv_code(&self, a: u32) -> u32 {
        let qm1 = self.t.q - 1;
        (qm1 - (a - 1)) % qm1 + 1
    }

    #[inline]
    pub(crate) fn wrap(&self, code: u32) -> FieldElement {
        self.make(code)
    }

    /// Returns a copy whose Zech table has entry k altered. Only meant for
    /// exercising the self-test fault path.
    #[doc(hidden)]
    pub fn with_corrupted_zech(&self, k: usize) -> FieldSpec {
        let t = &self.t;
        let mut zech = t.zech.clone();
        let n = zech.len();
        zech[k % n] = (zech[k % n] % (t.q - 1)) + 1;
        if zech[k % n] == t.zech[k % n] {
            zech[k % n] = zech[k % n] % (t.q - 1) + 1;
        }
        FieldSpec {
            t: Arc::new(Tables {
                p: t.p,
                m: t.m,
                q: t.q,
                modulus: t.modulus.clone(),
                theta_poly: t.theta_poly,
                exp: t.exp.clone(),
                log: t.log.clone(),
                zech,
            }),
        }
    }

    /// θ^k computed by polynomial arithmetic modulo the modulus, bypassing
    /// the tables. Used as an independent route in self-tests.
    pub fn theta_power_by_polynomial(&self, k: u64) -> u64 {
        let p = self.p();
        let m = self.m() as usize;
        let th = poly::unpack(self.theta_poly(), p, m);
        poly::pack(&poly::pow_mod(&th, k as u128, &self.t.modulus, p), p)
    }

    /// Sum of two packed polynomials, digit by digit.
    pub fn add_packed(&self, u: u64, w: u64) -> u64 {
        let p = self.p();
        let (mut u, mut w) = (u, w);
        let mut out = 0;
        let mut scale = 1;
        for _ in 0..self.m() {
            out += ((u % p + w % p) % p) * scale;
            u /= p;
            w /= p;
            scale *= p;
        }
        out
    }
}

fn exp_table(p: u64, m: usize, modulus: &[u64], theta: u64, qm1: u64) -> Vec<u32> {
    let mut exp = Vec::with_capacity(qm1 as usize);
    if m == 1 {
        let mut cur = 1u64;
        for _ in 0..qm1 {
            exp.push(cur as u32);
            cur = cur * theta % p;
        }
        return exp;
    }
    // reduction rows: x^k mod f for k in m..2m-1
    let mut red: Vec<Vec<u64>> = Vec::with_capacity(m);
    let mut row: Vec<u64> = modulus[..m].iter().map(|&c| (p - c) % p).collect();
    for _ in 0..m - 1 {
        red.push(row.clone());
        // multiply row by x and reduce
        let top = row[m - 1];
        let mut next = vec![0u64; m];
        next[1..m].copy_from_slice(&row[..m - 1]);
        for i in 0..m {
            next[i] = (next[i] + top * ((p - modulus[i]) % p)) % p;
        }
        row = next;
    }
    let th = poly::unpack(theta, p, m);
    let th: Vec<u64> = (0..m).map(|i| th.get(i).copied().unwrap_or(0)).collect();
    let mut cur = vec![0u64; m];
    cur[0] = 1;
    let mut prod = vec![0u64; 2 * m - 1];
    for _ in 0..qm1 {
        exp.push(poly::pack(&cur, p) as u32);
        prod.iter_mut().for_each(|x| *x = 0);
        for (i, &a) in cur.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in th.iter().enumerate() {
                prod[i + j] = (prod[i + j] + a * b) % p;
            }
        }
        let mut next: Vec<u64> = prod[..m].to_vec();
        for k in m..2 * m - 1 {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (i, &r) in red[k - m].iter().enumerate() {
                next[i] = (next[i] + c * r) % p;
            }
        }
        cur = next;
    }
    exp
}
