//! Identity suites run over every field up to a given order.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{make_field_of_order, FieldElement, FieldSpec};
use crate::grs::{lagrange_l, vanishing_eval};
use crate::limits::Limits;

pub const SUITES: [&str; 8] = [
    "zech",
    "lemma4",
    "lemma5",
    "coset_factorization",
    "lemma3",
    "lemma7",
    "two_decomposition",
    "eta_e1",
];

/// Outcome of one suite across all fields.
#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: u64,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Ctx<'a> {
    f: &'a FieldSpec,
    rng: ChaCha8Rng,
    report: &'a mut SuiteReport,
}

impl Ctx<'_> {
    /// L over `pts`, recording a failure when the points are not distinct.
    fn lagrange(&mut self, pts: &[FieldElement], what: impl FnOnce() -> String) -> Option<Vec<FieldElement>> {
        match lagrange_l(self.f, pts) {
            Ok(l) => Some(l),
            Err(e) => {
                self.check(false, || format!("{}: {e}", what()));
                None
            }
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.report.checks += 1;
        if !ok && self.report.failures.len() < 20 {
            self.report.failures.push(format!("GF({}): {}", self.f.q(), witness()));
        }
    }
}

/// All suites over every field of odd order at most `max_q`.
pub fn selftest(max_q: u64, limits: &Limits) -> Result<Vec<SuiteReport>> {
    let fields = arith::odd_prime_powers(max_q)
        .into_iter()
        .map(|q| make_field_of_order(q, limits.table_limit))
        .collect::<Result<Vec<_>>>()?;
    Ok(run_suites(&fields, limits))
}

/// All suites over the given fields.
pub fn run_suites(fields: &[FieldSpec], limits: &Limits) -> Vec<SuiteReport> {
    type Suite = fn(&mut Ctx);
    let bodies: [Suite; 8] = [
        zech,
        lemma4,
        lemma5,
        coset_factorization,
        lemma3,
        lemma7,
        two_decomposition,
        eta_e1,
    ];
    SUITES
        .iter()
        .zip(bodies)
        .enumerate()
        .map(|(idx, (&name, body))| {
            let mut report = SuiteReport {
                name,
                ..Default::default()
            };
            for f in fields {
                let seed = limits.seed ^ (f.q() << 8) ^ idx as u64;
                let mut ctx = Ctx {
                    f,
                    rng: ChaCha8Rng::seed_from_u64(seed),
                    report: &mut report,
                };
                body(&mut ctx);
            }
            report
        })
        .collect()
}

/// Zech-table arithmetic against direct polynomial arithmetic.
fn zech(c: &mut Ctx) {
    let f = c.f;
    let q = f.q();
    for k in 0..q - 1 {
        let x = f.exp(k as i64);
        c.check(f.to_poly(x) == f.theta_power_by_polynomial(k), || {
            format!("θ^{k} disagrees with polynomial powering")
        });
        let sum = f.add(f.one(), x);
        c.check(f.to_poly(sum) == f.add_packed(1, f.to_poly(x)), || {
            format!("1 + θ^{k} disagrees with polynomial addition")
        });
    }
    for _ in 0..64 {
        let x = f.element(c.rng.random_range(0..q)).expect("in range");
        let y = f.element(c.rng.random_range(0..q)).expect("in range");
        let ok = f.to_poly(f.add(x, y)) == f.add_packed(f.to_poly(x), f.to_poly(y));
        c.check(ok, || format!("{} + {} disagrees with polynomial addition", x.code(), y.code()));
    }
}

/// ∏_{j≠i}(α^i − α^j) = m α^(-i) for every m | q − 1.
fn lemma4(c: &mut Ctx) {
    let f = c.f;
    for m in arith::divisors(f.q() - 1) {
        let alpha = f.exp(((f.q() - 1) / m) as i64);
        let pts: Vec<FieldElement> = (1..=m as i64).map(|i| f.pow(alpha, i)).collect();
        let Some(l) = c.lagrange(&pts, || format!("{m}-th roots of unity")) else {
            continue;
        };
        let mm = f.from_int(m as i64);
        for i in 1..=m as i64 {
            let want = f.mul(mm, f.pow(alpha, -i));
            c.check(l[i as usize - 1] == want, || format!("m = {m}, i = {i}"));
        }
    }
}

/// f_{θ^i H}(x) = x^f − θ^(if) and L_{θ^i H}(x) = f x^(f-1); plus the
/// disjoint-union decomposition of L.
fn lemma5(c: &mut Ctx) {
    let f = c.f;
    let q = f.q();
    for ff in arith::divisors(q - 1) {
        let e = (q - 1) / ff;
        let cosets = if e > 6 {
            let mut v: Vec<u64> = sample(&mut c.rng, e as usize, 6).into_iter().map(|i| i as u64).collect();
            v.sort_unstable();
            v
        } else {
            (0..e).collect()
        };
        for i in cosets {
            let coset: Vec<FieldElement> = (0..ff).map(|j| f.exp((i + e * j) as i64)).collect();
            let shift = f.exp((i * ff) as i64);
            for x in f.elements() {
                let want = f.sub(f.pow(x, ff as i64), shift);
                c.check(vanishing_eval(f, &coset, x) == want, || {
                    format!("f_(θ^{i}H)({}) with f = {ff}", x.code())
                });
            }
            let Some(l) = c.lagrange(&coset, || format!("coset θ^{i}H, f = {ff}")) else {
                continue;
            };
            let fi = f.from_int(ff as i64);
            for (x, lx) in coset.iter().zip(&l) {
                let want = f.mul(fi, f.pow(*x, ff as i64 - 1));
                c.check(*lx == want, || format!("L_(θ^{i}H)({}) with f = {ff}", x.code()));
            }
        }
    }
    for _ in 0..8 {
        let n = c.rng.random_range(2..=q.min(24)) as usize;
        let pts: Vec<FieldElement> = sample(&mut c.rng, q as usize, n)
            .into_iter()
            .map(|k| f.element(k as u64).expect("in range"))
            .collect();
        let cut = c.rng.random_range(1..n);
        let (s1, s2) = pts.split_at(cut);
        let (Some(l), Some(l1)) = (c.lagrange(&pts, || "random set".into()), c.lagrange(s1, || "random subset".into())) else {
            continue;
        };
        for (idx, &b) in s1.iter().enumerate() {
            let want = f.mul(l1[idx], vanishing_eval(f, s2, b));
            c.check(l[idx] == want, || format!("L_(S1 ∪ S2)({}) split at {cut}", b.code()));
        }
    }
}

/// f_S(x) = g(x^f) for random unions S of distinct cosets of H.
fn coset_factorization(c: &mut Ctx) {
    let f = c.f;
    let q = f.q();
    for ff in arith::divisors(q - 1) {
        let e = (q - 1) / ff;
        for _ in 0..3 {
            let t = c.rng.random_range(1..=e) as usize;
            let idx = sample(&mut c.rng, e as usize, t).into_vec();
            let xis: Vec<FieldElement> = idx.iter().map(|&i| f.exp(i as i64)).collect();
            let s: Vec<FieldElement> = xis
                .iter()
                .flat_map(|&xi| (0..ff).map(move |j| (xi, j)))
                .map(|(xi, j)| f.mul(xi, f.exp((e * j) as i64)))
                .collect();
            let roots: Vec<FieldElement> = xis.iter().map(|&xi| f.pow(xi, ff as i64)).collect();
            for x in f.elements() {
                let want = vanishing_eval(f, &roots, f.pow(x, ff as i64));
                c.check(vanishing_eval(f, &s, x) == want, || {
                    format!("f_S({}) with f = {ff}, cosets {idx:?}", x.code())
                });
            }
        }
    }
}

/// Subfields GF(r) with q = r^m, as (r, m).
fn towers(f: &FieldSpec) -> Vec<(u64, u64)> {
    f.subfield_orders()
        .into_iter()
        .map(|r| (r, arith::log_exact(f.q(), r).expect("subfield order") as u64))
        .collect()
}

/// Random e-dimensional GF(r)-subspace, as its element list.
fn random_subspace(c: &mut Ctx, r: u64, e: u64) -> Option<Vec<FieldElement>> {
    let f = c.f;
    for _ in 0..100 {
        let basis: Vec<FieldElement> = (0..e)
            .map(|_| f.element(c.rng.random_range(1..f.q())).expect("in range"))
            .collect();
        match f.span_subspace(r, &basis) {
            Ok(v) => return Some(v),
            Err(Error::DependentBasis(_)) => continue,
            Err(other) => {
                c.check(false, || format!("span of a random basis: {other}"));
                return None;
            }
        }
    }
    c.check(false, || format!("no independent {e}-element basis over GF({r}) in 100 draws"));
    None
}

/// (-1)^((r^e-1)/2) ∏_{0≠v∈V} v is a nonzero square.
fn lemma3(c: &mut Ctx) {
    let f = c.f;
    for (r, m) in towers(f) {
        for e in 1..=m {
            for _ in 0..2 {
                let Some(v) = random_subspace(c, r, e) else {
                    continue;
                };
                let prod = f.product(v.iter().copied().filter(|x| !x.is_zero()));
                let size = r.pow(e as u32);
                let sign = if ((size - 1) / 2) % 2 == 0 { f.one() } else { f.from_int(-1) };
                c.check(f.quadratic_character(f.mul(sign, prod)) == Ok(1), || format!("r = {r}, e = {e}"));
            }
        }
    }
}

/// L_a(β_k ζ + v) = (∏_{0≠v} v) ∏_{v}(ζ + v)^(t-1) L_b(β_k) on random lifts.
fn lemma7(c: &mut Ctx) {
    let f = c.f;
    for (r, m) in towers(f) {
        for e in 0..m {
            for _ in 0..2 {
                let Some(v) = random_subspace(c, r, e) else {
                    continue;
                };
                let zeta = loop {
                    let z = f.element(c.rng.random_range(1..f.q())).expect("in range");
                    if !v.contains(&z) {
                        break z;
                    }
                    if v.len() as u64 == f.q() {
                        break f.zero();
                    }
                };
                if zeta.is_zero() {
                    continue;
                }
                let sub = f.subfield_elements(r).expect("subfield");
                let t = c.rng.random_range(1..=(r - 1).min(8)) as usize;
                let b: Vec<FieldElement> = sample(&mut c.rng, r as usize, t)
                    .into_iter()
                    .map(|i| sub[i])
                    .collect();
                let a: Vec<FieldElement> = b
                    .iter()
                    .flat_map(|&beta| v.iter().map(move |&x| (beta, x)))
                    .map(|(beta, x)| f.add(f.mul(beta, zeta), x))
                    .collect();
                let (Some(la), Some(lb)) = (
                    c.lagrange(&a, || format!("lift with r = {r}, e = {e}")),
                    c.lagrange(&b, || format!("base in GF({r})")),
                ) else {
                    continue;
                };
                let pv = f.product(v.iter().copied().filter(|x| !x.is_zero()));
                let pz = f.pow(f.product(v.iter().map(|&x| f.add(zeta, x))), t as i64 - 1);
                let lambda = f.mul(pv, pz);
                for (idx, &l) in la.iter().enumerate() {
                    let k = idx / v.len();
                    c.check(l == f.mul(lambda, lb[k]), || {
                        format!("r = {r}, e = {e}, t = {t}, point {}", a[idx].code())
                    });
                }
            }
        }
    }
}

/// β^i H = β^j H exactly when i ≡ j modulo f₂ / gcd(f₂, f₁), checked by
/// explicit membership in H.
fn two_decomposition(c: &mut Ctx) {
    let f = c.f;
    let q = f.q();
    let divs = arith::divisors(q - 1);
    for &e1 in &divs {
        let f1 = (q - 1) / e1;
        let alpha = f.exp(e1 as i64);
        let mut in_h = vec![false; q as usize];
        let mut x = f.one();
        for _ in 0..f1 {
            in_h[x.code() as usize] = true;
            x = f.mul(x, alpha);
        }
        for &e2 in &divs {
            let f2 = (q - 1) / e2;
            let beta = f.exp(e2 as i64);
            let modulus = f2 / arith::gcd(f2, f1);
            let mut powers = Vec::with_capacity(f2 as usize);
            let mut y = f.one();
            for _ in 0..f2 {
                powers.push(y);
                y = f.mul(y, beta);
            }
            for i in 0..f2 {
                for j in 0..i {
                    let same = in_h[f.div(powers[i as usize], powers[j as usize]).code() as usize];
                    c.check(same == ((i - j) % modulus == 0), || {
                        format!("e1 = {e1}, e2 = {e2}, i = {i}, j = {j}")
                    });
                }
            }
        }
    }
}

/// η(e₁) = 1 for every odd e₁ | q − 1 when q ≡ 1 (mod 4).
fn eta_e1(c: &mut Ctx) {
    let f = c.f;
    if f.q() % 4 != 1 {
        return;
    }
    for e1 in arith::divisors(f.q() - 1).into_iter().filter(|d| d % 2 == 1) {
        c.check(f.quadratic_character(f.from_int(e1 as i64)) == Ok(1), || format!("e1 = {e1}"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn small_fields_pass() {
        let reports = selftest(27, &Limits::default()).unwrap();
        assert_eq!(reports.len(), SUITES.len());
        for r in &reports {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
            assert!(r.checks > 0, "{}", r.name);
        }
    }

    #[test]
    fn corrupted_table_is_caught() {
        let f = make_field(5, 2).unwrap().with_corrupted_zech(3);
        let reports = run_suites(&[f], &Limits::default());
        let zech = reports.iter().find(|r| r.name == "zech").unwrap();
        assert!(!zech.passed());
        assert!(zech.failures[0].starts_with("GF(25)"));
    }
}
