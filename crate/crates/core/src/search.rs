//! Greedy square cliques for large q and the per-field existence catalog.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::constructions::{finish_plain, th1_code, th2_code, th3_code, th4_code};
use crate::coset_lifts::{iterated_lift, th10_code, th11_code, th12_code, th13_code, th8_code, th9_code, Th12Variant};
use crate::error::{hypothesis, verification, Error, ErrorKind, Result};
use crate::field::{make_field_of_order, FieldElement, FieldSpec};
use crate::grs::{lagrange_l, CodeRecord, Provenance, SelfDualCode};
use crate::limits::Limits;

/// Extends (0, 1) greedily by the smallest-encoding element whose
/// differences to every chosen point are nonzero squares.
pub fn square_clique_greedy(field: &FieldSpec, n: usize) -> Option<Vec<FieldElement>> {
    let mut clique: Vec<FieldElement> = [field.zero(), field.one()].into_iter().take(n).collect();
    if clique.len() == n {
        return Some(clique);
    }
    for beta in field.elements() {
        if clique.contains(&beta) {
            continue;
        }
        if clique.iter().all(|&a| field.eta(field.sub(beta, a)) == 1) {
            clique.push(beta);
            if clique.len() == n {
                return Some(clique);
            }
        }
    }
    None
}

/// (t + √(t² + (n-1)2^(n-2)))² with t = (n-3)2^(n-3) + 1/2.
pub fn large_q_bound(n: usize) -> f64 {
    let n = n as f64;
    let t = (n - 3.0) * 2f64.powf(n - 3.0) + 0.5;
    let root = (t * t + (n - 1.0) * 2f64.powf(n - 2.0)).sqrt();
    (t + root).powi(2)
}

/// Lower bound on the number of greedy candidates once n-1 points are fixed.
pub fn candidate_count_lower_bound(q: f64, n: usize) -> f64 {
    let n = n as f64;
    let w = 2f64.powf(n - 1.0);
    q / w - ((n - 3.0) / 2.0 + 1.0 / w) * q.sqrt() - (n - 1.0) / 2.0
}

/// A [n, n/2] self-dual code on a square clique, for q ≡ 1 (mod 4) above
/// the bound. With `permissive` the bound is not enforced.
pub fn th_large_q_code(field: &FieldSpec, n: usize, permissive: bool) -> Result<SelfDualCode> {
    let q = field.q();
    if q % 4 != 1 {
        return Err(hypothesis(format!("q = {q} is not 1 mod 4")));
    }
    if n < 2 || n % 2 != 0 || n as u64 > q {
        return Err(hypothesis(format!("n = {n} must be even with 2 <= n <= q")));
    }
    let bound = large_q_bound(n);
    if !permissive && (q as f64) <= bound {
        return Err(hypothesis(format!("q = {q} does not exceed the bound {bound:.2}")));
    }
    let a = square_clique_greedy(field, n).ok_or_else(|| {
        let found = (2..n).rev().find(|&k| square_clique_greedy(field, k).is_some()).unwrap_or(2);
        Error::GreedyFailed { found, wanted: n }
    })?;
    if lagrange_l(field, &a)?.iter().any(|&l| field.eta(l) != 1) {
        return Err(verification("η(L_a) is not identically 1 on a square clique"));
    }
    let prov = Provenance::new("large_q").with("q", q).with("n", n as u64);
    finish_plain(field, a, prov)
}

/// Existence status of a length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Constructed,
    Nonexistent,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Constructed => "constructed",
            Status::Nonexistent => "nonexistent",
            Status::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub q: u64,
    pub n: u64,
    pub status: Status,
    pub provenance: Vec<Provenance>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<CodeRecord>,
}

/// Catalog of one field together with the parameter points that could not
/// be evaluated.
#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub q: u64,
    pub entries: Vec<CatalogEntry>,
    /// Points abandoned because a size limit was hit.
    pub skipped: Vec<String>,
    /// Points where an internal check failed, or a code contradicts the
    /// nonexistence rule.
    pub flagged: Vec<String>,
}

impl Catalog {
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&serde_json::to_string(e).expect("entries serialize"));
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self, header: bool) -> String {
        let mut out = String::new();
        if header {
            out.push_str("q,n,status,first_theorem\n");
        }
        for e in &self.entries {
            let first = e.provenance.first().map(|p| p.theorem.as_str()).unwrap_or("");
            let _ = writeln!(out, "{},{},{},{}", e.q, e.n, e.status.as_str(), first);
        }
        out
    }

    pub fn entry(&self, n: u64) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.n == n)
    }
}

/// The single nonexistence rule admitted by the catalog.
pub fn forbidden_length(q: u64, n: u64) -> bool {
    q % 4 == 3 && n % 4 == 2
}

struct Sweep {
    n_max: u64,
    hits: BTreeMap<u64, Vec<SelfDualCode>>,
    skipped: Vec<String>,
    flagged: Vec<String>,
}

impl Sweep {
    fn record(&mut self, label: impl FnOnce() -> String, res: Result<SelfDualCode>) {
        match res {
            Ok(code) => {
                let n = code.length() as u64;
                if n <= self.n_max {
                    self.hits.entry(n).or_default().push(code);
                }
            }
            Err(err) => match err.kind() {
                ErrorKind::Hypothesis => {}
                ErrorKind::Limit => {
                    if let Error::TableLimitExceeded { .. } = err {
                        self.skipped.push(format!("{}: skipped: field too large", label()));
                    }
                }
                ErrorKind::Input | ErrorKind::Verification => {
                    self.flagged.push(format!("{}: {err}", label()));
                }
            },
        }
    }
}

/// Ways of writing q = r^k with r an odd prime power.
fn roots(p: u64, m: u32) -> Vec<(u64, u64)> {
    (1..=m)
        .filter(|d| m % d == 0)
        .map(|d| (p.pow(d), (m / d) as u64))
        .collect()
}

/// Ordered factorizations of n into factors greater than one.
fn ordered_factorizations(n: u64) -> Vec<Vec<u64>> {
    if n == 1 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for d in arith::divisors(n).into_iter().filter(|&d| d > 1) {
        for mut rest in ordered_factorizations(n / d) {
            rest.insert(0, d);
            out.push(rest);
        }
    }
    out
}

/// Every code the implemented constructions produce over GF(q) with length
/// at most `n_max`, in sweep order.
#[derive(Clone, Debug)]
pub struct Constructions {
    pub codes: Vec<SelfDualCode>,
    pub skipped: Vec<String>,
    pub flagged: Vec<String>,
}

pub fn constructions(q: u64, n_max: u64, limits: &Limits) -> Result<Constructions> {
    let field = make_field_of_order(q, limits.table_limit)?;
    let (p, m) = (field.p(), field.m());
    let lim = Limits {
        length_limit: n_max,
        ..limits.clone()
    };
    let l = &lim;
    let mut sw = Sweep {
        n_max,
        hits: BTreeMap::new(),
        skipped: Vec::new(),
        flagged: Vec::new(),
    };

    let rk = roots(p, m);
    // subspace lifts
    for &(r, k) in &rk {
        for e in 0..k {
            for t in arith::divisors((r - 1) / 2) {
                sw.record(|| format!("th1 r={r} m={k} e={e} t={t}"), th1_code(r, k, e, t, l));
            }
        }
    }
    for e in 0..m as u64 {
        for t in 2..p {
            if t % 2 == 1 {
                sw.record(|| format!("th2 p={p} m={m} e={e} t={t}"), th2_code(p, m as u64, e, t, l));
            }
        }
    }
    for e in 0..m as u64 {
        for t in 2..p {
            if t % 2 == 0 {
                sw.record(|| format!("th3 p={p} m={m} e={e} t={t}"), th3_code(p, m as u64, e, t, l));
            }
        }
    }
    for &(r, k) in &rk {
        for e in 0..k {
            for t in arith::divisors(r - 1).into_iter().filter(|t| t % 2 == 0) {
                sw.record(|| format!("th4 r={r} m={k} e={e} t={t}"), th4_code(r, k, e, t, l));
            }
        }
    }

    // single-stage coset lifts: q = r^(s m), m odd
    let coset_points = |rk: &[(u64, u64)]| {
        let mut pts = Vec::new();
        for &(r, k) in rk {
            for s in arith::divisors(k) {
                let mm = k / s;
                if mm % 2 == 1 {
                    for e in 0..s {
                        for t in arith::divisors(r - 1) {
                            pts.push((r, s, mm, e, t));
                        }
                    }
                }
            }
        }
        pts
    };
    let cps = coset_points(&rk);
    type Single = fn(u64, u64, u64, u64, u64, &Limits) -> Result<SelfDualCode>;
    let singles: [(&str, Single, bool); 4] = [
        ("th8", th8_code, true),
        ("th9", th9_code, false),
        ("th10", th10_code, false),
        ("th11", th11_code, true),
    ];
    for (id, build, even) in singles {
        for &(r, s, mm, e, t) in &cps {
            if (t % 2 == 0) == even {
                sw.record(|| format!("{id} r={r} s={s} m={mm} e={e} t={t}"), build(r, s, mm, e, t, l));
            }
        }
    }

    // iterated coset lifts with at least two nontrivial stages
    for (id, extended, even) in [("cor1", false, true), ("cor2", false, false), ("cor3", true, false), ("cor4", true, true)] {
        for &(r, k) in &rk {
            for s in arith::divisors(k) {
                for ms in ordered_factorizations(k / s) {
                    if ms.len() < 2 || ms.iter().any(|x| x % 2 == 0) {
                        continue;
                    }
                    for e in 0..s {
                        for t in arith::divisors(r - 1).into_iter().filter(|t| (t % 2 == 0) == even) {
                            sw.record(
                                || format!("{id} r={r} s={s} ms={ms:?} e={e} t={t}"),
                                iterated_lift(r, s, &ms, e, t, extended, l),
                            );
                        }
                    }
                }
            }
        }
    }

    // two-decomposition constructions over q = r²
    if m % 2 == 0 {
        let r = p.pow(m / 2);
        for f in arith::divisors(q - 1) {
            let e = (q - 1) / f;
            for s in arith::divisors(r - 1) {
                let d = s * (r + 1) / arith::gcd(s * (r + 1), f);
                for t in 1..=d.min(n_max / f.max(1) + 1) {
                    for variant in [Th12Variant::Tf, Th12Variant::TfPlus2] {
                        sw.record(
                            || format!("th12 r={r} e={e} f={f} s={s} t={t} variant={}", variant.name()),
                            th12_code(r, e, f, s, t, variant, l),
                        );
                    }
                }
            }
        }
        for f in arith::divisors(q - 1) {
            let e = (q - 1) / f;
            for s in arith::divisors(r + 1) {
                let d = s * (r - 1) / arith::gcd(s * (r - 1), f);
                for t in 1..=d.min(n_max / f.max(1) + 1) {
                    sw.record(|| format!("th13 r={r} e={e} f={f} s={s} t={t}"), th13_code(r, e, f, s, t, l));
                }
            }
        }
    }

    // greedy square cliques
    if q % 4 == 1 {
        let mut n = 2u64;
        while n <= n_max && n <= q && (q as f64) > large_q_bound(n as usize) {
            sw.record(|| format!("large_q q={q} n={n}"), th_large_q_code(&field, n as usize, false));
            n += 2;
        }
    }

    Ok(Constructions {
        codes: sw.hits.into_values().flatten().collect(),
        skipped: sw.skipped,
        flagged: sw.flagged,
    })
}

/// Status of every even length up to `n_max` over GF(q).
pub fn catalog(q: u64, n_max: u64, limits: &Limits) -> Result<Catalog> {
    let found = constructions(q, n_max, limits)?;
    let mut flagged = found.flagged;
    let mut by_length: BTreeMap<u64, Vec<SelfDualCode>> = BTreeMap::new();
    for code in found.codes {
        by_length.entry(code.length() as u64).or_default().push(code);
    }
    let mut entries = Vec::new();
    for n in (2..=n_max).step_by(2) {
        let hits = by_length.remove(&n).unwrap_or_default();
        let status = if forbidden_length(q, n) {
            if !hits.is_empty() {
                flagged.push(format!(
                    "n={n}: {} constructed a code the nonexistence rule forbids",
                    hits[0].provenance().theorem
                ));
            }
            Status::Nonexistent
        } else if hits.is_empty() {
            Status::Unknown
        } else {
            Status::Constructed
        };
        let (provenance, certificate) = if status == Status::Constructed {
            (
                hits.iter().map(|c| c.provenance().clone()).collect(),
                Some(hits[0].to_record()),
            )
        } else {
            (Vec::new(), None)
        };
        entries.push(CatalogEntry {
            q,
            n,
            status,
            provenance,
            certificate,
        });
    }
    Ok(Catalog {
        q,
        entries,
        skipped: found.skipped,
        flagged,
    })
}
