//! Unions of cosets over GF(r²) chosen through a second factorization of
//! q − 1.

use crate::arith::gcd;
use crate::constructions::{finish_extended, finish_plain};
use crate::error::{hypothesis, verification, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::grs::{lagrange_l, Provenance, SelfDualCode};
use crate::host::{check_length, check_table, extension, odd_prime_power};
use crate::limits::Limits;

/// q − 1 = e₁f₁ = e₂f₂ with H = ⟨θ^e₁⟩ of order f₁ and M = ⟨θ^e₂⟩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoDecomposition {
    field: FieldSpec,
    pub e1: u64,
    pub f1: u64,
    pub e2: u64,
    pub f2: u64,
}

impl TwoDecomposition {
    pub fn new(field: &FieldSpec, e1: u64, e2: u64) -> Result<Self> {
        let qm1 = field.q() - 1;
        for e in [e1, e2] {
            if e == 0 || qm1 % e != 0 {
                return Err(hypothesis(format!("{e} does not divide q - 1 = {qm1}")));
            }
        }
        Ok(TwoDecomposition {
            field: field.clone(),
            e1,
            f1: qm1 / e1,
            e2,
            f2: qm1 / e2,
        })
    }

    /// f₂ / gcd(f₂, f₁): the number of distinct cosets β^i H.
    pub fn bound(&self) -> u64 {
        self.f2 / gcd(self.f2, self.f1)
    }

    /// β^i H = β^j H, decided by membership of β^(i-j) in H.
    pub fn same_coset(&self, i: u64, j: u64) -> bool {
        let f = &self.field;
        let beta = f.exp(self.e2 as i64);
        let x = f.pow(beta, i as i64 - j as i64);
        f.log(x).expect("nonzero") % self.e1 == 0
    }

    /// Elements β^i θ^(e₁ j), j = 0..f₁, of the coset β^i H.
    fn coset(&self, i: u64) -> Vec<FieldElement> {
        let f = &self.field;
        (0..self.f1)
            .map(|j| f.exp((self.e2 as i64) * i as i64 + (self.e1 * j) as i64))
            .collect()
    }
}

/// Indices 0, 1, …, t-1 naming t pairwise distinct cosets β^i H.
pub fn distinct_coset_indices(td: &TwoDecomposition, t: u64) -> Result<Vec<u64>> {
    let bound = td.bound();
    if t > bound {
        return Err(Error::TooManyCosets { t, bound });
    }
    let idx: Vec<u64> = (0..t).collect();
    check_distinct(td, &idx)?;
    Ok(idx)
}

fn check_distinct(td: &TwoDecomposition, idx: &[u64]) -> Result<()> {
    for (x, &i) in idx.iter().enumerate() {
        for &j in &idx[..x] {
            if td.same_coset(i, j) {
                return Err(verification(format!("indices {j} and {i} give the same coset")));
            }
        }
    }
    Ok(())
}

/// Which length Theorem 12 realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Th12Variant {
    /// t f
    Tf,
    /// t f + 2 (extended, zero appended)
    TfPlus2,
}

impl Th12Variant {
    pub fn name(self) -> &'static str {
        match self {
            Th12Variant::Tf => "tf",
            Th12Variant::TfPlus2 => "tf+2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "tf" => Ok(Th12Variant::Tf),
            "tf+2" => Ok(Th12Variant::TfPlus2),
            other => Err(Error::Parse(format!("unknown variant {other:?}"))),
        }
    }
}

fn parity(x: i128) -> i8 {
    if x.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Shared setup over GF(r²): the field, q − 1 = e f, and s | f.
fn square_field(r: u64, e: u64, f: u64, s: u64, limits: &Limits) -> Result<FieldSpec> {
    odd_prime_power(r)?;
    check_table(r, 2, limits)?;
    let q = r * r;
    if e.checked_mul(f) != Some(q - 1) {
        return Err(hypothesis(format!("e f = {e}·{f} is not q - 1 = {}", q - 1)));
    }
    if s == 0 || f % s != 0 {
        return Err(hypothesis(format!("s = {s} does not divide f = {f}")));
    }
    extension(r, 2, limits)
}

/// Union of t cosets of H = ⟨θ^e⟩ over GF(r²), with β = θ^((r-1)/s).
/// Variant tf uses the plain criterion; variant tf+2 appends zero and uses
/// the extended one.
pub fn th12_code(
    r: u64,
    e: u64,
    f: u64,
    s: u64,
    t: u64,
    variant: Th12Variant,
    limits: &Limits,
) -> Result<SelfDualCode> {
    odd_prime_power(r)?;
    if s == 0 || (r - 1) % s != 0 {
        return Err(hypothesis(format!("s = {s} does not divide r - 1 = {}", r - 1)));
    }
    let d = s * (r + 1) / gcd(s * (r + 1), f.max(1));
    if t == 0 || t > d {
        return Err(hypothesis(format!("t = {t} must lie in [1, D] with D = {d}")));
    }
    if (t * f) % 2 != 0 {
        return Err(hypothesis(format!("t f = {} is odd", t * f)));
    }
    let fs = f / s.max(1);
    let mut fixup = false;
    match variant {
        Th12Variant::Tf => {
            if e % 2 != 0 {
                return Err(hypothesis(format!("e = {e} is odd")));
            }
            if ((r - 1 + f * t) / s) % 2 != 0 {
                return Err(hypothesis(format!("(r - 1 + f t)/s = {} is odd", (r - 1 + f * t) / s)));
            }
        }
        Th12Variant::TfPlus2 if t < d => {
            let half = (t - 1) * (r + 1) / 2;
            if fs % 2 == 0 && half % 2 == 0 {
            } else if fs % 2 == 1 && t % 2 == 0 {
                fixup = true;
            } else {
                return Err(hypothesis(format!(
                    "neither (f/s = {fs} even and (t-1)(r+1)/2 = {half} even) nor (f/s odd and t = {t} even)"
                )));
            }
        }
        Th12Variant::TfPlus2 => {
            let fts = f * t / s;
            if fts % 2 != 0 {
                return Err(hypothesis(format!("f t / s = {fts} is odd")));
            }
            // (t-1)(r+1-ft/s)/2, an integer since r+1 and ft/s are even
            let val = (t as i128 - 1) * (r as i128 + 1 - fts as i128) / 2;
            if val.rem_euclid(2) != 0 {
                return Err(hypothesis(format!("(t-1)(r+1-ft/s)/2 = {val} is odd")));
            }
        }
    }
    let length = t as u128 * f as u128 + if variant == Th12Variant::TfPlus2 { 1 } else { 0 };
    check_length(length + (variant == Th12Variant::TfPlus2) as u128, limits)?;
    let field = square_field(r, e, f, s, limits)?;
    let td = TwoDecomposition::new(&field, e, (r - 1) / s)?;
    debug_assert_eq!(td.bound(), d);
    let mut idx = distinct_coset_indices(&td, t)?;
    if fixup {
        let total: u64 = idx.iter().sum();
        if ((r + 1) / 2 + total) % 2 != 0 {
            *idx.last_mut().expect("t >= 1") += 1;
            check_distinct(&td, &idx)?;
        }
    }
    let sets = CosetUnion::new(&td, &idx)?;
    let big_i: i128 = idx.iter().map(|&i| i as i128).sum();
    let (ri, fi, si, ei, ti) = (r as i128, f as i128, s as i128, e as i128, t as i128);
    let common = (ti - 1) * (ri + 1) / 2 - fi * big_i / si;

    let prov = Provenance::new("th12")
        .with("variant", variant.name())
        .with("r", r)
        .with("e", e)
        .with("f", f)
        .with("s", s)
        .with("t", t)
        .with("indices", idx.clone());
    let fl = &field;
    match variant {
        Th12Variant::Tf => {
            for (pos, &(mu, j)) in sets.labels.iter().enumerate() {
                let predicted = parity(mu as i128 * ((ri - 1 + fi * ti) / si)) * parity(j as i128 * ei) * parity(common);
                if fl.eta(sets.ls[pos]) != predicted {
                    return Err(verification("η(L_S) differs from its closed form"));
                }
            }
            finish_plain(fl, sets.points, prov)
        }
        Th12Variant::TfPlus2 => {
            let mut pts = sets.points;
            pts.push(fl.zero());
            let l = lagrange_l(fl, &pts)?;
            for (pos, &(mu, _)) in sets.labels.iter().enumerate() {
                let predicted = parity(mu as i128 * (fi * ti / si)) * parity(common);
                if fl.eta(fl.neg(l[pos])) != predicted {
                    return Err(verification("η(−L_S̃) differs from its closed form"));
                }
            }
            if fl.eta(fl.neg(*l.last().expect("zero appended"))) != 1 {
                return Err(verification("η(−L_S̃(0)) is not 1"));
            }
            finish_extended(fl, pts, prov)
        }
    }
}

/// Union of cosets β^(i_μ) H with the per-point labels (μ-index value,
/// j) and the Lagrange identity L_S(γ) = f β^(i(f-1)) θ^(-je) L_a(β^(i f)).
struct CosetUnion {
    points: Vec<FieldElement>,
    labels: Vec<(u64, u64)>,
    ls: Vec<FieldElement>,
    la: Vec<FieldElement>,
}

impl CosetUnion {
    fn new(td: &TwoDecomposition, idx: &[u64]) -> Result<Self> {
        let f = &td.field;
        let mut points = Vec::new();
        let mut labels = Vec::new();
        for &i in idx {
            points.extend(td.coset(i));
            labels.extend((0..td.f1).map(|j| (i, j)));
        }
        let beta = f.exp(td.e2 as i64);
        let a: Vec<FieldElement> = idx.iter().map(|&i| f.pow(beta, (i * td.f1) as i64)).collect();
        let la = lagrange_l(f, &a)?;
        let ls = lagrange_l(f, &points)?;
        let ff = f.from_int((td.f1 % f.p()) as i64);
        for (pos, &(i, j)) in labels.iter().enumerate() {
            let mu = idx.iter().position(|&x| x == i).expect("label from idx");
            let expected = f.mul(
                f.mul(ff, f.pow(beta, (i * (td.f1 - 1)) as i64)),
                f.mul(f.exp(-((td.e1 * j) as i64)), la[mu]),
            );
            if ls[pos] != expected {
                return Err(verification("coset union Lagrange identity fails"));
            }
        }
        Ok(CosetUnion {
            points,
            labels,
            ls,
            la,
        })
    }
}

/// Extended code of length t f + 1 over GF(r²) from t cosets, s | r + 1.
pub fn th13_code(r: u64, e: u64, f: u64, s: u64, t: u64, limits: &Limits) -> Result<SelfDualCode> {
    odd_prime_power(r)?;
    if s == 0 || (r + 1) % s != 0 {
        return Err(hypothesis(format!("s = {s} does not divide r + 1 = {}", r + 1)));
    }
    let d = s * (r - 1) / gcd(s * (r - 1), f.max(1));
    if t == 0 || t > d {
        return Err(hypothesis(format!("t = {t} must lie in [1, D] with D = {d}")));
    }
    if (t * f) % 2 != 1 {
        return Err(hypothesis(format!("t f = {} is even", t * f)));
    }
    check_length(t as u128 * f as u128 + 1, limits)?;
    let field = square_field(r, e, f, s, limits)?;
    let td = TwoDecomposition::new(&field, e, (r + 1) / s)?;
    let idx = distinct_coset_indices(&td, t)?;
    let sets = CosetUnion::new(&td, &idx)?;
    let fl = &field;
    for &l in &sets.la {
        if fl.pow(l, r as i64) != l || fl.eta(l) != 1 {
            return Err(verification("L_a(β^(i f)) is not a square of GF(r)"));
        }
    }
    let prov = Provenance::new("th13")
        .with("r", r)
        .with("e", e)
        .with("f", f)
        .with("s", s)
        .with("t", t)
        .with("indices", idx);
    finish_extended(fl, sets.points, prov)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::grs::check_self_dual;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn gf25_bound_three() {
        let f = make_field(5, 2).unwrap();
        let td = TwoDecomposition::new(&f, 6, 2).unwrap();
        assert_eq!((td.f1, td.f2, td.bound()), (4, 12, 3));
        assert_eq!(distinct_coset_indices(&td, 1).unwrap(), vec![0]);
        assert_eq!(distinct_coset_indices(&td, 3).unwrap(), vec![0, 1, 2]);
        assert!(!td.same_coset(0, 1) && !td.same_coset(1, 2) && !td.same_coset(0, 2));
        assert!(td.same_coset(0, 3));
        assert_eq!(
            distinct_coset_indices(&td, 4),
            Err(Error::TooManyCosets { t: 4, bound: 3 })
        );
    }

    #[test]
    fn th12_tf_lengths() {
        for (t, n) in [(1, 4), (2, 8), (3, 12)] {
            let c = th12_code(5, 6, 4, 2, t, Th12Variant::Tf, &lim()).unwrap();
            assert_eq!(c.length(), n);
            assert!(check_self_dual(&c.generator_matrix()).unwrap());
        }
        assert!(matches!(
            th12_code(5, 3, 8, 2, 1, Th12Variant::Tf, &lim()),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn th13_lengths() {
        for (t, n) in [(1, 4), (3, 10)] {
            let c = th13_code(5, 8, 3, 3, t, &lim()).unwrap();
            assert_eq!(c.length(), n);
            assert!(check_self_dual(&c.generator_matrix()).unwrap());
        }
        assert!(matches!(
            th13_code(5, 8, 3, 3, 2, &lim()),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn th12_tf_plus_two_sweep() {
        // every accepted parameter point over small r² must verify
        let mut built = 0;
        for r in [3u64, 5, 7, 9, 11, 13] {
            let q = r * r;
            for f in crate::arith::divisors(q - 1) {
                let e = (q - 1) / f;
                for s in crate::arith::divisors(r - 1) {
                    for t in 1..=8 {
                        match th12_code(r, e, f, s, t, Th12Variant::TfPlus2, &lim()) {
                            Ok(c) => {
                                assert_eq!(c.length() as u64, t * f + 2);
                                built += 1;
                            }
                            Err(Error::HypothesisViolated(_)) | Err(Error::LengthLimitExceeded { .. }) => {}
                            Err(other) => panic!("r={r} e={e} f={f} s={s} t={t}: {other}"),
                        }
                    }
                }
            }
        }
        assert!(built > 10, "{built}");
    }
}
