//! Multiplicative constructions: each base point α ∈ H₁ is replaced by the
//! full set of e₁-th roots of α, a coset of the subgroup of order e₁.

mod two;

use crate::arith;
use crate::constructions::{
    check_dimension, check_one_mod_four, finish_extended, finish_plain, lift_points, th1_params,
    th1_points, th4_points, SubspaceLiftSpec,
};
use crate::error::{hypothesis, verification, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::grs::{lagrange_l, Provenance, SelfDualCode};
use crate::host::{check_length, check_table, extension, odd_prime_power, power, Host};
use crate::limits::Limits;

pub use two::{distinct_coset_indices, th12_code, th13_code, Th12Variant, TwoDecomposition};

/// A factorization Q − 1 = e₁e₂ of the multiplicative group of a subfield
/// GF(Q), with generator g = θ^((q-1)/(Q-1)), H₁ = ⟨g^e₁⟩ and H₂ = ⟨g^e₂⟩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSpec {
    field: FieldSpec,
    host: u64,
    step: u64,
    e1: u64,
    e2: u64,
}

impl CosetSpec {
    pub fn new(field: &FieldSpec, host: u64, e1: u64) -> Result<Self> {
        let step = field.subfield_step(host)?;
        if e1 == 0 || (host - 1) % e1 != 0 {
            return Err(hypothesis(format!("e1 = {e1} does not divide {}", host - 1)));
        }
        Ok(CosetSpec {
            field: field.clone(),
            host,
            step,
            e1,
            e2: (host - 1) / e1,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn host_order(&self) -> u64 {
        self.host
    }

    pub fn e1(&self) -> u64 {
        self.e1
    }

    pub fn e2(&self) -> u64 {
        self.e2
    }

    /// Alias of e₂: the order of H₁.
    pub fn f1(&self) -> u64 {
        self.e2
    }

    fn host(&self) -> Host<'_> {
        Host {
            field: &self.field,
            order: self.host,
            step: self.step,
        }
    }

    /// g^k.
    fn g(&self, k: u64) -> FieldElement {
        self.field.exp(((k as u128 * self.step as u128) % (self.field.q() - 1) as u128) as i64)
    }

    /// v(α) = min{x : α = g^(x e₁)} for α ∈ H₁.
    pub fn v(&self, alpha: FieldElement) -> Result<u64> {
        let k = self.field.log(self.field.check(alpha)?).ok_or(Error::PointsOutsideSubgroup)?;
        if k % (self.step * self.e1) != 0 {
            return Err(Error::PointsOutsideSubgroup);
        }
        Ok(k / (self.step * self.e1))
    }

    /// ∪ g^v(α_i) H₂ in base order, u = 0..e₁ inner, and the check that
    /// L_S(g^(v+e₂u)) = e₁ g^(v(e₁-1)) g^(-e₂u) L_a(α).
    fn lift(&self, a: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let f = &self.field;
        let vs: Vec<u64> = a.iter().map(|&x| self.v(x)).collect::<Result<_>>()?;
        let mut s = Vec::with_capacity(a.len() * self.e1 as usize);
        for &v in &vs {
            s.extend((0..self.e1).map(|u| self.g(v + self.e2 * u)));
        }
        let la = lagrange_l(f, a)?;
        let ls = lagrange_l(f, &s)?;
        let e1 = f.from_int((self.e1 % f.p()) as i64);
        let qm1 = (f.q() - 1) as i64;
        for (k, (&v, &lak)) in vs.iter().zip(&la).enumerate() {
            let head = f.mul(e1, f.mul(self.g(v * (self.e1 - 1)), lak));
            for u in 0..self.e1 {
                let back = f.exp(-((self.step as i128 * (self.e2 * u) as i128) % qm1 as i128) as i64);
                if ls[k * self.e1 as usize + u as usize] != f.mul(head, back) {
                    return Err(verification("coset lift Lagrange identity fails"));
                }
            }
        }
        Ok(s)
    }

    fn check_e1_odd(&self) -> Result<()> {
        if self.e1 % 2 == 0 {
            return Err(Error::E1NotOdd(self.e1));
        }
        Ok(())
    }
}

/// Lift of an even self-dual base set: the points of a must lie in H₁ and
/// have constant η(L_a); requires e₁ odd. e₁ = 1 returns a unchanged.
pub(crate) fn lift_plain(cs: &CosetSpec, a: &[FieldElement]) -> Result<Vec<FieldElement>> {
    if a.len() % 2 != 0 {
        return Err(Error::OddLength(a.len()));
    }
    cs.check_e1_odd()?;
    let host = cs.host();
    let la = lagrange_l(&cs.field, a)?;
    if la.iter().any(|&l| host.eta(l) != host.eta(la[0])) {
        return Err(Error::BaseNotSelfDual);
    }
    if cs.e1 == 1 {
        return Ok(a.to_vec());
    }
    let s = cs.lift(a)?;
    let ls = lagrange_l(&cs.field, &s)?;
    if ls.iter().any(|&l| host.eta(l) != host.eta(ls[0])) {
        return Err(verification("η(L_S) is not constant after the coset lift"));
    }
    Ok(s)
}

/// Lift of an odd base set satisfying the extended criterion; requires e₁
/// odd and η(e₁) = 1.
pub(crate) fn lift_extended(cs: &CosetSpec, a: &[FieldElement]) -> Result<Vec<FieldElement>> {
    if a.len() % 2 == 0 {
        return Err(Error::EvenLength(a.len()));
    }
    cs.check_e1_odd()?;
    let f = &cs.field;
    let host = cs.host();
    if host.eta_int((cs.e1 % f.p()) as i64) != 1 {
        if cs.host % 4 == 1 {
            return Err(verification(format!(
                "eta({}) = -1 although {} = 1 mod 4",
                cs.e1, cs.host
            )));
        }
        return Err(Error::CharacterCondition(format!(
            "eta({}) = -1 in GF({})",
            cs.e1, cs.host
        )));
    }
    let la = lagrange_l(f, a)?;
    if la.iter().any(|&l| host.eta(f.neg(l)) != 1) {
        return Err(Error::BaseNotSelfDual);
    }
    if cs.e1 == 1 {
        return Ok(a.to_vec());
    }
    let s = cs.lift(a)?;
    let ls = lagrange_l(f, &s)?;
    if ls.iter().any(|&l| host.eta(f.neg(l)) != 1) {
        return Err(verification("−L_S has a non-square entry after the coset lift"));
    }
    Ok(s)
}

/// Self-dual code of length |a|·e₁ over the host field of `cs` (which
/// must be the whole field).
pub fn lemma9_lift(cs: &CosetSpec, a: &[FieldElement]) -> Result<SelfDualCode> {
    let s = lift_plain(cs, a)?;
    let prov = Provenance::new("lemma9").with("q", cs.host).with("e1", cs.e1);
    finish_plain(whole_field(cs)?, s, prov)
}

/// Extended self-dual code of length |a|·e₁ + 1.
pub fn lemma10_lift(cs: &CosetSpec, a: &[FieldElement]) -> Result<SelfDualCode> {
    let s = lift_extended(cs, a)?;
    let prov = Provenance::new("lemma10").with("q", cs.host).with("e1", cs.e1);
    finish_extended(whole_field(cs)?, s, prov)
}

fn whole_field(cs: &CosetSpec) -> Result<&FieldSpec> {
    if cs.host != cs.field.q() {
        return Err(hypothesis("the coset lift must end in the whole field"));
    }
    Ok(&cs.field)
}

/// Which of the four coset-lift families a parameter point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    /// t even, plain (Theorem 8 base)
    EvenPlain,
    /// t odd, plain
    OddPlain,
    /// t odd, extended
    OddExtended,
    /// t even, extended
    EvenExtended,
}

impl Family {
    fn of(t: u64, extended: bool) -> Self {
        match (t % 2 == 0, extended) {
            (true, false) => Family::EvenPlain,
            (false, false) => Family::OddPlain,
            (false, true) => Family::OddExtended,
            (true, true) => Family::EvenExtended,
        }
    }

    fn theorem(self) -> &'static str {
        match self {
            Family::EvenPlain => "th8",
            Family::OddPlain => "th9",
            Family::OddExtended => "th10",
            Family::EvenExtended => "th11",
        }
    }

    fn corollary(self) -> &'static str {
        match self {
            Family::EvenPlain => "cor1",
            Family::OddPlain => "cor2",
            Family::OddExtended => "cor3",
            Family::EvenExtended => "cor4",
        }
    }

    fn extended(self) -> bool {
        matches!(self, Family::OddExtended | Family::EvenExtended)
    }

    /// Number of base points before the subspace lift.
    fn base_size(self, t: u64) -> u64 {
        match self {
            Family::EvenPlain | Family::OddExtended => t,
            Family::OddPlain | Family::EvenExtended => t + 1,
        }
    }
}

/// Checks the hypotheses of a family, characters taken in GF(q).
fn family_params(fam: Family, r: u64, s: u64, e: u64, t: u64, q: u64) -> Result<()> {
    check_dimension(e, s)?;
    if t == 0 || (r - 1) % t != 0 {
        return Err(hypothesis(format!("t = {t} does not divide r - 1 = {}", r - 1)));
    }
    match fam {
        Family::EvenPlain => {
            check_one_mod_four(q)?;
            if t <= 1 || t >= r - 1 {
                return Err(hypothesis(format!("t = {t} must satisfy 1 < t < r - 1")));
            }
        }
        Family::EvenExtended => {
            if t >= r - 1 {
                return Err(hypothesis(format!("t = {t} must be below r - 1")));
            }
        }
        Family::OddPlain | Family::OddExtended => {}
    }
    Ok(())
}

/// Character hypotheses, in GF(q).
fn family_characters(fam: Family, field: &FieldSpec, r: u64, e: u64, t: u64) -> Result<()> {
    let host = Host::whole(field);
    let ti = t as i64;
    let q = field.q();
    match fam {
        Family::EvenPlain => Ok(()),
        Family::OddPlain => {
            if host.eta_int(-ti) != 1 {
                return Err(hypothesis(format!("eta(-{t}) = -1 in GF({q})")));
            }
            Ok(())
        }
        Family::OddExtended => {
            let sign: i64 = if ((r.pow(e as u32) + 1) / 2) % 2 == 0 { 1 } else { -1 };
            if host.eta_int(sign * ti) != 1 {
                return Err(hypothesis(format!("eta({}) = -1 in GF({q})", sign * ti)));
            }
            Ok(())
        }
        Family::EvenExtended => {
            let first = host.eta_int(ti) == 1 && host.eta_int(-1) == 1;
            let second = host.eta_int(-ti) == 1 && e % 2 == 0;
            if !first && !second {
                return Err(hypothesis(format!(
                    "neither eta({t}) = eta(-1) = 1 nor (eta(-{t}) = 1 and e even) holds in GF({q})"
                )));
            }
            Ok(())
        }
    }
}

/// Base set of the family inside the subfield GF(r^s).
fn family_base(fam: Family, field: &FieldSpec, r: u64, s: u64, e: u64, t: u64) -> Result<Vec<FieldElement>> {
    let q0 = power(r, s)?;
    let host = Host::sub(field, q0)?;
    let f = field;
    match fam {
        Family::EvenPlain => {
            th1_params(q0, r, s, e, t / 2)?;
            th1_points(host, r, e, t / 2)
        }
        Family::EvenExtended => th4_points(host, r, e, t),
        Family::OddPlain => {
            let beta = host.root_of_unity(t);
            let base: Vec<FieldElement> = std::iter::once(f.zero())
                .chain((1..=t as i64).map(|i| f.pow(beta, i)))
                .collect();
            let l = lagrange_l(f, &base)?;
            if l[0] != f.from_int(-1) || l[1..].iter().any(|&x| x != f.from_int(t as i64)) {
                return Err(verification("L_b(0) = -1 and L_b(β^i) = t do not hold"));
            }
            let spec = SubspaceLiftSpec::standard(f, q0, r, e, base)?;
            let (a, la) = lift_points(f, &spec)?;
            if la.iter().any(|&x| host.eta(x) != host.eta(la[0])) {
                return Err(verification("η(L_a) is not constant on the base"));
            }
            Ok(a)
        }
        Family::OddExtended => {
            let beta = host.root_of_unity(t);
            let base: Vec<FieldElement> = (1..=t as i64).map(|i| f.pow(beta, i)).collect();
            let spec = SubspaceLiftSpec::standard(f, q0, r, e, base)?;
            let (a, la) = lift_points(f, &spec)?;
            if la.iter().any(|&x| host.eta(f.neg(x)) != 1) {
                return Err(verification("−L_a has a non-square entry on the base"));
            }
            Ok(a)
        }
    }
}

/// Translates the base by the smallest-encoding c ∈ GF(Q) that moves every
/// point off zero. Translation leaves all L values unchanged.
fn shift_into_units(field: &FieldSpec, q0: u64, a: Vec<FieldElement>) -> Result<Vec<FieldElement>> {
    let mut hit = vec![false; field.q() as usize];
    for &x in &a {
        hit[field.neg(x).code() as usize] = true;
    }
    let c = field
        .subfield_elements(q0)?
        .into_iter()
        .find(|c| !hit[c.code() as usize])
        .ok_or_else(|| hypothesis(format!("base set fills GF({q0}); no translate avoids zero")))?;
    Ok(a.into_iter().map(|x| field.add(x, c)).collect())
}

fn geometric(base: u64, m: u64) -> Result<u64> {
    Ok((power(base, m)? - 1) / (base - 1))
}

/// Shared pipeline of the single-stage theorems and the corollaries.
fn coset_family(
    fam: Family,
    id: &str,
    r: u64,
    s: u64,
    ms: &[u64],
    e: u64,
    t: u64,
    limits: &Limits,
) -> Result<SelfDualCode> {
    odd_prime_power(r)?;
    if s == 0 {
        return Err(hypothesis("s must be at least 1"));
    }
    if ms.is_empty() {
        return Err(hypothesis("at least one m is required"));
    }
    if let Some(m) = ms.iter().find(|&&m| m % 2 == 0) {
        return Err(hypothesis(format!("m = {m} is not odd")));
    }
    let total: u64 = ms.iter().try_fold(s, |acc, &m| acc.checked_mul(m)).ok_or(
        Error::TableLimitExceeded {
            order: u128::MAX,
            limit: limits.table_limit,
        },
    )?;
    check_table(r, total, limits)?;
    let q = power(r, total)?;
    family_params(fam, r, s, e, t, q)?;

    let mut length = fam.base_size(t) as u128 * power(r, e)? as u128;
    let mut host = power(r, s)?;
    let mut stages = Vec::with_capacity(ms.len());
    for &m in ms {
        let e1 = geometric(host, m)?;
        length *= e1 as u128;
        host = power(host, m)?;
        stages.push((host, e1));
    }
    check_length(length + fam.extended() as u128, limits)?;

    let field = extension(r, total, limits)?;
    family_characters(fam, &field, r, e, t)?;
    let mut a = family_base(fam, &field, r, s, e, t)?;
    if stages.iter().any(|&(_, e1)| e1 > 1) {
        a = shift_into_units(&field, power(r, s)?, a)?;
    }
    let staged = ms.len() > 1;
    for (j, &(h, e1)) in stages.iter().enumerate() {
        let cs = CosetSpec::new(&field, h, e1)?;
        let step = if fam.extended() {
            lift_extended(&cs, &a)
        } else {
            lift_plain(&cs, &a)
        };
        a = step.map_err(|err| match err {
            Error::HypothesisViolated(msg) if staged => {
                hypothesis(format!("stage {}: {msg}", j + 1))
            }
            Error::CharacterCondition(msg) if staged => {
                hypothesis(format!("stage {}: character condition fails: {msg}", j + 1))
            }
            other => other,
        })?;
    }

    let mut prov = Provenance::new(id).with("r", r).with("s", s);
    prov = if staged {
        prov.with("ms", ms.to_vec())
    } else {
        prov.with("m", ms[0])
    };
    prov = prov.with("e", e).with("t", t);
    if fam.extended() {
        finish_extended(&field, a, prov)
    } else {
        finish_plain(&field, a, prov)
    }
}

fn parity_guard(id: &str, t: u64, even: bool) -> Result<()> {
    if (t % 2 == 0) != even {
        let kind = if even { "even" } else { "odd" };
        return Err(hypothesis(format!("{id} requires t = {t} to be {kind}")));
    }
    Ok(())
}

/// Length t·r^e·(1 + r^s + … + r^(s(m-1))), t even.
pub fn th8_code(r: u64, s: u64, m: u64, e: u64, t: u64, limits: &Limits) -> Result<SelfDualCode> {
    parity_guard("th8", t, true)?;
    coset_family(Family::EvenPlain, "th8", r, s, &[m], e, t, limits)
}

/// Length (t+1)·r^e·(1 + r^s + … + r^(s(m-1))), t odd, η(−t) = 1.
pub fn th9_code(r: u64, s: u64, m: u64, e: u64, t: u64, limits: &Limits) -> Result<SelfDualCode> {
    parity_guard("th9", t, false)?;
    coset_family(Family::OddPlain, "th9", r, s, &[m], e, t, limits)
}

/// Extended, length t·r^e·(1 + … + r^(s(m-1))) + 1, t odd.
pub fn th10_code(r: u64, s: u64, m: u64, e: u64, t: u64, limits: &Limits) -> Result<SelfDualCode> {
    parity_guard("th10", t, false)?;
    coset_family(Family::OddExtended, "th10", r, s, &[m], e, t, limits)
}

/// Extended, length (t+1)·r^e·(1 + … + r^(s(m-1))) + 1, t even.
pub fn th11_code(r: u64, s: u64, m: u64, e: u64, t: u64, limits: &Limits) -> Result<SelfDualCode> {
    parity_guard("th11", t, true)?;
    coset_family(Family::EvenExtended, "th11", r, s, &[m], e, t, limits)
}

/// Non-extended coset lift; the parity of t selects the base.
pub fn th8_th9_code(r: u64, s: u64, m: u64, e: u64, t: u64, limits: &Limits) -> Result<SelfDualCode> {
    let fam = Family::of(t, false);
    coset_family(fam, fam.theorem(), r, s, &[m], e, t, limits)
}

/// Extended coset lift; the parity of t selects the base.
pub fn th10_th11_code(r: u64, s: u64, m: u64, e: u64, t: u64, limits: &Limits) -> Result<SelfDualCode> {
    let fam = Family::of(t, true);
    coset_family(fam, fam.theorem(), r, s, &[m], e, t, limits)
}

/// Repeated coset lifts through GF(r^s) ⊂ GF(r^(s m₁)) ⊂ … with all m_i odd.
pub fn iterated_lift(
    r: u64,
    s: u64,
    ms: &[u64],
    e: u64,
    t: u64,
    extended: bool,
    limits: &Limits,
) -> Result<SelfDualCode> {
    let fam = Family::of(t, extended);
    coset_family(fam, fam.corollary(), r, s, ms, e, t, limits)
}

/// Odd divisors of q − 1, used by the quadratic-reciprocity check.
pub fn odd_divisors(n: u64) -> Vec<u64> {
    arith::divisors(n).into_iter().filter(|d| d % 2 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{th1_code, th4_code};
    use crate::field::make_field;
    use crate::grs::check_self_dual;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn coset_spec_valuation() {
        let f = make_field(5, 3).unwrap();
        let cs = CosetSpec::new(&f, 125, 31).unwrap();
        assert_eq!((cs.e1(), cs.e2(), cs.f1()), (31, 4, 4));
        let x = f.exp(31 * 3);
        assert_eq!(cs.v(x).unwrap(), 3);
        assert_eq!(cs.v(f.theta()), Err(Error::PointsOutsideSubgroup));
        assert_eq!(cs.v(f.zero()), Err(Error::PointsOutsideSubgroup));
        assert!(CosetSpec::new(&f, 125, 3).is_err());
    }

    #[test]
    fn lemma9_gf125() {
        let f = make_field(5, 3).unwrap();
        let cs = CosetSpec::new(&f, 125, 31).unwrap();
        // GF(5)* = H1; the base {1, 4} = {1, -1} has η(L) = η(2), η(-2): equal
        let a = vec![f.one(), f.from_int(-1)];
        let c = lemma9_lift(&cs, &a).unwrap();
        assert_eq!(c.length(), 62);
        assert!(check_self_dual(&c.generator_matrix()).unwrap());
        let even = CosetSpec::new(&f, 125, 2).unwrap();
        assert_eq!(lemma9_lift(&even, &a).unwrap_err(), Error::E1NotOdd(2));
    }

    #[test]
    fn lemma10_gf125() {
        let f = make_field(5, 3).unwrap();
        let cs = CosetSpec::new(&f, 125, 31).unwrap();
        // single point: -L = -1, a square since 125 = 1 mod 4
        let c = lemma10_lift(&cs, &[f.one()]).unwrap();
        assert_eq!(c.length(), 32);
        assert!(check_self_dual(&c.generator_matrix()).unwrap());
        let id = CosetSpec::new(&f, 125, 1).unwrap();
        let c = lemma10_lift(&id, &[f.zero()]).unwrap();
        assert_eq!(c.length(), 2);
    }

    #[test]
    fn th8_gf125() {
        let c = th8_code(5, 1, 3, 0, 2, &lim()).unwrap();
        assert_eq!((c.length(), c.field().q()), (62, 125));
        assert!(check_self_dual(&c.generator_matrix()).unwrap());
        assert!(matches!(th8_code(5, 1, 3, 0, 4, &lim()), Err(Error::HypothesisViolated(_))));
        assert!(matches!(th8_code(5, 1, 2, 0, 2, &lim()), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn th8_m1_matches_th1_points() {
        let a = th8_code(13, 1, 1, 0, 6, &lim()).unwrap();
        let b = th1_code(13, 1, 0, 3, &lim()).unwrap();
        assert_eq!(a.eval_set(), b.eval_set());
    }

    #[test]
    fn th10_gf2197() {
        let c = th10_code(13, 1, 3, 0, 3, &lim()).unwrap();
        assert_eq!((c.length(), c.field().q()), (550, 2197));
    }

    #[test]
    fn th11_m1_is_th4() {
        let a = th11_code(13, 1, 1, 0, 4, &lim()).unwrap();
        let b = th4_code(13, 1, 0, 4, &lim()).unwrap();
        assert_eq!(a.eval_set(), b.eval_set());
        assert_eq!(a.provenance().theorem, "th11");
    }

    #[test]
    fn th9_small() {
        // r = 5, t = 1: η(-1) = 1 in GF(125)
        let c = th9_code(5, 1, 3, 0, 1, &lim()).unwrap();
        assert_eq!(c.length(), 62);
    }

    #[test]
    fn iterated_stage_one_matches_theorem() {
        let a = iterated_lift(5, 1, &[3], 0, 2, false, &lim()).unwrap();
        let b = th8_code(5, 1, 3, 0, 2, &lim()).unwrap();
        assert_eq!(a.eval_set(), b.eval_set());
        let err = iterated_lift(5, 1, &[3, 3], 0, 2, false, &lim()).unwrap_err();
        assert!(matches!(err, Error::LengthLimitExceeded { .. }), "{err:?}");
        let small = Limits {
            table_limit: 1_000_000,
            ..lim()
        };
        let err = iterated_lift(5, 1, &[3, 3], 0, 2, false, &small).unwrap_err();
        assert!(matches!(err, Error::TableLimitExceeded { .. }), "{err:?}");
    }

    #[test]
    fn iterated_two_stages() {
        let c = iterated_lift(5, 1, &[1, 3], 0, 1, true, &lim()).unwrap();
        assert_eq!(c.length(), 32);
        assert!(check_self_dual(&c.generator_matrix()).unwrap());
        assert!(matches!(
            iterated_lift(3, 1, &[1, 3], 0, 1, true, &lim()),
            Err(Error::HypothesisViolated(_))
        ));
        assert_eq!(c.provenance().theorem, "cor3");
    }
}
