//! Additive constructions: subspace lifts of small base sets.
//!
//! A base set b ⊂ GF(r) is spread over GF(q) by replacing each β by the
//! coset βζ + V of a GF(r)-subspace V. The Lagrange products of the lift
//! differ from those of b by a common factor, so the square class pattern
//! that makes b self-dual carries over.

use crate::arith;
use crate::error::{hypothesis, verification, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::grs::{lagrange_l, lemma1_multipliers, lemma2_multipliers, EvalSet, Provenance, SelfDualCode};
use crate::host::{check_length, check_table, extension, odd_prime_power, power, Host};
use crate::limits::Limits;

/// Base points, a GF(r)-basis of the subspace V and the shift ζ ∉ V.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceLiftSpec {
    pub r: u64,
    pub base: Vec<FieldElement>,
    pub basis: Vec<FieldElement>,
    pub shift: FieldElement,
}

impl SubspaceLiftSpec {
    /// V spanned by 1, γ, …, γ^(e-1) for the generator γ of the subfield
    /// GF(host_order), and ζ the smallest-encoding element of that
    /// subfield outside V.
    pub fn standard(
        field: &FieldSpec,
        host_order: u64,
        r: u64,
        e: u64,
        base: Vec<FieldElement>,
    ) -> Result<Self> {
        let host = Host::sub(field, host_order)?;
        field.subfield_step(r)?;
        let k = arith::log_exact(host_order, r).ok_or(Error::NotASubfield { r, q: host_order })?;
        if e >= k as u64 {
            return Err(hypothesis(format!(
                "subspace dimension e = {e} must be below {k}"
            )));
        }
        let g = host.generator();
        let basis: Vec<FieldElement> = (0..e as i64).map(|i| field.pow(g, i)).collect();
        let span = field.span_subspace(r, &basis)?;
        let mut in_v = vec![false; field.q() as usize];
        for x in &span {
            in_v[x.code() as usize] = true;
        }
        let shift = field
            .subfield_elements(host_order)?
            .into_iter()
            .find(|x| !in_v[x.code() as usize])
            .expect("a proper subspace misses some element");
        Ok(SubspaceLiftSpec {
            r,
            base,
            basis,
            shift,
        })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Lifted points together with their Lagrange products.
pub(crate) fn lift_points(field: &FieldSpec, spec: &SubspaceLiftSpec) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
    for &b in &spec.base {
        if !field.in_subfield(field.check(b)?, spec.r)? {
            return Err(Error::BasePointsNotInSubfield(spec.r));
        }
    }
    let lb = lagrange_l(field, &spec.base)?;
    let span = field.span_subspace(spec.r, &spec.basis)?;
    let zeta = field.check(spec.shift)?;
    if span.contains(&zeta) {
        return Err(Error::ShiftInSubspace);
    }
    let mut a = Vec::with_capacity(spec.base.len() * span.len());
    for &b in &spec.base {
        let bz = field.mul(b, zeta);
        a.extend(span.iter().map(|&v| field.add(bz, v)));
    }
    let la = lagrange_l(field, &a)?;

    // L_a(β_k ζ + v) = P_V · Z^(t-1) · L_b(β_k)
    let t = spec.base.len() as i64;
    let pv = field.product(span.iter().copied().filter(|v| !v.is_zero()));
    let z = field.product(span.iter().map(|&v| field.add(zeta, v)));
    let factor = field.mul(pv, field.pow(z, t - 1));
    for (chunk, &lbk) in la.chunks(span.len()).zip(&lb) {
        let expected = field.mul(factor, lbk);
        if chunk.iter().any(|&x| x != expected) {
            return Err(verification("subspace lift Lagrange identity fails"));
        }
    }
    let sign = field.pow(field.from_int(-1), (span.len() as i64 - 1) / 2);
    if field.sqrt(field.div(pv, sign)).is_none() {
        return Err(verification("subspace product is not ±1 times a square"));
    }
    Ok((a, la))
}

/// W = ∪ (β_i ζ + V), row-major: the base index is the outer loop.
pub fn subspace_lift(field: &FieldSpec, spec: &SubspaceLiftSpec) -> Result<EvalSet> {
    let (a, _) = lift_points(field, spec)?;
    EvalSet::new(field, a, false)
}

/// Lift of an odd base set whose extended code is self-dual; the lifted
/// set again satisfies the extended criterion.
pub fn lemma8_extended_lift(field: &FieldSpec, spec: &SubspaceLiftSpec) -> Result<EvalSet> {
    extended_lift(Host::whole(field), spec)
}

pub(crate) fn extended_lift(host: Host<'_>, spec: &SubspaceLiftSpec) -> Result<EvalSet> {
    let field = host.field;
    let t = spec.base.len();
    if t % 2 == 0 {
        return Err(Error::EvenLength(t));
    }
    let lb = lagrange_l(field, &spec.base)?;
    if lb.iter().any(|&l| host.eta(field.neg(l)) != 1) {
        return Err(Error::BaseNotSelfDual);
    }
    if host.order % 4 != 1 && spec.dimension() % 2 != 0 {
        return Err(Error::ParityCondition);
    }
    let (a, la) = lift_points(field, spec)?;
    if la.iter().any(|&l| host.eta(field.neg(l)) != 1) {
        return Err(verification("extended lift leaves a non-square −L_a"));
    }
    EvalSet::new(field, a, true)
}

pub(crate) fn finish_plain(field: &FieldSpec, a: Vec<FieldElement>, prov: Provenance) -> Result<SelfDualCode> {
    let (_, v) = lemma1_multipliers(field, &a)?.ok_or_else(|| {
        verification(format!("{}: η(L_a) is not constant", prov.theorem))
    })?;
    SelfDualCode::new(EvalSet::new(field, a, false)?.with_multipliers(v)?, prov)
}

pub(crate) fn finish_extended(
    field: &FieldSpec,
    a: Vec<FieldElement>,
    prov: Provenance,
) -> Result<SelfDualCode> {
    let v = lemma2_multipliers(field, &a)?.ok_or_else(|| {
        verification(format!("{}: −L_a has a non-square entry", prov.theorem))
    })?;
    SelfDualCode::new(EvalSet::new(field, a, true)?.with_multipliers(v)?, prov)
}

pub(crate) fn provenance(id: &str, keys: [(&str, u64); 4]) -> Provenance {
    keys.iter()
        .fold(Provenance::new(id), |p, &(k, v)| p.with(k, v))
}

pub(crate) fn check_dimension(e: u64, m: u64) -> Result<()> {
    if m == 0 {
        return Err(hypothesis("m must be at least 1"));
    }
    if e >= m {
        return Err(hypothesis(format!("e = {e} must be at most m - 1 = {}", m - 1)));
    }
    Ok(())
}

pub(crate) fn check_one_mod_four(q: u64) -> Result<()> {
    if q % 4 != 1 {
        return Err(hypothesis(format!("q = {q} is not 1 mod 4")));
    }
    Ok(())
}

fn check_prime(p: u64) -> Result<()> {
    if p % 2 == 0 || !arith::is_prime(p) {
        return Err(Error::CompositeCharacteristic(p));
    }
    Ok(())
}

pub(crate) fn th1_params(host_order: u64, r: u64, m: u64, e: u64, t: u64) -> Result<()> {
    check_one_mod_four(host_order)?;
    check_dimension(e, m)?;
    let half = (r - 1) / 2;
    if t == 0 || half % t != 0 {
        return Err(hypothesis(format!("t = {t} does not divide (r-1)/2 = {half}")));
    }
    if t == half {
        return Err(hypothesis(format!("t = (r-1)/2 = {half} is excluded")));
    }
    Ok(())
}

/// Lifted point set of length 2t·r^e inside the subfield GF(host).
pub(crate) fn th1_points(host: Host<'_>, r: u64, e: u64, t: u64) -> Result<Vec<FieldElement>> {
    let f = host.field;
    let base: Vec<FieldElement> = if t % 2 == 1 {
        let beta = host.root_of_unity(2 * t);
        if host.eta(beta) != 1 {
            return Err(verification("primitive 2t-th root of unity is a non-square"));
        }
        (1..=2 * t as i64).map(|i| f.pow(beta, i)).collect()
    } else {
        let beta = host.root_of_unity(t);
        let sub_r = Host::sub(f, r)?;
        let zeta = f
            .subfield_elements(r)?
            .into_iter()
            .skip(1)
            .find(|&x| sub_r.eta(x) == 1 && f.pow(x, t as i64) != f.one())
            .ok_or_else(|| hypothesis("no nonzero square of GF(r) outside the t-th roots of unity"))?;
        let powers: Vec<FieldElement> = (1..=t as i64).map(|i| f.pow(beta, i)).collect();
        let shifted: Vec<FieldElement> = powers.iter().map(|&x| f.mul(zeta, x)).collect();
        powers.into_iter().chain(shifted).collect()
    };
    let spec = SubspaceLiftSpec::standard(f, host.order, r, e, base)?;
    Ok(lift_points(f, &spec)?.0)
}

/// Length 2t·r^e over GF(r^m), for t | (r-1)/2, t ≠ (r-1)/2, q ≡ 1 (mod 4).
pub fn th1_code(r: u64, m: u64, e: u64, t: u64, limits: &Limits) -> Result<SelfDualCode> {
    odd_prime_power(r)?;
    let prov = provenance("th1", [("r", r), ("m", m), ("e", e), ("t", t)]);
    let q = power(r, m)?;
    th1_params(q, r, m, e, t)?;
    check_table(r, m, limits)?;
    check_length(2 * t as u128 * power(r, e)? as u128, limits)?;
    let field = extension(r, m, limits)?;
    let a = th1_points(Host::whole(&field), r, e, t)?;
    finish_plain(&field, a, prov)
}

/// η(i(t+1-i)) = 1 for 1 ≤ i ≤ bound, in the host field.
fn check_products(host: Host<'_>, t: u64, bound: u64) -> Result<()> {
    let p = host.field.p();
    for i in 1..=bound {
        let x = (i * (t + 1 - i)) % p;
        if host.eta_int(x as i64) != 1 {
            return Err(hypothesis(format!("eta({x}) = -1 in GF({})", host.order)));
        }
    }
    Ok(())
}

fn consecutive(field: &FieldSpec, t: u64) -> Vec<FieldElement> {
    (0..=t as i64).map(|i| field.from_int(i)).collect()
}

fn prime_field_params(p: u64, m: u64, e: u64, t: u64, odd: bool) -> Result<u64> {
    check_prime(p)?;
    let q = power(p, m)?;
    check_one_mod_four(q)?;
    check_dimension(e, m)?;
    if (t % 2 == 1) != odd {
        let kind = if odd { "odd" } else { "even" };
        return Err(hypothesis(format!("t = {t} must be {kind}")));
    }
    if t < 2 || t > p - 1 {
        return Err(hypothesis(format!("t = {t} must lie in [2, p-1]")));
    }
    Ok(q)
}

/// Length (t+1)p^e from the points 0, 1, …, t of the prime field.
pub fn th2_code(p: u64, m: u64, e: u64, t: u64, limits: &Limits) -> Result<SelfDualCode> {
    let prov = provenance("th2", [("p", p), ("m", m), ("e", e), ("t", t)]);
    prime_field_params(p, m, e, t, true)?;
    check_table(p, m, limits)?;
    check_length((t + 1) as u128 * power(p, e)? as u128, limits)?;
    let field = extension(p, m, limits)?;
    let host = Host::whole(&field);
    check_products(host, t, (t - 1) / 2)?;
    let spec = SubspaceLiftSpec::standard(&field, field.q(), p, e, consecutive(&field, t))?;
    let a = subspace_lift(&field, &spec)?.points().to_vec();
    finish_plain(&field, a, prov)
}

/// Extended code of length (t+1)p^e + 1 from 0, 1, …, t with t even.
pub fn th3_code(p: u64, m: u64, e: u64, t: u64, limits: &Limits) -> Result<SelfDualCode> {
    let prov = provenance("th3", [("p", p), ("m", m), ("e", e), ("t", t)]);
    prime_field_params(p, m, e, t, false)?;
    check_table(p, m, limits)?;
    check_length((t + 1) as u128 * power(p, e)? as u128 + 1, limits)?;
    let field = extension(p, m, limits)?;
    let host = Host::whole(&field);
    check_products(host, t, t / 2)?;
    let spec = SubspaceLiftSpec::standard(&field, field.q(), p, e, consecutive(&field, t))?;
    let a = extended_lift(host, &spec)?.points().to_vec();
    finish_extended(&field, a, prov)
}

pub(crate) fn th4_params(r: u64, m: u64, e: u64, t: u64) -> Result<()> {
    check_dimension(e, m)?;
    if t < 2 || t % 2 != 0 || (r - 1) % t != 0 {
        return Err(hypothesis(format!(
            "t = {t} must be even and divide r - 1 = {}",
            r - 1
        )));
    }
    Ok(())
}

/// Extended lift of (0, β, …, β^t), β a primitive t-th root of unity.
pub(crate) fn th4_points(host: Host<'_>, r: u64, e: u64, t: u64) -> Result<Vec<FieldElement>> {
    let f = host.field;
    let ti = t as i64;
    let first = host.eta_int(ti) == 1 && host.eta_int(-1) == 1;
    let second = host.eta_int(-ti) == 1 && e % 2 == 0;
    if !first && !second {
        return Err(hypothesis(format!(
            "neither eta({t}) = eta(-1) = 1 nor (eta(-{t}) = 1 and e even) holds in GF({})",
            host.order
        )));
    }
    let beta = host.root_of_unity(t);
    let base: Vec<FieldElement> = std::iter::once(f.zero())
        .chain((1..=ti).map(|i| f.pow(beta, i)))
        .collect();
    let l = lagrange_l(f, &base)?;
    if l[0] != f.from_int(-1) || l[1..].iter().any(|&x| x != f.from_int(ti)) {
        return Err(verification("L_b(0) = -1 and L_b(β^i) = t do not hold"));
    }
    let spec = SubspaceLiftSpec::standard(f, host.order, r, e, base)?;
    Ok(extended_lift(host, &spec)?.points().to_vec())
}

/// Extended code of length (t+1)r^e + 1 for even t | r - 1.
pub fn th4_code(r: u64, m: u64, e: u64, t: u64, limits: &Limits) -> Result<SelfDualCode> {
    odd_prime_power(r)?;
    let prov = provenance("th4", [("r", r), ("m", m), ("e", e), ("t", t)]);
    th4_params(r, m, e, t)?;
    check_table(r, m, limits)?;
    check_length((t + 1) as u128 * power(r, e)? as u128 + 1, limits)?;
    let field = extension(r, m, limits)?;
    let a = th4_points(Host::whole(&field), r, e, t)?;
    finish_extended(&field, a, prov)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::grs::check_self_dual;

    fn lim() -> Limits {
        Limits::default()
    }

    fn ints(f: &FieldSpec, xs: &[FieldElement]) -> Vec<u64> {
        xs.iter().map(|&x| f.to_int(x).unwrap()).collect()
    }

    #[test]
    fn degenerate_lift_is_identity() {
        let f = make_field(13, 1).unwrap();
        let base: Vec<FieldElement> = (0..4).map(|i| f.from_int(i)).collect();
        let spec = SubspaceLiftSpec::standard(&f, 13, 13, 0, base.clone()).unwrap();
        assert_eq!(spec.shift, f.one());
        assert_eq!(subspace_lift(&f, &spec).unwrap().points(), &base[..]);
    }

    #[test]
    fn lift_rejects_bad_specs() {
        let f = make_field(13, 2).unwrap();
        let base: Vec<FieldElement> = (0..4).map(|i| f.from_int(i)).collect();
        let mut spec = SubspaceLiftSpec::standard(&f, 169, 13, 1, base).unwrap();
        let good = spec.clone();
        spec.shift = f.from_int(5);
        assert_eq!(subspace_lift(&f, &spec), Err(Error::ShiftInSubspace));
        let mut spec = good;
        spec.base[1] = f.theta();
        assert_eq!(subspace_lift(&f, &spec), Err(Error::BasePointsNotInSubfield(13)));
    }

    #[test]
    fn lift_gf169_keeps_constant_character() {
        let f = make_field(13, 2).unwrap();
        let base: Vec<FieldElement> = (0..4).map(|i| f.from_int(i)).collect();
        let spec = SubspaceLiftSpec::standard(&f, 169, 13, 1, base).unwrap();
        let es = subspace_lift(&f, &spec).unwrap();
        assert_eq!(es.points().len(), 52);
        let l = lagrange_l(&f, es.points()).unwrap();
        assert!(l.iter().all(|&x| f.eta(x) == f.eta(l[0])));
    }

    #[test]
    fn th1_examples() {
        let c = th1_code(9, 2, 1, 2, &lim()).unwrap();
        assert_eq!((c.length(), c.k(), c.field().q()), (36, 18, 81));
        assert!(check_self_dual(&c.generator_matrix()).unwrap());

        let c = th1_code(13, 1, 0, 3, &lim()).unwrap();
        let f = c.field().clone();
        assert_eq!(ints(&f, c.eval_set().points()), vec![4, 3, 12, 9, 10, 1]);
        assert!(check_self_dual(&c.generator_matrix()).unwrap());

        assert!(matches!(
            th1_code(13, 1, 0, 6, &lim()),
            Err(Error::HypothesisViolated(_))
        ));
        assert!(matches!(
            th1_code(7, 1, 0, 1, &lim()),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn th2_examples() {
        let c = th2_code(13, 2, 1, 3, &lim()).unwrap();
        assert_eq!((c.length(), c.field().q()), (52, 169));
        let c = th2_code(13, 1, 0, 3, &lim()).unwrap();
        let f = c.field().clone();
        assert_eq!(ints(&f, c.eval_set().points()), vec![0, 1, 2, 3]);
        assert_eq!(ints(&f, c.eval_set().multipliers().unwrap()), vec![1, 6, 4, 8]);
        match th2_code(5, 1, 0, 3, &lim()) {
            Err(Error::HypothesisViolated(msg)) => assert!(msg.contains("eta(3) = -1"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn th3_examples() {
        let c = th3_code(13, 2, 1, 2, &lim()).unwrap();
        assert_eq!((c.length(), c.field().q()), (40, 169));
        assert!(c.eval_set().is_extended());
        let c = th3_code(13, 2, 0, 2, &lim()).unwrap();
        assert_eq!(c.length(), 4);
        match th3_code(13, 1, 0, 2, &lim()) {
            Err(Error::HypothesisViolated(msg)) => assert!(msg.contains("eta(2) = -1"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn th4_examples() {
        let c = th4_code(13, 1, 0, 4, &lim()).unwrap();
        let f = c.field().clone();
        assert_eq!(ints(&f, c.eval_set().points()), vec![0, 8, 12, 5, 1]);
        assert_eq!(ints(&f, c.eval_set().multipliers().unwrap()), vec![1, 4, 4, 4, 4]);
        assert!(matches!(
            th4_code(5, 1, 0, 2, &lim()),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn lemma8_rules() {
        let f = make_field(13, 2).unwrap();
        let base: Vec<FieldElement> = (0..3).map(|i| f.from_int(i)).collect();
        let spec = SubspaceLiftSpec::standard(&f, 169, 13, 1, base).unwrap();
        let es = lemma8_extended_lift(&f, &spec).unwrap();
        assert_eq!(es.length(), 40);
        let e0 = SubspaceLiftSpec::standard(&f, 169, 13, 0, spec.base.clone()).unwrap();
        assert_eq!(lemma8_extended_lift(&f, &e0).unwrap().points(), &spec.base[..]);

        let g = make_field(11, 3).unwrap();
        let beta = g.exp((1331 - 1) / 2);
        let base = vec![g.zero(), beta, g.one()];
        let spec = SubspaceLiftSpec::standard(&g, 1331, 11, 1, base).unwrap();
        assert_eq!(lemma8_extended_lift(&g, &spec), Err(Error::ParityCondition));

        let h = make_field(13, 1).unwrap();
        let base: Vec<FieldElement> = (0..3).map(|i| h.from_int(i)).collect();
        let spec = SubspaceLiftSpec::standard(&h, 13, 13, 0, base).unwrap();
        assert_eq!(lemma8_extended_lift(&h, &spec), Err(Error::BaseNotSelfDual));
        let spec = SubspaceLiftSpec::standard(&h, 13, 13, 0, vec![h.zero(), h.one()]).unwrap();
        assert_eq!(lemma8_extended_lift(&h, &spec), Err(Error::EvenLength(2)));
    }
}
