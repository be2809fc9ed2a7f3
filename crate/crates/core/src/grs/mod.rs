//! Generalized Reed-Solomon codes, their Lagrange products and the
//! self-dual multiplier criteria.

mod matrix;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{verification, Error, Result};
use crate::field::{FieldDescriptor, FieldElement, FieldSpec};

pub use matrix::{check_mds, check_self_dual, min_distance, rank, GeneratorMatrix, MdsMode};

/// Evaluation points, multipliers and the extended flag of a (extended)
/// GRS code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalSet {
    field: FieldSpec,
    a: Vec<FieldElement>,
    v: Option<Vec<FieldElement>>,
    extended: bool,
}

impl EvalSet {
    pub fn new(field: &FieldSpec, a: Vec<FieldElement>, extended: bool) -> Result<Self> {
        for &x in &a {
            field.check(x)?;
        }
        if a.len() as u64 > field.q() {
            return Err(Error::DuplicatePoints);
        }
        let mut seen = vec![false; field.q() as usize];
        for x in &a {
            if std::mem::replace(&mut seen[x.code() as usize], true) {
                return Err(Error::DuplicatePoints);
            }
        }
        Ok(EvalSet {
            field: field.clone(),
            a,
            v: None,
            extended,
        })
    }

    pub fn with_multipliers(mut self, v: Vec<FieldElement>) -> Result<Self> {
        if v.len() != self.a.len() {
            return Err(Error::InvalidMultipliers(format!(
                "{} multipliers for {} points",
                v.len(),
                self.a.len()
            )));
        }
        for &x in &v {
            self.field.check(x)?;
            if x.is_zero() {
                return Err(Error::InvalidMultipliers("zero multiplier".into()));
            }
        }
        self.v = Some(v);
        Ok(self)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.a
    }

    pub fn multipliers(&self) -> Option<&[FieldElement]> {
        self.v.as_deref()
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    /// Code length: number of points, plus one when extended.
    pub fn length(&self) -> usize {
        self.a.len() + self.extended as usize
    }
}

/// Construction record: theorem id and the parameters that were used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub theorem: String,
    pub params: BTreeMap<String, Value>,
}

impl Provenance {
    pub fn new(theorem: &str) -> Self {
        Provenance {
            theorem: theorem.to_string(),
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }
}

/// A verified MDS self-dual (extended) GRS code.
#[derive(Clone, Debug)]
pub struct SelfDualCode {
    eval: EvalSet,
    k: usize,
    provenance: Provenance,
}

impl SelfDualCode {
    /// Wraps an evaluation set after checking self-duality of the code it
    /// defines. The check computes every entry of G·Gᵀ through the power
    /// sums of v_i² α_i^d, which costs O(n·k) instead of O(n·k²).
    pub fn new(eval: EvalSet, provenance: Provenance) -> Result<Self> {
        let n = eval.length();
        if n % 2 != 0 {
            return Err(verification(format!("odd code length {n}")));
        }
        if eval.v.is_none() {
            return Err(Error::MultipliersUnset);
        }
        let k = n / 2;
        if !grs_self_dual(&eval, k) {
            return Err(verification(format!(
                "{} code of length {n} over GF({}) is not self-dual",
                provenance.theorem,
                eval.field.q()
            )));
        }
        Ok(SelfDualCode {
            eval,
            k,
            provenance,
        })
    }

    pub fn eval_set(&self) -> &EvalSet {
        &self.eval
    }

    pub fn field(&self) -> &FieldSpec {
        &self.eval.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn length(&self) -> usize {
        self.eval.length()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn generator_matrix(&self) -> GeneratorMatrix {
        generator_matrix(&self.eval, self.k).expect("multipliers are set")
    }

    pub fn to_record(&self) -> CodeRecord {
        CodeRecord {
            field: self.field().descriptor(),
            a: self.eval.a.iter().map(|x| x.code()).collect(),
            v: self
                .eval
                .v
                .as_ref()
                .map(|v| v.iter().map(|x| x.code()).collect())
                .unwrap_or_default(),
            extended: self.eval.extended,
            k: self.k,
            provenance: self.provenance.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("serializable")
    }
}

/// Wire form of a code. Parsing one does not imply it is self-dual.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub field: FieldDescriptor,
    pub a: Vec<u32>,
    pub v: Vec<u32>,
    pub extended: bool,
    pub k: usize,
    pub provenance: Provenance,
}

impl CodeRecord {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Rebuilds the field and evaluation set named by the record.
    pub fn eval_set(&self, table_limit: u64) -> Result<EvalSet> {
        let f = FieldSpec::from_descriptor(&self.field, table_limit)?;
        let conv = |xs: &[u32]| -> Result<Vec<FieldElement>> {
            xs.iter().map(|&c| f.element(c as u64)).collect()
        };
        EvalSet::new(&f, conv(&self.a)?, self.extended)?.with_multipliers(conv(&self.v)?)
    }

    pub fn generator_matrix(&self, table_limit: u64) -> Result<GeneratorMatrix> {
        generator_matrix(&self.eval_set(table_limit)?, self.k)
    }
}

fn check_all(field: &FieldSpec, a: &[FieldElement]) -> Result<()> {
    for &x in a {
        field.check(x)?;
    }
    Ok(())
}

/// L_a(α_i) = ∏_{j≠i}(α_i − α_j) for each i; the empty product is 1.
pub fn lagrange_l(field: &FieldSpec, a: &[FieldElement]) -> Result<Vec<FieldElement>> {
    check_all(field, a)?;
    let qm1 = field.q() - 1;
    let codes: Vec<u32> = a.iter().map(|x| x.code()).collect();
    let negs: Vec<u32> = codes.iter().map(|&c| field.neg_code(c)).collect();
    let mut out = Vec::with_capacity(a.len());
    for (i, &ai) in codes.iter().enumerate() {
        let mut logsum = 0u64;
        for (j, &nj) in negs.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = field.add_code(ai, nj);
            if d == 0 {
                return Err(Error::DuplicatePoints);
            }
            logsum += (d - 1) as u64;
        }
        out.push(field.exp((logsum % qm1) as i64));
    }
    Ok(out)
}

/// f_S(x) = ∏_{s∈S}(x − s).
pub fn vanishing_eval(field: &FieldSpec, s: &[FieldElement], x: FieldElement) -> FieldElement {
    field.product(s.iter().map(|&y| field.sub(x, y)))
}

/// L_S(x) = ∏_{s∈S, s≠x}(x − s).
pub fn lagrange_at(field: &FieldSpec, s: &[FieldElement], x: FieldElement) -> FieldElement {
    field.product(s.iter().filter(|&&y| y != x).map(|&y| field.sub(x, y)))
}

/// Multipliers making GRS_{n/2}(a, v) self-dual when η(L_a(α_i)) is
/// constant: returns (λ, v) with v_i² λ L_a(α_i) = 1, or None.
pub fn lemma1_multipliers(
    field: &FieldSpec,
    a: &[FieldElement],
) -> Result<Option<(FieldElement, Vec<FieldElement>)>> {
    if a.len() % 2 != 0 {
        return Err(Error::OddLength(a.len()));
    }
    let l = lagrange_l(field, a)?;
    let Some(&first) = l.first() else {
        return Ok(Some((field.one(), Vec::new())));
    };
    let sign = field.eta(first);
    if l.iter().any(|&x| field.eta(x) != sign) {
        return Ok(None);
    }
    let lambda = if sign == 1 { field.one() } else { field.theta() };
    let v: Vec<FieldElement> = l
        .iter()
        .map(|&li| {
            let vi = field
                .sqrt(field.inv(field.mul(lambda, li)))
                .expect("λL is a square");
            debug_assert_eq!(field.mul(field.mul(field.mul(vi, vi), lambda), li), field.one());
            vi
        })
        .collect();
    Ok(Some((lambda, v)))
}

/// Multipliers making GRS_{(n+1)/2}(a, v, ∞) self-dual when every
/// −L_a(α_i) is a square: v_i = sqrt((−L_a(α_i))^{-1}), or None.
pub fn lemma2_multipliers(field: &FieldSpec, a: &[FieldElement]) -> Result<Option<Vec<FieldElement>>> {
    if a.len() % 2 == 0 {
        return Err(Error::EvenLength(a.len()));
    }
    let l = lagrange_l(field, a)?;
    let mut v = Vec::with_capacity(l.len());
    for li in l {
        match field.sqrt(field.inv(field.neg(li))) {
            Some(vi) => v.push(vi),
            None => return Ok(None),
        }
    }
    Ok(Some(v))
}

/// Monomial-basis generator matrix: row i is (v_j α_j^i)_j, plus the
/// column (0,…,0,1)ᵀ when extended.
pub fn generator_matrix(es: &EvalSet, k: usize) -> Result<GeneratorMatrix> {
    let v = es.v.as_ref().ok_or(Error::MultipliersUnset)?;
    let n = es.length();
    if k > n {
        return Err(Error::ShapeMismatch(format!("k = {k} exceeds length {n}")));
    }
    let f = &es.field;
    let mut data = Vec::with_capacity(k * n);
    let mut cur: Vec<u32> = v.iter().map(|x| x.code()).collect();
    for i in 0..k {
        data.extend_from_slice(&cur);
        if es.extended {
            data.push((i + 1 == k) as u32);
        }
        for (c, a) in cur.iter_mut().zip(&es.a) {
            *c = f.mul_code(*c, a.code());
        }
    }
    Ok(GeneratorMatrix::from_codes(f, k, n, data))
}

/// Whether the k-dimensional code of `es` is self-dual, via the Hankel
/// structure of G·Gᵀ: entry (i, j) is S_{i+j} = Σ v_l² α_l^{i+j}, plus 1
/// at (k−1, k−1) when extended. Distinct points make G full rank.
fn grs_self_dual(es: &EvalSet, k: usize) -> bool {
    let f = &es.field;
    let v = es.v.as_ref().expect("multipliers set");
    if 2 * k != es.length() {
        return false;
    }
    if k == 0 {
        return true;
    }
    let mut sums = vec![0u32; 2 * k - 1];
    for (&a, &vi) in es.a.iter().zip(v) {
        let mut term = f.mul_code(vi.code(), vi.code());
        for s in sums.iter_mut() {
            *s = f.add_code(*s, term);
            term = f.mul_code(term, a.code());
        }
    }
    if es.extended {
        sums[2 * k - 2] = f.add_code(sums[2 * k - 2], 1);
    }
    sums.iter().all(|&s| s == 0)
}
