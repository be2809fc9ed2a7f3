//! A subfield GF(Q) of a realized field, with its own quadratic character.

use crate::arith;
use crate::error::{hypothesis, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::limits::Limits;

#[derive(Clone, Copy)]
pub(crate) struct Host<'a> {
    pub field: &'a FieldSpec,
    pub order: u64,
    /// (q-1)/(Q-1): θ^step generates GF(Q)*
    pub step: u64,
}

impl<'a> Host<'a> {
    pub fn whole(field: &'a FieldSpec) -> Self {
        Host {
            field,
            order: field.q(),
            step: 1,
        }
    }

    pub fn sub(field: &'a FieldSpec, order: u64) -> Result<Self> {
        Ok(Host {
            field,
            order,
            step: field.subfield_step(order)?,
        })
    }

    /// Quadratic character of GF(Q) at a nonzero element of GF(Q).
    pub fn eta(&self, x: FieldElement) -> i8 {
        let k = self.field.log(x).expect("character of zero");
        debug_assert_eq!(k % self.step, 0, "element outside the host subfield");
        if (k / self.step) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn eta_int(&self, i: i64) -> i8 {
        self.eta(self.field.from_int(i))
    }

    /// Primitive d-th root of unity θ^((q-1)/d), d | Q-1.
    pub fn root_of_unity(&self, d: u64) -> FieldElement {
        debug_assert_eq!((self.order - 1) % d, 0);
        self.field.exp(((self.field.q() - 1) / d) as i64)
    }

    pub fn generator(&self) -> FieldElement {
        self.field.exp(self.step as i64)
    }
}

/// Splits an odd prime power r into (p, d).
pub(crate) fn odd_prime_power(r: u64) -> Result<(u64, u32)> {
    match arith::prime_power(r) {
        Some((p, d)) if p != 2 => Ok((p, d)),
        _ => Err(Error::NotAPrimePower(r)),
    }
}

/// r^k, failing with a table-limit error on overflow.
pub(crate) fn power(r: u64, k: u64) -> Result<u64> {
    u32::try_from(k)
        .ok()
        .and_then(|k| r.checked_pow(k))
        .ok_or(Error::TableLimitExceeded {
            order: u128::MAX,
            limit: u64::MAX,
        })
}

pub(crate) fn check_length(length: u128, limits: &Limits) -> Result<()> {
    if length > limits.length_limit as u128 {
        return Err(Error::LengthLimitExceeded {
            length,
            limit: limits.length_limit,
        });
    }
    Ok(())
}

/// Checks that GF(r^k) fits the table limit and returns (p, p-degree).
pub(crate) fn check_table(r: u64, k: u64, limits: &Limits) -> Result<(u64, u32)> {
    let (p, d) = odd_prime_power(r)?;
    let deg = d as u64 * k;
    if deg == 0 {
        return Err(hypothesis("extension degree must be positive"));
    }
    let order = if deg > 127 {
        u128::MAX
    } else {
        (p as u128).checked_pow(deg as u32).unwrap_or(u128::MAX)
    };
    if order > limits.table_limit as u128 {
        return Err(Error::TableLimitExceeded {
            order,
            limit: limits.table_limit,
        });
    }
    Ok((p, deg as u32))
}

/// Builds GF(r^k) for an odd prime power r.
pub(crate) fn extension(r: u64, k: u64, limits: &Limits) -> Result<FieldSpec> {
    let (p, deg) = check_table(r, k, limits)?;
    FieldSpec::new(p, deg, limits.table_limit)
}
