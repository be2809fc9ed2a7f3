//! Generator matrices and the linear-algebra verification oracles.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::limits::Limits;

/// A k × n matrix over a realized field, stored row-major by element code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl GeneratorMatrix {
    pub(crate) fn from_codes(field: &FieldSpec, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        GeneratorMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: &FieldSpec, rows: &[Vec<FieldElement>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            for &x in row {
                data.push(field.check(x)?.code());
            }
        }
        Ok(Self::from_codes(field, rows.len(), cols, data))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.field.wrap(self.data[i * self.cols + j])
    }

    pub fn row(&self, i: usize) -> Vec<FieldElement> {
        self.row_codes(i).iter().map(|&c| self.field.wrap(c)).collect()
    }

    fn row_codes(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// One row per line, space-separated element codes.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = self.row_codes(i).iter().map(u32::to_string).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        out
    }

    pub fn from_text(field: &FieldSpec, text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                line.split_whitespace()
                    .map(|tok| {
                        let c = u64::from_str(tok).map_err(|e| Error::Parse(e.to_string()))?;
                        field.element(c)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(field, &rows)
    }

    fn dot(&self, i: usize, j: usize) -> u32 {
        let f = &self.field;
        self.row_codes(i)
            .iter()
            .zip(self.row_codes(j))
            .fold(0, |acc, (&x, &y)| f.add_code(acc, f.mul_code(x, y)))
    }

    fn column_submatrix(&self, cols: &[usize]) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| cols.iter().map(|&j| self.data[i * self.cols + j]).collect())
            .collect()
    }
}

/// Rank of a matrix of codes by Gaussian elimination.
fn rank_of(field: &FieldSpec, mut m: Vec<Vec<u32>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = field.inv_code(m[r][c]);
        let prow: Vec<u32> = m[r].iter().map(|&x| field.mul_code(x, inv)).collect();
        for i in 0..rows {
            if i == r || m[i][c] == 0 {
                continue;
            }
            let factor = field.neg_code(m[i][c]);
            for (x, &p) in m[i].iter_mut().zip(&prow).skip(c) {
                *x = field.add_code(*x, field.mul_code(factor, p));
            }
        }
        m[r] = prow;
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn rank(g: &GeneratorMatrix) -> usize {
    rank_of(&g.field, g.column_submatrix(&(0..g.cols).collect::<Vec<_>>()))
}

/// True iff G·Gᵀ = 0 and G has rank k = n/2.
pub fn check_self_dual(g: &GeneratorMatrix) -> Result<bool> {
    if 2 * g.rows != g.cols {
        return Err(Error::ShapeMismatch(format!(
            "{} rows for {} columns",
            g.rows, g.cols
        )));
    }
    for i in 0..g.rows {
        for j in i..g.rows {
            if g.dot(i, j) != 0 {
                return Ok(false);
            }
        }
    }
    let first: Vec<usize> = (0..g.rows).collect();
    if rank_of(&g.field, g.column_submatrix(&first)) == g.rows {
        return Ok(true);
    }
    Ok(rank(g) == g.rows)
}

/// Exact minimum Hamming weight of the nonzero codewords, by enumerating
/// messages whose first nonzero coordinate is 1.
pub fn min_distance(g: &GeneratorMatrix, enumeration_limit: u64) -> Result<usize> {
    let q = g.field.q();
    let size = (q as u128).checked_pow(g.rows as u32).unwrap_or(u128::MAX);
    if size > enumeration_limit as u128 {
        return Err(Error::EnumerationTooLarge {
            size,
            limit: enumeration_limit,
        });
    }
    let mut best = usize::MAX;
    let mut partial = vec![vec![0u32; g.cols]; g.rows + 1];
    enumerate(g, 0, false, &mut partial, &mut best);
    Ok(if best == usize::MAX { 0 } else { best })
}

fn enumerate(
    g: &GeneratorMatrix,
    level: usize,
    nonzero: bool,
    partial: &mut [Vec<u32>],
    best: &mut usize,
) {
    if level == g.rows {
        if nonzero {
            let w = partial[level].iter().filter(|&&c| c != 0).count();
            *best = (*best).min(w);
        }
        return;
    }
    let f = &g.field;
    let top = if nonzero { f.q() as u32 } else { 2 };
    for m in 0..top {
        let (head, tail) = partial.split_at_mut(level + 1);
        let prev = &head[level];
        let next = &mut tail[0];
        for ((out, &p), &x) in next.iter_mut().zip(prev).zip(g.row_codes(level)) {
            *out = f.add_code(p, f.mul_code(m, x));
        }
        enumerate(g, level + 1, nonzero || m != 0, partial, best);
    }
}

/// Strategy for confirming the MDS property.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MdsMode {
    /// Minimum distance equals n − k + 1 by enumeration.
    Exhaustive,
    /// Every k × k minor is nonzero.
    Minors,
    /// Randomly chosen k-column subsets are all nonsingular. Probabilistic.
    Sampled,
}

impl FromStr for MdsMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(MdsMode::Exhaustive),
            "minors" => Ok(MdsMode::Minors),
            "sampled" => Ok(MdsMode::Sampled),
            other => Err(Error::Parse(format!("unknown MDS mode {other:?}"))),
        }
    }
}

pub fn check_mds(g: &GeneratorMatrix, mode: MdsMode, limits: &Limits) -> Result<bool> {
    let (n, k) = (g.cols, g.rows);
    if k == 0 {
        return Ok(true);
    }
    match mode {
        MdsMode::Exhaustive => Ok(min_distance(g, limits.enumeration_limit)? == n - k + 1),
        MdsMode::Minors => {
            let count = arith::binomial(n as u64, k as u64);
            if count > limits.minor_limit as u128 {
                return Err(Error::EnumerationTooLarge {
                    size: count,
                    limit: limits.minor_limit,
                });
            }
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                if rank_of(&g.field, g.column_submatrix(&idx)) < k {
                    return Ok(false);
                }
                // next k-combination in lexicographic order
                let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
                    return Ok(true);
                };
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
            }
        }
        MdsMode::Sampled => {
            let mut rng = ChaCha8Rng::seed_from_u64(limits.seed);
            for _ in 0..limits.sample_count {
                let mut idx = sample(&mut rng, n, k).into_vec();
                idx.sort_unstable();
                if rank_of(&g.field, g.column_submatrix(&idx)) < k {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn matrix(f: &FieldSpec, rows: &[&[i64]]) -> GeneratorMatrix {
        let rows: Vec<Vec<FieldElement>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| f.from_int(x)).collect())
            .collect();
        GeneratorMatrix::from_rows(f, &rows).unwrap()
    }

    #[test]
    fn gf13_fixture() {
        let f = make_field(13, 1).unwrap();
        let g = matrix(&f, &[&[1, 6, 4, 8], &[0, 6, 8, 11]]);
        assert!(check_self_dual(&g).unwrap());
        assert_eq!(min_distance(&g, 10_000_000).unwrap(), 3);
        let lim = Limits::default();
        for mode in [MdsMode::Exhaustive, MdsMode::Minors, MdsMode::Sampled] {
            assert!(check_mds(&g, mode, &lim).unwrap(), "{mode:?}");
        }
    }

    #[test]
    fn identity_like_is_not_self_dual() {
        let f = make_field(13, 1).unwrap();
        let g = matrix(&f, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert!(!check_self_dual(&g).unwrap());
        let g = matrix(&f, &[&[1, 0, 0]]);
        assert!(matches!(check_self_dual(&g), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn rank_deficient_isotropic_rows() {
        // (1, 5) is isotropic in GF(13) since 1 + 25 = 26; a repeated row
        // makes G·Gᵀ = 0 but rank 1
        let f = make_field(13, 1).unwrap();
        let g = matrix(&f, &[&[1, 5, 0, 0], &[1, 5, 0, 0]]);
        assert!(!check_self_dual(&g).unwrap());
    }

    #[test]
    fn repetition_code_distance() {
        let f = make_field(3, 1).unwrap();
        let g = matrix(&f, &[&[1, 1]]);
        assert_eq!(min_distance(&g, 100).unwrap(), 2);
        assert!(matches!(
            min_distance(&g, 2),
            Err(Error::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn repeated_column_fails_mds() {
        let f = make_field(13, 1).unwrap();
        let g = matrix(&f, &[&[1, 1, 1, 1], &[2, 2, 5, 7]]);
        let lim = Limits::default();
        assert!(!check_mds(&g, MdsMode::Minors, &lim).unwrap());
        assert!(!check_mds(&g, MdsMode::Exhaustive, &lim).unwrap());
        assert!(!check_mds(&g, MdsMode::Sampled, &lim).unwrap());
    }

    #[test]
    fn text_round_trip() {
        let f = make_field(13, 1).unwrap();
        let g = matrix(&f, &[&[1, 6, 4, 8], &[0, 6, 8, 11]]);
        let t = g.to_text();
        assert_eq!(GeneratorMatrix::from_text(&f, &t).unwrap(), g);
        assert!(GeneratorMatrix::from_text(&f, "1 2\n3").is_err());
        assert!(GeneratorMatrix::from_text(&f, "1 x").is_err());
    }

    #[test]
    fn rank_basics() {
        let f = make_field(7, 1).unwrap();
        assert_eq!(rank(&matrix(&f, &[&[1, 2, 3], &[2, 4, 6]])), 1);
        assert_eq!(rank(&matrix(&f, &[&[1, 2, 3], &[0, 1, 1]])), 2);
        assert_eq!(rank(&matrix(&f, &[&[0, 0], &[0, 0]])), 0);
    }
}
