//! Exact determinants of sparse matrices with polynomial entries.
//!
//! Laplace expansion row by row, memoized on the set of columns already
//! taken. Rows are processed in an order that keeps few columns "open"
//! (touched by a processed row and by an unprocessed one); a state that
//! leaves a column with no remaining nonzero row unused is dropped at once.
//! The number of live states is then governed by the open columns, which
//! stays small for the banded matrices that come from sparse graphs.

use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;

use super::poly::{ExponentVector, SparsePolynomial};
use crate::error::{Error, Result};

/// Exponents packed four bits per variable.
type Mono = u128;
type Poly = HashMap<Mono, i128>;
/// Nonzero entries of one row: column and polynomial.
type Row<E> = Vec<(usize, Vec<E>)>;

const MAX_VARS: usize = 32;
const MAX_SIZE: usize = 64;
const MAX_EXPONENT: u32 = 15;

/// Square matrix whose entry `(i, j)` is a polynomial with small exponents.
#[derive(Clone, Debug, Default)]
pub(crate) struct PolyMatrix {
    num_vars: usize,
    rows: Vec<Row<(Vec<u32>, i64)>>,
}

impl PolyMatrix {
    pub fn new(size: usize, num_vars: usize) -> Self {
        Self {
            num_vars,
            rows: vec![Vec::new(); size],
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Adds `coeff * u^exponents` to entry `(i, j)`.
    pub fn add(&mut self, i: usize, j: usize, exponents: Vec<u32>, coeff: i64) {
        assert_eq!(exponents.len(), self.num_vars);
        let row = &mut self.rows[i];
        match row.iter_mut().find(|(c, _)| *c == j) {
            Some((_, entry)) => entry.push((exponents, coeff)),
            None => row.push((j, vec![(exponents, coeff)])),
        }
    }
}

fn pack(e: &[u32]) -> Mono {
    e.iter().enumerate().fold(0, |acc, (i, &k)| acc | ((k as Mono) << (4 * i)))
}

fn unpack(m: Mono, num_vars: usize) -> ExponentVector {
    ExponentVector((0..num_vars).map(|i| ((m >> (4 * i)) & 0xf) as u32).collect())
}

fn overflow() -> Error {
    Error::Capacity {
        what: "determinant coefficient magnitude (bits)",
        bound: 127,
        found: 128,
    }
}

pub(crate) fn determinant(m: &PolyMatrix) -> Result<SparsePolynomial> {
    let n = m.size();
    if n > MAX_SIZE {
        return Err(Error::Capacity {
            what: "determinant size",
            bound: MAX_SIZE,
            found: n,
        });
    }
    if m.num_vars > MAX_VARS {
        return Err(Error::Capacity {
            what: "determinant variable count",
            bound: MAX_VARS,
            found: m.num_vars,
        });
    }
    // A full expansion multiplies one entry per row, so per-variable
    // exponents add up to at most the sum of row maxima.
    for v in 0..m.num_vars {
        let worst: u32 = m
            .rows
            .iter()
            .map(|row| row.iter().flat_map(|(_, e)| e.iter().map(|(x, _)| x[v])).max().unwrap_or(0))
            .sum();
        if worst > MAX_EXPONENT {
            return Err(Error::Capacity {
                what: "per-variable degree in determinant",
                bound: MAX_EXPONENT as usize,
                found: worst as usize,
            });
        }
    }

    let order = elimination_order(m);
    let mut pos = vec![0; n];
    for (k, &r) in order.iter().enumerate() {
        pos[r] = k;
    }
    let rows: Vec<Row<(Mono, i128)>> = order
        .iter()
        .map(|&r| {
            let mut row: Vec<_> = m.rows[r]
                .iter()
                .map(|(c, entry)| {
                    let mut packed: Poly = HashMap::new();
                    for (e, coeff) in entry {
                        *packed.entry(pack(e)).or_default() += *coeff as i128;
                    }
                    packed.retain(|_, c| *c != 0);
                    (pos[*c], packed.into_iter().collect::<Vec<_>>())
                })
                .filter(|(_, e)| !e.is_empty())
                .collect();
            row.sort_by_key(|(c, _)| *c);
            row
        })
        .collect();

    // closed[k]: columns with no nonzero in rows k.. (must be used by then).
    let mut last_row = vec![None; n];
    for (k, row) in rows.iter().enumerate() {
        for (c, _) in row {
            last_row[*c] = Some(k);
        }
    }
    let closed: Vec<u64> = (0..=n)
        .map(|k| {
            (0..n)
                .filter(|&c| last_row[c].is_none_or(|l| l < k))
                .fold(0u64, |acc, c| acc | (1 << c))
        })
        .collect();
    if closed[0] != 0 {
        // An all-zero column.
        return Ok(SparsePolynomial::zero(m.num_vars));
    }

    let mut solver = Solver {
        rows: &rows,
        closed: &closed,
        memo: vec![HashMap::new(); n + 1],
    };
    let det = solver.minor(0, 0)?;
    Ok(SparsePolynomial::from_terms(
        m.num_vars,
        det.iter().map(|(&mono, &c)| (unpack(mono, m.num_vars), BigInt::from(c))),
    ))
}

struct Solver<'a> {
    rows: &'a [Row<(Mono, i128)>],
    closed: &'a [u64],
    memo: Vec<HashMap<u64, Rc<Poly>>>,
}

impl Solver<'_> {
    /// Determinant of rows `k..` against the columns not in `used`.
    fn minor(&mut self, k: usize, used: u64) -> Result<Rc<Poly>> {
        if k == self.rows.len() {
            return Ok(Rc::new(HashMap::from([(0, 1)])));
        }
        if let Some(hit) = self.memo[k].get(&used) {
            return Ok(hit.clone());
        }
        let mut out: Poly = HashMap::new();
        for (c, entry) in &self.rows[k] {
            let bit = 1u64 << c;
            if used & bit != 0 {
                continue;
            }
            let next = used | bit;
            if self.closed[k + 1] & !next != 0 {
                continue;
            }
            let sub = self.minor(k + 1, next)?;
            if sub.is_empty() {
                continue;
            }
            // Position of column c among the columns still free.
            let negative = (!used & (bit - 1)).count_ones() % 2 == 1;
            for &(m1, c1) in entry {
                let c1 = if negative { -c1 } else { c1 };
                for (&m2, &c2) in sub.iter() {
                    let term = c1.checked_mul(c2).ok_or_else(overflow)?;
                    let slot = out.entry(m1 + m2).or_default();
                    *slot = slot.checked_add(term).ok_or_else(overflow)?;
                }
            }
        }
        out.retain(|_, c| *c != 0);
        let out = Rc::new(out);
        self.memo[k].insert(used, out.clone());
        Ok(out)
    }
}

/// Greedy row order keeping the number of open columns low. Ties go to the
/// lowest row index.
fn elimination_order(m: &PolyMatrix) -> Vec<usize> {
    let n = m.size();
    let mut rows_of_col = vec![Vec::new(); n];
    for (i, row) in m.rows.iter().enumerate() {
        for (c, _) in row {
            rows_of_col[*c].push(i);
        }
    }
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for r in 0..n {
            if done[r] {
                continue;
            }
            done[r] = true;
            let open = rows_of_col
                .iter()
                .filter(|rs| rs.iter().any(|&i| done[i]) && rs.iter().any(|&i| !done[i]))
                .count();
            done[r] = false;
            if best.is_none_or(|(_, b)| open < b) {
                best = Some((r, open));
            }
        }
        let (r, _) = best.expect("rows remain");
        done[r] = true;
        order.push(r);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Permutation-sum determinant, for small matrices only.
    fn brute(m: &PolyMatrix) -> SparsePolynomial {
        let n = m.size();
        let entry = |i: usize, j: usize| -> SparsePolynomial {
            let mut p = SparsePolynomial::zero(m.num_vars);
            for (c, e) in &m.rows[i] {
                if *c == j {
                    for (x, k) in e {
                        p.add_term(ExponentVector(x.clone()), BigInt::from(*k));
                    }
                }
            }
            p
        };
        let mut total = SparsePolynomial::zero(m.num_vars);
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let mut prod = SparsePolynomial::one(m.num_vars);
            for (i, &j) in p.iter().enumerate() {
                prod = prod.mul(&entry(i, j));
            }
            if inversions % 2 == 1 {
                total = total.sub(&prod);
            } else {
                total = total.add(&prod);
            }
        });
        total
    }

    fn permute(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn integer_matrices() {
        let mut m = PolyMatrix::new(3, 0);
        for (i, row) in [[2i64, 0, 1], [1, 3, 0], [0, 1, 4]].iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x != 0 {
                    m.add(i, j, vec![], x);
                }
            }
        }
        // 2*12 - 0 + 1*1 = 25
        assert_eq!(determinant(&m).unwrap(), SparsePolynomial::from_terms(0, [(ExponentVector(vec![]), BigInt::from(25))]));
    }

    #[test]
    fn zero_column() {
        let mut m = PolyMatrix::new(2, 0);
        m.add(0, 0, vec![], 1);
        m.add(1, 0, vec![], 1);
        assert!(determinant(&m).unwrap().is_zero());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn matrix() -> impl Strategy<Value = PolyMatrix> {
            (1usize..6).prop_flat_map(|n| {
                proptest::collection::vec((0..n, 0..n, proptest::collection::vec(0u32..2, 2), -2i64..3), 0..3 * n).prop_map(
                    move |entries| {
                        let mut m = PolyMatrix::new(n, 2);
                        for (i, j, e, c) in entries {
                            m.add(i, j, e, c);
                        }
                        m
                    },
                )
            })
        }

        proptest! {
            #[test]
            fn agrees_with_permutation_sum(m in matrix()) {
                prop_assert_eq!(determinant(&m).unwrap(), brute(&m));
            }
        }
    }
}
