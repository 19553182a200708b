//! The fundamental cone of a parity-check matrix.
//!
//! `K(H)` is the set of `v >= 0` with `sum_{i' != i} h[j][i'] v[i'] >= h[j][i] v[i]`
//! for every row `j` and position `i`. All `r*n` inequalities are evaluated
//! as written, including the trivial ones where `h[j][i] = 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2::{syndrome, BinaryMatrix, BitVector};

/// A failed cone inequality. Indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Violation {
    Negative { bit: usize },
    Check { row: usize, bit: usize },
}

impl Serialize for Violation {
    /// `{"row": j, "bit": i}`, 1-based, with `row: null` for nonnegativity.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (row, bit) = match *self {
            Violation::Negative { bit } => (None, bit),
            Violation::Check { row, bit } => (Some(row + 1), bit),
        };
        let mut st = s.serialize_struct("Violation", 2)?;
        st.serialize_field("row", &row)?;
        st.serialize_field("bit", &(bit + 1))?;
        st.end()
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Negative { bit } => write!(f, "entry {} is negative", bit + 1),
            Violation::Check { row, bit } => write!(f, "row {} fails at position {}", row + 1, bit + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeVerdict {
    pub member: bool,
    pub violations: Vec<Violation>,
}

fn check_len(h: &BinaryMatrix, len: usize) -> Result<()> {
    if len != h.num_cols() {
        return Err(Error::DimensionMismatch {
            what: "vector length",
            expected: h.num_cols(),
            found: len,
        });
    }
    Ok(())
}

/// Shared evaluation over any ordered additive type.
fn violations<T, F>(h: &BinaryMatrix, v: &[T], zero: T, add: F) -> Vec<Violation>
where
    T: Clone + PartialOrd,
    F: Fn(&T, &T) -> T,
{
    let mut out: Vec<Violation> = (0..v.len())
        .filter(|&i| v[i] < zero)
        .map(|bit| Violation::Negative { bit })
        .collect();
    for j in 0..h.num_rows() {
        let row = h.row(j);
        let total = row.support().into_iter().fold(zero.clone(), |acc, i| add(&acc, &v[i]));
        for (i, vi) in v.iter().enumerate() {
            // sum over i' != i >= h_ji v_i, i.e. total >= 2 v_i when h_ji = 1
            // and total >= 0 otherwise.
            let ok = if row.get(i) {
                total >= add(vi, vi)
            } else {
                total >= zero
            };
            if !ok {
                out.push(Violation::Check { row: j, bit: i });
            }
        }
    }
    out
}

pub fn cone_membership(h: &BinaryMatrix, v: &[BigRational]) -> Result<ConeVerdict> {
    check_len(h, v.len())?;
    let violations = violations(h, v, BigRational::zero(), |a, b| a + b);
    Ok(ConeVerdict {
        member: violations.is_empty(),
        violations,
    })
}

/// Same answer as [`cone_membership`] on integer vectors, without rationals.
pub fn cone_membership_int(h: &BinaryMatrix, v: &[i64]) -> Result<ConeVerdict> {
    check_len(h, v.len())?;
    let wide: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    let violations = violations(h, &wide, 0i128, |a, b| a + b);
    Ok(ConeVerdict {
        member: violations.is_empty(),
        violations,
    })
}

/// Whether `p` is an unscaled pseudo-codeword: an integer point of the cone
/// whose reduction mod 2 is a codeword.
pub fn is_unscaled_pcw(h: &BinaryMatrix, p: &[i64]) -> Result<bool> {
    if let Some(index) = p.iter().position(|&x| x < 0) {
        return Err(Error::NegativeEntry {
            index,
            value: p[index].to_string(),
        });
    }
    if !cone_membership_int(h, p)?.member {
        return Ok(false);
    }
    let parity = BitVector::from_bools(&p.iter().map(|&x| x % 2 == 1).collect::<Vec<_>>());
    Ok(syndrome(h, &parity)?.is_zero())
}

/// [`is_unscaled_pcw`] for arbitrary-size integers.
pub fn is_unscaled_pcw_big(h: &BinaryMatrix, p: &[BigInt]) -> Result<bool> {
    if let Some(index) = p.iter().position(|x| x.is_negative()) {
        return Err(Error::NegativeEntry {
            index,
            value: p[index].to_string(),
        });
    }
    check_len(h, p.len())?;
    if !violations(h, p, BigInt::zero(), |a, b| a + b).is_empty() {
        return Ok(false);
    }
    let parity = BitVector::from_bools(&p.iter().map(|x| x.bit(0)).collect::<Vec<_>>());
    Ok(syndrome(h, &parity)?.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayWitness {
    /// Even unscaled pseudo-codeword `2 * ceil(beta * v)`.
    pub p: Vec<BigInt>,
    pub alpha: BigRational,
    pub beta: BigInt,
}

/// Finds an unscaled pseudo-codeword `p` and `alpha > 0` with
/// `|alpha * p - v| < eps`.
///
/// `beta` runs through `1, 2, 4, ..`. For each, `p = 2 * ceil(beta * v)` and
/// `alpha` is the least-squares scale `(p.v) / (p.p)`; the first `beta` whose
/// distance is below `eps` (compared exactly, squared) is returned. Since
/// `|p / (2 beta) - v| < sqrt(n) / beta`, the loop stops once
/// `beta > sqrt(n) / eps`.
pub fn dense_ray_witness(h: &BinaryMatrix, v: &[BigRational], eps: &BigRational) -> Result<RayWitness> {
    if !eps.is_positive() {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let verdict = cone_membership(h, v)?;
    if !verdict.member {
        return Err(Error::NotInCone {
            violations: verdict.violations.len(),
        });
    }
    let eps_sq = eps * eps;
    let two = BigInt::from(2);
    let mut beta = BigInt::one();
    loop {
        let beta_r = BigRational::from_integer(beta.clone());
        let p: Vec<BigInt> = v.iter().map(|x| &two * (&beta_r * x).ceil().to_integer()).collect();
        let pp: BigInt = p.iter().map(|x| x * x).sum();
        let alpha = if pp.is_zero() {
            BigRational::one()
        } else {
            let pv: BigRational = p
                .iter()
                .zip(v)
                .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
                .sum();
            pv / BigRational::from_integer(pp)
        };
        let dist_sq: BigRational = p
            .iter()
            .zip(v)
            .map(|(a, b)| {
                let d = &alpha * BigRational::from_integer(a.clone()) - b;
                &d * &d
            })
            .sum();
        if dist_sq < eps_sq {
            debug_assert!(is_unscaled_pcw_big(h, &p)?);
            return Ok(RayWitness { p, alpha, beta });
        }
        beta *= 2;
    }
}
