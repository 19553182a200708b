use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponents of a monomial. Ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn unit(len: usize, var: usize) -> Self {
        let mut v = vec![0; len];
        v[var] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

/// A polynomial with integer coefficients in `num_vars` variables. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    num_vars: usize,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl SparsePolynomial {
    pub fn zero(num_vars: usize) -> Self {
        Self {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(num_vars: usize) -> Self {
        Self::monomial(ExponentVector::zeros(num_vars), BigInt::one())
    }

    pub fn monomial(e: ExponentVector, coeff: BigInt) -> Self {
        let mut p = Self::zero(e.len());
        p.add_term(e, coeff);
        p
    }

    /// Panics if an exponent vector has the wrong length.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, BigInt)>,
    {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&ExponentVector::zeros(self.num_vars))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(ExponentVector::total_degree).max()
    }

    pub fn add_term(&mut self, e: ExponentVector, coeff: BigInt) {
        assert_eq!(e.len(), self.num_vars, "exponent vector length");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_truncated(other, u32::MAX)
    }

    /// Product with every term of total degree above `degree` dropped.
    pub fn mul_truncated(&self, other: &Self, degree: u32) -> Self {
        assert_eq!(self.num_vars, other.num_vars, "variable count");
        let mut out = Self::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            let da = ea.total_degree();
            if da > degree {
                continue;
            }
            for (eb, cb) in &other.terms {
                if da.saturating_add(eb.total_degree()) <= degree {
                    out.add_term(ea.add(eb), ca * cb);
                }
            }
        }
        out
    }

    pub fn truncate(&self, degree: u32) -> Self {
        Self {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total_degree() <= degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Renames variable `i` to `map[i]` in a ring with `num_vars` variables.
    pub fn substitute(&self, num_vars: usize, map: &[usize]) -> Self {
        let mut out = Self::zero(num_vars);
        for (e, c) in &self.terms {
            let mut x = vec![0; num_vars];
            for (i, &k) in e.0.iter().enumerate() {
                x[map[i]] += k;
            }
            out.add_term(ExponentVector(x), c.clone());
        }
        out
    }
}

impl Serialize for SparsePolynomial {
    /// `[{"exponents": [..], "coeff": "decimal"}, ..]` in graded order.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&TermDoc {
                exponents: e.0.clone(),
                coeff: c.to_string(),
            })?;
        }
        seq.end()
    }
}

/// Serialized form of one polynomial term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

impl SparsePolynomial {
    pub fn from_docs(num_vars: usize, docs: &[TermDoc]) -> Result<Self> {
        let mut p = Self::zero(num_vars);
        for d in docs {
            if d.exponents.len() != num_vars {
                return Err(Error::DimensionMismatch {
                    what: "exponent vector length",
                    expected: num_vars,
                    found: d.exponents.len(),
                });
            }
            let c: BigInt = d
                .coeff
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad coefficient {:?}", d.coeff)))?;
            p.add_term(ExponentVector(d.exponents.clone()), c);
        }
        Ok(p)
    }
}

impl fmt::Display for SparsePolynomial {
    /// `1 - 2*u1*u2*u3 + u1^2*u2^2*u3^2`, variables numbered from 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let negative = c < &BigInt::zero();
            let abs = if negative { -c } else { c.clone() };
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let vars: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("u{}", i + 1) } else { format!("u{}^{k}", i + 1) })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// A power series known up to total degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedSeries {
    #[serde(rename = "terms")]
    poly: SparsePolynomial,
    degree: u32,
}

impl TruncatedSeries {
    pub fn new(poly: SparsePolynomial, degree: u32) -> Self {
        Self {
            poly: poly.truncate(degree),
            degree,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn polynomial(&self) -> &SparsePolynomial {
        &self.poly
    }

    /// Exponent vectors with nonzero coefficient, in graded order.
    pub fn support(&self) -> Vec<ExponentVector> {
        self.poly.terms().map(|(e, _)| e.clone()).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let degree = self.degree.min(other.degree);
        Self {
            poly: self.poly.mul_truncated(&other.poly, degree),
            degree,
        }
    }
}

/// Inverse of `f` up to total degree `degree`.
///
/// With `g = 1 - f`, the inverse is `sum_k g^k`. It is built one homogeneous
/// degree at a time from `s_d = sum_{k >= 1} g_k s_{d-k}`, where `g_k` is the
/// degree-`k` part of `g`.
pub fn series_expand(f: &SparsePolynomial, degree: u32) -> Result<TruncatedSeries> {
    let constant = f.constant_term();
    if !constant.is_one() {
        return Err(Error::NotInvertible {
            constant: constant.to_string(),
        });
    }
    let g: Vec<(ExponentVector, BigInt)> = f
        .terms()
        .filter(|(e, _)| e.total_degree() > 0 && e.total_degree() <= degree)
        .map(|(e, c)| (e.clone(), -c))
        .collect();
    let n = f.num_vars();
    let poly = match packed::expand(&g, n, degree) {
        Some(terms) => SparsePolynomial::from_terms(n, terms),
        None => SparsePolynomial::from_terms(n, expand_big(&g, n, degree)),
    };
    Ok(TruncatedSeries { poly, degree })
}

fn expand_big(g: &[(ExponentVector, BigInt)], n: usize, degree: u32) -> Vec<(ExponentVector, BigInt)> {
    let d = degree as usize;
    let mut g_by: Vec<Vec<&(ExponentVector, BigInt)>> = vec![Vec::new(); d + 1];
    for t in g {
        g_by[t.0.total_degree() as usize].push(t);
    }
    let mut s: Vec<HashMap<ExponentVector, BigInt>> = vec![HashMap::new(); d + 1];
    s[0].insert(ExponentVector::zeros(n), BigInt::one());
    for dd in 1..=d {
        let mut layer: HashMap<ExponentVector, BigInt> = HashMap::new();
        for k in 1..=dd {
            for (ge, gc) in &g_by[k] {
                for (se, sc) in &s[dd - k] {
                    *layer.entry(ge.add(se)).or_default() += gc * sc;
                }
            }
        }
        layer.retain(|_, c| !c.is_zero());
        s[dd] = layer;
    }
    s.into_iter().flatten().collect()
}

/// The same recursion on exponents packed into a `u128` and `i128`
/// coefficients. Gives up (returns `None`) when either does not fit.
mod packed {
    use std::collections::HashMap;

    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    use super::ExponentVector;

    pub(super) fn expand(g: &[(ExponentVector, BigInt)], n: usize, degree: u32) -> Option<Vec<(ExponentVector, BigInt)>> {
        let bits = (32 - degree.leading_zeros()).max(1) as usize;
        if n * bits > 128 {
            return None;
        }
        let pack = |e: &ExponentVector| {
            e.as_slice()
                .iter()
                .enumerate()
                .fold(0u128, |acc, (i, &k)| acc | ((k as u128) << (bits * i)))
        };
        let d = degree as usize;
        let mut g_by: Vec<Vec<(u128, i128)>> = vec![Vec::new(); d + 1];
        for (e, c) in g {
            g_by[e.total_degree() as usize].push((pack(e), c.to_i128()?));
        }
        let mut s: Vec<Vec<(u128, i128)>> = vec![Vec::new(); d + 1];
        s[0].push((0, 1));
        for dd in 1..=d {
            let mut layer: HashMap<u128, i128> = HashMap::new();
            for k in 1..=dd {
                for &(ge, gc) in &g_by[k] {
                    for &(se, sc) in &s[dd - k] {
                        let slot = layer.entry(ge + se).or_default();
                        *slot = slot.checked_add(gc.checked_mul(sc)?)?;
                    }
                }
            }
            s[dd] = layer.into_iter().filter(|&(_, c)| c != 0).collect();
        }
        let mask = (1u128 << bits) - 1;
        Some(
            s.into_iter()
                .flatten()
                .map(|(m, c)| {
                    let e = (0..n).map(|i| ((m >> (bits * i)) & mask) as u32).collect();
                    (ExponentVector(e), BigInt::from(c))
                })
                .collect(),
        )
    }
}

pub fn coefficient_of(s: &TruncatedSeries, e: &ExponentVector) -> Result<BigInt> {
    if e.len() != s.poly.num_vars() {
        return Err(Error::DimensionMismatch {
            what: "exponent vector length",
            expected: s.poly.num_vars(),
            found: e.len(),
        });
    }
    let degree = e.total_degree();
    if degree > s.degree {
        return Err(Error::DegreeOutOfRange {
            degree,
            truncation: s.degree,
        });
    }
    Ok(s.poly.coefficient(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    fn p(n: usize, terms: &[(&[u32], i64)]) -> SparsePolynomial {
        SparsePolynomial::from_terms(n, terms.iter().map(|&(e, c)| (ev(e), BigInt::from(c))))
    }

    #[test]
    fn graded_order() {
        let mut v = vec![ev(&[0, 2]), ev(&[1, 0]), ev(&[0, 0]), ev(&[1, 1]), ev(&[0, 1])];
        v.sort();
        assert_eq!(v, vec![ev(&[0, 0]), ev(&[0, 1]), ev(&[1, 0]), ev(&[0, 2]), ev(&[1, 1])]);
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let a = p(2, &[(&[1, 0], 3), (&[0, 1], 1)]);
        let b = p(2, &[(&[1, 0], 3)]);
        assert_eq!(a.sub(&b), p(2, &[(&[0, 1], 1)]));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn product_and_display() {
        let f = p(3, &[(&[0, 0, 0], 1), (&[1, 1, 1], -1)]);
        let sq = f.mul(&f);
        assert_eq!(sq, p(3, &[(&[0, 0, 0], 1), (&[1, 1, 1], -2), (&[2, 2, 2], 1)]));
        assert_eq!(sq.to_string(), "1 - 2*u1*u2*u3 + u1^2*u2^2*u3^2");
        assert_eq!(SparsePolynomial::zero(2).to_string(), "0");
    }

    #[test]
    fn json_terms() {
        let f = p(2, &[(&[0, 0], 1), (&[1, 0], -2)]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"[{"exponents":[0,0],"coeff":"1"},{"exponents":[1,0],"coeff":"-2"}]"#);
        let docs: Vec<TermDoc> = serde_json::from_str(&json).unwrap();
        assert_eq!(SparsePolynomial::from_docs(2, &docs).unwrap(), f);
    }

    #[test]
    fn expand_one() {
        let s = series_expand(&SparsePolynomial::one(2), 5).unwrap();
        assert_eq!(s.polynomial(), &SparsePolynomial::one(2));
    }

    #[test]
    fn expand_binomial_square() {
        let f = p(3, &[(&[0, 0, 0], 1), (&[1, 1, 1], -1)]);
        let s = series_expand(&f.mul(&f), 9).unwrap();
        for k in 0..=3u32 {
            assert_eq!(coefficient_of(&s, &ev(&[k, k, k])).unwrap(), BigInt::from(k + 1));
        }
        assert_eq!(s.polynomial().num_terms(), 4);
        assert!(matches!(
            coefficient_of(&s, &ev(&[4, 4, 4])),
            Err(Error::DegreeOutOfRange { degree: 12, truncation: 9 })
        ));
        assert_eq!(coefficient_of(&s, &ev(&[1, 0, 0])).unwrap(), BigInt::zero());
    }

    #[test]
    fn non_invertible() {
        let f = p(1, &[(&[0], 2), (&[1], 1)]);
        assert!(matches!(series_expand(&f, 3), Err(Error::NotInvertible { .. })));
        assert!(series_expand(&p(1, &[(&[1], 1)]), 3).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn poly() -> impl Strategy<Value = SparsePolynomial> {
            proptest::collection::vec((proptest::collection::vec(0u32..3, 3), -3i64..4), 0..6).prop_map(|terms| {
                let mut f = SparsePolynomial::one(3);
                for (e, c) in terms {
                    if e.iter().sum::<u32>() > 0 {
                        f.add_term(ExponentVector(e), BigInt::from(c));
                    }
                }
                f
            })
        }

        proptest! {
            #[test]
            fn truncated_inverse(f in poly(), d in 0u32..7) {
                let s = series_expand(&f, d).unwrap();
                prop_assert_eq!(s.polynomial().mul_truncated(&f, d), SparsePolynomial::one(3));
            }

            #[test]
            fn packed_and_general_paths_agree(f in poly(), d in 0u32..7) {
                let g: Vec<_> = f.terms().filter(|(e, _)| e.total_degree() > 0).map(|(e, c)| (e.clone(), -c)).collect();
                let g: Vec<_> = g.into_iter().filter(|(e, _)| e.total_degree() <= d).collect();
                let a = SparsePolynomial::from_terms(3, packed::expand(&g, 3, d).unwrap());
                let b = SparsePolynomial::from_terms(3, expand_big(&g, 3, d));
                prop_assert_eq!(a, b);
            }

            #[test]
            fn multiplication_commutes(a in poly(), b in poly()) {
                prop_assert_eq!(a.mul(&b), b.mul(&a));
            }
        }
    }
}
