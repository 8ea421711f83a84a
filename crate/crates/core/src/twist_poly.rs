//! Twist polynomials: `Σ_{A ⊆ E} z^{w(D*A)}`.
//!
//! The naive path measures the width of every twist directly. The fast path
//! is for normal delta-matroids, where the width of `D*A` splits as
//! `maxcard(A) + maxcard(Aᶜ)` with `maxcard(A)` the largest feasible set
//! inside `A`; a single pass over the subset lattice fills that table.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ops;
use crate::set_system::{check_lattice_size, low_bits, DeltaMatroid, SubsetMask};

/// Sparse polynomial in `z` with positive integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TwistPolynomial {
    terms: BTreeMap<u32, u64>,
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    exp: u32,
    coef: u64,
}

#[derive(Serialize, Deserialize)]
struct JsonPolynomial {
    terms: Vec<JsonTerm>,
}

impl TwistPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; zero
    /// coefficients are dropped and repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (u32, u64)>>(terms: I) -> Self {
        let mut p = Self::new();
        for (exp, coef) in terms {
            p.add_term(exp, coef);
        }
        p
    }

    pub fn add_term(&mut self, exp: u32, coef: u64) {
        if coef > 0 {
            *self.terms.entry(exp).or_insert(0) += coef;
        }
    }

    pub fn coefficient(&self, exp: u32) -> u64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Terms by descending exponent.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.terms.iter().rev().map(|(&e, &c)| (e, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Sum of all coefficients, i.e. the value at `z = 1`.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    fn json_form(&self) -> JsonPolynomial {
        JsonPolynomial { terms: self.terms().map(|(exp, coef)| JsonTerm { exp, coef }).collect() }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.json_form()).expect("plain data serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let json: JsonPolynomial =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse { line: 0, message: e.to_string() })?;
        Ok(Self::from_terms(json.terms.into_iter().map(|t| (t.exp, t.coef))))
    }
}

impl Serialize for TwistPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.json_form().serialize(serializer)
    }
}

impl Mul for &TwistPolynomial {
    type Output = TwistPolynomial;

    fn mul(self, rhs: &TwistPolynomial) -> TwistPolynomial {
        let mut out = TwistPolynomial::new();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// `2*z^2 + 2*z + 1`; a bare integer for `z^0`, `z` for `z^1`.
impl fmt::Display for TwistPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exp, coef)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match exp {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}*z")?,
                _ => write!(f, "{coef}*z^{exp}")?,
            }
        }
        Ok(())
    }
}

/// Width of `D * A` straight from the twisted family.
pub fn twist_width(d: &DeltaMatroid, a: u64) -> usize {
    let (lo, hi) = d
        .feasible_bits()
        .iter()
        .map(|&x| (a ^ x).count_ones())
        .fold((u32::MAX, 0), |(lo, hi), c| (lo.min(c), hi.max(c)));
    (hi - lo) as usize
}

/// Tallies `z^{w(D*A)}` over every `A ⊆ E` by measuring each twist.
/// Works for any delta-matroid.
pub fn twist_polynomial_naive(d: &DeltaMatroid) -> Result<TwistPolynomial> {
    check_lattice_size(d.size())?;
    let mut counts = vec![0u64; d.size() + 1];
    for a in 0..1u64 << d.size() {
        counts[twist_width(d, a)] += 1;
    }
    Ok(from_counts(&counts))
}

fn from_counts(counts: &[u64]) -> TwistPolynomial {
    TwistPolynomial::from_terms(counts.iter().enumerate().map(|(k, &c)| (k as u32, c)))
}

/// For every `A ⊆ E`, the largest cardinality of a feasible set inside `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictionWidthTable {
    size: usize,
    maxcard: Vec<u8>,
}

impl RestrictionWidthTable {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, a: SubsetMask) -> usize {
        self.get_bits(a.bits())
    }

    #[inline]
    pub fn get_bits(&self, a: u64) -> usize {
        self.maxcard[a as usize] as usize
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.maxcard
    }
}

const MISSING: i8 = -1;

pub fn restriction_width_table(d: &DeltaMatroid) -> Result<RestrictionWidthTable> {
    check_lattice_size(d.size())?;
    if !d.contains_bits(0) {
        return Err(Error::NotNormal);
    }
    let n = d.size();
    let mut table = vec![MISSING; 1 << n];
    for &f in d.feasible_bits() {
        table[f as usize] = f.count_ones() as i8;
    }
    // push each value up to every superset, one coordinate at a time
    for i in 0..n {
        let bit = 1usize << i;
        for a in 0..1usize << n {
            if a & bit != 0 {
                let below = table[a ^ bit];
                if below > table[a] {
                    table[a] = below;
                }
            }
        }
    }
    // ∅ is feasible, so every entry is now at least 0
    Ok(RestrictionWidthTable { size: n, maxcard: table.into_iter().map(|v| v as u8).collect() })
}

/// Twist polynomial of a normal delta-matroid through
/// `w(D*A) = maxcard(A) + maxcard(Aᶜ)`. Non-normal input is rejected;
/// see [`normalize`].
pub fn twist_polynomial_fast(d: &DeltaMatroid) -> Result<TwistPolynomial> {
    let table = restriction_width_table(d)?;
    let full = low_bits(d.size());
    let mut counts = vec![0u64; d.size() + 1];
    for a in 0..=full {
        counts[table.get_bits(a) + table.get_bits(full ^ a)] += 1;
    }
    Ok(from_counts(&counts))
}

/// Twists by the canonically smallest feasible set, which makes `∅`
/// feasible. Returns the normal twist and the set used.
pub fn normalize(d: &DeltaMatroid) -> (DeltaMatroid, SubsetMask) {
    let first = SubsetMask::new(d.feasible_bits()[0], d.size()).expect("feasible sets fit the ground set");
    if first.is_empty() {
        return (d.clone(), first);
    }
    (ops::twist(d, first).expect("mask fits"), first)
}

/// Fast path after normalizing; valid for every delta-matroid because the
/// twist polynomial is invariant under twisting.
pub fn twist_polynomial(d: &DeltaMatroid) -> Result<TwistPolynomial> {
    let (normal, _) = normalize(d);
    twist_polynomial_fast(&normal)
}

/// `(m, k)` when the polynomial is the single term `m z^k`.
pub fn is_monomial(p: &TwistPolynomial) -> Option<(u64, u32)> {
    if p.term_count() == 1 {
        p.terms().next().map(|(e, c)| (c, e))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{delta_matroid_of_matrix, Gf2SymMatrix};

    fn dm(n: usize, fam: &[&[usize]]) -> DeltaMatroid {
        DeltaMatroid::numbered(n, fam).unwrap()
    }

    fn k3() -> DeltaMatroid {
        dm(3, &[&[], &[1, 2], &[1, 3], &[2, 3]])
    }

    #[test]
    fn display_format() {
        assert_eq!(TwistPolynomial::from_terms([(2, 2), (1, 2)]).to_string(), "2*z^2 + 2*z");
        assert_eq!(TwistPolynomial::from_terms([(0, 2), (2, 2)]).to_string(), "2*z^2 + 2");
        assert_eq!(TwistPolynomial::from_terms([(0, 1)]).to_string(), "1");
        assert_eq!(TwistPolynomial::from_terms([(3, 0)]).to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let p = TwistPolynomial::from_terms([(0, 2), (2, 2)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"terms":[{"exp":2,"coef":2},{"exp":0,"coef":2}]}"#);
        assert_eq!(TwistPolynomial::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn naive_examples() {
        assert_eq!(twist_polynomial_naive(&dm(1, &[&[], &[1]])).unwrap().to_string(), "2*z");
        assert_eq!(twist_polynomial_naive(&dm(0, &[&[]])).unwrap().to_string(), "1");
        assert_eq!(twist_polynomial_naive(&dm(2, &[&[], &[1, 2]])).unwrap().to_string(), "2*z^2 + 2");
    }

    #[test]
    fn restriction_table_examples() {
        let t = restriction_width_table(&k3()).unwrap();
        assert_eq!(t.get_bits(0b011), 2);
        assert_eq!(t.get_bits(0b001), 0);
        assert_eq!(t.get_bits(0b111), 2);
        assert_eq!(t.get_bits(0), 0);
        let t = restriction_width_table(&dm(1, &[&[], &[1]])).unwrap();
        assert_eq!(t.get_bits(1), 1);
        assert_eq!(restriction_width_table(&dm(1, &[&[1]])), Err(Error::NotNormal));
    }

    #[test]
    fn fast_examples() {
        assert_eq!(twist_polynomial_fast(&k3()).unwrap().to_string(), "8*z^2");
        let c = Gf2SymMatrix::from_rows(&[&[1, 1], &[1, 0]]).unwrap();
        let d = delta_matroid_of_matrix(&c).unwrap();
        assert_eq!(d, dm(2, &[&[], &[1], &[1, 2]]));
        assert_eq!(twist_polynomial_fast(&d).unwrap().to_string(), "2*z^2 + 2*z");
        assert_eq!(twist_polynomial_fast(&dm(1, &[&[], &[1]])).unwrap().to_string(), "2*z");
        assert_eq!(twist_polynomial_fast(&dm(2, &[&[1], &[2]])), Err(Error::NotNormal));
    }

    #[test]
    fn normalize_examples() {
        let (d, a) = normalize(&dm(2, &[&[1], &[2]]));
        assert_eq!(d, dm(2, &[&[], &[1, 2]]));
        assert_eq!(a.bits(), 0b01);
        let k = k3();
        assert_eq!(normalize(&k), (k.clone(), SubsetMask::empty(3)));
        let (d, a) = normalize(&dm(1, &[&[1]]));
        assert_eq!(d, dm(1, &[&[]]));
        assert_eq!(a.bits(), 1);
    }

    #[test]
    fn monomial_detection() {
        assert_eq!(is_monomial(&TwistPolynomial::from_terms([(1, 2)])), Some((2, 1)));
        assert_eq!(is_monomial(&TwistPolynomial::from_terms([(2, 2), (0, 2)])), None);
        assert_eq!(is_monomial(&TwistPolynomial::from_terms([(0, 1)])), Some((1, 0)));
        assert_eq!(is_monomial(&TwistPolynomial::new()), None);
    }

    #[test]
    fn product() {
        let a = TwistPolynomial::from_terms([(1, 2)]);
        let b = TwistPolynomial::from_terms([(2, 8)]);
        assert_eq!((&a * &b).to_string(), "16*z^3");
        let c = TwistPolynomial::from_terms([(2, 2), (0, 2)]);
        assert_eq!((&c * &c).to_string(), "4*z^4 + 8*z^2 + 4");
    }
}
