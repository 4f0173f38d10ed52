// SPDX-License-Identifier: Apache-2.0

//! Pauli letters, Pauli strings and canonical Pauli sums.
//!
//! A [`PauliString`] is a complex coefficient times a tensor product of
//! single-qubit letters, stored sparsely: identity letters are never kept.
//! A [`PauliSum`] is a canonical linear combination of strings on a fixed
//! number of qubits. Canonical means like terms are merged, terms whose
//! coefficient magnitude falls below [`DROP_TOLERANCE`] are removed, and
//! terms are ordered lexicographically by `(qubit, letter)` with `I < X < Y < Z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::ser::{Serialize, SerializeMap, SerializeSeq, SerializeStruct, Serializer};

use crate::error::{Error, Result};

/// Coefficients (and coefficient parts) smaller than this are dropped.
pub const DROP_TOLERANCE: f64 = 1e-12;

/// Largest imaginary residue tolerated in a vacuum expectation value.
pub const HERMITICITY_TOLERANCE: f64 = 1e-9;

const I_POWERS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    pub const ALL: [PauliLetter; 4] = [PauliLetter::I, PauliLetter::X, PauliLetter::Y, PauliLetter::Z];

    pub fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(PauliLetter::I),
            'X' => Some(PauliLetter::X),
            'Y' => Some(PauliLetter::Y),
            'Z' => Some(PauliLetter::Z),
            _ => None,
        }
    }

    /// Product `self * other` as (power of `i`, letter).
    fn mul_power(self, other: PauliLetter) -> (u8, PauliLetter) {
        use PauliLetter::*;
        match (self, other) {
            (I, b) => (0, b),
            (a, I) => (0, a),
            (X, X) | (Y, Y) | (Z, Z) => (0, I),
            (X, Y) => (1, Z),
            (Y, Z) => (1, X),
            (Z, X) => (1, Y),
            (Y, X) => (3, Z),
            (Z, Y) => (3, X),
            (X, Z) => (3, Y),
        }
    }
}

impl fmt::Display for PauliLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Returns `(phase, c)` with `a * b = phase * c`; the phase is one of `1, i, -1, -i`.
pub fn letter_mul(a: PauliLetter, b: PauliLetter) -> (Complex64, PauliLetter) {
    let (power, letter) = a.mul_power(b);
    (I_POWERS[power as usize], letter)
}

type Support = Vec<(usize, PauliLetter)>;

/// Multiplies two sorted supports, returning the accumulated power of `i`.
fn mul_support(a: &[(usize, PauliLetter)], b: &[(usize, PauliLetter)]) -> (u8, Support) {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut power = 0u8;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (qa, la) = a[i];
        let (qb, lb) = b[j];
        if qa < qb {
            out.push((qa, la));
            i += 1;
        } else if qb < qa {
            out.push((qb, lb));
            j += 1;
        } else {
            let (p, l) = la.mul_power(lb);
            power = (power + p) % 4;
            if l != PauliLetter::I {
                out.push((qa, l));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    (power, out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PauliString {
    coeff: Complex64,
    letters: Support,
}

impl PauliString {
    pub fn identity(coeff: Complex64) -> Self {
        PauliString {
            coeff,
            letters: Vec::new(),
        }
    }

    pub fn single(coeff: Complex64, qubit: usize, letter: PauliLetter) -> Self {
        Self::new(coeff, [(qubit, letter)])
    }

    /// Builds a string from `(qubit, letter)` pairs in any order. Identity
    /// letters are elided; repeated qubits are multiplied left to right.
    pub fn new(coeff: Complex64, letters: impl IntoIterator<Item = (usize, PauliLetter)>) -> Self {
        let mut out = PauliString::identity(coeff);
        for (q, l) in letters {
            if l == PauliLetter::I {
                continue;
            }
            out = out.mul(&PauliString {
                coeff: Complex64::new(1.0, 0.0),
                letters: vec![(q, l)],
            });
        }
        out
    }

    /// Parses a dense label such as `"XIZ"`, where character `k` is qubit `k`.
    pub fn from_label(coeff: Complex64, label: &str) -> Option<Self> {
        let mut letters = Vec::new();
        for (q, c) in label.chars().enumerate() {
            letters.push((q, PauliLetter::from_char(c)?));
        }
        Some(Self::new(coeff, letters))
    }

    pub fn coeff(&self) -> Complex64 {
        self.coeff
    }

    /// Non-identity letters in increasing qubit order.
    pub fn letters(&self) -> &[(usize, PauliLetter)] {
        &self.letters
    }

    pub fn letter(&self, qubit: usize) -> PauliLetter {
        self.letters
            .binary_search_by_key(&qubit, |&(q, _)| q)
            .map(|idx| self.letters[idx].1)
            .unwrap_or(PauliLetter::I)
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Highest qubit index touched, if any.
    pub fn max_qubit(&self) -> Option<usize> {
        self.letters.last().map(|&(q, _)| q)
    }

    pub fn mul(&self, other: &PauliString) -> PauliString {
        let (power, letters) = mul_support(&self.letters, &other.letters);
        PauliString {
            coeff: self.coeff * other.coeff * I_POWERS[power as usize],
            letters,
        }
    }

    pub fn scaled(&self, factor: Complex64) -> PauliString {
        PauliString {
            coeff: self.coeff * factor,
            letters: self.letters.clone(),
        }
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let mut anti = 0usize;
        let (mut i, mut j) = (0, 0);
        while i < self.letters.len() && j < other.letters.len() {
            let (qa, la) = self.letters[i];
            let (qb, lb) = other.letters[j];
            match qa.cmp(&qb) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if la != lb {
                        anti += 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        anti.is_multiple_of(2)
    }
}

/// Product of two strings: coefficients multiply and letters combine qubit-wise.
pub fn string_mul(a: &PauliString, b: &PauliString) -> PauliString {
    a.mul(b)
}

fn snap(x: f64) -> f64 {
    // also normalizes -0.0 so serialized output is stable
    if x.abs() < DROP_TOLERANCE {
        0.0
    } else {
        x
    }
}

/// Canonical linear combination of Pauli strings on `n_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: BTreeMap<Support, Complex64>,
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        PauliSum {
            n_qubits,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self::scalar(n_qubits, Complex64::new(1.0, 0.0))
    }

    pub fn scalar(n_qubits: usize, value: Complex64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), value);
        Self::from_map(n_qubits, terms)
    }

    /// A single letter on one qubit. Panics if `qubit >= n_qubits`.
    pub fn letter(n_qubits: usize, qubit: usize, letter: PauliLetter) -> Self {
        assert!(qubit < n_qubits, "qubit {qubit} out of range for {n_qubits} qubits");
        let string = PauliString::single(Complex64::new(1.0, 0.0), qubit, letter);
        Self::from_map(n_qubits, BTreeMap::from([(string.letters, string.coeff)]))
    }

    pub fn from_string(n_qubits: usize, string: PauliString) -> Result<Self> {
        canonicalize(n_qubits, [string])
    }

    fn from_map(n_qubits: usize, mut terms: BTreeMap<Support, Complex64>) -> Self {
        terms.retain(|_, c| {
            *c = Complex64::new(snap(c.re), snap(c.im));
            c.norm() >= DROP_TOLERANCE
        });
        PauliSum { n_qubits, terms }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.is_empty()
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = PauliString> + '_ {
        self.terms.iter().map(|(letters, &coeff)| PauliString {
            coeff,
            letters: letters.clone(),
        })
    }

    /// Coefficient of the term with exactly these letters (identity letters ignored).
    pub fn coeff_of(&self, string: &PauliString) -> Complex64 {
        self.terms
            .get(&string.letters)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    fn check_dims(&self, other: &PauliSum) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(())
    }

    /// Distributive product `self * other`.
    pub fn checked_mul(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check_dims(other)?;
        let mut terms: BTreeMap<Support, Complex64> = BTreeMap::new();
        for (la, &ca) in &self.terms {
            for (lb, &cb) in &other.terms {
                let (power, letters) = mul_support(la, lb);
                *terms.entry(letters).or_default() += ca * cb * I_POWERS[power as usize];
            }
        }
        Ok(Self::from_map(self.n_qubits, terms))
    }

    pub fn checked_add(&self, other: &PauliSum) -> Result<PauliSum> {
        linear_combine(
            self.n_qubits,
            [(Complex64::new(1.0, 0.0), self), (Complex64::new(1.0, 0.0), other)],
        )
    }

    pub fn scale(&self, factor: impl Into<Complex64>) -> PauliSum {
        let factor = factor.into();
        let terms = self.terms.iter().map(|(l, &c)| (l.clone(), c * factor)).collect();
        Self::from_map(self.n_qubits, terms)
    }

    pub fn adjoint(&self) -> PauliSum {
        let terms = self.terms.iter().map(|(l, c)| (l.clone(), c.conj())).collect();
        Self::from_map(self.n_qubits, terms)
    }

    /// Every term coefficient is real to within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    /// Largest coefficient difference between two sums.
    pub fn distance(&self, other: &PauliSum) -> f64 {
        let mut worst: f64 = 0.0;
        for (l, &c) in &self.terms {
            let d = other.terms.get(l).copied().unwrap_or_default();
            worst = worst.max((c - d).norm());
        }
        for (l, &c) in &other.terms {
            if !self.terms.contains_key(l) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }

    pub fn approx_eq(&self, other: &PauliSum, tol: f64) -> bool {
        self.n_qubits == other.n_qubits && self.distance(other) <= tol
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &PauliSum) -> Result<PauliSum> {
        let ab = self.checked_mul(other)?;
        let ba = other.checked_mul(self)?;
        Ok(&ab - &ba)
    }

    /// Complex expectation value in `|0...0>`.
    pub fn vacuum_expectation_complex(&self) -> Complex64 {
        self.terms
            .iter()
            .filter(|(letters, _)| letters.iter().all(|&(_, l)| l == PauliLetter::Z))
            .map(|(_, &c)| c)
            .sum()
    }

    /// Expectation value in `|0...0>`: only strings made of `I` and `Z` contribute, each with +1.
    pub fn vacuum_expectation(&self) -> Result<f64> {
        let value = self.vacuum_expectation_complex();
        if value.im.abs() > HERMITICITY_TOLERANCE {
            return Err(Error::NotHermitian { residue: value.im });
        }
        Ok(value.re)
    }
}

/// Merges like terms, drops negligible coefficients and orders the result.
pub fn canonicalize(n_qubits: usize, terms: impl IntoIterator<Item = PauliString>) -> Result<PauliSum> {
    let mut map: BTreeMap<Support, Complex64> = BTreeMap::new();
    for term in terms {
        if let Some(q) = term.max_qubit() {
            if q >= n_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, n_qubits });
            }
        }
        *map.entry(term.letters).or_default() += term.coeff;
    }
    Ok(PauliSum::from_map(n_qubits, map))
}

/// Weighted sum `Σ w_k A_k`, canonicalized.
pub fn linear_combine<'a, W>(n_qubits: usize, pairs: impl IntoIterator<Item = (W, &'a PauliSum)>) -> Result<PauliSum>
where
    W: Into<Complex64>,
{
    let mut map: BTreeMap<Support, Complex64> = BTreeMap::new();
    for (weight, sum) in pairs {
        if sum.n_qubits != n_qubits {
            return Err(Error::DimensionMismatch {
                left: n_qubits,
                right: sum.n_qubits,
            });
        }
        let weight = weight.into();
        for (letters, &c) in &sum.terms {
            *map.entry(letters.clone()).or_default() += weight * c;
        }
    }
    Ok(PauliSum::from_map(n_qubits, map))
}

/// Panics on dimension mismatch; use [`PauliSum::checked_mul`] for fallible code.
impl Mul for &PauliSum {
    type Output = PauliSum;

    fn mul(self, rhs: &PauliSum) -> PauliSum {
        self.checked_mul(rhs).expect("PauliSum dimension mismatch")
    }
}

impl Add for &PauliSum {
    type Output = PauliSum;

    fn add(self, rhs: &PauliSum) -> PauliSum {
        self.checked_add(rhs).expect("PauliSum dimension mismatch")
    }
}

impl Sub for &PauliSum {
    type Output = PauliSum;

    fn sub(self, rhs: &PauliSum) -> PauliSum {
        linear_combine(self.n_qubits, [(1.0, self), (-1.0, rhs)]).expect("PauliSum dimension mismatch")
    }
}

impl Neg for &PauliSum {
    type Output = PauliSum;

    fn neg(self) -> PauliSum {
        self.scale(-1.0)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{:+}i)", self.coeff.re, self.coeff.im)?;
        if self.letters.is_empty() {
            return write!(f, "I");
        }
        for (q, l) in &self.letters {
            write!(f, "{l}{q}")?;
        }
        Ok(())
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, term) in self.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

struct Letters<'a>(&'a [(usize, PauliLetter)]);

impl Serialize for Letters<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (q, l) in self.0 {
            map.serialize_entry(&q.to_string(), &l.as_char().to_string())?;
        }
        map.end()
    }
}

impl Serialize for PauliString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PauliString", 2)?;
        s.serialize_field("coeff", &[snap(self.coeff.re), snap(self.coeff.im)])?;
        s.serialize_field("letters", &Letters(&self.letters))?;
        s.end()
    }
}

/// Serialized as a list of `{"coeff": [re, im], "letters": {"<qubit>": "X|Y|Z"}}` in canonical order.
impl Serialize for PauliSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for term in self.iter() {
            seq.serialize_element(&term)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use PauliLetter::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z_sum(n: usize, q: usize) -> PauliSum {
        PauliSum::letter(n, q, Z)
    }

    #[test]
    fn letter_products() {
        assert_eq!(letter_mul(X, Y), (c(0.0, 1.0), Z));
        assert_eq!(letter_mul(X, X), (c(1.0, 0.0), I));
        assert_eq!(letter_mul(I, Z), (c(1.0, 0.0), Z));
        assert_eq!(letter_mul(Z, Y), (c(0.0, -1.0), X));
    }

    #[test]
    fn letter_table_matches_levi_civita() {
        // σi σj = δij I + i Σ εijk σk on the three non-identity letters
        let xyz = [X, Y, Z];
        for (i, &a) in xyz.iter().enumerate() {
            for (j, &b) in xyz.iter().enumerate() {
                let (phase, letter) = letter_mul(a, b);
                if i == j {
                    assert_eq!((phase, letter), (c(1.0, 0.0), I));
                } else {
                    let k = 3 - i - j;
                    let eps = if (j + 3 - i) % 3 == 1 { 1.0 } else { -1.0 };
                    assert_eq!(letter, xyz[k]);
                    assert_eq!(phase, c(0.0, eps));
                }
            }
        }
    }

    #[test]
    fn string_products() {
        let x0 = PauliString::single(c(1.0, 0.0), 0, X);
        assert!(string_mul(&x0, &x0).is_identity());
        assert_eq!(string_mul(&x0, &x0).coeff(), c(1.0, 0.0));

        let xz = PauliString::new(c(1.0, 0.0), [(0, X), (1, Z)]);
        let y0 = PauliString::single(c(1.0, 0.0), 0, Y);
        let p = string_mul(&xz, &y0);
        assert_eq!(p.coeff(), c(0.0, 1.0));
        assert_eq!(p.letters(), &[(0, Z), (1, Z)]);

        let two = PauliString::identity(c(2.0, 0.0));
        let z5 = PauliString::single(c(3.0, 0.0), 5, Z);
        let p = string_mul(&two, &z5);
        assert_eq!(p.coeff(), c(6.0, 0.0));
        assert_eq!(p.letters(), &[(5, Z)]);
    }

    #[test]
    fn identity_letters_are_elided() {
        let s = PauliString::new(c(1.0, 0.0), [(0, I), (3, Y), (1, I)]);
        assert_eq!(s.letters(), &[(3, Y)]);
        assert_eq!(s.letter(0), I);
        assert_eq!(s.letter(3), Y);
        let s = PauliString::from_label(c(1.0, 0.0), "IXIZ").unwrap();
        assert_eq!(s.letters(), &[(1, X), (3, Z)]);
    }

    #[test]
    fn rotated_component_squares_to_identity() {
        let (cc, ss) = (-1.0 / 3.0, 8f64.sqrt() / 3.0);
        let a = linear_combine(1, [(cc, &PauliSum::letter(1, 0, X)), (ss, &PauliSum::letter(1, 0, Z))]).unwrap();
        let sq = &a * &a;
        assert!(sq.approx_eq(&PauliSum::identity(1), 1e-12), "{sq}");
    }

    #[test]
    fn product_with_identity_and_disjoint_support() {
        let a = linear_combine(2, [(0.5, &z_sum(2, 0)), (0.25, &PauliSum::letter(2, 1, X))]).unwrap();
        assert_eq!(&a * &PauliSum::identity(2), a);
        let zz = &z_sum(2, 0) * &z_sum(2, 1);
        assert_eq!(zz.len(), 1);
        let term = zz.iter().next().unwrap();
        assert_eq!(term.letters(), &[(0, Z), (1, Z)]);
        assert_eq!(term.coeff(), c(1.0, 0.0));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = PauliSum::identity(2);
        let b = PauliSum::identity(3);
        assert!(matches!(
            a.checked_mul(&b),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        ));
        assert!(linear_combine(2, [(1.0, &a), (1.0, &b)]).is_err());
    }

    #[test]
    fn linear_combinations() {
        let plus = linear_combine(1, [(0.5, &PauliSum::identity(1)), (0.5, &z_sum(1, 0))]).unwrap();
        assert_eq!(plus.vacuum_expectation().unwrap(), 1.0);

        let a = PauliSum::letter(2, 1, Y);
        assert!(linear_combine(2, [(1.0, &a), (-1.0, &a)]).unwrap().is_zero());

        let zi = z_sum(2, 0);
        let xz = &PauliSum::letter(2, 0, X) * &z_sum(2, 1);
        let s = linear_combine(2, [(1.0 / 3.0, &zi), (2.0 / 3.0, &xz)]).unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn canonicalize_merges_and_drops() {
        let x0 = PauliString::single(c(1.0, 0.0), 0, X);
        let s = canonicalize(1, [x0.clone(), x0.clone()]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.coeff_of(&x0), c(2.0, 0.0));

        let tiny = PauliString::single(c(1e-15, 0.0), 0, Z);
        assert!(canonicalize(1, [tiny]).unwrap().is_zero());

        let again = canonicalize(1, s.iter()).unwrap();
        assert_eq!(again, s);

        assert!(matches!(
            canonicalize(2, [PauliString::single(c(1.0, 0.0), 2, Z)]),
            Err(Error::QubitOutOfRange { qubit: 2, n_qubits: 2 })
        ));
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let terms = [
            PauliString::new(c(1.0, 0.0), [(1, X)]),
            PauliString::new(c(1.0, 0.0), [(0, Z)]),
            PauliString::new(c(1.0, 0.0), [(0, X), (1, Y)]),
            PauliString::identity(c(1.0, 0.0)),
            PauliString::new(c(1.0, 0.0), [(0, X)]),
        ];
        let s = canonicalize(2, terms).unwrap();
        let order: Vec<_> = s.iter().map(|t| t.letters().to_vec()).collect();
        assert_eq!(
            order,
            vec![vec![], vec![(0, X)], vec![(0, X), (1, Y)], vec![(0, Z)], vec![(1, X)]]
        );
    }

    #[test]
    fn vacuum_expectations() {
        let zz = &z_sum(3, 0) * &z_sum(3, 2);
        assert_eq!(zz.vacuum_expectation().unwrap(), 1.0);
        assert_eq!(PauliSum::letter(3, 1, X).vacuum_expectation().unwrap(), 0.0);

        let (cc, ss) = (-1.0 / 3.0, 8f64.sqrt() / 3.0);
        let rz = linear_combine(1, [(cc, &z_sum(1, 0)), (-ss, &PauliSum::letter(1, 0, X))]).unwrap();
        assert!((rz.vacuum_expectation().unwrap() + 1.0 / 3.0).abs() < 1e-15);

        let anti = PauliSum::scalar(1, c(0.0, 1.0));
        assert!(matches!(anti.vacuum_expectation(), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn serialization_shape() {
        let s = linear_combine(
            12,
            [
                (0.5, &z_sum(12, 10)),
                (-0.25, &(&PauliSum::letter(12, 2, X) * &z_sum(12, 10))),
            ],
        )
        .unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"[{"coeff":[-0.25,0.0],"letters":{"2":"X","10":"Z"}},{"coeff":[0.5,0.0],"letters":{"10":"Z"}}]"#
        );
    }
}
