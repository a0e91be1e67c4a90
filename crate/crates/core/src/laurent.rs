//! Exact arithmetic over ℤ[s, s⁻¹], 2×2 matrices over it, the star
//! involution s̄ = s⁻¹, and the representation identities verified in exact
//! arithmetic: the braid relation, J-unitarity of the Squier generators, and
//! the diagonal similarity between the reduced and Squier pictures.
//!
//! The Burau parameter t never appears as a second variable: it is always the
//! monomial s², so a single-variable ring suffices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::braid::BraidWord;

/// Sparse Laurent polynomial with integer coefficients, keyed by the exponent
/// of s. Canonical form: no stored zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// coeff · s^exp
    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if coeff != 0 {
            coeffs.insert(exp, coeff);
        }
        Self { coeffs }
    }

    /// The variable s itself.
    pub fn s() -> Self {
        Self::monomial(1, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0) == Some(&1)
    }

    /// Iterates (exponent, coefficient) pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    /// The star involution on coefficients: s ↦ s⁻¹ (exponent negation;
    /// integer coefficients are self-conjugate).
    pub fn involute(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// Multiplicative inverse when the polynomial is a unit of ℤ[s, s⁻¹],
    /// i.e. a single term ±s^k. Returns None otherwise.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (&e, &c) = self.coeffs.iter().next().unwrap();
        match c {
            1 | -1 => Some(Self::monomial(-e, c)),
            _ => None,
        }
    }

    /// (−t)^e = (−s²)^e for any integer e. This is the determinant of a
    /// reduced Burau word with exponent sum e.
    pub fn neg_t_power(e: i64) -> Self {
        let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(2 * e, sign)
    }

    fn insert_add(coeffs: &mut BTreeMap<i64, i64>, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = coeffs.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            coeffs.remove(&exp);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        for (&e, &c) in &rhs.coeffs {
            LaurentPoly::insert_add(&mut coeffs, e, c);
        }
        LaurentPoly { coeffs }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        for (&e, &c) in &rhs.coeffs {
            LaurentPoly::insert_add(&mut coeffs, e, -c);
        }
        LaurentPoly { coeffs }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = BTreeMap::new();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &rhs.coeffs {
                LaurentPoly::insert_add(&mut coeffs, e1 + e2, c1 * c2);
            }
        }
        LaurentPoly { coeffs }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (&e, &c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (mag, e) {
                (m, 0) => write!(f, "{m}")?,
                (1, 1) => write!(f, "s")?,
                (1, e) => write!(f, "s^{e}")?,
                (m, 1) => write!(f, "{m}s")?,
                (m, e) => write!(f, "{m}s^{e}")?,
            }
        }
        Ok(())
    }
}

/// 2×2 matrix over ℤ[s, s⁻¹].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    entries: [[LaurentPoly; 2]; 2],
}

impl LaurentMatrix {
    pub fn new(entries: [[LaurentPoly; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn identity() -> Self {
        Self::new([
            [LaurentPoly::one(), LaurentPoly::zero()],
            [LaurentPoly::zero(), LaurentPoly::one()],
        ])
    }

    pub fn entry(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row][col]
    }

    pub fn transpose(&self) -> Self {
        Self::new([
            [self.entries[0][0].clone(), self.entries[1][0].clone()],
            [self.entries[0][1].clone(), self.entries[1][1].clone()],
        ])
    }

    fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self::new([
            [f(&self.entries[0][0]), f(&self.entries[0][1])],
            [f(&self.entries[1][0]), f(&self.entries[1][1])],
        ])
    }

    /// Entry-wise involution without transposition.
    pub fn involute_entries(&self) -> Self {
        self.map(|p| p.involute())
    }

    /// The star involution: entry-wise s ↦ s⁻¹ followed by transposition.
    pub fn star(&self) -> Self {
        self.involute_entries().transpose()
    }

    pub fn scale(&self, factor: &LaurentPoly) -> Self {
        self.map(|p| p * factor)
    }

    pub fn determinant(&self) -> LaurentPoly {
        &(&self.entries[0][0] * &self.entries[1][1])
            - &(&self.entries[0][1] * &self.entries[1][0])
    }

    /// Exact inverse via the adjugate, valid when the determinant is a unit
    /// ±s^k of the ring. Both Burau variants have unit determinants (−t and
    /// −s²), so generator inverses stay inside ℤ[s, s⁻¹].
    pub fn adjugate_inverse(&self) -> Option<Self> {
        let det_inv = self.determinant().unit_inverse()?;
        let adjugate = Self::new([
            [self.entries[1][1].clone(), -&self.entries[0][1]],
            [-&self.entries[1][0], self.entries[0][0].clone()],
        ]);
        Some(adjugate.scale(&det_inv))
    }
}

impl Mul for &LaurentMatrix {
    type Output = LaurentMatrix;

    fn mul(self, rhs: &LaurentMatrix) -> LaurentMatrix {
        let mut out = [
            [LaurentPoly::zero(), LaurentPoly::zero()],
            [LaurentPoly::zero(), LaurentPoly::zero()],
        ];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let mut acc = LaurentPoly::zero();
                for k in 0..2 {
                    acc = &acc + &(&self.entries[i][k] * &rhs.entries[k][j]);
                }
                *slot = acc;
            }
        }
        LaurentMatrix::new(out)
    }
}

/// Which picture of the representation a matrix lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Reduced Burau over ℤ[t, t⁻¹] with t ≡ s².
    Reduced,
    /// Squier's rescaling over ℤ[s, s⁻¹], J-unitary for the form below.
    Squier,
}

fn p(exp: i64, coeff: i64) -> LaurentPoly {
    LaurentPoly::monomial(exp, coeff)
}

/// The generator matrix for σ_index (positive crossing) in the given variant.
pub fn positive_generator(index: u8, variant: Variant) -> LaurentMatrix {
    match (variant, index) {
        // ψ(σ1) = (−t 1; 0 1), ψ(σ2) = (1 0; t −t), t ≡ s²
        (Variant::Reduced, 1) => LaurentMatrix::new([
            [p(2, -1), p(0, 1)],
            [p(0, 0), p(0, 1)],
        ]),
        (Variant::Reduced, 2) => LaurentMatrix::new([
            [p(0, 1), p(0, 0)],
            [p(2, 1), p(2, -1)],
        ]),
        // β1 = (−s² s; 0 1), β2 = (1 0; s −s²)
        (Variant::Squier, 1) => LaurentMatrix::new([
            [p(2, -1), p(1, 1)],
            [p(0, 0), p(0, 1)],
        ]),
        (Variant::Squier, 2) => LaurentMatrix::new([
            [p(0, 1), p(0, 0)],
            [p(1, 1), p(2, -1)],
        ]),
        _ => panic!("B3 has generators 1 and 2 only"),
    }
}

/// Generator matrix for σ_index^sign; negative signs go through the exact
/// adjugate inverse.
pub fn generator_matrix(index: u8, sign: i8, variant: Variant) -> LaurentMatrix {
    let m = positive_generator(index, variant);
    if sign > 0 {
        m
    } else {
        m.adjugate_inverse()
            .expect("generator determinants are units")
    }
}

/// Image of a braid word: the product of generator matrices in word order.
/// The identity word maps to the identity matrix.
pub fn evaluate_word(word: &BraidWord, variant: Variant) -> LaurentMatrix {
    let mut acc = LaurentMatrix::identity();
    for g in word.letters() {
        acc = &acc * &generator_matrix(g.index(), g.sign(), variant);
    }
    acc
}

/// Squier's Hermitian form J(s) = (s+s⁻¹)·I − (0 1; 1 0).
pub fn squier_form() -> LaurentMatrix {
    let diag = &p(1, 1) + &p(-1, 1);
    LaurentMatrix::new([
        [diag.clone(), p(0, -1)],
        [p(0, -1), diag],
    ])
}

/// D(s) = diag(1, s⁻¹), the rescaling connecting the two pictures.
pub fn scaling_matrix() -> LaurentMatrix {
    LaurentMatrix::new([
        [p(0, 1), p(0, 0)],
        [p(0, 0), p(-1, 1)],
    ])
}

/// True iff m* · J · m = J holds exactly.
pub fn preserves_squier_form(m: &LaurentMatrix) -> bool {
    let j = squier_form();
    &(&m.star() * &j) * m == j
}

/// The braid relation σ₁σ₂σ₁ = σ₂σ₁σ₂, checked as exact matrix equality.
pub fn check_braid_relation(variant: Variant) -> bool {
    let w121 = BraidWord::parse("1 2 1").expect("literal word");
    let w212 = BraidWord::parse("2 1 2").expect("literal word");
    evaluate_word(&w121, variant) == evaluate_word(&w212, variant)
}

/// J-unitarity of both Squier generators, checked exactly.
pub fn check_j_unitarity() -> bool {
    (1..=2).all(|i| preserves_squier_form(&positive_generator(i, Variant::Squier)))
}

/// The diagonal similarity ψ(σᵢ) = D⁻¹ βᵢ D, together with the conjugated
/// form J̃ = D* J D being preserved by the reduced generators.
pub fn check_similarity() -> bool {
    let d = scaling_matrix();
    let d_inv = d.adjugate_inverse().expect("D is a unit diagonal");
    let j_tilde = &(&d.star() * &squier_form()) * &d;
    (1..=2).all(|i| {
        let psi = positive_generator(i, Variant::Reduced);
        let beta = positive_generator(i, Variant::Squier);
        let similar = &(&d_inv * &beta) * &d == psi;
        let preserved = &(&psi.star() * &j_tilde) * &psi == j_tilde;
        similar && preserved
    })
}
