//! Words in the braid group B₃: parsing, free reduction, and the group
//! operations the representation layer is driven by.
//!
//! The text grammar is whitespace-separated tokens, one per letter: `1`, `2`
//! for the generators σ₁, σ₂ and `1'`, `2'` for their inverses. The empty
//! string is the identity word. The serializer emits the same grammar, so
//! parse ∘ display is the identity on freely reduced words.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One signed generator of B₃: σ₁, σ₂ or an inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BraidGenerator {
    index: u8,
    sign: i8,
}

impl BraidGenerator {
    /// Builds σ_index^sign. Only indices 1 and 2 exist in B₃.
    pub fn new(index: u8, sign: i8) -> Self {
        assert!(index == 1 || index == 2, "B3 has generators 1 and 2 only");
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        Self { index, sign }
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn inverse(&self) -> Self {
        Self {
            index: self.index,
            sign: -self.sign,
        }
    }

    fn cancels(&self, other: &Self) -> bool {
        self.index == other.index && self.sign == -other.sign
    }
}

impl fmt::Display for BraidGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign > 0 {
            write!(f, "{}", self.index)
        } else {
            write!(f, "{}'", self.index)
        }
    }
}

/// A word in B₃ as an ordered letter sequence; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BraidWord {
    letters: Vec<BraidGenerator>,
}

/// Error for a token that does not belong to the braid-word grammar.
/// `position` is the 1-based index of the offending whitespace-separated token.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid braid token `{token}` at position {position}: {reason}")]
pub struct BraidParseError {
    pub token: String,
    pub position: usize,
    pub reason: &'static str,
}

impl BraidWord {
    /// The identity word (no letters).
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_letters(letters: Vec<BraidGenerator>) -> Self {
        Self { letters }
    }

    pub fn letters(&self) -> &[BraidGenerator] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Parses the grammar described in the module docs. Letters are kept in
    /// reading order and are not freely reduced.
    pub fn parse(text: &str) -> Result<Self, BraidParseError> {
        let mut letters = Vec::new();
        for (k, token) in text.split_whitespace().enumerate() {
            let position = k + 1;
            let err = |reason| BraidParseError {
                token: token.to_string(),
                position,
                reason,
            };
            let (digits, sign) = match token.strip_suffix('\'') {
                Some(head) => (head, -1),
                None => (token, 1),
            };
            if digits.chars().any(|c| !c.is_ascii_digit()) {
                return Err(err("expected a generator index optionally followed by `'`"));
            }
            match digits {
                "1" => letters.push(BraidGenerator::new(1, sign)),
                "2" => letters.push(BraidGenerator::new(2, sign)),
                "" => return Err(err("missing generator index")),
                _ => return Err(err("generator index must be 1 or 2")),
            }
        }
        Ok(Self { letters })
    }

    /// Cancels adjacent inverse pairs until none remain. The group element is
    /// unchanged; the result is freely reduced.
    pub fn free_reduce(&self) -> Self {
        let mut stack: Vec<BraidGenerator> = Vec::with_capacity(self.letters.len());
        for &g in &self.letters {
            match stack.last() {
                Some(top) if top.cancels(&g) => {
                    stack.pop();
                }
                _ => stack.push(g),
            }
        }
        Self { letters: stack }
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| !w[0].cancels(&w[1]))
    }

    /// Appends `other` after `self`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self { letters }
    }

    /// Group inverse: reversed order, flipped signs.
    pub fn invert(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|g| g.inverse()).collect(),
        }
    }

    /// Sum of letter signs; the image of the word under B₃ → ℤ.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|g| i64::from(g.sign)).sum()
    }
}

impl FromStr for BraidWord {
    type Err = BraidParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(index: u8, sign: i8) -> BraidGenerator {
        BraidGenerator::new(index, sign)
    }

    #[test]
    fn parses_the_control_word() {
        let w = BraidWord::parse("1 2 1").unwrap();
        assert_eq!(w.letters(), &[g(1, 1), g(2, 1), g(1, 1)]);
    }

    #[test]
    fn empty_text_is_identity() {
        assert_eq!(BraidWord::parse("").unwrap(), BraidWord::identity());
        assert_eq!(BraidWord::parse("  \t ").unwrap(), BraidWord::identity());
    }

    #[test]
    fn parser_does_not_reduce() {
        let w = BraidWord::parse("1 1' 2").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.letters(), &[g(1, 1), g(1, -1), g(2, 1)]);
    }

    #[test]
    fn rejects_bad_tokens_with_position() {
        let err = BraidWord::parse("1 3 2").unwrap_err();
        assert_eq!(err.token, "3");
        assert_eq!(err.position, 2);

        let err = BraidWord::parse("1 2''").unwrap_err();
        assert_eq!(err.token, "2''");
        assert_eq!(err.position, 2);

        let err = BraidWord::parse("1 x1").unwrap_err();
        assert_eq!(err.token, "x1");

        let err = BraidWord::parse("'").unwrap_err();
        assert_eq!(err.reason, "missing generator index");

        assert!(BraidWord::parse("0").is_err());
        assert!(BraidWord::parse("12").is_err());
    }

    #[test]
    fn free_reduce_cancels_adjacent_pairs() {
        let w = BraidWord::from_letters(vec![g(1, 1), g(1, -1), g(2, 1)]);
        assert_eq!(w.free_reduce().letters(), &[g(2, 1)]);
    }

    #[test]
    fn free_reduce_handles_nested_cancellation() {
        let w = BraidWord::from_letters(vec![g(1, 1), g(2, 1), g(2, -1), g(1, -1)]);
        assert_eq!(w.free_reduce(), BraidWord::identity());
    }

    #[test]
    fn free_reduce_keeps_reduced_words() {
        let w = BraidWord::parse("1 2 1").unwrap();
        assert_eq!(w.free_reduce(), w);
    }

    #[test]
    fn invert_reverses_and_flips() {
        let w = BraidWord::from_letters(vec![g(1, 1), g(2, 1)]);
        assert_eq!(w.invert().letters(), &[g(2, -1), g(1, -1)]);
    }

    #[test]
    fn exponent_sum_counts_signs() {
        assert_eq!(BraidWord::parse("1 2 1").unwrap().exponent_sum(), 3);
        assert_eq!(BraidWord::parse("1' 2'").unwrap().exponent_sum(), -2);
        assert_eq!(BraidWord::identity().exponent_sum(), 0);
    }

    fn word_strategy(max_len: usize) -> impl Strategy<Value = BraidWord> {
        prop::collection::vec((1u8..=2, prop_oneof![Just(1i8), Just(-1i8)]), 0..=max_len)
            .prop_map(|ls| {
                BraidWord::from_letters(ls.into_iter().map(|(i, s)| g(i, s)).collect())
            })
    }

    proptest! {
        #[test]
        fn word_times_inverse_reduces_to_identity(w in word_strategy(12)) {
            prop_assert_eq!(w.concat(&w.invert()).free_reduce(), BraidWord::identity());
        }

        #[test]
        fn free_reduce_is_idempotent_and_preserves_exponent(w in word_strategy(12)) {
            let r = w.free_reduce();
            prop_assert!(r.is_freely_reduced());
            prop_assert_eq!(r.free_reduce(), r.clone());
            prop_assert_eq!(r.exponent_sum(), w.exponent_sum());
        }

        #[test]
        fn display_parse_roundtrip(w in word_strategy(12)) {
            let r = w.free_reduce();
            prop_assert_eq!(BraidWord::parse(&r.to_string()).unwrap(), r);
        }
    }
}
