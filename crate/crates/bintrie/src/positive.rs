//! Binary positive numbers, the key type of every map in this crate.
//!
//! A [`Positive`] stores the bits of its value below the leading one, least
//! significant first. The empty sequence is 1; pushing a low 0 bit doubles
//! the value; pushing a low 1 bit doubles and adds one. Every integer >= 1
//! has exactly one representation, zero has none, and a value with b binary
//! digits takes b - 1 stored bits. Tries index their levels by exactly this
//! bit sequence, so the representation is also the root-to-node path type.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

/// A positive integer as its little-endian bit path below the leading one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Positive {
    bits: Vec<bool>,
}

/// Zero (or a negative input upstream) has no binary positive form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotPositiveError;

impl fmt::Display for NotPositiveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "positive numbers start at 1; zero has no representation")
    }
}

impl std::error::Error for NotPositiveError {}

/// The key's bit count is not a whole number of bytes, so it decodes to no
/// byte string.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MalformedEncodingError {
    pub bit_count: usize,
}

impl fmt::Display for MalformedEncodingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bit count {} below the leading one is not a multiple of 8",
            self.bit_count
        )
    }
}

impl std::error::Error for MalformedEncodingError {}

impl Positive {
    /// The number 1: the empty bit path.
    pub fn one() -> Self {
        Positive { bits: Vec::new() }
    }

    /// Builds the value whose path below the leading one is `bits`,
    /// least significant first. Total: every bit vector names a value.
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Positive { bits }
    }

    /// The bit path below the leading one, least significant first.
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Number of binary digits of the value (stored bits plus the leading one).
    pub fn bit_length(&self) -> usize {
        self.bits.len() + 1
    }

    pub fn to_biguint(&self) -> BigUint {
        let mut n = BigUint::default();
        n.set_bit(self.bits.len() as u64, true);
        for (i, &b) in self.bits.iter().enumerate() {
            if b {
                n.set_bit(i as u64, true);
            }
        }
        n
    }

    /// `None` when the value needs more than 64 bits.
    pub fn to_u64(&self) -> Option<u64> {
        if self.bit_length() > 64 {
            return None;
        }
        let mut n: u64 = 1 << self.bits.len();
        for (i, &b) in self.bits.iter().enumerate() {
            if b {
                n |= 1 << i;
            }
        }
        Some(n)
    }

    /// The value whose bit path is this one's reversed. An involution.
    pub fn reverse(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.reverse();
        Positive { bits }
    }

    /// Injects a byte string: byte `i` occupies bit positions `8i..8i + 7`
    /// (low bit first within each byte), and the leading one terminates the
    /// string at position `8n`. The empty string encodes to 1. Strings
    /// sharing a prefix encode to values sharing a low-bit path, which is
    /// what lets a trie share their spines.
    pub fn encode_bytes(bytes: &[u8]) -> Self {
        let mut bits = Vec::with_capacity(bytes.len() * 8);
        for &byte in bytes {
            for i in 0..8 {
                bits.push(byte & (1 << i) != 0);
            }
        }
        Positive { bits }
    }

    /// Inverse of [`Positive::encode_bytes`]. Fails unless the stored bit
    /// count is a multiple of 8.
    pub fn decode_bytes(&self) -> Result<Vec<u8>, MalformedEncodingError> {
        if !self.bits.len().is_multiple_of(8) {
            return Err(MalformedEncodingError {
                bit_count: self.bits.len(),
            });
        }
        let mut bytes = Vec::with_capacity(self.bits.len() / 8);
        for chunk in self.bits.chunks(8) {
            let mut byte = 0u8;
            for (i, &b) in chunk.iter().enumerate() {
                if b {
                    byte |= 1 << i;
                }
            }
            bytes.push(byte);
        }
        Ok(bytes)
    }
}

impl TryFrom<u64> for Positive {
    type Error = NotPositiveError;

    fn try_from(mut n: u64) -> Result<Self, Self::Error> {
        if n == 0 {
            return Err(NotPositiveError);
        }
        let mut bits = Vec::new();
        while n > 1 {
            bits.push(n & 1 == 1);
            n >>= 1;
        }
        Ok(Positive { bits })
    }
}

impl TryFrom<&BigUint> for Positive {
    type Error = NotPositiveError;

    fn try_from(n: &BigUint) -> Result<Self, Self::Error> {
        if n.bits() == 0 {
            return Err(NotPositiveError);
        }
        let bits = (0..n.bits() - 1).map(|i| n.bit(i)).collect();
        Ok(Positive { bits })
    }
}

impl TryFrom<BigUint> for Positive {
    type Error = NotPositiveError;

    fn try_from(n: BigUint) -> Result<Self, Self::Error> {
        Positive::try_from(&n)
    }
}

/// Numeric order: more binary digits means a larger value; at equal length
/// the highest differing bit decides.
impl Ord for Positive {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.bits.len().cmp(&other.bits.len()) {
            Ordering::Equal => {
                for i in (0..self.bits.len()).rev() {
                    if self.bits[i] != other.bits[i] {
                        return if self.bits[i] {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        };
                    }
                }
                Ordering::Equal
            }
            unequal => unequal,
        }
    }
}

impl PartialOrd for Positive {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Positive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_biguint())
    }
}

impl fmt::Debug for Positive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Positive({})", self.to_biguint())
    }
}

impl FromStr for Positive {
    type Err = NotPositiveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let n = BigUint::from_str(s).map_err(|_| NotPositiveError)?;
        Positive::try_from(&n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pos(n: u64) -> Positive {
        Positive::try_from(n).unwrap()
    }

    /// Independent bit oracle: repeated division by two, remainders in order.
    fn bits_by_division(mut n: u64) -> Vec<bool> {
        assert!(n >= 1);
        let mut bits = Vec::new();
        while n > 1 {
            bits.push(n % 2 == 1);
            n /= 2;
        }
        bits
    }

    /// Independent value oracle: Horner evaluation from the leading one down.
    fn value_by_horner(bits: &[bool]) -> u64 {
        let mut acc: u64 = 1;
        for &b in bits.iter().rev() {
            acc = acc * 2 + u64::from(b);
        }
        acc
    }

    #[test]
    fn thirteen_is_one_zero_one_below_the_leading_one() {
        assert_eq!(pos(13).bits(), &[true, false, true]);
        assert_eq!(pos(13).bits(), bits_by_division(13).as_slice());
    }

    #[test]
    fn six_is_zero_one_below_the_leading_one() {
        assert_eq!(pos(6).bits(), &[false, true]);
        assert_eq!(pos(6).bits(), bits_by_division(6).as_slice());
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(Positive::try_from(0u64), Err(NotPositiveError));
        assert_eq!(
            Positive::try_from(&BigUint::default()),
            Err(NotPositiveError)
        );
    }

    #[test]
    fn eight_reads_back_by_horner() {
        let p = Positive::from_bits(vec![false, false, false]);
        assert_eq!(p.to_u64(), Some(8));
        assert_eq!(value_by_horner(p.bits()), 8);
    }

    #[test]
    fn compare_follows_integer_order() {
        assert_eq!(pos(5).cmp(&pos(13)), Ordering::Less);
        assert_eq!(pos(8).cmp(&pos(3)), Ordering::Greater);
        assert_eq!(pos(7).cmp(&pos(7)), Ordering::Equal);
    }

    #[test]
    fn reverse_swaps_bit_ends() {
        // 11 is [1,1,0] below the leading one; reversed that is [0,1,1] = 14.
        assert_eq!(pos(11).reverse(), pos(14));
        assert_eq!(pos(14).reverse(), pos(11));
    }

    #[test]
    fn one_has_no_stored_bits() {
        assert_eq!(Positive::one(), pos(1));
        assert_eq!(Positive::one().bits(), &[] as &[bool]);
        assert_eq!(Positive::one().bit_length(), 1);
    }

    #[test]
    fn roundtrips_through_u64_up_to_two_to_twenty() {
        for n in 1..=(1u64 << 20) {
            assert_eq!(pos(n).to_u64(), Some(n));
        }
    }

    #[test]
    fn empty_string_encodes_to_one() {
        assert_eq!(Positive::encode_bytes(b""), Positive::one());
    }

    #[test]
    fn letter_a_encodes_to_353() {
        let p = Positive::encode_bytes(b"a");
        assert_eq!(p.to_u64(), Some(353));
        assert_eq!(p.decode_bytes().unwrap(), b"a");
    }

    #[test]
    fn non_byte_aligned_values_do_not_decode() {
        assert_eq!(
            pos(5).decode_bytes(),
            Err(MalformedEncodingError { bit_count: 2 })
        );
    }

    #[test]
    fn display_and_parse_agree() {
        let p = Positive::encode_bytes(b"roundtrip");
        assert_eq!(p.to_string().parse::<Positive>().unwrap(), p);
        assert_eq!(pos(13).to_string(), "13");
    }

    #[test]
    fn big_integer_conversions_cover_long_strings() {
        let p = Positive::encode_bytes(b"a string well past eight bytes");
        assert!(p.to_u64().is_none());
        let n = p.to_biguint();
        assert_eq!(Positive::try_from(&n).unwrap(), p);
    }

    proptest! {
        #[test]
        fn u64_roundtrip(n in 1u64..) {
            prop_assert_eq!(pos(n).to_u64(), Some(n));
        }

        #[test]
        fn division_oracle_agrees(n in 1u64..) {
            let p = pos(n);
            let expect = bits_by_division(n);
            prop_assert_eq!(p.bits(), expect.as_slice());
        }

        #[test]
        fn horner_oracle_agrees(bits in prop::collection::vec(any::<bool>(), 0..48)) {
            let p = Positive::from_bits(bits);
            prop_assert_eq!(p.to_u64(), Some(value_by_horner(p.bits())));
        }

        #[test]
        fn order_matches_u64_order(a in 1u64.., b in 1u64..) {
            prop_assert_eq!(pos(a).cmp(&pos(b)), a.cmp(&b));
        }

        #[test]
        fn reverse_is_an_involution(bits in prop::collection::vec(any::<bool>(), 0..64)) {
            let p = Positive::from_bits(bits);
            prop_assert_eq!(p.reverse().reverse(), p);
        }

        #[test]
        fn byte_roundtrip(bytes in prop::collection::vec(any::<u8>(), 0..24)) {
            let p = Positive::encode_bytes(&bytes);
            prop_assert_eq!(p.bit_length(), bytes.len() * 8 + 1);
            prop_assert_eq!(p.decode_bytes().unwrap(), bytes);
        }

        #[test]
        fn encoding_is_injective(a in prop::collection::vec(any::<u8>(), 0..12),
                                 b in prop::collection::vec(any::<u8>(), 0..12)) {
            prop_assert_eq!(Positive::encode_bytes(&a) == Positive::encode_bytes(&b), a == b);
        }

        #[test]
        fn biguint_roundtrip(bits in prop::collection::vec(any::<bool>(), 0..200)) {
            let p = Positive::from_bits(bits);
            prop_assert_eq!(Positive::try_from(&p.to_biguint()).unwrap(), p);
        }
    }
}
