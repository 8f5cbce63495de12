//! Cantor pairing on the naturals and two injections of the rationals into
//! the naturals built from it.
//!
//! The canonical code of `r` is `pair(pair(sgn, num), den)` and the
//! alternative code is `pair(num, pair(sgn, den))`, where `sgn` is 0 for
//! `r >= 0` and 1 for `r < 0`, and `num/den` is the reduced form of `|r|`.
//! Neither map is onto, so decoding checks canonicality and reports
//! [`Error::NotACode`] for naturals outside the image.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{Natural, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EncodingId {
    #[default]
    Canonical,
    Alternative,
}

impl EncodingId {
    pub const ALL: [EncodingId; 2] = [EncodingId::Canonical, EncodingId::Alternative];

    pub fn name(self) -> &'static str {
        match self {
            EncodingId::Canonical => "canonical",
            EncodingId::Alternative => "alternative",
        }
    }
}

impl fmt::Display for EncodingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EncodingId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical" => Ok(EncodingId::Canonical),
            "alternative" => Ok(EncodingId::Alternative),
            other => Err(Error::Parse(format!("unknown encoding {other:?}"))),
        }
    }
}

/// Cantor pairing `(n + p)(n + p + 1)/2 + p`.
pub fn pair(n: &Natural, p: &Natural) -> Natural {
    let s = n + p;
    let triangle = (&s * (&s + 1u32)) >> 1u32;
    triangle + p
}

/// Inverse of [`pair`].
pub fn unpair(c: &Natural) -> (Natural, Natural) {
    // Diagonal index w = floor((sqrt(8c + 1) - 1) / 2).
    let root = ((c << 3u32) + 1u32).sqrt();
    let w: Natural = (root - 1u32) >> 1u32;
    let triangle = (&w * (&w + 1u32)) >> 1u32;
    let p = c - triangle;
    let n = &w - &p;
    (n, p)
}

/// Machine-integer convenience wrapper around [`pair`].
pub fn pair_u64(n: u64, p: u64) -> Natural {
    pair(&Natural::from(n), &Natural::from(p))
}

pub fn encode_rational(r: &Rational, encoding: EncodingId) -> Natural {
    let sgn = Natural::from(r.sign_bit());
    let num = r.numer_abs();
    let den = r.denom();
    match encoding {
        EncodingId::Canonical => pair(&pair(&sgn, &num), &den),
        EncodingId::Alternative => pair(&num, &pair(&sgn, &den)),
    }
}

pub fn decode_rational(c: &Natural, encoding: EncodingId) -> Result<Rational> {
    let (sgn, num, den) = match encoding {
        EncodingId::Canonical => {
            let (head, den) = unpair(c);
            let (sgn, num) = unpair(&head);
            (sgn, num, den)
        }
        EncodingId::Alternative => {
            let (num, tail) = unpair(c);
            let (sgn, den) = unpair(&tail);
            (sgn, num, den)
        }
    };
    let reject = |why: &str| {
        Err(Error::NotACode(format!(
            "{c} under {encoding} decodes to (sign {sgn}, num {num}, den {den}): {why}"
        )))
    };
    if sgn > Natural::one() {
        return reject("sign flag above 1");
    }
    if den.is_zero() {
        return reject("zero denominator");
    }
    if !num.gcd(&den).is_one() {
        return reject("not in lowest terms");
    }
    if num.is_zero() && sgn.is_one() {
        return reject("negative zero");
    }
    Rational::from_parts(sgn.is_one(), num, den)
}

/// Re-encodes a code from one injection into the other.
pub fn translate(c: &Natural, from: EncodingId, to: EncodingId) -> Result<Natural> {
    let r = decode_rational(c, from)?;
    Ok(encode_rational(&r, to))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn nat(n: u64) -> Natural {
        Natural::from(n)
    }

    #[test]
    fn pair_examples() {
        assert_eq!(pair_u64(0, 0), nat(0));
        assert_eq!(pair_u64(1, 0), nat(1));
        assert_eq!(pair_u64(2, 2), nat(12));
    }

    #[test]
    fn unpair_examples() {
        assert_eq!(unpair(&nat(0)), (nat(0), nat(0)));
        assert_eq!(unpair(&nat(12)), (nat(2), nat(2)));
        assert_eq!(unpair(&nat(4)), (nat(1), nat(1)));
    }

    /// Walks the diagonals in order: code c is the c-th pair enumerated.
    #[test]
    fn unpair_matches_diagonal_enumeration() {
        let mut c = 0u64;
        for s in 0..150u64 {
            for p in 0..=s {
                assert_eq!(unpair(&nat(c)), (nat(s - p), nat(p)), "code {c}");
                c += 1;
            }
        }
    }

    #[test]
    fn bijectivity_window() {
        for c in 0..10_000u64 {
            let (n, p) = unpair(&nat(c));
            assert_eq!(pair(&n, &p), nat(c));
        }
        for n in 0..100u64 {
            for p in 0..100u64 {
                assert_eq!(unpair(&pair_u64(n, p)), (nat(n), nat(p)));
            }
        }
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode_rational(&Rational::zero(), EncodingId::Canonical), nat(2));
        assert_eq!(encode_rational(&q(1, 2), EncodingId::Canonical), nat(12));
        assert_eq!(encode_rational(&q(-1, 3), EncodingId::Canonical), nat(31));
        assert_eq!(encode_rational(&q(1, 2), EncodingId::Alternative), nat(26));
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode_rational(&nat(12), EncodingId::Canonical).unwrap(), q(1, 2));
        assert_eq!(decode_rational(&nat(2), EncodingId::Canonical).unwrap(), Rational::zero());
        assert!(matches!(
            decode_rational(&nat(3), EncodingId::Canonical),
            Err(Error::NotACode(_))
        ));
    }

    #[test]
    fn decode_rejects_each_defect() {
        let canon = |s: u64, n: u64, d: u64| pair(&pair_u64(s, n), &nat(d));
        // sign flag 2
        assert!(decode_rational(&canon(2, 1, 1), EncodingId::Canonical).is_err());
        // 2/4 not reduced
        assert!(decode_rational(&canon(0, 2, 4), EncodingId::Canonical).is_err());
        // -0
        assert!(decode_rational(&canon(1, 0, 1), EncodingId::Canonical).is_err());
        // 0/2
        assert!(decode_rational(&canon(0, 0, 2), EncodingId::Canonical).is_err());
        assert!(decode_rational(&canon(0, 3, 7), EncodingId::Canonical).is_ok());
    }

    #[test]
    fn translate_examples() {
        let c = nat(12);
        assert_eq!(translate(&c, EncodingId::Canonical, EncodingId::Canonical).unwrap(), c);
        assert_eq!(
            translate(&c, EncodingId::Canonical, EncodingId::Alternative).unwrap(),
            nat(26)
        );
        assert!(matches!(
            translate(&nat(3), EncodingId::Canonical, EncodingId::Alternative),
            Err(Error::NotACode(_))
        ));
    }

    #[test]
    fn translation_coherence_below_ten_thousand() {
        let mut valid = 0;
        for c in 0..10_000u64 {
            let c = nat(c);
            for from in EncodingId::ALL {
                let Ok(r) = decode_rational(&c, from) else { continue };
                valid += 1;
                for to in EncodingId::ALL {
                    let t = translate(&c, from, to).unwrap();
                    assert_eq!(decode_rational(&t, to).unwrap(), r);
                }
                assert_eq!(translate(&c, from, from).unwrap(), c);
            }
        }
        assert!(valid > 100);
    }

    #[test]
    fn huge_values_do_not_overflow() {
        let big: Natural = "123456789".repeat(300).parse().unwrap();
        let c = pair(&big, &(&big + 7u32));
        assert_eq!(unpair(&c), (big.clone(), &big + 7u32));
        let r = Rational::from_parts(true, big.clone(), &big + 1u32).unwrap();
        for e in EncodingId::ALL {
            assert_eq!(decode_rational(&encode_rational(&r, e), e).unwrap(), r);
        }
    }

    proptest! {
        #[test]
        fn rational_round_trip(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
            let r = q(n, d);
            for e in EncodingId::ALL {
                prop_assert_eq!(decode_rational(&encode_rational(&r, e), e).unwrap(), r.clone());
            }
        }

        #[test]
        fn pair_round_trip(n in any::<u64>(), p in any::<u64>()) {
            prop_assert_eq!(unpair(&pair_u64(n, p)), (nat(n), nat(p)));
        }
    }
}
