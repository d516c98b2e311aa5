//! Canonical JSON helpers.
//!
//! Integers inside the IEEE-754 safe range are emitted as JSON numbers,
//! anything larger as a decimal string, so unbounded values survive a round
//! trip through any JSON reader.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

const SAFE: i64 = (1 << 53) - 1;

/// Serializes a `BigInt` losslessly.
pub struct JsonInt<'a>(pub &'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) if (-SAFE..=SAFE).contains(&v) => s.serialize_i64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

/// `serialize_with` adapter for `BigInt` fields.
pub fn big<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    JsonInt(v).serialize(s)
}

/// `serialize_with` adapter for `Vec<BigInt>` fields.
pub fn big_seq<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(JsonInt))
}

/// Pretty-printed JSON with sorted object keys and a trailing newline.
pub fn to_canonical_string<T: Serialize>(value: &T) -> String {
    // `serde_json::Value` keeps objects in a BTreeMap, which sorts keys.
    let v = serde_json::to_value(value).expect("report types always serialize");
    let mut out = serde_json::to_string_pretty(&v).expect("values always serialize");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_integers_become_strings() {
        let small = serde_json::to_string(&JsonInt(&BigInt::from(SAFE))).unwrap();
        assert_eq!(small, SAFE.to_string());
        let big = BigInt::from(SAFE) + 1;
        let s = serde_json::to_string(&JsonInt(&big)).unwrap();
        assert_eq!(s, format!("\"{big}\""));
        let neg = -BigInt::from(SAFE) - 1;
        assert!(serde_json::to_string(&JsonInt(&neg)).unwrap().starts_with('"'));
    }

    #[test]
    fn keys_are_sorted() {
        #[derive(Serialize)]
        struct T {
            zeta: u8,
            alpha: u8,
        }
        let s = to_canonical_string(&T { zeta: 1, alpha: 2 });
        assert!(s.find("alpha").unwrap() < s.find("zeta").unwrap());
    }
}
