//! Serde helpers: big integers go out as bare JSON numbers, never as digit
//! arrays or strings.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{ser::Error as _, Serialize, Serializer};

pub(crate) fn bigint<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    serde_json::Number::from_str(&value.to_string())
        .map_err(S::Error::custom)?
        .serialize(s)
}

pub(crate) fn to_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("domain records always serialize")
}
