//! JSON output with floats at 17 significant digits.

use serde::ser::{Serialize, SerializeSeq, Serializer};
use serde_json::value::RawValue;

use qtop_core::Scalar;

fn raw(x: f64) -> Option<Box<RawValue>> {
    x.is_finite().then(|| RawValue::from_string(format!("{x:.16e}")).expect("float literal"))
}

/// A float written with 17 significant digits; non-finite values are `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        raw(self.0).serialize(s)
    }
}

/// A complex number written as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cx(pub Scalar);

impl Serialize for Cx {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&Num(self.0.re))?;
        seq.serialize_element(&Num(self.0.im))?;
        seq.end()
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        let s = serde_json::to_string(&Cx(Scalar::new(0.1, -2.0))).unwrap();
        assert_eq!(s, "[1.0000000000000001e-1,-2.0000000000000000e0]");
        let back: Vec<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, vec![0.1, -2.0]);
        assert_eq!(serde_json::to_string(&Num(f64::NAN)).unwrap(), "null");
    }
}
