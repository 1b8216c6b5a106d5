use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::poly::Poly;
use crate::rational::{format_rational, Rational};

/// A concrete value backing a verdict: a point or a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessValue {
    Rational(Rational),
    Poly(Poly),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub description: String,
    pub value: WitnessValue,
}

impl Witness {
    pub fn rational(description: impl Into<String>, r: Rational) -> Self {
        Witness {
            description: description.into(),
            value: WitnessValue::Rational(r),
        }
    }

    pub fn poly(description: impl Into<String>, p: Poly) -> Self {
        Witness {
            description: description.into(),
            value: WitnessValue::Poly(p),
        }
    }

    pub fn text(description: impl Into<String>, t: impl Into<String>) -> Self {
        Witness {
            description: description.into(),
            value: WitnessValue::Text(t.into()),
        }
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(2))?;
        m.serialize_entry("description", &self.description)?;
        match &self.value {
            WitnessValue::Rational(r) => m.serialize_entry("rational", &format_rational(r))?,
            WitnessValue::Poly(p) => m.serialize_entry("poly", p)?,
            WitnessValue::Text(t) => m.serialize_entry("text", t)?,
        }
        m.end()
    }
}
