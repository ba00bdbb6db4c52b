//! Exact weights over the five semirings the toolkit computes with.
//!
//! | name        | carrier          | ⊕   | ⊙   | 𝟘   | 𝟙 |
//! |-------------|------------------|-----|-----|-----|---|
//! | `MinPlus`   | ℕ ∪ {∞}          | min | +   | ∞   | 0 |
//! | `MaxPlus`   | ℕ ∪ {−∞}         | max | +   | −∞  | 0 |
//! | `PlusTimes` | ℕ ∪ {∞}          | +   | ×   | 0   | 1 |
//! | `Bool`      | {0, 1}           | ∨   | ∧   | 0   | 1 |
//! | `BoolInf`   | {0, 1, ∞}        | ∨   | ∧   | 0   | 1 |
//!
//! Conventions that the rest of the crate relies on:
//!
//! * Finite values are unbounded naturals ([`BigUint`]); nothing saturates or
//!   wraps. Products under `PlusTimes` genuinely grow like 2^|w|.
//! * [`Value::Infinite`] plays −∞ under `MaxPlus` (the additive identity,
//!   bottom of the order) and +∞ everywhere else (top of the order).
//! * `PlusTimes` extends × by ∞ ⊙ 0 = 0 and ∞ ⊙ n = ∞ for n ≠ 0; `BoolInf`
//!   extends ∧ by ∞ ∧ 0 = 0 and ∞ ∧ n = ∞ for n ∈ {1, ∞}.
//! * Mixing weights from different semirings is a hard error, never a
//!   coercion: every binary operation checks the tags and fails loudly.
//!
//! The quantity abstractions collapse a weight to whether (and how) it can
//! occur at all: [`Weight::abstracted`] maps `MinPlus`/`MaxPlus` onto `Bool`
//! (finite ↦ 1, 𝟘 ↦ 0) and `PlusTimes` onto `BoolInf` (0 ↦ 0, ∞ ↦ ∞,
//! anything else ↦ 1). Both maps are semiring homomorphisms, which the
//! property suite checks exhaustively on sampled values.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

/// Tag identifying which semiring a weight lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Semiring {
    MinPlus,
    MaxPlus,
    PlusTimes,
    Bool,
    BoolInf,
}

impl Semiring {
    /// Name used in the automaton file format and CLI output.
    pub fn name(self) -> &'static str {
        match self {
            Semiring::MinPlus => "min-plus",
            Semiring::MaxPlus => "max-plus",
            Semiring::PlusTimes => "plus-times",
            Semiring::Bool => "bool",
            Semiring::BoolInf => "bool-inf",
        }
    }

    /// Inverse of [`Semiring::name`].
    pub fn from_name(s: &str) -> Option<Semiring> {
        match s {
            "min-plus" => Some(Semiring::MinPlus),
            "max-plus" => Some(Semiring::MaxPlus),
            "plus-times" => Some(Semiring::PlusTimes),
            "bool" => Some(Semiring::Bool),
            "bool-inf" => Some(Semiring::BoolInf),
            _ => None,
        }
    }

    /// The semiring the quantity abstraction maps into.
    pub fn abstraction_target(self) -> Semiring {
        match self {
            Semiring::MinPlus | Semiring::MaxPlus | Semiring::Bool => Semiring::Bool,
            Semiring::PlusTimes | Semiring::BoolInf => Semiring::BoolInf,
        }
    }

    /// Whether [`Value::Infinite`] denotes −∞ (bottom) rather than +∞ (top).
    fn infinite_is_bottom(self) -> bool {
        matches!(self, Semiring::MaxPlus)
    }
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl serde::Serialize for Semiring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Serde helper: naturals serialize as decimal strings so arbitrarily large
/// plus-times values survive JSON round-trips losslessly.
pub fn serialize_biguint<S: serde::Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// Magnitude of a weight, independent of the semiring tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Finite(BigUint),
    Infinite,
}

impl Value {
    pub fn nat(n: u64) -> Value {
        Value::Finite(BigUint::from(n))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Value::Infinite)
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            Value::Finite(n) => Some(n),
            Value::Infinite => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(n) => write!(f, "{n}"),
            Value::Infinite => f.write_str("inf"),
        }
    }
}

impl serde::Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Errors raised by weight construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("semiring mismatch: {left} vs {right} in {op}")]
    Mismatch {
        left: Semiring,
        right: Semiring,
        op: &'static str,
    },
    #[error("value {value} is outside the {semiring} carrier")]
    Domain { semiring: Semiring, value: String },
    #[error("cannot parse {input:?} as a {semiring} weight")]
    Parse { semiring: Semiring, input: String },
}

/// A tagged, exact semiring element.
///
/// Equality and hashing treat the tag as part of the value, so a `MinPlus` 3
/// and a `MaxPlus` 3 are different weights (and refuse to be combined).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    semiring: Semiring,
    value: Value,
}

impl Weight {
    /// A finite weight; fails when the magnitude is outside the carrier
    /// (`Bool` admits only {0, 1}, `BoolInf` only {0, 1, ∞}).
    pub fn finite(semiring: Semiring, n: BigUint) -> Result<Weight, WeightError> {
        match semiring {
            Semiring::Bool | Semiring::BoolInf if n > BigUint::one() => Err(WeightError::Domain {
                semiring,
                value: n.to_string(),
            }),
            _ => Ok(Weight {
                semiring,
                value: Value::Finite(n),
            }),
        }
    }

    /// Convenience constructor from a machine natural.
    pub fn nat(semiring: Semiring, n: u64) -> Result<Weight, WeightError> {
        Weight::finite(semiring, BigUint::from(n))
    }

    /// The infinite element (read as −∞ under `MaxPlus`). `Bool` has none.
    pub fn infinite(semiring: Semiring) -> Result<Weight, WeightError> {
        if semiring == Semiring::Bool {
            return Err(WeightError::Domain {
                semiring,
                value: "inf".into(),
            });
        }
        Ok(Weight {
            semiring,
            value: Value::Infinite,
        })
    }

    /// Additive identity 𝟘.
    pub fn zero(semiring: Semiring) -> Weight {
        let value = match semiring {
            Semiring::MinPlus | Semiring::MaxPlus => Value::Infinite,
            Semiring::PlusTimes | Semiring::Bool | Semiring::BoolInf => {
                Value::Finite(BigUint::zero())
            }
        };
        Weight { semiring, value }
    }

    /// Multiplicative identity 𝟙.
    pub fn one(semiring: Semiring) -> Weight {
        let value = match semiring {
            Semiring::MinPlus | Semiring::MaxPlus => Value::Finite(BigUint::zero()),
            Semiring::PlusTimes | Semiring::Bool | Semiring::BoolInf => {
                Value::Finite(BigUint::one())
            }
        };
        Weight { semiring, value }
    }

    pub fn semiring(&self) -> Semiring {
        self.semiring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        *self == Weight::zero(self.semiring)
    }

    pub fn is_one(&self) -> bool {
        *self == Weight::one(self.semiring)
    }

    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        self.value.as_finite()
    }

    fn expect_same(&self, other: &Weight, op: &'static str) -> Result<(), WeightError> {
        if self.semiring == other.semiring {
            Ok(())
        } else {
            Err(WeightError::Mismatch {
                left: self.semiring,
                right: other.semiring,
                op,
            })
        }
    }

    /// Semiring addition ⊕.
    pub fn add(&self, other: &Weight) -> Result<Weight, WeightError> {
        self.expect_same(other, "add")?;
        let sr = self.semiring;
        let value = match sr {
            Semiring::MinPlus => match (&self.value, &other.value) {
                (Value::Infinite, v) | (v, Value::Infinite) => v.clone(),
                (Value::Finite(a), Value::Finite(b)) => Value::Finite(a.min(b).clone()),
            },
            Semiring::MaxPlus => match (&self.value, &other.value) {
                (Value::Infinite, v) | (v, Value::Infinite) => v.clone(),
                (Value::Finite(a), Value::Finite(b)) => Value::Finite(a.max(b).clone()),
            },
            Semiring::PlusTimes => match (&self.value, &other.value) {
                (Value::Infinite, _) | (_, Value::Infinite) => Value::Infinite,
                (Value::Finite(a), Value::Finite(b)) => Value::Finite(a + b),
            },
            // ∨ is max in the order 0 < 1 < ∞.
            Semiring::Bool | Semiring::BoolInf => match (&self.value, &other.value) {
                (Value::Infinite, _) | (_, Value::Infinite) => Value::Infinite,
                (Value::Finite(a), Value::Finite(b)) => Value::Finite(a.max(b).clone()),
            },
        };
        Ok(Weight { semiring: sr, value })
    }

    /// Semiring multiplication ⊙.
    pub fn mul(&self, other: &Weight) -> Result<Weight, WeightError> {
        self.expect_same(other, "mul")?;
        let sr = self.semiring;
        let value = match sr {
            // Tropical ⊙ is numeric addition; ∞ (resp. −∞) absorbs.
            Semiring::MinPlus | Semiring::MaxPlus => match (&self.value, &other.value) {
                (Value::Infinite, _) | (_, Value::Infinite) => Value::Infinite,
                (Value::Finite(a), Value::Finite(b)) => Value::Finite(a + b),
            },
            // 0 annihilates before ∞ absorbs: ∞ ⊙ 0 = 0.
            Semiring::PlusTimes => match (&self.value, &other.value) {
                (Value::Finite(a), _) if a.is_zero() => Value::Finite(BigUint::zero()),
                (_, Value::Finite(b)) if b.is_zero() => Value::Finite(BigUint::zero()),
                (Value::Infinite, _) | (_, Value::Infinite) => Value::Infinite,
                (Value::Finite(a), Value::Finite(b)) => Value::Finite(a * b),
            },
            Semiring::Bool => match (&self.value, &other.value) {
                (Value::Finite(a), Value::Finite(b)) => Value::Finite(a.min(b).clone()),
                _ => unreachable!("Bool weights are always finite"),
            },
            // ∞ ∧ 0 = 0, ∞ ∧ n = ∞ for n ∈ {1, ∞}: zero wins, then ∞.
            Semiring::BoolInf => match (&self.value, &other.value) {
                (Value::Finite(a), _) if a.is_zero() => Value::Finite(BigUint::zero()),
                (_, Value::Finite(b)) if b.is_zero() => Value::Finite(BigUint::zero()),
                (Value::Infinite, _) | (_, Value::Infinite) => Value::Infinite,
                (Value::Finite(_), Value::Finite(_)) => Value::Finite(BigUint::one()),
            },
        };
        Ok(Weight { semiring: sr, value })
    }

    /// Natural order of the carrier: 0 < 1 < ⋯ < ∞, except that `MaxPlus`
    /// puts −∞ at the bottom. Used by the pumping checkers to compare values.
    pub fn leq(&self, other: &Weight) -> Result<bool, WeightError> {
        self.expect_same(other, "leq")?;
        let bottom_inf = self.semiring.infinite_is_bottom();
        Ok(match (&self.value, &other.value) {
            (Value::Infinite, Value::Infinite) => true,
            (Value::Infinite, Value::Finite(_)) => bottom_inf,
            (Value::Finite(_), Value::Infinite) => !bottom_inf,
            (Value::Finite(a), Value::Finite(b)) => a <= b,
        })
    }

    /// Strict version of [`Weight::leq`].
    pub fn lt(&self, other: &Weight) -> Result<bool, WeightError> {
        Ok(self.leq(other)? && self != other)
    }

    /// Quantity abstraction: `MinPlus`/`MaxPlus` → `Bool` (finite ↦ 1, 𝟘 ↦ 0),
    /// `PlusTimes` → `BoolInf` (0 ↦ 0, ∞ ↦ ∞, other ↦ 1). Already-abstract
    /// weights map to themselves.
    pub fn abstracted(&self) -> Weight {
        let target = self.semiring.abstraction_target();
        let value = match self.semiring {
            Semiring::MinPlus | Semiring::MaxPlus => match &self.value {
                Value::Infinite => Value::Finite(BigUint::zero()),
                Value::Finite(_) => Value::Finite(BigUint::one()),
            },
            Semiring::PlusTimes => match &self.value {
                Value::Finite(n) if n.is_zero() => Value::Finite(BigUint::zero()),
                Value::Finite(_) => Value::Finite(BigUint::one()),
                Value::Infinite => Value::Infinite,
            },
            Semiring::Bool | Semiring::BoolInf => self.value.clone(),
        };
        Weight {
            semiring: target,
            value,
        }
    }

    /// Parse a weight in the file-format syntax: a decimal natural or `inf`.
    pub fn parse(semiring: Semiring, s: &str) -> Result<Weight, WeightError> {
        if s == "inf" {
            return Weight::infinite(semiring);
        }
        let n: BigUint = s.parse().map_err(|_| WeightError::Parse {
            semiring,
            input: s.to_string(),
        })?;
        Weight::finite(semiring, n)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

impl serde::Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.value.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(sr: Semiring, n: u64) -> Weight {
        Weight::nat(sr, n).unwrap()
    }

    fn inf(sr: Semiring) -> Weight {
        Weight::infinite(sr).unwrap()
    }

    #[test]
    fn identities_per_semiring() {
        use Semiring::*;
        assert_eq!(Weight::zero(MinPlus), inf(MinPlus));
        assert_eq!(Weight::one(MinPlus), w(MinPlus, 0));
        assert_eq!(Weight::zero(MaxPlus), inf(MaxPlus));
        assert_eq!(Weight::one(MaxPlus), w(MaxPlus, 0));
        assert_eq!(Weight::zero(PlusTimes), w(PlusTimes, 0));
        assert_eq!(Weight::one(PlusTimes), w(PlusTimes, 1));
        assert_eq!(Weight::zero(Bool), w(Bool, 0));
        assert_eq!(Weight::one(Bool), w(Bool, 1));
        assert_eq!(Weight::zero(BoolInf), w(BoolInf, 0));
        assert_eq!(Weight::one(BoolInf), w(BoolInf, 1));
    }

    #[test]
    fn tropical_arithmetic() {
        let (a, b) = (w(Semiring::MinPlus, 2), w(Semiring::MinPlus, 5));
        assert_eq!(a.add(&b).unwrap(), w(Semiring::MinPlus, 2));
        assert_eq!(a.mul(&b).unwrap(), w(Semiring::MinPlus, 7));
        assert_eq!(a.mul(&inf(Semiring::MinPlus)).unwrap(), inf(Semiring::MinPlus));

        let (a, b) = (w(Semiring::MaxPlus, 2), w(Semiring::MaxPlus, 5));
        assert_eq!(a.add(&b).unwrap(), w(Semiring::MaxPlus, 5));
        assert_eq!(a.mul(&b).unwrap(), w(Semiring::MaxPlus, 7));
        // −∞ is the additive identity and multiplicative absorber.
        assert_eq!(a.add(&inf(Semiring::MaxPlus)).unwrap(), a);
        assert_eq!(a.mul(&inf(Semiring::MaxPlus)).unwrap(), inf(Semiring::MaxPlus));
    }

    #[test]
    fn plus_times_infinity_rules() {
        let sr = Semiring::PlusTimes;
        assert_eq!(inf(sr).mul(&w(sr, 0)).unwrap(), w(sr, 0));
        assert_eq!(inf(sr).mul(&w(sr, 3)).unwrap(), inf(sr));
        assert_eq!(inf(sr).add(&w(sr, 0)).unwrap(), inf(sr));
        assert_eq!(w(sr, 3).mul(&w(sr, 4)).unwrap(), w(sr, 12));
        assert_eq!(w(sr, 3).add(&w(sr, 4)).unwrap(), w(sr, 7));
    }

    #[test]
    fn bool_inf_tables() {
        let sr = Semiring::BoolInf;
        let (o, l, i) = (w(sr, 0), w(sr, 1), inf(sr));
        assert_eq!(i.add(&o).unwrap(), i.clone());
        assert_eq!(i.add(&l).unwrap(), i.clone());
        assert_eq!(l.add(&o).unwrap(), l.clone());
        assert_eq!(i.mul(&o).unwrap(), o.clone());
        assert_eq!(i.mul(&l).unwrap(), i.clone());
        assert_eq!(i.mul(&i).unwrap(), i.clone());
        assert_eq!(l.mul(&l).unwrap(), l);
    }

    #[test]
    fn abstraction_tables() {
        use Semiring::*;
        assert_eq!(w(MinPlus, 7).abstracted(), w(Bool, 1));
        assert_eq!(inf(MinPlus).abstracted(), w(Bool, 0));
        assert_eq!(w(MaxPlus, 0).abstracted(), w(Bool, 1));
        assert_eq!(inf(MaxPlus).abstracted(), w(Bool, 0));
        assert_eq!(w(PlusTimes, 0).abstracted(), w(BoolInf, 0));
        assert_eq!(w(PlusTimes, 9).abstracted(), w(BoolInf, 1));
        assert_eq!(inf(PlusTimes).abstracted(), inf(BoolInf));
    }

    #[test]
    fn cross_semiring_operations_fail() {
        let err = w(Semiring::MinPlus, 1).add(&w(Semiring::MaxPlus, 1));
        assert!(matches!(err, Err(WeightError::Mismatch { .. })));
        let err = w(Semiring::PlusTimes, 1).mul(&w(Semiring::MinPlus, 1));
        assert!(matches!(err, Err(WeightError::Mismatch { .. })));
    }

    #[test]
    fn carrier_domains_enforced() {
        assert!(Weight::nat(Semiring::Bool, 2).is_err());
        assert!(Weight::nat(Semiring::BoolInf, 2).is_err());
        assert!(Weight::infinite(Semiring::Bool).is_err());
        assert!(Weight::infinite(Semiring::BoolInf).is_ok());
    }

    #[test]
    fn order_respects_the_carrier() {
        let sr = Semiring::MinPlus;
        assert!(w(sr, 2).lt(&w(sr, 5)).unwrap());
        assert!(w(sr, 5).lt(&inf(sr)).unwrap());
        assert!(!inf(sr).lt(&inf(sr)).unwrap());
        // Under max-plus the infinite element is the bottom.
        let sr = Semiring::MaxPlus;
        assert!(inf(sr).lt(&w(sr, 0)).unwrap());
    }

    #[test]
    fn parse_round_trip() {
        for sr in [Semiring::MinPlus, Semiring::MaxPlus, Semiring::PlusTimes] {
            for s in ["0", "17", "inf", "340282366920938463463374607431768211456"] {
                let parsed = Weight::parse(sr, s).unwrap();
                assert_eq!(parsed.to_string(), s);
            }
        }
        assert!(Weight::parse(Semiring::MinPlus, "-3").is_err());
        assert!(Weight::parse(Semiring::Bool, "inf").is_err());
    }
}
