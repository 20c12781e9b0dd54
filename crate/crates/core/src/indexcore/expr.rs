use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::cyclo::{CycloNum, Rat};
use crate::error::{Error, Result};

/// A solved coefficient: rational whenever it lies in Q, otherwise the
/// cyclotomic value is kept and flagged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficient {
    Rational(Rat),
    Cyclo(CycloNum),
}

impl Coefficient {
    pub fn from_cyclo(x: CycloNum) -> Coefficient {
        match x.to_rational() {
            Some(q) => Coefficient::Rational(q),
            None => Coefficient::Cyclo(x),
        }
    }

    pub fn zero() -> Coefficient {
        Coefficient::Rational(Rat::zero())
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        match self {
            Coefficient::Rational(q) => Some(q),
            Coefficient::Cyclo(_) => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Coefficient::Rational(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rational(q) => q.is_zero(),
            Coefficient::Cyclo(x) => x.is_zero(),
        }
    }

    pub fn to_cyclo(&self, m: u32) -> CycloNum {
        match self {
            Coefficient::Rational(q) => CycloNum::from_rat(m, q),
            Coefficient::Cyclo(x) => x.clone(),
        }
    }

    pub fn add(&self, other: &Coefficient) -> Coefficient {
        match (self, other) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a + b),
            (Coefficient::Cyclo(x), c) | (c, Coefficient::Cyclo(x)) => {
                Coefficient::from_cyclo(x + &c.to_cyclo(x.conductor()))
            }
        }
    }

    pub fn mul_rat(&self, k: &Rat) -> Coefficient {
        match self {
            Coefficient::Rational(a) => Coefficient::Rational(a * k),
            Coefficient::Cyclo(x) => Coefficient::from_cyclo(x.scale(k)),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(q) => write!(f, "{q}"),
            Coefficient::Cyclo(x) => write!(f, "({x})"),
        }
    }
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Coefficient::Rational(q) => q.serialize(s),
            Coefficient::Cyclo(x) => x.serialize(s),
        }
    }
}

/// A degree-two class A·σ + Σ_j B_j·η_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomExpr {
    pub sigma: Coefficient,
    pub eta: BTreeMap<u32, Coefficient>,
}

impl CohomExpr {
    pub fn zero() -> CohomExpr {
        CohomExpr {
            sigma: Coefficient::zero(),
            eta: BTreeMap::new(),
        }
    }

    pub fn rational(sigma: Rat, eta: &[(u32, Rat)]) -> CohomExpr {
        CohomExpr {
            sigma: Coefficient::Rational(sigma),
            eta: eta
                .iter()
                .map(|(j, q)| (*j, Coefficient::Rational(q.clone())))
                .collect(),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.sigma.is_rational() && self.eta.values().all(Coefficient::is_rational)
    }

    pub fn add(&self, other: &CohomExpr) -> CohomExpr {
        let mut eta = self.eta.clone();
        for (j, c) in &other.eta {
            let v = eta.get(j).map_or_else(|| c.clone(), |prev| prev.add(c));
            eta.insert(*j, v);
        }
        CohomExpr {
            sigma: self.sigma.add(&other.sigma),
            eta,
        }
    }

    pub fn scale(&self, k: &Rat) -> CohomExpr {
        CohomExpr {
            sigma: self.sigma.mul_rat(k),
            eta: self.eta.iter().map(|(j, c)| (*j, c.mul_rat(k))).collect(),
        }
    }

    /// Equality after dropping zero η terms.
    pub fn same_as(&self, other: &CohomExpr) -> bool {
        let diff = self.add(&other.scale(&Rat::from_int(-1)));
        diff.sigma.is_zero() && diff.eta.values().all(Coefficient::is_zero)
    }

    /// Pairs the class with a base: A·σ + Σ B_j·η_j for supplied numbers.
    pub fn evaluate(&self, sigma: &Rat, eta: &BTreeMap<u32, Rat>) -> Result<Coefficient> {
        let mut acc = self.sigma.mul_rat(sigma);
        for (j, c) in &self.eta {
            let v = eta
                .get(j)
                .ok_or_else(|| Error::IncompleteInput(format!("missing value for eta_{j}")))?;
            acc = acc.add(&c.mul_rat(v));
        }
        Ok(acc)
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: &mut bool,
    c: &Coefficient,
    sym: &str,
) -> fmt::Result {
    if c.is_zero() {
        return Ok(());
    }
    match c {
        Coefficient::Rational(q) => {
            let neg = q.is_negative();
            let mag = q.abs();
            if *first {
                write!(f, "{}", if neg { "-" } else { "" })?;
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if mag == Rat::one() {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{mag} {sym}")?;
            }
        }
        Coefficient::Cyclo(x) => {
            if !*first {
                write!(f, " + ")?;
            }
            write!(f, "({x}) {sym}")?;
        }
    }
    *first = false;
    Ok(())
}

impl fmt::Display for CohomExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write_term(f, &mut first, &self.sigma, "σ")?;
        for (j, c) in &self.eta {
            write_term(f, &mut first, c, &format!("η_{j}"))?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        let e = CohomExpr::rational(Rat::new(1, 8), &[(1, Rat::new(1, 8))]);
        assert_eq!(e.to_string(), "1/8 σ + 1/8 η_1");
        let e = CohomExpr::rational(Rat::new(1, 8), &[(1, Rat::new(-1, 8))]);
        assert_eq!(e.to_string(), "1/8 σ - 1/8 η_1");
        let e = CohomExpr::rational(Rat::new(-1, 2), &[(2, Rat::one())]);
        assert_eq!(e.to_string(), "-1/2 σ + η_2");
        assert_eq!(CohomExpr::zero().to_string(), "0");
    }

    #[test]
    fn evaluate_needs_all_eta() {
        let e = CohomExpr::rational(Rat::new(1, 8), &[(1, Rat::new(1, 8))]);
        let v = e
            .evaluate(
                &Rat::from_int(32),
                &BTreeMap::from([(1, Rat::from_int(-32))]),
            )
            .unwrap();
        assert_eq!(v, Coefficient::Rational(Rat::zero()));
        assert!(matches!(
            e.evaluate(&Rat::one(), &BTreeMap::new()),
            Err(Error::IncompleteInput(_))
        ));
    }
}
