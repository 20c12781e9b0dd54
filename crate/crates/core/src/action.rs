//! Cyclic actions on closed surfaces with totally ramified branch points.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize, Serializer};

use crate::cyclo::{gcd, inverse_mod};
use crate::error::{Error, Result};

/// A Z/m action on a closed surface of genus `g` with quotient genus `h`.
/// `fixed_counts[j]` is the number of fixed points whose tangent rotation
/// is e^{2πij/m}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActionData {
    m: u32,
    h: u64,
    fixed_counts: BTreeMap<u32, u64>,
    g: u64,
}

impl ActionData {
    pub fn new(m: u32, h: u64, fixed_counts: BTreeMap<u32, u64>) -> Result<ActionData> {
        if m < 2 {
            return Err(Error::UnsupportedParameter(format!(
                "group order must be at least 2, got {m}"
            )));
        }
        let mut counts = BTreeMap::new();
        for (&j, &c) in &fixed_counts {
            if j == 0 || j >= m || gcd(j, m) != 1 {
                return Err(Error::InvalidRotationClass { j: j as i64, m });
            }
            if c > 0 {
                counts.insert(j, c);
            }
        }
        let z: i128 = counts.values().map(|&c| c as i128).sum();
        // 2 - 2g = m(2 - 2h) - |Z|(m - 1)
        let euler = m as i128 * (2 - 2 * h as i128) - z * (m as i128 - 1);
        let two_g = 2 - euler;
        if two_g < 0 || two_g % 2 != 0 {
            return Err(Error::InconsistentData(format!(
                "Riemann-Hurwitz gives 2g = {two_g} for m = {m}, h = {h}, |Z| = {z}"
            )));
        }
        Ok(ActionData {
            m,
            h,
            fixed_counts: counts,
            g: (two_g / 2) as u64,
        })
    }

    /// Convenience constructor from (j, count) pairs.
    pub fn from_pairs(m: u32, h: u64, pairs: &[(u32, u64)]) -> Result<ActionData> {
        let mut counts = BTreeMap::new();
        for &(j, c) in pairs {
            *counts.entry(j).or_insert(0) += c;
        }
        ActionData::new(m, h, counts)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn fixed_counts(&self) -> &BTreeMap<u32, u64> {
        &self.fixed_counts
    }

    pub fn count(&self, j: u32) -> u64 {
        self.fixed_counts.get(&j).copied().unwrap_or(0)
    }

    /// |Z|, the total number of fixed points.
    pub fn total_fixed(&self) -> u64 {
        self.fixed_counts.values().sum()
    }

    pub fn is_free(&self) -> bool {
        self.fixed_counts.is_empty()
    }

    /// All fixed points in rotation class 1.
    pub fn is_morita_type(&self) -> bool {
        self.fixed_counts.len() == 1 && self.count(1) == self.m as u64
    }

    /// Merged η classes: 1 ≤ j ≤ ⌊m/2⌋ with Z_j ∪ Z_{m−j} nonempty.
    pub fn eta_index(&self) -> Vec<u32> {
        (1..=self.m / 2)
            .filter(|&j| self.count(j) + self.count(self.m - j) > 0)
            .collect()
    }

    /// The same action with the generator replaced by its inverse.
    pub fn conjugate(&self) -> ActionData {
        let fixed_counts = self
            .fixed_counts
            .iter()
            .map(|(&j, &c)| (self.m - j, c))
            .collect();
        ActionData {
            fixed_counts,
            ..self.clone()
        }
    }

    /// Warnings from the abelian-cover existence congruence
    /// Σ inv(j)·|Z_j| ≡ 0 (mod m). Never fails.
    pub fn validate_monodromy(&self) -> Vec<String> {
        let residue = monodromy_residue(self.m, &self.fixed_counts);
        if residue == 0 {
            Vec::new()
        } else {
            vec![format!(
                "monodromy sum of inverse rotation classes is {residue} mod {}, not 0; \
                 no cyclic branched cover realizes this data",
                self.m
            )]
        }
    }

    pub fn monodromy_valid(&self) -> bool {
        monodromy_residue(self.m, &self.fixed_counts) == 0
    }
}

fn monodromy_residue(m: u32, counts: &BTreeMap<u32, u64>) -> u64 {
    counts
        .iter()
        .map(|(&j, &c)| inverse_mod(j, m).unwrap_or(0) as u64 * (c % m as u64))
        .sum::<u64>()
        % m as u64
}

impl fmt::Display for ActionData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z: Vec<String> = self
            .fixed_counts
            .iter()
            .map(|(j, c)| format!("{j}:{c}"))
            .collect();
        write!(
            f,
            "Z/{} on genus {} over genus {}, fixed {{{}}}",
            self.m,
            self.g,
            self.h,
            z.join(", ")
        )
    }
}

impl Serialize for ActionData {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExplicitAction::from(self).serialize(s)
    }
}

/// The explicit JSON form of an action.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExplicitAction {
    pub m: u32,
    pub quotient_genus: u64,
    #[serde(default)]
    pub fixed_points: BTreeMap<String, u64>,
}

impl From<&ActionData> for ExplicitAction {
    fn from(a: &ActionData) -> Self {
        ExplicitAction {
            m: a.m,
            quotient_genus: a.h,
            fixed_points: a
                .fixed_counts
                .iter()
                .map(|(j, c)| (j.to_string(), *c))
                .collect(),
        }
    }
}

impl ExplicitAction {
    pub fn build(&self) -> Result<ActionData> {
        let mut counts = BTreeMap::new();
        for (key, &c) in &self.fixed_points {
            let j: i64 = key
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("rotation class '{key}' is not an integer")))?;
            if j <= 0 || j >= self.m as i64 {
                return Err(Error::InvalidRotationClass { j, m: self.m });
            }
            *counts.entry(j as u32).or_insert(0) += c;
        }
        ActionData::new(self.m, self.quotient_genus, counts)
    }
}

/// Named constructions addressable from JSON.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "example", rename_all = "lowercase", deny_unknown_fields)]
pub enum NamedExample {
    Morita {
        m: u32,
        h: u64,
    },
    Ak7 {
        h: u64,
        #[serde(default = "default_j0")]
        j0: u32,
    },
    Ak2 {
        #[serde(default = "default_fibering")]
        fibering: u8,
    },
}

fn default_j0() -> u32 {
    1
}

fn default_fibering() -> u8 {
    1
}

/// Either an explicit action or a named example.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ActionSpec {
    Example(NamedExample),
    Explicit(ExplicitAction),
}

impl ActionSpec {
    pub fn build(&self) -> Result<ActionData> {
        match self {
            ActionSpec::Explicit(e) => e.build(),
            ActionSpec::Example(NamedExample::Morita { m, h }) => morita_example(*m, *h),
            ActionSpec::Example(NamedExample::Ak7 { h, j0 }) => {
                Ok(ak7_example_with(*h, *j0)?.base_action)
            }
            ActionSpec::Example(NamedExample::Ak2 { fibering }) => {
                let (f1, f2) = ak2_standard();
                match fibering {
                    1 => Ok(f1.0),
                    2 => Ok(f2.0),
                    other => Err(Error::UnsupportedParameter(format!(
                        "ak2 has fiberings 1 and 2, got {other}"
                    ))),
                }
            }
        }
    }

    pub fn from_json(text: &str) -> Result<ActionSpec> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// m fixed points, all rotated by 2π/m.
pub fn morita_example(m: u32, h: u64) -> Result<ActionData> {
    if m < 3 {
        return Err(Error::UnsupportedParameter(format!(
            "the Morita construction needs m >= 3, got {m}"
        )));
    }
    ActionData::from_pairs(m, h, &[(1, m as u64)])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AkData {
    pub base_action: ActionData,
    pub base_genus: BigInt,
    pub fiber_genus: u64,
}

impl Serialize for AkData {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AkData", 3)?;
        st.serialize_field("base_action", &self.base_action)?;
        st.serialize_field("base_genus", &self.base_genus.to_string())?;
        st.serialize_field("fiber_genus", &self.fiber_genus)?;
        st.end()
    }
}

pub fn ak7_example(h: u64) -> Result<AkData> {
    ak7_example_with(h, 1)
}

/// The Z/7 construction over the homology cover Σ, with the seven branch
/// points in rotation class `j0`.
pub fn ak7_example_with(h: u64, j0: u32) -> Result<AkData> {
    if h < 2 {
        return Err(Error::UnsupportedParameter(format!(
            "the Z/7 construction needs h >= 2, got {h}"
        )));
    }
    let base_action = ActionData::from_pairs(7, h, &[(j0, 7)])?;
    let exp = u32::try_from(2 * h)
        .map_err(|_| Error::UnsupportedParameter(format!("h = {h} is too large")))?;
    let base_genus = BigInt::from(7).pow(exp) * BigInt::from(h - 1) + 1;
    let fiber_genus = 7 * h + 15;
    debug_assert_eq!(base_action.g(), fiber_genus);
    Ok(AkData {
        base_action,
        base_genus,
        fiber_genus,
    })
}

/// The two fiberings of the standard m = 2 Atiyah–Kodaira surface, as
/// (fiber action, base genus). The second fibering's quotient genus and
/// fixed-point count are forced by its eigenbundle ranks 104 and 217.
pub fn ak2_standard() -> ((ActionData, u64), (ActionData, u64)) {
    let f1 = ActionData::from_pairs(2, 3, &[(1, 2)]).expect("valid fibering");
    let f2 = ActionData::from_pairs(2, 104, &[(1, 228)]).expect("valid fibering");
    ((f1, 129), (f2, 3))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn riemann_hurwitz_examples() {
        assert_eq!(ActionData::from_pairs(5, 1, &[(1, 5)]).unwrap().g(), 11);
        assert_eq!(ActionData::from_pairs(3, 2, &[]).unwrap().g(), 4);
        assert_eq!(ActionData::from_pairs(2, 3, &[(1, 2)]).unwrap().g(), 6);
    }

    #[test]
    fn rejects_bad_classes_and_genus() {
        assert_eq!(
            ActionData::from_pairs(4, 1, &[(2, 1)]),
            Err(Error::InvalidRotationClass { j: 2, m: 4 })
        );
        // odd Euler characteristic
        assert!(matches!(
            ActionData::from_pairs(4, 1, &[(1, 1)]),
            Err(Error::InconsistentData(_))
        ));
        // negative genus
        assert!(matches!(
            ActionData::from_pairs(3, 0, &[(1, 1)]),
            Err(Error::InconsistentData(_))
        ));
    }

    #[test]
    fn monodromy_examples() {
        assert!(morita_example(5, 1)
            .unwrap()
            .validate_monodromy()
            .is_empty());
        let a = ActionData::from_pairs(4, 6, &[(1, 1), (3, 1)]).unwrap();
        assert!(a.validate_monodromy().is_empty());
        // |Z| = 1 makes RH odd for m = 4, so check the congruence directly
        let mut single = BTreeMap::new();
        single.insert(1, 1);
        assert_ne!(monodromy_residue(4, &single), 0);
    }

    #[test]
    fn morita_genera() {
        assert_eq!(morita_example(5, 1).unwrap().g(), 11);
        assert_eq!(morita_example(7, 0).unwrap().g(), 15);
        assert_eq!(morita_example(3, 2).unwrap().g(), 7);
        for m in 3..=20u32 {
            for h in 0..=5u64 {
                let g = morita_example(m, h).unwrap().g();
                assert_eq!(g, m as u64 * h + ((m - 1) * (m - 2) / 2) as u64);
            }
        }
    }

    #[test]
    fn ak7_numerology() {
        let a = ak7_example(2).unwrap();
        assert_eq!(a.base_genus, BigInt::from(2402));
        assert_eq!(a.fiber_genus, 29);
        assert_eq!(a.base_action.g(), 29);
        let b = ak7_example(3).unwrap();
        assert_eq!(b.base_genus, BigInt::from(235299));
        assert_eq!(b.fiber_genus, 36);
        assert!(ak7_example(1).is_err());
    }

    #[test]
    fn ak2_fiberings() {
        let ((f1, b1), (f2, b2)) = ak2_standard();
        assert_eq!((f1.g(), b1), (6, 129));
        assert_eq!((f2.g(), b2), (321, 3));
        assert_eq!(f2.g() - f2.h(), 217);
    }

    #[test]
    fn rejects_every_noncoprime_class() {
        for m in 2..=30u32 {
            for j in 1..m {
                let r = ActionData::from_pairs(m, 2, &[(j, m as u64)]);
                if gcd(j, m) == 1 {
                    assert!(r.is_ok(), "m={m} j={j}");
                } else {
                    assert_eq!(r, Err(Error::InvalidRotationClass { j: j as i64, m }));
                }
            }
        }
    }

    #[test]
    fn json_forms() {
        let spec =
            ActionSpec::from_json(r#"{"m": 5, "quotient_genus": 1, "fixed_points": {"1": 5}}"#)
                .unwrap();
        assert_eq!(spec.build().unwrap(), morita_example(5, 1).unwrap());
        let ex = ActionSpec::from_json(r#"{"example": "morita", "m": 5, "h": 1}"#).unwrap();
        assert_eq!(ex.build().unwrap(), morita_example(5, 1).unwrap());
        let ak = ActionSpec::from_json(r#"{"example": "ak2", "fibering": 2}"#).unwrap();
        assert_eq!(ak.build().unwrap().g(), 321);
        assert!(ActionSpec::from_json(r#"{"m": "five"}"#).is_err());
        let out = serde_json::to_string(&morita_example(5, 1).unwrap()).unwrap();
        assert_eq!(out, r#"{"m":5,"quotient_genus":1,"fixed_points":{"1":5}}"#);
    }

    #[test]
    fn riemann_hurwitz_parity_under_valid_monodromy() {
        // enumerate count vectors over the units with |Z| <= 8
        for m in 2..=12u32 {
            let units: Vec<u32> = (1..m).filter(|&j| gcd(j, m) == 1).collect();
            let mut stack = vec![(0usize, BTreeMap::<u32, u64>::new(), 0u64)];
            while let Some((idx, counts, total)) = stack.pop() {
                if idx == units.len() {
                    if monodromy_residue(m, &counts) == 0 {
                        let euler = m as i64 * 2 - total as i64 * (m as i64 - 1);
                        assert_eq!(euler.rem_euclid(2), 0, "m={m} {counts:?}");
                    }
                    continue;
                }
                for c in 0..=(8 - total) {
                    let mut next = counts.clone();
                    if c > 0 {
                        next.insert(units[idx], c);
                    }
                    stack.push((idx + 1, next, total + c));
                }
            }
        }
    }
}
