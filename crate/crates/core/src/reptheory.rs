//! The character of H₁(S) as a Z/m-module and its isotypic multiplicities.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::action::ActionData;
use crate::cyclo::{gcd, CycloNum, Rat};
use crate::error::{Error, Result};

/// Traces of τ^r on H₁(S; C), r = 0..m−1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterVec {
    pub m: u32,
    pub values: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotypicDecomp {
    /// n[s]: multiplicity of τ ↦ ζ^s in H₁(S; C).
    pub n: Vec<u64>,
    /// Multiplicity of Q(ζ_k) in H₁(S; Q), keyed by k | m.
    pub rational_isotypic: BTreeMap<u32, u64>,
}

impl IsotypicDecomp {
    pub fn m(&self) -> u32 {
        self.n.len() as u32
    }
}

/// Lefschetz: trace(τ^r) = 2 − |Fix τ^r| = 2 − |Z| for r ≠ 0.
pub fn character_h1(a: &ActionData) -> CharacterVec {
    let m = a.m();
    let mut values = vec![2 - a.total_fixed() as i64; m as usize];
    values[0] = 2 * a.g() as i64;
    CharacterVec { m, values }
}

/// Computes isotypic multiplicities from a character.
pub trait MultiplicityMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn multiplicities(&self, c: &CharacterVec) -> Result<IsotypicDecomp>;
}

/// Exact inverse DFT of the character over Q(ζ_m).
pub struct CharacterDft;

impl MultiplicityMethod for CharacterDft {
    fn name(&self) -> &'static str {
        "character-dft"
    }

    fn description(&self) -> &'static str {
        "exact inner products with the characters of Z/m in Q(zeta_m)"
    }

    fn multiplicities(&self, c: &CharacterVec) -> Result<IsotypicDecomp> {
        complex_multiplicities(c)
    }
}

/// n[0] = 2h, n[s] = 2h − 2 + |Z| otherwise; read off the character.
pub struct ClosedForm;

impl MultiplicityMethod for ClosedForm {
    fn name(&self) -> &'static str {
        "closed-form"
    }

    fn description(&self) -> &'static str {
        "closed form valid when every nontrivial power has the same fixed set"
    }

    fn multiplicities(&self, c: &CharacterVec) -> Result<IsotypicDecomp> {
        let m = c.m as i64;
        let two_g = c.values[0];
        if m == 1 {
            return finish(vec![two_g]);
        }
        let other = c.values[1];
        if c.values[1..].iter().any(|&v| v != other) {
            return Err(Error::InconsistentCharacter(
                "closed form needs a constant character off the identity".into(),
            ));
        }
        // n[s] for s ≠ 0 is (2g − (2 − |Z|)) / m; n[0] takes the rest
        let num = two_g - other;
        if num < 0 || num % m != 0 {
            return Err(Error::InconsistentCharacter(format!(
                "(2g - trace) = {num} is not a non-negative multiple of {m}"
            )));
        }
        let ns = num / m;
        let n0 = two_g - (m - 1) * ns;
        if n0 < 0 {
            return Err(Error::InconsistentCharacter(format!(
                "n[0] = {n0} is negative"
            )));
        }
        let mut n = vec![ns; m as usize];
        n[0] = n0;
        finish(n)
    }
}

/// n[s] = (1/m) Σ_r values[r]·ζ^{−rs}, exact.
pub fn complex_multiplicities(c: &CharacterVec) -> Result<IsotypicDecomp> {
    let m = c.m;
    let mut n = Vec::with_capacity(m as usize);
    for s in 0..m as u64 {
        // collect the sum as an exponent vector, reduce once
        let mut coeffs = vec![Rat::zero(); m as usize];
        for (r, &v) in c.values.iter().enumerate() {
            let e = ((m as u64 - (r as u64 * s) % m as u64) % m as u64) as usize;
            coeffs[e] = &coeffs[e] + &Rat::new(v, m as i64);
        }
        let val = CycloNum::from_coeffs(m, &coeffs);
        let q = val.to_rational().ok_or_else(|| {
            Error::InconsistentCharacter(format!("multiplicity of zeta^{s} is irrational: {val}"))
        })?;
        n.push(q.to_i64().filter(|_| q.is_integer()).ok_or_else(|| {
            Error::InconsistentCharacter(format!("multiplicity of zeta^{s} is {q}"))
        })?);
    }
    finish(n)
}

fn finish(n: Vec<i64>) -> Result<IsotypicDecomp> {
    if let Some(bad) = n.iter().find(|&&x| x < 0) {
        return Err(Error::InconsistentCharacter(format!(
            "negative multiplicity {bad}"
        )));
    }
    let m = n.len() as u32;
    let n: Vec<u64> = n.into_iter().map(|x| x as u64).collect();
    let mut rational_isotypic = BTreeMap::new();
    for s in 0..m {
        let k = m / gcd(s, m);
        match rational_isotypic.get(&k) {
            None => {
                rational_isotypic.insert(k, n[s as usize]);
            }
            Some(&prev) if prev != n[s as usize] => {
                return Err(Error::InconsistentCharacter(format!(
                    "multiplicities of order-{k} characters differ"
                )));
            }
            Some(_) => {}
        }
    }
    Ok(IsotypicDecomp {
        n,
        rational_isotypic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{ak7_example, morita_example};

    #[test]
    fn character_examples() {
        let c = character_h1(&morita_example(5, 1).unwrap());
        assert_eq!(c.values, vec![22, -3, -3, -3, -3]);
        let free = ActionData::from_pairs(3, 2, &[]).unwrap();
        assert_eq!(character_h1(&free).values, vec![8, 2, 2]);
        let m2 = ActionData::from_pairs(2, 3, &[(1, 2)]).unwrap();
        assert_eq!(character_h1(&m2).values, vec![12, 0]);
    }

    #[test]
    fn multiplicity_examples() {
        let d = complex_multiplicities(&character_h1(&morita_example(5, 1).unwrap())).unwrap();
        assert_eq!(d.n, vec![2, 5, 5, 5, 5]);
        assert_eq!(d.rational_isotypic, BTreeMap::from([(1, 2), (5, 5)]));

        for h in 2..=4 {
            let a = ak7_example(h).unwrap().base_action;
            let d = complex_multiplicities(&character_h1(&a)).unwrap();
            assert_eq!(d.n[0], 2 * h);
            assert!(d.n[1..].iter().all(|&x| x == 2 * h + 5));
        }

        let free = ActionData::from_pairs(3, 2, &[]).unwrap();
        let d = complex_multiplicities(&character_h1(&free)).unwrap();
        assert_eq!(d.n, vec![4, 2, 2]);
    }

    // direct inner product with the character table as floats
    fn float_oracle(c: &CharacterVec) -> Vec<f64> {
        let m = c.m as f64;
        (0..c.m)
            .map(|s| {
                let mut acc = num_complex::Complex64::new(0.0, 0.0);
                for (r, &v) in c.values.iter().enumerate() {
                    let t = -2.0 * std::f64::consts::PI * (r as f64) * (s as f64) / m;
                    acc += num_complex::Complex64::from_polar(v as f64, t);
                }
                acc.re / m
            })
            .collect()
    }

    #[test]
    fn dft_agrees_with_closed_form_and_oracle() {
        for m in 2..=20u32 {
            for h in 0..=6u64 {
                for z in 0..=10u64 {
                    let Ok(a) = ActionData::from_pairs(m, h, &[(1, z)]) else {
                        continue;
                    };
                    let c = character_h1(&a);
                    let dft = CharacterDft.multiplicities(&c).unwrap();
                    let closed = ClosedForm.multiplicities(&c).unwrap();
                    assert_eq!(dft, closed, "m={m} h={h} z={z}");
                    assert_eq!(dft.n.iter().sum::<u64>(), 2 * a.g());
                    assert_eq!(dft.n[0], 2 * h);
                    for (x, y) in dft.n.iter().zip(float_oracle(&c)) {
                        assert!((*x as f64 - y).abs() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_impossible_character() {
        let c = CharacterVec {
            m: 3,
            values: vec![5, 0, 0],
        };
        assert!(complex_multiplicities(&c).is_err());
        assert!(ClosedForm.multiplicities(&c).is_err());
    }
}
