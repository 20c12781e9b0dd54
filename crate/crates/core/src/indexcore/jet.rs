use std::collections::BTreeMap;
use std::fmt;

use crate::action::ActionData;
use crate::cyclo::{csc2_half, icot_half, CycloNum, Rat};
use crate::error::Result;

/// A series c0 + Σ_j c1[j]·ε_j truncated after the linear terms, where the
/// ε_j are formal degree-two classes.
#[derive(Clone, PartialEq, Eq)]
pub struct Jet1 {
    pub c0: CycloNum,
    pub c1: BTreeMap<u32, CycloNum>,
}

impl Jet1 {
    pub fn zero(m: u32) -> Jet1 {
        Jet1 {
            c0: CycloNum::zero(m),
            c1: BTreeMap::new(),
        }
    }

    pub fn constant(c0: CycloNum) -> Jet1 {
        Jet1 {
            c0,
            c1: BTreeMap::new(),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.c0.conductor()
    }

    pub fn add(&self, other: &Jet1) -> Jet1 {
        let mut c1 = self.c1.clone();
        for (j, v) in &other.c1 {
            let sum = match c1.get(j) {
                Some(prev) => prev + v,
                None => v.clone(),
            };
            c1.insert(*j, sum);
        }
        c1.retain(|_, v| !v.is_zero());
        Jet1 {
            c0: &self.c0 + &other.c0,
            c1,
        }
    }

    pub fn scale(&self, k: &CycloNum) -> Jet1 {
        let mut c1: BTreeMap<u32, CycloNum> = self.c1.iter().map(|(j, v)| (*j, v * k)).collect();
        c1.retain(|_, v| !v.is_zero());
        Jet1 {
            c0: &self.c0 * k,
            c1,
        }
    }

    /// Product with ε·ε terms dropped.
    pub fn mul(&self, other: &Jet1) -> Jet1 {
        let a = self.scale(&other.c0);
        let b = Jet1 {
            c0: CycloNum::zero(self.conductor()),
            c1: other.c1.iter().map(|(j, v)| (*j, v * &self.c0)).collect(),
        };
        a.add(&b)
    }
}

impl fmt::Debug for Jet1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Jet1({}", self.c0)?;
        for (j, v) in &self.c1 {
            write!(f, " + ({v})·e{j}")?;
        }
        write!(f, ")")
    }
}

/// coth((ε + i·rθ_j)/2) ≈ −i·cot(rθ_j/2) + csc²(rθ_j/2)/2 · ε, θ_j = 2πj/m.
pub fn coth_jet(j: u32, r: u32, m: u32) -> Result<Jet1> {
    let k = (j as i64 * r as i64).rem_euclid(m as i64);
    let c0 = icot_half(k, m)?;
    let c1 = csc2_half(k, m)?.scale(&Rat::new(1, 2));
    Ok(Jet1 {
        c0,
        c1: BTreeMap::from([(j, c1)]),
    })
}

/// The fixed-point side for τ^r. Constant term Σ_j |Z_j|·(−i·cot(rθ_j/2));
/// linear term csc²(rθ_j/2)/2 per merged class η_j, since ε_j already sums
/// the Euler classes of the |Z_j| points.
pub fn rhs_jet(a: &ActionData, r: u32) -> Result<Jet1> {
    let m = a.m();
    let mut out = Jet1::zero(m);
    for (&j, &count) in a.fixed_counts() {
        let jet = coth_jet(j, r, m)?;
        out.c0 = &out.c0 + &jet.c0.scale_int(count as i64);
    }
    for j in a.eta_index() {
        let k = (j as i64 * r as i64).rem_euclid(m as i64);
        out.c1.insert(j, csc2_half(k, m)?.scale(&Rat::new(1, 2)));
    }
    Ok(out)
}
