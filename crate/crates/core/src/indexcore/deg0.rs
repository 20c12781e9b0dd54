use serde::Serialize;

use super::jet::rhs_jet;
use crate::action::ActionData;
use crate::cyclo::{CycloNum, Rat};
use crate::error::{Error, Result};
use crate::reptheory::IsotypicDecomp;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SigEntry {
    pub s: u32,
    pub a: u64,
    pub b: u64,
}

/// Signatures (a_q, b_q) for q = ζ^s with 0 < s < m/2, plus the full
/// difference vector D_s = a_s − b_s for s = 0..m−1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenSignature {
    pub entries: Vec<SigEntry>,
    #[serde(skip)]
    pub differences: Vec<i64>,
}

impl EigenSignature {
    pub fn entry(&self, s: u32) -> Option<&SigEntry> {
        self.entries.iter().find(|e| e.s == s)
    }
}

pub trait Deg0Method: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn solve(&self, a: &ActionData, n: &IsotypicDecomp) -> Result<EigenSignature>;
}

pub struct InverseDft;

impl Deg0Method for InverseDft {
    fn name(&self) -> &'static str {
        "inverse-dft"
    }

    fn description(&self) -> &'static str {
        "exact inverse DFT of the constant terms of the fixed-point side"
    }

    fn solve(&self, a: &ActionData, n: &IsotypicDecomp) -> Result<EigenSignature> {
        solve_deg0(a, n)
    }
}

/// Counts roots of unity above a chord; defined for Morita data only.
pub struct RootCount;

impl Deg0Method for RootCount {
    fn name(&self) -> &'static str {
        "root-count"
    }

    fn description(&self) -> &'static str {
        "count of m-th roots of unity above the chord from 1 to q (all points in class 1)"
    }

    fn solve(&self, a: &ActionData, n: &IsotypicDecomp) -> Result<EigenSignature> {
        let m = a.m();
        let mut entries = Vec::new();
        let mut differences = vec![0i64; m as usize];
        for s in 1..m.div_ceil(2) {
            let ns = n.n[s as usize];
            let av = mcmullen_count(a, s)?;
            if av > ns {
                return Err(Error::InconsistentFixedData(format!(
                    "root count {av} exceeds n[{s}] = {ns}"
                )));
            }
            let b = ns - av;
            differences[s as usize] = av as i64 - b as i64;
            differences[(m - s) as usize] = b as i64 - av as i64;
            entries.push(SigEntry { s, a: av, b });
        }
        Ok(EigenSignature {
            entries,
            differences,
        })
    }
}

/// RHS₀(r) = Σ_j |Z_j|·(−i·cot(rθ_j/2)).
pub fn rhs0(a: &ActionData, r: u32) -> Result<CycloNum> {
    Ok(rhs_jet(a, r)?.c0)
}

/// D_s = (1/m) Σ_{r=1}^{m−1} RHS₀(r)·ζ^{−sr}, then a_s, b_s from n[s] ± D_s.
pub fn solve_deg0(a: &ActionData, n: &IsotypicDecomp) -> Result<EigenSignature> {
    let m = a.m();
    if n.n.len() != m as usize {
        return Err(Error::InconsistentInputs(format!(
            "decomposition has {} entries, expected {m}",
            n.n.len()
        )));
    }
    let rhs: Vec<CycloNum> = (1..m).map(|r| rhs0(a, r)).collect::<Result<_>>()?;
    let inv_m = Rat::new(1, m as i64);
    let mut differences = Vec::with_capacity(m as usize);
    for s in 0..m {
        let mut acc = CycloNum::zero(m);
        for (idx, v) in rhs.iter().enumerate() {
            let r = idx as i64 + 1;
            if !v.is_zero() {
                acc = &acc + &v.mul_root(-(s as i64) * r);
            }
        }
        let d = acc.scale(&inv_m);
        let d = d
            .to_rational()
            .filter(Rat::is_integer)
            .and_then(|q| q.to_i64())
            .ok_or_else(|| {
                Error::InconsistentFixedData(format!("D_{s} = {d} is not an integer"))
            })?;
        differences.push(d);
    }
    if differences[0] != 0 {
        return Err(Error::InconsistentFixedData(format!(
            "D_0 = {} is nonzero",
            differences[0]
        )));
    }
    if m.is_multiple_of(2) && differences[(m / 2) as usize] != 0 {
        return Err(Error::InconsistentFixedData("D_{m/2} is nonzero".into()));
    }
    let mut entries = Vec::new();
    for s in 1..m {
        let d = differences[s as usize];
        if differences[(m - s) as usize] != -d {
            return Err(Error::InconsistentFixedData(format!(
                "D_{} != -D_{s}",
                m - s
            )));
        }
        if 2 * s >= m {
            continue;
        }
        let ns = n.n[s as usize] as i64;
        if (ns + d) % 2 != 0 || ns < d.abs() {
            return Err(Error::InconsistentFixedData(format!(
                "n[{s}] = {ns} and D_{s} = {d} give no non-negative (a, b)"
            )));
        }
        entries.push(SigEntry {
            s,
            a: ((ns + d) / 2) as u64,
            b: ((ns - d) / 2) as u64,
        });
    }
    Ok(EigenSignature {
        entries,
        differences,
    })
}

/// h + #{m-th roots of unity strictly above the chord from 1 to ζ^s}.
/// For 0 < s < m/2 those are exactly the ζ^k on the open minor arc, 0 < k < s.
pub fn mcmullen_count(a: &ActionData, s: u32) -> Result<u64> {
    if !a.is_morita_type() {
        return Err(Error::Unsupported(
            "root counting needs every fixed point in rotation class 1".into(),
        ));
    }
    let m = a.m();
    if s == 0 || 2 * s >= m {
        return Err(Error::UnsupportedParameter(format!(
            "root counting needs 0 < s < m/2, got s = {s}"
        )));
    }
    let above = (1..m).filter(|&k| k < s).count() as u64;
    Ok(a.h() + above)
}

/// Checks Σ_s D_s·ζ^{sr} = RHS₀(r) for every r = 1..m−1.
pub fn deg0_residual(a: &ActionData, sig: &EigenSignature) -> Result<()> {
    let m = a.m();
    for r in 1..m {
        let mut coeffs = vec![Rat::zero(); m as usize];
        for (s, &d) in sig.differences.iter().enumerate() {
            let e = (s as u64 * r as u64 % m as u64) as usize;
            coeffs[e] = &coeffs[e] + &Rat::from_int(d);
        }
        let lhs = CycloNum::from_coeffs(m, &coeffs);
        if lhs != rhs0(a, r)? {
            return Err(Error::Internal(format!(
                "degree-0 residual nonzero at r = {r}"
            )));
        }
    }
    Ok(())
}
