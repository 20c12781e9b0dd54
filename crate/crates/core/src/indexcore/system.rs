use serde::Serialize;

use crate::action::ActionData;
use crate::cyclo::{csc2_half, CycloNum, Rat};
use crate::error::Result;
use crate::linalg::CycloMatrix;

/// The degree-two normalization row r = 0 of the system: weights w_s with
/// Σ_s w_s·c₁(E_{ζ^s}) = σ/4 over s = 0..⌊m/2⌋.
pub trait SigmaRow: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn weights(&self, m: u32) -> Vec<i64>;
}

/// Trace of the identity: every non-real eigenvalue pairs with its
/// conjugate, so w = (1, 2, …, 2, 1) (last entry 1 only for even m).
/// Coincides with the character row r = 0.
pub struct HodgeTrace;

impl SigmaRow for HodgeTrace {
    fn name(&self) -> &'static str {
        "hodge-trace"
    }

    fn description(&self) -> &'static str {
        "c(1) + c(-1) + 2 * sum over 0 < s < m/2 of c(zeta^s) = sigma/4"
    }

    fn weights(&self, m: u32) -> Vec<i64> {
        (0..=m / 2).map(|s| character_weight(s, m)).collect()
    }
}

/// Each class with Im q ≥ 0 counted once.
pub struct FlatSum;

impl SigmaRow for FlatSum {
    fn name(&self) -> &'static str {
        "flat-sum"
    }

    fn description(&self) -> &'static str {
        "sum over Im q >= 0 of c(q) = sigma/4, each class counted once"
    }

    fn weights(&self, m: u32) -> Vec<i64> {
        vec![1; (m / 2 + 1) as usize]
    }
}

/// 1 for the real characters s = 0, m/2 and 2 otherwise.
pub fn character_weight(s: u32, m: u32) -> i64 {
    if s == 0 || 2 * s == m {
        1
    } else {
        2
    }
}

/// Exponents e with χ_s(τ^r) = Σ ζ^e, for the real characters
/// χ_s = ζ^s + ζ^{−s} (0 < s < m/2), χ_0 = 1, χ_{m/2} = (−1)^r.
pub fn character_exponents(s: u32, r: u32, m: u32) -> Vec<usize> {
    let e = (s as u64 * r as u64 % m as u64) as usize;
    if s == 0 || 2 * s == m {
        vec![e]
    } else {
        vec![e, (m as usize - e) % m as usize]
    }
}

pub fn character_value(s: u32, r: u32, m: u32) -> CycloNum {
    character_exponents(s, r, m)
        .into_iter()
        .fold(CycloNum::zero(m), |acc, e| {
            &acc + &CycloNum::root(m, e as i64)
        })
}

/// Which right-hand-side column: σ or a merged η class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Column {
    Sigma,
    Eta(u32),
}

/// The K entry of `col` in row r, for any r = 0..m−1 (rows beyond ⌊m/2⌋
/// are the redundant ones).
pub fn k_entry(col: Column, r: u32, m: u32) -> Result<CycloNum> {
    let quarter = Rat::new(1, 4);
    Ok(match (col, r) {
        (Column::Sigma, 0) => CycloNum::from_rat(m, &quarter),
        (Column::Sigma, _) | (Column::Eta(_), 0) => CycloNum::zero(m),
        (Column::Eta(j), r) => csc2_half(j as i64 * r as i64, m)?.scale(&quarter),
    })
}

/// J·c = K·(σ, η_{j₁}, …)ᵀ, unknowns c_s = c₁(E_{ζ^s}) for s = 0..d.
#[derive(Clone, Debug, Serialize)]
pub struct IndexSystem {
    pub m: u32,
    pub d: u32,
    pub convention: &'static str,
    pub row0: Vec<i64>,
    pub eta_index: Vec<u32>,
    pub j: CycloMatrix,
    pub k: CycloMatrix,
}

impl IndexSystem {
    pub fn columns(&self) -> Vec<Column> {
        std::iter::once(Column::Sigma)
            .chain(self.eta_index.iter().map(|&j| Column::Eta(j)))
            .collect()
    }
}

/// Square coefficient matrix J for conductor m under a normalization row.
pub fn j_matrix(m: u32, row: &dyn SigmaRow) -> CycloMatrix {
    let d = m / 2;
    let w = row.weights(m);
    CycloMatrix::from_fn(m, (d + 1) as usize, (d + 1) as usize, |r, s| {
        if r == 0 {
            CycloNum::from_int(m, w[s])
        } else {
            character_value(s as u32, r as u32, m)
        }
    })
}

pub fn build_system(a: &ActionData, row: &dyn SigmaRow) -> Result<IndexSystem> {
    let m = a.m();
    let d = m / 2;
    let eta_index = a.eta_index();
    let cols: Vec<Column> = std::iter::once(Column::Sigma)
        .chain(eta_index.iter().map(|&j| Column::Eta(j)))
        .collect();
    let mut k = CycloMatrix::zeros(m, (d + 1) as usize, cols.len());
    for r in 0..=d {
        for (c, &col) in cols.iter().enumerate() {
            k.set(r as usize, c, k_entry(col, r, m)?);
        }
    }
    Ok(IndexSystem {
        m,
        d,
        convention: row.name(),
        row0: row.weights(m),
        eta_index,
        j: j_matrix(m, row),
        k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(m: u32, rows: &[&[i64]]) -> CycloMatrix {
        CycloMatrix::from_fn(m, rows.len(), rows[0].len(), |i, j| {
            CycloNum::from_int(m, rows[i][j])
        })
    }

    #[test]
    fn m2_system() {
        let a = ActionData::from_pairs(2, 3, &[(1, 2)]).unwrap();
        for row in [&HodgeTrace as &dyn SigmaRow, &FlatSum] {
            let sys = build_system(&a, row).unwrap();
            assert_eq!(sys.j, ints(2, &[&[1, 1], &[1, -1]]));
            let q = CycloNum::from_rat(2, &Rat::new(1, 4));
            let z = CycloNum::zero(2);
            let expected =
                CycloMatrix::from_fn(2, 2, 2, |i, j| if i == j { q.clone() } else { z.clone() });
            assert_eq!(sys.k, expected);
        }
    }

    #[test]
    fn m3_free_system() {
        let a = ActionData::from_pairs(3, 2, &[]).unwrap();
        let flat = build_system(&a, &FlatSum).unwrap();
        assert_eq!(flat.j, ints(3, &[&[1, 1], &[1, -1]]));
        let trace = build_system(&a, &HodgeTrace).unwrap();
        assert_eq!(trace.j, ints(3, &[&[1, 2], &[1, -1]]));
        assert_eq!(trace.k.cols(), 1);
        assert_eq!(trace.k.get(0, 0), &CycloNum::from_rat(3, &Rat::new(1, 4)));
        assert!(trace.k.get(1, 0).is_zero());
    }

    #[test]
    fn m4_merges_conjugate_classes() {
        let a = ActionData::from_pairs(4, 6, &[(1, 1), (3, 1)]).unwrap();
        let sys = build_system(&a, &HodgeTrace).unwrap();
        assert_eq!((sys.j.rows(), sys.j.cols()), (3, 3));
        assert_eq!(sys.eta_index, vec![1]);
        assert_eq!(sys.k.cols(), 2);
    }

    #[test]
    fn j_entries_are_real_characters() {
        for m in 2..=30u32 {
            let j = j_matrix(m, &HodgeTrace);
            for r in 0..=m / 2 {
                for s in 0..=m / 2 {
                    let v = j.get(r as usize, s as usize);
                    assert!(v.is_real());
                    let expected = if s == 0 {
                        CycloNum::one(m)
                    } else if 2 * s == m {
                        CycloNum::from_int(m, if r % 2 == 0 { 1 } else { -1 })
                    } else {
                        &CycloNum::root(m, (s * r) as i64) + &CycloNum::root(m, -((s * r) as i64))
                    };
                    assert_eq!(v, &expected, "m={m} r={r} s={s}");
                }
            }
        }
    }
}
