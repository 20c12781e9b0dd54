//! Real factors of Sp^G, the degree-two basis {x_q}, stable range, and the
//! image of the classifying map in degree two.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::action::ActionData;
use crate::cyclo::Rat;
use crate::error::{Error, Result};
use crate::indexcore::{q_label, Coefficient, EigenSignature, SolvedClasses};
use crate::reptheory::IsotypicDecomp;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpFactor {
    pub label: String,
    /// 2h (or 2h′).
    pub dim: u64,
    pub s: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuFactor {
    pub s: u32,
    pub a: u64,
    pub b: u64,
}

impl fmt::Display for SuFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SU({},{})", self.a, self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorList {
    pub sp_factors: Vec<SpFactor>,
    /// Ordered by min(a, b), then by s.
    pub su_factors: Vec<SuFactor>,
    pub field_labels: BTreeMap<u32, String>,
}

impl FactorList {
    pub fn h(&self) -> u64 {
        self.sp_factors[0].dim / 2
    }

    pub fn h_prime(&self) -> Option<u64> {
        self.sp_factors.get(1).map(|f| f.dim / 2)
    }

    pub fn su_for(&self, s: u32) -> Option<&SuFactor> {
        self.su_factors.iter().find(|f| f.s == s)
    }
}

impl fmt::Display for FactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .sp_factors
            .iter()
            .map(|s| s.label.clone())
            .chain(self.su_factors.iter().map(|s| s.to_string()))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn factor_list(a: &ActionData, n: &IsotypicDecomp, sig: &EigenSignature) -> Result<FactorList> {
    let m = a.m();
    if n.n.len() != m as usize {
        return Err(Error::InconsistentInputs(format!(
            "{} multiplicities for m = {m}",
            n.n.len()
        )));
    }
    let h = n.n[0] / 2;
    if h != a.h() {
        return Err(Error::InconsistentInputs(format!(
            "n[0]/2 = {h} but the quotient genus is {}",
            a.h()
        )));
    }
    let mut sp_factors = vec![SpFactor {
        label: format!("Sp_{}", 2 * h),
        dim: 2 * h,
        s: 0,
    }];
    if m.is_multiple_of(2) {
        let two_hp = n.n[(m / 2) as usize];
        sp_factors.push(SpFactor {
            label: format!("Sp_{two_hp}"),
            dim: two_hp,
            s: m / 2,
        });
    }
    let mut su_factors = Vec::new();
    for s in 1..m.div_ceil(2) {
        let e = sig
            .entry(s)
            .ok_or_else(|| Error::InconsistentInputs(format!("no signature for s = {s}")))?;
        if e.a + e.b != n.n[s as usize] {
            return Err(Error::InconsistentInputs(format!(
                "a + b = {} but n[{s}] = {}",
                e.a + e.b,
                n.n[s as usize]
            )));
        }
        su_factors.push(SuFactor { s, a: e.a, b: e.b });
    }
    su_factors.sort_by_key(|f| (f.a.min(f.b), f.s));
    let total: u64 = sp_factors.iter().map(|f| f.dim).sum::<u64>()
        + 2 * su_factors.iter().map(|f| f.a + f.b).sum::<u64>();
    if total != 2 * a.g() {
        return Err(Error::InconsistentInputs(format!(
            "factor dimensions sum to {total}, expected 2g = {}",
            2 * a.g()
        )));
    }
    let field_labels = (3..=m)
        .filter(|k| m.is_multiple_of(*k))
        .map(|k| (k, format!("Q(zeta_{k} + zeta_{k}^-1)")))
        .collect();
    Ok(FactorList {
        sp_factors,
        su_factors,
        field_labels,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableRangeReport {
    pub f_rank_lower: i64,
    pub borel_bound: i64,
    pub degree2_valid: bool,
    pub h_at_least_3: bool,
    pub h_prime_at_least_3: Option<bool>,
    pub signatures_positive: bool,
    pub caveat: Option<String>,
}

pub fn stable_range(a: &ActionData, f: &FactorList) -> StableRangeReport {
    let f_rank_lower = a.h() as i64 - 1;
    let borel_bound = (f_rank_lower - 1).div_euclid(2);
    let h_at_least_3 = a.h() >= 3;
    let h_prime_at_least_3 = f.h_prime().map(|hp| hp >= 3);
    let signatures_positive = f.su_factors.iter().all(|s| s.a >= 1 && s.b >= 1);
    let degree2_valid = borel_bound >= 2
        && h_at_least_3
        && h_prime_at_least_3.unwrap_or(true)
        && signatures_positive;
    let caveat = (!degree2_valid).then(|| {
        "outside the stable range: degree-two statements need quotient genus >= 6, \
         h, h' >= 3 and all a_q, b_q >= 1"
            .to_string()
    });
    StableRangeReport {
        f_rank_lower,
        borel_bound,
        degree2_valid,
        h_at_least_3,
        h_prime_at_least_3,
        signatures_positive,
        caveat,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H2Symbol {
    pub symbol: String,
    pub s: u32,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H2Basis {
    pub symbols: Vec<H2Symbol>,
    pub caveat: Option<String>,
}

/// x_{ζ^s}, s = 0..⌊m/2⌋, each pulled back from one real factor.
pub fn h2_basis(m: u32, f: &FactorList, range: &StableRangeReport) -> H2Basis {
    let symbols = (0..=m / 2)
        .map(|s| {
            let source = if let Some(sp) = f.sp_factors.iter().find(|sp| sp.s == s) {
                sp.label.clone()
            } else if let Some(su) = f.su_for(s) {
                su.to_string()
            } else {
                "?".into()
            };
            H2Symbol {
                symbol: format!("x_{}", q_label(s, m)),
                s,
                source,
            }
        })
        .collect();
    H2Basis {
        symbols,
        caveat: range.caveat.clone(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageBasis {
    pub basis: Vec<String>,
    pub matrix: Vec<Vec<Coefficient>>,
    pub identification: Vec<String>,
}

/// The basis {σ, η_j} of the degree-two image and the matrix expressing
/// x_q = c₁(E_q) = c₁(E_q̄) in it.
pub fn image_basis(solved: &SolvedClasses) -> ImageBasis {
    let basis = std::iter::once("sigma".to_string())
        .chain(solved.eta_index.iter().map(|j| format!("eta_{j}")))
        .collect();
    let identification = solved
        .classes
        .iter()
        .map(|c| {
            let q = q_label(c.s, solved.m);
            if c.s == 0 || 2 * c.s == solved.m {
                format!("x_{q} = c1(E_{q})")
            } else {
                format!("x_{q} = c1(E_{q}) = c1(E_zeta^{})", solved.m - c.s)
            }
        })
        .collect();
    ImageBasis {
        basis,
        matrix: solved.matrix(),
        identification,
    }
}

/// Dimension bookkeeping 2h + 2h′ + 2Σ(a + b) = 2g.
pub fn dimension_check(a: &ActionData, f: &FactorList) -> bool {
    let sp: u64 = f.sp_factors.iter().map(|s| s.dim).sum();
    let su: u64 = f.su_factors.iter().map(|s| s.a + s.b).sum();
    sp + 2 * su == 2 * a.g()
}

/// Rational form of an image matrix, when every entry lies in Q.
pub fn rational_matrix(img: &ImageBasis) -> Option<Vec<Vec<Rat>>> {
    img.matrix
        .iter()
        .map(|row| row.iter().map(|c| c.as_rat().cloned()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{ak7_example, morita_example};
    use crate::indexcore::{build_system, solve_deg0, solve_deg1, EliminationSolver, HodgeTrace};
    use crate::reptheory::{character_h1, complex_multiplicities};

    fn factors(a: &ActionData) -> FactorList {
        let n = complex_multiplicities(&character_h1(a)).unwrap();
        let sig = solve_deg0(a, &n).unwrap();
        factor_list(a, &n, &sig).unwrap()
    }

    #[test]
    fn factor_examples() {
        for h in 0..4 {
            let f = factors(&morita_example(7, h).unwrap());
            assert_eq!(
                f.to_string(),
                format!(
                    "Sp_{} SU({},{}) SU({},{}) SU({},{})",
                    2 * h,
                    h,
                    h + 5,
                    h + 1,
                    h + 4,
                    h + 2,
                    h + 3
                )
            );
        }
        let f = factors(&ActionData::from_pairs(2, 3, &[(1, 2)]).unwrap());
        assert_eq!(f.to_string(), "Sp_6 Sp_6");
        let f = factors(&ak7_example(3).unwrap().base_action);
        assert_eq!(f.to_string(), "Sp_6 SU(3,8) SU(4,7) SU(5,6)");
        assert_eq!(
            f.field_labels,
            BTreeMap::from([(7, "Q(zeta_7 + zeta_7^-1)".to_string())])
        );
    }

    #[test]
    fn h2_and_stable_range() {
        let a = ActionData::from_pairs(2, 3, &[(1, 2)]).unwrap();
        let f = factors(&a);
        let r = stable_range(&a, &f);
        let b = h2_basis(2, &f, &r);
        let syms: Vec<&str> = b.symbols.iter().map(|s| s.symbol.as_str()).collect();
        assert_eq!(syms, vec!["x_1", "x_-1"]);
        assert_eq!(
            (r.f_rank_lower, r.borel_bound, r.degree2_valid),
            (2, 0, false)
        );
        assert!(b.caveat.is_some());

        let a = morita_example(7, 6).unwrap();
        let f = factors(&a);
        let r = stable_range(&a, &f);
        assert_eq!(
            (r.f_rank_lower, r.borel_bound, r.degree2_valid),
            (5, 2, true)
        );
        assert_eq!(h2_basis(7, &f, &r).symbols.len(), 4);

        let a = morita_example(5, 1).unwrap();
        let f = factors(&a);
        assert_eq!(h2_basis(5, &f, &stable_range(&a, &f)).symbols.len(), 3);
    }

    #[test]
    fn stable_range_is_monotone_in_h() {
        for m in 3..=9 {
            for h in 0..10 {
                let a = morita_example(m, h).unwrap();
                let b = morita_example(m, h + 1).unwrap();
                let ra = stable_range(&a, &factors(&a));
                let rb = stable_range(&b, &factors(&b));
                assert!(!ra.degree2_valid || rb.degree2_valid);
            }
        }
    }

    #[test]
    fn image_examples() {
        let a = ActionData::from_pairs(2, 3, &[(1, 2)]).unwrap();
        let solved =
            solve_deg1(&build_system(&a, &HodgeTrace).unwrap(), &EliminationSolver).unwrap();
        let img = image_basis(&solved);
        assert_eq!(img.basis, vec!["sigma", "eta_1"]);
        let m = rational_matrix(&img).unwrap();
        assert_eq!(
            m,
            vec![
                vec![Rat::new(1, 8), Rat::new(1, 8)],
                vec![Rat::new(1, 8), Rat::new(-1, 8)]
            ]
        );
        let free = ActionData::from_pairs(3, 2, &[]).unwrap();
        let solved = solve_deg1(
            &build_system(&free, &HodgeTrace).unwrap(),
            &EliminationSolver,
        )
        .unwrap();
        assert_eq!(image_basis(&solved).basis, vec!["sigma"]);
        let a7 = morita_example(7, 2).unwrap();
        let solved =
            solve_deg1(&build_system(&a7, &HodgeTrace).unwrap(), &EliminationSolver).unwrap();
        let img = image_basis(&solved);
        assert_eq!((img.matrix.len(), img.matrix[0].len()), (4, 2));
    }
}
