//! Branched double covers, Toledo invariants of the Z/7 construction, and
//! equivariant cobordism comparisons of characteristic numbers.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::action::{ak7_example_with, ActionData, ActionSpec};
use crate::arithgroup::factor_list;
use crate::cyclo::{gcd, Rat};
use crate::error::{Error, Result};
use crate::indexcore::{q_label, Coefficient, CohomExpr, SolvedClasses};
use crate::pipeline::{signatures, solve_classes};
use crate::registry::Strategies;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HirzebruchCase {
    pub h: u64,
    pub c1_e1: String,
    pub four_c1_e1: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HirzebruchReport {
    /// 4·c₁(E₁) = (σ + η₁)/2 for each quotient genus.
    pub cases: Vec<HirzebruchCase>,
    pub free_case: HirzebruchCase,
    pub c1_e_minus1: String,
    /// σ(M) = 2σ(M/G) − M₀·M₀ with σ(M/G) ↦ (σ + η)/2, M₀·M₀ ↦ η.
    pub signature_formula_holds: bool,
    pub free_formula_holds: bool,
    pub holds: bool,
}

fn quarter_sum(sigma: i64, eta: i64, den: i64) -> CohomExpr {
    if eta == 0 {
        CohomExpr::rational(Rat::new(sigma, den), &[])
    } else {
        CohomExpr::rational(Rat::new(sigma, den), &[(1, Rat::new(eta, den))])
    }
}

pub fn hirzebruch_class_formula(st: &Strategies) -> Result<HirzebruchReport> {
    let mut cases = Vec::new();
    let mut last_minus = String::new();
    let mut signature_ok = true;
    for h in 3..=8u64 {
        let a = ActionData::from_pairs(2, h, &[(1, 2)])?;
        let (_, solved) = solve_classes(&a, st)?;
        let c1 = solved.class(0);
        let four = c1.scale(&Rat::from_int(4));
        let holds =
            four.same_as(&quarter_sum(1, 1, 2)) && solved.class(1).same_as(&quarter_sum(1, -1, 8));
        // 2·(σ + η)/2 − η = σ
        let quotient = four.clone();
        let rebuilt = quotient
            .scale(&Rat::from_int(2))
            .add(&CohomExpr::rational(Rat::zero(), &[(1, Rat::from_int(-1))]));
        signature_ok &= rebuilt.same_as(&CohomExpr::rational(Rat::one(), &[]));
        last_minus = solved.class(1).to_string();
        cases.push(HirzebruchCase {
            h,
            c1_e1: c1.to_string(),
            four_c1_e1: four.to_string(),
            holds,
        });
    }
    let free = ActionData::from_pairs(2, 3, &[])?;
    let (_, solved) = solve_classes(&free, st)?;
    let four = solved.class(0).scale(&Rat::from_int(4));
    let free_holds = four.same_as(&quarter_sum(1, 0, 2));
    let free_formula_holds = four
        .scale(&Rat::from_int(2))
        .same_as(&CohomExpr::rational(Rat::one(), &[]));
    let free_case = HirzebruchCase {
        h: 3,
        c1_e1: solved.class(0).to_string(),
        four_c1_e1: four.to_string(),
        holds: free_holds,
    };
    let holds =
        cases.iter().all(|c| c.holds) && free_case.holds && signature_ok && free_formula_holds;
    Ok(HirzebruchReport {
        cases,
        free_case,
        c1_e_minus1: last_minus,
        signature_formula_holds: signature_ok,
        free_formula_holds,
        holds,
    })
}

/// Expected σ-coefficients of τ(α_i) for SU(h,h+5), SU(h+1,h+4), SU(h+2,h+3).
pub fn toledo_expected() -> [Rat; 3] {
    [Rat::new(3, 112), Rat::new(5, 112), Rat::new(6, 112)]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToledoEntry {
    pub factor: String,
    pub s: u32,
    pub sigma_coeff: Rat,
    pub expected: Rat,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToledoReport {
    pub h: u64,
    pub j0: u32,
    pub fitted_lambda: Rat,
    pub fitted_on: String,
    pub entries: Vec<ToledoEntry>,
    /// Σ_s w_s·c_s(λ) = 1/4 for the active normalization row.
    pub trace_sum: Rat,
    pub consistency: bool,
    pub tried: Vec<u32>,
}

struct Attempt {
    j0: u32,
    solved: SolvedClasses,
    report: Option<ToledoReport>,
}

fn try_toledo(h: u64, j0: u32, st: &Strategies) -> Result<Attempt> {
    let a = ak7_example_with(h, j0)?.base_action;
    let (n, sig) = signatures(&a, st)?;
    let factors = factor_list(&a, &n, &sig)?;
    let (sys, solved) = solve_classes(&a, st)?;
    let eta_j = a.eta_index()[0];
    // A_s + B_s·λ per SU factor, in factor order
    let lin: Option<Vec<(u32, String, Rat, Rat)>> = factors
        .su_factors
        .iter()
        .map(|f| {
            let c = solved.class(f.s);
            let a0 = c.sigma.as_rat()?.clone();
            let b0 = c
                .eta
                .get(&eta_j)
                .map_or(Some(Rat::zero()), |x| x.as_rat().cloned())?;
            Some((f.s, f.to_string(), a0, b0))
        })
        .collect();
    let expected = toledo_expected();
    let Some(lin) = lin.filter(|l| l.len() == 3) else {
        return Ok(Attempt {
            j0,
            solved,
            report: None,
        });
    };
    // fit on the first factor whose coefficient depends on λ
    let fit = lin
        .iter()
        .zip(&expected)
        .find(|((_, _, _, b), _)| !b.is_zero());
    let Some(((_, label, a0, b0), e)) = fit else {
        return Ok(Attempt {
            j0,
            solved,
            report: None,
        });
    };
    let lambda = &(e - a0) / b0;
    let fitted_on = label.clone();
    let entries: Vec<ToledoEntry> = lin
        .iter()
        .zip(&expected)
        .map(|((s, label, a0, b0), e)| {
            let v = a0 + &(b0 * &lambda);
            ToledoEntry {
                factor: label.clone(),
                s: *s,
                matches: &v == e,
                sigma_coeff: v,
                expected: e.clone(),
            }
        })
        .collect();
    let mut trace_sum = Rat::zero();
    for (s, w) in sys.row0.iter().enumerate() {
        let c = solved.class(s as u32);
        let a0 = c.sigma.as_rat().cloned().unwrap_or_default();
        let b0 = c
            .eta
            .get(&eta_j)
            .and_then(Coefficient::as_rat)
            .cloned()
            .unwrap_or_default();
        trace_sum = &trace_sum + &(&Rat::from_int(*w) * &(&a0 + &(&b0 * &lambda)));
    }
    let consistency = entries.iter().all(|e| e.matches) && trace_sum == Rat::new(1, 4);
    let report = consistency.then(|| ToledoReport {
        h,
        j0,
        fitted_lambda: lambda,
        fitted_on,
        entries,
        trace_sum,
        consistency,
        tried: Vec::new(),
    });
    Ok(Attempt { j0, solved, report })
}

/// Fits η = λσ on one coefficient and checks the other two exactly. With no
/// `j0`, tries class 1 first and then every class coprime to 7.
pub fn toledo_ak7(h: u64, j0: Option<u32>, st: &Strategies) -> Result<ToledoReport> {
    let candidates: Vec<u32> = match j0 {
        Some(j) => vec![j],
        None => (1..7).filter(|&j| gcd(j, 7) == 1).collect(),
    };
    let mut tried = Vec::new();
    let mut attempts = Vec::new();
    for j in candidates {
        let at = try_toledo(h, j, st)?;
        tried.push(j);
        if let Some(mut r) = at.report {
            r.tried = tried;
            return Ok(r);
        }
        attempts.push(at);
    }
    let mut table = String::new();
    for at in &attempts {
        let _ = writeln!(table, "j0 = {} ({}):", at.j0, at.solved.convention);
        for c in &at.solved.classes {
            let _ = writeln!(table, "  c1(E_{}) = {}", q_label(c.s, 7), c.expr);
        }
    }
    Err(Error::ConventionMismatch { table })
}

/// Geometric input for one fibering: the fiber action, the base genus, the
/// signature of the total space and the η_j numbers on the base.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleNumerics {
    pub action: ActionSpec,
    pub base_genus: u64,
    pub sigma: Rat,
    #[serde(default)]
    pub eta: BTreeMap<u32, Rat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BundleNumerics {
    pub fn from_json(text: &str) -> Result<BundleNumerics> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CobordismEntry {
    pub q: String,
    pub first: Coefficient,
    pub second: Coefficient,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CobordismReport {
    pub m: u32,
    pub entries: Vec<CobordismEntry>,
    pub all_equal: bool,
}

/// ⟨c₁(E_q), [base]⟩ for every q with Im q ≥ 0.
pub fn chern_numbers(f: &BundleNumerics, st: &Strategies) -> Result<(u32, Vec<Coefficient>)> {
    let a = f.action.build()?;
    let (_, solved) = solve_classes(&a, st)?;
    let values = solved
        .classes
        .iter()
        .map(|c| c.expr.evaluate(&f.sigma, &f.eta))
        .collect::<Result<_>>()?;
    Ok((a.m(), values))
}

pub fn cobordism_compare(
    f1: &BundleNumerics,
    f2: &BundleNumerics,
    st: &Strategies,
) -> Result<CobordismReport> {
    let (m1, v1) = chern_numbers(f1, st)?;
    let (m2, v2) = chern_numbers(f2, st)?;
    if m1 != m2 {
        return Err(Error::InconsistentInputs(format!(
            "group orders differ: {m1} vs {m2}"
        )));
    }
    let entries: Vec<CobordismEntry> = v1
        .into_iter()
        .zip(v2)
        .enumerate()
        .map(|(s, (x, y))| CobordismEntry {
            q: q_label(s as u32, m1),
            equal: x == y,
            first: x,
            second: y,
        })
        .collect();
    Ok(CobordismReport {
        m: m1,
        all_equal: entries.iter().all(|e| e.equal),
        entries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenRank {
    pub s: u32,
    pub q: String,
    pub rank: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenRankReport {
    pub ranks: Vec<EigenRank>,
    pub total: u64,
    pub g: u64,
}

impl EigenRankReport {
    pub fn rank(&self, s: u32) -> u64 {
        self.ranks[s as usize].rank
    }
}

/// Complex ranks of E_{ζ^s}, s = 0..m−1: h, n[m/2]/2, a_s and b_s.
pub fn eigenrank_report(a: &ActionData, st: &Strategies) -> Result<EigenRankReport> {
    let m = a.m();
    let (n, sig) = signatures(a, st)?;
    let ranks: Vec<EigenRank> = (0..m)
        .map(|s| {
            let rank = if s == 0 {
                a.h()
            } else if 2 * s == m {
                n.n[s as usize] / 2
            } else if 2 * s < m {
                sig.entry(s).map_or(0, |e| e.a)
            } else {
                sig.entry(m - s).map_or(0, |e| e.b)
            };
            EigenRank {
                s,
                q: if 2 * s > m {
                    format!("zeta^{s}")
                } else {
                    q_label(s, m)
                },
                rank,
            }
        })
        .collect();
    let total = ranks.iter().map(|r| r.rank).sum();
    if total != a.g() {
        return Err(Error::Internal(format!(
            "eigenbundle ranks sum to {total}, genus is {}",
            a.g()
        )));
    }
    Ok(EigenRankReport {
        ranks,
        total,
        g: a.g(),
    })
}
