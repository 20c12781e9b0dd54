use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::expr::{Coefficient, CohomExpr};
use super::system::{character_exponents, character_weight, k_entry, Column, IndexSystem};
use crate::cyclo::{CycloNum, Rat};
use crate::error::{Error, Result};
use crate::linalg::CycloMatrix;

/// Produces J⁻¹ for a system; results are memoized per (solver, m, row).
pub trait ClassSolver: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// `None` when J is singular.
    fn inverse(&self, sys: &IndexSystem) -> Result<Option<CycloMatrix>>;
}

/// Gauss-Jordan on [J | I] over Q(ζ_m).
pub struct EliminationSolver;

impl ClassSolver for EliminationSolver {
    fn name(&self) -> &'static str {
        "elimination"
    }

    fn description(&self) -> &'static str {
        "Gauss-Jordan elimination over Q(zeta_m)"
    }

    fn inverse(&self, sys: &IndexSystem) -> Result<Option<CycloMatrix>> {
        let n = sys.j.rows();
        sys.j.solve(&CycloMatrix::identity(sys.m, n))
    }
}

/// Orthogonality of real characters: JᵀWJ = m·C with W = C = diag(1, 2, …, 2, 1),
/// hence J⁻¹ = (mC)⁻¹JᵀW. Valid only when row 0 is the character row.
pub struct OrthogonalitySolver;

impl ClassSolver for OrthogonalitySolver {
    fn name(&self) -> &'static str {
        "orthogonality"
    }

    fn description(&self) -> &'static str {
        "closed-form inverse from character orthogonality (needs the hodge-trace row)"
    }

    fn inverse(&self, sys: &IndexSystem) -> Result<Option<CycloMatrix>> {
        let m = sys.m;
        let weights: Vec<i64> = (0..=sys.d).map(|s| character_weight(s, m)).collect();
        if sys.row0 != weights {
            return Err(Error::Unsupported(format!(
                "the orthogonality solver needs the hodge-trace row, not '{}'",
                sys.convention
            )));
        }
        let n = sys.j.rows();
        Ok(Some(CycloMatrix::from_fn(m, n, n, |s, r| {
            let k = Rat::new(weights[r], m as i64 * weights[s]);
            sys.j.get(r, s).scale(&k)
        })))
    }
}

type InverseKey = (&'static str, u32, &'static str);
type ColumnKey = (&'static str, u32, &'static str, Column);

fn inverse_cache() -> &'static Mutex<HashMap<InverseKey, Arc<CycloMatrix>>> {
    static C: OnceLock<Mutex<HashMap<InverseKey, Arc<CycloMatrix>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn column_cache() -> &'static Mutex<HashMap<ColumnKey, Arc<Vec<Coefficient>>>> {
    static C: OnceLock<Mutex<HashMap<ColumnKey, Arc<Vec<Coefficient>>>>> = OnceLock::new();
    C.get_or_init(Default::default)
}

fn cached_inverse(solver: &dyn ClassSolver, sys: &IndexSystem) -> Result<Arc<CycloMatrix>> {
    let key = (solver.name(), sys.m, sys.convention);
    if let Some(v) = inverse_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let inv = solver.inverse(sys)?.ok_or_else(|| {
        Error::Internal(format!(
            "J is singular for m = {} under '{}'",
            sys.m, sys.convention
        ))
    })?;
    let inv = Arc::new(inv);
    inverse_cache().lock().unwrap().insert(key, inv.clone());
    Ok(inv)
}

fn solved_column(
    solver: &dyn ClassSolver,
    sys: &IndexSystem,
    col: Column,
) -> Result<Arc<Vec<Coefficient>>> {
    let key = (solver.name(), sys.m, sys.convention, col);
    if let Some(v) = column_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let inv = cached_inverse(solver, sys)?;
    let rhs: Vec<CycloNum> = (0..=sys.d)
        .map(|r| k_entry(col, r, sys.m))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(rhs.len());
    for s in 0..inv.rows() {
        let mut acc = CycloNum::zero(sys.m);
        for (r, v) in rhs.iter().enumerate() {
            if !v.is_zero() {
                acc = &acc + &(inv.get(s, r) * v);
            }
        }
        out.push(Coefficient::from_cyclo(acc));
    }
    let out = Arc::new(out);
    column_cache().lock().unwrap().insert(key, out.clone());
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvedClass {
    pub s: u32,
    pub expr: CohomExpr,
}

/// c₁(E_{ζ^s}) for s = 0..⌊m/2⌋ over the symbol basis {σ, η_j}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvedClasses {
    pub m: u32,
    pub convention: &'static str,
    pub eta_index: Vec<u32>,
    pub classes: Vec<SolvedClass>,
}

impl SolvedClasses {
    pub fn class(&self, s: u32) -> &CohomExpr {
        &self.classes[s as usize].expr
    }

    /// True when some coefficient stayed outside Q.
    pub fn has_irrational(&self) -> bool {
        self.classes.iter().any(|c| !c.expr.is_rational())
    }

    /// The (d+1)×(n+1) change of basis J⁻¹K, columns σ, η_{j₁}, ….
    pub fn matrix(&self) -> Vec<Vec<Coefficient>> {
        self.classes
            .iter()
            .map(|c| {
                std::iter::once(c.expr.sigma.clone())
                    .chain(
                        self.eta_index
                            .iter()
                            .map(|j| c.expr.eta.get(j).cloned().unwrap_or_else(Coefficient::zero)),
                    )
                    .collect()
            })
            .collect()
    }
}

pub fn q_label(s: u32, m: u32) -> String {
    if s == 0 {
        "1".into()
    } else if 2 * s == m {
        "-1".into()
    } else {
        format!("zeta^{s}")
    }
}

impl Serialize for SolvedClass {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = ser.serialize_map(Some(4))?;
        map.serialize_entry("s", &self.s)?;
        map.serialize_entry("q", &format!("zeta^{}", self.s))?;
        map.serialize_entry("sigma", &self.expr.sigma)?;
        let eta: BTreeMap<String, &Coefficient> = self
            .expr
            .eta
            .iter()
            .map(|(j, c)| (j.to_string(), c))
            .collect();
        map.serialize_entry("eta", &eta)?;
        map.end()
    }
}

/// c = J⁻¹K·(σ, η…)ᵀ, followed by a check of every row r = 0..m−1 of the
/// original system, including the redundant rows r > ⌊m/2⌋.
pub fn solve_deg1(sys: &IndexSystem, solver: &dyn ClassSolver) -> Result<SolvedClasses> {
    let cols = sys.columns();
    let solved: Vec<Arc<Vec<Coefficient>>> = cols
        .iter()
        .map(|&c| solved_column(solver, sys, c))
        .collect::<Result<_>>()?;
    let classes = (0..=sys.d)
        .map(|s| {
            let mut eta = BTreeMap::new();
            for (i, col) in cols.iter().enumerate().skip(1) {
                if let Column::Eta(j) = col {
                    eta.insert(*j, solved[i][s as usize].clone());
                }
            }
            SolvedClass {
                s,
                expr: CohomExpr {
                    sigma: solved[0][s as usize].clone(),
                    eta,
                },
            }
        })
        .collect();
    let out = SolvedClasses {
        m: sys.m,
        convention: sys.convention,
        eta_index: sys.eta_index.clone(),
        classes,
    };
    verify_deg1(sys, &out)?;
    Ok(out)
}

/// Substitutes the solution into row 0 and into the character rows for
/// every r = 1..m−1.
pub fn verify_deg1(sys: &IndexSystem, solved: &SolvedClasses) -> Result<()> {
    let m = sys.m;
    for (ci, col) in sys.columns().into_iter().enumerate() {
        let x: Vec<Coefficient> = solved
            .matrix()
            .into_iter()
            .map(|row| row[ci].clone())
            .collect();
        // row 0
        let mut acc = Coefficient::zero();
        for (s, w) in sys.row0.iter().enumerate() {
            acc = acc.add(&x[s].mul_rat(&Rat::from_int(*w)));
        }
        if acc.to_cyclo(m) != k_entry(col, 0, m)? {
            return Err(residual_error(col, 0));
        }
        let rational: Option<Vec<&Rat>> = x.iter().map(Coefficient::as_rat).collect();
        for r in 1..m {
            let lhs = match &rational {
                Some(q) => {
                    let mut coeffs = vec![Rat::zero(); m as usize];
                    for (s, v) in q.iter().enumerate() {
                        if v.is_zero() {
                            continue;
                        }
                        for e in character_exponents(s as u32, r, m) {
                            coeffs[e] = &coeffs[e] + *v;
                        }
                    }
                    CycloNum::from_coeffs(m, &coeffs)
                }
                None => x.iter().enumerate().fold(CycloNum::zero(m), |acc, (s, v)| {
                    let chi = super::system::character_value(s as u32, r, m);
                    &acc + &(&chi * &v.to_cyclo(m))
                }),
            };
            if lhs != k_entry(col, r, m)? {
                return Err(residual_error(col, r));
            }
        }
    }
    Ok(())
}

fn residual_error(col: Column, r: u32) -> Error {
    Error::Internal(format!(
        "degree-1 residual nonzero in column {col:?} at r = {r}"
    ))
}

#[cfg(test)]
mod tests {
    use super::super::system::{build_system, FlatSum, HodgeTrace, SigmaRow};
    use super::*;
    use crate::action::ActionData;

    fn solve(a: &ActionData, row: &dyn SigmaRow, solver: &dyn ClassSolver) -> SolvedClasses {
        solve_deg1(&build_system(a, row).unwrap(), solver).unwrap()
    }

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn m2_with_fixed_points() {
        let a = ActionData::from_pairs(2, 3, &[(1, 2)]).unwrap();
        for row in [&HodgeTrace as &dyn SigmaRow, &FlatSum] {
            let c = solve(&a, row, &EliminationSolver);
            assert_eq!(c.class(0), &CohomExpr::rational(r(1, 8), &[(1, r(1, 8))]));
            assert_eq!(c.class(1), &CohomExpr::rational(r(1, 8), &[(1, r(-1, 8))]));
        }
    }

    #[test]
    fn m2_free() {
        let a = ActionData::from_pairs(2, 3, &[]).unwrap();
        let c = solve(&a, &HodgeTrace, &EliminationSolver);
        assert_eq!(c.class(0), &CohomExpr::rational(r(1, 8), &[]));
        assert_eq!(c.class(1), &CohomExpr::rational(r(1, 8), &[]));
    }

    #[test]
    fn free_action_splits_sigma_evenly_over_all_eigenvalues() {
        for m in 2..=12 {
            let a = ActionData::from_pairs(m, 2, &[]).unwrap();
            let c = solve(&a, &HodgeTrace, &EliminationSolver);
            for s in 0..=m / 2 {
                assert_eq!(c.class(s), &CohomExpr::rational(r(1, 4 * m as i64), &[]));
            }
        }
    }

    #[test]
    fn m7_table() {
        let a = ActionData::from_pairs(7, 2, &[(1, 7)]).unwrap();
        let c = solve(&a, &HodgeTrace, &EliminationSolver);
        let expected = [(4, 64), (4, 16), (4, -16), (4, -32)];
        for (s, (a0, b0)) in expected.iter().enumerate() {
            let e = CohomExpr::rational(r(*a0, 112), &[(1, r(*b0, 112))]);
            assert_eq!(c.class(s as u32), &e, "s={s}");
        }
    }

    #[test]
    fn solvers_agree() {
        for (m, pairs) in [
            (5u32, vec![(1u32, 5u64)]),
            (8, vec![(1, 1), (3, 1), (5, 1), (7, 1)]),
            (12, vec![(1, 6), (5, 6)]),
            (9, vec![(1, 2), (2, 3), (4, 4)]),
        ] {
            let a = ActionData::from_pairs(m, 2, &pairs).unwrap();
            let x = solve(&a, &HodgeTrace, &EliminationSolver);
            let y = solve(&a, &HodgeTrace, &OrthogonalitySolver);
            assert_eq!(x, y, "m={m}");
        }
        let a = ActionData::from_pairs(5, 1, &[(1, 5)]).unwrap();
        let sys = build_system(&a, &FlatSum).unwrap();
        assert!(solve_deg1(&sys, &OrthogonalitySolver).is_err());
    }

    #[test]
    fn conjugation_leaves_classes_unchanged() {
        let a = ActionData::from_pairs(9, 1, &[(1, 2), (2, 3), (4, 4)]).unwrap();
        let x = solve(&a, &HodgeTrace, &EliminationSolver);
        let y = solve(&a.conjugate(), &HodgeTrace, &EliminationSolver);
        assert_eq!(x, y);
    }

    #[test]
    fn trace_row_sums_to_quarter_sigma() {
        let a = ActionData::from_pairs(10, 1, &[(1, 4), (3, 2)]).unwrap();
        let c = solve(&a, &HodgeTrace, &EliminationSolver);
        let mut acc = CohomExpr::zero();
        for s in 0..=5 {
            acc = acc.add(&c.class(s).scale(&Rat::from_int(character_weight(s, 10))));
        }
        assert!(acc.same_as(&CohomExpr::rational(r(1, 4), &[])));
    }

    #[test]
    fn serialized_shape() {
        let a = ActionData::from_pairs(2, 3, &[(1, 2)]).unwrap();
        let c = solve(&a, &HodgeTrace, &EliminationSolver);
        let s = serde_json::to_string(&c.classes[0]).unwrap();
        assert_eq!(s, r#"{"s":0,"q":"zeta^0","sigma":"1/8","eta":{"1":"1/8"}}"#);
    }
}
