//! Verification sweeps. Each check returns a `CheckResult`; `run_all`
//! evaluates them in order and is what `gindex verify` and the acceptance
//! target print.

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::action::{ak2_standard, ak7_example, morita_example, ActionData};
use crate::apps::{eigenrank_report, hirzebruch_class_formula, toledo_ak7};
use crate::arithgroup::{dimension_check, factor_list};
use crate::certify::SplitPrimes;
use crate::circulant::{
    certify_basis, circulant_eigen_check, csc_matrix, group_character_check, rank_certificate,
    unit_group,
};
use crate::cyclo::{csc2_half, gcd, icot_half, inverse_mod};
use crate::error::Result;
use crate::indexcore::{build_system, coth_jet, j_matrix, RootCount};
use crate::linalg::CycloMatrix;
use crate::pipeline::{signatures, solve_classes};
use crate::registry::{Registries, Strategies};
use crate::reptheory::{character_h1, CharacterDft, ClosedForm, MultiplicityMethod};

use crate::indexcore::Deg0Method;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub detail: String,
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
}

impl CheckResult {
    fn new(id: &str, name: &str, cases: usize, failures: Vec<String>, detail: String) -> Self {
        CheckResult {
            id: id.into(),
            name: name.into(),
            passed: failures.is_empty(),
            cases,
            detail,
            failures,
            elapsed_ms: 0,
        }
    }

    /// One-line summary, "PASS"/"FAIL" first.
    pub fn line(&self) -> String {
        let mut s = format!(
            "{} [{}] {}: {} cases, {} ms",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.cases,
            self.elapsed_ms
        );
        if !self.detail.is_empty() {
            s.push_str(&format!(" ({})", self.detail));
        }
        if let Some(f) = self.failures.first() {
            s.push_str(&format!("; first failure: {f}"));
            if self.failures.len() > 1 {
                s.push_str(&format!(" (+{} more)", self.failures.len() - 1));
            }
        }
        s
    }
}

fn timed(f: impl FnOnce() -> CheckResult) -> CheckResult {
    let t = Instant::now();
    let mut r = f();
    r.elapsed_ms = t.elapsed().as_millis();
    r
}

fn err_string(e: crate::Error) -> String {
    e.to_string()
}

/// Bounds for the exhaustive invariant sweep.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SweepBounds {
    pub max_m: u32,
    pub max_z: u64,
    pub max_h: u64,
}

impl Default for SweepBounds {
    fn default() -> Self {
        SweepBounds {
            max_m: 20,
            max_z: 4,
            max_h: 1,
        }
    }
}

// ---- Morita factor lists ----

/// Sp_{2h} [Sp_{2h+m−2}] SU(h+i, h+m−2−i), i = 0..#{0<s<m/2}−1.
pub fn expected_morita_factors(m: u32, h: u64) -> String {
    let mut parts = vec![format!("Sp_{}", 2 * h)];
    if m.is_multiple_of(2) {
        parts.push(format!("Sp_{}", 2 * h + m as u64 - 2));
    }
    for i in 0..(m.div_ceil(2) - 1) as u64 {
        parts.push(format!("SU({},{})", h + i, h + m as u64 - 2 - i));
    }
    parts.join(" ")
}

pub fn check_morita_factors(st: &Strategies) -> CheckResult {
    timed(|| {
        let cases: Vec<(u32, u64)> = (3..=12)
            .flat_map(|m| (0..=4).map(move |h| (m, h)))
            .collect();
        let mut slowest = 0u128;
        let mut failures = Vec::new();
        for &(m, h) in &cases {
            let t = Instant::now();
            let got = morita_example(m, h)
                .and_then(|a| {
                    let (n, sig) = signatures(&a, st)?;
                    factor_list(&a, &n, &sig)
                })
                .map(|f| f.to_string());
            let ms = t.elapsed().as_millis();
            slowest = slowest.max(ms);
            let want = expected_morita_factors(m, h);
            match got {
                Ok(s) if s == want => {}
                Ok(s) => failures.push(format!("m={m} h={h}: {s} != {want}")),
                Err(e) => failures.push(format!("m={m} h={h}: {e}")),
            }
            if ms >= 1000 {
                failures.push(format!("m={m} h={h} took {ms} ms"));
            }
        }
        CheckResult::new(
            "1",
            "Morita factor lists",
            cases.len(),
            failures,
            format!("slowest case {slowest} ms"),
        )
    })
}

// ---- rational isotypic decomposition ----

pub fn check_chevalley_weil(st: &Strategies) -> CheckResult {
    timed(|| {
        let mut failures = Vec::new();
        let mut cases = 0;
        let mut run = |a: Result<ActionData>, want: BTreeMap<u32, u64>, label: String| {
            cases += 1;
            match a.and_then(|a| st.multiplicity.multiplicities(&character_h1(&a))) {
                Ok(d) if d.rational_isotypic == want => {}
                Ok(d) => failures.push(format!("{label}: {:?} != {want:?}", d.rational_isotypic)),
                Err(e) => failures.push(format!("{label}: {e}")),
            }
        };
        for m in 3..=12u32 {
            for h in 0..=4u64 {
                let mut want = BTreeMap::from([(1, 2 * h)]);
                for k in (2..=m).filter(|k| m % k == 0) {
                    want.insert(k, 2 * h + m as u64 - 2);
                }
                run(morita_example(m, h), want, format!("morita m={m} h={h}"));
            }
        }
        for h in 2..=4u64 {
            let want = BTreeMap::from([(1, 2 * h), (7, 2 * h + 5)]);
            run(
                ak7_example(h).map(|d| d.base_action),
                want,
                format!("ak7 h={h}"),
            );
        }
        CheckResult::new(
            "2",
            "Chevalley-Weil decompositions",
            cases,
            failures,
            String::new(),
        )
    })
}

// ---- double covers ----

pub fn check_hirzebruch(st: &Strategies) -> CheckResult {
    timed(|| {
        let (failures, detail, cases) = match hirzebruch_class_formula(st) {
            Ok(r) => {
                let mut f: Vec<String> = r
                    .cases
                    .iter()
                    .filter(|c| !c.holds)
                    .map(|c| format!("h={}: 4c1(E_1) = {}", c.h, c.four_c1_e1))
                    .collect();
                if !r.signature_formula_holds {
                    f.push("signature formula".into());
                }
                if !r.free_case.holds || !r.free_formula_holds {
                    f.push(format!("free case: 4c1(E_1) = {}", r.free_case.four_c1_e1));
                }
                let detail = r
                    .cases
                    .first()
                    .map(|c| format!("c1(E_1) = {}, c1(E_-1) = {}", c.c1_e1, r.c1_e_minus1))
                    .unwrap_or_default();
                (f, detail, r.cases.len() + 1)
            }
            Err(e) => (vec![e.to_string()], String::new(), 0),
        };
        CheckResult::new("3", "Hirzebruch class formula", cases, failures, detail)
    })
}

// ---- Toledo ----

pub fn check_toledo(st: &Strategies) -> CheckResult {
    timed(|| {
        let mut failures = Vec::new();
        let mut detail = String::new();
        for h in 2..=4 {
            match toledo_ak7(h, None, st) {
                Ok(r) => {
                    if detail.is_empty() {
                        let coeffs: Vec<String> = r
                            .entries
                            .iter()
                            .map(|e| format!("{} {}", e.factor, e.sigma_coeff))
                            .collect();
                        detail = format!(
                            "j0 = {}, lambda = {}, {}",
                            r.j0,
                            r.fitted_lambda,
                            coeffs.join(", ")
                        );
                    }
                }
                Err(e) => failures.push(format!("h={h}: {e}")),
            }
        }
        CheckResult::new("4", "Toledo coefficients", 3, failures, detail)
    })
}

// ---- rank certificates ----

/// Reachable monodromy residues, one bitmask per number of points used.
struct ActiveSetWalk {
    m: u32,
    max_z: usize,
    classes: Vec<u32>,
    out: Vec<Vec<u32>>,
}

impl ActiveSetWalk {
    fn rot(&self, mask: u64, k: i64) -> u64 {
        let m = self.m;
        let full = (1u64 << m) - 1;
        let k = k.rem_euclid(m as i64) as u32;
        if k == 0 {
            mask
        } else {
            ((mask << k) | (mask >> (m - k))) & full
        }
    }

    fn walk(&mut self, idx: usize, chosen: &mut Vec<u32>, states: &[u64]) {
        if idx == self.classes.len() {
            if states.iter().any(|s| s & 1 == 1) {
                self.out.push(chosen.clone());
            }
            return;
        }
        self.walk(idx + 1, chosen, states);
        let j = self.classes[idx];
        let v = inverse_mod(j, self.m).unwrap_or(1) as i64;
        let self_conj = 2 * j == self.m;
        let mut next = vec![0u64; states.len()];
        for (u, &mask) in states.iter().enumerate() {
            if mask == 0 {
                continue;
            }
            for t in 1..=(self.max_z - u) {
                if self_conj {
                    next[u + t] |= self.rot(mask, v * t as i64);
                } else {
                    // c points in class j, t − c in class m − j
                    for c in 0..=t {
                        let d = c as i64 - (t - c) as i64;
                        next[u + t] |= self.rot(mask, v * d);
                    }
                }
            }
        }
        if next.iter().any(|&s| s != 0) {
            chosen.push(j);
            self.walk(idx + 1, chosen, &next);
            chosen.pop();
        }
    }
}

/// Merged η sets {j ≤ m/2} realized by some monodromy-valid action with at
/// most `max_z` fixed points. Needs m < 64.
fn realizable_active_sets(m: u32, max_z: u64) -> Vec<Vec<u32>> {
    assert!(m < 64, "residue bitmasks hold m < 64");
    let mut w = ActiveSetWalk {
        m,
        max_z: max_z as usize,
        classes: (1..=m / 2).filter(|&j| gcd(j, m) == 1).collect(),
        out: Vec::new(),
    };
    let mut start = vec![0u64; w.max_z + 1];
    start[0] = 1;
    w.walk(0, &mut Vec::new(), &start);
    w.out
}

/// rank K over every active η set realized by a monodromy-valid action.
fn rank_k_sweep(m: u32, max_z: u64, st: &Strategies) -> (usize, Vec<String>) {
    let sets = realizable_active_sets(m, max_z);
    let classes: Vec<u32> = (1..=m / 2).filter(|&j| gcd(j, m) == 1).collect();
    let counts: BTreeMap<u32, u64> = classes.iter().map(|&j| (j, 2)).collect();
    let full =
        match ActionData::new(m, 1, counts).and_then(|a| build_system(&a, st.sigma_row.as_ref())) {
            Ok(sys) => sys,
            Err(e) => return (sets.len(), vec![format!("m={m}: {e}")]),
        };
    let reduced = SplitPrimes::new(m)
        .take(4)
        .find_map(|p| p.reduce_matrix(&full.k).map(|rows| (p, rows)));
    let mut failures = Vec::new();
    for set in &sets {
        let cols: Vec<usize> = std::iter::once(0)
            .chain(
                set.iter()
                    .map(|j| 1 + classes.iter().position(|c| c == j).unwrap()),
            )
            .collect();
        let modular_full = reduced.as_ref().is_some_and(|(p, rows)| {
            let sub: Vec<Vec<u64>> = rows
                .iter()
                .map(|r| cols.iter().map(|&c| r[c]).collect())
                .collect();
            p.rank_reduced(sub) == cols.len()
        });
        if modular_full {
            continue;
        }
        let sub = CycloMatrix::from_fn(m, full.k.rows(), cols.len(), |i, c| {
            full.k.get(i, cols[c]).clone()
        });
        let rank = st.certifier.rank(&sub);
        if rank != cols.len() {
            failures.push(format!(
                "m={m} eta set {set:?}: rank {rank} < {}",
                cols.len()
            ));
        }
    }
    (sets.len(), failures)
}

pub fn check_rank_certificates(st: &Strategies) -> CheckResult {
    timed(|| {
        let det: Vec<(u32, bool)> = (1..=60u32)
            .into_par_iter()
            .map(|m| {
                (
                    m,
                    st.certifier
                        .det_nonzero(&j_matrix(m, st.sigma_row.as_ref())),
                )
            })
            .collect();
        let mut failures: Vec<String> = det
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(m, _)| format!("det J = 0 for m={m}"))
            .collect();
        let ranks: Vec<(usize, Vec<String>)> = (2..=30u32)
            .into_par_iter()
            .map(|m| rank_k_sweep(m, 8, st))
            .collect();
        let sets: usize = ranks.iter().map(|r| r.0).sum();
        failures.extend(ranks.into_iter().flat_map(|r| r.1));
        let basis: Vec<Result<bool>> = (3..=40u32)
            .into_par_iter()
            .map(|m| certify_basis(m, st.certifier.as_ref()).map(|c| c.det_nonzero))
            .collect();
        for (m, b) in (3..=40u32).zip(basis) {
            match b {
                Ok(true) => {}
                Ok(false) => failures.push(format!("csc basis singular for m={m}")),
                Err(e) => failures.push(format!("m={m}: {e}")),
            }
        }
        CheckResult::new(
            "5",
            "rank certificates",
            det.len() + sets + 38,
            failures,
            format!("det J m<=60, {sets} active eta sets m<=30 |Z|<=8, csc basis 3<=m<=40"),
        )
    })
}

// ---- residuals ----

/// Monodromy-valid random configurations, m ≤ max_m, |Z| ≤ 8, h ≤ 3.
pub fn random_configs(count: usize, max_m: u32, seed: u64) -> Vec<ActionData> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = rng.gen_range(2..=max_m);
        let h = rng.gen_range(0..=3u64);
        let z = rng.gen_range(0..=8usize);
        let units: Vec<u32> = (1..m).filter(|&j| gcd(j, m) == 1).collect();
        let mut pairs: Vec<(u32, u64)> = Vec::new();
        let mut residue = 0u64;
        for _ in 1..z {
            let j = units[rng.gen_range(0..units.len())];
            residue = (residue + inverse_mod(j, m).unwrap() as u64) % m as u64;
            pairs.push((j, 1));
        }
        if z > 0 {
            // last point closes the monodromy sum
            let need = ((m as u64 - residue) % m as u64) as u32;
            let Some(j) = inverse_mod(need, m).filter(|_| gcd(need, m) == 1) else {
                continue;
            };
            pairs.push((j, 1));
        }
        if let Ok(a) = ActionData::from_pairs(m, h, &pairs) {
            if a.monodromy_valid() {
                out.push(a);
            }
        }
    }
    out
}

pub fn check_residuals(st: &Strategies) -> CheckResult {
    timed(|| {
        let configs = random_configs(500, 24, 0x5eed);
        let failures: Vec<String> = configs
            .par_iter()
            .filter_map(|a| {
                signatures(a, st)
                    .and_then(|_| solve_classes(a, st))
                    .err()
                    .map(|e| format!("{a}: {e}"))
            })
            .collect();
        CheckResult::new(
            "6",
            "degree-0/degree-1 residuals",
            configs.len(),
            failures,
            "all rows r = 0..m-1, exact".into(),
        )
    })
}

// ---- eigenbundle ranks ----

pub fn check_eigenranks(st: &Strategies) -> CheckResult {
    timed(|| {
        let ((f1, _), (f2, _)) = ak2_standard();
        let mut failures = Vec::new();
        for (a, want) in [(f1, (3, 3)), (f2, (104, 217))] {
            match eigenrank_report(&a, st) {
                Ok(r) if (r.rank(0), r.rank(1)) == want => {}
                Ok(r) => failures.push(format!("{a}: ({}, {}) != {want:?}", r.rank(0), r.rank(1))),
                Err(e) => failures.push(format!("{a}: {e}")),
            }
        }
        CheckResult::new(
            "7",
            "eigenbundle ranks",
            2,
            failures,
            "(3,3) and (104,217)".into(),
        )
    })
}

// ---- floating-point cross-checks ----

pub const NUMERIC_TOL: f64 = 1e-8;

pub fn check_numeric(_st: &Strategies) -> CheckResult {
    timed(|| {
        let pi = std::f64::consts::PI;
        let mut failures = Vec::new();
        let mut cases = 0;
        for m in 2..=24u32 {
            for k in 1..m {
                let t = pi * k as f64 / m as f64;
                let icot = icot_half(k as i64, m).map(|x| x.embed());
                let csc = csc2_half(k as i64, m).map(|x| x.embed());
                cases += 2;
                match icot {
                    Ok(v)
                        if (v - Complex64::new(0.0, -t.cos() / t.sin())).norm() <= NUMERIC_TOL => {}
                    other => failures.push(format!("icot_half({k}, {m}) = {other:?}")),
                }
                match csc {
                    Ok(v)
                        if (v - Complex64::new(1.0 / t.sin().powi(2), 0.0)).norm()
                            <= NUMERIC_TOL => {}
                    other => failures.push(format!("csc2_half({k}, {m}) = {other:?}")),
                }
            }
        }
        for m in 3..=24u32 {
            cases += 1;
            match group_character_check(m, NUMERIC_TOL) {
                Ok(true) => {}
                Ok(false) => failures.push(format!("group characters, m={m}")),
                Err(e) => failures.push(format!("m={m}: {e}")),
            }
            let cyclic = unit_group(m).and_then(|g| {
                if g.factors.len() > 1 {
                    return Ok(None);
                }
                let c = csc_matrix(m)?.in_group_order(&g).embed();
                let row: Vec<f64> = c[0].iter().map(|z| z.re).collect();
                circulant_eigen_check(&row, NUMERIC_TOL).map(Some)
            });
            match cyclic {
                Ok(Some(false)) => failures.push(format!("circulant eigenvalues, m={m}")),
                Err(e) => failures.push(format!("m={m}: {e}")),
                Ok(Some(true)) => cases += 1,
                Ok(None) => {}
            }
        }
        CheckResult::new(
            "8",
            "numeric cross-checks",
            cases,
            failures,
            format!("tol {NUMERIC_TOL:e}"),
        )
    })
}

// ---- jets ----

pub const JET_STEP: f64 = 1e-4;
pub const JET_TOL: f64 = 1e-6;

/// (c0, finite-difference c1) for x ↦ coth((x + iφ)/2), φ = 2πjr/m.
pub fn coth_numeric(j: u32, r: u32, m: u32) -> (Complex64, Complex64) {
    let phi = 2.0 * std::f64::consts::PI * (j as f64) * (r as f64) / m as f64;
    let f = |x: f64| Complex64::new(1.0, 0.0) / (Complex64::new(x, phi) / 2.0).tanh();
    (f(0.0), (f(JET_STEP) - f(-JET_STEP)) / (2.0 * JET_STEP))
}

pub fn check_jets(_st: &Strategies) -> CheckResult {
    timed(|| {
        let mut rng = StdRng::seed_from_u64(0x1e7);
        let mut failures = Vec::new();
        let mut worst = 0.0f64;
        let mut cases = 0;
        while cases < 50 {
            let m = rng.gen_range(2..=24u32);
            let j = rng.gen_range(1..m);
            let r = rng.gen_range(1..m);
            if gcd(j, m) != 1 || (j * r) % m == 0 {
                continue;
            }
            cases += 1;
            let jet = match coth_jet(j, r, m) {
                Ok(x) => x,
                Err(e) => {
                    failures.push(format!("(j,r,m)=({j},{r},{m}): {e}"));
                    continue;
                }
            };
            let (f0, d1) = coth_numeric(j, r, m);
            let c0 = jet.c0.embed();
            let c1 = jet.c1[&j].embed();
            let e0 = (c0 - f0).norm() / c0.norm().max(1.0);
            let e1 = (c1 - d1).norm() / c1.norm().max(1.0);
            worst = worst.max(e0).max(e1);
            if e0 > JET_TOL || e1 > JET_TOL {
                failures.push(format!("(j,r,m)=({j},{r},{m}): errors {e0:.2e}, {e1:.2e}"));
            }
        }
        CheckResult::new(
            "9",
            "jet coefficients vs finite differences",
            cases,
            failures,
            format!("step {JET_STEP}, worst relative error {worst:.2e}"),
        )
    })
}

// ---- invariant sweep ----

/// Every monodromy-valid action within the bounds (h ≥ 0, g ≥ 0).
pub fn enumerate_configs(bounds: SweepBounds) -> Vec<ActionData> {
    let mut out = Vec::new();
    for m in 2..=bounds.max_m {
        let units: Vec<u32> = (1..m).filter(|&j| gcd(j, m) == 1).collect();
        // (next unit index, chosen (class, count) pairs, points used)
        let mut stack = vec![(0usize, Vec::<(u32, u64)>::new(), 0u64)];
        while let Some((idx, pairs, used)) = stack.pop() {
            if idx == units.len() {
                for h in 0..=bounds.max_h {
                    if let Ok(a) = ActionData::from_pairs(m, h, &pairs) {
                        if a.monodromy_valid() {
                            out.push(a);
                        }
                    }
                }
                continue;
            }
            for c in 0..=(bounds.max_z - used) {
                let mut p = pairs.clone();
                if c > 0 {
                    p.push((units[idx], c));
                }
                stack.push((idx + 1, p, used + c));
            }
        }
    }
    out.sort_by_key(|a| (a.m(), a.h(), a.fixed_counts().clone()));
    out
}

fn invariants_for(a: &ActionData, st: &Strategies) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    let (n, sig) = signatures(a, st)?;
    if n.n.iter().sum::<u64>() != 2 * a.g() || n.n[0] != 2 * a.h() {
        bad.push("multiplicities do not sum to 2g".into());
    }
    let dft = CharacterDft.multiplicities(&character_h1(a))?;
    if dft != n {
        bad.push("multiplicity methods disagree".into());
    }
    if let Ok(cf) = ClosedForm.multiplicities(&character_h1(a)) {
        if cf != n {
            bad.push("closed form disagrees".into());
        }
    }
    if a.is_morita_type() && RootCount.solve(a, &n)?.entries != sig.entries {
        bad.push("root count disagrees".into());
    }
    let f = factor_list(a, &n, &sig)?;
    if !dimension_check(a, &f) {
        bad.push("factor dimensions".into());
    }
    let (sys, solved) = solve_classes(a, st)?;
    let (_, conj) = solve_classes(&a.conjugate(), st)?;
    if conj != solved {
        bad.push("conjugate action gives different classes".into());
    }
    rank_certificate(&sys, st.certifier.as_ref())?;
    eigenrank_report(a, st)?;
    Ok(bad)
}

pub fn check_invariants(st: &Strategies, bounds: SweepBounds) -> CheckResult {
    timed(|| {
        let configs = enumerate_configs(bounds);
        let failures: Vec<String> = configs
            .par_iter()
            .flat_map_iter(|a| match invariants_for(a, st) {
                Ok(bad) => bad
                    .into_iter()
                    .map(|b| format!("{a}: {b}"))
                    .collect::<Vec<_>>(),
                Err(e) => vec![format!("{a}: {}", err_string(e))],
            })
            .collect();
        CheckResult::new(
            "inv",
            "module invariants",
            configs.len(),
            failures,
            format!(
                "m<={}, |Z|<={}, h<={}",
                bounds.max_m, bounds.max_z, bounds.max_h
            ),
        )
    })
}

/// A check that always fails; lets the harness prove that failures surface.
pub fn injected_fault() -> CheckResult {
    CheckResult::new(
        "fault",
        "injected fault",
        1,
        vec!["deliberate failure requested".into()],
        String::new(),
    )
}

/// The nine acceptance checks, in the order they are numbered.
pub fn run_criteria(st: &Strategies) -> Vec<CheckResult> {
    vec![
        check_morita_factors(st),
        check_chevalley_weil(st),
        check_hirzebruch(st),
        check_toledo(st),
        check_rank_certificates(st),
        check_residuals(st),
        check_eigenranks(st),
        check_numeric(st),
        check_jets(st),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySummary {
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub elapsed_ms: u128,
}

impl VerifySummary {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

pub fn run_all(st: &Strategies, bounds: SweepBounds, inject_fault: bool) -> VerifySummary {
    let t = Instant::now();
    let mut checks = run_criteria(st);
    checks.push(check_invariants(st, bounds));
    if inject_fault {
        checks.push(injected_fault());
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    VerifySummary {
        failed: checks.len() - passed,
        passed,
        checks,
        elapsed_ms: t.elapsed().as_millis(),
    }
}

/// Strategies for the default registry; convenience for callers.
pub fn default_strategies() -> Strategies {
    let r = Registries::builtin();
    r.resolve(&r.defaults()).expect("defaults are registered")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_factor_strings() {
        assert_eq!(expected_morita_factors(5, 1), "Sp_2 SU(1,4) SU(2,3)");
        assert_eq!(expected_morita_factors(4, 2), "Sp_4 Sp_6 SU(2,4)");
        assert_eq!(expected_morita_factors(3, 0), "Sp_0 SU(0,1)");
    }

    #[test]
    fn active_sets_small() {
        // m = 5: classes {1, 2}; a single class needs a multiple of 5 or a
        // ±-balanced split, all reachable within 8 points
        let sets = realizable_active_sets(5, 8);
        assert_eq!(sets.len(), 4);
        // m = 2: only an even number of points in class 1
        assert_eq!(realizable_active_sets(2, 8), vec![vec![], vec![1]]);
        assert_eq!(realizable_active_sets(7, 1), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn random_configs_are_valid() {
        let c = random_configs(40, 24, 1);
        assert_eq!(c.len(), 40);
        assert!(c.iter().all(ActionData::monodromy_valid));
        assert_eq!(c, random_configs(40, 24, 1));
    }

    #[test]
    fn enumeration_counts() {
        let b = SweepBounds {
            max_m: 3,
            max_z: 3,
            max_h: 0,
        };
        let c = enumerate_configs(b);
        // m=2: {}, {1:2}; m=3: {}, {1:1,2:1}, {1:3}, {2:3}; h=0 kills the free ones
        assert!(c.iter().all(|a| a.monodromy_valid() && a.h() == 0));
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn fault_fails() {
        assert!(!injected_fault().passed);
        assert!(injected_fault().line().starts_with("FAIL"));
    }
}
