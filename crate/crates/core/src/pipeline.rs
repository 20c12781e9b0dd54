//! One action through every stage, with the chosen strategies.

use crate::action::ActionData;
use crate::arithgroup::{
    factor_list, h2_basis, image_basis, stable_range, FactorList, H2Basis, ImageBasis,
    StableRangeReport,
};
use crate::circulant::{rank_certificate, RankCertificate};
use crate::error::Result;
use crate::indexcore::{
    build_system, deg0_residual, rhs0, solve_deg1, EigenSignature, IndexSystem, SolvedClasses,
};
use crate::registry::Strategies;
use crate::reptheory::{character_h1, CharacterVec, IsotypicDecomp};

#[derive(Clone, Debug)]
pub struct Analysis {
    pub action: ActionData,
    pub warnings: Vec<String>,
    pub character: CharacterVec,
    pub isotypic: IsotypicDecomp,
    pub signature: EigenSignature,
    pub factors: FactorList,
    pub stable_range: StableRangeReport,
    pub h2_basis: H2Basis,
    pub system: IndexSystem,
    pub solved: SolvedClasses,
    pub image: ImageBasis,
    pub certificate: RankCertificate,
    /// max over r of |embed(RHS₀(r)) − Σ_j |Z_j|·(−i·cot(πjr/m))|.
    pub rhs0_float_error: f64,
}

/// Degree-0 part only: multiplicities and signatures.
pub fn signatures(a: &ActionData, st: &Strategies) -> Result<(IsotypicDecomp, EigenSignature)> {
    let n = st.multiplicity.multiplicities(&character_h1(a))?;
    let sig = st.deg0.solve(a, &n)?;
    deg0_residual(a, &sig)?;
    Ok((n, sig))
}

/// Degree-1 part only.
pub fn solve_classes(a: &ActionData, st: &Strategies) -> Result<(IndexSystem, SolvedClasses)> {
    let sys = build_system(a, st.sigma_row.as_ref())?;
    let solved = solve_deg1(&sys, st.solver.as_ref())?;
    Ok((sys, solved))
}

pub fn analyze(a: &ActionData, st: &Strategies) -> Result<Analysis> {
    let character = character_h1(a);
    let (isotypic, signature) = signatures(a, st)?;
    let factors = factor_list(a, &isotypic, &signature)?;
    let range = stable_range(a, &factors);
    let h2 = h2_basis(a.m(), &factors, &range);
    let (system, solved) = solve_classes(a, st)?;
    let image = image_basis(&solved);
    let certificate = rank_certificate(&system, st.certifier.as_ref())?;
    let mut err = 0.0f64;
    for r in 1..a.m() {
        let exact = rhs0(a, r)?.embed();
        let float: f64 = a
            .fixed_counts()
            .iter()
            .map(|(&j, &c)| {
                let t = std::f64::consts::PI * (j as f64) * (r as f64) / a.m() as f64;
                -(c as f64) * t.cos() / t.sin()
            })
            .sum();
        err = err.max((exact - num_complex::Complex64::new(0.0, float)).norm());
    }
    Ok(Analysis {
        action: a.clone(),
        warnings: a.validate_monodromy(),
        character,
        isotypic,
        signature,
        factors,
        stable_range: range,
        h2_basis: h2,
        system,
        solved,
        image,
        certificate,
        rhs0_float_error: err,
    })
}
