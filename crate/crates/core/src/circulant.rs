//! The csc² basis and rank of K, through the group (Z/m)^×/{±1}.
//!
//! Ordering the rows of the csc² matrix by inverses and the columns by a
//! product decomposition of (Z/m)^×/{±1} makes it an iterated block
//! circulant: entry (x, y) depends only on x⁻¹y. Its eigenvectors are the
//! characters of the group. Exact rank decisions go through a certifier; the
//! eigenvalue structure is checked numerically.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::certify::Certifier;
use crate::cyclo::{csc2_half, gcd, inverse_mod, CycloNum};
use crate::error::{Error, Result};
use crate::indexcore::IndexSystem;
use crate::linalg::CycloMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnitGroupTable {
    pub m: u32,
    pub order: usize,
    /// Cyclic factor orders, descending.
    pub factors: Vec<usize>,
    /// One generator per factor, as representatives in [1, m/2).
    pub generators: Vec<u32>,
    /// Column elements: Π g_i^{e_i} in mixed-radix order, first factor outermost.
    pub elements: Vec<u32>,
    /// Row elements: inverses of `elements`.
    pub row_elements: Vec<u32>,
    /// table[i][j] = row_elements[i] · elements[j].
    pub table: Vec<Vec<u32>>,
    /// Positions of `elements` and `row_elements` among the sorted representatives.
    pub column_permutation: Vec<usize>,
    pub row_permutation: Vec<usize>,
}

/// Representative of ±x in [1, m/2].
fn rep(x: u64, m: u32) -> u32 {
    let x = (x % m as u64) as u32;
    x.min(m - x)
}

/// Sorted representatives of (Z/m)^×/{±1}: k coprime to m with 1 ≤ k < m/2.
pub fn unit_reps(m: u32) -> Vec<u32> {
    (1..m).filter(|&k| 2 * k < m && gcd(k, m) == 1).collect()
}

fn mul(a: u32, b: u32, m: u32) -> u32 {
    rep(a as u64 * b as u64, m)
}

fn power(a: u32, e: usize, m: u32) -> u32 {
    (0..e).fold(1, |acc, _| mul(acc, a, m))
}

fn order_of(a: u32, m: u32) -> usize {
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = mul(x, a, m);
        k += 1;
    }
    k
}

fn generated(gens: &[u32], m: u32) -> Vec<u32> {
    let mut set = vec![1u32];
    for &g in gens {
        let mut next = Vec::new();
        for &x in &set {
            let mut y = x;
            loop {
                if !next.contains(&y) {
                    next.push(y);
                }
                y = mul(y, g, m);
                if y == x {
                    break;
                }
            }
        }
        set = next;
    }
    set.sort_unstable();
    set
}

pub fn unit_group(m: u32) -> Result<UnitGroupTable> {
    if m < 3 {
        return Err(Error::TrivialGroup(m));
    }
    let reps = unit_reps(m);
    let order = reps.len();
    // Greedy: an element of maximal order in G/H, lifted to an element of the
    // same order meeting H trivially, generates a direct summand.
    let mut generators: Vec<u32> = Vec::new();
    let mut factors = Vec::new();
    let mut sub = generated(&generators, m);
    while sub.len() < order {
        let quotient_order = |x: u32| {
            let mut y = x;
            let mut k = 1;
            while sub.binary_search(&y).is_err() {
                y = mul(y, x, m);
                k += 1;
            }
            k
        };
        let best = reps
            .iter()
            .map(|&x| (quotient_order(x), x))
            .filter(|&(k, x)| order_of(x, m) == k)
            .max_by_key(|&(k, x)| (k, std::cmp::Reverse(x)))
            .expect("a complement generator exists");
        generators.push(best.1);
        factors.push(best.0);
        sub = generated(&generators, m);
    }
    // descending factor order; greedy already yields non-increasing orders
    debug_assert!(factors.windows(2).all(|w| w[0] >= w[1]));

    let mut elements = Vec::with_capacity(order);
    let mut idx = vec![0usize; factors.len()];
    for _ in 0..order {
        let x = generators
            .iter()
            .zip(&idx)
            .fold(1, |acc, (&g, &e)| mul(acc, power(g, e, m), m));
        elements.push(x);
        for i in (0..factors.len()).rev() {
            idx[i] += 1;
            if idx[i] < factors[i] {
                break;
            }
            idx[i] = 0;
        }
    }
    let row_elements: Vec<u32> = elements
        .iter()
        .map(|&x| rep(inverse_mod(x, m).expect("unit") as u64, m))
        .collect();
    let table = row_elements
        .iter()
        .map(|&a| elements.iter().map(|&b| mul(a, b, m)).collect())
        .collect();
    let position = |x: u32| reps.binary_search(&x).expect("representative");
    Ok(UnitGroupTable {
        m,
        order,
        factors,
        generators,
        column_permutation: elements.iter().map(|&x| position(x)).collect(),
        row_permutation: row_elements.iter().map(|&x| position(x)).collect(),
        elements,
        row_elements,
        table,
    })
}

/// (k, ℓ) ↦ csc²(πkℓ/m) over the sorted representatives k, ℓ of (Z/m)^×/{±1}.
#[derive(Clone, Debug, Serialize)]
pub struct CscMatrix {
    pub m: u32,
    pub index: Vec<u32>,
    pub entries: CycloMatrix,
}

pub fn csc_matrix(m: u32) -> Result<CscMatrix> {
    if m < 3 {
        return Err(Error::TrivialGroup(m));
    }
    let index = unit_reps(m);
    let vals: Vec<CycloNum> = (0..m)
        .map(|k| {
            if k == 0 {
                Ok(CycloNum::zero(m))
            } else {
                csc2_half(k as i64, m)
            }
        })
        .collect::<Result<_>>()?;
    let n = index.len();
    let entries = CycloMatrix::from_fn(m, n, n, |i, j| {
        vals[(index[i] as u64 * index[j] as u64 % m as u64) as usize].clone()
    });
    Ok(CscMatrix { m, index, entries })
}

impl CscMatrix {
    /// The matrix with rows and columns in group-table order.
    pub fn in_group_order(&self, g: &UnitGroupTable) -> CycloMatrix {
        let n = self.index.len();
        CycloMatrix::from_fn(self.m, n, n, |i, j| {
            self.entries
                .get(g.row_permutation[i], g.column_permutation[j])
                .clone()
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisCertificate {
    pub m: u32,
    pub det_nonzero: bool,
    pub method: String,
    pub factors: Vec<usize>,
    pub permutation: Vec<usize>,
}

pub fn certify_basis(m: u32, certifier: &dyn Certifier) -> Result<BasisCertificate> {
    let group = unit_group(m)?;
    let csc = csc_matrix(m)?;
    Ok(BasisCertificate {
        m,
        det_nonzero: certifier.det_nonzero(&csc.entries),
        method: format!("exact/{}", certifier.name()),
        factors: group.factors,
        permutation: group.row_permutation,
    })
}

/// Exact rank of K; must be n + 1.
pub fn rank_k(sys: &IndexSystem, certifier: &dyn Certifier) -> Result<usize> {
    let rank = certifier.rank(&sys.k);
    let expected = sys.k.cols();
    if rank < expected {
        return Err(Error::RankDeficient { rank, expected });
    }
    Ok(rank)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub m: u32,
    pub det_nonzero: bool,
    #[serde(rename = "rank_K")]
    pub rank_k: usize,
    pub permutation: Vec<usize>,
}

/// det J ≠ 0, rank K, and the group-order permutation for one system.
pub fn rank_certificate(sys: &IndexSystem, certifier: &dyn Certifier) -> Result<RankCertificate> {
    let permutation = if sys.m >= 3 {
        unit_group(sys.m)?.row_permutation
    } else {
        Vec::new()
    };
    Ok(RankCertificate {
        m: sys.m,
        det_nonzero: certifier.det_nonzero(&sys.j),
        rank_k: rank_k(sys, certifier)?,
        permutation,
    })
}

fn check_tolerance(tol: f64) -> Result<()> {
    if tol.is_nan() || tol <= 0.0 {
        Err(Error::InvalidTolerance(tol))
    } else {
        Ok(())
    }
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}

/// Greedy matching of two eigenvalue multisets.
fn same_multiset(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        let best = (0..b.len())
            .filter(|&i| !used[i])
            .min_by(|&i, &j| (b[i] - x).norm().total_cmp(&(b[j] - x).norm()));
        match best {
            Some(i) if close(*x, b[i], tol) => {
                used[i] = true;
                true
            }
            _ => false,
        }
    })
}

/// Eigenvalues λ_j = Σ_k c_k ω^{jk} of the circulant with first row c.
pub fn circulant_eigenvalues(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len();
    (0..n)
        .map(|j| {
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| {
                    c * Complex64::from_polar(
                        1.0,
                        2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64,
                    )
                })
                .sum()
        })
        .collect()
}

fn circulant(coeffs: &[f64]) -> DMatrix<f64> {
    let n = coeffs.len();
    DMatrix::from_fn(n, n, |i, j| coeffs[(j + n - i) % n])
}

/// Checks the DFT eigenvalue formula for the circulant with first row
/// `coeffs` against a dense eigensolver and against C·v = λ·v, then the
/// character eigenvector formula for a two-level block circulant built from
/// the same coefficients.
pub fn circulant_eigen_check(coeffs: &[f64], tol: f64) -> Result<bool> {
    check_tolerance(tol)?;
    if coeffs.is_empty() {
        return Err(Error::InconsistentInputs("empty coefficient list".into()));
    }
    let n = coeffs.len();
    let formula = circulant_eigenvalues(coeffs);
    let c = circulant(coeffs);
    let dense: Vec<Complex64> = c.clone().complex_eigenvalues().iter().copied().collect();
    if !same_multiset(&formula, &dense, tol) {
        return Ok(false);
    }
    let cc = c.map(|x| Complex64::new(x, 0.0));
    for (j, lambda) in formula.iter().enumerate() {
        let v = nalgebra::DVector::from_fn(n, |k, _| {
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64)
        });
        let lhs = &cc * &v;
        if (0..n).any(|k| !close(lhs[k], v[k] * lambda, tol)) {
            return Ok(false);
        }
    }
    let outer = n.min(8);
    for inner in 1..=3usize {
        let f = |e: &[usize]| coeffs[e[0] % n] * (1.0 + e[1] as f64) + 0.25 * e[1] as f64;
        if !block_circulant_check(&[outer, inner], &f, tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For the group Π C_{n_i} with elements in mixed-radix order, the matrix
/// M[x][y] = f(y − x) has every character χ as an eigenvector with eigenvalue
/// Σ_y f(y)·χ(y).
pub fn block_circulant_check(sizes: &[usize], f: &dyn Fn(&[usize]) -> f64, tol: f64) -> bool {
    let order: usize = sizes.iter().product();
    let digits = |mut x: usize| {
        let mut d = vec![0; sizes.len()];
        for i in (0..sizes.len()).rev() {
            d[i] = x % sizes[i];
            x /= sizes[i];
        }
        d
    };
    let elems: Vec<Vec<usize>> = (0..order).map(digits).collect();
    let diff = |x: &[usize], y: &[usize]| -> Vec<usize> {
        x.iter()
            .zip(y)
            .zip(sizes)
            .map(|((a, b), n)| (b + n - a) % n)
            .collect()
    };
    let matrix = DMatrix::from_fn(order, order, |i, j| {
        Complex64::new(f(&diff(&elems[i], &elems[j])), 0.0)
    });
    let chi = |k: &[usize], x: &[usize]| {
        let phase: f64 = k
            .iter()
            .zip(x)
            .zip(sizes)
            .map(|((a, b), n)| (a * b) as f64 / *n as f64)
            .sum();
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase)
    };
    elems.iter().all(|k| {
        let v = nalgebra::DVector::from_fn(order, |i, _| chi(k, &elems[i]));
        let lambda: Complex64 = elems.iter().map(|y| f(y) * chi(k, y)).sum();
        let lhs = &matrix * &v;
        (0..order).all(|i| close(lhs[i], v[i] * lambda, tol))
    })
}

/// The csc² matrix in group order has the group characters as eigenvectors:
/// M·χ = (Σ_y csc²(πy/m)·χ(y))·χ, checked numerically.
pub fn group_character_check(m: u32, tol: f64) -> Result<bool> {
    check_tolerance(tol)?;
    let g = unit_group(m)?;
    let csc = csc_matrix(m)?;
    let ordered = csc.in_group_order(&g).embed();
    let n = g.order;
    let mut idx = vec![vec![0usize; g.factors.len()]; n];
    for (e, slot) in idx.iter_mut().enumerate() {
        let mut x = e;
        for i in (0..g.factors.len()).rev() {
            slot[i] = x % g.factors[i];
            x /= g.factors[i];
        }
    }
    let chi = |k: &[usize], x: &[usize]| {
        let phase: f64 = k
            .iter()
            .zip(x)
            .zip(&g.factors)
            .map(|((a, b), n)| (a * b) as f64 / *n as f64)
            .sum();
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase)
    };
    let f: Vec<f64> = g
        .elements
        .iter()
        .map(|&y| 1.0 / (std::f64::consts::PI * y as f64 / m as f64).sin().powi(2))
        .collect();
    for k in &idx {
        let lambda: Complex64 = (0..n).map(|y| f[y] * chi(k, &idx[y])).sum();
        for i in 0..n {
            let lhs: Complex64 = (0..n).map(|j| ordered[i][j] * chi(k, &idx[j])).sum();
            if !close(lhs, chi(k, &idx[i]) * lambda, tol) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
