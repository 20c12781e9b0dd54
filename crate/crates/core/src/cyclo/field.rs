use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arithmetic context for Q(ζ_m): the cyclotomic polynomial Φ_m and the
/// reductions of x^k modulo Φ_m used by multiplication and conjugation.
#[derive(Debug)]
pub struct CycloField {
    pub(crate) m: u32,
    pub(crate) phi: usize,
    /// Φ_m, low degree first, monic of degree `phi`.
    pub(crate) modulus: Vec<i64>,
    /// `reduction[k]` is x^k mod Φ_m as sparse (index, coefficient) pairs.
    pub(crate) reduction: Vec<Vec<(usize, i64)>>,
}

impl CycloField {
    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Φ_m with coefficients listed from the constant term up.
    pub fn cyclotomic_polynomial(&self) -> &[i64] {
        &self.modulus
    }

    /// x^k mod Φ_m, for any k >= 0.
    pub(crate) fn power(&self, k: usize) -> &[(usize, i64)] {
        let k = if k < self.reduction.len() {
            k
        } else {
            k % self.m as usize
        };
        &self.reduction[k]
    }
}

fn field_cache() -> &'static Mutex<HashMap<u32, Arc<CycloField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared field context for conductor `m` (m >= 1).
pub fn field(m: u32) -> Arc<CycloField> {
    assert!(m >= 1, "conductor must be positive");
    if let Some(f) = field_cache().lock().unwrap().get(&m) {
        return f.clone();
    }
    let built = Arc::new(build_field(m));
    field_cache()
        .lock()
        .unwrap()
        .entry(m)
        .or_insert(built)
        .clone()
}

fn build_field(m: u32) -> CycloField {
    let modulus = cyclotomic_polynomial(m);
    let phi = modulus.len() - 1;
    let len = (m as usize).max(2 * phi);
    let mut reduction = Vec::with_capacity(len);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..len {
        reduction.push(
            cur.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i, c))
                .collect(),
        );
        // multiply by x and reduce the overflowing x^phi term
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] = cur[i]
                    .checked_sub(
                        top.checked_mul(modulus[i])
                            .expect("overflow in x^k mod Φ_m"),
                    )
                    .expect("overflow in x^k mod Φ_m");
            }
        }
    }
    CycloField {
        m,
        phi,
        modulus,
        reduction,
    }
}

/// Integer coefficients of Φ_m, constant term first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut poly = vec![0i64; m as usize + 1];
    poly[0] = -1;
    poly[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let divisor = field(d).modulus.clone();
            poly = divide_monic(&poly, &divisor);
        }
    }
    poly
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dc) in den.iter().enumerate() {
                rem[i + j] -= c * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Solves `a x = b` for a square integer matrix by fraction-free
/// Gauss-Jordan elimination. Returns `(z, det)` with `x = z / det`,
/// or `None` when `a` is singular.
pub(crate) fn bareiss_solve(
    mut a: Vec<Vec<BigInt>>,
    b: Vec<BigInt>,
) -> Option<(Vec<BigInt>, BigInt)> {
    let n = a.len();
    for (row, rhs) in a.iter_mut().zip(b) {
        row.push(rhs);
    }
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, pivot);
        let (before, rest) = a.split_at_mut(k);
        let (pivot_row, after) = rest.split_first_mut().unwrap();
        for row in before.iter_mut().chain(after.iter_mut()) {
            let factor = row[k].clone();
            for j in 0..=n {
                if j == k {
                    continue;
                }
                let val = &pivot_row[k] * &row[j] - &factor * &pivot_row[j];
                row[j] = if prev.is_one() {
                    val
                } else {
                    val.div_floor(&prev)
                };
            }
            row[k] = BigInt::zero();
        }
        prev = pivot_row[k].clone();
    }
    // every diagonal entry now equals the determinant (up to the swap sign)
    let det = a[0][0].clone();
    let z: Vec<BigInt> = a.into_iter().map(|mut row| row.pop().unwrap()).collect();
    if det.is_negative() {
        Some((z.into_iter().map(|v: BigInt| -v).collect(), -det))
    } else {
        Some((z, det))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(7), vec![1; 7]);
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn degree_is_totient() {
        for m in 1..80u32 {
            let phi = (1..=m).filter(|&k| k.gcd(&m) == 1).count();
            assert_eq!(field(m).degree(), phi, "m = {m}");
        }
    }

    #[test]
    fn bareiss_matches_rational_elimination() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..7);
            let a: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-9..10)).collect())
                .collect();
            let b: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..10)).collect();
            let big = |v: &Vec<i64>| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
            let res = bareiss_solve(a.iter().map(big).collect(), big(&b));
            if let Some((z, det)) = res {
                // check a * (z/det) == b exactly
                for i in 0..n {
                    let lhs: BigRational = (0..n)
                        .map(|j| BigRational::new(BigInt::from(a[i][j]) * &z[j], det.clone()))
                        .fold(BigRational::zero(), |acc, t| acc + t);
                    assert_eq!(lhs, BigRational::from_integer(b[i].into()));
                }
            }
        }
    }
}
