//! Exact rank and determinant certification over Q(ζ_m).
//!
//! Two certifiers are provided. `Elimination` row-reduces over the field.
//! `Modular` maps the matrix through Z_(p)[ζ] → F_p, ζ ↦ ω, for primes
//! p ≡ 1 (mod m) with ω a primitive m-th root of unity in F_p. That map is a
//! ring homomorphism, so rank mod p never exceeds the rank over Q(ζ_m); when
//! it reaches min(rows, cols) the rank is certified exactly. Otherwise the
//! modular certifier falls back to elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::cyclo::CycloNum;
use crate::linalg::CycloMatrix;

pub trait Certifier: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    /// Exact rank over Q(ζ_m).
    fn rank(&self, matrix: &CycloMatrix) -> usize;

    fn det_nonzero(&self, matrix: &CycloMatrix) -> bool {
        matrix.rows() == matrix.cols() && self.rank(matrix) == matrix.rows()
    }
}

pub struct Elimination;

impl Certifier for Elimination {
    fn name(&self) -> &'static str {
        "elimination"
    }

    fn description(&self) -> &'static str {
        "row reduction over Q(zeta_m)"
    }

    fn rank(&self, matrix: &CycloMatrix) -> usize {
        matrix.rank()
    }
}

pub struct Modular {
    /// Number of split primes tried before falling back to elimination.
    pub attempts: usize,
}

impl Default for Modular {
    fn default() -> Self {
        Modular { attempts: 4 }
    }
}

impl Certifier for Modular {
    fn name(&self) -> &'static str {
        "modular"
    }

    fn description(&self) -> &'static str {
        "reduction modulo split primes p = 1 mod m, falling back to elimination"
    }

    fn rank(&self, matrix: &CycloMatrix) -> usize {
        let full = matrix.rows().min(matrix.cols());
        let mut best = 0;
        for prime in SplitPrimes::new(matrix.conductor()).take(self.attempts) {
            if let Some(r) = prime.rank(matrix) {
                best = best.max(r);
                if best == full {
                    return full;
                }
            }
        }
        matrix.rank()
    }
}

/// A prime p ≡ 1 (mod m) together with a primitive m-th root of unity mod p.
#[derive(Clone, Copy, Debug)]
pub struct SplitPrime {
    pub p: u64,
    pub omega: u64,
    m: u32,
}

impl SplitPrime {
    /// Image of `x` in F_p, or `None` if its denominator vanishes mod p.
    pub fn reduce(&self, x: &CycloNum) -> Option<u64> {
        debug_assert_eq!(x.conductor(), self.m);
        let (num, den) = x.raw_parts();
        let p_big = BigInt::from(self.p);
        let den_mod = den.mod_floor(&p_big).to_u64().unwrap();
        if den_mod == 0 {
            return None;
        }
        let mut acc = 0u64;
        let mut power = 1u64;
        for c in num {
            if !c.is_zero() {
                let c_mod = c.mod_floor(&p_big).to_u64().unwrap();
                acc = (acc + mul_mod(c_mod, power, self.p)) % self.p;
            }
            power = mul_mod(power, self.omega, self.p);
        }
        Some(mul_mod(acc, inv_mod(den_mod, self.p), self.p))
    }

    /// Entrywise image in F_p, or `None` if some entry is not p-integral.
    pub fn reduce_matrix(&self, matrix: &CycloMatrix) -> Option<Vec<Vec<u64>>> {
        (0..matrix.rows())
            .map(|i| matrix.row(i).iter().map(|x| self.reduce(x)).collect())
            .collect()
    }

    /// Rank of the reduced matrix, or `None` if some entry is not p-integral.
    pub fn rank(&self, matrix: &CycloMatrix) -> Option<usize> {
        Some(self.rank_reduced(self.reduce_matrix(matrix)?))
    }

    /// Rank over F_p of an already reduced matrix.
    pub fn rank_reduced(&self, rows: Vec<Vec<u64>>) -> usize {
        rank_mod_p(rows, self.p)
    }
}

/// Iterator over split primes for conductor m, in increasing order above 2^30.
pub struct SplitPrimes {
    m: u32,
    next: u64,
}

impl SplitPrimes {
    pub fn new(m: u32) -> SplitPrimes {
        let m64 = m as u64;
        let start = (1u64 << 30) / m64 * m64 + 1;
        SplitPrimes { m, next: start }
    }
}

impl Iterator for SplitPrimes {
    type Item = SplitPrime;

    fn next(&mut self) -> Option<SplitPrime> {
        let m = self.m as u64;
        loop {
            let p = self.next;
            self.next += m;
            if p >= 1 << 31 {
                return None;
            }
            if !is_prime(p) {
                continue;
            }
            if let Some(omega) = primitive_root_of_unity(self.m, p) {
                return Some(SplitPrime {
                    p,
                    omega,
                    m: self.m,
                });
            }
        }
    }
}

fn primitive_root_of_unity(m: u32, p: u64) -> Option<u64> {
    let m64 = m as u64;
    let prime_factors = prime_factors(m);
    (2..p).take(200).find_map(|g| {
        let w = pow_mod(g, (p - 1) / m64, p);
        let primitive = prime_factors
            .iter()
            .all(|&q| pow_mod(w, m64 / q as u64, p) != 1);
        (primitive || m == 1).then_some(w)
    })
}

pub(crate) fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p);
        for r in rank + 1..rows.len() {
            if rows[r][col] == 0 {
                continue;
            }
            let f = mul_mod(rows[r][col], inv, p);
            let (top, rest) = rows.split_at_mut(r);
            for (x, &y) in rest[0][col..ncols].iter_mut().zip(&top[rank][col..ncols]) {
                *x = (*x + p - mul_mod(f, y, p)) % p;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{csc2_half, Rat};

    #[test]
    fn split_primes_have_primitive_roots() {
        for m in [1u32, 2, 3, 7, 12, 30, 59, 60] {
            let sp = SplitPrimes::new(m).next().unwrap();
            assert_eq!(sp.p % m as u64, 1 % m as u64);
            assert_eq!(pow_mod(sp.omega, m as u64, sp.p), 1);
            for q in prime_factors(m) {
                assert_ne!(pow_mod(sp.omega, (m / q) as u64, sp.p), 1);
            }
        }
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let m = 9;
        let sp = SplitPrimes::new(m).next().unwrap();
        let a = &CycloNum::root(m, 2) + &CycloNum::from_rat(m, &Rat::new(3, 5));
        let b = csc2_half(2, m).unwrap();
        let ra = sp.reduce(&a).unwrap();
        let rb = sp.reduce(&b).unwrap();
        assert_eq!(sp.reduce(&(&a * &b)).unwrap(), mul_mod(ra, rb, sp.p));
        assert_eq!(sp.reduce(&(&a + &b)).unwrap(), (ra + rb) % sp.p);
    }

    #[test]
    fn certifiers_agree_on_small_matrices() {
        let m = 7;
        let z = CycloNum::root(m, 1);
        let full = CycloMatrix::from_fn(m, 3, 3, |i, j| z.pow((i * j) as u32));
        let deficient = CycloMatrix::from_fn(m, 3, 3, |i, j| z.pow((i + j) as u32));
        for c in [&Elimination as &dyn Certifier, &Modular::default()] {
            assert_eq!(c.rank(&full), 3, "{}", c.name());
            assert!(c.det_nonzero(&full));
            assert_eq!(c.rank(&deficient), 1, "{}", c.name());
            assert!(!c.det_nonzero(&deficient));
        }
    }
}
