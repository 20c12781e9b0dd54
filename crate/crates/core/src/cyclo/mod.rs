//! Exact arithmetic in cyclotomic fields Q(ζ_m).
//!
//! Every scalar in the index computations lives in Q(ζ_m): roots of unity,
//! the values −i·cot(πk/m) and csc²(πk/m), and the solved Chern class
//! coefficients. Raw cot(πk/m) needs i ∉ Q(ζ_m) for odd m, so only the
//! combination −i·cot is exposed.

mod field;
mod num;
mod rat;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

pub use field::{cyclotomic_polynomial, field, CycloField};
pub use num::{ArithOp, CycloNum};
pub use rat::Rat;

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum TrigKind {
    ICot,
    Csc2,
}

type TrigCache = Mutex<HashMap<(TrigKind, u32, u32), CycloNum>>;

fn trig_cache() -> &'static TrigCache {
    static CACHE: OnceLock<TrigCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn reduce_index(k: i64, m: u32) -> Result<u32> {
    if m == 0 {
        return Err(Error::InvalidConductor(0));
    }
    let r = k.rem_euclid(m as i64) as u32;
    if r == 0 {
        Err(Error::Pole { k, m })
    } else {
        Ok(r)
    }
}

fn cached(kind: TrigKind, k: u32, m: u32, build: impl FnOnce() -> CycloNum) -> CycloNum {
    if let Some(v) = trig_cache().lock().unwrap().get(&(kind, k, m)) {
        return v.clone();
    }
    let v = build();
    trig_cache().lock().unwrap().insert((kind, k, m), v.clone());
    v
}

/// −i·cot(πk/m) = (ζ^k + 1)/(ζ^k − 1) in Q(ζ_m).
pub fn icot_half(k: i64, m: u32) -> Result<CycloNum> {
    let r = reduce_index(k, m)?;
    Ok(cached(TrigKind::ICot, r, m, || {
        let z = CycloNum::root(m, r as i64);
        let one = CycloNum::one(m);
        (&z + &one)
            .try_div(&(&z - &one))
            .expect("ζ^k − 1 is nonzero for k ≢ 0")
    }))
}

/// csc²(πk/m) = −4ζ^k/(ζ^k − 1)² in Q(ζ_m); lies in the real subfield.
pub fn csc2_half(k: i64, m: u32) -> Result<CycloNum> {
    let r = reduce_index(k, m)?;
    Ok(cached(TrigKind::Csc2, r, m, || {
        let z = CycloNum::root(m, r as i64);
        let d = &z - &CycloNum::one(m);
        z.scale_int(-4)
            .try_div(&(&d * &d))
            .expect("ζ^k − 1 is nonzero for k ≢ 0")
    }))
}

/// Euler's totient.
pub fn totient(m: u32) -> u32 {
    (1..=m).filter(|&k| gcd(k, m) == 1).count() as u32
}

pub fn gcd(a: u32, b: u32) -> u32 {
    num_integer::Integer::gcd(&a, &b)
}

/// Multiplicative inverse of j modulo m, when gcd(j, m) = 1.
pub fn inverse_mod(j: u32, m: u32) -> Option<u32> {
    if m == 1 {
        return Some(0);
    }
    let j = j % m;
    (1..m).find(|&x| (x as u64 * j as u64) % m as u64 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn make_examples() {
        assert_eq!(CycloNum::make(4, 2).unwrap(), CycloNum::from_int(4, -1));
        assert_eq!(CycloNum::make(2, 1).unwrap(), CycloNum::from_int(2, -1));
        assert_eq!(CycloNum::make(5, 5).unwrap(), CycloNum::one(5));
        assert_eq!(CycloNum::make(0, 1), Err(Error::InvalidConductor(0)));
        assert_eq!(CycloNum::make(-3, 1), Err(Error::InvalidConductor(-3)));
    }

    #[test]
    fn arith_examples() {
        let z3 = CycloNum::root(3, 1);
        let z3sq = CycloNum::root(3, 2);
        assert_eq!(
            z3.arith(&z3sq, ArithOp::Add).unwrap(),
            CycloNum::from_int(3, -1)
        );

        let i = CycloNum::root(4, 1);
        let one = CycloNum::one(4);
        let p = (&one + &i).arith(&(&one - &i), ArithOp::Mul).unwrap();
        assert_eq!(p, CycloNum::from_int(4, 2));

        let q = one.arith(&(&one + &i), ArithOp::Div).unwrap();
        let expected = (&one - &i).scale(&Rat::new(1, 2));
        assert_eq!(q, expected);
        assert_eq!(&q * &(&one + &i), one);
    }

    #[test]
    fn arith_errors() {
        let a = CycloNum::root(3, 1);
        let b = CycloNum::root(5, 1);
        assert_eq!(a.try_add(&b), Err(Error::ConductorMismatch(3, 5)));
        assert_eq!(a.try_div(&CycloNum::zero(3)), Err(Error::DivisionByZero));
    }

    #[test]
    fn conj_examples() {
        assert_eq!(CycloNum::root(5, 1).conj(), CycloNum::root(5, 4));
        let r = CycloNum::from_rat(9, &Rat::new(3, 7));
        assert_eq!(r.conj(), r);
        let real = &CycloNum::root(6, 1) + &CycloNum::root(6, 5);
        assert_eq!(real.conj(), real);
    }

    #[test]
    fn icot_examples() {
        assert!(icot_half(1, 2).unwrap().is_zero());
        assert_eq!(icot_half(1, 4).unwrap(), -CycloNum::root(4, 1));
        let v = icot_half(1, 3).unwrap().embed();
        let expected = Complex64::new(0.0, -1.0 / (std::f64::consts::PI / 3.0).tan());
        assert!(close(v, expected, 1e-12));
        assert!((v.im + 0.57735).abs() < 1e-5);
        assert_eq!(icot_half(3, 3), Err(Error::Pole { k: 3, m: 3 }));
    }

    #[test]
    fn csc2_examples() {
        assert_eq!(csc2_half(2, 4).unwrap(), CycloNum::one(4));
        assert_eq!(csc2_half(1, 4).unwrap(), CycloNum::from_int(4, 2));
        assert_eq!(csc2_half(1, 6).unwrap(), CycloNum::from_int(6, 4));
        assert!(csc2_half(0, 6).is_err());
    }

    #[test]
    fn embed_examples() {
        assert!(close(
            CycloNum::root(4, 1).embed(),
            Complex64::new(0.0, 1.0),
            1e-12
        ));
        assert!(close(
            csc2_half(1, 4).unwrap().embed(),
            Complex64::new(2.0, 0.0),
            1e-12
        ));
        let z = CycloNum::root(7, 1);
        let v = (&z + &z.conj()).embed();
        let c = 2.0 * (2.0 * std::f64::consts::PI / 7.0).cos();
        assert!(close(v, Complex64::new(c, 0.0), 1e-12));
        assert!((v.re - 1.24698).abs() < 1e-5);
    }

    #[test]
    fn cot_squared_plus_one_is_csc_squared() {
        for m in 2..30u32 {
            for k in 1..m as i64 {
                let c = icot_half(k, m).unwrap();
                let lhs = &(&(&c * &c) * &CycloNum::from_int(m, -1)) + &CycloNum::one(m);
                assert_eq!(lhs, csc2_half(k, m).unwrap(), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn parity_of_trig_constants() {
        for m in 2..30u32 {
            for k in 1..m as i64 {
                let mk = m as i64 - k;
                assert_eq!(icot_half(mk, m).unwrap(), -icot_half(k, m).unwrap());
                assert_eq!(csc2_half(mk, m).unwrap(), csc2_half(k, m).unwrap());
                assert!(csc2_half(k, m).unwrap().is_real());
            }
        }
    }

    #[test]
    fn lift_preserves_embedding() {
        let a = &CycloNum::root(6, 1) + &CycloNum::from_int(6, 3);
        let b = a.lift(12).unwrap();
        assert!(close(a.embed(), b.embed(), 1e-12));
        assert!(a.lift(8).is_err());
    }

    #[test]
    fn serde_shape() {
        let v = CycloNum::root(4, 1).scale(&Rat::new(-1, 2));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"m":4,"coeffs":["0","-1/2"]}"#);
        let back: CycloNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn inverse_mod_values() {
        assert_eq!(inverse_mod(3, 7), Some(5));
        assert_eq!(inverse_mod(2, 4), None);
        assert_eq!(totient(15), 8);
    }

    fn arb_elem(m: u32) -> impl Strategy<Value = CycloNum> {
        let phi = totient(m) as usize;
        prop::collection::vec((-20i64..20, 1i64..6), phi).prop_map(move |cs| {
            let coeffs: Vec<Rat> = cs.into_iter().map(|(n, d)| Rat::new(n, d)).collect();
            CycloNum::from_coeffs(m, &coeffs)
        })
    }

    fn arb_pair() -> impl Strategy<Value = (CycloNum, CycloNum)> {
        (2u32..25).prop_flat_map(|m| (arb_elem(m), arb_elem(m)))
    }

    proptest! {
        #[test]
        fn embedding_is_multiplicative((a, b) in arb_pair()) {
            let prod = (&a * &b).embed();
            let expected = a.embed() * b.embed();
            prop_assert!(close(prod, expected, 1e-9));
            let sum = (&a + &b).embed();
            prop_assert!(close(sum, a.embed() + b.embed(), 1e-9));
        }

        #[test]
        fn conj_is_involution((a, _b) in arb_pair()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert!(close(a.conj().embed(), a.embed().conj(), 1e-9));
        }

        #[test]
        fn division_round_trip((a, b) in arb_pair()) {
            prop_assume!(!b.is_zero());
            let q = a.try_div(&b).unwrap();
            prop_assert_eq!(&q * &b, a);
        }
    }
}
