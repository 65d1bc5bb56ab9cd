//! Exact even-index Bernoulli numbers.
//!
//! Generated from the tangent numbers with the in-place integer recurrence
//! `T_j <- (j-k) T_(j-1) + (j-k+2) T_j`, then
//! `B_2k = (-1)^(k-1) 2k T_k / (4^k (4^k - 1))`. Everything stays in integers
//! until the final division.

use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

static CACHE: Mutex<Option<Arc<Vec<BigRational>>>> = Mutex::new(None);

fn compute(m_max: usize) -> Vec<BigRational> {
    let mut t: Vec<BigInt> = vec![BigInt::from(0); m_max + 1];
    if m_max >= 1 {
        t[1] = BigInt::one();
    }
    for k in 2..=m_max {
        t[k] = &t[k - 1] * (k - 1);
    }
    for k in 2..=m_max {
        for j in k..=m_max {
            let next = &t[j - 1] * (j - k) + &t[j] * (j - k + 2);
            t[j] = next;
        }
    }
    let mut out = Vec::with_capacity(m_max + 1);
    out.push(BigRational::one());
    for (k, tk) in t.iter().enumerate().skip(1) {
        let four_k = BigInt::one() << (2 * k);
        let den = &four_k * (&four_k - 1u32);
        let mut num = tk * (2 * k);
        if k % 2 == 0 {
            num = -num;
        }
        out.push(BigRational::new(num, den));
    }
    out
}

/// `B_0, B_2, ..., B_(2 m_max)`; index m holds `B_2m`. Results are cached and
/// shared.
pub fn bernoulli_even(m_max: usize) -> Arc<Vec<BigRational>> {
    let mut guard = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(table) = guard.as_ref() {
        if table.len() > m_max {
            return Arc::clone(table);
        }
    }
    // grow geometrically so that increasing requests stay O(m^2) overall
    let have = guard.as_ref().map_or(0, |t| t.len());
    let size = m_max.max(2 * have).max(16);
    let table = Arc::new(compute(size));
    *guard = Some(Arc::clone(&table));
    table
}

/// `B_2m` for a single m.
pub fn bernoulli_2m(m: usize) -> BigRational {
    bernoulli_even(m)[m].clone()
}
