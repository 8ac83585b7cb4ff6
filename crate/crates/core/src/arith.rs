//! Exact integer helpers shared by the cyclic families.

use num_integer::Integer;

pub use num_integer::gcd;

/// Inverse of `x` modulo `m`, if `gcd(x, m) = 1`.
pub fn mod_inverse(x: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let eg = (x as i128 % m as i128).extended_gcd(&(m as i128));
    (eg.gcd == 1).then(|| eg.x.rem_euclid(m as i128) as u64)
}

/// Order of `a` in `Z_k`.
pub fn additive_order(a: u64, k: u64) -> u64 {
    k / gcd(a % k, k)
}

/// Validates `(k, a)` for `Cay(Z_k; a, a+1)` and returns `a mod k`.
pub fn first_family_params(k: u64, a: u64) -> crate::Result<u64> {
    if k < 3 {
        return Err(crate::Error::InvalidParameters(format!(
            "k = {k} must be at least 3"
        )));
    }
    let a = a % k;
    if a == 0 || a == k - 1 {
        return Err(crate::Error::InvalidParameters(format!(
            "a must not be 0 or -1 modulo k (k = {k}, a = {a})"
        )));
    }
    Ok(a)
}
