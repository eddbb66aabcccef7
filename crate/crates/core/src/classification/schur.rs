//! Degree of a Schur functor: the number of standard tableaux of shape `λ`.

use num::{BigUint, One};

use crate::error::{Error, Result};

fn check_partition(parts: &[u32]) -> Result<()> {
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidPartition(format!(
            "{parts:?} is not weakly decreasing"
        )));
    }
    Ok(())
}

/// Number of standard Young tableaux of shape `parts`, by the hook length
/// formula. Trailing zero parts are ignored.
pub fn schur_degree(parts: &[u32]) -> Result<BigUint> {
    check_partition(parts)?;
    let rows: Vec<u32> = parts.iter().copied().filter(|&p| p > 0).collect();
    let n: u32 = rows.iter().sum();
    let mut num = BigUint::one();
    for k in 2..=n {
        num *= k;
    }
    let mut den = BigUint::one();
    for (r, &len) in rows.iter().enumerate() {
        for c in 0..len {
            let arm = len - c - 1;
            let leg = rows[r + 1..].iter().filter(|&&l| l > c).count() as u32;
            den *= arm + leg + 1;
        }
    }
    Ok(num / den)
}
