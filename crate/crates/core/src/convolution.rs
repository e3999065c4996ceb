//! Fast subset convolution over the integer ring and over the max-sum
//! semiring.
//!
//! For functions `f, g : 2^U → R` the subset convolution is
//! `(f ∗ g)(Y) = Σ f(A)·g(B)` over all disjoint pairs `A ⊎ B = Y` (with
//! `Σ/·` replaced by `max/+` in the max-sum semiring). The ring variant runs
//! in `O(2^n · n²)` additions/multiplications via ranked zeta and Möbius
//! transforms; the max-sum variant embeds bounded integer values into big
//! integers — value `x` becomes `2^(b·x)` with `b = n+1` bits per level, so
//! that at most `2^n` contributing pairs can never carry across one level —
//! runs one exact ring convolution, and reads the maximum back off the
//! highest set bit. `−∞` embeds as `0`.
//!
//! Functions are passed as slices of length `2^n` indexed by bitmask; the
//! ground-set size `n` is implicit and guarded to at most 30 bits.

use num_bigint::BigInt;
use num_traits::Zero;
use std::ops::{AddAssign, Mul, SubAssign};

use crate::error::{Error, Result};

/// Largest supported ground set (the tables hold `2^n` entries).
pub const MAX_GROUND_SET: usize = 30;

/// Checks lengths and extracts the ground-set size `n` with `len = 2^n`.
fn ground_set_size(flen: usize, glen: usize) -> Result<usize> {
    if flen != glen {
        return Err(Error::invalid(format!(
            "subset convolution operands differ in length ({flen} vs {glen})"
        )));
    }
    if flen == 0 || !flen.is_power_of_two() {
        return Err(Error::invalid(format!(
            "subset convolution table length {flen} is not a power of two"
        )));
    }
    let n = flen.trailing_zeros() as usize;
    if n > MAX_GROUND_SET {
        return Err(Error::guard(
            "subset convolution ground set bits",
            MAX_GROUND_SET as u128,
            n as u128,
        ));
    }
    Ok(n)
}

/// Ranked subset convolution over any commutative ring: `O(2^n · n²)` ring
/// operations and `O(2^n · n)` ring elements of memory.
fn ranked_convolution<T>(f: &[T], g: &[T], n: usize) -> Vec<T>
where
    T: Zero + Clone + AddAssign + SubAssign + Mul<Output = T>,
{
    let size = 1usize << n;
    // Ranked zeta transform: zf[k][S] = Σ_{T ⊆ S, |T| = k} f(T).
    let ranked_zeta = |f: &[T]| -> Vec<Vec<T>> {
        let mut z: Vec<Vec<T>> = (0..=n)
            .map(|k| {
                (0..size)
                    .map(|s| {
                        if (s as u32).count_ones() as usize == k {
                            f[s].clone()
                        } else {
                            T::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for zk in z.iter_mut() {
            for i in 0..n {
                for s in 0..size {
                    if s & (1 << i) != 0 {
                        let lower = zk[s ^ (1 << i)].clone();
                        zk[s] += lower;
                    }
                }
            }
        }
        z
    };
    let zf = ranked_zeta(f);
    let zg = ranked_zeta(g);
    // Pointwise convolution of the rank coordinate.
    let mut zh: Vec<Vec<T>> = (0..=n)
        .map(|k| {
            (0..size)
                .map(|s| {
                    let mut acc = T::zero();
                    for j in 0..=k {
                        acc += zf[j][s].clone() * zg[k - j][s].clone();
                    }
                    acc
                })
                .collect()
        })
        .collect();
    // Möbius transform per rank, then read off h(S) at rank |S|.
    for zk in zh.iter_mut() {
        for i in 0..n {
            for s in 0..size {
                if s & (1 << i) != 0 {
                    let lower = zk[s ^ (1 << i)].clone();
                    zk[s] -= lower;
                }
            }
        }
    }
    (0..size)
        .map(|s| zh[(s as u32).count_ones() as usize][s].clone())
        .collect()
}

/// Exact subset convolution over the integer ring:
/// `result(Y) = Σ_{A ⊎ B = Y} f(A)·g(B)`, accumulated in 128-bit integers.
pub fn subset_convolution_ring(f: &[i64], g: &[i64]) -> Result<Vec<i128>> {
    let n = ground_set_size(f.len(), g.len())?;
    let fw: Vec<i128> = f.iter().map(|&x| x as i128).collect();
    let gw: Vec<i128> = g.iter().map(|&x| x as i128).collect();
    Ok(ranked_convolution(&fw, &gw, n))
}

/// Subset convolution over the max-sum semiring:
/// `result(Y) = max_{A ⊎ B = Y} f(A)+g(B)`, where `None` plays `−∞` and
/// absorbs. Computed by the exponent embedding described in the module
/// docs; intended for the bounded value ranges arising at DP join nodes.
pub fn subset_convolution_maxsum(
    f: &[Option<i64>],
    g: &[Option<i64>],
) -> Result<Vec<Option<i64>>> {
    let n = ground_set_size(f.len(), g.len())?;
    let size = 1usize << n;
    let finite_min = |v: &[Option<i64>]| v.iter().flatten().min().copied();
    // If either function is identically −∞, so is every result entry.
    let (Some(mf), Some(mg)) = (finite_min(f), finite_min(g)) else {
        return Ok(vec![None; size]);
    };
    let bits_per_level = (n + 1) as u64;
    let embed = |v: &[Option<i64>], m: i64| -> Vec<BigInt> {
        v.iter()
            .map(|x| match x {
                None => BigInt::zero(),
                Some(x) => BigInt::from(1) << (bits_per_level * (x - m) as u64),
            })
            .collect()
    };
    let hf = embed(f, mf);
    let hg = embed(g, mg);
    let conv = ranked_convolution(&hf, &hg, n);
    conv.into_iter()
        .map(|h| {
            if h.is_zero() {
                return Ok(None);
            }
            let mag = h.to_biguint().ok_or_else(|| {
                Error::Internal("max-sum embedding produced a negative count".into())
            })?;
            let level = (mag.bits() - 1) / bits_per_level;
            Ok(Some(level as i64 + mf + mg))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const SEED: u64 = 42;

    /// Reference: iterate subsets A of Y and their complements within Y.
    fn naive_ring(f: &[i64], g: &[i64]) -> Vec<i128> {
        let size = f.len();
        let mut out = vec![0i128; size];
        for y in 0..size {
            let mut a = y;
            loop {
                out[y] += f[a] as i128 * g[y ^ a] as i128;
                if a == 0 {
                    break;
                }
                a = (a - 1) & y;
            }
        }
        out
    }

    fn naive_maxsum(f: &[Option<i64>], g: &[Option<i64>]) -> Vec<Option<i64>> {
        let size = f.len();
        let mut out = vec![None; size];
        for y in 0..size {
            let mut a = y;
            loop {
                if let (Some(x), Some(z)) = (f[a], g[y ^ a]) {
                    out[y] = Some(out[y].map_or(x + z, |m: i64| m.max(x + z)));
                }
                if a == 0 {
                    break;
                }
                a = (a - 1) & y;
            }
        }
        out
    }

    #[test]
    fn maxsum_trivial_cases() {
        // Empty ground set.
        let r = subset_convolution_maxsum(&[Some(3)], &[Some(4)]).unwrap();
        assert_eq!(r, vec![Some(7)]);
        // One element, with −∞ absorbing one of the two terms.
        let f = [Some(0), Some(5)];
        let g = [Some(1), None];
        let r = subset_convolution_maxsum(&f, &g).unwrap();
        assert_eq!(r[1], Some(6));
        assert_eq!(r[0], Some(1));
        // Identically −∞ operand.
        let r = subset_convolution_maxsum(&[None, None], &[Some(1), Some(2)]).unwrap();
        assert_eq!(r, vec![None, None]);
    }

    #[test]
    fn ring_matches_naive_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for _ in 0..100 {
            let n = rng.gen_range(0..=7);
            let size = 1usize << n;
            let f: Vec<i64> = (0..size).map(|_| rng.gen_range(-50..=50)).collect();
            let g: Vec<i64> = (0..size).map(|_| rng.gen_range(-50..=50)).collect();
            assert_eq!(subset_convolution_ring(&f, &g).unwrap(), naive_ring(&f, &g));
        }
    }

    #[test]
    fn maxsum_matches_naive_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for trial in 0..100 {
            let n = rng.gen_range(0..=12);
            let size = 1usize << n;
            let gen = |rng: &mut ChaCha8Rng| -> Vec<Option<i64>> {
                (0..size)
                    .map(|_| {
                        if rng.gen_bool(0.25) {
                            None
                        } else {
                            Some(rng.gen_range(-20..=20))
                        }
                    })
                    .collect()
            };
            let f = gen(&mut rng);
            let g = gen(&mut rng);
            assert_eq!(
                subset_convolution_maxsum(&f, &g).unwrap(),
                naive_maxsum(&f, &g),
                "trial {trial}, n = {n}"
            );
        }
    }

    #[test]
    fn length_validation() {
        assert!(subset_convolution_ring(&[1, 2], &[1]).is_err());
        assert!(subset_convolution_ring(&[1, 2, 3], &[1, 2, 3]).is_err());
        assert!(subset_convolution_ring(&[], &[]).is_err());
        let err = ground_set_size(1 << 31, 1 << 31).unwrap_err();
        assert!(err.is_guard());
    }
}
