//! Exact ranks of small integer matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Rank over the rationals by fraction-free row reduction.
///
/// Rows are divided by their content after every elimination step, which
/// keeps entries small for boundary matrices; the `i128` path falls back to
/// arbitrary precision on overflow.
pub fn rank_rational(rows: &[Vec<i64>]) -> usize {
    let small: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    match eliminate_i128(small) {
        Some(rank) => rank,
        None => {
            let big = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            eliminate_big(big)
        }
    }
}

fn eliminate_i128(mut rows: Vec<Vec<i128>>) -> Option<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        let pv = pivot_row[col];
        for row in rows.iter_mut().skip(rank + 1) {
            let e = row[col];
            if e == 0 {
                continue;
            }
            let mut content = 0;
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = x.checked_mul(pv)?.checked_sub(y.checked_mul(e)?)?;
                content = content.gcd(x);
            }
            if content > 1 {
                row.iter_mut().for_each(|x| *x /= content);
            }
        }
        rank += 1;
    }
    Some(rank)
}

fn eliminate_big(mut rows: Vec<Vec<BigInt>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot_row = rows[rank].clone();
        let pv = pivot_row[col].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let e = row[col].clone();
            let mut content = BigInt::zero();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &pv - y * &e;
                content = content.gcd(x);
            }
            if content > BigInt::from(1) {
                row.iter_mut().for_each(|x| *x = &*x / &content);
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `GF(p)` for a prime `p < 2^31`.
pub fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let p = p as i64;
    let mut rows: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect()).collect();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = mod_pow(rows[rank][col], p - 2, p);
        let pivot_row: Vec<i64> = rows[rank].iter().map(|&x| x * inv % p).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let e = row[col];
            if e == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = (*x - e * y).rem_euclid(p);
            }
        }
        rank += 1;
    }
    rank
}

fn mod_pow(mut base: i64, mut exp: i64, p: i64) -> i64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank_rational(&[]), 0);
        assert_eq!(rank_rational(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank_rational(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_rational(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]), 3);
    }

    #[test]
    fn characteristic_two_differs() {
        // the diagonal 2 vanishes mod 2
        let m = vec![vec![2, 0], vec![0, 1]];
        assert_eq!(rank_rational(&m), 2);
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(rank_mod_p(&m, 3), 2);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let n = 12;
        let big = 1i64 << 61;
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { big + i as i64 } else { (i * j) as i64 + 1 }).collect())
            .collect();
        assert_eq!(rank_rational(&rows), n);
        assert!(eliminate_i128(rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()).is_none());
    }
}
