//! Small modular-arithmetic helpers over Z_p.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`. Panics on `a ≡ 0`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "zero has no inverse mod {p}");
    pow_mod(a, p - 2, p)
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

pub fn is_quadratic_residue(a: u64, p: u64) -> bool {
    let a = a % p;
    a == 0 || pow_mod(a, (p - 1) / 2, p) == 1
}

/// Smallest quadratic non-residue mod an odd prime.
pub fn smallest_nonresidue(p: u32) -> u32 {
    (2..p)
        .find(|&w| !is_quadratic_residue(w as u64, p as u64))
        .unwrap_or(0)
}

/// Monic `x² + bx + a` is irreducible over Z_p (p odd) iff its discriminant
/// is a non-residue.
pub fn quadratic_irreducible(b: u32, a: u32, p: u32) -> bool {
    let (b, a, p) = (b as i64, a as i64, p as i64);
    let disc = (b * b - 4 * a).rem_euclid(p) as u64;
    disc != 0 && !is_quadratic_residue(disc, p as u64)
}

/// Determinant of a square matrix over Z_p by Gaussian elimination.
pub fn det_mod(m: &[Vec<u32>], p: u32) -> u32 {
    let n = m.len();
    let p64 = p as u64;
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as u64 % p64).collect())
        .collect();
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            a.swap(piv, col);
            det = (p64 - det) % p64;
        }
        det = det * a[col][col] % p64;
        let inv = inv_mod(a[col][col], p64);
        for r in col + 1..n {
            let factor = a[r][col] * inv % p64;
            if factor == 0 {
                continue;
            }
            for c in col..n {
                a[r][c] = (a[r][c] + p64 - factor * a[col][c] % p64) % p64;
            }
        }
    }
    det as u32
}

/// `C(n, 2)` reduced mod p for any integer n (p odd).
pub fn binom2_mod(n: i64, p: u32) -> u32 {
    let pm = p as u64;
    let nn = reduce(n, p) as u64;
    let nm1 = reduce(n - 1, p) as u64;
    (nn * nm1 % pm * inv_mod(2, pm) % pm) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_residues() {
        assert!(is_prime(5) && is_prime(7) && !is_prime(9) && !is_prime(1));
        assert_eq!(smallest_nonresidue(5), 2);
        assert_eq!(smallest_nonresidue(7), 3);
        assert_eq!(inv_mod(3, 7), 5);
    }

    #[test]
    fn irreducible_quadratics() {
        // x² + 2 over Z_5: -8 ≡ 2 is a non-residue.
        assert!(quadratic_irreducible(0, 2, 5));
        // x² - 1 factors.
        assert!(!quadratic_irreducible(0, 4, 5));
    }

    #[test]
    fn determinants() {
        assert_eq!(det_mod(&[vec![1, 2], vec![3, 4]], 5), 3);
        assert_eq!(det_mod(&[vec![1, 2], vec![2, 4]], 5), 0);
        assert_eq!(det_mod(&[vec![0, 1], vec![1, 0]], 5), 4);
    }

    #[test]
    fn binomial() {
        assert_eq!(binom2_mod(4, 5), 1);
        assert_eq!(binom2_mod(-1, 5), 1);
    }
}
