//! Integer utilities shared across the crate: Kronecker symbol, trial-division
//! factorization, square/squarefree decompositions, and p-adic valuations.
//!
//! Everything here is exact integer arithmetic; no floating point.

/// Full Kronecker symbol (a/n), defined for all integers a, n.
///
/// Extends the Jacobi symbol to even and negative lower arguments:
/// (a/0) = 1 iff a = ±1, (a/-1) = -1 iff a < 0, and
/// (a/2) = 0, 1, -1 according as a is even, a ≡ ±1 (mod 8), a ≡ ±3 (mod 8).
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // Strip factors of 2 from n; each contributes (a/2).
    let mut twos = 0u32;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos % 2 == 1 {
        match a.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => return 0, // a even
        }
    }
    // Jacobi symbol (a/n) for odd n > 0 by quadratic reciprocity.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let nm8 = n % 8;
            if nm8 == 3 || nm8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Prime factorization of n ≥ 1 by trial division, as (prime, exponent) pairs
/// in increasing prime order.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize requires n >= 1, got {n}");
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The distinct prime divisors of n ≥ 1, increasing.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// p-adic valuation ord_p(n) for n ≠ 0.
pub fn ord_p(n: i64, p: u64) -> u32 {
    assert!(n != 0, "ord_p of 0 is infinite");
    assert!(p >= 2);
    let mut n = n.unsigned_abs();
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// Decompose n ≥ 1 as n = s·t² with s squarefree; returns (s, t).
pub fn squarefree_decompose(n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut t = 1u64;
    for (p, e) in factorize(n) {
        if e % 2 == 1 {
            s *= p;
        }
        t *= p.pow(e / 2);
    }
    (s, t)
}

/// True iff n ≥ 1 is squarefree.
pub fn is_squarefree(n: u64) -> bool {
    squarefree_decompose(n).1 == 1
}

/// Decompose n ≥ 1 as n = 4^a · m · d² with d odd and m squarefree;
/// returns (a, m, d).  The decomposition is unique.
pub fn four_power_decompose(n: u64) -> (u32, u64, u64) {
    let mut a = 0u32;
    let mut n0 = n;
    while n0 % 4 == 0 {
        n0 /= 4;
        a += 1;
    }
    // n0 is the 4-free part, so ord_2(n0) ≤ 1 and its square part is odd.
    let (m, d) = squarefree_decompose(n0);
    debug_assert_eq!(4u64.pow(a) * m * d * d, n);
    debug_assert!(d % 2 == 1);
    (a, m, d)
}

/// Extended gcd: returns (g, x, y) with a·x + b·y = g = gcd(a,b), g ≥ 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// All primes ≤ n by a sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2;
    while p * p <= n {
        if sieve[p] {
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    (2..=n).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}
