//! Small-integer number theory used by the cyclotomic and search code.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Returns `(p, alpha)` when `n = p^alpha` with `alpha >= 1`.
pub fn as_prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Largest divisor of `m` coprime to `s`.
pub fn coprime_part(m: u64, s: u64) -> u64 {
    let mut out = m;
    for (p, _) in factorize(s) {
        while out % p == 0 {
            out /= p;
        }
    }
    out
}

/// Prime powers `p^a` (a >= 1) with `phi(p^a) <= bound`, ascending.
pub fn prime_powers_with_phi_at_most(bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    // phi(p) = p - 1, so p <= bound + 1.
    for p in 2..=bound.saturating_add(1) {
        if !is_prime(p) {
            continue;
        }
        let mut q = p;
        loop {
            if q / p * (p - 1) > bound {
                break;
            }
            out.push(q);
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
        }
    }
    out.sort_unstable();
    out
}
