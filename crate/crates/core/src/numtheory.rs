//! Small-integer number theory used throughout: conductors and orders are
//! machine integers well below 2^32 at desk scale.

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
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

pub fn checked_lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

pub fn radical(n: u64) -> u64 {
    prime_factors(n).into_iter().product::<u64>().max(1)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
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

/// Units of Z/n as representatives in [0, n); for n = 1 this is {0}.
pub fn units(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&k| gcd(k, n) == 1).collect()
}

/// `k mod n` in [0, n) for signed k.
pub fn residue(k: i64, n: u64) -> u64 {
    let n = n as i128;
    (((k as i128) % n + n) % n) as u64
}

pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % n as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(n as i128) as u64)
}

pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// `Some((p, e))` when n = p^e with e >= 1.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let ps = prime_factors(n);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let mut e = 0;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    Some((p, e))
}

/// A generating set of (Z/n)^x, built greedily.
pub fn unit_generators(n: u64) -> Vec<u64> {
    let all = units(n);
    if n <= 2 {
        return Vec::new();
    }
    let mut reached = vec![false; n as usize];
    reached[1] = true;
    let mut group = vec![1u64];
    let mut gens = Vec::new();
    for &u in &all {
        if reached[u as usize] {
            continue;
        }
        gens.push(u);
        // close the subgroup under multiplication by u
        let mut frontier = group.clone();
        while let Some(x) = frontier.pop() {
            let y = mul_mod(x, u, n);
            if !reached[y as usize] {
                reached[y as usize] = true;
                group.push(y);
                frontier.push(y);
                for &g in &gens {
                    let z = mul_mod(y, g, n);
                    if !reached[z as usize] {
                        reached[z as usize] = true;
                        group.push(z);
                        frontier.push(z);
                    }
                }
            }
        }
        if group.len() == all.len() {
            break;
        }
    }
    gens
}
