//! Segmented sieve of Eratosthenes backing the von Mangoldt function, prime
//! counts in progressions, Chebyshev sums and the Euler totient.
//!
//! The table is a primality bitmap over `[0, X]` plus an explicit sorted list
//! of the proper prime powers `p^k ≤ X`, `k ≥ 2`. Segments of the bitmap are
//! sieved concurrently; each segment owns a disjoint run of words, so the
//! result does not depend on the segment size or the thread schedule.

use num_integer::Roots;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::num::{CompensatedSum, Float};

pub const DEFAULT_SEGMENT_SIZE: usize = 1 << 18;

/// Two bitmaps of this many bits is the default ceiling (about 500 MB).
pub const DEFAULT_MAX_LIMIT: u64 = 4_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveConfig {
    /// Integers per segment; rounded up to a multiple of 64.
    pub segment_size: usize,
    pub max_limit: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        Self { segment_size: DEFAULT_SEGMENT_SIZE, max_limit: DEFAULT_MAX_LIMIT }
    }
}

/// A reduced residue class `a mod q` with `0 ≤ a < q` and `gcd(a, q) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct ResidueClass {
    a: u64,
    q: u64,
}

impl ResidueClass {
    pub fn new(a: i64, q: i64) -> Result<Self> {
        let invalid = |reason| Error::InvalidResidueClass { a, q, reason };
        if q < 1 {
            return Err(invalid("modulus must be positive"));
        }
        if a < 0 || a >= q {
            return Err(invalid("residue must satisfy 0 <= a < q"));
        }
        if num_integer::gcd(a, q) != 1 {
            return Err(invalid("residue and modulus must be coprime"));
        }
        Ok(Self { a: a as u64, q: q as u64 })
    }

    /// The trivial class `0 mod 1`.
    pub fn all() -> Self {
        Self { a: 0, q: 1 }
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn contains(&self, n: i128) -> bool {
        n.rem_euclid(self.q as i128) == self.a as i128
    }

    /// Smallest positive member.
    pub fn first_positive(&self) -> u64 {
        if self.a == 0 {
            self.q
        } else {
            self.a
        }
    }

    /// Every reduced class modulo `q`.
    pub fn all_mod(q: u64) -> Vec<Self> {
        (0..q)
            .filter(|&a| num_integer::gcd(a, q) == 1)
            .map(|a| Self { a, q })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct MangoldtTable {
    limit: u64,
    segment_size: usize,
    prime_bits: Vec<u64>,
    /// `(p^k, p)` for `k ≥ 2`, sorted by `p^k`.
    higher_powers: Vec<(u64, u64)>,
}

fn small_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

pub fn build_table(limit: u64) -> Result<MangoldtTable> {
    build_table_with(limit, &SieveConfig::default())
}

pub fn build_table_with(limit: u64, config: &SieveConfig) -> Result<MangoldtTable> {
    if limit < 2 {
        return Err(Error::LimitTooSmall(limit));
    }
    if limit > config.max_limit {
        return Err(Error::LimitTooLarge { limit, budget: config.max_limit });
    }
    let root = limit.sqrt();
    let base = small_primes(root);
    let words = (limit / 64 + 1) as usize;
    let seg_words = config.segment_size.div_ceil(64).max(1);
    let mut prime_bits = vec![0u64; words];
    prime_bits.par_chunks_mut(seg_words).enumerate().for_each(|(idx, chunk)| {
        let lo = (idx * seg_words * 64) as u64;
        let hi = lo + chunk.len() as u64 * 64;
        chunk.iter_mut().for_each(|w| *w = !0);
        if lo == 0 {
            chunk[0] &= !0b11;
        }
        for &p in &base {
            if p * p >= hi {
                break;
            }
            let mut m = (p * p).max(lo.div_ceil(p) * p);
            while m < hi {
                let off = m - lo;
                chunk[(off / 64) as usize] &= !(1u64 << (off % 64));
                m += p;
            }
        }
    });
    let tail = limit % 64;
    if let Some(last) = prime_bits.last_mut() {
        *last &= if tail == 63 { !0 } else { (1u64 << (tail + 1)) - 1 };
    }
    let mut higher_powers = Vec::new();
    for &p in &base {
        let mut pk = p * p;
        loop {
            higher_powers.push((pk, p));
            match pk.checked_mul(p) {
                Some(next) if next <= limit => pk = next,
                _ => break,
            }
        }
    }
    higher_powers.sort_unstable();
    Ok(MangoldtTable { limit, segment_size: seg_words * 64, prime_bits, higher_powers })
}

impl MangoldtTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn segment_size(&self) -> usize {
        self.segment_size
    }

    pub fn covers(&self, n: i128) -> bool {
        n <= self.limit as i128
    }

    pub fn require(&self, n: i128) -> Result<()> {
        if self.covers(n) {
            Ok(())
        } else {
            Err(Error::TableTooSmall { needed: n, limit: self.limit })
        }
    }

    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        n <= self.limit && (self.prime_bits[(n / 64) as usize] >> (n % 64)) & 1 == 1
    }

    /// `Some(p)` when `n = p^k` for a prime `p` and `k ≥ 1`.
    #[inline]
    pub fn prime_power_base(&self, n: u64) -> Option<u64> {
        if self.is_prime(n) {
            return Some(n);
        }
        self.higher_powers
            .binary_search_by_key(&n, |&(pk, _)| pk)
            .ok()
            .map(|i| self.higher_powers[i].1)
    }

    /// `Λ(n)`, zero for `n ≤ 1`.
    ///
    /// # Panics
    /// If `n` exceeds the table limit.
    #[inline]
    pub fn lambda<F: Float>(&self, n: i128) -> F {
        assert!(self.covers(n), "Λ({n}) requested beyond sieve limit {}", self.limit);
        if n < 2 {
            return F::zero();
        }
        match self.prime_power_base(n as u64) {
            Some(p) => F::of_u64(p).ln(),
            None => F::zero(),
        }
    }

    /// Every prime power `(p^k, p) ≤ X` in ascending order.
    pub fn records(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let mut primes = self.primes().peekable();
        let mut powers = self.higher_powers.iter().copied().peekable();
        std::iter::from_fn(move || match (primes.peek(), powers.peek()) {
            (Some(&p), Some(&(pk, _))) if p < pk => primes.next().map(|p| (p, p)),
            (Some(_), Some(_)) | (None, Some(_)) => powers.next(),
            (Some(_), None) => primes.next().map(|p| (p, p)),
            (None, None) => None,
        })
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.prime_bits.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as u64;
                w &= w - 1;
                Some(i as u64 * 64 + b)
            })
        })
    }

    /// `π(x)` by popcount.
    pub fn prime_count(&self, x: u64) -> u64 {
        let x = x.min(self.limit);
        let full = (x / 64) as usize;
        let mut count: u64 = self.prime_bits[..full].iter().map(|w| w.count_ones() as u64).sum();
        let rem = x % 64;
        let mask = if rem == 63 { !0 } else { (1u64 << (rem + 1)) - 1 };
        count += (self.prime_bits[full] & mask).count_ones() as u64;
        count
    }
}

/// `ψ(L; q, a) = Σ_{n ≤ L, n ≡ a (q)} Λ(n)`, summed in ascending `n`.
pub fn chebyshev_psi_ap<F: Float>(table: &MangoldtTable, limit: u64, class: ResidueClass) -> Result<F> {
    table.require(limit as i128)?;
    let mut sum = CompensatedSum::new();
    if class.q() == 1 {
        for (n, p) in table.records() {
            if n > limit {
                break;
            }
            sum.add(F::of_u64(p).ln());
        }
        return Ok(sum.total());
    }
    let mut n = class.first_positive();
    while n <= limit {
        sum.add(table.lambda(n as i128));
        n += class.q();
    }
    Ok(sum.total())
}

/// `π(x; q, a)`.
pub fn prime_pi_ap(table: &MangoldtTable, x: u64, class: ResidueClass) -> Result<u64> {
    table.require(x as i128)?;
    if class.q() == 1 {
        return Ok(table.prime_count(x));
    }
    let mut count = 0;
    let mut n = class.first_positive();
    while n <= x {
        count += table.is_prime(n) as u64;
        n += class.q();
    }
    Ok(count)
}

/// Euler's totient by trial factorization.
pub fn euler_phi(q: u64) -> u64 {
    assert!(q >= 1, "totient of zero");
    let mut n = q;
    let mut phi = q;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}
