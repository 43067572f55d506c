//! Prime ground truth: segmented sieve of Eratosthenes, `π(x)`, `pₙ`, and
//! the Möbius function.
//!
//! A [`PrimeTable`] stores one bit per integer in `[0, limit]` (bit `i` of
//! word `i / 64`), which is also the on-disk cache layout.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// Largest table built unless the caller raises the cap.
pub const DEFAULT_MAX_LIMIT: u64 = 1_000_000_000;

/// Largest Möbius table built by default (it costs 5 bytes per entry while
/// under construction).
pub const DEFAULT_MOBIUS_MAX: u64 = 100_000_000;

// Numbers covered by one sieve segment: 2^18 bits = 32 KiB.
const SEGMENT_BITS: u64 = 1 << 18;
// Words between cumulative-count checkpoints.
const CHECKPOINT_WORDS: usize = 8;

const ODD_BITS: u64 = 0xAAAA_AAAA_AAAA_AAAA;

pub const CACHE_MAGIC: &[u8; 4] = b"LIPR";
pub const CACHE_VERSION: u32 = 1;

/// Primality flags for `0..=limit` plus sparse cumulative counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    bits: Vec<u64>,
    checkpoints: Vec<u64>,
}

fn words_for(limit: u64) -> usize {
    (limit / 64 + 1) as usize
}

fn check_limit(limit: u64, max: u64) -> Result<()> {
    if limit < 2 {
        return Err(Error::domain(format!("sieve limit must be at least 2, got {limit}")));
    }
    if limit > max {
        return Err(Error::Capacity { requested: limit, maximum: max });
    }
    Ok(())
}

/// Odd primes up to `n` by a plain byte sieve; seeds the segmented sieve.
fn small_odd_primes(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    let mut i = 3;
    while i <= n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += 2 * i;
            }
        }
        i += 2;
    }
    out
}

/// Segmented sieve up to `limit` with the default capacity cap.
pub fn sieve(limit: u64) -> Result<PrimeTable> {
    sieve_with_max(limit, DEFAULT_MAX_LIMIT)
}

pub fn sieve_with_max(limit: u64, max: u64) -> Result<PrimeTable> {
    check_limit(limit, max)?;
    let mut bits = vec![0u64; words_for(limit)];
    let base = small_odd_primes((limit as f64).sqrt() as u64 + 1);
    let mut lo = 0u64;
    while lo <= limit {
        let hi = (lo + SEGMENT_BITS).min(limit + 1);
        let w0 = (lo / 64) as usize;
        let w1 = hi.div_ceil(64) as usize;
        let seg = &mut bits[w0..w1];
        seg.fill(ODD_BITS);
        for &p in &base {
            if p * p >= hi {
                break;
            }
            let mut m = (p * p).max(lo.div_ceil(p) * p);
            if m % 2 == 0 {
                m += p;
            }
            while m < hi {
                let off = m - lo;
                seg[(off / 64) as usize] &= !(1u64 << (off % 64));
                m += 2 * p;
            }
        }
        lo = hi;
    }
    Ok(PrimeTable::from_bits(limit, finish_bits(bits, limit)))
}

/// Plain (non-segmented) sieve over the whole range at once. Slower on large
/// ranges; kept as an independent cross-check of [`sieve`].
pub fn sieve_unsegmented(limit: u64) -> Result<PrimeTable> {
    check_limit(limit, DEFAULT_MAX_LIMIT)?;
    let mut bits = vec![ODD_BITS; words_for(limit)];
    let mut p = 3u64;
    while p * p <= limit {
        if bits[(p / 64) as usize] >> (p % 64) & 1 == 1 {
            let mut m = p * p;
            while m <= limit {
                bits[(m / 64) as usize] &= !(1u64 << (m % 64));
                m += 2 * p;
            }
        }
        p += 2;
    }
    Ok(PrimeTable::from_bits(limit, finish_bits(bits, limit)))
}

fn finish_bits(mut bits: Vec<u64>, limit: u64) -> Vec<u64> {
    // 1 is not prime, 2 is.
    bits[0] &= !0b10;
    bits[0] |= 0b100;
    let used = (limit % 64) + 1;
    if used < 64 {
        let last = bits.len() - 1;
        bits[last] &= (1u64 << used) - 1;
    }
    bits
}

impl PrimeTable {
    fn from_bits(limit: u64, bits: Vec<u64>) -> Self {
        let mut checkpoints = Vec::with_capacity(bits.len() / CHECKPOINT_WORDS + 1);
        let mut acc = 0u64;
        for chunk in bits.chunks(CHECKPOINT_WORDS) {
            checkpoints.push(acc);
            acc += chunk.iter().map(|w| w.count_ones() as u64).sum::<u64>();
        }
        checkpoints.push(acc);
        Self { limit, bits, checkpoints }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `π(limit)`.
    pub fn count(&self) -> u64 {
        *self.checkpoints.last().expect("at least one checkpoint")
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n <= self.limit && self.bits[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    /// Primes in increasing order.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes_up_to(self.limit)
    }

    pub fn primes_up_to(&self, bound: u64) -> impl Iterator<Item = u64> + '_ {
        let bound = bound.min(self.limit);
        let last_word = (bound / 64) as usize;
        self.bits[..=last_word]
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| BitIter(w).map(move |b| wi as u64 * 64 + b))
            .take_while(move |&p| p <= bound)
    }

    /// Number of primes `<= n` for an integer `n <= limit`.
    pub fn pi_int(&self, n: u64) -> Result<u64> {
        if n > self.limit {
            return Err(Error::OutOfRange { value: n as f64, limit: self.limit });
        }
        let w = (n / 64) as usize;
        let block = w / CHECKPOINT_WORDS;
        let mut c = self.checkpoints[block];
        c += self.bits[block * CHECKPOINT_WORDS..w]
            .iter()
            .map(|x| x.count_ones() as u64)
            .sum::<u64>();
        let bit = n % 64;
        let mask = if bit == 63 { u64::MAX } else { (1u64 << (bit + 1)) - 1 };
        c += (self.bits[w] & mask).count_ones() as u64;
        Ok(c)
    }

    /// The `n`-th prime (1-based).
    pub fn nth_prime(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::domain("nth_prime is 1-based; n = 0 is invalid"));
        }
        if n > self.count() {
            return Err(Error::InsufficientTable { needed: n, available: self.count(), limit: self.limit });
        }
        // Last checkpoint with count < n.
        let block = self.checkpoints.partition_point(|&c| c < n) - 1;
        let mut remaining = n - self.checkpoints[block];
        let start = block * CHECKPOINT_WORDS;
        for (i, &w) in self.bits[start..].iter().enumerate() {
            let ones = w.count_ones() as u64;
            if remaining <= ones {
                let b = BitIter(w).nth((remaining - 1) as usize).expect("bit present");
                return Ok((start + i) as u64 * 64 + b);
            }
            remaining -= ones;
        }
        unreachable!("checkpoint counts are consistent with the bitset")
    }

    /// Serialise as `"LIPR"`, version (u32 LE), limit (u64 LE), then
    /// `ceil((limit+1)/8)` bitset bytes, least significant bit first.
    pub fn write_cache<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&CACHE_VERSION.to_le_bytes())?;
        w.write_all(&self.limit.to_le_bytes())?;
        let mut remaining = (self.limit + 1).div_ceil(8) as usize;
        for word in &self.bits {
            let bytes = word.to_le_bytes();
            let take = remaining.min(8);
            w.write_all(&bytes[..take])?;
            remaining -= take;
            if remaining == 0 {
                break;
            }
        }
        Ok(())
    }

    pub fn read_cache<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != CACHE_MAGIC {
            return Err(Error::Format(format!("bad magic {magic:?}")));
        }
        let mut v = [0u8; 4];
        r.read_exact(&mut v)?;
        let version = u32::from_le_bytes(v);
        if version != CACHE_VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let mut l = [0u8; 8];
        r.read_exact(&mut l)?;
        let limit = u64::from_le_bytes(l);
        check_limit(limit, DEFAULT_MAX_LIMIT).map_err(|e| Error::Format(e.to_string()))?;
        let n_bytes = (limit + 1).div_ceil(8) as usize;
        let mut raw = vec![0u8; n_bytes];
        r.read_exact(&mut raw)?;
        let mut extra = [0u8; 1];
        if r.read(&mut extra)? != 0 {
            return Err(Error::Format("trailing bytes after bitset".into()));
        }
        let mut bits = vec![0u64; words_for(limit)];
        for (i, chunk) in raw.chunks(8).enumerate() {
            let mut b = [0u8; 8];
            b[..chunk.len()].copy_from_slice(chunk);
            bits[i] = u64::from_le_bytes(b);
        }
        let used = (limit % 64) + 1;
        if used < 64 && bits[bits.len() - 1] >> used != 0 {
            return Err(Error::Format("bits set beyond the stated limit".into()));
        }
        if bits[0] & 0b111 != 0b100 {
            return Err(Error::Format("flags for 0, 1, 2 are inconsistent".into()));
        }
        Ok(Self::from_bits(limit, bits))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_cache(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read_cache(BufReader::new(File::open(path)?))
    }
}

/// Cache file name used inside a cache directory.
pub fn cache_path(dir: &Path, limit: u64) -> PathBuf {
    dir.join(format!("primes-{limit}.lipr"))
}

/// Load a cached table for `limit` from `dir`, or sieve and store it.
pub fn load_or_sieve(limit: u64, max: u64, dir: Option<&Path>) -> Result<PrimeTable> {
    let Some(dir) = dir else {
        return sieve_with_max(limit, max);
    };
    let path = cache_path(dir, limit);
    if let Ok(t) = PrimeTable::load(&path) {
        if t.limit == limit {
            return Ok(t);
        }
    }
    let t = sieve_with_max(limit, max)?;
    std::fs::create_dir_all(dir)?;
    t.save(&path)?;
    Ok(t)
}

/// Count of primes `<= x`.
pub fn pi(x: f64, table: &PrimeTable) -> Result<u64> {
    if x.is_nan() || x < 0.0 || x > table.limit as f64 {
        return Err(Error::OutOfRange { value: x, limit: table.limit });
    }
    table.pi_int(x.floor() as u64)
}

pub fn nth_prime(n: u64, table: &PrimeTable) -> Result<u64> {
    table.nth_prime(n)
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as u64;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// μ(n) for `1 <= n <= limit` (index 0 unused, stored as 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusTable {
    limit: u64,
    mu: Vec<i8>,
}

pub fn mobius_table(limit: u64) -> Result<MobiusTable> {
    mobius_table_with_max(limit, DEFAULT_MOBIUS_MAX)
}

/// Linear sieve: each composite is struck once, by its smallest prime factor.
pub fn mobius_table_with_max(limit: u64, max: u64) -> Result<MobiusTable> {
    if limit < 1 {
        return Err(Error::domain("Möbius table limit must be at least 1"));
    }
    if limit > max {
        return Err(Error::Capacity { requested: limit, maximum: max });
    }
    let n = limit as usize;
    let mut spf = vec![0u32; n + 1];
    let mut mu = vec![0i8; n + 1];
    let mut primes: Vec<u32> = Vec::new();
    mu[1] = 1;
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            mu[i] = -1;
            primes.push(i as u32);
        }
        for &p in &primes {
            let ip = i * p as usize;
            if p > spf[i] || ip > n {
                break;
            }
            spf[ip] = p;
            mu[ip] = if p == spf[i] { 0 } else { -mu[i] };
        }
    }
    Ok(MobiusTable { limit, mu })
}

impl MobiusTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// μ(n), or `None` outside `1..=limit`.
    pub fn get(&self, n: u64) -> Option<i8> {
        (n >= 1 && n <= self.limit).then(|| self.mu[n as usize])
    }

    /// μ(n); panics outside `1..=limit`.
    pub fn mu(&self, n: u64) -> i8 {
        self.get(n).unwrap_or_else(|| panic!("μ({n}) outside table 1..={}", self.limit))
    }

    /// Mertens function `M(N) = Σ_{n<=N} μ(n)`.
    pub fn mertens(&self, n: u64) -> i64 {
        self.mu[1..=(n.min(self.limit) as usize)].iter().map(|&m| m as i64).sum()
    }
}
