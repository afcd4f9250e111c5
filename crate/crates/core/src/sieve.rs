//! von Mangoldt table: Λ(k) stored as the prime (and exponent) of k when k
//! is a prime power, so ln p can be taken at any precision.

use rug::Float;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct VonMangoldtTable {
    n: usize,
    /// (prime, exponent) for prime powers, (0, 0) otherwise.
    entries: Vec<(u32, u32)>,
}

impl VonMangoldtTable {
    pub fn new(n: usize) -> Self {
        let n = n.max(2);
        // smallest prime factor sieve
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                let mut k = i;
                while k <= n {
                    if spf[k] == 0 {
                        spf[k] = i as u32;
                    }
                    k += i;
                }
            }
        }
        let mut entries = vec![(0u32, 0u32); n + 1];
        for k in 2..=n {
            let p = spf[k] as usize;
            let mut m = k;
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if m == 1 {
                entries[k] = (p as u32, e);
            }
        }
        VonMangoldtTable { n, entries }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `(p, m)` with `k = p^m`, or `None` when Λ(k) = 0.
    pub fn prime_power(&self, k: usize) -> Option<(u32, u32)> {
        match self.entries.get(k) {
            Some(&(p, e)) if p != 0 => Some((p, e)),
            _ => None,
        }
    }

    pub fn lambda(&self, k: usize, prec: u32) -> Float {
        match self.prime_power(k) {
            Some((p, _)) => Float::with_val(prec, p).ln(),
            None => Float::new(prec),
        }
    }

    pub fn lambda_f64(&self, k: usize) -> f64 {
        self.prime_power(k).map(|(p, _)| (p as f64).ln()).unwrap_or(0.0)
    }

    /// Iterate over `(k, p)` for every prime power `k ≤ N`.
    pub fn prime_powers(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.0 != 0)
            .map(|(k, e)| (k, e.0))
    }
}

/// Cache of `ln p` at one precision.
pub struct LogCache {
    prec: u32,
    map: HashMap<u32, Float>,
}

impl LogCache {
    pub fn new(prec: u32) -> Self {
        LogCache {
            prec,
            map: HashMap::new(),
        }
    }

    pub fn ln(&mut self, p: u32) -> &Float {
        let prec = self.prec;
        self.map.entry(p).or_insert_with(|| Float::with_val(prec, p).ln())
    }
}

pub fn von_mangoldt_table(n: usize) -> VonMangoldtTable {
    VonMangoldtTable::new(n)
}
