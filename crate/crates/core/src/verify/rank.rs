//! Exact rank computation over F_p for the graded slices.
//!
//! Rows are offered one at a time to an online echelon. Work rows are u64
//! vectors reduced lazily: echelon rows keep reduced entries below 2^25, so
//! a work row absorbs thousands of axpys before renormalization and the
//! inner loop is a bare multiply-add that vectorizes well.
//!
//! An [`Echelon`] built from curve-independent rows can be shared as the base
//! of many eliminations through [`Eliminator::with_base`]; the base's pivots
//! all live at or above a fixed coordinate offset.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Renormalize the work row after this many axpys. Entries stay below
/// 2^50 * 2^11 + 2^50 < 2^62.
const RENORM_INTERVAL: u32 = 2048;

#[derive(Clone, Debug)]
struct EchRow {
    /// Reduced entries from the row's pivot coordinate to the end;
    /// `data[0] == 1`. The pivot coordinate is the owner-map key.
    data: Vec<u32>,
}

/// A row-echelon basis over F_p with unit pivots.
#[derive(Debug)]
pub struct Echelon {
    coord_len: usize,
    rows: Vec<EchRow>,
    owner: Vec<i32>,
}

impl Echelon {
    fn new(coord_len: usize) -> Self {
        Echelon {
            coord_len,
            rows: Vec::new(),
            owner: vec![-1; coord_len],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn coord_len(&self) -> usize {
        self.coord_len
    }

    fn bytes(&self) -> usize {
        self.rows.iter().map(|r| 4 * r.data.len()).sum::<usize>() + 4 * self.owner.len()
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p is prime
    let mut acc = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

#[inline]
fn axpy(dst: &mut [u64], c: u64, src: &[u32]) {
    for (d, &s) in dst.iter_mut().zip(src.iter()) {
        *d += c * s as u64;
    }
}

/// Online Gaussian elimination: offer rows, count the independent ones.
pub struct Eliminator<'a> {
    p: u64,
    coord_len: usize,
    base: Option<(&'a Echelon, usize)>,
    own: Echelon,
}

impl<'a> Eliminator<'a> {
    pub fn new(p: u64, coord_len: usize) -> Self {
        Eliminator {
            p,
            coord_len,
            base: None,
            own: Echelon::new(coord_len),
        }
    }

    /// Reuses `base` as a frozen lower layer whose coordinates start at
    /// `offset` in this eliminator's coordinate space.
    pub fn with_base(p: u64, coord_len: usize, base: &'a Echelon, offset: usize) -> Self {
        assert!(offset + base.coord_len <= coord_len);
        Eliminator {
            p,
            coord_len,
            base: Some((base, offset)),
            own: Echelon::new(coord_len),
        }
    }

    pub fn rank_added(&self) -> usize {
        self.own.rows.len()
    }

    pub fn total_rank(&self) -> usize {
        self.own.rows.len() + self.base.map_or(0, |(b, _)| b.rank())
    }

    fn lookup(&self, coord: usize) -> Option<&[u32]> {
        let idx = self.own.owner[coord];
        if idx >= 0 {
            return Some(&self.own.rows[idx as usize].data);
        }
        if let Some((base, offset)) = self.base {
            if coord >= offset {
                let idx = base.owner[coord - offset];
                if idx >= 0 {
                    return Some(&base.rows[idx as usize].data);
                }
            }
        }
        None
    }

    /// Reduces a work row against the echelon; inserts it when independent.
    /// Returns true when the rank grew. The buffer is consumed either way
    /// and may be reused afterwards.
    pub fn offer(&mut self, row: &mut [u64]) -> bool {
        debug_assert_eq!(row.len(), self.coord_len);
        let p = self.p;
        let mut lead = 0usize;
        let mut axpys = 0u32;
        loop {
            while lead < self.coord_len {
                row[lead] %= p;
                if row[lead] != 0 {
                    break;
                }
                lead += 1;
            }
            if lead >= self.coord_len {
                return false;
            }
            match self.lookup(lead) {
                Some(data) => {
                    let c = p - row[lead];
                    axpy(&mut row[lead..lead + data.len()], c, data);
                    row[lead] = 0;
                    lead += 1;
                    axpys += 1;
                    if axpys % RENORM_INTERVAL == 0 {
                        for v in row[lead..].iter_mut() {
                            *v %= p;
                        }
                    }
                }
                None => {
                    let inv = mod_inv(row[lead], p);
                    let data: Vec<u32> = row[lead..]
                        .iter()
                        .map(|&v| (v % p * inv % p) as u32)
                        .collect();
                    self.own.owner[lead] = self.own.rows.len() as i32;
                    self.own.rows.push(EchRow { data });
                    return true;
                }
            }
        }
    }

    /// Finishes into a reusable echelon; only meaningful without a base.
    pub fn into_echelon(self) -> Echelon {
        assert!(
            self.base.is_none(),
            "cannot freeze an eliminator with a borrowed base"
        );
        self.own
    }
}

/// Shared store of echelons of the curve-independent blocks, keyed by
/// (differential position, internal degree, prime).
#[derive(Default)]
pub struct RankCache {
    map: Mutex<HashMap<(usize, u32, u64), Arc<Echelon>>>,
}

impl RankCache {
    pub fn new() -> Self {
        RankCache::default()
    }

    pub fn get_or_build(
        &self,
        key: (usize, u32, u64),
        build: impl FnOnce() -> Echelon,
    ) -> Arc<Echelon> {
        if let Some(hit) = self.map.lock().unwrap().get(&key) {
            return Arc::clone(hit);
        }
        let fresh = Arc::new(build());
        let mut map = self.map.lock().unwrap();
        Arc::clone(map.entry(key).or_insert(fresh))
    }

    pub fn approx_bytes(&self) -> usize {
        self.map.lock().unwrap().values().map(|e| e.bytes()).sum()
    }

    pub fn clear(&self) {
        self.map.lock().unwrap().clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank_dense(p: u64, rows: &[Vec<u64>]) -> usize {
        // naive reference elimination
        let mut m: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|v| v % p).collect())
            .collect();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(pr) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
                continue;
            };
            m.swap(rank, pr);
            let inv = mod_inv(m[rank][c], p);
            for x in m[rank].clone()[c..].iter().enumerate() {
                m[rank][c + x.0] = x.1 * inv % p;
            }
            for r in 0..m.len() {
                if r != rank && m[r][c] != 0 {
                    let f = m[r][c];
                    for k in c..cols {
                        m[r][k] = (m[r][k] + (p - f) * m[rank][k]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn offer_all(p: u64, cols: usize, rows: &[Vec<u64>]) -> usize {
        let mut el = Eliminator::new(p, cols);
        let mut buf = vec![0u64; cols];
        for r in rows {
            buf.copy_from_slice(r);
            el.offer(&mut buf);
        }
        el.rank_added()
    }

    #[test]
    fn matches_reference_on_random_matrices() {
        let p = 32003;
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for (rows, cols) in [(5, 8), (8, 5), (20, 20), (17, 31)] {
            let m: Vec<Vec<u64>> = (0..rows)
                .map(|_| (0..cols).map(|_| next() % (3 * p) / 3 % p).collect())
                .collect();
            assert_eq!(offer_all(p, cols, &m), rank_dense(p, &m));
        }
    }

    #[test]
    fn low_rank_detected() {
        let p = 101;
        let base_row: Vec<u64> = (0..50).map(|i| (i * 7 + 3) % p).collect();
        let rows: Vec<Vec<u64>> = (1..6u64)
            .map(|s| base_row.iter().map(|v| v * s % p).collect())
            .collect();
        assert_eq!(offer_all(p, 50, &rows), 1);
    }

    #[test]
    fn base_splitting_agrees_with_flat_elimination() {
        let p = 32003;
        let mut state = 99u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            state >> 16
        };
        // fixed rows live in coords [10, 30); curve rows anywhere in [0, 30)
        let fixed: Vec<Vec<u64>> = (0..12)
            .map(|_| (0..20).map(|_| next() % p).collect())
            .collect();
        let curve: Vec<Vec<u64>> = (0..9)
            .map(|_| (0..30).map(|_| next() % p).collect())
            .collect();

        let mut flat_rows: Vec<Vec<u64>> = fixed
            .iter()
            .map(|r| {
                let mut v = vec![0u64; 30];
                v[10..].copy_from_slice(r);
                v
            })
            .collect();
        flat_rows.extend(curve.iter().cloned());
        let expected = offer_all(p, 30, &flat_rows);

        let mut builder = Eliminator::new(p, 20);
        let mut buf = vec![0u64; 20];
        for r in &fixed {
            buf.copy_from_slice(r);
            builder.offer(&mut buf);
        }
        let ech = builder.into_echelon();
        let mut el = Eliminator::with_base(p, 30, &ech, 10);
        let mut buf = vec![0u64; 30];
        for r in &curve {
            buf.copy_from_slice(r);
            el.offer(&mut buf);
        }
        assert_eq!(el.total_rank(), expected);
    }

    #[test]
    fn cache_returns_shared_echelons() {
        let cache = RankCache::new();
        let a = cache.get_or_build((1, 2, 101), || {
            let mut el = Eliminator::new(101, 4);
            el.offer(&mut vec![1, 2, 3, 4]);
            el.into_echelon()
        });
        let b = cache.get_or_build((1, 2, 101), || panic!("must hit the cache"));
        assert_eq!(a.rank(), 1);
        assert!(Arc::ptr_eq(&a, &b));
    }
}
