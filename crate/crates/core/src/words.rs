//! One-dimensional machinery: rotations, Lyndon and aperiodicity tests,
//! the Möbius function, the necklace polynomial and de Bruijn sequences.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::euler::eulerian_cycle;

/// An ordered alphabet of size `k`; its letters are canonically the
/// integers `0..k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alphabet {
    size: usize,
}

/// Character ramp used whenever symbols are rendered as text: digits,
/// upper-case letters, lower-case letters, in that order.
pub const SYMBOL_RAMP: &[u8; 62] = b"0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidArgument("alphabet size must be >= 1".into()));
        }
        Ok(Alphabet { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, symbol: u8) -> bool {
        (symbol as usize) < self.size
    }

    /// Text rendering of a symbol; only alphabets up to size 62 render.
    pub fn symbol_char(symbol: u8) -> Option<char> {
        SYMBOL_RAMP.get(symbol as usize).map(|&b| b as char)
    }

    /// Inverse of [`Alphabet::symbol_char`].
    pub fn symbol_value(ch: char) -> Option<u8> {
        SYMBOL_RAMP
            .iter()
            .position(|&b| b as char == ch)
            .map(|p| p as u8)
    }
}

/// A nonempty sequence of letters over an [`Alphabet`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    letters: Vec<u8>,
    alphabet: Alphabet,
}

impl Word {
    pub fn new(letters: Vec<u8>, alphabet: Alphabet) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidArgument("word must be nonempty".into()));
        }
        if let Some(&bad) = letters.iter().find(|&&l| !alphabet.contains(l)) {
            return Err(Error::InvalidArgument(format!(
                "letter {bad} out of range for alphabet of size {}",
                alphabet.size()
            )));
        }
        Ok(Word { letters, alphabet })
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    fn rotated(&self, offset: usize) -> Vec<u8> {
        let m = self.letters.len();
        (0..m).map(|i| self.letters[(i + offset) % m]).collect()
    }

    /// The lexicographically smallest rotation. Among equal minimal
    /// rotations (periodic words) the one with the smallest offset wins.
    pub fn lexmin_rotation(&self) -> Word {
        let mut best = self.letters.clone();
        for offset in 1..self.letters.len() {
            let cand = self.rotated(offset);
            if cand < best {
                best = cand;
            }
        }
        Word {
            letters: best,
            alphabet: self.alphabet,
        }
    }

    /// True iff the word is strictly smaller than each of its nontrivial
    /// rotations.
    pub fn is_lyndon(&self) -> bool {
        (1..self.letters.len()).all(|offset| self.letters[..] < self.rotated(offset)[..])
    }

    /// True iff all rotations of the word are pairwise distinct.
    pub fn is_aperiodic(&self) -> bool {
        // Equivalent to lexmin being Lyndon: any repeated rotation implies a
        // proper period, which already shows up as some rotation equal to
        // the word itself.
        (1..self.letters.len()).all(|offset| self.rotated(offset) != self.letters)
    }
}

/// Classic Möbius function.
pub fn mobius(n: u64) -> i32 {
    assert!(n >= 1, "mobius defined for n >= 1");
    let mut n = n;
    let mut result = 1i32;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            small.push(d);
            if d != m / d {
                large.push(m / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Necklace polynomial `M(k, m)`: the number of Lyndon words of length `m`
/// over `k` letters, computed exactly. See [`necklace_poly_big`] for bases
/// beyond `u64`.
pub fn necklace_poly(k: u64, m: u64) -> BigUint {
    necklace_poly_big(&BigUint::from(k), m)
}

/// Necklace polynomial with an arbitrary-precision base.
pub fn necklace_poly_big(k: &BigUint, m: u64) -> BigUint {
    assert!(m >= 1, "necklace polynomial defined for m >= 1");
    let k_int = BigInt::from(k.clone());
    let mut sum = BigInt::zero();
    for d in divisors(m) {
        let mu = mobius(m / d);
        if mu == 0 {
            continue;
        }
        let term = k_int.pow(d as u32);
        if mu > 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (q, r) = sum.div_rem(&BigInt::from(m));
    debug_assert!(r.is_zero(), "necklace polynomial sum must divide by m");
    debug_assert!(!q.is_negative());
    q.to_biguint().expect("necklace polynomial is nonnegative")
}

/// Guarded enumeration limit for brute-force oracles.
const ENUMERATION_GUARD: u64 = 10_000_000;

/// Counts Lyndon words of length `m` over `k` letters by enumerating all
/// `k^m` words. Serves as an independent oracle for [`necklace_poly`].
pub fn count_lyndon_brute(k: u64, m: u64) -> Result<u64> {
    let total = k
        .checked_pow(m.try_into().unwrap_or(u32::MAX))
        .filter(|&t| t <= ENUMERATION_GUARD);
    if total.is_none() {
        return Err(Error::BudgetExceeded(format!(
            "k^m = {k}^{m} exceeds the enumeration guard {ENUMERATION_GUARD}"
        )));
    }
    let alphabet = Alphabet::new(k as usize)?;
    let m = m as usize;
    let mut letters = vec![0u8; m];
    let mut count = 0u64;
    loop {
        let word = Word::new(letters.clone(), alphabet)?;
        if word.is_lyndon() {
            count += 1;
        }
        if !crate::patterns2d::increment_radix(&mut letters, k as usize) {
            return Ok(count);
        }
    }
}

/// A cyclic sequence of length `k^n` in which every length-`n` word over
/// `k` letters occurs exactly once, built from an Eulerian cycle of the
/// de Bruijn digraph on `(n-1)`-words. Deterministic: the walk always
/// takes the smallest unused letter.
pub fn debruijn_sequence(k: usize, n: u32) -> Result<Word> {
    if k < 2 {
        return Err(Error::InvalidArgument("need alphabet size k >= 2".into()));
    }
    if n < 1 {
        return Err(Error::InvalidArgument("need window length n >= 1".into()));
    }
    let num_vertices = k
        .checked_pow(n - 1)
        .ok_or_else(|| Error::BudgetExceeded("k^(n-1) overflows usize".into()))?;
    let num_edges = num_vertices
        .checked_mul(k)
        .ok_or_else(|| Error::BudgetExceeded("k^n overflows usize".into()))?;

    // Vertex v encodes an (n-1)-word in radix k; appending letter c moves to
    // the word dropping the leading letter.
    let mut edges = Vec::with_capacity(num_edges);
    let mut adj = Vec::with_capacity(num_vertices);
    for v in 0..num_vertices {
        let mut out = Vec::with_capacity(k);
        for c in 0..k {
            let to = (v * k + c) % num_vertices;
            out.push(edges.len());
            edges.push((v, to));
        }
        adj.push(out);
    }

    let cycle = eulerian_cycle(&edges, &adj, 0)
        .ok_or_else(|| Error::Internal("de Bruijn digraph walk failed".into()))?;
    let letters: Vec<u8> = cycle.iter().map(|&e| (e % k) as u8).collect();
    Word::new(letters, Alphabet::new(k)?)
}

/// Collects the distinct cyclic windows of length `n`; test oracle for
/// de Bruijn sequences.
pub fn distinct_cyclic_windows(word: &Word, n: usize) -> usize {
    let letters = word.letters();
    let len = letters.len();
    let mut seen = std::collections::HashSet::new();
    for start in 0..len {
        let window: Vec<u8> = (0..n).map(|i| letters[(start + i) % len]).collect();
        seen.insert(window);
    }
    seen.len()
}
