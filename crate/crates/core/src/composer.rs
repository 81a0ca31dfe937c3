//! Composition of sub-perfect maps over product alphabets: plain stacking,
//! rotated-ring stacking, coprimality trimming and closed-form sizes for
//! square maps.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::cyclic_map::CyclicMap;
use crate::error::{Budget, Error, Result};
use crate::ring_builder::{build_ring, trim_ring};
use crate::words::necklace_poly_big;

/// Parameters of a two-ring composition over the product alphabet
/// `k1 * k2`, including the trim counts that make the stacked dimensions
/// coprime.
///
/// `ring1` is the `(m, n)` ring over `k1` (width `M(k1^n, m)`, trimmed by
/// `ring1_trim` columns); `ring2` is the `(n, m)` ring over `k2` (width
/// `M(k2^m, n)`, trimmed by `ring2_trim` columns, then rotated a quarter
/// turn). The final map is `height x width`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionSpec {
    pub m: usize,
    pub n: usize,
    pub k1: usize,
    pub k2: usize,
    /// `M(k2^m, n) mod m`.
    #[serde(rename = "m_prime")]
    pub ring2_rem: usize,
    /// Columns removed from the second ring.
    #[serde(rename = "m_dprime")]
    pub ring2_trim: usize,
    /// `M(k1^n, m) mod n`.
    #[serde(rename = "n_prime")]
    pub ring1_rem: usize,
    /// Columns removed from the first ring.
    #[serde(rename = "n_dprime")]
    pub ring1_trim: usize,
    #[serde(rename = "M")]
    pub height: usize,
    #[serde(rename = "N")]
    pub width: usize,
}

impl CompositionSpec {
    pub fn product_alphabet(&self) -> usize {
        self.k1 * self.k2
    }

    /// Width of the first layer after trimming.
    pub fn layer1_width(&self) -> usize {
        self.width / self.n
    }

    /// Height of the second layer after trimming and rotation.
    pub fn layer2_height(&self) -> usize {
        self.height / self.m
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad sidecar: {e}")))
    }
}

/// A composed map together with its two layers and the parameters that
/// produced it. Cells pair as `layer1 * k2 + layer2`.
#[derive(Debug, Clone)]
pub struct ProductMap {
    pub map: CyclicMap,
    /// `(m, N1)` map over `k1`.
    pub layer1: CyclicMap,
    /// `(M2, n)` map over `k2` (already rotated).
    pub layer2: CyclicMap,
    pub spec: CompositionSpec,
}

/// Stacks two maps with equal window shapes onto the product alphabet.
/// The result has shape `(lcm(M1, M2), lcm(N1, N2))` and cells
/// `A1(r, c) * k2 + A2(r, c)` with each factor read toroidally.
pub fn compose_product(a1: &CyclicMap, a2: &CyclicMap) -> Result<CyclicMap> {
    if a1.window() != a2.window() {
        return Err(Error::InvalidArgument(format!(
            "window shapes differ: {:?} vs {:?}",
            a1.window(),
            a2.window()
        )));
    }
    let k1 = a1.alphabet_size();
    let k2 = a2.alphabet_size();
    let k = k1
        .checked_mul(k2)
        .filter(|&k| k <= 256)
        .ok_or_else(|| {
            Error::InvalidArgument("product alphabet exceeds 256 symbols".into())
        })?;
    let height = a1.height().lcm(&a2.height());
    let width = a1.width().lcm(&a2.width());
    let mut cells = Vec::with_capacity(height * width);
    for r in 0..height {
        for c in 0..width {
            cells.push(a1.at(r, c) * k2 as u8 + a2.at(r, c));
        }
    }
    CyclicMap::new(height, width, cells, k, a1.window())
}

/// Quarter-turn rotation: a map of shape `(M, N)` becomes one of shape
/// `(N, M)` with `out(r, c) = in(c, N-1-r)`; the claimed window shape
/// transposes. Applying the rotation four times is the identity.
pub fn rotate90(a: &CyclicMap) -> CyclicMap {
    let (h, w) = (a.height(), a.width());
    let mut cells = Vec::with_capacity(h * w);
    for r in 0..w {
        for c in 0..h {
            cells.push(a.at(c, w - 1 - r));
        }
    }
    let (wm, wn) = a.window();
    CyclicMap::new(w, h, cells, a.alphabet_size(), (wn, wm)).expect("rotation preserves validity")
}

fn width_as_u64(w: &BigUint, what: &str) -> Result<u64> {
    u64::try_from(w).map_err(|_| {
        Error::BudgetExceeded(format!("{what} = {w} does not fit in 64 bits"))
    })
}

/// Trim count making `width - trim` coprime to `period`: zero when the
/// remainder is already 1 or `period - 1`, otherwise `|remainder - 1|`.
fn coprime_trim(width: u64, period: u64) -> (u64, u64) {
    let rem = width % period;
    let trim = if rem < period - 1 {
        rem.abs_diff(1)
    } else {
        0
    };
    (rem, trim)
}

/// Plans the trimmed composition for window shape `(m, n)` over factor
/// alphabets `k1`, `k2`. Errors when a required trim exceeds what a ring
/// of the available height supports.
pub fn plan_composition(m: usize, n: usize, k1: usize, k2: usize) -> Result<CompositionSpec> {
    plan(m, n, k1, k2, true)
}

/// Plain stacking without the coprimality trims; dimensions are the lcms.
pub fn plan_composition_untrimmed(
    m: usize,
    n: usize,
    k1: usize,
    k2: usize,
) -> Result<CompositionSpec> {
    plan(m, n, k1, k2, false)
}

fn plan(m: usize, n: usize, k1: usize, k2: usize, trim: bool) -> Result<CompositionSpec> {
    if m < 2 || n < 2 || k1 < 2 || k2 < 2 {
        return Err(Error::InvalidArgument(
            "composition needs m, n, k1, k2 >= 2".into(),
        ));
    }
    let w1 = width_as_u64(
        &necklace_poly_big(&BigUint::from(k1).pow(n as u32), m as u64),
        "M(k1^n, m)",
    )?;
    let w2 = width_as_u64(
        &necklace_poly_big(&BigUint::from(k2).pow(m as u32), n as u64),
        "M(k2^m, n)",
    )?;
    let (ring2_rem, ring2_trim) = coprime_trim(w2, m as u64);
    let (ring1_rem, ring1_trim) = coprime_trim(w1, n as u64);
    let (ring1_trim, ring2_trim) = if trim {
        if ring2_trim > n as u64 - 1 {
            return Err(Error::InvalidArgument(format!(
                "infeasible trim: removing {ring2_trim} columns from the height-{n} ring \
                 exceeds the bound {}",
                n - 1
            )));
        }
        if ring1_trim > m as u64 - 1 {
            return Err(Error::InvalidArgument(format!(
                "infeasible trim: removing {ring1_trim} columns from the height-{m} ring \
                 exceeds the bound {}",
                m - 1
            )));
        }
        (ring1_trim, ring2_trim)
    } else {
        (0, 0)
    };

    let layer2_height = w2 - ring2_trim;
    let layer1_width = w1 - ring1_trim;
    if trim {
        debug_assert_eq!((m as u64).gcd(&layer2_height), 1);
        debug_assert_eq!((n as u64).gcd(&layer1_width), 1);
    }
    let height = (m as u64)
        .checked_mul(layer2_height / (m as u64).gcd(&layer2_height))
        .ok_or_else(|| Error::BudgetExceeded("map height overflows".into()))?;
    let width = (n as u64)
        .checked_mul(layer1_width / (n as u64).gcd(&layer1_width))
        .ok_or_else(|| Error::BudgetExceeded("map width overflows".into()))?;

    Ok(CompositionSpec {
        m,
        n,
        k1,
        k2,
        ring2_rem: ring2_rem as usize,
        ring2_trim: ring2_trim as usize,
        ring1_rem: ring1_rem as usize,
        ring1_trim: ring1_trim as usize,
        height: usize::try_from(height)
            .map_err(|_| Error::BudgetExceeded("map height exceeds usize".into()))?,
        width: usize::try_from(width)
            .map_err(|_| Error::BudgetExceeded("map width exceeds usize".into()))?,
    })
}

/// Builds the composed map: the `(m, n)` ring over `k1` trimmed by
/// `ring1_trim`, the `(n, m)` ring over `k2` trimmed by `ring2_trim` and
/// rotated a quarter turn, stacked onto the product alphabet.
pub fn build_almost_perfect(spec: &CompositionSpec, budget: &Budget) -> Result<ProductMap> {
    let ring1 = build_ring(spec.m, spec.n, spec.k1, budget)?;
    let layer1 = trim_ring(&ring1, spec.ring1_trim)?;
    let ring2 = build_ring(spec.n, spec.m, spec.k2, budget)?;
    let layer2 = rotate90(&trim_ring(&ring2, spec.ring2_trim)?);
    let map = compose_product(&layer1, &layer2)?;
    if (map.height(), map.width()) != (spec.height, spec.width) {
        return Err(Error::Internal(format!(
            "composed dimensions ({}, {}) differ from planned ({}, {})",
            map.height(),
            map.width(),
            spec.height,
            spec.width
        )));
    }
    Ok(ProductMap {
        map,
        layer1,
        layer2,
        spec: spec.clone(),
    })
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Side length of the square `(p, p)` map over alphabet `k^2` for prime
/// `p`: exactly `k^(p^2) - k^p - p`. Also checks the divisibility
/// `p^2 | k^(p^2) - k^p` underlying the construction and the agreement
/// with `p * (M(k^p, p) - 1)`.
pub fn prime_square_size(k: u64, p: u64) -> Result<BigUint> {
    if k < 2 {
        return Err(Error::InvalidArgument("need k >= 2".into()));
    }
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let pow_p2 = BigUint::from(k).pow((p * p) as u32);
    let pow_p = BigUint::from(k).pow(p as u32);
    let difference = &pow_p2 - &pow_p;
    if &difference % BigUint::from(p * p) != BigUint::from(0u32) {
        return Err(Error::Internal(format!(
            "p^2 does not divide k^(p^2) - k^p for k={k}, p={p}"
        )));
    }
    let side = &difference - BigUint::from(p);
    let via_necklace =
        (necklace_poly_big(&pow_p, p) - BigUint::one()) * BigUint::from(p);
    if side != via_necklace {
        return Err(Error::Internal(
            "closed form disagrees with p * (M(k^p, p) - 1)".into(),
        ));
    }
    Ok(side)
}

/// Side length of the square `(n, n)` map over alphabet `k^2` for general
/// `n >= 2`: `n * (M(k^n, n) - trim)` with the coprimality trim.
pub fn square_map_size(k: u64, n: u64) -> Result<BigUint> {
    if k < 2 || n < 2 {
        return Err(Error::InvalidArgument("need k >= 2 and n >= 2".into()));
    }
    let w = necklace_poly_big(&BigUint::from(k).pow(n as u32), n);
    let rem = u64::try_from(&w % n).expect("remainder below n");
    let trim = if rem < n - 1 { rem.abs_diff(1) } else { 0 };
    Ok((w - trim) * n)
}

/// Finite coverage floor from the trimmed composition: the product of the
/// per-layer terms `(k^(mn) - k^((floor(h/2)+1) * other) - h^2 + 3h) / k^(mn)`.
/// The composed coverage `M * N / k^(mn)` always exceeds it.
pub fn coverage_floor(m: u64, n: u64, k1: u64, k2: u64) -> BigRational {
    let term = |k: u64, h: u64, other: u64| -> BigRational {
        let den = num_bigint::BigInt::from(k).pow((m * n) as u32);
        let num = num_bigint::BigInt::from(k).pow((m * n) as u32)
            - num_bigint::BigInt::from(k).pow(((h / 2 + 1) * other) as u32)
            - num_bigint::BigInt::from(h * h)
            + num_bigint::BigInt::from(3 * h);
        BigRational::new(num, den)
    };
    term(k2, m, n) * term(k1, n, m)
}
