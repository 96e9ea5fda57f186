//! Basis blades of Cl(1,3) and their multiplication table.
//!
//! A blade is encoded as a 4-bit mask: bit `k` set means the upper-index basis
//! vector `γ^k` is a factor. Factors are always written in ascending index
//! order, so mask `0b0110` is the blade `γ^1 γ^2`.

use std::fmt;
use std::sync::OnceLock;

/// Diagonal of the metric `η^{μν}`, signature (+, −, −, −).
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Number of basis blades.
pub const BLADE_COUNT: usize = 16;

/// A basis blade, as a bit set over `{γ^0, γ^1, γ^2, γ^3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BladeIndex(u8);

impl BladeIndex {
    pub const SCALAR: BladeIndex = BladeIndex(0);
    /// The mask-1111 blade `γ^0γ^1γ^2γ^3`. The pseudoscalar `I` is its negative.
    pub const TOP: BladeIndex = BladeIndex(0b1111);

    /// Returns `None` if `mask > 15`.
    pub fn new(mask: u8) -> Option<Self> {
        (mask < 16).then_some(BladeIndex(mask))
    }

    /// The blade `γ^mu`.
    pub fn vector(mu: usize) -> Self {
        assert!(mu < 4, "vector index {mu} out of range");
        BladeIndex(1 << mu)
    }

    /// The blade `γ^a γ^b` for `a < b`.
    pub fn bivector(a: usize, b: usize) -> Self {
        assert!(a < b && b < 4, "bivector indices must satisfy a < b < 4");
        BladeIndex((1 << a) | (1 << b))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Vector indices present, ascending.
    pub fn factors(self) -> impl Iterator<Item = usize> {
        (0..4).filter(move |k| self.0 & (1 << k) != 0)
    }

    /// Sign picked up by reversing the factor order: `(−1)^{k(k−1)/2}`.
    pub fn reverse_sign(self) -> f64 {
        let k = self.grade();
        if (k * (k.saturating_sub(1)) / 2) % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn all() -> impl Iterator<Item = BladeIndex> {
        (0..16u8).map(BladeIndex)
    }

    /// ASCII name, e.g. `1`, `g0`, `g12`, `g0123`.
    pub fn name(self) -> String {
        if self.0 == 0 {
            return "1".to_string();
        }
        let mut s = String::from("g");
        for k in self.factors() {
            s.push(char::from(b'0' + k as u8));
        }
        s
    }
}

impl fmt::Display for BladeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Sign of the product of two canonical blades, computed by counting the
/// transpositions needed to sort the concatenated factor list and applying
/// `η^{kk}` for each repeated factor.
pub fn product_sign(a: BladeIndex, b: BladeIndex) -> f64 {
    let (a, b) = (a.0, b.0);
    let mut swaps = 0u32;
    let mut rest = a >> 1;
    while rest != 0 {
        swaps += (rest & b).count_ones();
        rest >>= 1;
    }
    let mut sign = if swaps % 2 == 0 { 1.0 } else { -1.0 };
    let common = a & b;
    for (k, eta) in METRIC.iter().enumerate() {
        if common & (1 << k) != 0 {
            sign *= eta;
        }
    }
    sign
}

/// Full 16×16 table of basis-product signs. The product of blades `a` and `b`
/// is `sign[a][b] · blade(a xor b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BladeTable {
    sign: [[f64; BLADE_COUNT]; BLADE_COUNT],
}

impl BladeTable {
    pub fn build() -> Self {
        let mut sign = [[0.0; BLADE_COUNT]; BLADE_COUNT];
        for a in BladeIndex::all() {
            for b in BladeIndex::all() {
                sign[a.index()][b.index()] = product_sign(a, b);
            }
        }
        BladeTable { sign }
    }

    /// The shared table used by every `Multivector` product.
    pub fn canonical() -> &'static BladeTable {
        static TABLE: OnceLock<BladeTable> = OnceLock::new();
        TABLE.get_or_init(BladeTable::build)
    }

    /// Copy of this table with one entry negated. Used to check that the
    /// verification suite notices a corrupted table.
    pub fn with_flipped_sign(&self, a: BladeIndex, b: BladeIndex) -> Self {
        let mut t = self.clone();
        t.sign[a.index()][b.index()] = -t.sign[a.index()][b.index()];
        t
    }

    #[inline]
    pub fn sign(&self, a: BladeIndex, b: BladeIndex) -> f64 {
        self.sign[a.index()][b.index()]
    }

    #[inline]
    pub(crate) fn sign_raw(&self, a: usize, b: usize) -> f64 {
        self.sign[a][b]
    }
}
