//! Tensor-component view of a multivector.
//!
//! A multivector is read as
//! `f + v_μ γ^μ + ½ F_{μν} γ^μ∧γ^ν + p_μ Iγ^μ + g I`
//! with all stored components carrying lower indices. Raising uses `η`.
//! The Levi-Civita symbol is normalised as `ε^{0123} = +1`.

use std::sync::OnceLock;

use crate::blade::{BladeIndex, METRIC};
use crate::multivector::Multivector;

/// Rank-2 tensor `T[μ][ν]`.
pub type Tensor2 = [[f64; 4]; 4];

/// Levi-Civita symbol with upper indices, `ε^{0123} = +1`.
pub fn levi_civita(idx: [usize; 4]) -> f64 {
    let mut sign = 1.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            match idx[j].cmp(&idx[i]) {
                std::cmp::Ordering::Equal => return 0.0,
                std::cmp::Ordering::Less => sign = -sign,
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    sign
}

pub fn raise_vector(v: [f64; 4]) -> [f64; 4] {
    [0, 1, 2, 3].map(|mu| METRIC[mu] * v[mu])
}

/// Raising and lowering both indices are the same operation in this metric.
pub fn raise_tensor(t: &Tensor2) -> Tensor2 {
    let mut out = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            out[mu][nu] = METRIC[mu] * METRIC[nu] * t[mu][nu];
        }
    }
    out
}

/// `½ ε^{αβγδ} X_{γδ}` for a lower-index antisymmetric `X`; result has upper indices.
pub fn epsilon_contract(x_lower: &Tensor2) -> Tensor2 {
    let mut out = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            let mut s = 0.0;
            for c in 0..4 {
                for d in 0..4 {
                    s += levi_civita([a, b, c, d]) * x_lower[c][d];
                }
            }
            out[a][b] = 0.5 * s;
        }
    }
    out
}

/// Hodge dual of an antisymmetric field tensor, lower indices in and out.
/// Applying it twice gives `−F`.
pub fn dual_tensor(f_lower: &Tensor2) -> Tensor2 {
    raise_tensor(&epsilon_contract(f_lower))
}

/// Blade and sign of `Iγ^μ`: `Iγ^μ = sign · blade`.
pub fn pseudovector_blade(mu: usize) -> (BladeIndex, f64) {
    static TABLE: OnceLock<[(BladeIndex, f64); 4]> = OnceLock::new();
    TABLE.get_or_init(|| {
        [0, 1, 2, 3].map(|m| {
            let prod = Multivector::pseudoscalar() * Multivector::gamma(m);
            let b = BladeIndex::all()
                .find(|&b| prod.get(b) != 0.0)
                .expect("Iγ^μ is a single blade");
            (b, prod.get(b))
        })
    })[mu]
}

/// The sixteen real components of a multivector, all with lower indices.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct FieldComponents {
    pub f: f64,
    pub v: [f64; 4],
    pub big_f: Tensor2,
    pub p: [f64; 4],
    pub g: f64,
}

impl FieldComponents {
    pub fn from_multivector(m: &Multivector) -> Self {
        let mut c = FieldComponents {
            f: m.scalar_part(),
            g: -m.get(BladeIndex::TOP),
            ..Default::default()
        };
        for mu in 0..4 {
            c.v[mu] = m.get(BladeIndex::vector(mu));
            let (b, s) = pseudovector_blade(mu);
            c.p[mu] = s * m.get(b);
            for nu in (mu + 1)..4 {
                let x = m.get(BladeIndex::bivector(mu, nu));
                c.big_f[mu][nu] = x;
                c.big_f[nu][mu] = -x;
            }
        }
        c
    }

    pub fn to_multivector(&self) -> Multivector {
        let mut m = Multivector::zero();
        m[BladeIndex::SCALAR] = self.f;
        m[BladeIndex::TOP] = -self.g;
        for mu in 0..4 {
            m[BladeIndex::vector(mu)] = self.v[mu];
            let (b, s) = pseudovector_blade(mu);
            m[b] = s * self.p[mu];
            for nu in (mu + 1)..4 {
                m[BladeIndex::bivector(mu, nu)] = self.big_f[mu][nu];
            }
        }
        m
    }

    /// Even field from scalar, electric, magnetic and pseudoscalar parts.
    pub fn from_even(f: f64, e: [f64; 3], b: [f64; 3], g: f64) -> Self {
        // E_i = F^{i0} = F_{0i};  B_i = −½ ε^{ijk} F^{jk}, F^{jk} = F_{jk}.
        let mut big_f = [[0.0; 4]; 4];
        for i in 1..4 {
            big_f[0][i] = e[i - 1];
            big_f[i][0] = -e[i - 1];
        }
        let (b1, b2, b3) = (b[0], b[1], b[2]);
        big_f[2][3] = -b1;
        big_f[3][2] = b1;
        big_f[3][1] = -b2;
        big_f[1][3] = b2;
        big_f[1][2] = -b3;
        big_f[2][1] = b3;
        FieldComponents {
            f,
            big_f,
            g,
            ..Default::default()
        }
    }

    /// `E_i = F^{i0}`.
    pub fn electric(&self) -> [f64; 3] {
        let up = raise_tensor(&self.big_f);
        [up[1][0], up[2][0], up[3][0]]
    }

    /// `B_i = −½ ε^{ijk} F^{jk}`.
    pub fn magnetic(&self) -> [f64; 3] {
        let up = raise_tensor(&self.big_f);
        [-up[2][3], -up[3][1], -up[1][2]]
    }

    pub fn v_upper(&self) -> [f64; 4] {
        raise_vector(self.v)
    }

    pub fn p_upper(&self) -> [f64; 4] {
        raise_vector(self.p)
    }

    pub fn f_upper(&self) -> Tensor2 {
        raise_tensor(&self.big_f)
    }

    /// Dual field `𝓕^{αβ} = ½ ε^{αβγδ} F_{γδ}`, upper indices.
    pub fn dual_upper(&self) -> Tensor2 {
        epsilon_contract(&self.big_f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levi_civita_values() {
        assert_eq!(levi_civita([0, 1, 2, 3]), 1.0);
        assert_eq!(levi_civita([1, 0, 2, 3]), -1.0);
        assert_eq!(levi_civita([2, 3, 0, 1]), 1.0);
        assert_eq!(levi_civita([0, 0, 2, 3]), 0.0);
    }

    #[test]
    fn pseudovector_blades() {
        let (b0, s0) = pseudovector_blade(0);
        assert_eq!((b0.mask(), s0), (0b1110, 1.0));
        let (b2, s2) = pseudovector_blade(2);
        assert_eq!((b2.mask(), s2), (0b1011, -1.0));
    }

    #[test]
    fn round_trip_components() {
        let mut m = Multivector::zero();
        for (k, c) in m.coeffs.iter_mut().enumerate() {
            *c = 0.1 * k as f64 - 0.3;
        }
        let c = FieldComponents::from_multivector(&m);
        assert_eq!(c.to_multivector(), m);
    }

    #[test]
    fn pseudoscalar_component() {
        let c = FieldComponents::from_multivector(&(Multivector::pseudoscalar() * 2.0));
        assert_eq!(c.g, 2.0);
        let pv = Multivector::pseudoscalar() * Multivector::gamma(3) * 1.5;
        assert_eq!(FieldComponents::from_multivector(&pv).p, [0.0, 0.0, 0.0, 1.5]);
    }

    #[test]
    fn electric_magnetic_round_trip() {
        let e = [0.3, -1.1, 0.7];
        let b = [2.0, 0.4, -0.9];
        let c = FieldComponents::from_even(0.0, e, b, 0.0);
        assert_eq!(c.electric(), e);
        assert_eq!(c.magnetic(), b);
    }

    #[test]
    fn dual_of_zero() {
        assert_eq!(dual_tensor(&[[0.0; 4]; 4]), [[0.0; 4]; 4]);
    }
}
