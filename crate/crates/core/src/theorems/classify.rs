//! The five cycle types and the inertia of a gain cycle.

use std::fmt;

use serde::Serialize;

use crate::combinatorics::CycleRecord;
use crate::error::{Error, Result};
use crate::graph::{Angle, Gain, GainGraph};

/// `|Re φ(C)|` at or below this classifies an odd cycle as Type E.
pub const TYPE_E_TOL: f64 = 1e-9;
/// Distance at which a float gain product counts as equal to `(-1)^(l/2)`.
pub const TYPE_A_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CycleType {
    /// Even, `φ(C) = (-1)^(l/2)`.
    A,
    /// Even, `φ(C) != (-1)^(l/2)`.
    B,
    /// Odd, `Re((-1)^((l-1)/2) φ(C)) > 0`.
    C,
    /// Odd, `Re((-1)^((l-1)/2) φ(C)) < 0`.
    D,
    /// Odd, `Re φ(C) = 0`.
    E,
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl CycleType {
    pub fn requires_even_length(self) -> bool {
        matches!(self, CycleType::A | CycleType::B)
    }
}

fn is_imaginary_axis(angle: Angle) -> bool {
    angle == Angle::QUARTER || angle == Angle::THREE_QUARTERS
}

/// Type of a cycle of length `l` with gain product `gain`; exact whenever the
/// gain carries a rational angle.
pub fn classify_gain(l: usize, gain: &Gain) -> CycleType {
    if l.is_multiple_of(2) {
        let target = Gain::sign_power(l / 2);
        if gain.approx_eq(&target, TYPE_A_TOL) {
            CycleType::A
        } else {
            CycleType::B
        }
    } else {
        let zero = match gain.exact_angle() {
            Some(a) => is_imaginary_axis(a),
            None => gain.re().abs() <= TYPE_E_TOL,
        };
        if zero {
            return CycleType::E;
        }
        let twisted = if ((l - 1) / 2).is_multiple_of(2) { gain.re() } else { -gain.re() };
        if twisted > 0.0 {
            CycleType::C
        } else {
            CycleType::D
        }
    }
}

/// Type of `cycle`, after checking it is a simple cycle of `g`.
pub fn classify_cycle(g: &GainGraph, cycle: &CycleRecord) -> Result<CycleType> {
    let fresh = CycleRecord::new(g, &cycle.vertices)?;
    if fresh.length != cycle.length {
        return Err(Error::NotACycle(cycle.vertices.clone()));
    }
    Ok(classify_gain(fresh.length, &fresh.gain_product))
}

/// `(p⁺, n⁻)` of a gain cycle of length `l` and type `t`.
pub fn cycle_inertia_formula(l: usize, t: CycleType) -> Result<(usize, usize)> {
    if l < 3 {
        return Err(Error::Precondition(format!("cycle length {l} < 3")));
    }
    if t.requires_even_length() != l.is_multiple_of(2) {
        return Err(Error::Precondition(format!("type {t} is incompatible with length {l}")));
    }
    Ok(match t {
        CycleType::A => ((l - 2) / 2, (l - 2) / 2),
        CycleType::B => (l / 2, l / 2),
        CycleType::C => (l.div_ceil(2), (l - 1) / 2),
        CycleType::D => ((l - 1) / 2, l.div_ceil(2)),
        CycleType::E => ((l - 1) / 2, (l - 1) / 2),
    })
}

/// For a signed even cycle (gain product `sign`), reports whether it is of
/// Type A and checks that this agrees with the signed-graph rule
/// `(l ≡ 0 mod 4 and sign = +1) or (l ≡ 2 mod 4 and sign = -1)`.
pub fn signed_specialization_check(l: usize, sign: i8) -> Result<bool> {
    if l < 4 || l % 2 == 1 {
        return Err(Error::Precondition(format!("signed specialization needs an even length >= 4, got {l}")));
    }
    let edge_sign = match sign {
        1 => Gain::ONE,
        -1 => Gain::MINUS_ONE,
        _ => return Err(Error::Precondition(format!("sign must be +1 or -1, got {sign}"))),
    };
    let mut edges: Vec<_> = (1..l).map(|i| (i - 1, i, Gain::ONE)).collect();
    edges.push((l - 1, 0, edge_sign));
    let g = GainGraph::new(l, edges)?;
    let seq: Vec<usize> = (0..l).collect();
    let record = CycleRecord::new(&g, &seq)?;
    let type_a = classify_cycle(&g, &record)? == CycleType::A;
    let rule = (l.is_multiple_of(4) && sign == 1) || (l % 4 == 2 && sign == -1);
    if type_a != rule {
        return Err(Error::TheoremViolation(format!(
            "signed cycle of length {l} with sign {sign}: Type A = {type_a}, signed rule = {rule}"
        )));
    }
    Ok(type_a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(l: usize, gain: Gain) -> (GainGraph, CycleRecord) {
        let mut edges: Vec<_> = (1..l).map(|i| (i - 1, i, Gain::ONE)).collect();
        edges.push((l - 1, 0, gain));
        let g = GainGraph::new(l, edges).unwrap();
        let seq: Vec<usize> = (0..l).collect();
        let r = CycleRecord::new(&g, &seq).unwrap();
        (g, r)
    }

    #[test]
    fn type_table_examples() {
        let (g, c) = cycle(4, Gain::ONE);
        assert_eq!(classify_cycle(&g, &c).unwrap(), CycleType::A);
        let (g, c) = cycle(3, Gain::ONE);
        assert_eq!(classify_cycle(&g, &c).unwrap(), CycleType::D);
        let (g, c) = cycle(3, Gain::I);
        assert_eq!(classify_cycle(&g, &c).unwrap(), CycleType::E);
        let (g, c) = cycle(5, Gain::ONE);
        assert_eq!(classify_cycle(&g, &c).unwrap(), CycleType::C);
        let (g, c) = cycle(6, Gain::ONE);
        assert_eq!(classify_cycle(&g, &c).unwrap(), CycleType::B);
        let (g, c) = cycle(6, Gain::MINUS_ONE);
        assert_eq!(classify_cycle(&g, &c).unwrap(), CycleType::A);
    }

    #[test]
    fn float_gains_use_tolerance_band() {
        assert_eq!(classify_gain(3, &Gain::from_radians(std::f64::consts::FRAC_PI_2)), CycleType::E);
        assert_eq!(classify_gain(3, &Gain::from_radians(std::f64::consts::FRAC_PI_2 - 1e-6)), CycleType::D);
        assert_eq!(classify_gain(4, &Gain::from_radians(1e-12)), CycleType::A);
        assert_eq!(classify_gain(4, &Gain::from_radians(1e-6)), CycleType::B);
    }

    #[test]
    fn orientation_invariant() {
        for p in 0..8 {
            let gain = Gain::root_of_unity(p, 8).unwrap();
            for l in 3..=8 {
                let (g, c) = cycle(l, gain);
                let reversed = CycleRecord::new(&g, &c.reversed_sequence()).unwrap();
                // `new` canonicalizes, so compare classifications of both raw products.
                let fwd = classify_gain(l, &crate::combinatorics::oriented_gain_product(&g, &c.vertices).unwrap());
                let back = classify_gain(l, &crate::combinatorics::oriented_gain_product(&g, &c.reversed_sequence()).unwrap());
                assert_eq!(fwd, back);
                assert_eq!(classify_cycle(&g, &reversed).unwrap(), fwd);
            }
        }
    }

    #[test]
    fn rejects_foreign_cycles() {
        let (g, _) = cycle(4, Gain::ONE);
        let bogus = CycleRecord {
            vertices: vec![0, 2, 1, 3],
            length: 4,
            gain_product: Gain::ONE,
            real_part: 1.0,
        };
        assert!(matches!(classify_cycle(&g, &bogus), Err(Error::NotACycle(_))));
    }

    #[test]
    fn inertia_rows() {
        assert_eq!(cycle_inertia_formula(4, CycleType::A).unwrap(), (1, 1));
        assert_eq!(cycle_inertia_formula(5, CycleType::C).unwrap(), (3, 2));
        assert_eq!(cycle_inertia_formula(3, CycleType::E).unwrap(), (1, 1));
        assert_eq!(cycle_inertia_formula(3, CycleType::D).unwrap(), (1, 2));
        assert_eq!(cycle_inertia_formula(6, CycleType::B).unwrap(), (3, 3));
        assert!(cycle_inertia_formula(4, CycleType::C).is_err());
        assert!(cycle_inertia_formula(5, CycleType::A).is_err());
    }

    #[test]
    fn signed_rule() {
        assert!(signed_specialization_check(4, 1).unwrap());
        assert!(signed_specialization_check(6, -1).unwrap());
        assert!(!signed_specialization_check(4, -1).unwrap());
        assert!(!signed_specialization_check(6, 1).unwrap());
        assert!(signed_specialization_check(5, 1).is_err());
        assert!(signed_specialization_check(4, 0).is_err());
    }
}
