//! Field specs shipped with the crate.

use crate::error::Result;
use crate::fieldspec::FunctionFieldSpec;

/// Where a bundled spec's numbers come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// `F_q(T)`.
    Rational,
    /// The curve `y^2 = x^3 + a x + b` over `F_p`; `h` is its point count.
    Elliptic { p: u64, a: u64, b: u64 },
    /// Consistent made-up values, not taken from an actual curve.
    Synthetic,
}

#[derive(Clone, Copy, Debug)]
pub struct BundledSpec {
    pub name: &'static str,
    pub origin: Origin,
    pub json: &'static str,
}

impl BundledSpec {
    pub fn spec(&self) -> Result<FunctionFieldSpec> {
        FunctionFieldSpec::from_json(self.json)
    }
}

pub const BUNDLED: &[BundledSpec] = &[
    BundledSpec {
        name: "g0_q2",
        origin: Origin::Rational,
        json: include_str!("../specs/g0_q2.json"),
    },
    BundledSpec {
        name: "g0_q3",
        origin: Origin::Rational,
        json: include_str!("../specs/g0_q3.json"),
    },
    BundledSpec {
        name: "g0_q4",
        origin: Origin::Rational,
        json: include_str!("../specs/g0_q4.json"),
    },
    BundledSpec {
        name: "g0_q5",
        origin: Origin::Rational,
        json: include_str!("../specs/g0_q5.json"),
    },
    BundledSpec {
        name: "e5",
        origin: Origin::Elliptic { p: 5, a: 1, b: 0 },
        json: include_str!("../specs/e5.json"),
    },
    BundledSpec {
        name: "e5_a0b1",
        origin: Origin::Elliptic { p: 5, a: 0, b: 1 },
        json: include_str!("../specs/e5_a0b1.json"),
    },
    BundledSpec {
        name: "e7",
        origin: Origin::Elliptic { p: 7, a: 1, b: 0 },
        json: include_str!("../specs/e7.json"),
    },
    BundledSpec {
        name: "e7_a0b1",
        origin: Origin::Elliptic { p: 7, a: 0, b: 1 },
        json: include_str!("../specs/e7_a0b1.json"),
    },
    BundledSpec {
        name: "g2_synthetic",
        origin: Origin::Synthetic,
        json: include_str!("../specs/g2_synthetic.json"),
    },
];

/// `1 - 2t + 5t^2`, the L-polynomial of `y^2 = x^3 + x` over `F_5`.
pub const E5_LPOLY: &str = include_str!("../specs/e5_lpoly.json");

pub fn bundled(name: &str) -> Option<&'static BundledSpec> {
    BUNDLED.iter().find(|b| b.name == name)
}

/// Bundled specs of positive genus.
pub fn positive_genus() -> impl Iterator<Item = &'static BundledSpec> {
    BUNDLED.iter().filter(|b| b.origin != Origin::Rational)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::elliptic_point_count;

    #[test]
    fn all_parse() {
        for b in BUNDLED {
            b.spec().unwrap_or_else(|e| panic!("{}: {e}", b.name));
        }
    }

    #[test]
    fn elliptic_class_numbers_are_point_counts() {
        for b in BUNDLED {
            if let Origin::Elliptic { p, a, b: c } = b.origin {
                let spec = b.spec().unwrap();
                assert_eq!(spec.q(), p);
                assert_eq!(spec.genus(), 1);
                assert_eq!(spec.class_number(), elliptic_point_count(p, a, c).unwrap(), "{}", b.name);
            }
        }
    }

    #[test]
    fn l_polynomial_file_matches_e5() {
        let from_l = FunctionFieldSpec::from_json(E5_LPOLY).unwrap();
        assert_eq!(from_l, bundled("e5").unwrap().spec().unwrap());
    }
}
