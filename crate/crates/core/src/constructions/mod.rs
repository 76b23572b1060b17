//! Ingredient block designs and orthogonal arrays, Construction A, the
//! `r = w` family, and the two worked example designs.

mod blocks;
mod build;
mod oa;

pub use blocks::{block_design_verify, complete_design, sts, BlockDesign, BlockWitness};
pub use build::{construction_a, decompose_construction_a, default_oa, full_design, Constructed};
pub use oa::{full_factorial_oa, mols_oa, oa_verify, trivial_oa, OaWitness, OrthoArray};

use crate::designs::DesignArray;
use crate::error::{Error, Result};
use crate::exactmath::SchemeParams;

/// A `(2,1)-(5,3,4,1)` design with 10 rows.
pub const FIG1: [&str; 10] = ["00111", "01022", "02203", "10033", "20302", "33001", "30220", "22010", "11100", "03330"];

/// A `(2,1)-(6,4,3,3)` design with 15 rows.
pub const FIG2: [&str; 15] = [
    "001111", "010222", "011012", "022201", "022120", "100111", "102022", "202202", "201220", "220021", "220102",
    "110210", "111001", "222010", "111100",
];

/// The named example designs `fig1` and `fig2`.
pub fn fixture(name: &str) -> Result<DesignArray> {
    let (params, rows) = match name {
        "fig1" => (SchemeParams::new(5, 3, 4)?, &FIG1[..]),
        "fig2" => (SchemeParams::new(6, 4, 3)?, &FIG2[..]),
        _ => return Err(Error::InvalidParams(format!("unknown fixture {name:?}; expected fig1 or fig2"))),
    };
    let rows = rows.iter().map(|r| r.bytes().map(|b| b - b'0').collect()).collect();
    DesignArray::new(params, rows)
}

/// The 14 blocks `{a, b, c, d}` of `{0..7}` with `a ^ b ^ c ^ d = 0`, shifted
/// to `1..=8`: a Steiner quadruple system on 8 points.
pub fn sqs8() -> BlockDesign {
    let blocks = (0..8usize)
        .flat_map(|a| (a + 1..8).flat_map(move |b| (b + 1..8).map(move |c| (a, b, c))))
        .filter_map(|(a, b, c)| {
            let d = a ^ b ^ c;
            (d > c).then(|| vec![a + 1, b + 1, c + 1, d + 1])
        })
        .collect();
    BlockDesign::new(8, 4, 3, blocks).expect("valid blocks")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::verify_rs_design;

    #[test]
    fn figures_are_designs() {
        let r = verify_rs_design(&fixture("fig1").unwrap(), 2, 1).unwrap();
        assert_eq!((r.is_design, r.lambda), (true, Some(1)));
        let r = verify_rs_design(&fixture("fig2").unwrap(), 2, 1).unwrap();
        assert_eq!((r.is_design, r.lambda), (true, Some(3)));
        assert!(fixture("fig3").is_err());
    }

    #[test]
    fn sqs8_with_mols() {
        let b = sqs8();
        assert_eq!(b.len(), 14);
        assert_eq!(block_design_verify(&b), Ok(1));
        let c = construction_a(&b, &mols_oa(4).unwrap()).unwrap();
        assert_eq!((c.r, c.s, c.lambda, c.design.len()), (3, 2, 1, 126));
    }
}
