#![no_std]
extern crate alloc;

use alloc::vec::Vec;
use num_bigint::BigInt;

pub fn probe() -> Vec<BigInt> {
    use num_traits::One;
    let mut v = Vec::new();
    v.push(BigInt::one());
    v
}
