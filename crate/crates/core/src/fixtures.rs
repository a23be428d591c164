//! Built-in reference systems.

use crate::error::Result;
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;
use crate::system::IsoSystem;

/// The (3, 2, 3) system over GF(3) used as the running example.
pub fn ex1() -> IsoSystem {
    let f = FieldSpec::prime(3).expect("3 is prime");
    IsoSystem::new(
        Matrix::from_ints(&f, &[&[0, 1, 0], &[2, 1, 0], &[2, 1, 0]]),
        Matrix::from_ints(&f, &[&[0, 0], &[0, 2], &[1, 0]]),
        Matrix::from_ints(&f, &[&[1, 1, 2]]),
        Matrix::from_ints(&f, &[&[1, 1]]),
    )
    .expect("fixture shapes")
}

/// Parity-action matrix paired with [`ex1`].
pub fn ex1_q() -> Matrix {
    let f = FieldSpec::prime(3).expect("3 is prime");
    Matrix::from_ints(&f, &[&[1, 1], &[1, 2]])
}

/// Information-action matrix paired with [`ex1`].
pub fn ex1_h() -> Matrix {
    let f = FieldSpec::prime(3).expect("3 is prime");
    Matrix::from_ints(&f, &[&[2]])
}

/// Extension degree of the big field used by [`lieb`].
pub const LIEB_DEGREE: usize = 331;

/// The (5, 3, 2) system whose `T_1 = [Ω_2 | F_1]` is superregular, built over
/// `spec` from its primitive element `a`:
///
/// ```text
/// A = (a^8 - 1)^{-1} [[a^64 - a^112, a^128 - a^240], [a^104 - a^48, a^232 - a^112]]
/// B = [[1, 0, -a^32 (a^8 + 1)], [0, 1, a^16 (a^16 + a^8 + 1)]]
/// C = [[a^8, a^16], [a^16, a^32]]
/// D = [[a, a^2, a^4], [a^2, a^4, a^8]]
/// ```
pub fn lieb_over(spec: &FieldSpec) -> Result<IsoSystem> {
    let a = spec.primitive_element().element;
    let pw = |e: i64| -> FieldElement { a.pow(e).expect("a is nonzero") };
    let one = spec.one();
    let zero = spec.zero();
    let s = (&pw(8) - &one).inv()?;
    let am = Matrix::from_rows(
        spec,
        vec![
            vec![&s * &(&pw(64) - &pw(112)), &s * &(&pw(128) - &pw(240))],
            vec![&s * &(&pw(104) - &pw(48)), &s * &(&pw(232) - &pw(112))],
        ],
    )?;
    let b02 = -(&pw(32) * &(&pw(8) + &one));
    let b12 = &pw(16) * &(&(&pw(16) + &pw(8)) + &one);
    let bm = Matrix::from_rows(
        spec,
        vec![
            vec![one.clone(), zero.clone(), b02],
            vec![zero, one, b12],
        ],
    )?;
    let cm = Matrix::from_rows(spec, vec![vec![pw(8), pw(16)], vec![pw(16), pw(32)]])?;
    let dm = Matrix::from_rows(
        spec,
        vec![vec![pw(1), pw(2), pw(4)], vec![pw(2), pw(4), pw(8)]],
    )?;
    IsoSystem::new(am, bm, cm, dm)
}

/// [`lieb_over`] in GF(2^331) with the default modulus.
pub fn lieb() -> Result<IsoSystem> {
    lieb_over(&FieldSpec::new(2, LIEB_DEGREE, None)?)
}
