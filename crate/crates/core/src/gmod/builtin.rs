//! Named F4[Q8]-modules.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::FiniteField;
use crate::groups::FiniteGroup;
use crate::linalg::Matrix;

use super::{algebra, syzygy, AlgebraElement, GModule};

pub const BUILTIN_MODULES: [&str; 10] = [
    "k",
    "regular",
    "W3",
    "W5",
    "Mprime",
    "Mdoubleprime",
    "Jprime",
    "Jdoubleprime",
    "Lprime",
    "Ldoubleprime",
];

fn q8() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::q8())
}

/// X = w i + w^2 j + k.
pub fn x_element() -> AlgebraElement {
    let f4 = FiniteField::f4();
    let w = f4.omega().expect("F4 has w");
    algebra::from_terms(
        f4,
        &FiniteGroup::q8(),
        &[(w, "i"), (w * w, "j"), (f4.one(), "k")],
    )
    .expect("names exist")
}

/// Y = w^2 i + w j + k.
pub fn y_element() -> AlgebraElement {
    let f4 = FiniteField::f4();
    let w = f4.omega().expect("F4 has w");
    algebra::from_terms(
        f4,
        &FiniteGroup::q8(),
        &[(w * w, "i"), (w, "j"), (f4.one(), "k")],
    )
    .expect("names exist")
}

/// Product of a word in X and Y, e.g. "XYX"; the empty word is 1.
pub fn xy_word(word: &str) -> AlgebraElement {
    let f4 = FiniteField::f4();
    let g = FiniteGroup::q8();
    let (x, y) = (x_element(), y_element());
    word.chars().fold(algebra::one(f4, &g), |acc, c| {
        let factor = if c == 'X' { &x } else { &y };
        algebra::mul(&g, &acc, factor)
    })
}

/// The eight words 1, X, Y, YX, XY, XYX, YXY, XYXY.
pub const XY_BASIS_WORDS: [&str; 8] = ["", "X", "Y", "YX", "XY", "XYX", "YXY", "XYXY"];

fn quotient_by_span(words: &[&str]) -> Result<GModule> {
    let f4 = FiniteField::f4();
    let reg = GModule::regular(f4, q8());
    let cols: Vec<Matrix> = words
        .iter()
        .map(|w| Matrix::column_vector(f4, &xy_word(w)))
        .collect();
    let refs: Vec<&Matrix> = cols.iter().collect();
    let span = Matrix::hstack(&refs)?;
    Ok(reg.quotient(&span)?.0)
}

fn left_ideal(word: &str) -> Result<(GModule, Matrix)> {
    GModule::left_ideal(FiniteField::f4(), q8(), &[xy_word(word)])
}

pub fn w3() -> Result<GModule> {
    let f4 = FiniteField::f4();
    let i = Matrix::parse_text(f4, "1 0 0; 1 1 0; 0 1 1")?;
    let j = Matrix::parse_text(f4, "1 0 0; w 1 0; 0 w2 1")?;
    GModule::from_generators(f4, q8(), &[i, j])
}

/// Builds a named F4[Q8]-module.
pub fn builtin(name: &str) -> Result<GModule> {
    let f4 = FiniteField::f4();
    match name {
        "k" => Ok(GModule::trivial(f4, q8(), 1)),
        "regular" => Ok(GModule::regular(f4, q8())),
        "W3" => w3(),
        "W5" => syzygy(&w3()?),
        "Mprime" => quotient_by_span(&["X", "YX", "XYX", "YXY", "XYXY"]),
        "Mdoubleprime" => quotient_by_span(&["Y", "XY", "XYX", "YXY", "XYXY"]),
        "Lprime" => Ok(left_ideal("XY")?.0),
        "Ldoubleprime" => Ok(left_ideal("YX")?.0),
        "Jprime" => {
            let basis = left_ideal("XY")?.1;
            Ok(GModule::regular(f4, q8()).quotient(&basis)?.0)
        }
        "Jdoubleprime" => {
            let basis = left_ideal("YX")?.1;
            Ok(GModule::regular(f4, q8()).quotient(&basis)?.0)
        }
        other => Err(Error::UnknownName {
            kind: "module",
            name: other.to_string(),
            valid: BUILTIN_MODULES.iter().map(|s| s.to_string()).collect(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let dims: Vec<usize> = BUILTIN_MODULES
            .iter()
            .map(|n| builtin(n).unwrap().dim())
            .collect();
        assert_eq!(dims, vec![1, 8, 3, 5, 3, 3, 5, 5, 3, 3]);
    }

    #[test]
    fn xy_relations() {
        let g = FiniteGroup::q8();
        let f4 = FiniteField::f4();
        assert_eq!(xy_word("XX"), xy_word("YXY"));
        assert_eq!(xy_word("YY"), xy_word("XYX"));
        assert_eq!(xy_word("XYXY"), algebra::norm(f4, &g));
        let cols: Vec<Matrix> = XY_BASIS_WORDS
            .iter()
            .map(|w| Matrix::column_vector(f4, &xy_word(w)))
            .collect();
        let refs: Vec<&Matrix> = cols.iter().collect();
        assert_eq!(Matrix::hstack(&refs).unwrap().rank(), 8);
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(builtin("W7"), Err(Error::UnknownName { .. })));
    }
}
