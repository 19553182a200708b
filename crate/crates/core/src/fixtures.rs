//! Small named codes used throughout the test suites and the CLI demos.

use crate::gf2::BinaryMatrix;
use crate::tanner::MultiGraph;

/// The 6x7 "dumbbell" cycle code: two triangles joined by a bridge.
pub fn dumbbell() -> BinaryMatrix {
    BinaryMatrix::from_rows(&[
        [1u8, 1, 0, 0, 0, 0, 0],
        [0, 1, 1, 1, 0, 0, 0],
        [1, 0, 1, 0, 0, 0, 0],
        [0, 0, 0, 1, 1, 0, 1],
        [0, 0, 0, 0, 1, 1, 0],
        [0, 0, 0, 0, 0, 1, 1],
    ])
    .expect("well-formed literal")
}

/// Cycle code of the triangle: every column covers a distinct pair of rows.
pub fn triangle_code() -> BinaryMatrix {
    BinaryMatrix::from_rows(&[[1u8, 1, 0], [1, 0, 1], [0, 1, 1]]).expect("well-formed literal")
}

pub fn triangle_graph() -> MultiGraph {
    MultiGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).expect("well-formed literal")
}

/// A small matrix whose Tanner graph has a degree-3 bit, so it is neither a
/// cycle code nor bit-even.
pub fn small_general_code() -> BinaryMatrix {
    BinaryMatrix::from_rows(&[[1u8, 1, 0], [0, 1, 1], [1, 1, 1]]).expect("well-formed literal")
}
