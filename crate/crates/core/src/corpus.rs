//! The fixed verification corpus: small arrangements used across the test
//! suites and by the `verify` subcommand.

use crate::arrangement::{parse_arrangement, Arrangement};

pub const EMPTY_LINE: &str = "dim 1\n";
pub const ONE_POINT: &str = "dim 1\nH 1 0\n";
pub const TWO_POINTS: &str = "dim 1\nH 1 0\nH 1 1\n";
pub const TWO_LINES: &str = "dim 2\nH 1 0 0\nH 0 1 0\n";
pub const THREE_CONCURRENT: &str = "dim 2\nH 1 0 0\nH 0 1 0\nH 1 1 0\n";
pub const THREE_GENERIC: &str = "dim 2\nH 1 0 0\nH 0 1 0\nH 1 1 1\n";
pub const THREE_COORD_PLANES: &str = "dim 3\nH 1 0 0 0\nH 0 1 0 0\nH 0 0 1 0\n";

pub fn empty_line() -> Arrangement {
    parse_arrangement(EMPTY_LINE).unwrap()
}

pub fn one_point() -> Arrangement {
    parse_arrangement(ONE_POINT).unwrap()
}

pub fn two_points() -> Arrangement {
    parse_arrangement(TWO_POINTS).unwrap()
}

pub fn two_lines() -> Arrangement {
    parse_arrangement(TWO_LINES).unwrap()
}

pub fn three_concurrent() -> Arrangement {
    parse_arrangement(THREE_CONCURRENT).unwrap()
}

pub fn three_generic() -> Arrangement {
    parse_arrangement(THREE_GENERIC).unwrap()
}

pub fn three_coord_planes() -> Arrangement {
    parse_arrangement(THREE_COORD_PLANES).unwrap()
}

/// Name, source pairs for every corpus arrangement.
pub fn all() -> Vec<(&'static str, Arrangement)> {
    vec![
        ("empty", empty_line()),
        ("one-point", one_point()),
        ("two-points", two_points()),
        ("two-lines", two_lines()),
        ("three-concurrent", three_concurrent()),
        ("three-generic", three_generic()),
        ("three-coord-planes", three_coord_planes()),
    ]
}
