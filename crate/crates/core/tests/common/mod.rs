#![allow(dead_code)]

use std::sync::OnceLock;

use quandle_core::classify::{build_all, classify_p3, Built, Family};

/// Every classification record at p = 5, built once per test binary.
pub fn p5() -> &'static [Built] {
    static CELL: OnceLock<Vec<Built>> = OnceLock::new();
    CELL.get_or_init(|| build_all(&classify_p3(5).unwrap()).unwrap())
}

pub fn record(family: &str, params: &[u32]) -> &'static Built {
    let family: Family = family.parse().unwrap();
    p5().iter()
        .find(|b| b.record.family == family && b.record.params == params)
        .unwrap_or_else(|| panic!("no record {family} {params:?}"))
}

/// Latin principal record over Heis.
pub fn latin_principal() -> &'static Built {
    record("table2.row1", &[2, 4])
}

/// Non-faithful principal record, f(2,0,0,3,0,0) over Heis.
pub fn non_faithful() -> &'static Built {
    record("table2.row4", &[2])
}

/// Non-principal record over G7.
pub fn non_principal() -> &'static Built {
    record("table1.row1", &[2, 0])
}
