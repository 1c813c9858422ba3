use std::fs;

use cubelab_cubes::cache::{cache_file_name, load_or_build, read_table, write_table};
use cubelab_cubes::{CubeError, Frac, RhoTable, RhoVariant};

#[test]
fn every_variant_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let variants = vec![
        RhoVariant::Plain,
        RhoVariant::Smooth { eta: Frac::new(1, 6) },
        RhoVariant::Window { sigma: Frac::new(2, 5), p: 7, eta: Frac::new(1, 2) },
    ];
    for variant in variants {
        let table = RhoTable::build(800, variant.clone()).unwrap();
        let path = dir.path().join(cache_file_name(800, &variant));
        write_table(&path, &table).unwrap();
        let back = read_table(&path).unwrap();
        assert_eq!(back.variant(), &variant);
        assert_eq!(back.limit(), 800);
        assert_eq!(back.counts(), table.counts());
    }
}

#[test]
fn load_or_build_hits_on_second_call() {
    let dir = tempfile::tempdir().unwrap();
    let variant = RhoVariant::Smooth { eta: Frac::new(1, 4) };
    let (first, hit1) = load_or_build(dir.path(), 600, variant.clone(), 2).unwrap();
    assert!(!hit1);
    let (second, hit2) = load_or_build(dir.path(), 600, variant.clone(), 5).unwrap();
    assert!(hit2);
    assert_eq!(first.counts(), second.counts());
}

#[test]
fn distinct_parameters_use_distinct_files() {
    let a = cache_file_name(100, &RhoVariant::Smooth { eta: Frac::new(1, 4) });
    let b = cache_file_name(100, &RhoVariant::Smooth { eta: Frac::new(1, 5) });
    let c = cache_file_name(101, &RhoVariant::Smooth { eta: Frac::new(1, 4) });
    let d = cache_file_name(100, &RhoVariant::Plain);
    assert!(a != b && a != c && a != d && b != c && b != d && c != d);
}

#[test]
fn stale_file_under_the_right_name_is_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let wanted = RhoVariant::Plain;
    // Plant a table with different parameters at the expected path.
    let wrong = RhoTable::build(200, RhoVariant::Smooth { eta: Frac::new(1, 9) }).unwrap();
    let path = dir.path().join(cache_file_name(500, &wanted));
    write_table(&path, &wrong).unwrap();
    let (table, hit) = load_or_build(dir.path(), 500, wanted.clone(), 1).unwrap();
    assert!(!hit);
    assert_eq!(table.limit(), 500);
    assert_eq!(table.get(36), 6);
    // The planted file was replaced by the correct one.
    let reread = read_table(&path).unwrap();
    assert_eq!(reread.variant(), &wanted);
    assert_eq!(reread.limit(), 500);
}

#[test]
fn corrupted_files_are_reported_not_trusted() {
    let dir = tempfile::tempdir().unwrap();
    let table = RhoTable::build(50, RhoVariant::Plain).unwrap();
    let path = dir.path().join("t.cubl");
    write_table(&path, &table).unwrap();

    let mut bytes = fs::read(&path).unwrap();
    bytes[0] = b'X';
    fs::write(&path, &bytes).unwrap();
    assert!(matches!(read_table(&path), Err(CubeError::CacheFormat(_))));

    let good = {
        let mut b = fs::read(&path).unwrap();
        b[0] = b'C';
        b
    };
    fs::write(&path, &good[..good.len() - 3]).unwrap();
    assert!(matches!(read_table(&path), Err(CubeError::CacheFormat(_))));
}
