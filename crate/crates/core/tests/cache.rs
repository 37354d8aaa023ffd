use std::fs;
use std::path::PathBuf;

use g2c2_core::cache::{Cache, CacheStatus};
use g2c2_core::char2inv::k_table;
use g2c2_core::igusa0::igusa_table;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("g2c2-cache-it-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    dir
}

#[test]
fn tables_are_cached_and_corruption_is_detected() {
    let cache = Cache::new(scratch("tables"));
    let (igusa, digest, status) = cache.igusa_table().unwrap();
    assert_eq!(status, CacheStatus::Built);
    assert_eq!(&igusa, igusa_table());
    let (k, status) = cache.k_table(&igusa, &digest).unwrap();
    assert_eq!(status, CacheStatus::Built);
    assert_eq!(&k, k_table());

    let (_, digest2, status) = cache.igusa_table().unwrap();
    assert_eq!((status, &digest2), (CacheStatus::Hit, &digest));
    assert_eq!(cache.k_table(&igusa, &digest).unwrap().1, CacheStatus::Hit);

    // flip one coefficient of the stored K-table
    let entry = fs::read_dir(cache.dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| p.file_name().unwrap().to_string_lossy().starts_with("ktable-"))
        .unwrap();
    let text = fs::read_to_string(&entry).unwrap();
    let tampered = text.replacen("\"a0\":1", "\"a0\":2", 1);
    assert_ne!(text, tampered);
    fs::write(&entry, tampered).unwrap();
    let (k, status) = cache.k_table(&igusa, &digest).unwrap();
    assert_eq!(status, CacheStatus::Rebuilt);
    assert_eq!(&k, k_table());
    assert_eq!(fs::read_to_string(&entry).unwrap(), text);

    // no temporary files are left behind
    assert!(fs::read_dir(cache.dir()).unwrap().all(|e| e.unwrap().path().extension().unwrap() == "json"));
    fs::remove_dir_all(cache.dir()).unwrap();
}

#[test]
fn a_different_igusa_digest_is_a_different_entry() {
    let cache = Cache::new(scratch("digest"));
    let igusa = igusa_table();
    assert_eq!(cache.k_table(igusa, "aaaa").unwrap().1, CacheStatus::Built);
    assert_eq!(cache.k_table(igusa, "bbbb").unwrap().1, CacheStatus::Built);
    assert_eq!(cache.k_table(igusa, "aaaa").unwrap().1, CacheStatus::Hit);
    fs::remove_dir_all(cache.dir()).unwrap();
}
