use ideal_moments::cache::{split_rows, Cache, CacheStatus, CACHE_ENV};
use ideal_moments::{IdealTable, NumberField, TableMode};

fn gauss() -> NumberField {
    NumberField::quadratic(-1).unwrap()
}

#[test]
fn table_round_trip_and_truncation() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let k = gauss();
    let (built, status) = cache.load_or_build(&k, 5000, TableMode::CountsOnly).unwrap();
    assert_eq!(status, CacheStatus::Miss);
    let (loaded, status) = cache.load_or_build(&k, 5000, TableMode::CountsOnly).unwrap();
    assert_eq!(status, CacheStatus::Hit);
    assert_eq!(loaded.counts(), built.counts());
    assert_eq!(loaded.mertens_array(), built.mertens_array());
    let (small, status) = cache.load_or_build(&k, 1200, TableMode::CountsOnly).unwrap();
    assert_eq!(status, CacheStatus::Hit);
    assert_eq!(small.bound(), 1200);
    assert_eq!(small.counts(), &built.counts()[..=1200]);
    let (_, status) = cache.load_or_build(&k, 6000, TableMode::CountsOnly).unwrap();
    assert_eq!(status, CacheStatus::Miss);
}

#[test]
fn splitting_file_layout() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let k = gauss();
    let (t, _) = cache.load_or_build(&k, 30, TableMode::Full).unwrap();
    let text = std::fs::read_to_string(cache.splitting_path(&k)).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,e,f,count"));
    assert_eq!(lines.next(), Some("2,2,1,1"));
    assert_eq!(lines.next(), Some("3,1,2,1"));
    assert_eq!(lines.next(), Some("5,1,1,2"));
    assert_eq!(cache.read_splittings(&k).unwrap().unwrap(), split_rows(t.splittings()));
    assert!(cache
        .splitting_path(&k)
        .file_name()
        .unwrap()
        .to_str()
        .unwrap()
        .starts_with(&k.descriptor().cache_key()));
}

#[test]
fn corrupted_files_are_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let k = gauss();
    let (reference, _) = cache.load_or_build(&k, 800, TableMode::CountsOnly).unwrap();
    let path = cache.table_path(&k);
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, text.replacen("\n5,2,", "\n5,x,", 1)).unwrap();
    let (t, status) = cache.load_or_build(&k, 800, TableMode::CountsOnly).unwrap();
    assert!(matches!(status, CacheStatus::Rebuilt(_)), "{status:?}");
    assert_eq!(t.counts(), reference.counts());
    std::fs::write(&path, "garbage\n").unwrap();
    let (_, status) = cache.load_or_build(&k, 800, TableMode::CountsOnly).unwrap();
    assert!(matches!(status, CacheStatus::Rebuilt(_)));
    let (_, status) = cache.load_or_build(&k, 800, TableMode::CountsOnly).unwrap();
    assert_eq!(status, CacheStatus::Hit);
}

#[test]
fn tampered_mertens_is_detected() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let k = gauss();
    cache.load_or_build(&k, 100, TableMode::CountsOnly).unwrap();
    let path = cache.table_path(&k);
    let text = std::fs::read_to_string(&path).unwrap();
    // a(3) = 0, so M(3) must equal M(2).
    let tampered: String = text
        .lines()
        .map(|l| {
            if l.starts_with("3,") {
                "3,0,7".to_string()
            } else {
                l.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    std::fs::write(&path, tampered).unwrap();
    assert!(cache.read_table(&k, 100).is_err());
}

#[test]
fn environment_variable_selects_directory() {
    let dir = tempfile::tempdir().unwrap();
    std::env::set_var(CACHE_ENV, dir.path());
    let cache = Cache::from_env().unwrap();
    assert_eq!(cache.dir(), dir.path());
    std::env::set_var(CACHE_ENV, "");
    assert!(Cache::from_env().is_none());
    std::env::remove_var(CACHE_ENV);
    assert!(Cache::from_env().is_none());
}

#[test]
fn distinct_fields_use_distinct_files() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let a = gauss();
    let b = NumberField::quadratic(5).unwrap();
    assert_ne!(cache.table_path(&a), cache.table_path(&b));
    let ta = cache.load_or_build(&a, 200, TableMode::CountsOnly).unwrap().0;
    let tb = cache.load_or_build(&b, 200, TableMode::CountsOnly).unwrap().0;
    assert_ne!(ta.counts(), tb.counts());
    assert_eq!(
        cache.read_table(&a, 200).unwrap().unwrap().counts(),
        IdealTable::build(&a, 200, TableMode::CountsOnly).unwrap().counts()
    );
}
