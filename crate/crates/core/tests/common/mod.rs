#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::{Arc, OnceLock};

use zladder::ladder::LadderModel;
use zladder::moment::{cache_file_name, MomentCheckpointTable, DEFAULT_TOL};
use zladder::special::RSEvalConfig;

pub const TABLE_T_MAX: f64 = 50_000.0;

pub fn cache_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("zladder-cache")
}

/// Checkpoint table to 5·10⁴ shared by every test in the binary and cached
/// on disk across test binaries.
pub fn table() -> Arc<MomentCheckpointTable> {
    static TABLE: OnceLock<Arc<MomentCheckpointTable>> = OnceLock::new();
    TABLE
        .get_or_init(|| {
            let cfg = RSEvalConfig::default();
            let path = cache_dir().join(cache_file_name(TABLE_T_MAX, DEFAULT_TOL, &cfg));
            Arc::new(MomentCheckpointTable::load_or_build(&path, TABLE_T_MAX, DEFAULT_TOL, &cfg).unwrap())
        })
        .clone()
}

pub fn model() -> LadderModel {
    LadderModel::quadrature(table())
}
