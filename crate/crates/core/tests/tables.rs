use sha2::{Digest, Sha256};
use xdelta_core::gonality::{table_rows, table_source, TableId, TABLE_SHA256};

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[test]
fn embedded_tables_match_checksums() {
    for (id, expected) in TableId::ALL.into_iter().zip(TABLE_SHA256) {
        let digest = Sha256::digest(table_source(id).as_bytes());
        assert_eq!(hex(&digest), expected, "table {id}");
    }
}

#[test]
fn dash_rows_cover_small_levels() {
    let rows = table_rows(TableId::LowGenus);
    for n in 1..=12 {
        let at: Vec<_> = rows.iter().filter(|r| r.level == n).collect();
        assert_eq!(at.len(), 1);
        assert!(at[0].delta.is_none() && at[0].genus.is_none());
    }
}
