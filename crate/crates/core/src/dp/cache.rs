use std::collections::HashMap;
use std::sync::Arc;

use super::Row;

/// Rough memory budget for cached rows.
const DEFAULT_BUDGET_BYTES: usize = 256 << 20;

/// Memo of DP rows keyed by subtree shape.
///
/// A row `z(., s)` depends on the whole subtree below `s`, not only on `s`
/// and its two child sets, so subtrees are hash-consed: singletons `{k}`
/// have id `k`, and an internal node gets the id interned for its unordered
/// pair of child ids. After an SPR move only nodes on the two affected root
/// paths get new ids; every other row is found here.
///
/// A cache belongs to one instance. It is wiped whenever it outgrows its
/// row budget, which only happens between solves.
#[derive(Debug, Default)]
pub struct DpCache {
    ids: HashMap<(u32, u32), u32>,
    rows: Vec<Arc<Row>>,
    shape: Option<(usize, usize)>,
    max_rows: Option<usize>,
    hits: u64,
    misses: u64,
}

impl DpCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Caps the number of cached rows instead of deriving a cap from memory.
    pub fn with_max_rows(max_rows: usize) -> Self {
        DpCache {
            max_rows: Some(max_rows.max(1)),
            ..Self::default()
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn misses(&self) -> u64 {
        self.misses
    }

    pub fn clear(&mut self) {
        self.ids.clear();
        self.rows.clear();
    }

    pub(super) fn prepare(&mut self, node_count: usize, commodity_count: usize) {
        if self.shape != Some((node_count, commodity_count)) {
            self.clear();
            self.shape = Some((node_count, commodity_count));
        }
        let row_bytes = 12 * node_count.max(1);
        let cap = self
            .max_rows
            .unwrap_or_else(|| (DEFAULT_BUDGET_BYTES / row_bytes).max(64));
        if self.rows.len() + 2 * commodity_count > cap {
            self.clear();
        }
    }

    pub(super) fn get_or_insert(
        &mut self,
        a: u32,
        b: u32,
        compute: impl FnOnce() -> Row,
    ) -> (u32, Arc<Row>) {
        let key = (a.min(b), a.max(b));
        let base = self.shape.map_or(0, |s| s.1) as u32;
        if let Some(&id) = self.ids.get(&key) {
            self.hits += 1;
            return (id, Arc::clone(&self.rows[(id - base) as usize]));
        }
        self.misses += 1;
        let id = base + self.rows.len() as u32;
        let row = Arc::new(compute());
        self.rows.push(Arc::clone(&row));
        self.ids.insert(key, id);
        (id, row)
    }
}
