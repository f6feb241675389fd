use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

/// Process-wide table of immutable values built on first request.
///
/// Values are built outside the lock, so builders may consult other memos
/// (or this one) recursively. A racing duplicate build is discarded.
pub(crate) struct Memo<K, V> {
    map: OnceLock<Mutex<HashMap<K, Arc<V>>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub(crate) const fn new() -> Self {
        Memo {
            map: OnceLock::new(),
        }
    }

    pub(crate) fn get_or_build(&self, key: K, build: impl FnOnce() -> V) -> Arc<V> {
        let map = self.map.get_or_init(Default::default);
        if let Some(v) = map.lock().expect("memo poisoned").get(&key) {
            return Arc::clone(v);
        }
        let value = Arc::new(build());
        Arc::clone(
            map.lock()
                .expect("memo poisoned")
                .entry(key)
                .or_insert(value),
        )
    }
}
