//! Process-wide cache of built lookup codes. Builds are deterministic, so
//! sharing one immutable instance per parameter tuple is sound; harnesses
//! that solve many same-shaped instances would otherwise redo the 2^m sweep
//! every call.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::codes::GilbertCode;
use crate::Result;

type Key = (usize, u32, u32, usize);

fn store() -> &'static Mutex<HashMap<Key, Arc<GilbertCode>>> {
    static STORE: OnceLock<Mutex<HashMap<Key, Arc<GilbertCode>>>> = OnceLock::new();
    STORE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn gilbert(m: usize, d: u32, radius: u32, budget: usize) -> Result<Arc<GilbertCode>> {
    let key = (m, d, radius, budget);
    if let Some(code) = store().lock().expect("cache lock").get(&key) {
        return Ok(code.clone());
    }
    // Built outside the lock: other shapes stay available during the sweep,
    // and a racing duplicate build is just wasted work, not an error.
    let built = Arc::new(GilbertCode::build_with_budget(m, d, radius, budget)?);
    let mut map = store().lock().expect("cache lock");
    Ok(map.entry(key).or_insert(built).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_returns_shared_instance() {
        let a = gilbert(8, 2, 1, 26).unwrap();
        let b = gilbert(8, 2, 1, 26).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert!(!Arc::ptr_eq(&a, &gilbert(8, 2, 0, 26).unwrap()));
    }

    #[test]
    fn cache_propagates_build_errors() {
        assert!(gilbert(27, 2, 1, 26).is_err());
    }
}
