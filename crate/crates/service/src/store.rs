use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use motionsimp::simplify::SimplifyResult;
use motionsimp::{compute_profile, ComplexityProfile, MetricWeights, MotionSequence, Result};

/// One uploaded sequence. The profile is computed on first request.
#[derive(Debug)]
pub struct Session {
    pub motion: MotionSequence,
    profile: OnceLock<ComplexityProfile>,
    last: Mutex<Option<Arc<SimplifyResult>>>,
}

impl Session {
    fn new(motion: MotionSequence) -> Self {
        Self { motion, profile: OnceLock::new(), last: Mutex::new(None) }
    }

    /// Profile under default weights, computed once.
    pub fn profile(&self) -> Result<&ComplexityProfile> {
        if let Some(p) = self.profile.get() {
            return Ok(p);
        }
        // Computed outside the cell so a failure is not cached.
        let p = compute_profile(&self.motion, &MetricWeights::default())?;
        Ok(self.profile.get_or_init(|| p))
    }

    pub fn last_result(&self) -> Option<Arc<SimplifyResult>> {
        self.last.lock().expect("session lock").clone()
    }

    pub fn set_last_result(&self, r: Arc<SimplifyResult>) {
        *self.last.lock().expect("session lock") = Some(r);
    }
}

/// Bounded id -> session map with least-recently-used eviction.
#[derive(Debug)]
pub struct SessionStore {
    capacity: usize,
    tick: u64,
    entries: HashMap<String, (u64, Arc<Session>)>,
}

impl SessionStore {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity > 0, "store capacity must be positive");
        Self { capacity, tick: 0, entries: HashMap::new() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, id: String, motion: MotionSequence) -> Arc<Session> {
        if self.entries.len() >= self.capacity && !self.entries.contains_key(&id) {
            // Linear scan; capacities are small.
            if let Some(oldest) = self.entries.iter().min_by_key(|(_, (t, _))| *t).map(|(k, _)| k.clone()) {
                self.entries.remove(&oldest);
            }
        }
        self.tick += 1;
        let s = Arc::new(Session::new(motion));
        self.entries.insert(id, (self.tick, s.clone()));
        s
    }

    /// Look up a session and mark it as recently used.
    pub fn get(&mut self, id: &str) -> Option<Arc<Session>> {
        self.tick += 1;
        let tick = self.tick;
        self.entries.get_mut(id).map(|e| {
            e.0 = tick;
            e.1.clone()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use motionsimp::fixtures;

    #[test]
    fn evicts_least_recently_used() {
        let mut s = SessionStore::new(2);
        let m = fixtures::static_pose(2, 30.0);
        s.insert("a".into(), m.clone());
        s.insert("b".into(), m.clone());
        assert!(s.get("a").is_some());
        s.insert("c".into(), m);
        assert_eq!(s.len(), 2);
        assert!(s.get("b").is_none());
        assert!(s.get("a").is_some() && s.get("c").is_some());
    }
}
