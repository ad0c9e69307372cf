use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use agroline_core::planner::CoveragePlan;
use agroline_core::{Pairs64, Plot64, Surface64, Terrain64};

/// One loaded terrain/plot pair and the latest subdivision attempt.
#[derive(Debug)]
pub struct Session {
    pub terrain: Arc<Terrain64>,
    pub surface: Arc<Surface64>,
    pub plot: Arc<Plot64>,
    pub convex: bool,
    pub pairs: Option<Pairs64>,
    pub plan: Option<Arc<CoveragePlan>>,
    pub created_at: Instant,
}

pub type SessionHandle = Arc<tokio::sync::Mutex<Session>>;

struct Entry {
    session: SessionHandle,
    last_seen: Instant,
}

/// In-memory sessions with idle eviction.
pub struct SessionStore {
    entries: Mutex<HashMap<String, Entry>>,
    idle: Duration,
}

impl SessionStore {
    pub fn new(idle: Duration) -> Self {
        Self {
            entries: Mutex::new(HashMap::new()),
            idle,
        }
    }

    pub fn insert(&self, id: String, session: Session) -> SessionHandle {
        let handle = Arc::new(tokio::sync::Mutex::new(session));
        let mut entries = self.entries.lock().unwrap_or_else(|e| e.into_inner());
        entries.insert(
            id,
            Entry {
                session: handle.clone(),
                last_seen: Instant::now(),
            },
        );
        handle
    }

    /// Looks up a live session and marks it as used.
    pub fn get(&self, id: &str) -> Option<SessionHandle> {
        let now = Instant::now();
        let mut entries = self.entries.lock().unwrap_or_else(|e| e.into_inner());
        let entry = entries.get_mut(id)?;
        if now.duration_since(entry.last_seen) > self.idle {
            entries.remove(id);
            return None;
        }
        entry.last_seen = now;
        Some(entry.session.clone())
    }

    /// Drops sessions idle for longer than the timeout; returns how many.
    pub fn evict_idle(&self) -> usize {
        let now = Instant::now();
        let mut entries = self.entries.lock().unwrap_or_else(|e| e.into_inner());
        let before = entries.len();
        entries.retain(|_, e| now.duration_since(e.last_seen) <= self.idle);
        before - entries.len()
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap_or_else(|e| e.into_inner()).len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use agroline_core::geometry::Point;
    use agroline_core::ingest::{LevelCurveSet, TerrainPoint};

    fn session() -> Session {
        let pts = (0..4)
            .map(|i| TerrainPoint {
                x: (i % 2) as f64,
                y: (i / 2) as f64,
                z: 1.0,
            })
            .collect();
        let plot = Plot64::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0)]).unwrap();
        Session {
            terrain: Arc::new(LevelCurveSet::new(pts).unwrap()),
            surface: Arc::new(Surface64::constant(1.0)),
            plot: Arc::new(plot),
            convex: true,
            pairs: None,
            plan: None,
            created_at: Instant::now(),
        }
    }

    #[test]
    fn idle_sessions_are_evicted() {
        let store = SessionStore::new(Duration::from_millis(20));
        store.insert("a".into(), session());
        assert!(store.get("a").is_some());
        std::thread::sleep(Duration::from_millis(40));
        assert_eq!(store.evict_idle(), 1);
        assert!(store.get("a").is_none());
    }

    #[test]
    fn access_keeps_a_session_alive() {
        let store = SessionStore::new(Duration::from_millis(60));
        store.insert("a".into(), session());
        for _ in 0..4 {
            std::thread::sleep(Duration::from_millis(25));
            assert!(store.get("a").is_some());
        }
        assert!(!store.is_empty());
    }
}
