use std::collections::{HashSet, VecDeque};
use std::sync::Mutex;

use url::Url;

use crate::store::Iri;

/// A page waiting to be fetched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueueItem {
    /// Dedup key, also the URL that gets fetched.
    pub url: Url,
    /// Tag page this page was reached from.
    pub entry_tag: Option<Iri>,
    pub depth: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Offer {
    Accepted,
    Visited,
    OverBudget,
}

#[derive(Debug, Default)]
struct State {
    pending: VecDeque<QueueItem>,
    visited: HashSet<String>,
}

/// FIFO of pending pages plus the set of claimed dedup keys.
///
/// A key is marked visited when it is queued, under the same lock as the
/// check, so it moves unvisited → visited exactly once.
#[derive(Debug, Default)]
pub struct Frontier {
    state: Mutex<State>,
}

impl Frontier {
    pub fn new() -> Self {
        Frontier::default()
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, State> {
        self.state.lock().unwrap_or_else(|e| e.into_inner())
    }

    pub fn is_visited(&self, key: &str) -> bool {
        self.lock().visited.contains(key)
    }

    pub fn can_claim(&self, key: &str, max_pages: usize) -> bool {
        let s = self.lock();
        !s.visited.contains(key) && s.visited.len() < max_pages
    }

    /// Marks `key` visited without queueing anything.
    pub fn claim(&self, key: &str, max_pages: usize) -> bool {
        let mut s = self.lock();
        if s.visited.contains(key) || s.visited.len() >= max_pages {
            return false;
        }
        s.visited.insert(key.to_string())
    }

    /// Claims the item's key and queues it.
    pub fn offer(&self, item: QueueItem, max_pages: usize) -> Offer {
        let mut s = self.lock();
        let key = item.url.as_str();
        if s.visited.contains(key) {
            return Offer::Visited;
        }
        if s.visited.len() >= max_pages {
            return Offer::OverBudget;
        }
        s.visited.insert(key.to_string());
        s.pending.push_back(item);
        Offer::Accepted
    }

    /// Drains everything queued so far, in FIFO order.
    pub fn take_level(&self) -> Vec<QueueItem> {
        self.lock().pending.drain(..).collect()
    }

    pub fn pending_len(&self) -> usize {
        self.lock().pending.len()
    }

    pub fn visited_len(&self) -> usize {
        self.lock().visited.len()
    }
}
