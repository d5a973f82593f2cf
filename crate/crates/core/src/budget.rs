//! Time limits for exhaustive searches.
//!
//! A search that runs out of time reports [`Search::Undecided`], never
//! [`Search::Absent`]: absence is only claimed after the space is exhausted.

use std::cell::Cell;
use std::time::{Duration, Instant};

/// Result of a bounded exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    Absent,
    Undecided,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, Search::Absent)
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self, Search::Undecided)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Search<U> {
        match self {
            Search::Found(t) => Search::Found(f(t)),
            Search::Absent => Search::Absent,
            Search::Undecided => Search::Undecided,
        }
    }

    /// Unwraps a search run without a deadline.
    ///
    /// # Panics
    /// If the search reported `Undecided`, which cannot happen under [`Deadline::never`].
    pub(crate) fn into_option(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            Search::Absent => None,
            Search::Undecided => unreachable!("unbounded search reported undecided"),
        }
    }
}

/// Marker error: the deadline passed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimedOut;

/// A wall-clock deadline shared by all nested searches of one task.
///
/// `Deadline` is cheap to poll: the clock is read only every few thousand calls.
#[derive(Debug)]
pub struct Deadline {
    at: Option<Instant>,
    ticks: Cell<u32>,
    expired: Cell<bool>,
}

const POLL_INTERVAL: u32 = 4096;

impl Deadline {
    pub fn never() -> Self {
        Deadline {
            at: None,
            ticks: Cell::new(0),
            expired: Cell::new(false),
        }
    }

    pub fn after(limit: Duration) -> Self {
        Deadline {
            at: Instant::now().checked_add(limit),
            ticks: Cell::new(0),
            expired: Cell::new(false),
        }
    }

    pub fn from_limit(limit: Option<Duration>) -> Self {
        limit.map_or_else(Deadline::never, Deadline::after)
    }

    pub fn is_unbounded(&self) -> bool {
        self.at.is_none()
    }

    /// Counts one unit of work; `Err` once the deadline has passed.
    #[inline]
    pub fn tick(&self) -> Result<(), TimedOut> {
        let Some(at) = self.at else { return Ok(()) };
        if self.expired.get() {
            return Err(TimedOut);
        }
        let t = self.ticks.get().wrapping_add(1);
        self.ticks.set(t);
        if t.is_multiple_of(POLL_INTERVAL) && Instant::now() >= at {
            self.expired.set(true);
            return Err(TimedOut);
        }
        Ok(())
    }

    pub fn expired(&self) -> bool {
        self.expired.get() || self.at.is_some_and(|at| Instant::now() >= at)
    }
}

impl<T> From<Result<Option<T>, TimedOut>> for Search<T> {
    fn from(r: Result<Option<T>, TimedOut>) -> Self {
        match r {
            Ok(Some(t)) => Search::Found(t),
            Ok(None) => Search::Absent,
            Err(TimedOut) => Search::Undecided,
        }
    }
}
