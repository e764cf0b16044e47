use std::fmt;

use crate::complex::{CellId, Filt};

/// Which rule removed the cells of an event.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Free face `b` and its unique coface `A`; logged as `(A, b)`.
    Collapse,
    /// Cell `B` and its unique face `a`; logged as `(B, a)`.
    Coreduction,
    /// Seed vertex removed before coreductions.
    VertexRemoval,
    /// A cell of an excised acyclic subcomplex.
    Excision,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Collapse => "collapse",
            Rule::Coreduction => "coreduction",
            Rule::VertexRemoval => "vertex-removal",
            Rule::Excision => "excision",
        }
    }

    pub fn is_pair(self) -> bool {
        matches!(self, Rule::Collapse | Rule::Coreduction)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Event {
    pub rule: Rule,
    pub first: CellId,
    pub second: Option<CellId>,
    /// Filtration value at the time of removal.
    pub filt: Filt,
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.rule.name(), self.first)?;
        if let Some(s) = self.second {
            write!(f, " {s}")?;
        }
        write!(f, " {}", self.filt)
    }
}

/// Ordered record of removals.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionLog {
    events: Vec<Event>,
    removed_count: usize,
}

impl ReductionLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push_pair(&mut self, rule: Rule, coface: CellId, face: CellId, filt: Filt) {
        debug_assert!(rule.is_pair());
        self.events.push(Event {
            rule,
            first: coface,
            second: Some(face),
            filt,
        });
        self.removed_count += 2;
    }

    pub fn push_single(&mut self, rule: Rule, cell: CellId, filt: Filt) {
        debug_assert!(!rule.is_pair());
        self.events.push(Event {
            rule,
            first: cell,
            second: None,
            filt,
        });
        self.removed_count += 1;
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn removed_count(&self) -> usize {
        self.removed_count
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn count(&self, rule: Rule) -> usize {
        self.events.iter().filter(|e| e.rule == rule).count()
    }

    pub fn extend(&mut self, other: ReductionLog) {
        self.removed_count += other.removed_count;
        self.events.extend(other.events);
    }
}

impl fmt::Display for ReductionLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.events {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}
