//! The five suites. Each returns its table and the list of tolerance breaches.

pub mod characters;
pub mod fock;
pub mod kernel;
pub mod propagator;
pub mod spin_check;

use crate::table::Table;

pub struct Outcome {
    pub table: Table,
    pub breaches: Vec<String>,
}

impl Outcome {
    pub fn new(table: Table) -> Self {
        Self {
            table,
            breaches: Vec::new(),
        }
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) -> bool {
        if !ok {
            self.breaches.push(what());
        }
        ok
    }
}
