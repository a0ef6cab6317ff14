//! Order limits for the expensive searches.

use crate::error::{Error, Result};

/// Environment variable that overrides the automorphism and isomorphism caps.
pub const MAX_ORDER_ENV: &str = "COLEMAN_MAX_ORDER";

/// Upper bound on automorphism search when the extended flag is given.
pub const EXTENDED_AUTOMORPHISM_CAP: usize = 1500;

/// Groups up to this order store a full multiplication table.
pub const TABLE_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest closure accepted when building a group.
    pub construction: usize,
    /// Largest group whose full automorphism group is enumerated.
    pub automorphism: usize,
    /// Largest group handed to the isomorphism search.
    pub isomorphism: usize,
    /// Largest group whose normal-subgroup lattice is searched.
    pub subgroup_search: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            construction: 20_000,
            automorphism: 512,
            isomorphism: 512,
            subgroup_search: TABLE_CAP,
        }
    }
}

impl Caps {
    /// Defaults, with `COLEMAN_MAX_ORDER` applied when set to a positive integer.
    pub fn from_env() -> Self {
        let mut caps = Self::default();
        if let Some(n) = std::env::var(MAX_ORDER_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&n| n > 0)
        {
            caps = caps.with_search_cap(n);
        }
        caps
    }

    pub fn with_search_cap(mut self, n: usize) -> Self {
        self.automorphism = n;
        self.isomorphism = n;
        self
    }

    pub fn extended(self) -> Self {
        self.with_search_cap(self.automorphism.max(EXTENDED_AUTOMORPHISM_CAP))
    }

    pub(crate) fn check(what: &'static str, order: usize, cap: usize) -> Result<()> {
        if order > cap {
            Err(Error::OrderCapExceeded { what, order, cap })
        } else {
            Ok(())
        }
    }
}
