/// Resource caps shared by every exact search in the crate.
///
/// Exceeding a cap is reported as an error; no search ever degrades to a
/// heuristic answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of search nodes per call of the backtracking searches.
    pub max_nodes: u64,
    /// Maximum length of an explicitly enumerated cover stream.
    pub max_covers: u128,
    /// Maximum number of forest-respecting slot assignments (one clause
    /// each) in the DP-colorability check.
    pub max_assignments: usize,
    /// Worker threads for the refuting-cover descent; `1` keeps everything
    /// on the caller's thread. Results do not depend on this value.
    pub jobs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_nodes: 200_000_000,
            max_covers: 50_000_000,
            max_assignments: 4_000_000,
            jobs: 1,
        }
    }
}

impl Limits {
    pub fn with_max_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn with_max_assignments(mut self, max_assignments: usize) -> Self {
        self.max_assignments = max_assignments;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}
