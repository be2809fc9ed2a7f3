use crate::field::DEFAULT_TABLE_LIMIT;

/// Resource limits shared by construction, verification and the catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest field order for which tables are built.
    pub table_limit: u64,
    /// Largest message space q^k enumerated by the exhaustive distance oracle.
    pub enumeration_limit: u64,
    /// Largest number of k-subsets checked by the full minor test.
    pub minor_limit: u64,
    /// Number of random k-subsets checked in sampled mode.
    pub sample_count: u64,
    /// Longest code a construction will realize.
    pub length_limit: u64,
    /// Seed for sampled MDS checks.
    pub seed: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            table_limit: DEFAULT_TABLE_LIMIT,
            enumeration_limit: 10_000_000,
            minor_limit: 1_000_000,
            sample_count: 1000,
            length_limit: 4096,
            seed: 0x5eed,
        }
    }
}
