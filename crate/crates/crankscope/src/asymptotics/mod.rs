//! Asymptotic main term and comparison tables.
