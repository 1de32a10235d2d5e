//! Exact big-integer computation of partition counts, cranks, and the
//! bivariate crank expansion, by independent routes that must agree:
//! enumeration, infinite-product expansion, and the Lerch-type series.

pub mod diskcache;
pub mod laurent;
pub mod partition;
pub mod series;
pub mod table;

pub use laurent::LaurentPoly;
pub use partition::{crank, crank_census, for_each_partition, partitions_of, Partition};
pub use series::{
    expand_crank, expand_crank_lerch, p, p_colored, p_colored_table, partition_table,
    BivariateSeries,
};
pub use table::{CrankCache, CrankTable};
