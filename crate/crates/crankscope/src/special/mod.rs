//! Arbitrary-precision special functions.
