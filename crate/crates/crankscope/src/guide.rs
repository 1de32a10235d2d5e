//! The handbook chapters (placeholder until the book lands).
