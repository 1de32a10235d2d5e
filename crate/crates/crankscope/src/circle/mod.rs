//! Circle-method contour evaluation.
