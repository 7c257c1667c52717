//! Estimators for key, pitch spelling and voices.
