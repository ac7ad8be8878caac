//! Acceptance checks for modpic live in `tests/acceptance.rs`.
