//! Holds the acceptance suite in `tests/acceptance.rs`; the library is empty.
