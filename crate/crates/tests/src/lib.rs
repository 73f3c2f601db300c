//! Holds the workspace acceptance checks (`cargo test -p cgt-tests`). The
//! package sorts after the library crates, so a failing check does not keep
//! their own test suites from running.
