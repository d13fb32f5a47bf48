//! Python bindings for the q-series engine (placeholder; filled in last).
