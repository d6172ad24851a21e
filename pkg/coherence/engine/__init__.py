"""Exact coherence engine: events, linear programs, coherence, propagation, knowledge bases."""
