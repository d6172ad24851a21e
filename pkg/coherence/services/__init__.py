"""Service layer modules for witness search and rule certification."""
