"""
Coherence Engine Configuration
"""

import os


def _env_bool(name: str, default: str = "false") -> bool:
    return os.getenv(name, default).lower() == "true"


# Exact engine limits
ENGINE_CONFIG = {
    "max_atoms": int(os.getenv("COHERENCE_MAX_ATOMS", 20)),
    "max_total_coherence_family": int(os.getenv("COHERENCE_MAX_VERTEX_FAMILY", 12)),
    "dyadic_depth": int(os.getenv("COHERENCE_DYADIC_DEPTH", 16)),
}

# Witness / counterexample search
SEARCH_CONFIG = {
    "budget": int(os.getenv("COHERENCE_BUDGET", 1000)),
    "seed": int(os.getenv("COHERENCE_SEED", 0)),
    "sample_denominator": int(os.getenv("COHERENCE_SAMPLE_DENOMINATOR", 64)),
    "max_corner_family": int(os.getenv("COHERENCE_MAX_CORNER_FAMILY", 10)),
    "extension_samples": int(os.getenv("COHERENCE_EXTENSION_SAMPLES", 64)),
}

# Rule certificate re-verification
CERTIFICATE_CONFIG = {
    "grid": int(os.getenv("COHERENCE_GRID", 4)),
}

LOG_CONFIG = {
    "level": os.getenv("COHERENCE_LOG_LEVEL", "WARNING"),
}

# Feature Flags
FEATURE_FLAGS = {
    "enable_hull_certificates": _env_bool("ENABLE_HULL_CERTIFICATES", "true"),
}
