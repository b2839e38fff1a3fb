"""Opportunity-space discovery, idea generation and rating comparison.

The pipeline turns a project's documents into clustered "opportunity
spaces", generates typed innovation opportunities inside chosen spaces
through parameterized prompts (directly or by pivoting on earlier
results), and compares rated opportunity sets with rank statistics.
"""

from .config import EngineConfig, Providers, build_providers, load_config
from .engine import ProjectEngine
from .errors import OppgenError
from .store import ProjectStore

__version__ = "0.1.0"

__all__ = [
    "EngineConfig",
    "Providers",
    "build_providers",
    "load_config",
    "ProjectEngine",
    "OppgenError",
    "ProjectStore",
    "__version__",
]
