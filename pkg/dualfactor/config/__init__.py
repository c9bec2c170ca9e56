from .settings import Settings
from .run_config import Algorithm, OutputFormat, RunConfig

__all__ = ["Settings", "Algorithm", "OutputFormat", "RunConfig"]
