"""Domain Interfaces (Abstract Base Classes)"""

from .sampler import ISampler
from .dataset_store import IDatasetStore
from .result_writer import IResultWriter
from .plotter import IPlotter

__all__ = [
    "ISampler",
    "IDatasetStore",
    "IResultWriter",
    "IPlotter"
]
