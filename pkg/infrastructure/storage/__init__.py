"""Flat-file persistence and plots"""

from .csv_dataset_store import CsvDatasetStore
from .csv_result_writer import CsvResultWriter
from .matplotlib_plotter import MatplotlibPlotter

__all__ = ["CsvDatasetStore", "CsvResultWriter", "MatplotlibPlotter"]
