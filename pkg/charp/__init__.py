from .lab import FrobeniusLab as FrobeniusLab, LabConfig as LabConfig

__version__ = "0.3.1"
__author__ = "charp contributors"
__url__ = ""
