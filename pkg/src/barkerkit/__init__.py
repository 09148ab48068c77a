"""Aperiodic autocorrelation analysis of ±1 sequences and Barker sequence search."""

from .seqcore import BinarySequence, parse_sequence, render_sequence
from .correlation import CorrelationProfile, acf_direct, acf_fast

__version__ = "0.1.0"
