"""Post-hoc figures for simulator batch output.

Reads the ``series_<design>_<run>.csv`` files written by the simulation
runner and renders either trajectory bundles (every run's monthly series
overlaid, one design) or final-month boxplots (one box per design). The CSV
schema is the only contract with the simulator; the engine itself is never
imported here.
"""

from .cli import FigureSpec, main, plot

__all__ = ["FigureSpec", "main", "plot"]
