"""Topic detection as term communities in co-occurrence networks."""

__version__ = "0.1.0"
