"""HTTP sidecar serving unit-normalized sentence embeddings."""

__version__ = "0.1.0"
