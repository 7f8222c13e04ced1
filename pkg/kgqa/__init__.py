"""Knowledge-graph question answering: triple store, entity recognition,
template matching, answer generation and evaluation metrics."""

__version__ = "0.1.0"
