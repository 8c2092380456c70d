from .classifier import EmbeddingClassifier

__all__ = ['EmbeddingClassifier']
