"""Word-substitution adversarial attacks on Chinese text classifiers.

Thin Python wrapper over the C++ core. The heavy lifting (segmentation,
candidate generation, the greedy search, victim training) lives in the
compiled `_zhattack` extension module.
"""

from ._zhattack import (  # noqa: F401
    Candidate,
    LabeledDataset,
    LinearTextModel,
    Prediction,
    ResourceTables,
    SegmentedText,
    Token,
    attack,
    candidates,
    segment,
    segment_with,
    train_victim,
)

__all__ = [
    "Candidate",
    "LabeledDataset",
    "LinearTextModel",
    "Prediction",
    "ResourceTables",
    "SegmentedText",
    "Token",
    "attack",
    "candidates",
    "segment",
    "segment_with",
    "train_victim",
]
