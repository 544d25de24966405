"""Registered classifiers addressable by name from the benchmark harness."""

from .convolution import (
    HydraClassifier,
    HydraMRClassifier,
    MiniRocketClassifier,
    MultiRocketClassifier,
    RocketClassifier,
)
from .dictionary import WeaselDClassifier
from .distances import Nn1DtwClassifier
from .intervals import DrcifClassifier, TsfClassifier
from .shapelets import RdstClassifier

__all__ = ["CLASSIFIERS", "make_classifier", "classifier_names", "UnknownClassifier"]


class UnknownClassifier(ValueError):
    pass


CLASSIFIERS = {
    "1nn-dtw": lambda seed: Nn1DtwClassifier(seed=seed),
    "rocket": lambda seed: RocketClassifier(seed=seed),
    "minirocket": lambda seed: MiniRocketClassifier(seed=seed),
    "multirocket": lambda seed: MultiRocketClassifier(seed=seed),
    "hydra": lambda seed: HydraClassifier(seed=seed),
    "hydra-mr": lambda seed: HydraMRClassifier(seed=seed),
    "weasel-d": lambda seed: WeaselDClassifier(seed=seed),
    "rdst": lambda seed: RdstClassifier(seed=seed),
    "tsf": lambda seed: TsfClassifier(seed=seed),
    "drcif": lambda seed: DrcifClassifier(seed=seed),
}


def classifier_names():
    return sorted(CLASSIFIERS)


def make_classifier(name, seed=None):
    try:
        factory = CLASSIFIERS[name]
    except KeyError:
        raise UnknownClassifier(
            f"unknown classifier {name!r}; registered: {', '.join(classifier_names())}"
        ) from None
    return factory(seed)
