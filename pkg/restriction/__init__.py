from .named import NamedIndex, named_index_labels, parse_named_index
from .fiber import FiberCensus, FiberEnumeration, enumerate_fiber, fiber_census
from .service import RestrictionResult, restrict_eisenstein, restrict_ikeda, restrict_ikeda_vanishing

__all__ = [
    "NamedIndex",
    "named_index_labels",
    "parse_named_index",
    "FiberCensus",
    "FiberEnumeration",
    "enumerate_fiber",
    "fiber_census",
    "RestrictionResult",
    "restrict_eisenstein",
    "restrict_ikeda",
    "restrict_ikeda_vanishing",
]
