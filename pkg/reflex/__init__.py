#!/usr/bin/python3
"""
reflex
init
"""

from ._version import __version__                                   #pylint: disable=relative-beyond-top-level
from . import utils                                                 #pylint: disable=relative-beyond-top-level
from . import linalg                                                #pylint: disable=relative-beyond-top-level
from . import numthy                                                #pylint: disable=relative-beyond-top-level
from . import weights                                               #pylint: disable=relative-beyond-top-level
from . import simplex                                               #pylint: disable=relative-beyond-top-level
from . import classify                                              #pylint: disable=relative-beyond-top-level
from . import verify                                                #pylint: disable=relative-beyond-top-level
from .utils import (ReflexError, PartitionError, WeightSystemError,  #pylint: disable=relative-beyond-top-level
                    SimplexError, LimitError, ClassificationError,
                    RecordFormatError, ReflexWarning)
from .numthy import (sylvester, sylvester_t, UnitPartition,          #pylint: disable=relative-beyond-top-level
                     enumerate_unit_partitions, check_kprop)
from .weights import (WeightSystem, partition_to_weights,            #pylint: disable=relative-beyond-top-level
                      weights_to_partition)
from .simplex import (LatticeSimplex, RationalSimplex, build_PQ,     #pylint: disable=relative-beyond-top-level
                      build_SQ, canonical_form)
from .classify import (ClassRecord, classify_weight_system,          #pylint: disable=relative-beyond-top-level
                       classify_dimension, save_classification, load_classification)
from .verify import TheoremVerdict                                  #pylint: disable=relative-beyond-top-level

__all__ = [
    # number theory and weights
    "sylvester",
    "sylvester_t",
    "UnitPartition",
    "enumerate_unit_partitions",
    "check_kprop",
    "WeightSystem",
    "partition_to_weights",
    "weights_to_partition",
    # simplices and their classification
    "LatticeSimplex",
    "RationalSimplex",
    "build_PQ",
    "build_SQ",
    "canonical_form",
    "ClassRecord",
    "classify_weight_system",
    "classify_dimension",
    "save_classification",
    "load_classification",
    "TheoremVerdict",
    # errors
    "ReflexError",
    "PartitionError",
    "WeightSystemError",
    "SimplexError",
    "LimitError",
    "ClassificationError",
    "RecordFormatError",
    "ReflexWarning",
    # modules
    "utils",
    "linalg",
    "numthy",
    "weights",
    "simplex",
    "classify",
    "verify", ]
