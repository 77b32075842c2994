"""Extended edit distance for symbolic sequences, with a SAX time-series pipeline."""

from .dataset import LabeledDataset, LabeledSeries, load_ucr, synthetic_strings, write_ucr
from .evaluation import (
    EvalReport,
    MetricKind,
    MetricSpec,
    NearestNeighborClassifier,
    TuneReport,
    evaluate,
    grid_search,
    loocv_error,
    nn1_classify,
    summarize,
)
from .metricindex import MetricIndex
from .sax import SAXTransformer, SaxParams, SaxWord, gaussian_breakpoints, mindist, paa, symbolize, z_normalize
from .seqdist import (
    EedParams,
    FrequencyHistogram,
    SymbolicSequence,
    char_histogram,
    distinct_char_count,
    edit_distance,
    eed,
    histogram_divergence,
    lcss,
)
from .validation import InvalidParameterError, NotAMetricError, ParseError

__version__ = "0.1.0"
