"""tutorkit: a single-neuron learning simulator, seeded cohort experiments,
descriptive mark statistics, a long-division step engine, and a tutoring
session service that ties them together."""

from . import cohort, dataset, longdiv, neuron, stats

__all__ = ["cohort", "dataset", "longdiv", "neuron", "stats"]
__version__ = "0.1.0"
