"""Logic on sparse random graphs G(n, c/n).

Sampling, brute-force FO/MSO model checking, local limit laws, equivalence
signatures, a subcritical decision procedure, arithmetized hub graphs, and
the second-moment recurrence apparatus, all seeded and reproducible.
"""

__version__ = "0.1.0"

from .graphs import Graph, GnpParams, sample_gnp, components, ball, cycle_census

__all__ = [
    "Graph",
    "GnpParams",
    "sample_gnp",
    "components",
    "ball",
    "cycle_census",
    "__version__",
]
