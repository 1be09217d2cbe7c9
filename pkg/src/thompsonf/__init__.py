"""Executable autostackable structure of Thompson's group F.

Words are plain strings over ``x X y Y`` (capitals are inverses).  The
modules cover normal forms, the weight order on Cayley-graph edges, the flow
function, a bounded prefix-rewriting system, finite-state witnesses, filled
van Kampen box diagrams and an independent piecewise-linear oracle.
"""

from .normal_form import NormalForm, is_normal_form, nf, sigma_normalize
from .ordering import Edge, weight
from .words import format_word, parse

__version__ = "0.1.0"

__all__ = ["NormalForm", "Edge", "nf", "sigma_normalize", "is_normal_form", "weight", "parse", "format_word"]
