"""Separability toolkit for hypergraphs of elementary submodels.

Thin wrapper over the C++ core. Points are passed as @{...} literal
strings, formulas as concrete-syntax text, and structured results come
back as dicts mirroring the CLI's JSON shapes.
"""

try:
    from ._sepmod import *  # noqa: F401,F403  (installed layout)
    from ._sepmod import __doc__  # noqa: F401
except ImportError:  # in-tree builds put _sepmod next to the package
    from _sepmod import *  # noqa: F401,F403
    from _sepmod import __doc__  # noqa: F401
