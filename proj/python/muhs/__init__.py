"""Pseudospectral laboratory for the periodic two-component
mu-Hunter-Saxton system.

The heavy lifting lives in the compiled extension ``_core``; this package
re-exports its surface.
"""

try:
    from ._core import *  # noqa: F401,F403  (wheel layout)
    from ._core import __doc__ as _core_doc
except ImportError:  # in-tree build: the extension sits on PYTHONPATH
    from _core import *  # type: ignore  # noqa: F401,F403
    from _core import __doc__ as _core_doc

__all__ = [
    "PeriodicGrid",
    "SpectralField",
    "derivative",
    "mean",
    "apply_pd",
    "helmholtz_inverse",
    "evaluate_offgrid",
    "dealias",
    "lp_norm",
    "besov_norm",
    "sobolev_norm",
    "block",
    "low_pass",
    "simulate",
    "flow_suite",
    "picard_suite",
    "execute_config",
    "ConfigError",
]
