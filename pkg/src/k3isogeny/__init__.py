"""Exact verification toolkit for 2-isogenies of elliptic K3 surfaces.

Sub-modules: ``exact`` (rationals and univariate polynomials), ``symbolic``
(multivariate identities on curves), ``isogeny``, ``fibration``,
``families``, ``chl`` and ``cli``.
"""

__version__ = "0.1.0"
