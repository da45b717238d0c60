"""Exact-arithmetic verifier for the tripartite-coloring triangle bound g_3(n).

Subpackages and modules:

- numbers: exact integer sequences (bip, g_k, T, d, d-tilde, Delta_max)
- fmin: the composition cross-product minimum F(A, B, C) and its grid oracle
- admissible, emptiness: the certified-emptiness pipeline for one (n, Delta, P) gate
- smallcases: degree-sequence arithmetic for n in {13, 14, 16, 17}
- oracle: explicit colorings, brute force and randomized lemma checks
- highk: numeric conditions for uniformities k >= 7
- driver: escalation ladder, batch runs and certificate files
"""

from .core.version import CERTIFICATE_VERSION, __version__

__all__ = ["CERTIFICATE_VERSION", "__version__"]
