"""cocyclekit: exact Dedekind/Rademacher sums, the rational Godbillon-Vey
cocycle, higher-weight Eisenstein cocycles, and machinery that checks the
identities between them."""

__version__ = "0.1.0"
