"""Finite enriched category workbench.

Represent finite monoidal bases and enrichments over them, decide coherence
and enrichment laws by exhaustive diagram checking, and run the standard
constructions: image factorization, weak-equivalence inversion, desk-scale
Rezk completion, and enriched Kleisli / Eilenberg-Moore objects.
"""

__version__ = "0.1.0"
