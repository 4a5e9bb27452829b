"""Certified lower bounds for the topological complexity of aspherical groups.

The central criterion: if A and B are subgroups of G whose conjugates
intersect trivially (gAg^-1 meets B only in 1, for every g), then
TC(G) >= chd(A x B).  This package mechanizes the checkable parts of
that criterion for several decidable group classes (right-angled Artin
groups, pure braid groups, link groups, amalgams) and assembles the
results into bound reports with explicit certificates.
"""

__version__ = "0.1.0"
