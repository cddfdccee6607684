"""Exact arithmetic tools for specializing covers of the projective line.

Given P(T, Y) defining a finite extension of Q(T), the package finds branch
points with their inertia, plans arithmetic progressions of specializations
t0 whose number fields have prescribed local behaviour, and verifies the
resulting fields.
"""

__version__ = "0.1.0"
