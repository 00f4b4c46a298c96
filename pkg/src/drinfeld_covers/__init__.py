"""Rank-2 Drinfeld modules over F_q[T] and exhaustive checks of the group
theory behind the SL_2(A/I)/{+-1} covers of the affine line."""

__version__ = "0.1.0"
