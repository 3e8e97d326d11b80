"""Exact computations with quadratic form parameters over the integers:
classification, extended quadratic forms, and Witt / Grothendieck-Witt
groups with complete invariants.

The usual entry points:

>>> from qwitt.formparam import standard, split_sum, classify
>>> from qwitt.witt import witt_group, witt_class
>>> witt_group(standard("ZP_3")).canonical_orders()
(4, 0)
"""

__version__ = "0.1.0"
