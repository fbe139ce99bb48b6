"""relcoh: exact-arithmetic relative group cohomology at desk scale.

Computes Takasu, Adamson and Bredon relative cohomology of group pairs and
families, classifies groups-with-operators by their equivariant
cohomological dimensions, and derives dimension facts with a rule engine
whose leaves are machine-checked finite computations.
"""

__version__ = "0.1.0"
