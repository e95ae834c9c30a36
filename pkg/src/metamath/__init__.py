"""Workbench for small-scale algorithmic information theory.

Submodules:

- ``sexpr``, ``lisp``: reader/printer and evaluator for a tiny LISP dialect
- ``codec``: self-delimiting binary codes
- ``machine``: a prefix-free toy machine with an exact halting decider
- ``omega``: halting probability of that machine
- ``complexity``: program-size complexity and elegant programs
- ``diophantine``: binomial parity and subtraction-free equations
- ``constants``: certified digit streams and elementary number theory
- ``normality``: block-frequency statistics
"""

__version__ = "0.1.0"
