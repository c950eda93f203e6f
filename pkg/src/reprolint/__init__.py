"""reprolint: quality linter for steps-to-reproduce in bug reports.

Extracts steps from free-form bug text, matches them against the execution
graph of a simulated GUI application, and emits per-step quality annotations
with inferred missing interactions.
"""

__version__ = "0.1.0"
