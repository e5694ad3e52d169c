"""
fockforce: weak-force detection with nonclassical oscillator states,
simulated in a truncated Fock space.

Sub-packages:
    numerics    special functions, matrix exponential, Hermite functions
    fock        mode operators and multi-mode state containers
    states      state-family constructors and JSON serialization
    metrology   quadrature sensitivity and estimation bounds
    sampling    seeded parity and homodyne Monte Carlo
    services    parameter sweeps
    cli         the `fockforce` command
"""

__version__ = "0.1.0"
