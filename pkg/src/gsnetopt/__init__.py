"""gsnetopt: ground station network selection for LEO missions.

Computes satellite-to-station contact windows over a surrogate
simulation window, formulates provider/station selection as an integer
program (minimum mission cost, maximum data downlink, or minimum
maximum contact gap), solves it exactly at desk scale with an embedded
branch-and-bound solver, and benchmarks the optimum against one- and
two-provider baselines.
"""

__version__ = "0.1.0"
