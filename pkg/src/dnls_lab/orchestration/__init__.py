"""Data generators and experiment dispatch.

The runner lives in dnls_lab.orchestration.runner; it is not re-exported here because
the experiments import the generators from this package.
"""

from dnls_lab.orchestration.generators import boundary_trace, initial_field, make_rng

__all__ = ["initial_field", "boundary_trace", "make_rng"]
