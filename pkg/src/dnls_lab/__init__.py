"""dnls-lab: pseudospectral simulation and verification of the derivative NLS family."""

__version__ = "0.1.0"

from dnls_lab.core import Field, GridSpec, SolutionHistory, TimeTrace, make_grid
from dnls_lab.errors import DnlsLabError
from dnls_lab.evolution import EquationForm
from dnls_lab.models import RunConfig

__all__ = [
    "__version__",
    "GridSpec",
    "make_grid",
    "Field",
    "TimeTrace",
    "SolutionHistory",
    "EquationForm",
    "RunConfig",
    "DnlsLabError",
]
