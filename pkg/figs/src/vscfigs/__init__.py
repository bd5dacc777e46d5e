"""Publication-style figures from the vsckin simulation CSVs.

Everything here consumes only the documented file formats
(``rates.csv``, ``eigen_stats.csv``, ``eyring.csv``); the simulation
package itself is never imported.  Figures are regenerated artifacts:
rendering is a pure function of the table contents and the figure
spec, and rerenders are byte-identical.
"""

from .render import render
from .schemas import KINDS, FigureSpec, SchemaError, load_inputs, load_table

__all__ = [
    "FigureSpec",
    "KINDS",
    "SchemaError",
    "load_inputs",
    "load_table",
    "render",
]

__version__ = "0.1.0"
