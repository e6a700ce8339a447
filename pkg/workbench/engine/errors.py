"""Exception hierarchy for the eventual-positivity workbench.

Everything derived from InputRejected is a problem with the user's input
(the CLI maps it to exit code 2). The remaining errors are computational.
"""

from typing import Dict, Optional, Sequence, Tuple


class WorkbenchError(Exception):
    """Base class for all workbench errors."""

    kind = "error"

    def to_dict(self) -> Dict:
        return {"kind": self.kind, "message": str(self)}


class InputRejected(WorkbenchError, ValueError):
    """The input cannot be analyzed as given."""

    kind = "input_rejected"


class ParseError(InputRejected):
    """Syntax error in a polynomial expression, positioned by character offset."""

    kind = "parse_error"

    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.text = text

    def to_dict(self) -> Dict:
        data = super().to_dict()
        data["offset"] = self.offset
        return data


class DimensionMismatchError(InputRejected):
    kind = "dimension_mismatch"


class ZeroPolynomialError(InputRejected):
    kind = "zero_polynomial"


class NotFullDimensionalError(InputRejected):
    """The Newton polytope has affine dimension below the number of variables."""

    kind = "not_full_dimensional"

    def __init__(self, dimension: int, ambient: int):
        super().__init__(f"affine dimension {dimension} < {ambient}")
        self.dimension = dimension
        self.ambient = ambient

    def to_dict(self) -> Dict:
        data = super().to_dict()
        data.update({"dimension": self.dimension, "ambient": self.ambient})
        return data


class NonSmoothError(InputRejected):
    """A vertex whose primitive edge directions do not form a lattice basis."""

    kind = "non_smooth"

    def __init__(self, vertex: Tuple[int, ...], det: Optional[int], edge_count: int):
        if det is None:
            detail = f"{edge_count} edges meet there"
        else:
            detail = f"edge determinant {det}"
        super().__init__(f"polytope is not smooth at vertex {tuple(vertex)}: {detail}")
        self.vertex = tuple(vertex)
        self.det = det
        self.edge_count = edge_count

    def to_dict(self) -> Dict:
        data = super().to_dict()
        data.update({"vertex": list(self.vertex), "det": self.det,
                     "edge_count": self.edge_count})
        return data


class FanMismatchError(InputRejected):
    kind = "fan_mismatch"


class NotAPolynomialError(InputRejected):
    """A value that must be an ordinary polynomial has negative exponents."""

    kind = "not_a_polynomial"


class MatrixEntryError(InputRejected):
    """A matrix entry outside Z+[x]: negative exponent or non natural coefficient."""

    kind = "matrix_entry"

    def __init__(self, message: str, row: int, col: int):
        super().__init__(f"entry ({row}, {col}): {message}")
        self.row = row
        self.col = col

    def to_dict(self) -> Dict:
        data = super().to_dict()
        data.update({"row": self.row, "col": self.col})
        return data


class ConfigError(InputRejected):
    kind = "config"


class EvaluationError(WorkbenchError, ArithmeticError):
    """Zero raised to a negative power, or a non-positive value where log is needed."""

    kind = "evaluation"


class ChartError(WorkbenchError):
    """A point cannot be normalized into the requested chart."""

    kind = "chart"


class TorsionError(WorkbenchError):
    """The class group of the fan has torsion, so G is not connected."""

    kind = "torsion"

    def __init__(self, invariants: Sequence[int]):
        super().__init__(f"class group has torsion; invariant factors {list(invariants)}")
        self.invariants = list(invariants)


class SpectralRadiusError(WorkbenchError):
    """Power iteration did not converge; carries the Gershgorin enclosure."""

    kind = "spectral_radius"

    def __init__(self, message: str, lower: float, upper: float):
        super().__init__(f"{message} (Gershgorin bounds [{lower:.6g}, {upper:.6g}])")
        self.lower = lower
        self.upper = upper

    def to_dict(self) -> Dict:
        data = super().to_dict()
        data.update({"lower": self.lower, "upper": self.upper})
        return data
