"""Pagecraft - modular PDF reports on top of reportlab.

    from pagecraft import PDFDocument

    doc = PDFDocument()
    doc.add_markdown("# Report\\nSome **bold** text.")
    doc.add_lattice_grid({"coefficients": {(0, 0): 1, (1, 0): -1}, "vertices": [(0, 0), (1, 0)]})
    doc.save("report.pdf")
"""

from .document import PDFDocument
from .modules import Module

__all__ = ["PDFDocument", "Module"]
__version__ = "0.2.0"
