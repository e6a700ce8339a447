"""PDFDocument: collects flowables from modules and renders them with reportlab."""

import io

from reportlab.lib.pagesizes import LETTER
from reportlab.lib.units import inch
from reportlab.platypus import PageBreak, SimpleDocTemplate, Spacer

from .modules import ModuleRegistry
from .styles import default_styles


class PDFDocument:
    """Report builder.

    Usage:
        doc = PDFDocument(title="Eventual positivity")
        doc.add_markdown("# Summary\\n- Pos1: CertifiedTrue")
        doc.add_verdict_table([("Pos1", "CertifiedTrue", "vertex-values")])
        doc.add_lattice_grid({"coefficients": {...}, "vertices": [...]})
        doc.save("report.pdf")
    """

    def __init__(self, pagesize=LETTER, margin=0.75 * inch, title=None):
        self.pagesize = pagesize
        self.margin = margin
        self.title = title
        self.styles = default_styles()
        self.content = []
        self._registry = ModuleRegistry()
        self._register_builtins()

    def _register_builtins(self):
        from .modules.lattice_grid import LatticeGridModule
        from .modules.markdown import MarkdownModule
        from .modules.verdict_table import VerdictTableModule

        self._registry.register('markdown', MarkdownModule())
        self._registry.register('lattice_grid', LatticeGridModule())
        self._registry.register('verdict_table', VerdictTableModule())

    @property
    def modules(self):
        return self._registry.names()

    def register_module(self, name, module):
        self._registry.register(name, module)

    def add(self, module_name, data, **kwargs):
        """Render ``data`` with the named module and append the result."""
        kwargs.setdefault('margin', 2 * self.margin)
        module = self._registry.get(module_name)
        self.content.extend(module.render(data, self.styles, self.pagesize, **kwargs))

    def add_markdown(self, text, **kwargs):
        self.add('markdown', text, **kwargs)

    def add_lattice_grid(self, grid, **kwargs):
        self.add('lattice_grid', grid, **kwargs)

    def add_verdict_table(self, rows, **kwargs):
        self.add('verdict_table', rows, **kwargs)

    def add_spacer(self, height=0.2 * inch):
        self.content.append(Spacer(1, height))

    def add_page_break(self):
        self.content.append(PageBreak())

    def _build(self, target):
        template = SimpleDocTemplate(
            target,
            pagesize=self.pagesize,
            topMargin=self.margin,
            bottomMargin=self.margin,
            leftMargin=self.margin,
            rightMargin=self.margin,
            title=self.title or '',
        )
        template.build(list(self.content))

    def save(self, filename):
        self._build(str(filename))

    def save_bytes(self):
        buf = io.BytesIO()
        self._build(buf)
        return buf.getvalue()
