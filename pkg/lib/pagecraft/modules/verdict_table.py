"""Two-column table of checks and their outcomes.

Expected input format:
    [("Pos1", "CertifiedTrue", "vertex-values"), ("Pos3", "Inconclusive", ""), ...]
"""

from reportlab.lib.colors import HexColor, white
from reportlab.platypus import Paragraph, Spacer, Table, TableStyle

from . import Module

STATUS_COLORS = {
    'CertifiedTrue': HexColor('#DFF0E3'),
    'CounterexampleFound': HexColor('#F6DADD'),
    'Inconclusive': HexColor('#FFF4D6'),
}


class VerdictTableModule(Module):
    """Renders (check, status, detail) rows with status-coloured cells."""

    def render(self, data, styles, pagesize, **kwargs):
        cell = styles['VerdictCell']
        rows = [[Paragraph('<b>Check</b>', cell), Paragraph('<b>Outcome</b>', cell),
                 Paragraph('<b>Detail</b>', cell)]]
        commands = [
            ('GRID', (0, 0), (-1, -1), 0.4, HexColor('#999999')),
            ('BACKGROUND', (0, 0), (-1, 0), HexColor('#EEEEEE')),
            ('VALIGN', (0, 0), (-1, -1), 'TOP'),
        ]
        for i, (check, status, detail) in enumerate(data, start=1):
            rows.append([Paragraph(check, cell), Paragraph(status, cell),
                         Paragraph(detail or '', cell)])
            commands.append(('BACKGROUND', (1, i), (1, i), STATUS_COLORS.get(status, white)))
        width = pagesize[0] - kwargs.get('margin', 108)
        table = Table(rows, colWidths=[0.25 * width, 0.25 * width, 0.5 * width])
        table.setStyle(TableStyle(commands))
        return [table, Spacer(1, 10)]
