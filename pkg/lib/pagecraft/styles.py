"""Paragraph styles shared by the report modules."""

from reportlab.lib.colors import HexColor
from reportlab.lib.enums import TA_CENTER
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet

HEADING_SIZES = {1: 20, 2: 15, 3: 12}


def default_styles():
    """Sample stylesheet plus the Report*, Grid* and Verdict* styles."""
    styles = getSampleStyleSheet()

    for level, size in HEADING_SIZES.items():
        styles.add(ParagraphStyle(
            f'ReportH{level}',
            parent=styles[f'Heading{level}'],
            fontSize=size,
            leading=size + 4,
            spaceBefore=4 if level > 1 else 0,
            spaceAfter=10 - 2 * level,
        ))
    styles.add(ParagraphStyle(
        'ReportBody',
        parent=styles['Normal'],
        fontSize=10,
        leading=14,
        spaceAfter=6,
    ))
    styles.add(ParagraphStyle(
        'ReportBullet',
        parent=styles['ReportBody'],
        leftIndent=18,
        spaceAfter=2,
    ))
    styles.add(ParagraphStyle(
        'ReportCode',
        parent=styles['Code'],
        fontSize=8,
        leading=10,
        backColor=HexColor('#F4F4F4'),
        borderPadding=4,
        spaceAfter=8,
    ))
    styles.add(ParagraphStyle(
        'GridTitle',
        parent=styles['Heading3'],
        alignment=TA_CENTER,
        spaceAfter=6,
    ))
    styles.add(ParagraphStyle(
        'GridCaption',
        parent=styles['Normal'],
        fontSize=8,
        alignment=TA_CENTER,
        textColor=HexColor('#555555'),
    ))
    styles.add(ParagraphStyle(
        'VerdictCell',
        parent=styles['Normal'],
        fontSize=9,
        leading=11,
    ))
    return styles
