"""Markdown subset for report text.

Headings (#, ##, ###; deeper levels render as ###), paragraphs, bullet
lists, fenced code blocks and horizontal rules. Inline: `code`, **bold**
and *italic*.
"""

import re
from xml.sax.saxutils import escape

from reportlab.lib.colors import HexColor
from reportlab.platypus import HRFlowable, Paragraph, Preformatted

from . import Module

_HEADING = re.compile(r'^(#{1,6})\s+(.+)$')
_BULLET = re.compile(r'^[-*+]\s+(.+)$')
_RULE = re.compile(r'^(-{3,}|\*{3,}|_{3,})$')
_INLINE = [
    (re.compile(r'`([^`]+)`'), r'<font face="Courier">\1</font>'),
    (re.compile(r'\*\*(.+?)\*\*'), r'<b>\1</b>'),
    (re.compile(r'(?<![\w*])\*(?!\*)(.+?)(?<!\*)\*(?![\w*])'), r'<i>\1</i>'),
]


def inline_markup(text):
    """Escape XML and translate inline markdown into reportlab paragraph markup."""
    text = escape(text)
    for pattern, replacement in _INLINE:
        text = pattern.sub(replacement, text)
    return text


def iter_blocks(text):
    """Yield (kind, payload) pairs: heading (level, text), para, bullets, code, rule."""
    para, bullets, code = [], [], None
    for raw in text.split('\n'):
        line = raw.strip()
        if code is not None:
            if line.startswith('```'):
                yield 'code', '\n'.join(code)
                code = None
            else:
                code.append(raw.rstrip())
            continue
        match = _BULLET.match(line)
        if para and (not line or line.startswith(('#', '```')) or match or _RULE.match(line)):
            yield 'para', ' '.join(para)
            para = []
        if bullets and not match:
            yield 'bullets', bullets
            bullets = []
        if not line:
            continue
        if line.startswith('```'):
            code = []
        elif _RULE.match(line):
            yield 'rule', None
        elif _HEADING.match(line):
            hashes, title = _HEADING.match(line).groups()
            yield 'heading', (min(len(hashes), 3), title)
        elif match:
            bullets.append(match.group(1))
        else:
            para.append(line)
    if code is not None:
        yield 'code', '\n'.join(code)
    if para:
        yield 'para', ' '.join(para)
    if bullets:
        yield 'bullets', bullets


class MarkdownModule(Module):
    """Renders the markdown subset into flowables."""

    def render(self, data, styles, pagesize, **kwargs):
        flowables = []
        for kind, payload in iter_blocks(data):
            if kind == 'heading':
                level, title = payload
                flowables.append(Paragraph(inline_markup(title), styles[f'ReportH{level}']))
            elif kind == 'para':
                flowables.append(Paragraph(inline_markup(payload), styles['ReportBody']))
            elif kind == 'bullets':
                flowables.extend(
                    Paragraph(f'•  {inline_markup(item)}', styles['ReportBullet'])
                    for item in payload
                )
            elif kind == 'code':
                flowables.append(Preformatted(payload, styles['ReportCode']))
            elif kind == 'rule':
                flowables.append(HRFlowable(width='100%', thickness=0.8,
                                            color=HexColor('#BBBBBB'),
                                            spaceBefore=4, spaceAfter=6))
        return flowables
