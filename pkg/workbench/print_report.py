#!/usr/bin/env python3
"""Render an eventual-positivity report as a PDF via PageCraft"""

import math
import sys
from pathlib import Path

# Add lib to path for PageCraft
sys.path.insert(0, str(Path(__file__).parent.parent / 'lib'))
sys.path.insert(0, str(Path(__file__).parent))

from pagecraft import PDFDocument
from engine.expr_parser import format_polynomial
from engine.report import summary_lines


def polygon_order(vertices):
    """Vertices of a convex polygon in counter-clockwise order."""
    if len(vertices) < 3:
        return [tuple(v) for v in vertices]
    cx = sum(v[0] for v in vertices) / len(vertices)
    cy = sum(v[1] for v in vertices) / len(vertices)
    return sorted((tuple(v) for v in vertices), key=lambda v: math.atan2(v[1] - cy, v[0] - cx))


def _detail(verdict):
    if verdict.certificate:
        return verdict.certificate
    if verdict.witness:
        keys = [k for k in ("cone", "ray", "value", "ratio") if k in verdict.witness]
        return ", ".join(f"{k}={verdict.witness[k]}" for k in keys)
    return f"{verdict.stats.get('samples', 0)} samples"


def lattice_grid_data(polynomial, vertices, title, caption=None):
    return {
        'title': title,
        'coefficients': {m: c for m, c in polynomial.items()},
        'vertices': polygon_order(vertices),
        'caption': caption,
    }


def create_report_pdf(report, variables, output_path=None):
    """Build the PDF; returns bytes when no output path is given."""
    doc = PDFDocument(title="Eventual positivity report")
    p = report.polynomial
    doc.add_markdown(f"""
# Eventual positivity report

```
p = {format_polynomial(p, variables)}
```

Newton polytope: {len(report.polytope.vertices)} vertices, {len(report.polytope.facets)} facets, smooth.

---
""")
    rows = [
        ("Fully positive", "CertifiedTrue" if report.fully_positive else "CounterexampleFound",
         "" if report.fully_positive else f"first failure at {list(report.fully_positive.first_failure)}"),
        ("Pos1", report.pos1.status.value, _detail(report.pos1)),
        ("Pos2", report.pos2.status.value, _detail(report.pos2)),
        ("Pos3", report.pos3.status.value, _detail(report.pos3)),
        ("Positive on orthant", report.orthant.status.value, _detail(report.orthant)),
    ]
    doc.add_verdict_table(rows)
    doc.add_markdown("## Summary\n" + "\n".join(f"- {line}" for line in summary_lines(report)))

    if p.n == 2:
        first = report.fully_positive.first_failure
        caption = f"first failure at exponent {list(first)}" if first else "all lattice points positive"
        doc.add_lattice_grid(lattice_grid_data(p, report.polytope.vertices, "Coefficient signs of p", caption))
        if report.k0.found:
            k = report.k0.k0
            power = p.pow(k)
            vertices = [tuple(k * x for x in v) for v in report.polytope.vertices]
            doc.add_lattice_grid(lattice_grid_data(power, vertices, f"Coefficient signs of p^{k}",
                                                   "first fully positive power"))

    if output_path is None:
        return doc.save_bytes()
    doc.save(output_path)
    print(f"✅ Report saved to {output_path}", file=sys.stderr)
    return None


if __name__ == "__main__":
    from engine.config import SamplerConfig
    from engine.families import family_polynomial
    from engine.positivity import analyze

    member = family_polynomial("plambda")
    print("🌟 Analyzing the plambda family at its default parameters...", file=sys.stderr)
    result = analyze(member.polynomial, SamplerConfig(sample_count=2000, restart_count=8))
    create_report_pdf(result, member.variables, "plambda_report.pdf")
