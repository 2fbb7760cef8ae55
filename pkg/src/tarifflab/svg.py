"""Minimal deterministic SVG charts: scatter, bar, grouped bar and line plots."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#d62728", "#8c564b", "#e377c2", "#7f7f7f")


def _f(v: float) -> str:
    return f"{v:.2f}"


def nice_ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    start = math.ceil(lo / step - 1e-9) * step
    ticks = []
    v = start
    while v <= hi + 1e-9 * step:
        ticks.append(round(v, 10))
        v += step
    return ticks


def _fmt_tick(v: float) -> str:
    return f"{v:g}"


class Axis:
    def __init__(self, lo, hi, start, end, log=False):
        if log:
            if lo <= 0 or hi <= 0:
                raise ValueError("log axis needs positive bounds")
            lo, hi = math.log10(lo), math.log10(hi)
        if hi == lo:
            lo, hi = lo - 0.5, hi + 0.5
        self.lo, self.hi, self.start, self.end, self.log = lo, hi, start, end, log

    def __call__(self, v):
        if self.log:
            v = math.log10(v)
        return self.start + (v - self.lo) / (self.hi - self.lo) * (self.end - self.start)

    def ticks(self):
        if self.log:
            return [10.0 ** e for e in range(math.floor(self.lo), math.ceil(self.hi) + 1)
                    if self.lo - 1e-9 <= e <= self.hi + 1e-9]
        return [t for t in nice_ticks(self.lo, self.hi) if self.lo - 1e-9 <= t <= self.hi + 1e-9]


class Canvas:
    """Accumulates SVG elements; ``render`` returns the document text."""

    def __init__(self, width=720, height=480, margin=(50, 150, 60, 70)):
        self.width, self.height = width, height
        self.top, self.right, self.bottom, self.left = margin
        self.parts: list[str] = []

    @property
    def plot_box(self):
        return self.left, self.top, self.width - self.right, self.height - self.bottom

    def add(self, element: str):
        self.parts.append(element)

    def line(self, x1, y1, x2, y2, stroke="#000", width=1.0, dash=None):
        d = f' stroke-dasharray="{dash}"' if dash else ""
        self.add(f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
                 f'stroke="{stroke}" stroke-width="{width:g}"{d}/>')

    def circle(self, cx, cy, r=4, fill="#1f77b4", title=None):
        t = f"<title>{escape(title)}</title>" if title else ""
        self.add(f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{r:g}" fill="{fill}">{t}</circle>')

    def rect(self, x, y, w, h, fill="#1f77b4", title=None):
        t = f"<title>{escape(title)}</title>" if title else ""
        self.add(f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(w)}" height="{_f(h)}" fill="{fill}">{t}</rect>')

    def polyline(self, pts, stroke="#000", width=1.5, dash=None):
        d = f' stroke-dasharray="{dash}"' if dash else ""
        coords = " ".join(f"{_f(x)},{_f(y)}" for x, y in pts)
        self.add(f'<polyline points="{coords}" fill="none" stroke="{stroke}" stroke-width="{width:g}"{d}/>')

    def polygon(self, pts, stroke="#000", fill="none", opacity=0.2):
        coords = " ".join(f"{_f(x)},{_f(y)}" for x, y in pts)
        self.add(f'<polygon points="{coords}" fill="{fill}" fill-opacity="{opacity:g}" '
                 f'stroke="{stroke}" stroke-width="1.5"/>')

    def text(self, x, y, s, size=12, anchor="start", rotate=None, fill="#000"):
        r = f' transform="rotate({rotate} {_f(x)} {_f(y)})"' if rotate is not None else ""
        self.add(f'<text x="{_f(x)}" y="{_f(y)}" font-size="{size}" text-anchor="{anchor}" '
                 f'fill="{fill}" font-family="sans-serif"{r}>{escape(str(s))}</text>')

    def axes(self, xaxis: Axis, yaxis: Axis, title="", xlabel="", ylabel="", xticks=True):
        x0, y0, x1, y1 = self.plot_box
        self.line(x0, y1, x1, y1)
        self.line(x0, y0, x0, y1)
        if xticks:
            for t in xaxis.ticks():
                px = xaxis(t)
                self.line(px, y1, px, y1 + 5)
                self.text(px, y1 + 18, _fmt_tick(t), size=10, anchor="middle")
        for t in yaxis.ticks():
            py = yaxis(t)
            self.line(x0 - 5, py, x0, py)
            self.line(x0, py, x1, py, stroke="#ddd", width=0.5)
            self.text(x0 - 8, py + 4, _fmt_tick(t), size=10, anchor="end")
        if title:
            self.text(self.width / 2, y0 - 20, title, size=14, anchor="middle")
        if xlabel:
            self.text((x0 + x1) / 2, self.height - 15, xlabel, anchor="middle")
        if ylabel:
            self.text(18, (y0 + y1) / 2, ylabel, anchor="middle", rotate=-90)

    def legend(self, entries):
        """``entries`` is a list of (label, colour, kind) with kind in {"dot", "line", "dash", "box"}."""
        x = self.width - self.right + 15
        y = self.top + 10
        for label, colour, kind in entries:
            if kind == "dot":
                self.circle(x + 6, y - 4, 4, fill=colour)
            elif kind in ("line", "dash"):
                self.line(x, y - 4, x + 14, y - 4, stroke=colour, width=2, dash="5,3" if kind == "dash" else None)
            else:
                self.rect(x, y - 10, 12, 10, fill=colour)
            self.text(x + 20, y, label, size=11)
            y += 18

    def render(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.width}" height="{self.height}" '
                f'viewBox="0 0 {self.width} {self.height}">')
        body = "\n".join(self.parts)
        return f'<?xml version="1.0" encoding="UTF-8"?>\n{head}\n<rect width="100%" height="100%" fill="#fff"/>\n{body}\n</svg>\n'


def _pad(lo, hi, frac=0.05):
    span = hi - lo if hi > lo else (abs(hi) or 1.0)
    return lo - frac * span, hi + frac * span


def scatter_chart(points, title="", xlabel="", ylabel="", lines=(), log_y=False, log_x=False) -> str:
    """Labelled scatter. ``points`` are (label, x, y); ``lines`` are
    (slope, intercept, colour, dash, legend label) drawn across the x range."""
    c = Canvas()
    xs = [p[1] for p in points]
    ys = [p[2] for p in points]
    if log_x:
        xaxis = Axis(min(xs) / 1.5, max(xs) * 1.5, c.plot_box[0], c.plot_box[2], log=True)
    else:
        xlo, xhi = _pad(min(0.0, min(xs)), max(xs))
        xaxis = Axis(xlo, xhi, c.plot_box[0], c.plot_box[2])
    if log_y:
        yaxis = Axis(min(ys) / 1.5, max(ys) * 1.5, c.plot_box[3], c.plot_box[1], log=True)
    else:
        line_ys = [s * x + b for s, b, *_ in lines for x in (xaxis.lo, xaxis.hi)]
        ylo, yhi = _pad(min([0.0] + ys + line_ys), max(ys + line_ys))
        yaxis = Axis(ylo, yhi, c.plot_box[3], c.plot_box[1])
    c.axes(xaxis, yaxis, title, xlabel, ylabel)
    entries = []
    for slope, intercept, colour, dash, label in lines:
        xa, xb = (10 ** xaxis.lo, 10 ** xaxis.hi) if log_x else (xaxis.lo, xaxis.hi)
        c.line(xaxis(xa), yaxis(slope * xa + intercept), xaxis(xb), yaxis(slope * xb + intercept),
               stroke=colour, width=1.5, dash="6,4" if dash else None)
        entries.append((label, colour, "dash" if dash else "line"))
    for label, x, y in points:
        c.circle(xaxis(x), yaxis(y), fill=PALETTE[0], title=f"{label}: ({x:g}, {y:g})")
        c.text(xaxis(x) + 6, yaxis(y) - 6, label, size=9)
    if entries:
        c.legend(entries)
    return c.render()


def cluster_chart(groups, title="", xlabel="", ylabel="") -> str:
    """``groups`` is a list of (legend label, [(name, x, y)], hull vertices)."""
    c = Canvas()
    xs = [x for _, pts, _ in groups for _, x, _ in pts]
    ys = [y for _, pts, _ in groups for _, _, y in pts]
    xaxis = Axis(*_pad(min(xs), max(xs)), c.plot_box[0], c.plot_box[2])
    yaxis = Axis(*_pad(min(ys), max(ys)), c.plot_box[3], c.plot_box[1])
    c.axes(xaxis, yaxis, title, xlabel, ylabel)
    entries = []
    for i, (label, pts, hull) in enumerate(groups):
        colour = PALETTE[i % len(PALETTE)]
        if len(hull) >= 3:
            c.polygon([(xaxis(x), yaxis(y)) for x, y in hull], stroke=colour, fill=colour)
        elif len(hull) == 2:
            c.polyline([(xaxis(x), yaxis(y)) for x, y in hull], stroke=colour)
        for name, x, y in pts:
            c.circle(xaxis(x), yaxis(y), fill=colour, title=f"{name}: ({x:g}, {y:g})")
            c.text(xaxis(x) + 6, yaxis(y) - 6, name, size=9)
        entries.append((label, colour, "dot"))
    c.legend(entries)
    return c.render()


def bar_chart(categories, series, title="", ylabel="", reference=None) -> str:
    """Grouped bars. ``series`` is a list of (legend label, values).

    ``reference`` is an optional (value, label) drawn as a dashed red line.
    """
    c = Canvas()
    x0, y0, x1, y1 = c.plot_box
    values = [v for _, vals in series for v in vals]
    top = max(values + ([reference[0]] if reference else []))
    yaxis = Axis(0.0, top * 1.1 if top > 0 else 1.0, y1, y0)
    c.axes(Axis(0, 1, x0, x1), yaxis, title, "", ylabel, xticks=False)
    slot = (x1 - x0) / max(1, len(categories))
    bar = slot * 0.8 / max(1, len(series))
    entries = []
    for s, (label, vals) in enumerate(series):
        colour = PALETTE[s % len(PALETTE)]
        for i, v in enumerate(vals):
            bx = x0 + i * slot + slot * 0.1 + s * bar
            c.rect(bx, yaxis(v), bar, yaxis(0) - yaxis(v), fill=colour, title=f"{categories[i]}: {v:.1f}")
        entries.append((label, colour, "box"))
    for i, name in enumerate(categories):
        cx = x0 + (i + 0.5) * slot
        c.text(cx, y1 + 15, name, size=10, anchor="end", rotate=-30)
    if reference is not None:
        value, label = reference
        c.line(x0, yaxis(value), x1, yaxis(value), stroke="#d62728", width=1.5, dash="6,4")
        entries.append((label, "#d62728", "dash"))
    if len(entries) > 1 or reference is not None:
        c.legend(entries)
    return c.render()


def line_chart(xs, series, title="", xlabel="", ylabel="") -> str:
    """``series`` is a list of (legend label, values aligned with xs)."""
    c = Canvas()
    ys = [v for _, vals in series for v in vals]
    xaxis = Axis(min(xs), max(xs), c.plot_box[0], c.plot_box[2])
    yaxis = Axis(*_pad(min(0.0, min(ys)), max(ys)), c.plot_box[3], c.plot_box[1])
    c.axes(xaxis, yaxis, title, xlabel, ylabel)
    entries = []
    for i, (label, vals) in enumerate(series):
        colour = PALETTE[i % len(PALETTE)]
        c.polyline([(xaxis(x), yaxis(v)) for x, v in zip(xs, vals)], stroke=colour)
        entries.append((label, colour, "line"))
    c.legend(entries)
    return c.render()
