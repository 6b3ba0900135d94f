"""Self-contained HTML heatmaps for single responses.

Two panels: per-token entropy on a green -> yellow -> red gradient over
[0, H_cap] with H_cap = max(trajectory max, 1 nat), and per-token spike status
(none -> light green, single type -> yellow, both -> orange). The footer
carries EDIS, mean entropy, and spike counts both as display text and as
machine-readable data attributes holding full-precision reprs.
"""

from __future__ import annotations

import html
from pathlib import Path

from .errors import MissingTokenTextError
from .spikes import (
    DEFAULT_SPIKE_CONFIG,
    SpikeConfig,
    SpikeStatus,
    edis,
    simple_diff_spike_count,
    spike_report,
)
from .trajectory import ResponseRecord, entropy_variance, mean_entropy

STATUS_COLORS = {
    SpikeStatus.NONE: "#ccffcc",
    SpikeStatus.BURST_ONLY: "#ffff66",
    SpikeStatus.REBOUND_ONLY: "#ffff66",
    SpikeStatus.BOTH: "#ffb347",
}

_PAGE = """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>entropy heatmap: {title}</title>
<style>
body {{ font-family: monospace; margin: 1.5em; }}
.panel {{ margin-bottom: 1em; line-height: 2.1; }}
.tok {{ padding: 2px 3px; border-radius: 3px; }}
footer {{ margin-top: 1em; border-top: 1px solid #999; padding-top: 0.5em; }}
</style>
</head>
<body>
<h1>{title}</h1>
<h2>entropy</h2>
<div class="panel" id="entropy-panel">{entropy_panel}</div>
<h2>spike status</h2>
<div class="panel" id="status-panel">{status_panel}</div>
{footer}
</body>
</html>
"""


def entropy_color(value: float, cap: float) -> str:
    """Gradient color: green at 0, yellow at cap/2, red at cap."""
    x = min(max(value / cap, 0.0), 1.0)
    if x <= 0.5:
        # green (0, 200, 0) -> yellow (255, 255, 0)
        f = x / 0.5
        r = round(255 * f)
        g = round(200 + 55 * f)
    else:
        # yellow (255, 255, 0) -> red (255, 0, 0)
        f = (x - 0.5) / 0.5
        r = 255
        g = round(255 * (1.0 - f))
    return f"#{r:02x}{g:02x}00"


def render_heatmap_html(
    resp: ResponseRecord, cfg: SpikeConfig = DEFAULT_SPIKE_CONFIG
) -> str:
    """Render one response to a standalone HTML document.

    Raises:
        MissingTokenTextError: any step lacks token text.
    """
    steps = resp.trajectory.steps
    for step in steps:
        if step.token_text is None:
            raise MissingTokenTextError(
                f"step {step.position} of response {resp.response_id} has no token text"
            )
    report = spike_report(resp.trajectory, cfg)
    cap = max(max(resp.trajectory.entropies), 1.0)
    entropy_cells = []
    status_cells = []
    for step, status in zip(steps, report.per_token_status):
        text = html.escape(step.token_text)
        entropy_cells.append(
            f'<span class="tok" style="background:{entropy_color(step.entropy, cap)}" '
            f'title="H={step.entropy:.4f}">{text}</span>'
        )
        status_cells.append(
            f'<span class="tok" style="background:{STATUS_COLORS[status]}" '
            f'title="{status.value}">{text}</span>'
        )
    score = edis(resp.trajectory, cfg)
    mean = mean_entropy(resp.trajectory)
    variance = entropy_variance(resp.trajectory)
    diff = simple_diff_spike_count(resp.trajectory, cfg)
    footer = (
        f'<footer data-edis="{score!r}" data-mean-entropy="{mean!r}" '
        f'data-entropy-variance="{variance!r}" data-burst-count="{report.burst_count}" '
        f'data-rebound-count="{report.rebound_count}" data-diff-count="{diff}">'
        f"EDIS {score:.6f} | mean entropy {mean:.6f} | variance {variance:.6f} | "
        f"burst {report.burst_count} | rebound {report.rebound_count} | "
        f"diff {diff}</footer>"
    )
    title = html.escape(f"{resp.prompt_id}/{resp.response_id}")
    return _PAGE.format(
        title=title,
        entropy_panel="".join(entropy_cells),
        status_panel="".join(status_cells),
        footer=footer,
    )


def export_heatmap(
    resp: ResponseRecord,
    cfg: SpikeConfig = DEFAULT_SPIKE_CONFIG,
    out_path: str | Path = "heatmap.html",
) -> Path:
    """Write the rendered document to out_path and return the path."""
    path = Path(out_path)
    path.write_text(render_heatmap_html(resp, cfg), encoding="utf-8")
    return path
