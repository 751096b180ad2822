"""Plain-text serialization of :class:`~dualmark.watermark.SideInfo`.

Grammar (one item per line, ``#`` lines ignored)::

    dualmark-sideinfo 1
    alpha=<float>
    beta=<float>
    primary_wavelet=haar|db4
    primary_levels=<int>
    host_wavelet=haar|db4
    host_levels=<int>
    stage primary|host
    image_shape=<rows>x<cols>
    pad=<rows>x<cols>
    payload_shape=<rows>x<cols>
    split_payload=0|1
    matrix <name> <rows> <cols>      followed by <rows> lines of <cols> values
    vector <name> <length>           followed by one line of <length> values
    end

Matrix names are ``u.<band>`` and ``v.<band>``, vector names ``s.<band>``
with ``<band>`` one of ``ll lh hl hh``. Each stage block closes with
``end``; the primary stage comes first. Floats are written with 17
significant digits so they round-trip exactly.
"""

import numpy as np

from .watermark import BANDS, EmbedParams, SideInfo, StageInfo
from .wavelet import WaveletKind

MAGIC = "dualmark-sideinfo 1"


def _fmt(x):
    return format(float(x), ".17g")


def _shape(text):
    rows, cols = text.split("x")
    return int(rows), int(cols)


def format_sideinfo(info: SideInfo) -> str:
    p = info.params
    lines = [
        MAGIC,
        f"alpha={_fmt(p.alpha)}",
        f"beta={_fmt(p.beta)}",
        f"primary_wavelet={p.primary_wavelet.value}",
        f"primary_levels={p.primary_levels}",
        f"host_wavelet={p.host_wavelet.value}",
        f"host_levels={p.host_levels}",
    ]
    for label, stage in (("primary", info.primary_stage), ("host", info.host_stage)):
        lines += [
            f"stage {label}",
            "image_shape={}x{}".format(*stage.image_shape),
            "pad={}x{}".format(*stage.pad),
            "payload_shape={}x{}".format(*stage.payload_shape),
            f"split_payload={int(stage.split_payload)}",
        ]
        for band in BANDS:
            for prefix, m in (("u", stage.payload_u[band]), ("v", stage.payload_v[band])):
                lines.append(f"matrix {prefix}.{band} {m.shape[0]} {m.shape[1]}")
                lines += [" ".join(_fmt(x) for x in row) for row in m]
            s = stage.reference_s[band]
            lines.append(f"vector s.{band} {s.size}")
            lines.append(" ".join(_fmt(x) for x in s))
        lines.append("end")
    return "\n".join(lines) + "\n"


class _Lines:
    def __init__(self, text):
        self.items = [(n, ln.strip()) for n, ln in enumerate(text.splitlines(), 1) if ln.strip() and not ln.lstrip().startswith("#")]
        self.pos = 0

    def next(self):
        if self.pos >= len(self.items):
            raise ValueError("side information file ended unexpectedly")
        item = self.items[self.pos]
        self.pos += 1
        return item

    def field(self, name):
        lineno, line = self.next()
        key, sep, value = line.partition("=")
        if not sep or key != name:
            raise ValueError(f"side information line {lineno}: expected {name}=..., got {line!r}")
        return value

    def numbers(self, count):
        lineno, line = self.next()
        values = np.array([float(t) for t in line.split()])
        if values.size != count:
            raise ValueError(f"side information line {lineno}: expected {count} values, got {values.size}")
        return values


def _parse_stage(lines, label, strength, kind, levels):
    lineno, line = lines.next()
    if line != f"stage {label}":
        raise ValueError(f"side information line {lineno}: expected 'stage {label}'")
    stage = StageInfo(
        wavelet=kind,
        levels=levels,
        strength=strength,
        image_shape=_shape(lines.field("image_shape")),
        pad=_shape(lines.field("pad")),
        payload_shape=_shape(lines.field("payload_shape")),
        split_payload=lines.field("split_payload") == "1",
    )
    while True:
        lineno, line = lines.next()
        parts = line.split()
        if parts == ["end"]:
            break
        if parts[0] == "matrix" and len(parts) == 4:
            prefix, _, band = parts[1].partition(".")
            rows, cols = int(parts[2]), int(parts[3])
            m = np.array([lines.numbers(cols) for _ in range(rows)]).reshape(rows, cols)
            target = {"u": stage.payload_u, "v": stage.payload_v}.get(prefix)
        elif parts[0] == "vector" and len(parts) == 3:
            prefix, _, band = parts[1].partition(".")
            m = lines.numbers(int(parts[2]))
            target = stage.reference_s if prefix == "s" else None
        else:
            raise ValueError(f"side information line {lineno}: unexpected {line!r}")
        if target is None or band not in BANDS:
            raise ValueError(f"side information line {lineno}: unknown section {parts[1]!r}")
        target[band] = m
    for band in BANDS:
        for store, what in ((stage.payload_u, "u"), (stage.payload_v, "v"), (stage.reference_s, "s")):
            if band not in store:
                raise ValueError(f"side information for stage {label} lacks {what}.{band}")
    stage.check()
    return stage


def parse_sideinfo(text: str) -> SideInfo:
    lines = _Lines(text)
    lineno, line = lines.next()
    if line != MAGIC:
        raise ValueError(f"not a side information file (line {lineno}: {line!r})")
    params = EmbedParams(
        alpha=float(lines.field("alpha")),
        beta=float(lines.field("beta")),
        primary_wavelet=WaveletKind.parse(lines.field("primary_wavelet")),
        primary_levels=int(lines.field("primary_levels")),
        host_wavelet=WaveletKind.parse(lines.field("host_wavelet")),
        host_levels=int(lines.field("host_levels")),
    )
    primary = _parse_stage(lines, "primary", params.alpha, params.primary_wavelet, params.primary_levels)
    host = _parse_stage(lines, "host", params.beta, params.host_wavelet, params.host_levels)
    return SideInfo(params, primary, host)


def write_sideinfo(info: SideInfo, path):
    with open(path, "w") as f:
        f.write(format_sideinfo(info))


def read_sideinfo(path) -> SideInfo:
    with open(path) as f:
        return parse_sideinfo(f.read())
