"""Reading and writing complexes: ``.cplx`` text, OFF meshes, overlays.

``.cplx``: one maximal simplex per line, whitespace-separated vertex ids;
blank lines and lines starting with ``#`` are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .complex import Chain, SimplicialComplex, build_complex
from .errors import InputError


@dataclass
class LoadedComplex:
    complex: SimplicialComplex
    coords: dict[int, tuple[float, ...]] = field(default_factory=dict)  # original id -> xyz
    source_format: str = "cplx"


def parse_cplx(text: str) -> SimplicialComplex:
    tops = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            tops.append([int(tok) for tok in line.split()])
        except ValueError:
            raise InputError(f"line {lineno}: vertex ids must be integers") from None
    return build_complex(tops)


def _off_tokens(text: str):
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            yield line.split()


def parse_off(text: str) -> LoadedComplex:
    """Triangle mesh in OFF; faces with other than three corners are refused."""
    rows = _off_tokens(text)
    try:
        header = next(rows)
    except StopIteration:
        raise InputError("empty OFF file") from None
    if header[0] != "OFF":
        raise InputError("missing OFF header")
    counts = header[1:] or next(rows, [])
    try:
        n_verts, n_faces = int(counts[0]), int(counts[1])
    except (IndexError, ValueError):
        raise InputError("bad OFF vertex/face counts") from None

    coords = {}
    for v in range(n_verts):
        row = next(rows, None)
        if row is None:
            raise InputError(f"OFF file ends after {v} of {n_verts} vertices")
        try:
            coords[v] = tuple(float(x) for x in row[:3])
        except ValueError:
            raise InputError(f"bad coordinates for vertex {v}") from None

    tops = []
    for k in range(n_faces):
        row = next(rows, None)
        if row is None:
            raise InputError(f"OFF file ends after {k} of {n_faces} faces")
        try:
            n = int(row[0])
            face = [int(x) for x in row[1:1 + n]]
        except ValueError:
            raise InputError(f"bad face line {k}") from None
        if n != 3 or len(face) != 3:
            raise InputError(f"face {k} has {n} corners; only triangles are accepted")
        if any(not 0 <= v < n_verts for v in face):
            raise InputError(f"face {k} references a vertex outside 0..{n_verts - 1}")
        tops.append(face)
    # vertices that no face uses still belong to the complex
    used = {v for f in tops for v in f}
    tops += [[v] for v in range(n_verts) if v not in used]
    return LoadedComplex(build_complex(tops), coords, "off")


def load(path: str | Path) -> LoadedComplex:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {p}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise InputError(f"{p} is not UTF-8 text") from None
    if p.suffix.lower() == ".off" or text.lstrip().startswith("OFF"):
        return parse_off(text)
    return LoadedComplex(parse_cplx(text))


def dumps_cplx(K: SimplicialComplex) -> str:
    """Maximal non-sealed simplices in original ids, one per line."""
    lines = [" ".join(str(K.labels[v]) for v in s) for s in K.maximal_simplices(unsealed_only=True)]
    return "\n".join(lines) + "\n"


def chain_vertex_lists(K: SimplicialComplex, z: Chain) -> list[list[int]]:
    return [K.simplex_labels(z.dim, i) for i in z.simplices]


def dumps_overlay(K: SimplicialComplex, classes, coords=None) -> str:
    """Plain-text overlay of measured cycles.

    One block per class: a ``class`` header, then ``simplex`` lines with
    original vertex ids, then ``vertex`` lines with coordinates when known.
    """
    out = []
    for k, m in enumerate(classes):
        out.append(f"class {k} dim {m.cycle.dim} size {m.size} center {K.labels[m.center]}")
        used = set()
        for vs in chain_vertex_lists(K, m.cycle):
            out.append("simplex " + " ".join(map(str, vs)))
            used.update(vs)
        if coords:
            for v in sorted(used):
                if v in coords:
                    out.append(f"vertex {v} " + " ".join(repr(x) for x in coords[v]))
    return "\n".join(out) + "\n" if out else ""
