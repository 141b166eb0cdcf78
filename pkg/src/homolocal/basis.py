"""Optimal homology basis by repeated measure-and-seal."""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import Chain, SimplicialComplex, betti, boundary_bits
from .errors import NotACycle, SealedInput
from .measure import Diagnostics, Measurement, measure_smallest
from .z2 import derive_seed


@dataclass(frozen=True)
class SealRecord:
    round: int
    vertex: int  # internal index of the cone apex
    label: int  # id the apex carries in output
    added: dict  # dimension -> number of new simplices


@dataclass
class BasisResult:
    dim: int
    betti: int
    classes: list[Measurement] = field(default_factory=list)
    seal_log: list[SealRecord] = field(default_factory=list)
    diagnostics: Diagnostics = field(default_factory=Diagnostics)
    final_complex: SimplicialComplex | None = None

    @property
    def sizes(self) -> list[int]:
        return [m.size for m in self.classes]


def seal_cycle(K: SimplicialComplex, z: Chain) -> SimplicialComplex:
    """Cone off ``z`` with a new vertex; every new simplex is flagged sealed."""
    if boundary_bits(K, z):
        raise NotACycle("chain has nonzero boundary")
    if any(K.sealed[z.dim][i] for i in z.simplices):
        raise SealedInput("chain uses simplices added by an earlier sealing")
    apex = K.n_vertices
    cone = [K.simplices[z.dim][i] + (apex,) for i in z.simplices]
    return K.extended(1, cone, sealed=True)


def measure_all(
    K: SimplicialComplex,
    d: int,
    mode: str = "improved",
    seed: int = 0,
    *,
    onedim_modified: bool = False,
    threads: int = 1,
    trials: int = 20,
    method: str = "auto",
) -> BasisResult:
    """Greedy optimal basis: measure the smallest class, seal it, repeat."""
    if d < 1:
        raise ValueError("dimension must be at least 1")
    beta = betti(K, d)
    result = BasisResult(d, beta)
    current = K
    for k in range(beta):
        m = measure_smallest(
            current, d, mode, derive_seed(seed, k),
            onedim_modified=onedim_modified, threads=threads, trials=trials,
            method=method, diagnostics=result.diagnostics,
        )
        result.classes.append(m)
        sealed = seal_cycle(current, m.cycle)
        added = {dim: sealed.n(dim) - current.n(dim) for dim in range(sealed.dim + 1)}
        apex = current.n_vertices
        result.seal_log.append(SealRecord(k, apex, sealed.labels[apex], added))
        current = sealed
    result.final_complex = current
    return result
