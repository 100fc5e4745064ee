"""One-stop analysis of a quiver document, shared by the CLI and the server."""

from __future__ import annotations

from dataclasses import dataclass

from .ag import phi
from .errors import NotInClass
from .gentle import cartan, cluster_tilted
from .structure import compute_parameters, decompose


@dataclass(frozen=True)
class AnalysisReport:
    vertices: int
    arrows: int
    recognized: bool
    reason: str | None = None
    parameters: object = None
    invariant: object = None
    cartan_matrix: object = None
    decomposition: object = None

    def to_doc(self):
        doc = {
            "recognized": self.recognized,
            "vertices": self.vertices,
            "arrows": self.arrows,
        }
        if self.reason is not None:
            doc["reason"] = self.reason
        if self.parameters is not None:
            doc["parameters"] = self.parameters.to_doc()
        if self.invariant is not None:
            doc["phi"] = self.invariant.to_doc()
        if self.cartan_matrix is not None:
            doc["cartan"] = self.cartan_matrix.to_doc()
        if self.decomposition is not None:
            d = self.decomposition
            doc["decomposition"] = {
                "cycle": list(d.cycle),
                "cycle_arrows": [
                    {"id": e.arrow_id, "forward": e.forward} for e in d.cycle_arrows
                ],
                "attached": dict(sorted(d.attached.items())),
                "branches": {
                    aid: list(bq.vertices) for aid, bq in sorted(d.branches.items())
                },
            }
        return doc


def analyze(q):
    """Full report; fields stay absent when their computation cannot run."""
    counts = {"vertices": len(q.vertices), "arrows": len(q.arrows)}
    try:
        dec = decompose(q)
    except NotInClass as e:
        return AnalysisReport(recognized=False, reason=e.reason, **counts)
    params = compute_parameters(q, dec)
    algebra = cluster_tilted(q)
    return AnalysisReport(
        recognized=True,
        parameters=params,
        invariant=phi(algebra),
        cartan_matrix=cartan(algebra),
        decomposition=dec,
        **counts,
    )
