"""Machine-readable run records: JSON lines, manifests, schema access.

Every record emitted by the command-line tools goes through ``json_line``
(sorted keys, no whitespace), and records are emitted in a fixed order, so
reruns with the same seed differ only in wall-clock fields.  Disagreement
and falsification records embed both graphs in graph6 plus the full verdict
trace; each record alone must be enough to reproduce the finding.
"""

from __future__ import annotations

import datetime as _dt
import hashlib
import json
from importlib import resources
from typing import Optional

from .graphs import Graph, emit_graph6
from .isotest import Decision, Verdict


def json_line(doc: dict) -> str:
    """Canonical one-line JSON: sorted keys, compact separators."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def file_sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def utc_now_iso() -> str:
    return _dt.datetime.now(_dt.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def run_manifest(
    command: str,
    argv: list[str],
    version: str,
    corpus: Optional[dict] = None,
    generator: Optional[dict] = None,
    settings: Optional[dict] = None,
) -> dict:
    doc: dict = {
        "kind": "manifest",
        "tool": "walkiso",
        "version": version,
        "command": command,
        "argv": argv,
        "started_at": utc_now_iso(),
    }
    if corpus is not None:
        doc["corpus"] = corpus
    if generator is not None:
        doc["generator"] = generator
    if settings is not None:
        doc["settings"] = settings
    return doc


def classify_pair(verdict: Verdict, oracle_status: str, oracle_isomorphic: Optional[bool]) -> str:
    """Three-way call for a hunt pair.

    Only a completed oracle run can certify agreement or disagreement;
    a skipped or out-of-budget oracle leaves the pair unresolved no matter
    what the verdict said.
    """
    if oracle_status != "completed":
        return "unresolved"
    assert oracle_isomorphic is not None
    if oracle_isomorphic == (verdict.decision is Decision.ISOMORPHIC):
        return "agreement"
    return "disagreement"


def pair_record(
    index: int,
    g1: Graph,
    g2: Graph,
    verdict: Verdict,
    oracle: dict,
    classification: str,
    source: Optional[dict] = None,
    elapsed_s: Optional[float] = None,
) -> dict:
    doc: dict = {
        "kind": "pair",
        "index": index,
        "n": max(g1.n, g2.n),
        "graph1": emit_graph6(g1),
        "graph2": emit_graph6(g2),
        "verdict": verdict.to_json_dict(),
        "oracle": oracle,
        "classification": classification,
    }
    if source is not None:
        doc["source"] = source
    if elapsed_s is not None:
        doc["elapsed_s"] = round(elapsed_s, 6)
    return doc


def disagreement_record(index: int, g1: Graph, g2: Graph, verdict: Verdict, oracle: dict) -> dict:
    """Self-contained evidence that the verdict and the ground truth split.

    The interesting direction is a pair judged Isomorphic by the diagonal
    comparison that complete search proves non-isomorphic: equal per-order
    diagonals without an actual isomorphism.
    """
    return {
        "kind": "disagreement",
        "claim": "equal_diagonals_nonisomorphic",
        "description": (
            "diagonal comparison and exhaustive search disagree on this pair"
        ),
        "index": index,
        "graph1": emit_graph6(g1),
        "graph2": emit_graph6(g2),
        "verdict": verdict.to_json_dict(),
        "oracle": oracle,
    }


def falsification_record(index: Optional[int], event: dict) -> dict:
    doc: dict = {"kind": "falsification", "event": event}
    if index is not None:
        doc["index"] = index
    return doc


def hunt_summary(
    pairs: int,
    agreements: int,
    disagreements: int,
    unresolved: int,
    falsifications: int,
    elapsed_s: float,
    disagreement_indices: list[int],
) -> dict:
    return {
        "kind": "summary",
        "pairs": pairs,
        "agreements": agreements,
        "disagreements": disagreements,
        "unresolved": unresolved,
        "falsifications": falsifications,
        "elapsed_s": round(elapsed_s, 6),
        "disagreement_indices": disagreement_indices,
    }


def load_schema(name: str) -> dict:
    """Schema shipped with the package, by bare name ('verdict', 'bench', ...)."""
    text = resources.files("walkiso").joinpath(f"schemas/{name}.json").read_text("utf-8")
    return json.loads(text)


def validate_json(doc: dict, schema_name: str) -> None:
    """Raise jsonschema.ValidationError if ``doc`` breaks the named schema."""
    import jsonschema

    jsonschema.validate(doc, load_schema(schema_name))
