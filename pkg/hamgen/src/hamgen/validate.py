"""Directory validation against the consumer toolkit's parser."""

import json
from collections import defaultdict
from pathlib import Path


def validate_directory(directory) -> dict:
    """Parse every coefficient file and check schema consistency per system.

    Uses the consumer package's parser when available so validation covers
    the real interface; falls back to structural JSON checks otherwise.
    Returns a report dict with per-file results and per-system schemas.
    """
    try:
        from mlvqe.pauli import HamiltonianError, parse_hamiltonian
    except ImportError:  # pragma: no cover - consumer not installed
        parse_hamiltonian, HamiltonianError = None, ValueError

    directory = Path(directory)
    report = {"files": [], "errors": [], "schemas": {}}
    schemas = defaultdict(set)
    for path in sorted(directory.glob("*.json")):
        if path.name.endswith("_report.json"):
            continue
        text = path.read_text()
        try:
            obj = json.loads(text)
            if parse_hamiltonian is not None:
                h = parse_hamiltonian(text)
                labels = tuple(h.labels)
                n = h.num_qubits
            else:
                labels = tuple(lab for lab, _ in obj["terms"])
                n = int(obj["num_qubits"])
            if any(len(lab) != n for lab in labels):
                raise ValueError("label length differs from num_qubits")
            if any(not isinstance(c, (int, float))
                   for _, c in obj["terms"]):
                raise ValueError("non-real coefficient")
            system = obj.get("metadata", {}).get("system", "unknown")
            schemas[system].add(labels)
            report["files"].append(
                {"file": path.name, "system": system, "num_qubits": n,
                 "terms": len(labels)}
            )
        except (ValueError, KeyError, HamiltonianError) as exc:
            report["errors"].append({"file": path.name, "error": str(exc)})
    for system, label_sets in schemas.items():
        if len(label_sets) != 1:
            report["errors"].append(
                {"file": f"{system}/*", "error": "schema varies across sweep"}
            )
        report["schemas"][system] = sorted(next(iter(label_sets)))
    report["ok"] = not report["errors"]
    return report
