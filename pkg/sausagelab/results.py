# Copyright (C) 2025 SausageLab contributors
#
# SPDX-License-Identifier: GPL-3.0-only
#
# This file is part of SausageLab. See LICENSE for details.

"""Result files, content hashes and the run manifest."""

import csv
import hashlib
import io
import json
import logging
import math
import os
import tempfile
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from sausagelab import __version__
from sausagelab.constants import FLOAT_FORMAT, MANIFEST_FILE, ROWS_FILE, SUMMARY_FILE
from sausagelab.exceptions import ResultIntegrityError

logger = logging.getLogger(__name__)


def blob_hash(data: bytes) -> str:
    """Git-style blob hash: sha1 over ``b"blob <len>\\0"`` followed by the data."""
    digest = hashlib.sha1(usedforsecurity=False)
    digest.update(b"blob %d\0" % len(data))
    digest.update(data)
    return digest.hexdigest()


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), FLOAT_FORMAT)
    return str(value)


def rows_to_csv(rows: list[dict], header: list[str] | None = None) -> bytes:
    """CSV with the union of row keys as header, in first-seen order."""
    header = list(header or [])
    for row in rows:
        for key in row:
            if key not in header:
                header.append(key)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(row.get(key)) for key in header])
    return buffer.getvalue().encode("utf-8")


def jsonable(value: Any) -> Any:
    """Plain JSON types; non-finite floats become null."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def dumps_json(data: Any) -> bytes:
    return (json.dumps(jsonable(data), indent=2, sort_keys=True) + "\n").encode("utf-8")


def write_atomic(path: Path, data: bytes) -> None:
    """Write to a temporary file in the same directory, then rename over ``path``."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as f:
            f.write(data)
            f.flush()
            os.fsync(f.fileno())
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise


@dataclass
class ResultManifest:
    """What one run produced and how to reproduce it."""

    config: dict[str, Any]
    config_hash: str
    started_at: str
    finished_at: str
    status: str
    files: list[dict[str, Any]] = field(default_factory=list)
    failures: list[dict[str, str]] = field(default_factory=list)
    software_version: str = __version__

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ResultManifest":
        try:
            return cls(**data)
        except TypeError as exc:
            raise ResultIntegrityError(f"Malformed manifest: {exc}") from exc

    @classmethod
    def load(cls, path: Path) -> "ResultManifest":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ResultIntegrityError(f"Cannot read manifest {path}: {exc}") from exc
        return cls.from_dict(data)

    def verify(self, directory: Path) -> None:
        """Re-hash every listed file; raise on a missing file or a mismatch."""
        for entry in self.files:
            path = Path(directory) / entry["name"]
            if not path.is_file():
                raise ResultIntegrityError(f"Manifest references missing file {path}")
            actual = blob_hash(path.read_bytes())
            if actual != entry["hash"]:
                raise ResultIntegrityError(
                    f"Hash mismatch for {path}: expected {entry['hash']}, got {actual}"
                )


def write_results(
    run_dir: Path,
    config: dict[str, Any],
    config_hash: str,
    rows: list[dict],
    summary: dict[str, Any],
    status: str,
    started_at: str,
    finished_at: str,
    failures: list[dict[str, str]] | None = None,
) -> ResultManifest:
    """
    Write rows.csv and summary.json, then the manifest.

    The previous manifest is removed first, so an interrupted run never
    leaves a manifest pointing at files it did not write.
    """
    run_dir = Path(run_dir)
    run_dir.mkdir(parents=True, exist_ok=True)
    (run_dir / MANIFEST_FILE).unlink(missing_ok=True)

    outputs = {ROWS_FILE: rows_to_csv(rows), SUMMARY_FILE: dumps_json(summary)}
    entries = []
    for name, data in outputs.items():
        write_atomic(run_dir / name, data)
        entries.append({"name": name, "hash": blob_hash(data), "bytes": len(data)})

    manifest = ResultManifest(
        config=config,
        config_hash=config_hash,
        started_at=started_at,
        finished_at=finished_at,
        status=status,
        files=entries,
        failures=list(failures or []),
    )
    write_atomic(run_dir / MANIFEST_FILE, dumps_json(manifest.to_dict()))
    logger.info("Wrote %d result files to %s", len(entries), run_dir)
    return manifest
