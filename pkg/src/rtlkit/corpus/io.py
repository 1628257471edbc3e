"""Corpus persistence and the file-tree segmentation driver."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from ..errors import DomainError
from .scanning import ScanError
from .segment import VerilogModule, segment_file


def find_verilog_files(root: str | Path) -> list[Path]:
    root = Path(root)
    if not root.is_dir():
        raise DomainError(f"not a directory: {root}")
    return sorted(p for p in root.rglob("*.v") if p.is_file())


def segment_tree(
    root: str | Path, jobs: int = 1
) -> tuple[list[VerilogModule], list[dict]]:
    """Segment every .v file under root.

    Files are processed in parallel, then merged into the canonical order
    (origin_path, line_span) so downstream dedup sees a deterministic
    stream. Files the scanner rejects are reported, not fatal.
    """
    root = Path(root)
    files = find_verilog_files(root)

    def work(path: Path):
        rel = path.relative_to(root).as_posix()
        try:
            text = path.read_text(encoding="utf-8")
        except UnicodeDecodeError as exc:
            return rel, None, f"not valid UTF-8: {exc}"
        try:
            return rel, segment_file(text, rel), None
        except ScanError as exc:
            return rel, None, str(exc)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(work, files))
    else:
        results = [work(p) for p in files]

    modules: list[VerilogModule] = []
    rejected: list[dict] = []
    for rel, mods, error in results:
        if error is not None:
            rejected.append({"path": rel, "error": error})
        else:
            modules.extend(mods)
    modules.sort(key=lambda m: (m.origin_path, m.line_span))
    rejected.sort(key=lambda r: r["path"])
    return modules, rejected


def write_modules(path: str | Path, modules: list[VerilogModule]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for mod in modules:
            fh.write(json.dumps(mod.to_dict(), ensure_ascii=False) + "\n")


def read_modules(path: str | Path) -> list[VerilogModule]:
    path = Path(path)
    if not path.is_file():
        raise DomainError(f"modules file not found: {path}")
    out = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                out.append(VerilogModule.from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError) as exc:
                raise DomainError(f"{path}:{line_no}: bad module record: {exc}") from exc
    return out


def write_dedup_report(path: str | Path, report: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
