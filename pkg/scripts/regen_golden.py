"""Regenerate the golden report files used by the determinism tests.

Run after an intentional change to the report format:

    python3 scripts/regen_golden.py
"""

from pathlib import Path

from toric_thresholds.cli import report_document
from toric_thresholds.io import dumps, load_document

ROOT = Path(__file__).resolve().parent.parent
GOLDEN_INPUTS = ("p2_O1", "p2_antiK", "p112_antiK")


def main():
    out = ROOT / "tests" / "golden"
    out.mkdir(parents=True, exist_ok=True)
    for stem in GOLDEN_INPUTS:
        doc = load_document(ROOT / "inputs" / f"{stem}.json")
        path = out / f"{stem}.report.json"
        path.write_text(dumps(report_document(doc)))
        print(path.relative_to(ROOT))


if __name__ == "__main__":
    main()
