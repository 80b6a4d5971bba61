"""Regenerate the golden reports: ``python3 tests/make_golden.py``.

Only rerun after an intentional change to the report format or the
normalization of bases; the diff of tests/golden/ should then be reviewed.
"""

from pathlib import Path

from crsym import catalog
from crsym.encoding import dumps, report_to_json
from crsym.grading import full_algebra
from crsym.model import holomorphic_nondegeneracy
from crsym.structure import annotate

GOLDEN = Path(__file__).parent / "golden"


def render(name: str) -> str:
    model = catalog.get(name)
    cert = holomorphic_nondegeneracy(model)
    report = full_algebra(model, certificate=cert, extended=False)
    annotate(report)
    return dumps(report_to_json(report, cert))


def main():
    GOLDEN.mkdir(exist_ok=True)
    for name in catalog.CATALOG:
        (GOLDEN / f"{name}.json").write_text(render(name), encoding="utf-8")
        print("wrote", name)


if __name__ == "__main__":
    main()
