from __future__ import annotations

import shutil
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
MODELS = CORPUS / "models"
SCENARIOS = CORPUS / "scenarios"
ORACLE = CORPUS / "oracle"
NEGATIVE = CORPUS / "negative"


def family_workbench(*roots):
    """Workbench with the full family registered; checked over ``roots`` if given."""
    from langbench.family_maa import register_family
    from langbench.kernel import Workbench

    wb = Workbench()
    register_family(wb)
    diags = wb.process(list(roots)) if roots else []
    return wb, diags


@pytest.fixture
def corpus_wb():
    wb, diags = family_workbench(MODELS)
    assert diags == []
    return wb


@pytest.fixture
def models_copy(tmp_path):
    """Writable copy of the bundled corpus."""
    dest = tmp_path / "models"
    shutil.copytree(MODELS, dest)
    return dest


def write_models(root: Path, files: dict[str, str]) -> Path:
    for rel, text in files.items():
        path = root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    return root


@pytest.fixture(scope="module")
def corpus_wb_module():
    wb, diags = family_workbench(MODELS)
    assert diags == []
    return wb
