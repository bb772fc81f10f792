"""Acceptance criteria, one test and one printed PASS/FAIL line per criterion.

Each criterion runs its sweep at full size; wall-clock limits are asserted alongside
the mathematical checks.
"""
import pytest

from snmod.verify import SuiteResult, run_suite

_cache: dict = {}


def _suite(name: str) -> SuiteResult:
    if name not in _cache:
        _cache[name] = run_suite(name)
    return _cache[name]


def _report(capsys, number: int, title: str, failures: list, checked: int, elapsed: float, limit=None):
    over = limit is not None and elapsed > limit
    ok = not failures and not over
    line = f"CRITERION {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {checked} checks, {len(failures)} failures, {elapsed:.1f}s"
    if limit is not None:
        line += f" (limit {limit:.0f}s)"
    with capsys.disabled():
        print("\n" + line)
        for f in failures[:10]:
            print(f"    {f}")
    assert not failures, failures[:10]
    assert not over, f"{elapsed:.1f}s exceeds {limit}s"


def _criterion(capsys, number, title, name, limit=None):
    r = _suite(name)
    _report(capsys, number, title, r.failures, r.checked, r.elapsed_s, limit)
    return r


def test_criterion_01_crystal_laws(capsys):
    _criterion(capsys, 1, "crystal and signature laws, n <= 18", "crystal", 60)


def test_criterion_02_mullineux(capsys):
    _criterion(capsys, 2, "Mullineux involution, examples, sign twists", "mullineux", 120)


def test_criterion_03_dimensions(capsys):
    _criterion(capsys, 3, "dimensions of D^alpha_n and D^beta_n", "dims")


@pytest.mark.slow
def test_criterion_04_branching_end(capsys):
    r = _suite("branching")
    fails = [f for f in r.failures if "End dim" in f]
    _report(capsys, 4, "End of the restriction equals sum of eps", fails, r.checked, r.elapsed_s, 600)


@pytest.mark.slow
def test_criterion_05_block_components(capsys):
    r = _suite("branching")
    fails = [f for f in r.failures if "End dim" not in f]
    _report(capsys, 5, "block components e_i D: dimensions and content", fails, r.checked, r.elapsed_s)


def test_criterion_06_wilson(capsys):
    _criterion(capsys, 6, "incidence ranks match the closed form", "wilson", 60)


def test_criterion_07_x_elements(capsys):
    r = _criterion(capsys, 7, "x_2 and x_3 computations", "x-elements")
    assert r.info["x3(v1^v2)"] == "v1^v4 - v2^v4"


@pytest.mark.slow
def test_criterion_08_permutation_modules(capsys):
    _criterion(capsys, 8, "permutation module signatures, 6 <= n <= 12", "signatures", 1200)


def test_criterion_09_invariants(capsys):
    _criterion(capsys, 9, "invariants of the dual natural module", "invariants")


@pytest.mark.slow
def test_criterion_10_soundness(capsys):
    r = _criterion(capsys, 10, "classification soundness sweep", "soundness", 3600)
    assert all(v["errors"] == 0 for v in r.info.values() if isinstance(v, dict))


def test_criterion_11_tnat(capsys):
    r = _criterion(capsys, 11, "transitive-natural iff over subgroups of S3 wr S2", "tnat", 300)
    assert r.info["subgroups"] == 112
