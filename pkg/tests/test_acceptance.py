"""End-to-end acceptance checks, one line of PASS/FAIL output per criterion.

Run alone with ``pytest -s tests/test_acceptance.py`` to see only the
summary lines; under plain ``pytest -v`` they are printed as well.
"""

import contextlib
import json
import time

import pytest

import test_groebner
import test_identity
import test_magma
from lacc.cli import EXIT_OK, PRIME_SWEEP, main, normalize_ws
from lacc.coeff import GF, QQ
from lacc.cpoly import LEX, ParamPoly
from lacc.groebner import Ideal, buchberger, contains_one, verify_certificate, verify_derivation
from lacc.identity import MINI_VARS, generate_full, mini_system


@contextlib.contextmanager
def criterion(capsys, label):
    t0 = time.monotonic()
    try:
        yield
    except BaseException as exc:
        with capsys.disabled():
            print(f"\n[acceptance] {label}: FAIL ({type(exc).__name__}: {exc})")
        raise
    with capsys.disabled():
        print(f"\n[acceptance] {label}: PASS ({time.monotonic() - t0:.1f}s)")


def report(tmp_path, argv):
    path = tmp_path / "report.json"
    code = main(argv + ["--report", str(path)])
    return code, json.loads(path.read_text())


def test_1_appendix_reproduction(tmp_path, capsys):
    with criterion(capsys, "1 appendix reproduction 128/128"):
        code, rep = report(tmp_path, ["verify-appendix"])
        assert code == EXIT_OK
        assert rep["results"]["matched"] == rep["results"]["total"] == 128
        assert rep["timings"]["elapsed_seconds"] < 5


def test_2_script_golden(tmp_path, capsys):
    with criterion(capsys, "2 script golden lines"):
        out = tmp_path / "q.sing"
        assert main(["generate", "--format", "script", "--out", str(out)]) == EXIT_OK
        lines = out.read_text().splitlines()
        assert normalize_ws(lines[0]) == "ring r=0,(x(1..8),y(1..8)),dp;"
        assert normalize_ws(lines[1]) == \
            "poly f(1) = y(5)*y(5) + y(6)*y(1) + y(7)*x(5) + y(8)*x(1) - 1;"
        out2 = tmp_path / "gf2.sing"
        assert main(["generate", "--format", "script", "--field", "gf:2", "--out", str(out2)]) == EXIT_OK
        assert normalize_ws(out2.read_text().splitlines()[0]) == "ring r=2,(x(1..8),y(1..8)),dp;"


@pytest.mark.slow
@pytest.mark.parametrize("p", PRIME_SWEEP)
def test_3_prime_field_unit_ideal(p, tmp_path, capsys):
    with criterion(capsys, f"3 full system over GF({p}) is the unit ideal"):
        code, rep = report(tmp_path, ["check", "--field", f"gf:{p}", "--budget", "1800"])
        assert code == EXIT_OK
        assert rep["verdict"] == "UnitIdeal"
        assert rep["results"]["basis_size"] == 1
        assert rep["timings"]["elapsed_seconds"] < 1800


def test_4_proper_ideal_control(tmp_path, capsys):
    with criterion(capsys, "4 f1..f32 over GF(32003) is a proper ideal"):
        code, rep = report(tmp_path, ["check", "--field", "gf:32003", "--subsystem", "1..32",
                                      "--budget", "600"])
        assert code == EXIT_OK
        assert rep["verdict"] == "ProperIdeal"
        assert rep["timings"]["elapsed_seconds"] < 600


def test_5_mini_system(capsys):
    with criterion(capsys, "5 mini system lex basis"):
        t0 = time.monotonic()
        gb = buchberger(Ideal(mini_system("commutative"), QQ, LEX))
        elapsed = time.monotonic() - t0
        want = {ParamPoly.parse(s, QQ, MINI_VARS) for s in ("l + 1", "lp + 1")}
        assert set(gb.elements) == want and len(gb) == 2
        assert elapsed < 1


PROPERTY_SUITES = [
    ("homogeneous-component reconstruction", test_magma.test_components_reconstruct),
    ("letter conservation under expansion", test_identity.test_expand_conserves_letters),
    ("S-polynomials reduce to zero", test_groebner.test_spolys_reduce_to_zero),
    ("generator membership", test_groebner.test_generators_are_members),
    ("reduced basis independent of strategy", test_groebner.test_basis_independent_of_strategy),
    ("division identity", test_groebner.test_division_identity),
]


@pytest.mark.parametrize("name,prop", PROPERTY_SUITES, ids=[n for n, _ in PROPERTY_SUITES])
def test_6_property_suites(name, prop, capsys):
    assert prop.hypothesis.inner_test is not None
    with criterion(capsys, f"6 property suite: {name}"):
        prop()


@pytest.mark.slow
def test_7_cofactor_certificate_gf2(capsys):
    """Optional stretch goal.

    Expanded cofactors for the full system over GF(2) run past any sensible
    memory cap, so the expansion is cut off and the run is reported as not
    met.  The compact derivation that the engine keeps instead still has to
    replay exactly, which is asserted.
    """
    f = GF(2)
    gens = [p.change_field(f) for p in generate_full().polys]
    verdict, gb = contains_one(Ideal(gens, f), cofactors=True)
    assert verdict == "UnitIdeal"
    replay = verify_derivation(gb.derivation, gens)
    with capsys.disabled():
        if gb.certificate is not None and verify_certificate(gb.certificate, gens):
            print("\n[acceptance] 7 expanded cofactor certificate over GF(2): PASS")
        else:
            print(f"\n[acceptance] 7 expanded cofactor certificate over GF(2): NOT MET, optional "
                  f"({gb.stats['cofactors']}); derivation of {len(gb.derivation.steps)} steps "
                  f"replays: {replay}")
    assert replay
