import random

import pytest

from isocycle.errors import DegreeMismatch, MissingFile, ParseError
from isocycle.field import default_field, is_prime, make_field
from isocycle.modpoly import (
    ENV_VAR,
    KNOWN_FACTORIZATIONS,
    evaluate,
    factorization_holds,
    get_modpoly,
    load_modpoly,
    modpoly_path,
    parse_modpoly,
    resolve_data_dir,
    specialize,
    symmetry_check,
)
from isocycle.poly import Poly

PHI2 = """# Phi_2
[0,0] -157464000000000
[1,0] 8748000000
[1,1] 40773375
[2,0] -162000
[2,1] 1488
[2,2] -1
[3,0] 1
"""


def test_parse_phi2():
    mp = parse_modpoly(PHI2, 2)
    assert mp.degree == 3
    assert mp.coefficient(0, 0) == -157464000000000
    assert mp.coefficient(0, 1) == mp.coefficient(1, 0) == 8748000000
    assert mp.coefficient(0, 3) == 1
    assert get_modpoly(2).coeffs == mp.coeffs


def test_parse_errors():
    with pytest.raises(ParseError) as e:
        parse_modpoly(PHI2 + "[0,1] 5\n", 2)
    assert e.value.line == 9
    with pytest.raises(ParseError) as e:
        parse_modpoly("[3,0] 1\n[1,0 4\n", 2)
    assert e.value.line == 2
    with pytest.raises(ParseError):
        parse_modpoly("[3,0] 1x\n", 2)
    with pytest.raises(DegreeMismatch):
        parse_modpoly("[3,0] 1\n[4,0] 1\n", 2)
    with pytest.raises(DegreeMismatch):
        parse_modpoly("[3,0] 2\n", 2)
    with pytest.raises(ValueError):
        parse_modpoly(PHI2, 4)


def test_missing_file(tmp_path):
    with pytest.raises(MissingFile) as e:
        modpoly_path(47, tmp_path)
    assert "Phi_47" in str(e.value)
    with pytest.raises(MissingFile):
        load_modpoly(tmp_path / "nope.txt", 2)


def test_data_dir_resolution(tmp_path, monkeypatch):
    (tmp_path / "phi_2.txt").write_text(PHI2)
    monkeypatch.setenv(ENV_VAR, str(tmp_path))
    assert resolve_data_dir() == tmp_path
    assert modpoly_path(2) == tmp_path / "phi_2.txt"
    assert resolve_data_dir("/elsewhere").as_posix() == "/elsewhere"
    monkeypatch.delenv(ENV_VAR)
    monkeypatch.chdir(tmp_path)
    assert resolve_data_dir().is_dir()


@pytest.mark.parametrize("level", [2, 3, 5, 7, 11, 13, 23, 37, 47])
def test_shipped_data_invariants(level):
    mp = get_modpoly(level)
    assert mp.degree == level + 1
    assert mp.coefficient(level + 1, 0) == 1
    F = default_field(1019)
    assert symmetry_check(mp, F, trials=10)
    j = F.random(random.Random(level))
    f = specialize(mp, j, F)
    assert f.degree == level + 1 and f.lc == F.one


def test_mutation_breaks_symmetry():
    mp = get_modpoly(5)
    bad = mp.with_coefficient(3, 1, mp.coefficient(3, 1) + 1)
    assert not symmetry_check(bad, default_field(1019))


def test_example_one_adjacency(f3461):
    mp = get_modpoly(5)
    a, b = f3461(3185), f3461(819)
    assert evaluate(mp, a, b, f3461) == f3461.zero
    assert evaluate(mp, b, a, f3461) == f3461.zero


def _primes_for(cond, k, seed):
    rng = random.Random(seed)
    out = set()
    while len(out) < k:
        p = rng.randrange(32, 2**15)
        if is_prime(p) and cond(p):
            out.add(p)
    return sorted(out)


@pytest.mark.parametrize("name", list(KNOWN_FACTORIZATIONS))
def test_known_factorizations(name):
    _, j0, _ = KNOWN_FACTORIZATIONS[name]
    cond = (lambda p: p % 4 == 3) if j0 == 1728 else (lambda p: p % 3 == 2)
    for p in _primes_for(cond, 10, hash(name) & 0xFFFF):
        assert factorization_holds(name, default_field(p)), (name, p)


def test_phi3_at_zero_sign():
    # X(X-12288000)^3 cannot hold: the neighbour of 0 is -12288000
    for p in (1019, 2309):
        F = default_field(p)
        f = specialize(get_modpoly(3), F.zero, F)
        plus = Poly.of(F, [12288000, 1])
        minus = Poly.of(F, [-12288000, 1])
        x = Poly.of(F, [0, 1])
        assert f == x * plus * plus * plus
        assert f != x * minus * minus * minus


def test_reduced_cache_is_per_prime():
    mp = get_modpoly(3)
    a = mp.reduced(101)
    assert mp.reduced(101) is a
    assert mp.reduced(103) is not a


def test_factorization_over_other_basis():
    F = make_field(827, (1, 0))
    assert factorization_holds("Phi_2(X,1728) = (X-1728)(X-66^3)^2", F)
