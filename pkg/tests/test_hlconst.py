import pytest

from tuplegaps.hlconst import hl_constant
from tuplegaps.patterns import Pattern, builtin_patterns, get_pattern

# footnote values of the source tables, 6 significant digits
PUBLISHED_C = {2: 0.757392, 3: 0.349864, 4: 0.240895, 5: 0.0986992, 6: 0.0578081, 7: 0.0185281}


@pytest.fixture(scope="module")
def constants():
    return {p.id: hl_constant(p) for p in builtin_patterns()}


def test_single_primes_exact(constants):
    c = constants["1"]
    assert c.C == 1.0 and c.H == 1.0


@pytest.mark.parametrize("pid", ["2", "3a", "3b", "4", "5a", "5b", "6", "7a", "7b"])
def test_published_values(constants, pid):
    c = constants[pid]
    expected = PUBLISHED_C[c.k]
    assert abs(c.C - expected) / expected <= 1e-4


def test_invariants(constants):
    for c in constants.values():
        assert abs(c.C * c.H - 1) < 1e-12
        assert c.H >= 1
        assert c.truncation_bound == 10**7
        assert c.est_rel_error < 1e-6


def test_mirror_invariance(constants):
    for a, b in [("3a", "3b"), ("5a", "5b"), ("7a", "7b")]:
        assert constants[a].H == constants[b].H
        assert constants[a].C == constants[b].C


@pytest.mark.parametrize("pid", ["2", "4", "7a"])
@pytest.mark.parametrize("bound", [10**3, 10**4, 10**5, 10**6])
def test_monotone_refinement(pid, bound):
    p = get_pattern(pid)
    coarse, fine = hl_constant(p, bound), hl_constant(p, 10 * bound)
    assert abs(coarse.H - fine.H) / coarse.H < coarse.est_rel_error


def test_errors():
    with pytest.raises(ValueError):
        hl_constant(get_pattern("2"), 999)
    with pytest.raises(ValueError):
        hl_constant(Pattern("bad", (0, 2, 4)), 10**3)
