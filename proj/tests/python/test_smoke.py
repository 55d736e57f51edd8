import pytest

import admtuple

KNOWN = {2: 2, 3: 6, 4: 8, 5: 12, 6: 16, 7: 20, 8: 26}


def test_context_k7():
    ctx = admtuple.build_context(7, 30)
    assert ctx.k == 7 and ctx.upper == 30
    assert ctx.full_primes == [2, 3, 5, 7]
    assert ctx.removable_primes == [2, 3]
    assert ctx.effective_primes == [5, 7]
    assert 0 in ctx and 1 not in ctx


def test_unsieved_context_keeps_everything():
    ctx = admtuple.build_context(7, 30, sieve_small_primes=False)
    assert ctx.candidates == list(range(31))


@pytest.mark.parametrize("method", admtuple.sieve_methods())
def test_every_sieve_is_admissible(method):
    t = admtuple.sieve(method, 60)
    assert len(t) == 60
    assert admtuple.full_verify(t, 60) == (True, None)


def test_unknown_sieve_raises():
    with pytest.raises(ValueError):
        admtuple.sieve("nope", 10)


def test_full_verify_reports_failing_prime():
    assert admtuple.full_verify([0, 1], 2) == (False, 2)


@pytest.mark.parametrize("k", [2, 5, 8])
def test_oracle(k):
    d, witness = admtuple.brute_force_optimal(k)
    assert d == KNOWN[k]
    assert witness[-1] - witness[0] == d


@pytest.mark.parametrize("k", sorted(KNOWN))
def test_solve_small(k):
    cfg = admtuple.RalsConfig("best")
    cfg.iterations = 50
    res = admtuple.solve(k, cfg)
    assert res.diameter == KNOWN[k]
    assert res.normalized[0] == 0
    assert admtuple.full_verify(res.best, k)[0]
    assert len(res.best_per_iteration) == 50


def test_solve_is_seeded():
    cfg = admtuple.RalsConfig()
    cfg.iterations = 20
    cfg.seed = 7
    a = admtuple.solve(40, cfg)
    b = admtuple.solve(40, cfg)
    assert a.best == b.best and a.best_per_iteration == b.best_per_iteration


def test_config_validation():
    cfg = admtuple.RalsConfig()
    cfg.gamma = 2.0
    with pytest.raises(ValueError):
        cfg.validate()
    with pytest.raises(ValueError):
        cfg.level = 3
    with pytest.raises(ValueError):
        admtuple.RalsConfig("fastest")


def test_tuple_io_roundtrip(tmp_path):
    path = str(tmp_path / "t.txt")
    admtuple.write_tuple(path, [3, 5, 9])
    assert admtuple.read_tuple(path) == [3, 5, 9]
    assert admtuple.normalized([3, 5, 9]) == [0, 2, 6]
