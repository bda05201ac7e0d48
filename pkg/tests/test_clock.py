import random

import pytest

from fairfaucet.clock import ClockParams, locate


def test_identity_case():
    pos = locate(ClockParams(0, 4, 1), 0)
    assert (pos.epoch, pos.round, pos.parity) == (0, 0, 0)


def test_offset_case():
    pos = locate(ClockParams(100, 40, 10), 185)
    assert (pos.epoch, pos.round, pos.parity) == (2, 0, 0)


def test_mid_epoch_case():
    pos = locate(ClockParams(0, 12, 3), 23)
    assert (pos.epoch, pos.round, pos.parity) == (1, 3, 1)


def test_pre_deployment_block_rejected():
    with pytest.raises(ValueError, match="pre-deployment"):
        locate(ClockParams(10, 4, 2), 9)


def test_bad_geometry_rejected():
    with pytest.raises(ValueError):
        ClockParams(0, 0, 1)
    with pytest.raises(ValueError):
        ClockParams(0, 4, 0)
    with pytest.raises(ValueError):
        ClockParams(0, 4, 8)
    with pytest.raises(ValueError):
        ClockParams(0, 10, 4)  # not a multiple


def test_rounds_per_epoch():
    assert ClockParams(0, 12, 3).rounds_per_epoch == 4
    assert ClockParams(0, 5, 5).rounds_per_epoch == 1


def test_round_always_below_rounds_per_epoch():
    rng = random.Random(42)
    for _ in range(500):
        rs = rng.randrange(1, 20)
        es = rs * rng.randrange(1, 12)
        offset = rng.randrange(0, 1000)
        params = ClockParams(offset, es, rs)
        block = offset + rng.randrange(0, 10 * es)
        pos = locate(params, block)
        assert 0 <= pos.round < params.rounds_per_epoch
        assert pos.parity == pos.epoch % 2


def test_monotone_in_block_number():
    params = ClockParams(5, 12, 3)
    last = (-1, -1)
    for block in range(5, 5 + 5 * 12):
        pos = locate(params, block)
        assert (pos.epoch, pos.round) >= last
        last = (pos.epoch, pos.round)


def test_parity_alternates_across_epochs():
    rng = random.Random(7)
    for _ in range(200):
        rs = rng.randrange(1, 10)
        es = rs * rng.randrange(1, 8)
        params = ClockParams(0, es, rs)
        block = rng.randrange(0, 8 * es)
        here = locate(params, block)
        there = locate(params, block + es)
        assert there.epoch == here.epoch + 1
        assert there.parity == 1 - here.parity
