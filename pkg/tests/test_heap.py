import math
import random

import pytest

from fairfaucet.heap import HeapNode, MinHeap


def drain(heap):
    out = []
    while len(heap):
        out.append(heap.del_min())
    return out


def test_insert_into_empty():
    h = MinHeap()
    h.insert(HeapNode(5, 1))
    assert h.peek().demand == 5
    assert h.size() == 1


def test_table_demands_min_is_smallest():
    h = MinHeap()
    for user, demand in enumerate((4, 11, 15), 1):
        h.insert(HeapNode(demand, user))
    assert h.peek() == HeapNode(4, 1)


def test_mixed_inserts():
    h = MinHeap()
    for user, demand in enumerate((7, 3, 9, 1), 1):
        h.insert(HeapNode(demand, user))
    assert h.peek().demand == 1


def test_zero_demand_rejected():
    h = MinHeap()
    with pytest.raises(ValueError, match="empty demand"):
        h.insert(HeapNode(0, 1))
    assert h.size() == 0


def test_del_min_order_and_underflow():
    h = MinHeap()
    for demand, user in ((4, 1), (11, 2), (15, 3)):
        h.insert(HeapNode(demand, user))
    assert h.del_min() == HeapNode(4, 1)
    assert h.size() == 2
    h2 = MinHeap()
    h2.insert(HeapNode(9, 4))
    assert h2.del_min() == HeapNode(9, 4)
    assert h2.size() == 0
    with pytest.raises(IndexError, match="underflow"):
        h2.del_min()


def test_size_counts():
    h = MinHeap()
    assert h.size() == 0
    for k in range(3):
        h.insert(HeapNode(k + 1, k))
    assert h.size() == 3
    h.del_min()
    assert h.size() == 2


def test_equal_demands_break_ties_by_user_id():
    h = MinHeap()
    for user in (9, 2, 7, 4):
        h.insert(HeapNode(5, user))
    assert [n.user for n in drain(h)] == [2, 4, 7, 9]


def test_drain_matches_sort_oracle():
    rng = random.Random(1234)
    h = MinHeap()
    inserted = []
    for _ in range(1000):
        node = HeapNode(rng.randrange(1, 10_000), rng.randrange(0, 200))
        inserted.append(node)
        h.insert(node)
    drained = drain(h)
    # oracle: sorting the inserted multiset
    assert [n.key() for n in drained] == sorted(n.key() for n in inserted)


def test_conservation_under_interleaving():
    rng = random.Random(99)
    h = MinHeap()
    inserted, removed = [], []
    for _ in range(2000):
        if len(h) and rng.random() < 0.4:
            removed.append(h.del_min())
        else:
            node = HeapNode(rng.randrange(1, 50), rng.randrange(0, 30))
            inserted.append(node)
            h.insert(node)
    removed.extend(drain(h))
    assert sorted(n.key() for n in removed) == sorted(n.key() for n in inserted)


def test_sift_depth_stays_logarithmic():
    rng = random.Random(5)
    h = MinHeap()
    for _ in range(3000):
        if len(h) and rng.random() < 0.45:
            before = len(h)
            h.del_min()
            assert h.last_sift_depth <= math.ceil(math.log2(before + 1))
        else:
            h.insert(HeapNode(rng.randrange(1, 1_000_000), rng.randrange(0, 999)))
            assert h.last_sift_depth <= math.ceil(math.log2(len(h) + 1))


def test_meter_hook_sees_moves_and_compares():
    class Probe:
        def __init__(self):
            self.moves = 0
            self.ariths = 0

        def heap_move(self, n=1):
            self.moves += n

        def arith(self, n=1):
            self.ariths += n

    probe = Probe()
    h = MinHeap(meter=probe)
    for demand in (5, 3, 8, 1):
        h.insert(HeapNode(demand, 0))
    drain(h)
    assert probe.moves == h.moves > 0
    assert probe.ariths == h.compares > 0
