"""Addressable priority queues against a dictionary-scan reference.

Keys are (value, item) tuples, the same convention the search drivers use,
which makes every comparison deterministic including ties.
"""

import random

import pytest

from planarsp.errors import KeyIncrease
from planarsp.heaps import AddressableHeap, PairingHeap


class RefHeap:
    def __init__(self):
        self.d = {}

    def push(self, item, key):
        self.d[item] = key

    def peek(self):
        item = min(self.d, key=lambda i: self.d[i])
        return self.d[item], item

    def pop(self):
        key, item = self.peek()
        del self.d[item]
        return key, item

    def decrease_key(self, item, key):
        self.d[item] = key

    def __len__(self):
        return len(self.d)


@pytest.mark.parametrize("make", [AddressableHeap, PairingHeap])
def test_random_op_sequence_matches_reference(make):
    rng = random.Random(11)
    for trial in range(30):
        h, ref = make(), RefHeap()
        nxt = 0
        for _ in range(300):
            op = rng.random()
            if op < 0.45 or not len(ref):
                key = (rng.randint(0, 50), nxt)
                h.push(nxt, key)
                ref.push(nxt, key)
                nxt += 1
            elif op < 0.7:
                item = rng.choice(list(ref.d))
                key = (rng.randint(0, ref.d[item][0]), item)
                h.decrease_key(item, key)
                ref.decrease_key(item, key)
            else:
                assert h.pop() == ref.pop()
            assert len(h) == len(ref)
            if len(ref):
                assert h.peek() == ref.peek()
        while len(ref):
            assert h.pop() == ref.pop()


@pytest.mark.parametrize("make", [AddressableHeap, PairingHeap])
def test_tuple_keys_make_ties_deterministic(make):
    h = make()
    for item in (5, 2, 9):
        h.push(item, (7, item))
    assert [h.pop()[1] for _ in range(3)] == [2, 5, 9]


@pytest.mark.parametrize("make", [AddressableHeap, PairingHeap])
def test_key_increase_rejected(make):
    h = make()
    h.push(1, 10)
    with pytest.raises(KeyIncrease):
        h.decrease_key(1, 11)
    assert h.pop() == (10, 1)


def test_change_key_moves_both_directions():
    h = AddressableHeap()
    h.push(1, 10)
    h.push(2, 20)
    h.change_key(1, 30)
    assert h.peek() == (20, 2)
    h.change_key(1, 5)
    assert h.peek() == (5, 1)
    assert h.key_of(2) == 20


def test_remove_deletes_arbitrary_item():
    h = AddressableHeap()
    for i in range(5):
        h.push(i, 100 - i)
    h.remove(4)  # the current minimum
    assert h.pop() == (97, 3)
    h.remove(0)
    assert sorted(h.pop() for _ in range(2)) == [(98, 2), (99, 1)]
    assert len(h) == 0
