"""Addressable priority queues.

Two implementations with the same core interface (push / peek / pop /
decrease_key, addressed by hashable item ids):

* ``AddressableHeap`` — array binary heap with position tracking.  Supports
  key changes in both directions (an increase behaves like delete+reinsert),
  which the region-tree driver needs.  O(log n) per operation.
* ``PairingHeap`` — pointer-based heap with O(1) melding and cheap
  decrease-key (amortized below logarithmic; the exact amortized bound of the
  classic pointer-meld design is adopted as-is).  Used where decrease-key
  dominates and increase never happens.

Keys may be tuples; callers embed deterministic tie-breaks in the key itself,
so neither structure ever compares equal keys.
"""

from __future__ import annotations

from .errors import KeyIncrease


class AddressableHeap:
    """Binary min-heap addressable by item id, with arbitrary key changes."""

    __slots__ = ("_heap", "_pos", "_key")

    def __init__(self):
        self._heap = []
        self._pos = {}
        self._key = {}

    def __len__(self):
        return len(self._heap)

    def __contains__(self, item):
        return item in self._pos

    def key_of(self, item):
        return self._key[item]

    def push(self, item, key):
        if item in self._pos:
            raise ValueError(f"item {item!r} already present")
        self._key[item] = key
        self._pos[item] = len(self._heap)
        self._heap.append(item)
        self._sift_up(len(self._heap) - 1)

    def peek(self):
        item = self._heap[0]
        return self._key[item], item

    def pop(self):
        item = self._heap[0]
        key = self._key.pop(item)
        del self._pos[item]
        last = self._heap.pop()
        if self._heap:
            self._heap[0] = last
            self._pos[last] = 0
            self._sift_down(0)
        return key, item

    def remove(self, item):
        i = self._pos.pop(item)
        del self._key[item]
        last = self._heap.pop()
        if i < len(self._heap):
            self._heap[i] = last
            self._pos[last] = i
            self._sift_up(i)
            self._sift_down(self._pos[last])

    def decrease_key(self, item, key):
        if key > self._key[item]:
            raise KeyIncrease(f"{key!r} > current {self._key[item]!r}")
        self._key[item] = key
        self._sift_up(self._pos[item])

    def change_key(self, item, key):
        self._key[item] = key
        i = self._pos[item]
        self._sift_up(i)
        self._sift_down(self._pos[item])

    def _sift_up(self, i):
        heap, pos, keyd = self._heap, self._pos, self._key
        item = heap[i]
        key = keyd[item]
        while i > 0:
            parent = (i - 1) >> 1
            p_item = heap[parent]
            if keyd[p_item] <= key:
                break
            heap[i] = p_item
            pos[p_item] = i
            i = parent
        heap[i] = item
        pos[item] = i

    def _sift_down(self, i):
        heap, pos, keyd = self._heap, self._pos, self._key
        n = len(heap)
        item = heap[i]
        key = keyd[item]
        while True:
            child = 2 * i + 1
            if child >= n:
                break
            right = child + 1
            if right < n and keyd[heap[right]] < keyd[heap[child]]:
                child = right
            if keyd[heap[child]] >= key:
                break
            heap[i] = heap[child]
            pos[heap[i]] = i
            i = child
        heap[i] = item
        pos[item] = i


class _PNode:
    __slots__ = ("key", "item", "child", "sibling", "prev")

    def __init__(self, key, item):
        self.key = key
        self.item = item
        self.child = None
        self.sibling = None
        self.prev = None


class PairingHeap:
    """Pointer pairing heap with decrease-key, addressable by item id."""

    __slots__ = ("_root", "_nodes")

    def __init__(self):
        self._root = None
        self._nodes = {}

    def __len__(self):
        return len(self._nodes)

    def __contains__(self, item):
        return item in self._nodes

    def key_of(self, item):
        return self._nodes[item].key

    @staticmethod
    def _meld(a, b):
        if a is None:
            return b
        if b is None:
            return a
        if b.key < a.key:
            a, b = b, a
        b.sibling = a.child
        if a.child is not None:
            a.child.prev = b
        b.prev = a
        a.child = b
        return a

    def push(self, item, key):
        if item in self._nodes:
            raise ValueError(f"item {item!r} already present")
        node = _PNode(key, item)
        self._nodes[item] = node
        self._root = self._meld(self._root, node)

    def peek(self):
        return self._root.key, self._root.item

    def pop(self):
        root = self._root
        del self._nodes[root.item]
        # two-pass merge of the children
        first_pass = []
        c = root.child
        while c is not None:
            a = c
            b = c.sibling
            c = b.sibling if b is not None else None
            a.prev = a.sibling = None
            if b is not None:
                b.prev = b.sibling = None
                first_pass.append(self._meld(a, b))
            else:
                first_pass.append(a)
        new_root = None
        for t in reversed(first_pass):
            new_root = self._meld(t, new_root)
        self._root = new_root
        return root.key, root.item

    def decrease_key(self, item, key):
        node = self._nodes[item]
        if key > node.key:
            raise KeyIncrease(f"{key!r} > current {node.key!r}")
        node.key = key
        if node is self._root:
            return
        # cut node from its parent's child list, then meld with the root
        prev = node.prev
        if prev.child is node:
            prev.child = node.sibling
        else:
            prev.sibling = node.sibling
        if node.sibling is not None:
            node.sibling.prev = prev
        node.prev = node.sibling = None
        self._root = self._meld(self._root, node)
