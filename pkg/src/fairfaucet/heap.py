"""Array-backed binary min-heap of (demand, user) pairs.

This is the working set of the authority-driven distributor: nodes are
ordered by demand with the user id as tie-break, so drain order is fully
deterministic.  The array layout is a complete binary tree, which keeps
every sift path logarithmic regardless of insertion order.

Every node move and comparison can be reported to a pluggable meter (any
object with ``heap_move()`` and ``arith()`` methods); the simulator uses
this to charge abstract per-operation costs.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class HeapNode:
    demand: int
    user: int

    def key(self):
        return (self.demand, self.user)


class MinHeap:
    """Binary min-heap keyed on (demand, user id)."""

    def __init__(self, meter=None):
        self._nodes: list[HeapNode] = []
        self._meter = meter
        self.moves = 0
        self.compares = 0
        # levels traversed by the most recent insert/del_min sift
        self.last_sift_depth = 0

    def __len__(self) -> int:
        return len(self._nodes)

    def size(self) -> int:
        return len(self._nodes)

    def peek(self) -> HeapNode:
        if not self._nodes:
            raise IndexError("underflow")
        return self._nodes[0]

    def _moved(self, n=1):
        self.moves += n
        if self._meter is not None:
            self._meter.heap_move(n)

    def _compared(self, n=1):
        self.compares += n
        if self._meter is not None:
            self._meter.arith(n)

    def insert(self, node: HeapNode) -> None:
        """Sift-up insert; zero demands are never stored."""
        if node.demand < 1:
            raise ValueError("empty demand")
        nodes = self._nodes
        nodes.append(node)
        self._moved()
        k = len(nodes) - 1
        depth = 0
        while k > 0:
            parent = (k - 1) // 2
            self._compared()
            if nodes[parent].key() <= node.key():
                break
            nodes[k] = nodes[parent]
            self._moved()
            k = parent
            depth += 1
        nodes[k] = node
        self.last_sift_depth = depth

    def del_min(self) -> HeapNode:
        """Pop the minimum node, restoring heap order by sift-down."""
        nodes = self._nodes
        if not nodes:
            raise IndexError("underflow")
        top = nodes[0]
        last = nodes.pop()
        self._moved()
        depth = 0
        if nodes:
            k = 0
            size = len(nodes)
            while True:
                child = 2 * k + 1
                if child >= size:
                    break
                if child + 1 < size:
                    self._compared()
                    if nodes[child + 1].key() < nodes[child].key():
                        child += 1
                self._compared()
                if last.key() <= nodes[child].key():
                    break
                nodes[k] = nodes[child]
                self._moved()
                k = child
                depth += 1
            nodes[k] = last
        self.last_sift_depth = depth
        return top
