"""Hash-consed Boolean circuits (and-inverter graphs).

Literal encoding: node ``n`` yields literals ``2n`` (positive) and ``2n+1``
(negated).  Node 0 is the constant TRUE, so literal 0 is true and literal 1
is false.  Inputs occupy nodes ``1..n_inputs`` in creation order; AND nodes
follow.  Construction folds constants and duplicate gates, so semantically
trivial subcircuits never allocate nodes.
"""

from __future__ import annotations

TRUE_LIT = 0
FALSE_LIT = 1


class Circuit:
    def __init__(self):
        self.inputs: list[str] = []  # labels; node ids 1..len(inputs)
        self.and_a: list[int] = []  # left literal of each AND node
        self.and_b: list[int] = []
        self._strash: dict[tuple[int, int], int] = {}
        self.root: int = TRUE_LIT

    # -- construction -------------------------------------------------

    def add_input(self, label: str) -> int:
        self.inputs.append(label)
        return 2 * len(self.inputs)

    def const(self, value: bool) -> int:
        return TRUE_LIT if value else FALSE_LIT

    @staticmethod
    def neg(x: int) -> int:
        return x ^ 1

    def AND(self, x: int, y: int) -> int:
        if x > y:
            x, y = y, x
        if x == TRUE_LIT:
            return y
        if x == FALSE_LIT or x == (y ^ 1):
            return FALSE_LIT
        if x == y:
            return x
        node = self._strash.get((x, y))
        if node is None:
            self.and_a.append(x)
            self.and_b.append(y)
            node = len(self.inputs) + len(self.and_a)
            self._strash[(x, y)] = node
        return 2 * node

    def OR(self, x: int, y: int) -> int:
        return self.AND(x ^ 1, y ^ 1) ^ 1

    def XOR(self, x: int, y: int) -> int:
        return self.OR(self.AND(x, y ^ 1), self.AND(x ^ 1, y))

    def IFF(self, x: int, y: int) -> int:
        return self.XOR(x, y) ^ 1

    def and_all(self, lits) -> int:
        out = TRUE_LIT
        for x in lits:
            out = self.AND(out, x)
        return out

    def or_all(self, lits) -> int:
        out = FALSE_LIT
        for x in lits:
            out = self.OR(out, x)
        return out

    def exactly_one(self, lits: list[int]) -> int:
        at_least = self.or_all(lits)
        pairs = [
            self.AND(lits[i], lits[j]) ^ 1
            for i in range(len(lits))
            for j in range(i + 1, len(lits))
        ]
        return self.AND(at_least, self.and_all(pairs))

    # -- introspection ------------------------------------------------

    @property
    def n_inputs(self) -> int:
        return len(self.inputs)

    @property
    def n_nodes(self) -> int:
        return 1 + len(self.inputs) + len(self.and_a)

    def is_input(self, node: int) -> bool:
        return 1 <= node <= len(self.inputs)

    # -- evaluation ---------------------------------------------------

    def eval_masks(self, input_masks: list[int], width: int) -> list[int]:
        """Bit-parallel evaluation: compute every node over ``width`` lanes.

        ``input_masks[i]`` holds the lane values of input node ``i+1``.
        Returns per-node masks; read literal ``l`` with ``lit_mask``.
        """
        full = (1 << width) - 1
        vals = [full]  # node 0 = TRUE
        vals.extend(input_masks)
        for a, b in zip(self.and_a, self.and_b):
            ma = vals[a >> 1] ^ (full if a & 1 else 0)
            mb = vals[b >> 1] ^ (full if b & 1 else 0)
            vals.append(ma & mb)
        return vals

    def lit_mask(self, vals: list[int], lit: int, width: int) -> int:
        m = vals[lit >> 1]
        return m ^ ((1 << width) - 1) if lit & 1 else m

    def eval_lit(self, lit: int, assignment: list[bool]) -> bool:
        """Evaluate one literal under a plain per-input assignment."""
        vals = self.eval_masks([1 if v else 0 for v in assignment], 1)
        return bool(self.lit_mask(vals, lit, 1))

    # -- partial evaluation -------------------------------------------

    def cofactor(self, values: dict[int, bool]) -> tuple["Circuit", dict[int, int], list[int]]:
        """Substitute constants for some inputs and rebuild with folding.

        ``values`` maps input node ids to fixed truth values.  Returns the
        new circuit, an old-input-node -> new-literal map for the inputs
        kept free, and the list of kept old input node ids (in order).
        """
        out = Circuit()
        lit_map: list[int] = [TRUE_LIT]  # positive literal per old node
        input_map: dict[int, int] = {}
        kept: list[int] = []
        for i in range(1, len(self.inputs) + 1):
            if i in values:
                lit_map.append(out.const(values[i]))
            else:
                lit = out.add_input(self.inputs[i - 1])
                input_map[i] = lit
                kept.append(i)
                lit_map.append(lit)
        for a, b in zip(self.and_a, self.and_b):
            la = lit_map[a >> 1] ^ (a & 1)
            lb = lit_map[b >> 1] ^ (b & 1)
            lit_map.append(out.AND(la, lb))
        out.root = lit_map[self.root >> 1] ^ (self.root & 1)
        return out, input_map, kept
