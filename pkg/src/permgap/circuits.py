"""NAND netlists, their gaps, and the gap-arithmetic circuit combinators.

A circuit is a list of NAND gates over wire indices: inputs occupy wires
0..n-1 and gate k produces wire n+k.  The quantity everything downstream
cares about is the gap

    delta(C) = sum over x in {0,1}^n of (-1)^C(x),

computed here by brute-force enumeration (the oracle all reductions are
checked against).  The combinators negate/add/multiply realize the
corresponding arithmetic on gaps, shift(c, k) realizes delta - k for even k,
and or_extend adds a fresh input so the gap becomes delta + 2^n >= 0.

Note on parity: a circuit with n >= 1 inputs always has an even gap (the sum
has 2^n terms of +-1), so only even shifts are realizable by any circuit
construction whatsoever.  The sign-oracle searches only ever need even
shifts because the searched-for gap is itself even.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

ENUMERATION_GUARD = 24

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


class NetlistError(ValueError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass(frozen=True)
class BooleanCircuit:
    """A NAND netlist.  Wires: inputs 0..n-1, gate k drives wire n+k."""

    input_count: int
    gates: tuple  # ((a, b), ...) wire index pairs
    output: int

    def __post_init__(self):
        n = self.input_count
        if n < 0:
            raise ValueError("negative input count")
        for k, (a, b) in enumerate(self.gates):
            if not (0 <= a < n + k and 0 <= b < n + k):
                raise ValueError(f"gate {k} references wire not yet defined")
        if not (0 <= self.output < n + len(self.gates)):
            raise ValueError("output references a nonexistent wire")

    @property
    def wire_count(self) -> int:
        return self.input_count + len(self.gates)

    def eval(self, bits) -> int:
        if len(bits) != self.input_count:
            raise ValueError("input length mismatch")
        wires = list(bits)
        for a, b in self.gates:
            wires.append(1 - (wires[a] & wires[b]))
        return wires[self.output]


def parse_netlist(text: str) -> BooleanCircuit:
    """Parse the line-oriented netlist format.

    `input NAME` lines first, `gate NAME = NAND(A, B)` lines in topological
    order, one `output NAME` (the output line may appear anywhere; it is
    resolved once all declarations are read).  `#` starts a comment.
    """
    names = {}
    gates = []
    n = 0
    output_name = None
    output_line = None
    seen_gate = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        keyword = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        if keyword == "input":
            if seen_gate:
                raise NetlistError("input declared after gates", lineno)
            name = rest.strip()
            if not _NAME_RE.match(name):
                raise NetlistError(f"bad wire name {name!r}", lineno)
            if name in names:
                raise NetlistError(f"duplicate wire {name!r}", lineno)
            names[name] = n
            n += 1
        elif keyword == "gate":
            seen_gate = True
            m = re.match(r"([A-Za-z_][A-Za-z0-9_]*)\s*=\s*NAND\(\s*([A-Za-z_][A-Za-z0-9_]*)\s*,\s*([A-Za-z_][A-Za-z0-9_]*)\s*\)$", rest)
            if not m:
                raise NetlistError("expected `gate NAME = NAND(A, B)`", lineno)
            gname, aname, bname = m.groups()
            if gname in names:
                raise NetlistError(f"duplicate wire {gname!r}", lineno)
            for ref in (aname, bname):
                if ref not in names:
                    raise NetlistError(f"undeclared or forward-referenced wire {ref!r}", lineno)
            gates.append((names[aname], names[bname]))
            names[gname] = n + len(gates) - 1
        elif keyword == "output":
            if output_name is not None:
                raise NetlistError("multiple output lines", lineno)
            name = rest.strip()
            if not _NAME_RE.match(name):
                raise NetlistError(f"bad wire name {name!r}", lineno)
            output_name = name
            output_line = lineno
        else:
            raise NetlistError(f"unknown directive {keyword!r}", lineno)
    if output_name is None:
        raise NetlistError("missing output")
    if output_name not in names:
        raise NetlistError(f"output names unknown wire {output_name!r}", output_line)
    return BooleanCircuit(n, tuple(gates), names[output_name])


def to_netlist(c: BooleanCircuit) -> str:
    """Canonical netlist text; parse(to_netlist(c)) reproduces c exactly."""
    lines = [f"input x{i}" for i in range(c.input_count)]

    def wname(w):
        return f"x{w}" if w < c.input_count else f"g{w - c.input_count}"

    for k, (a, b) in enumerate(c.gates):
        lines.append(f"gate g{k} = NAND({wname(a)}, {wname(b)})")
    lines.append(f"output {wname(c.output)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Gap oracle
# ---------------------------------------------------------------------------

def delta_bruteforce(c: BooleanCircuit) -> int:
    """Exact gap by enumeration of all 2^n assignments (bit-parallel)."""
    n = c.input_count
    if n > ENUMERATION_GUARD:
        raise ValueError(f"enumeration guard: {n} > {ENUMERATION_GUARD} inputs")
    total = 1 << n
    mask = (1 << total) - 1
    wires = []
    for j in range(n):
        # bit i of pattern = value of input j under assignment i
        block = (1 << (1 << j)) - 1
        period = 1 << (j + 1)
        pattern = 0
        for start in range(1 << j, total, period):
            pattern |= block << start
        wires.append(pattern)
    for a, b in c.gates:
        wires.append(~(wires[a] & wires[b]) & mask)
    ones = wires[c.output].bit_count()
    return total - 2 * ones


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

class CircuitBuilder:
    """Convenience constructors; everything lowers to NAND immediately."""

    def __init__(self, input_count: int):
        self.n = input_count
        self.gates = []

    def wire_count(self):
        return self.n + len(self.gates)

    def nand(self, a, b):
        self.gates.append((a, b))
        return self.wire_count() - 1

    def not_(self, a):
        return self.nand(a, a)

    def and_(self, a, b):
        return self.not_(self.nand(a, b))

    def or_(self, a, b):
        return self.nand(self.not_(a), self.not_(b))

    def xor_(self, a, b):
        t = self.nand(a, b)
        return self.nand(self.nand(a, t), self.nand(b, t))

    def const1(self, a):
        # NAND(a, not a) is identically 1
        return self.nand(a, self.not_(a))

    def const0(self, a):
        return self.not_(self.const1(a))

    def build(self, output) -> BooleanCircuit:
        return BooleanCircuit(self.n, tuple(self.gates), output)


def constant_circuit(bit: int, inputs: int) -> BooleanCircuit:
    if inputs < 1:
        raise ValueError("constant circuits need at least one input")
    b = CircuitBuilder(inputs)
    w = b.const1(0) if bit else b.const0(0)
    return b.build(w)


def append_circuit(builder: CircuitBuilder, c: BooleanCircuit, input_wires) -> int:
    """Inline c into builder with its inputs bound to input_wires; returns output wire."""
    if len(input_wires) != c.input_count:
        raise ValueError("input binding mismatch")
    mapping = list(input_wires)
    for a, b in c.gates:
        mapping.append(builder.nand(mapping[a], mapping[b]))
    return mapping[c.output]


# ---------------------------------------------------------------------------
# Gap combinators
# ---------------------------------------------------------------------------

def negate(c: BooleanCircuit) -> BooleanCircuit:
    b = CircuitBuilder(c.input_count)
    out = append_circuit(b, c, range(c.input_count))
    return b.build(b.not_(out))


def multiply(c1: BooleanCircuit, c2: BooleanCircuit) -> BooleanCircuit:
    """Gap product via XOR on disjoint inputs."""
    b = CircuitBuilder(c1.input_count + c2.input_count)
    o1 = append_circuit(b, c1, range(c1.input_count))
    o2 = append_circuit(b, c2, range(c1.input_count, b.n))
    return b.build(b.xor_(o1, o2))


def add(c1: BooleanCircuit, c2: BooleanCircuit) -> BooleanCircuit:
    """Gap sum via a fresh selector input branching between the circuits.

    Both circuits must read the same number of inputs; use pad() explicitly
    if they do not (padding rescales the gap, which is never done silently).
    """
    if c1.input_count != c2.input_count:
        raise ValueError("add requires equal input counts; pad explicitly")
    n = c1.input_count
    b = CircuitBuilder(n + 1)
    sel = n
    o1 = append_circuit(b, c1, range(n))
    o2 = append_circuit(b, c2, range(n))
    nsel = b.not_(sel)
    t1 = b.nand(nsel, o1)
    t2 = b.nand(sel, o2)
    return b.build(b.nand(t1, t2))


def combine(kind: str, c1: BooleanCircuit, c2: BooleanCircuit | None = None) -> BooleanCircuit:
    if kind == "negate":
        return negate(c1)
    if kind == "multiply":
        if c2 is None:
            raise ValueError("multiply needs two circuits")
        return multiply(c1, c2)
    if kind == "add":
        if c2 is None:
            raise ValueError("add needs two circuits")
        return add(c1, c2)
    raise ValueError(f"unknown combinator {kind!r}")


def pad(c: BooleanCircuit, extra: int) -> BooleanCircuit:
    """Append unused inputs; multiplies the gap by 2^extra."""
    if extra < 0:
        raise ValueError("cannot remove inputs")
    n = c.input_count

    def remap(w):
        return w if w < n else w + extra

    gates = tuple((remap(a), remap(b)) for a, b in c.gates)
    return BooleanCircuit(n + extra, gates, remap(c.output))


def threshold_circuit(inputs: int, sat_count: int) -> BooleanCircuit:
    """Circuit true on exactly the first sat_count assignments (x < s as an integer).

    Bit 0 of the assignment index is input 0, so input j carries place value
    2^j.  The gap is 2^inputs - 2*sat_count.
    """
    if not (0 <= sat_count <= 1 << inputs):
        raise ValueError("threshold out of range")
    b = CircuitBuilder(inputs)
    if sat_count == 0:
        return b.build(b.const0(0))
    if sat_count == 1 << inputs:
        return b.build(b.const1(0))
    s_bits = [(sat_count >> j) & 1 for j in range(inputs)]
    # ripple compare, least significant bit up:
    # less(j..0) = (x_j < s_j) or (x_j == s_j and less(j-1..0))
    less = b.const0(0)
    for j in range(inputs):
        xj = j
        if s_bits[j]:
            # x_j < s_j iff x_j = 0; equal iff x_j = 1
            lt = b.not_(xj)
            eq = xj
        else:
            lt = b.const0(0)
            eq = b.not_(xj)
        less = b.or_(lt, b.and_(eq, less))
    return b.build(less)


def shift(c: BooleanCircuit, k: int) -> BooleanCircuit:
    """Circuit whose gap is delta(c) - k, for even k (see module note on parity).

    Realized by add-combining with a threshold circuit of gap -k; the input
    count grows until 2^n covers |k|.
    """
    if k == 0:
        return c
    if k % 2 != 0:
        raise ValueError("odd shifts are unrealizable: gaps of circuits with "
                         "inputs are always even")
    cur = c
    while (1 << cur.input_count) < abs(k):
        cur = add(cur, threshold_circuit(cur.input_count, 1 << (cur.input_count - 1)))
    n = cur.input_count
    # threshold gap = 2^n - 2s = -k  =>  s = (2^n + k) / 2
    s = ((1 << n) + k) // 2
    return add(cur, threshold_circuit(n, s))


def or_extend(c: BooleanCircuit) -> BooleanCircuit:
    """Extend by one input so the gap becomes delta(c) + 2^n (hence >= 0).

    The new input gates the circuit: the composite is false whenever the
    fresh input is 0, which contributes +2^n to the gap under the
    sum-of-(-1)^C convention used throughout.
    """
    n = c.input_count
    b = CircuitBuilder(n + 1)
    out = append_circuit(b, c, range(n))
    return b.build(b.and_(out, n))
