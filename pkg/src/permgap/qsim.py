"""Qubit circuits over the real gate set, with exact statevector simulation.

Gates are restricted to {H, Z, X, RQ, RQinv, CNOT, CSIGN, TOFFOLI}, where RQ
is the rotation by pi/8,

    RQ = (1/2) [[sqrt(2+sqrt2), -sqrt(2-sqrt2)],
                [sqrt(2-sqrt2),  sqrt(2+sqrt2)]],

so every matrix entry lives in Q(alpha) and simulation is exact.  The two
main constructions are:

  * build_oracle_circuit / build_delta_circuit -- turn a NAND netlist C into
    the phase-kickback circuit whose all-zeros amplitude is delta(C) / 2^n;

  * lower -- rewrite CNOT and TOFFOLI into {H, Z, X, RQ, RQinv, CSIGN}
    exactly.  A CNOT is a CSIGN conjugated by Hadamards on the target.  A
    TOFFOLI expands through three exact stages: doubly-controlled R blocks
    (R = RQ^4 = [[0,-1],[1,0]]), a non-affine classical gate made of two
    such blocks plus two CSIGNs, and four copies of that gate acting on the
    three logical qubits plus one fresh |0> ancilla (the non-affine gate is
    an even permutation, the Toffoli an odd one, hence the ancilla).

Basis-state strings read qubit 0 first, i.e. "q0 q1 ...", and qubit 0 is
the most significant bit of the statevector index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import circuits as bc
from .qalpha import ONE, QAlpha, ZERO, derive_representation, inv_sqrt2

SIMULATION_GUARD = 14
UNITARY_GUARD = 6

SINGLE_QUBIT_KINDS = ("H", "Z", "X", "RQ", "RQinv")
LOWERED_KINDS = frozenset(SINGLE_QUBIT_KINDS) | {"CSIGN"}
ALL_KINDS = LOWERED_KINDS | {"CNOT", "TOFFOLI"}

_ARITY = {"H": 1, "Z": 1, "X": 1, "RQ": 1, "RQinv": 1,
          "CNOT": 2, "CSIGN": 2, "TOFFOLI": 3}


@dataclass(frozen=True)
class QubitGate:
    kind: str
    targets: tuple

    def __post_init__(self):
        if self.kind not in ALL_KINDS:
            raise ValueError(f"unknown gate {self.kind!r}")
        if len(self.targets) != _ARITY[self.kind]:
            raise ValueError(f"{self.kind} takes {_ARITY[self.kind]} qubits")
        if len(set(self.targets)) != len(self.targets):
            raise ValueError("gate targets must be distinct")


@dataclass(frozen=True)
class QubitCircuit:
    qubit_count: int
    gates: tuple

    def __post_init__(self):
        for g in self.gates:
            if max(g.targets) >= self.qubit_count:
                raise ValueError("gate addresses a nonexistent qubit")

    @property
    def lowered(self) -> bool:
        return all(g.kind in LOWERED_KINDS for g in self.gates)

    def count(self, kind: str) -> int:
        return sum(1 for g in self.gates if g.kind == kind)


def gate(kind: str, *targets) -> QubitGate:
    return QubitGate(kind, tuple(targets))


@lru_cache(maxsize=None)
def single_qubit_matrix(kind: str):
    """Exact 2x2 matrix over Q(alpha), rows/cols in basis order (|0>, |1>)."""
    one, zero = ONE, ZERO
    if kind == "X":
        return ((zero, one), (one, zero))
    if kind == "Z":
        return ((one, zero), (zero, -one))
    if kind == "H":
        s = inv_sqrt2()
        return ((s, s), (s, -s))
    if kind in ("RQ", "RQinv"):
        c = derive_representation("sqrt(2+sqrt2)") * QAlpha.from_rational("1/2")
        s = derive_representation("sqrt(2-sqrt2)") * QAlpha.from_rational("1/2")
        if kind == "RQ":
            return ((c, -s), (s, c))
        return ((c, s), (-s, c))
    raise ValueError(f"{kind} is not a single-qubit gate")


# ---------------------------------------------------------------------------
# Exact simulation
# ---------------------------------------------------------------------------

def _apply_gate(state, g: QubitGate, q: int):
    kind = g.kind
    if kind in ("X", "Z"):
        t = g.targets[0]
        bit = 1 << (q - 1 - t)
        if kind == "X":
            for i in range(len(state)):
                if not i & bit:
                    state[i], state[i | bit] = state[i | bit], state[i]
        else:
            for i in range(len(state)):
                if i & bit and state[i]:
                    state[i] = -state[i]
        return
    if kind in ("H", "RQ", "RQinv"):
        m = single_qubit_matrix(kind)
        t = g.targets[0]
        bit = 1 << (q - 1 - t)
        for i in range(len(state)):
            if not i & bit:
                a, b = state[i], state[i | bit]
                if a or b:
                    state[i] = m[0][0] * a + m[0][1] * b
                    state[i | bit] = m[1][0] * a + m[1][1] * b
        return
    if kind == "CSIGN":
        b1 = 1 << (q - 1 - g.targets[0])
        b2 = 1 << (q - 1 - g.targets[1])
        both = b1 | b2
        for i in range(len(state)):
            if i & both == both and state[i]:
                state[i] = -state[i]
        return
    if kind == "CNOT":
        bc_, bt = (1 << (q - 1 - g.targets[0])), (1 << (q - 1 - g.targets[1]))
        for i in range(len(state)):
            if i & bc_ and not i & bt:
                state[i], state[i | bt] = state[i | bt], state[i]
        return
    if kind == "TOFFOLI":
        b1, b2, bt = (1 << (q - 1 - t) for t in g.targets)
        ctrl = b1 | b2
        for i in range(len(state)):
            if i & ctrl == ctrl and not i & bt:
                state[i], state[i | bt] = state[i | bt], state[i]
        return
    raise AssertionError(kind)


def _basis_index(s: str, q: int) -> int:
    if len(s) != q or any(ch not in "01" for ch in s):
        raise ValueError(f"basis string must be {q} bits")
    return int(s, 2)


def simulate_state(qc: QubitCircuit, in_state: str):
    q = qc.qubit_count
    if q > SIMULATION_GUARD:
        raise ValueError(f"statevector guard: {q} > {SIMULATION_GUARD} qubits")
    state = [ZERO] * (1 << q)
    state[_basis_index(in_state, q)] = ONE
    for g in qc.gates:
        _apply_gate(state, g, q)
    return state


def simulate_amplitude(qc: QubitCircuit, in_state: str, out_state: str) -> QAlpha:
    """Exact transition amplitude <out| U |in> in Q(alpha)."""
    state = simulate_state(qc, in_state)
    return state[_basis_index(out_state, qc.qubit_count)]


def circuit_unitary(qc: QubitCircuit):
    """The full 2^q x 2^q matrix, exact.  Column j is the image of basis state j."""
    q = qc.qubit_count
    if q > UNITARY_GUARD:
        raise ValueError(f"unitary guard: {q} > {UNITARY_GUARD} qubits")
    dim = 1 << q
    cols = []
    for j in range(dim):
        cols.append(simulate_state(qc, format(j, f"0{q}b")))
    return tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim))


# ---------------------------------------------------------------------------
# Oracle circuit for a NAND netlist
# ---------------------------------------------------------------------------

def _flip_answer(ops, ans, literal):
    """Append gates flipping `ans` by the wire literal (kind, qubit, negated)."""
    kind, qubit, negated = literal
    if kind == "const":
        if qubit == 1:
            ops.append(gate("X", ans))
        return
    if negated:
        ops.append(gate("X", ans))
    ops.append(gate("CNOT", qubit, ans))


def build_oracle_circuit(c: bc.BooleanCircuit, optimize: bool = False) -> QubitCircuit:
    """Reversible oracle |x, b, 0...> -> |x, b + C(x), 0...> from the netlist.

    The generic construction allocates one ancilla per gate: every ancilla is
    primed to |1> with X and written once by a Toffoli controlled on the gate
    inputs, the answer qubit is flipped through the output gate, and the whole
    compute section runs again in reverse to restore the ancillas.  Gates
    whose two inputs are the same wire need only a CNOT.

    With optimize=True, wires whose value is a constant or a literal of
    another wire are tracked symbolically and never materialized, so circuits
    computing constants or input copies need no ancillas at all.  The
    compiled-network pipeline uses this mode to stay inside desk-scale
    permanent guards.
    """
    n = c.input_count
    ans = n

    if not optimize:
        anc = {k: n + 1 + k for k in range(len(c.gates))}

        def wq(w):
            return w if w < n else anc[w - n]

        prime = [gate("X", anc[k]) for k in range(len(c.gates))]
        compute = []
        for k, (a, b) in enumerate(c.gates):
            if a == b:
                compute.append(gate("CNOT", wq(a), anc[k]))
            else:
                compute.append(gate("TOFFOLI", wq(a), wq(b), anc[k]))
        flip = []
        if c.output < n:
            flip.append(gate("CNOT", c.output, ans))
        else:
            a, b = c.gates[c.output - n]
            flip.append(gate("X", ans))
            if a == b:
                # b + NAND(w, w) = b + 1 + w
                flip.append(gate("CNOT", wq(a), ans))
            else:
                flip.append(gate("TOFFOLI", wq(a), wq(b), ans))
        ops = prime + compute + flip + compute[::-1] + prime[::-1]
        return QubitCircuit(n + 1 + len(c.gates), tuple(ops))

    # Literal-propagation mode: a wire value is const 0/1, q, or not q for a
    # qubit q; NAND only needs an ancilla when both operands are independent
    # non-constant literals.
    CONST, LIT = "const", "lit"
    values = {w: (LIT, w, False) for w in range(n)}
    next_qubit = n + 1
    compute = []

    def negate(v):
        kind, q, neg = v
        return (CONST, 1 - q, False) if kind == CONST else (LIT, q, not neg)

    def materialize_nand(va, vb):
        nonlocal next_qubit
        target = next_qubit
        next_qubit += 1
        compute.append(gate("X", target))
        pre = []
        for (_, q, neg) in (va, vb):
            if neg:
                pre.append(gate("X", q))
        compute.extend(pre)
        compute.append(gate("TOFFOLI", va[1], vb[1], target))
        compute.extend(reversed(pre))
        return (LIT, target, False)

    for k, (a, b) in enumerate(c.gates):
        va, vb = values[a], values[b]
        if va > vb:
            va, vb = vb, va
        if va[0] == CONST and vb[0] == CONST:
            out = (CONST, 1 - (va[1] & vb[1]), False)
        elif va[0] == CONST:
            out = (CONST, 1, False) if va[1] == 0 else negate(vb)
        elif vb[0] == CONST:
            out = (CONST, 1, False) if vb[1] == 0 else negate(va)
        elif va[1] == vb[1]:
            # same qubit: NAND(v, v) = not v; NAND(v, not v) = 1
            out = (CONST, 1, False) if va[2] != vb[2] else negate(va)
        elif k == len(c.gates) - 1 and c.output == n + k:
            # output gate feeding nothing else: fold into the answer flip
            out = None
        else:
            out = materialize_nand(va, vb)
        values[n + k] = out

    flip = []
    out_val = values[c.output]
    if out_val is None:
        # answer += NAND(va, vb) = 1 + va*vb
        a, b = c.gates[c.output - n]
        va, vb = values[a], values[b]
        flip.append(gate("X", ans))
        pre = [gate("X", v[1]) for v in (va, vb) if v[2]]
        flip.extend(pre)
        flip.append(gate("TOFFOLI", va[1], vb[1], ans))
        flip.extend(reversed(pre))
    else:
        _flip_answer(flip, ans, out_val)
    ops = compute + flip + compute[::-1]
    return QubitCircuit(next_qubit, tuple(ops))


def build_delta_circuit(c: bc.BooleanCircuit, optimize: bool = False) -> QubitCircuit:
    """Circuit Q with <0...0| Q |0...0> = delta(c) / 2^n, gate set unlowered.

    Hadamards on the input qubits, an H then Z preparing |-> on the answer
    qubit, the oracle in the middle, and the mirror image closing.
    """
    oracle = build_oracle_circuit(c, optimize=optimize)
    n = c.input_count
    ans = n
    opening = [gate("H", i) for i in range(n)] + [gate("H", ans), gate("Z", ans)]
    closing = [gate("Z", ans), gate("H", ans)] + [gate("H", i) for i in range(n)]
    return QubitCircuit(oracle.qubit_count, tuple(opening) + oracle.gates + tuple(closing))


# ---------------------------------------------------------------------------
# Exact lowering to {H, Z, X, RQ, RQinv, CSIGN}
# ---------------------------------------------------------------------------

def _cnot_block(ctrl, tgt):
    return [gate("H", tgt), gate("CSIGN", ctrl, tgt), gate("H", tgt)]


def _ccr_block(c1, c2, tgt):
    # doubly-controlled R = RQ^4; reading order RQ, CNOT(c2), RQinv, CNOT(c1), twice
    ops = []
    for _ in range(2):
        ops.append(gate("RQ", tgt))
        ops.extend(_cnot_block(c2, tgt))
        ops.append(gate("RQinv", tgt))
        ops.extend(_cnot_block(c1, tgt))
    return ops


def _nonaffine_block(a, b, c):
    """Classical non-affine gate equal to Toffoli(b,c -> a) then Toffoli(a,b -> c)."""
    return (_ccr_block(b, c, a) + _ccr_block(a, b, c)
            + [gate("CSIGN", b, c), gate("CSIGN", a, b)])


def _toffoli_block(q1, q2, q3, anc):
    """Toffoli(q1, q2 -> q3) from four non-affine gates and a fresh |0> ancilla."""
    return (_nonaffine_block(anc, q2, q3)
            + _nonaffine_block(q3, q2, q1)
            + _nonaffine_block(q3, q2, anc)
            + _nonaffine_block(q1, q2, anc))


def lower(qc: QubitCircuit) -> QubitCircuit:
    """Exact rewrite into {H, Z, X, RQ, RQinv, CSIGN}.

    Each TOFFOLI consumes one fresh ancilla, appended after all logical
    qubits in order of occurrence; the lowered unitary agrees with the
    original exactly on the ancilla-|0> block.
    """
    n_toffoli = qc.count("TOFFOLI")
    ops = []
    next_anc = qc.qubit_count
    for g in qc.gates:
        if g.kind == "CNOT":
            ops.extend(_cnot_block(*g.targets))
        elif g.kind == "TOFFOLI":
            ops.extend(_toffoli_block(*g.targets, next_anc))
            next_anc += 1
        else:
            ops.append(g)
    return QubitCircuit(qc.qubit_count + n_toffoli, tuple(ops))


def dump(qc: QubitCircuit) -> str:
    """Debug format: one `KIND q1 [q2 [q3]]` line per gate."""
    return "\n".join(f"{g.kind} " + " ".join(str(t) for t in g.targets) for g in qc.gates) + "\n"
