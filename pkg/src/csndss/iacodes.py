"""Minimum-storage code simulator for the (n=6, k=4) clustered system.

Two (6,4) systematic MDS codes over GF(2^m) encode the x-half and y-half
of an 8-symbol file; node i stores the pair (x_i, y_i), so alpha = 2.
Nodes 1..3 form one cluster and 4..6 the other.  A failed node is rebuilt
from 7 symbols: both symbols of its 2 cluster mates (beta_I = 2) plus one
linear combination lambda*x + lambda'*y from each of the 3 cross-cluster
nodes (beta_C = 1).  The cross coefficients are chosen by interference
alignment: the contributions of the symbols that were never downloaded
span a rank-1 space (so they cancel), while the failed pair's coefficient
matrix stays invertible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

CLUSTERS: tuple[tuple[int, ...], tuple[int, ...]] = ((1, 2, 3), (4, 5, 6))

#: Default simulator seed; the code it produces admits alignment plans
#: for all six failures (checked in the test suite).
DEFAULT_SEED = 1


class GF:
    """GF(2^m) arithmetic with exp/log tables; elements are ints 0..q-1."""

    def __init__(self, order: int, modulus: int):
        if order < 4 or order & (order - 1):
            raise ValueError(f"order must be a power of two >= 4, got {order}")
        if modulus >> (order.bit_length() - 1) != 1:
            raise ValueError(f"modulus 0x{modulus:x} has wrong degree for order {order}")
        self.order = order
        self.modulus = modulus
        self.generator = self._find_generator()
        self.exp = [0] * (2 * (order - 1))
        self.log = [0] * order
        x = 1
        for i in range(order - 1):
            self.exp[i] = x
            self.exp[i + order - 1] = x
            self.log[x] = i
            x = self._slow_mul(x, self.generator)

    def _slow_mul(self, a: int, b: int) -> int:
        result = 0
        top = self.order  # bit just above the field mask
        while b:
            if b & 1:
                result ^= a
            a <<= 1
            if a & top:
                a ^= self.modulus
            b >>= 1
        return result

    def _find_generator(self) -> int:
        for g in range(2, self.order):
            x, period = 1, 0
            while True:
                x = self._slow_mul(x, g)
                period += 1
                if x == 1:
                    break
            if period == self.order - 1:
                return g
        raise ValueError(f"modulus 0x{self.modulus:x} is not primitive-friendly")

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.exp[self.order - 1 - self.log[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        acc = 0
        for a, b in zip(u, v):
            acc ^= self.mul(a, b)
        return acc


GF256 = GF(256, 0x11D)
GF16 = GF(16, 0x13)
FIELDS: dict[int, GF] = {256: GF256, 16: GF16}


def get_field(order: int) -> GF:
    if order not in FIELDS:
        raise ValueError(f"unsupported field order {order}; available: {sorted(FIELDS)}")
    return FIELDS[order]


# ---------------------------------------------------------------------------
# Small dense linear algebra over GF(2^m).

def gf_rref(rows: Sequence[Sequence[int]], f: GF) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form and pivot columns (rows copied)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    width = len(m[0])
    pivots: list[int] = []
    row = 0
    for col in range(width):
        pivot = next((r for r in range(row, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        scale = f.inv(m[row][col])
        m[row] = [f.mul(scale, x) for x in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col]:
                factor = m[r][col]
                m[r] = [x ^ f.mul(factor, y) for x, y in zip(m[r], m[row])]
        pivots.append(col)
        row += 1
        if row == len(m):
            break
    return m, pivots


def gf_rank(rows: Sequence[Sequence[int]], f: GF) -> int:
    return len(gf_rref(rows, f)[1])


def gf_det(rows: Sequence[Sequence[int]], f: GF) -> int:
    m = [list(r) for r in rows]
    n = len(m)
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return 0
        m[col], m[pivot] = m[pivot], m[col]
        det = f.mul(det, m[col][col])
        inv = f.inv(m[col][col])
        for r in range(col + 1, n):
            if m[r][col]:
                factor = f.mul(m[r][col], inv)
                m[r] = [x ^ f.mul(factor, y) for x, y in zip(m[r], m[col])]
    return det


def gf_solve(A: Sequence[Sequence[int]], b: Sequence[int], f: GF) -> list[int] | None:
    """One solution of A z = b (free variables zeroed); None if inconsistent."""
    width = len(A[0])
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    rref, pivots = gf_rref(aug, f)
    solution = [0] * width
    for row, col in zip(rref, pivots):
        if col == width:
            return None  # 0 = nonzero
        solution[col] = row[width]
    for row in rref[len(pivots):]:
        if row[width]:
            return None
    return solution


def gf_rowspace_contains(A: Sequence[Sequence[int]], row: Sequence[int], f: GF) -> bool:
    return gf_rank(A, f) == gf_rank(list(A) + [list(row)], f)


def gf_kernel_vector(rows: Sequence[Sequence[int]], width: int, f: GF) -> list[int] | None:
    """A nonzero kernel vector (deterministic), or None if full column rank."""
    rref, pivots = gf_rref(rows, f)
    free = [c for c in range(width) if c not in pivots]
    if not free:
        return None
    col = free[0]
    vec = [0] * width
    vec[col] = 1
    for row, pc in zip(rref, pivots):
        vec[pc] = row[col]  # char 2: -x == x
    return vec


# ---------------------------------------------------------------------------
# Code specification.

class CodeConstructionError(RuntimeError):
    """MDS construction failed; retry with another seed or a larger field."""


class NoAlignmentError(RuntimeError):
    """No aligned download coefficients exist for this code.

    Signals that the code (or field) should be re-seeded.
    """


@dataclass(frozen=True)
class CodeSpec:
    """Parity columns of the two systematic (6,4) MDS generators.

    The x-code generator is [I | gx hx], the y-code generator [I | gy hy].
    """

    gx: tuple[int, int, int, int]
    hx: tuple[int, int, int, int]
    gy: tuple[int, int, int, int]
    hy: tuple[int, int, int, int]
    field_order: int = 256

    @property
    def field(self) -> GF:
        return get_field(self.field_order)

    def generator(self, which: str) -> list[list[int]]:
        """4x6 generator matrix for the "x" or "y" code."""
        g, h = (self.gx, self.hx) if which == "x" else (self.gy, self.hy)
        return [
            [1 if r == c else 0 for c in range(4)] + [g[r], h[r]]
            for r in range(4)
        ]

    def parity_rows(self, which: str) -> list[list[int]]:
        """Two parity-check rows over the 6 stored symbols of one code."""
        g, h = (self.gx, self.hx) if which == "x" else (self.gy, self.hy)
        return [list(g) + [1, 0], list(h) + [0, 1]]

    def to_json_dict(self) -> dict:
        return {
            "field_order": self.field_order,
            "gx": list(self.gx),
            "hx": list(self.hx),
            "gy": list(self.gy),
            "hy": list(self.hy),
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "CodeSpec":
        return cls(
            gx=tuple(data["gx"]),
            hx=tuple(data["hx"]),
            gy=tuple(data["gy"]),
            hy=tuple(data["hy"]),
            field_order=data["field_order"],
        )


@dataclass(frozen=True)
class NodeContent:
    """The alpha = 2 symbols (x_i, y_i) stored by one node."""

    x: int
    y: int


def mds_violations(g: Sequence[int], h: Sequence[int], f: GF) -> list[tuple[int, ...]]:
    """4-column subsets of [I | g h] whose minor is singular (empty iff MDS)."""
    columns = [[1 if r == c else 0 for r in range(4)] for c in range(4)]
    columns.append(list(g))
    columns.append(list(h))
    bad = []
    for subset in combinations(range(6), 4):
        minor = [[columns[c][r] for c in subset] for r in range(4)]
        if gf_det(minor, f) == 0:
            bad.append(subset)
    return bad


def make_code(seed: int, field_order: int = 256) -> CodeSpec:
    """Deterministic MDS code pair from a seed.

    Parity columns come from seeded Cauchy blocks (entries 1/(u_i + v_j)
    with distinct points), then both generators are verified MDS by
    checking all 15 four-column minors.
    """
    f = get_field(field_order)
    if field_order < 8:
        raise CodeConstructionError(f"field order {field_order} < 8")
    rng = random.Random(seed)

    def cauchy_pair() -> tuple[tuple[int, ...], tuple[int, ...]]:
        points = rng.sample(range(field_order), 6)
        u, v = points[:4], points[4:]
        cols = [[f.inv(ui ^ vj) for ui in u] for vj in v]
        return tuple(cols[0]), tuple(cols[1])

    gx, hx = cauchy_pair()
    gy, hy = cauchy_pair()
    for g, h in ((gx, hx), (gy, hy)):
        bad = mds_violations(g, h, f)
        if bad:
            raise CodeConstructionError(
                f"seed {seed}: generator with columns {g}, {h} has singular minors {bad}"
            )
    return CodeSpec(gx=gx, hx=hx, gy=gy, hy=hy, field_order=field_order)


# ---------------------------------------------------------------------------
# Encoding and reconstruction.

def encode(file: Sequence[int], code: CodeSpec) -> dict[int, NodeContent]:
    """Store an 8-symbol file (x1..x4, y1..y4) on nodes 1..6."""
    if len(file) != 8:
        raise ValueError(f"file must have 8 symbols, got {len(file)}")
    f = code.field
    x, y = list(file[:4]), list(file[4:])
    contents = {i + 1: NodeContent(x[i], y[i]) for i in range(4)}
    contents[5] = NodeContent(f.dot(x, code.gx), f.dot(y, code.gy))
    contents[6] = NodeContent(f.dot(x, code.hx), f.dot(y, code.hy))
    return contents


def reconstruct(nodes: Mapping[int, NodeContent], code: CodeSpec) -> tuple[int, ...]:
    """Recover the original 8 symbols from any 4 of the 6 nodes."""
    if len(nodes) != 4 or not set(nodes) <= set(range(1, 7)):
        raise ValueError(f"need 4 distinct node indices in 1..6, got {sorted(nodes)}")
    f = code.field
    indices = sorted(nodes)
    out: list[int] = []
    for which, pick in (("x", lambda c: c.x), ("y", lambda c: c.y)):
        gen = code.generator(which)
        A = [[gen[j][i - 1] for j in range(4)] for i in indices]
        b = [pick(nodes[i]) for i in indices]
        solution = gf_solve(A, b, f)
        if solution is None:
            raise AssertionError("singular system for an MDS code")
        out.extend(solution)
    return tuple(out)


# ---------------------------------------------------------------------------
# Repair by interference alignment.

@dataclass(frozen=True)
class RepairPlan:
    """Download recipe for one failed node.

    cross_coeffs[j] = (lambda, lambda') asks cross node cross_sources[j]
    for the single symbol lambda*x + lambda'*y.
    """

    failed: int
    intra_sources: tuple[int, int]
    cross_sources: tuple[int, int, int]
    cross_coeffs: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]
    field_order: int = 256

    def to_json_dict(self) -> dict:
        return {
            "failed": self.failed,
            "intra_sources": list(self.intra_sources),
            "cross_sources": list(self.cross_sources),
            "cross_coeffs": [list(pair) for pair in self.cross_coeffs],
            "field_order": self.field_order,
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "RepairPlan":
        return cls(
            failed=data["failed"],
            intra_sources=tuple(data["intra_sources"]),
            cross_sources=tuple(data["cross_sources"]),
            cross_coeffs=tuple(tuple(pair) for pair in data["cross_coeffs"]),
            field_order=data["field_order"],
        )


@dataclass(frozen=True)
class Transfer:
    """One downloaded symbol: its source node, what it is, and its value."""

    source: int
    label: str
    value: int


@dataclass(frozen=True)
class RepairResult:
    content: NodeContent
    transcript: tuple[Transfer, ...]


class RepairFailedError(RuntimeError):
    """The downloaded symbols are inconsistent with the code."""


def cluster_of(node: int) -> tuple[int, ...]:
    for cluster in CLUSTERS:
        if node in cluster:
            return cluster
    raise ValueError(f"node {node} not in 1..6")


def _plan_sources(failed: int) -> tuple[tuple[int, int], tuple[int, int, int]]:
    own = cluster_of(failed)
    other = CLUSTERS[1] if own is CLUSTERS[0] else CLUSTERS[0]
    intra = tuple(n for n in own if n != failed)
    return intra, tuple(other)


def _repair_system(plan: RepairPlan, code: CodeSpec) -> list[list[int]]:
    """Coefficient matrix of the download equations.

    Unknown order: (x_f, y_f, x_c1, y_c1, x_c2, y_c2, x_c3, y_c3) with
    cross nodes in plan order.  Rows: two x-parity checks, two y-parity
    checks, then the three cross download equations.
    """
    unknown_slots = {("x", plan.failed): 0, ("y", plan.failed): 1}
    for idx, c in enumerate(plan.cross_sources):
        unknown_slots[("x", c)] = 2 + 2 * idx
        unknown_slots[("y", c)] = 3 + 2 * idx
    rows: list[list[int]] = []
    for which in ("x", "y"):
        for parity in code.parity_rows(which):
            row = [0] * 8
            for node in range(1, 7):
                slot = unknown_slots.get((which, node))
                if slot is not None:
                    row[slot] = parity[node - 1]
            rows.append(row)
    for idx, (lam, lam2) in enumerate(plan.cross_coeffs):
        row = [0] * 8
        row[2 + 2 * idx] = lam
        row[3 + 2 * idx] = lam2
        rows.append(row)
    return rows


def plan_determines_failed_pair(plan: RepairPlan, code: CodeSpec) -> bool:
    """True iff the plan's equations pin down both lost symbols."""
    f = code.field
    A = _repair_system(plan, code)
    for target_slot in (0, 1):
        e = [0] * 8
        e[target_slot] = 1
        if not gf_rowspace_contains(A, e, f):
            return False
    return True


def interference_matrix(plan: RepairPlan, code: CodeSpec) -> list[list[int]]:
    """3x2 coefficients of the never-downloaded systematic pair (x4, y4).

    Only defined for failures in the systematic cluster {1, 2, 3}, where
    node 4 is the one systematic node reached by a single mixed symbol.
    An aligned plan makes this matrix rank 1.
    """
    if plan.failed not in CLUSTERS[0]:
        raise ValueError("interference matrix is defined for failed nodes 1..3")
    f = code.field
    rows = []
    for c, (lam, lam2) in zip(plan.cross_sources, plan.cross_coeffs):
        if c == 4:
            rows.append([lam, lam2])
        elif c == 5:
            rows.append([f.mul(lam, code.gx[3]), f.mul(lam2, code.gy[3])])
        else:
            rows.append([f.mul(lam, code.hx[3]), f.mul(lam2, code.hy[3])])
    return rows


def target_matrix(plan: RepairPlan, code: CodeSpec) -> list[list[int]]:
    """2x2 coefficients of the failed pair in the parity-node downloads.

    Defined for failures in {1, 2, 3}; a valid plan makes it invertible.
    """
    if plan.failed not in CLUSTERS[0]:
        raise ValueError("target matrix is defined for failed nodes 1..3")
    f = code.field
    i = plan.failed - 1
    by_source = dict(zip(plan.cross_sources, plan.cross_coeffs))
    lam5, lam5b = by_source[5]
    lam6, lam6b = by_source[6]
    return [
        [f.mul(lam5, code.gx[i]), f.mul(lam5b, code.gy[i])],
        [f.mul(lam6, code.hx[i]), f.mul(lam6b, code.hy[i])],
    ]


def _systematic_side_candidates(failed: int, code: CodeSpec) -> Iterable[RepairPlan]:
    """Aligned coefficients for failures in cluster {1, 2, 3}.

    All three mixed symbols are made proportional to x4 + y4 (direction
    (1, 1)), which any other valid direction only rescales.
    """
    f = code.field
    intra, cross = _plan_sources(failed)
    if 0 in (code.gx[3], code.gy[3], code.hx[3], code.hy[3]):
        return
    coeffs = {
        4: (1, 1),
        5: (f.inv(code.gx[3]), f.inv(code.gy[3])),
        6: (f.inv(code.hx[3]), f.inv(code.hy[3])),
    }
    yield RepairPlan(
        failed=failed,
        intra_sources=intra,
        cross_sources=cross,
        cross_coeffs=tuple(coeffs[c] for c in cross),
        field_order=code.field_order,
    )


def _parity_side_candidates(failed: int, code: CodeSpec) -> Iterable[RepairPlan]:
    """Aligned coefficients for failures in cluster {4, 5, 6}.

    The three cross downloads from nodes 1..3 must leave the span of the
    x-parity rows equal to the span of the substituted y-parity rows;
    that is two linear constraints on the coefficient ratios, solved by a
    kernel vector.  Both elimination directions are tried.
    """
    f = code.field
    intra, cross = _plan_sources(failed)

    def normal(u: Sequence[int], v: Sequence[int]) -> list[int] | None:
        return gf_kernel_vector([list(u), list(v)], 3, f)

    attempts: list[tuple[tuple[int, ...], tuple[int, ...], bool]] = [
        ((code.gx[:3], code.hx[:3]), (code.gy[:3], code.hy[:3]), False),
        ((code.gy[:3], code.hy[:3]), (code.gx[:3], code.hx[:3]), True),
    ]
    for (p1, p2), (q1, q2), swap in attempts:
        z = normal(p1, p2)
        if z is None:
            continue
        scaled = [
            [f.mul(q1[j], z[j]) for j in range(3)],
            [f.mul(q2[j], z[j]) for j in range(3)],
        ]
        mu = gf_kernel_vector(scaled, 3, f)
        if mu is None:
            continue
        pairs = tuple((1, m) if swap else (m, 1) for m in mu)
        yield RepairPlan(
            failed=failed,
            intra_sources=intra,
            cross_sources=cross,
            cross_coeffs=pairs,
            field_order=code.field_order,
        )


def plan_repair(failed: int, code: CodeSpec) -> RepairPlan:
    """Aligned download plan for one failed node (deterministic).

    Candidates are derived from the alignment conditions in a fixed
    order; the first one whose equations determine the lost pair wins.
    Raises NoAlignmentError when the code admits none, in which case the
    code should be regenerated from another seed.
    """
    if not 1 <= failed <= 6:
        raise ValueError(f"failed node must be 1..6, got {failed}")
    candidates = (
        _systematic_side_candidates(failed, code)
        if failed in CLUSTERS[0]
        else _parity_side_candidates(failed, code)
    )
    for plan in candidates:
        if plan_determines_failed_pair(plan, code):
            return plan
    raise NoAlignmentError(
        f"no aligned coefficients for failed node {failed}; re-seed the code"
    )


def repair(
    failed: int,
    plan: RepairPlan,
    alive: Mapping[int, NodeContent],
    code: CodeSpec,
) -> RepairResult:
    """Rebuild the failed node's pair from 7 downloaded symbols.

    Downloads both symbols of each intra source and one mixed symbol per
    cross source, cancels the aligned interference, and solves for the
    lost pair.  Raises RepairFailedError if the downloads are mutually
    inconsistent (only detectable for rank-deficient plans).
    """
    if plan.failed != failed:
        raise ValueError(f"plan is for node {plan.failed}, not {failed}")
    if plan.field_order != code.field_order:
        raise ValueError("plan and code use different fields")
    missing = [n for n in (*plan.intra_sources, *plan.cross_sources) if n not in alive]
    if missing:
        raise ValueError(f"alive contents missing plan sources {missing}")

    f = code.field
    transcript: list[Transfer] = []
    for node in plan.intra_sources:
        transcript.append(Transfer(node, "x", alive[node].x))
        transcript.append(Transfer(node, "y", alive[node].y))
    mixed: list[int] = []
    for node, (lam, lam2) in zip(plan.cross_sources, plan.cross_coeffs):
        value = f.mul(lam, alive[node].x) ^ f.mul(lam2, alive[node].y)
        mixed.append(value)
        transcript.append(Transfer(node, f"{lam}*x+{lam2}*y", value))

    A = _repair_system(plan, code)
    b: list[int] = []
    for which, pick in (("x", lambda c: c.x), ("y", lambda c: c.y)):
        for parity in code.parity_rows(which):
            rhs = 0
            for node in plan.intra_sources:
                rhs ^= f.mul(parity[node - 1], pick(alive[node]))
            b.append(rhs)
    b.extend(mixed)

    solution = gf_solve(A, b, f)
    if solution is None:
        raise RepairFailedError(
            f"downloads for node {failed} are inconsistent with the code"
        )
    return RepairResult(
        content=NodeContent(solution[0], solution[1]), transcript=tuple(transcript)
    )


def random_file(rng: random.Random, field: GF) -> tuple[int, ...]:
    """A uniformly random 8-symbol file."""
    return tuple(rng.randrange(field.order) for _ in range(8))
