"""
Sparse exact linear algebra over the rationals.

Vectors are dicts mapping a hashable key to a nonzero ``Fraction``.  The
pivot of a new row is its first surviving key in dict order, so results are
deterministic for deterministic inputs.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InconsistencyError

__all__ = ["Echelon", "solve_linear", "rank", "express"]


def _axpy(target, scale, source):
    """target += scale * source (in place, dropping zeros)."""
    for k, v in source.items():
        x = target.get(k, 0) + scale * v
        if x:
            target[k] = x
        else:
            target.pop(k, None)


class Echelon:
    """Incremental row echelon form that remembers how each row was built.

    ``add(vec, label)`` reduces ``vec`` against the current pivots; a nonzero
    residue becomes a new pivot row.  ``express(vec)`` writes ``vec`` as a
    combination of the labels added so far, or returns None.
    """

    def __init__(self, avoid=()):
        self.pivots = {}  # pivot key -> (row, combination)
        self.avoid = frozenset(avoid)  # keys used as pivots only as a last resort

    def __len__(self):
        return len(self.pivots)

    def _reduce(self, vec, combo):
        vec = dict(vec)
        changed = True
        while changed:
            changed = False
            for key in list(vec):
                if key in self.pivots and key in vec:
                    row, rcombo = self.pivots[key]
                    c = vec[key]
                    _axpy(vec, -c, row)
                    _axpy(combo, -c, rcombo)
                    changed = True
        return vec, combo

    def add(self, vec, label=None):
        """Return True if ``vec`` was independent of the rows so far."""
        combo = {label: Fraction(1)} if label is not None else {}
        vec, combo = self._reduce({k: Fraction(v) for k, v in vec.items() if v}, combo)
        if not vec:
            return False
        key = next((k for k in vec if k not in self.avoid), None)
        if key is None:
            key = next(iter(vec))
        c = vec[key]
        row = {k: v / c for k, v in vec.items()}
        rcombo = {k: v / c for k, v in combo.items()}
        # keep existing rows free of the new pivot key
        for pk, (prow, pcombo) in self.pivots.items():
            x = prow.get(key)
            if x:
                _axpy(prow, -x, row)
                _axpy(pcombo, -x, rcombo)
        self.pivots[key] = (row, rcombo)
        return True

    def express(self, vec):
        """Coefficients over labels giving ``vec``, or None if not in the span."""
        residue, combo = self._reduce({k: Fraction(v) for k, v in vec.items() if v}, {})
        if residue:
            return None
        return {k: -v for k, v in combo.items() if v}


def rank(vectors):
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return len(ech)


def express(basis, target):
    """Write ``target`` in terms of ``basis`` (dict label -> vector).

    The basis vectors must be linearly independent; raises otherwise.
    """
    ech = Echelon()
    for label, vec in basis.items():
        if not ech.add(vec, label):
            raise InconsistencyError(f"basis vector {label!r} is dependent")
    return ech.express(target)


def solve_linear(equations, unknowns, require_unique=True):
    """Solve ``sum(coeffs[u] * x[u]) == rhs`` for each ``(coeffs, rhs)``.

    Returns a dict of values for ``unknowns``.  Raises InconsistencyError when
    the system has no solution, or more than one when ``require_unique``.
    """
    RHS = object()
    ech = Echelon(avoid=(RHS,))
    index = {u: i for i, u in enumerate(unknowns)}
    for coeffs, rhs in equations:
        row = {index[u]: Fraction(c) for u, c in coeffs.items() if c}
        if rhs:
            row[RHS] = Fraction(rhs)
        if not row:
            continue
        if set(row) == {RHS}:
            raise InconsistencyError("linear system is inconsistent")
        ech.add(row)
    if RHS in ech.pivots:
        raise InconsistencyError("linear system is inconsistent")
    if require_unique and len(ech.pivots) != len(unknowns):
        raise InconsistencyError(
            f"linear system is underdetermined: rank {len(ech.pivots)} for {len(unknowns)} unknowns")
    solution = {u: Fraction(0) for u in unknowns}
    for key, (row, _combo) in ech.pivots.items():
        extra = [k for k in row if k is not RHS and k != key]
        if extra and require_unique:
            raise InconsistencyError("pivot row not fully reduced")
        solution[unknowns[key]] = row.get(RHS, Fraction(0))
    return solution
