"""Exact linear programming over the rationals.

A dense two-phase primal simplex with Bland's anti-cycling rule.  All
arithmetic uses :class:`fractions.Fraction`, so optimal values, primal
points and dual prices are exact; strong duality and complementary
slackness are verified bit-for-bit before a solution is returned.

Conventions
-----------
* Problems are minimizations: ``min c.x`` subject to ``A_i.x <= / = / >= b_i``
  and per-variable lower bounds (``None`` means the variable is free).
* Dual sign convention: ``y_i <= 0`` for ``<=`` rows, ``y_i >= 0`` for
  ``>=`` rows, free for equality rows.  Reduced costs
  ``c_j - y.A_j`` are nonnegative for bounded variables and zero for
  free variables at optimality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .rationals import rat, rat_matrix, rat_seq

__all__ = [
    "LE",
    "EQ",
    "GE",
    "OPTIMAL",
    "INFEASIBLE",
    "UNBOUNDED",
    "LpError",
    "DimensionError",
    "SizeLimitError",
    "UnboundedFaceError",
    "LinearProgram",
    "LpSolution",
    "make_lp",
    "lp_solve",
    "zero_sum_value",
    "optimal_face_vertices",
    "solve_unique",
    "matrix_rank",
]

LE, EQ, GE = "<=", "=", ">="
OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"

ZERO = Fraction(0)
ONE = Fraction(1)

FACE_DIMENSION_LIMIT = 12


class LpError(Exception):
    """Base class for solver errors."""


class DimensionError(LpError):
    """Objective, rows, senses, rhs and bounds disagree in shape."""


class SizeLimitError(LpError):
    """A brute-force enumeration would exceed its documented limit."""


class UnboundedFaceError(LpError):
    """The optimal face is unbounded, so it has no finite vertex list."""


class InternalCheckError(LpError):
    """An exact self-check failed; indicates a solver bug, not bad input."""


@dataclass(frozen=True)
class LinearProgram:
    """``min objective.x`` s.t. ``rows[i].x  senses[i]  rhs[i]``, ``x >= lower_bounds``."""

    objective: tuple[Fraction, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    senses: tuple[str, ...]
    rhs: tuple[Fraction, ...]
    lower_bounds: tuple[Fraction | None, ...]

    def __post_init__(self):
        n = len(self.objective)
        if n == 0:
            raise DimensionError("LP needs at least one variable")
        if not (len(self.rows) == len(self.senses) == len(self.rhs)):
            raise DimensionError("rows, senses and rhs must have equal length")
        for row in self.rows:
            if len(row) != n:
                raise DimensionError("row length %d != %d variables" % (len(row), n))
        if len(self.lower_bounds) != n:
            raise DimensionError("one lower bound (or None) per variable required")
        for s in self.senses:
            if s not in (LE, EQ, GE):
                raise DimensionError("unknown sense %r" % (s,))


@dataclass(frozen=True)
class LpSolution:
    status: str
    value: Fraction | None
    primal: tuple[Fraction, ...] | None
    dual: tuple[Fraction, ...] | None


def make_lp(objective, rows, senses, rhs, lower_bounds=None) -> LinearProgram:
    """Build a :class:`LinearProgram`, coercing entries to Fraction.

    ``lower_bounds`` defaults to zero for every variable.
    """
    objective = rat_seq(objective)
    n = len(objective)
    if lower_bounds is None:
        lbs: tuple[Fraction | None, ...] = (ZERO,) * n
    else:
        lbs = tuple(None if b is None else rat(b) for b in lower_bounds)
    return LinearProgram(
        objective=objective,
        rows=rat_matrix(rows),
        senses=tuple(senses),
        rhs=rat_seq(rhs),
        lower_bounds=lbs,
    )


# ---------------------------------------------------------------------------
# dense exact Gaussian elimination


def solve_unique(rows, rhs, n):
    """Solve a linear system with ``n`` unknowns.

    Returns the solution tuple when the system is consistent and has a
    unique solution, else None.  ``rows`` may contain redundant rows.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m = len(aug)
    pivot_cols = []
    r = 0
    for col in range(n):
        sel = None
        for i in range(r, m):
            if aug[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        aug[r], aug[sel] = aug[sel], aug[r]
        pv = aug[r][col]
        aug[r] = [v / pv for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivot_cols.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None  # inconsistent
    if len(pivot_cols) < n:
        return None  # underdetermined
    x = [ZERO] * n
    for i, col in enumerate(pivot_cols):
        x[col] = aug[i][n]
    return tuple(x)


def matrix_rank(rows, n):
    mat = [list(r) for r in rows]
    m = len(mat)
    rank = 0
    for col in range(n):
        sel = None
        for i in range(rank, m):
            if mat[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        pv = mat[rank][col]
        for i in range(m):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col] / pv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
        if rank == m:
            break
    return rank


# ---------------------------------------------------------------------------
# simplex core


class _Tableau:
    """Equality-form tableau ``A.z = b`` with ``z >= 0`` plus bookkeeping."""

    def __init__(self, lp: LinearProgram):
        self.lp = lp
        n = len(lp.objective)

        # std variable k -> (original index j, sign); free vars are split.
        self.var_map: list[tuple[int, int]] = []
        cost: list[Fraction] = []
        for j in range(n):
            self.var_map.append((j, 1))
            cost.append(lp.objective[j])
            if lp.lower_bounds[j] is None:
                self.var_map.append((j, -1))
                cost.append(-lp.objective[j])

        rows: list[list[Fraction]] = []
        rhs: list[Fraction] = []
        shift = [lb if lb is not None else ZERO for lb in lp.lower_bounds]
        for i, row in enumerate(lp.rows):
            coeffs = [sign * row[j] for (j, sign) in self.var_map]
            rows.append(coeffs)
            rhs.append(lp.rhs[i] - sum((row[j] * shift[j] for j in range(n)), ZERO))

        # slack columns
        self.slack_of_row: list[int | None] = []
        for i, sense in enumerate(lp.senses):
            if sense == EQ:
                self.slack_of_row.append(None)
                continue
            col = len(cost)
            coef = ONE if sense == LE else -ONE
            for r, rw in enumerate(rows):
                rw.append(coef if r == i else ZERO)
            cost.append(ZERO)
            self.slack_of_row.append(col)
            self.var_map.append((-1, 0))

        # normalize rhs >= 0
        self.flipped = [False] * len(rows)
        for i in range(len(rows)):
            if rhs[i] < 0:
                rows[i] = [-v for v in rows[i]]
                rhs[i] = -rhs[i]
                self.flipped[i] = True

        self.ncols_real = len(cost)
        self.cost = cost
        self.rows = rows
        self.rhs = rhs
        self.row_orig = list(range(len(rows)))  # tableau row -> original row
        # static copy of the post-flip equality matrix, for dual extraction
        self.eq_matrix = [list(r) for r in rows]
        self.eq_orig = list(range(len(rows)))

    # -- pivoting ---------------------------------------------------------

    def _pivot(self, r, e, zrow, zval):
        pv = self.rows[r][e]
        self.rows[r] = [v / pv for v in self.rows[r]]
        self.rhs[r] /= pv
        for i in range(len(self.rows)):
            if i != r and self.rows[i][e] != 0:
                f = self.rows[i][e]
                self.rows[i] = [a - f * b for a, b in zip(self.rows[i], self.rows[r])]
                self.rhs[i] -= f * self.rhs[r]
        f = zrow[e]
        if f != 0:
            zrow[:] = [a - f * b for a, b in zip(zrow, self.rows[r])]
            zval += f * self.rhs[r]
        self.basis[r] = e
        return zval

    def _priced_zrow(self, cost):
        ncols = len(self.cost)
        zrow = list(cost)
        zval = ZERO
        for r, bv in enumerate(self.basis):
            cb = cost[bv]
            if cb != 0:
                row = self.rows[r]
                for j in range(ncols):
                    if row[j] != 0:
                        zrow[j] -= cb * row[j]
                zval += cb * self.rhs[r]
        return zrow, zval

    def _bland(self, cost, allowed):
        """Minimize ``cost`` over the current basis; Bland's rule throughout."""
        zrow, zval = self._priced_zrow(cost)
        while True:
            enter = None
            for j in allowed:
                if zrow[j] < 0:
                    enter = j
                    break
            if enter is None:
                return zval, False
            leave = None
            best = None
            for r in range(len(self.rows)):
                a = self.rows[r][enter]
                if a > 0:
                    ratio = self.rhs[r] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best:
                        best = key
                        leave = r
            if leave is None:
                return zval, True  # unbounded in this phase
            zval = self._pivot(leave, enter, zrow, zval)

    # -- two phases -------------------------------------------------------

    def run(self):
        m = len(self.rows)
        ncols = self.ncols_real

        # seed basis with usable slacks, artificials elsewhere
        self.basis = [-1] * m
        art_cols = []
        for r in range(m):
            s = self.slack_of_row[r]
            if s is not None:
                coef = self.rows[r][s]
                if coef == ONE:
                    self.basis[r] = s
                    continue
            art_cols.append(r)
        art_of_row = {}
        for r in art_cols:
            col = len(self.cost)
            for i in range(m):
                self.rows[i].append(ONE if i == r else ZERO)
            self.cost.append(ZERO)
            self.var_map.append((-2, 0))
            self.basis[r] = col
            art_of_row[r] = col
        n_total = len(self.cost)
        artificial = set(art_of_row.values())

        if artificial:
            phase1_cost = [ZERO] * n_total
            for c in artificial:
                phase1_cost[c] = ONE
            # Artificials start basic and may leave, but never re-enter.
            # Re-entry would break the unit shape of the artificial
            # columns, and the redundant-row drop below relies on it.
            allowed = range(ncols)
            zval, unb = self._bland(phase1_cost, allowed)
            if unb:
                raise InternalCheckError("phase 1 cannot be unbounded")
            if zval != 0:
                return INFEASIBLE
            # drive artificials out of the basis
            for r in range(m):
                if self.basis[r] in artificial:
                    enter = None
                    for j in range(ncols):
                        if self.rows[r][j] != 0:
                            enter = j
                            break
                    if enter is not None:
                        dummy = [ZERO] * n_total
                        self._pivot(r, enter, dummy, ZERO)
            # drop rows still held by artificials: they are redundant
            keep = [r for r in range(m) if self.basis[r] not in artificial]
            if len(keep) < m:
                self.rows = [self.rows[r] for r in keep]
                self.rhs = [self.rhs[r] for r in keep]
                self.basis = [self.basis[r] for r in keep]
                self.row_orig = [self.row_orig[r] for r in keep]
                m = len(keep)

        phase2_cost = self.cost
        allowed = range(ncols)
        zval, unb = self._bland(phase2_cost, allowed)
        if unb:
            return UNBOUNDED
        return OPTIMAL

    # -- extraction -------------------------------------------------------

    def primal(self):
        lp = self.lp
        n = len(lp.objective)
        std = [ZERO] * len(self.cost)
        for r, bv in enumerate(self.basis):
            std[bv] = self.rhs[r]
        x = [lb if lb is not None else ZERO for lb in lp.lower_bounds]
        for k, (j, sign) in enumerate(self.var_map):
            if j >= 0 and std[k] != 0:
                x[j] += sign * std[k]
        return tuple(x)

    def dual(self):
        """Row prices from the final basis, mapped back to original rows."""
        live = self.row_orig
        mats = self.eq_matrix
        basis_cols = self.basis
        b_t = [[mats[orig][c] for orig in live] for c in basis_cols]  # B^T
        c_b = [self.cost[c] for c in basis_cols]
        y = solve_unique(b_t, c_b, len(live))
        if y is None:
            raise InternalCheckError("basis matrix is singular")
        full = [ZERO] * len(self.lp.rows)
        for k, orig in enumerate(live):
            full[orig] = -y[k] if self.flipped[orig] else y[k]
        return tuple(full)


def _verify_optimal(lp: LinearProgram, x, y):
    """Exact feasibility, duality and complementary-slackness checks."""
    n = len(lp.objective)
    for j in range(n):
        lb = lp.lower_bounds[j]
        if lb is not None and x[j] < lb:
            raise InternalCheckError("primal bound violated")
    reduced = []
    for j in range(n):
        r = lp.objective[j] - sum(
            (y[i] * lp.rows[i][j] for i in range(len(lp.rows))), ZERO
        )
        reduced.append(r)
        if lp.lower_bounds[j] is None:
            if r != 0:
                raise InternalCheckError("free variable with nonzero reduced cost")
        elif r < 0:
            raise InternalCheckError("negative reduced cost at optimum")
    dual_value = ZERO
    for i, row in enumerate(lp.rows):
        act = sum((row[j] * x[j] for j in range(n)), ZERO)
        sense = lp.senses[i]
        if sense == LE:
            if act > lp.rhs[i]:
                raise InternalCheckError("<= row violated")
            if y[i] > 0:
                raise InternalCheckError("dual sign on <= row")
        elif sense == GE:
            if act < lp.rhs[i]:
                raise InternalCheckError(">= row violated")
            if y[i] < 0:
                raise InternalCheckError("dual sign on >= row")
        elif act != lp.rhs[i]:
            raise InternalCheckError("equality row violated")
        if y[i] * (act - lp.rhs[i]) != 0:
            raise InternalCheckError("complementary slackness (rows)")
        dual_value += y[i] * lp.rhs[i]
    for j in range(n):
        lb = lp.lower_bounds[j]
        if lb is not None:
            if reduced[j] * (x[j] - lb) != 0:
                raise InternalCheckError("complementary slackness (bounds)")
            dual_value += reduced[j] * lb
    primal_value = sum((lp.objective[j] * x[j] for j in range(n)), ZERO)
    if primal_value != dual_value:
        raise InternalCheckError("strong duality gap")
    return primal_value


def lp_solve(lp: LinearProgram) -> LpSolution:
    """Solve ``lp`` exactly.

    On ``optimal`` the returned primal/dual pair satisfies strong duality
    and complementary slackness exactly (verified before returning).
    """
    tab = _Tableau(lp)
    status = tab.run()
    if status != OPTIMAL:
        return LpSolution(status=status, value=None, primal=None, dual=None)
    x = tab.primal()
    y = tab.dual()
    value = _verify_optimal(lp, x, y)
    return LpSolution(status=OPTIMAL, value=value, primal=x, dual=y)


# ---------------------------------------------------------------------------
# zero-sum matrix games


def zero_sum_value(payoff):
    """Exact value and equilibrium of a zero-sum matrix game.

    The row player chooses a mixture over rows to minimize, the column
    player a mixture over columns to maximize, the expected entry of
    ``payoff``.  Returns ``(value, row_mix, col_mix)``; the mixes form a
    saddle point, verified exactly.
    """
    payoff = rat_matrix(payoff)
    m = len(payoff)
    if m == 0:
        raise DimensionError("payoff matrix needs at least one row")
    ncols = len(payoff[0])
    for row in payoff:
        if len(row) != ncols:
            raise DimensionError("ragged payoff matrix")
    if ncols == 0:
        raise DimensionError("payoff matrix needs at least one column")

    # min t  s.t.  sum_i p_i M[i][j] <= t  for all j,  p in the simplex
    nvars = 1 + m
    rows = []
    senses = []
    rhs = []
    for j in range(ncols):
        rows.append([-ONE] + [payoff[i][j] for i in range(m)])
        senses.append(LE)
        rhs.append(ZERO)
    rows.append([ZERO] + [ONE] * m)
    senses.append(EQ)
    rhs.append(ONE)
    lp = make_lp(
        objective=[ONE] + [ZERO] * m,
        rows=rows,
        senses=senses,
        rhs=rhs,
        lower_bounds=[None] + [ZERO] * m,
    )
    sol = lp_solve(lp)
    if sol.status != OPTIMAL:
        raise InternalCheckError("matrix game LP must be solvable")
    value = sol.value
    row_mix = tuple(sol.primal[1:])
    col_mix = tuple(-sol.dual[j] for j in range(ncols))

    if sum(col_mix, ZERO) != 1 or any(q < 0 for q in col_mix):
        raise InternalCheckError("dual prices are not a column mixture")
    worst_col = max(
        sum((row_mix[i] * payoff[i][j] for i in range(m)), ZERO) for j in range(ncols)
    )
    worst_row = min(
        sum((col_mix[j] * payoff[i][j] for j in range(ncols)), ZERO) for i in range(m)
    )
    if not (worst_col == value == worst_row):
        raise InternalCheckError("saddle point check failed")
    return value, row_mix, col_mix


# ---------------------------------------------------------------------------
# optimal-face vertex enumeration


def _bounded_by_rows(lp: LinearProgram, j):
    """Cheap certificate that variable j is bounded above on the feasible set."""
    for i, row in enumerate(lp.rows):
        if lp.senses[i] == GE or row[j] <= 0:
            continue
        ok = True
        for k, a in enumerate(row):
            if k == j:
                continue
            if a < 0 or (a > 0 and lp.lower_bounds[k] is None):
                ok = False
                break
        if ok:
            return True
    return False


def optimal_face_vertices(lp: LinearProgram, optimum) -> list[tuple[Fraction, ...]]:
    """All vertices of ``{x feasible : objective.x = optimum}``.

    Brute force over active constraint sets; limited to
    ``FACE_DIMENSION_LIMIT`` variables.  Raises
    :class:`UnboundedFaceError` when the face is unbounded and returns
    ``[]`` when ``optimum`` is not attained.
    """
    optimum = rat(optimum)
    n = len(lp.objective)
    if n > FACE_DIMENSION_LIMIT:
        raise SizeLimitError(
            "face enumeration limited to %d variables, got %d"
            % (FACE_DIMENSION_LIMIT, n)
        )

    face_rows = list(lp.rows) + [lp.objective]
    face_senses = list(lp.senses) + [EQ]
    face_rhs = list(lp.rhs) + [optimum]

    # boundedness probes (free vars always probed; bounded vars probed
    # unless a single row certifies an upper bound)
    for j in range(n):
        directions = [ONE, -ONE] if lp.lower_bounds[j] is None else [ONE]
        if lp.lower_bounds[j] is not None and _bounded_by_rows(lp, j):
            continue
        for sign in directions:
            probe_obj = [ZERO] * n
            probe_obj[j] = -sign  # maximize sign * x_j
            probe = LinearProgram(
                objective=tuple(probe_obj),
                rows=tuple(tuple(r) for r in face_rows),
                senses=tuple(face_senses),
                rhs=tuple(face_rhs),
                lower_bounds=lp.lower_bounds,
            )
            sol = lp_solve(probe)
            if sol.status == INFEASIBLE:
                return []
            if sol.status == UNBOUNDED:
                raise UnboundedFaceError("optimal face is unbounded")

    eq_rows = [list(r) for r, s in zip(face_rows, face_senses) if s == EQ]
    eq_rhs = [b for b, s in zip(face_rhs, face_senses) if s == EQ]
    ineq = [
        (list(r), b, s)
        for r, b, s in zip(face_rows, face_rhs, face_senses)
        if s != EQ
    ]
    bound_vars = [j for j in range(n) if lp.lower_bounds[j] is not None]

    base_rank = matrix_rank(eq_rows, n)
    need = n - base_rank

    vertices = set()

    def feasible(x):
        for row, b, s in ineq:
            act = sum((row[j] * x[j] for j in range(n)), ZERO)
            if s == LE and act > b:
                return False
            if s == GE and act < b:
                return False
        for r, b in zip(eq_rows, eq_rhs):
            if sum((r[j] * x[j] for j in range(n)), ZERO) != b:
                return False
        for j in bound_vars:
            if x[j] < lp.lower_bounds[j]:
                return False
        return True

    for t in range(0, min(need, len(ineq)) + 1):
        nb = need - t
        if nb > len(bound_vars):
            continue
        for rows_subset in itertools.combinations(range(len(ineq)), t):
            for bounds_subset in itertools.combinations(bound_vars, nb):
                fixed = {j: lp.lower_bounds[j] for j in bounds_subset}
                free_idx = [j for j in range(n) if j not in fixed]
                sys_rows = []
                sys_rhs = []
                for r, b in zip(eq_rows, eq_rhs):
                    sys_rows.append([r[j] for j in free_idx])
                    sys_rhs.append(b - sum((r[j] * fixed[j] for j in fixed), ZERO))
                for ri in rows_subset:
                    row, b, _s = ineq[ri]
                    sys_rows.append([row[j] for j in free_idx])
                    sys_rhs.append(b - sum((row[j] * fixed[j] for j in fixed), ZERO))
                sol = solve_unique(sys_rows, sys_rhs, len(free_idx))
                if sol is None:
                    continue
                x = [ZERO] * n
                for k, j in enumerate(free_idx):
                    x[j] = sol[k]
                for j, v in fixed.items():
                    x[j] = v
                x = tuple(x)
                if feasible(x):
                    vertices.add(x)

    return sorted(vertices)
