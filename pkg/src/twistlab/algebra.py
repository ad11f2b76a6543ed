"""Sparse tensor algebra over group algebras, and exact linear algebra.

A TensorElement is an element of k[G]^(tensor rank) stored as a dict from
index tuples to nonzero scalars.  Products are componentwise group-algebra
convolutions.  Inversion works inside the group algebra of the subgroup of
G^rank generated by the support, via the minimal polynomial of the left
multiplication operator (Krylov iteration with exact elimination); the result
is always re-verified as a two-sided inverse.
"""
from __future__ import annotations

from math import gcd

from .scalars import ScalarError


class AlgebraError(ValueError):
    pass


# ---------------------------------------------------------------------------
# exact dense linear algebra over a field handle

def mat_rref(rows, ncols):
    """In-place reduced row echelon form; returns the pivot column list."""
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def mat_rank(rows, ncols):
    if not rows:
        return 0
    work = [list(r) for r in rows]
    return len(mat_rref(work, ncols))


def mat_nullspace(rows, ncols, field):
    """Basis of the right nullspace of the matrix."""
    work = [list(r) for r in rows]
    pivots = mat_rref(work, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [field.zero()] * ncols
        vec[fc] = field.one()
        for r, pc in enumerate(pivots):
            vec[pc] = -work[r][fc]
        basis.append(vec)
    return basis


def mat_solve(rows, rhs, ncols, field):
    """One exact solution of A x = b, or None if inconsistent.

    Free variables are set to zero.  rhs may be a list of vectors (matrix);
    then a list of solution vectors is returned.
    """
    single = rhs and not isinstance(rhs[0], list)
    bcols = [list(rhs)] if single else [list(c) for c in rhs]
    work = [list(r) + [bc[i] for bc in bcols] for i, r in enumerate(rows)]
    pivots = mat_rref(work, ncols)
    for i in range(len(work)):
        if i < len(pivots):
            continue
        for j in range(ncols, ncols + len(bcols)):
            if work[i][j]:
                return None
    outs = []
    for j in range(len(bcols)):
        vec = [field.zero()] * ncols
        for r, pc in enumerate(pivots):
            vec[pc] = work[r][ncols + j]
        outs.append(vec)
    return outs[0] if single else outs


def mat_inverse(rows, field):
    n = len(rows)
    ident = [[field.one() if i == j else field.zero() for j in range(n)]
             for i in range(n)]
    sol = mat_solve(rows, ident, n, field)
    if sol is None:
        raise AlgebraError("matrix is singular")
    # mat_solve returned columns of the inverse
    return [[sol[j][i] for j in range(n)] for i in range(n)]


def mat_mul(a, b, field):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = [[field.zero()] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(m):
                    if bt[j]:
                        oi[j] = oi[j] + x * bt[j]
    return out


def mat_vec(a, v, field):
    out = []
    for row in a:
        acc = field.zero()
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def mat_ratio(mat, base, field):
    """The scalar r with mat = r * base, or None if no such scalar exists."""
    pivot = None
    for i, row in enumerate(base):
        for j, v in enumerate(row):
            if v:
                pivot = (i, j)
                break
        if pivot:
            break
    if pivot is None:
        return field.zero() if not any(any(r) for r in mat) else None
    ratio = mat[pivot[0]][pivot[1]] * base[pivot[0]][pivot[1]].inverse()
    for i in range(len(base)):
        for j in range(len(base[0])):
            if mat[i][j] != base[i][j] * ratio:
                return None
    return ratio


def vec_ratio(vec, base, field):
    """The scalar r with vec = r * base for dict vectors, or None."""
    pivot = next((k for k, v in base.items() if v), None)
    if pivot is None:
        return field.zero() if not any(vec.values()) else None
    ratio = vec.get(pivot, field.zero()) * base[pivot].inverse()
    for k in set(vec) | set(base):
        left = vec.get(k, field.zero())
        right = base.get(k, field.zero()) * ratio
        if left != right:
            return None
    return ratio


# ---------------------------------------------------------------------------
# tensors over group algebras

class TensorElement:
    """Element of k[G]^(rank) as a sparse dict from index tuples to scalars."""

    __slots__ = ("group", "rank", "field", "coeffs")

    def __init__(self, group, rank, field, coeffs=None, prune=True):
        self.group = group
        self.rank = rank
        self.field = field
        if coeffs is None:
            self.coeffs = {}
        elif prune:
            self.coeffs = {k: v for k, v in coeffs.items() if v}
        else:
            self.coeffs = dict(coeffs)

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def zero(group, rank, field):
        return TensorElement(group, rank, field)

    @staticmethod
    def unit(group, rank, field):
        e = group.identity
        return TensorElement(group, rank, field, {(e,) * rank: field.one()},
                             prune=False)

    @staticmethod
    def basis(group, key, field):
        key = tuple(key)
        return TensorElement(group, len(key), field, {key: field.one()},
                             prune=False)

    def copy(self):
        return TensorElement(self.group, self.rank, self.field,
                             dict(self.coeffs), prune=False)

    # -- linear structure --------------------------------------------------------

    def __add__(self, other):
        self._compat(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            w = out.get(k)
            s = v if w is None else w + v
            if s:
                out[k] = s
            elif w is not None:
                del out[k]
        return TensorElement(self.group, self.rank, self.field, out, prune=False)

    def __sub__(self, other):
        self._compat(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            w = out.get(k)
            s = -v if w is None else w - v
            if s:
                out[k] = s
            elif w is not None:
                del out[k]
        return TensorElement(self.group, self.rank, self.field, out, prune=False)

    def __neg__(self):
        return TensorElement(self.group, self.rank, self.field,
                             {k: -v for k, v in self.coeffs.items()}, prune=False)

    def scale(self, s):
        if not s:
            return TensorElement.zero(self.group, self.rank, self.field)
        return TensorElement(self.group, self.rank, self.field,
                             {k: s * v for k, v in self.coeffs.items()}, prune=False)

    # -- multiplication -----------------------------------------------------------

    def __mul__(self, other):
        self._compat(other)
        table = self.group.table
        out = {}
        if self.rank == 1:
            for (a,), x in self.coeffs.items():
                row = table[a]
                for (b,), y in other.coeffs.items():
                    k = (row[b],)
                    v = x * y
                    w = out.get(k)
                    out[k] = v if w is None else w + v
        elif self.rank == 2:
            for (a1, a2), x in self.coeffs.items():
                r1, r2 = table[a1], table[a2]
                for (b1, b2), y in other.coeffs.items():
                    k = (r1[b1], r2[b2])
                    v = x * y
                    w = out.get(k)
                    out[k] = v if w is None else w + v
        elif self.rank == 3:
            for (a1, a2, a3), x in self.coeffs.items():
                r1, r2, r3 = table[a1], table[a2], table[a3]
                for (b1, b2, b3), y in other.coeffs.items():
                    k = (r1[b1], r2[b2], r3[b3])
                    v = x * y
                    w = out.get(k)
                    out[k] = v if w is None else w + v
        else:
            for ka, x in self.coeffs.items():
                for kb, y in other.coeffs.items():
                    k = tuple(table[a][b] for a, b in zip(ka, kb))
                    v = x * y
                    w = out.get(k)
                    out[k] = v if w is None else w + v
        return TensorElement(self.group, self.rank, self.field, out)

    def _compat(self, other):
        if not isinstance(other, TensorElement):
            raise AlgebraError("expected a TensorElement")
        if other.group is not self.group or other.rank != self.rank:
            raise AlgebraError("tensor shapes or groups do not match")

    # -- structure maps ------------------------------------------------------------

    def permute_legs(self, perm):
        """New tensor with legs reordered: new key[i] = old key[perm[i]]."""
        out = {}
        for k, v in self.coeffs.items():
            out[tuple(k[p] for p in perm)] = v
        return TensorElement(self.group, self.rank, self.field, out, prune=False)

    def swap(self):
        if self.rank != 2:
            raise AlgebraError("swap needs a rank-2 tensor")
        return self.permute_legs((1, 0))

    def embed(self, positions, rank):
        """Place legs at the given 1-based positions of a larger tensor.

        Remaining slots are filled with the group identity, e.g. J.embed((1, 2), 3)
        is J tensor 1.
        """
        if len(positions) != self.rank:
            raise AlgebraError("positions must match the tensor rank")
        e = self.group.identity
        out = {}
        for k, v in self.coeffs.items():
            key = [e] * rank
            for pos, a in zip(positions, k):
                key[pos - 1] = a
            out[tuple(key)] = v
        return TensorElement(self.group, rank, self.field, out, prune=False)

    def coproduct_leg(self, leg):
        """Apply the group-algebra coproduct g -> g (x) g to one 0-based leg."""
        out = {}
        for k, v in self.coeffs.items():
            key = k[:leg] + (k[leg], k[leg]) + k[leg + 1:]
            w = out.get(key)
            out[key] = v if w is None else w + v
        return TensorElement(self.group, self.rank + 1, self.field, out)

    def counit_leg(self, leg):
        """Apply the counit (every g -> 1) to one 0-based leg."""
        out = {}
        for k, v in self.coeffs.items():
            key = k[:leg] + k[leg + 1:]
            w = out.get(key)
            s = v if w is None else w + v
            out[key] = s
        return TensorElement(self.group, self.rank - 1, self.field, out)

    def antipode_leg(self, leg):
        """Apply g -> g^{-1} to one 0-based leg."""
        inv = self.group.inv
        out = {}
        for k, v in self.coeffs.items():
            key = k[:leg] + (inv[k[leg]],) + k[leg + 1:]
            w = out.get(key)
            out[key] = v if w is None else w + v
        return TensorElement(self.group, self.rank, self.field, out)

    def merge_legs(self, i, j):
        """Multiply leg j into leg i (group product), dropping leg j."""
        table = self.group.table
        out = {}
        for k, v in self.coeffs.items():
            prod = table[k[i]][k[j]]
            key = tuple(prod if t == i else x
                        for t, x in enumerate(k) if t != j)
            w = out.get(key)
            out[key] = v if w is None else w + v
        return TensorElement(self.group, self.rank - 1, self.field, out)

    def map_elements(self, new_group, elem_map):
        """Transport along an injective map of group elements (index list)."""
        out = {}
        for k, v in self.coeffs.items():
            out[tuple(elem_map[a] for a in k)] = v
        return TensorElement(new_group, self.rank, self.field, out, prune=False)

    def outer(self, other):
        """Tensor product: concatenate legs."""
        if other.group is not self.group:
            raise AlgebraError("groups do not match")
        out = {}
        for ka, x in self.coeffs.items():
            for kb, y in other.coeffs.items():
                v = x * y
                if v:
                    out[ka + kb] = v
        return TensorElement(self.group, self.rank + other.rank, self.field,
                             out, prune=False)

    # -- inspection ---------------------------------------------------------------

    def get(self, key):
        v = self.coeffs.get(tuple(key))
        return v if v is not None else self.field.zero()

    def support(self):
        return set(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.group is other.group and self.rank == other.rank
                and self.coeffs == other.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return (f"TensorElement(rank={self.rank}, group={self.group.name}, "
                f"terms={len(self.coeffs)})")


# -- group Hopf structure on rank-1 elements ---------------------------------

def hopf_coproduct(x):
    """Delta(g) = g (x) g, extended linearly."""
    if x.rank != 1:
        raise AlgebraError("coproduct applies to rank-1 elements")
    return x.coproduct_leg(0)


def hopf_counit(x):
    if x.rank != 1:
        raise AlgebraError("counit applies to rank-1 elements")
    acc = x.field.zero()
    for v in x.coeffs.values():
        acc = acc + v
    return acc


def hopf_antipode(x):
    """S(g) = g^{-1}, extended linearly."""
    if x.rank != 1:
        raise AlgebraError("antipode applies to rank-1 elements")
    return x.antipode_leg(0)


def regular_trace(x):
    """Trace of left multiplication by x on the group algebra."""
    if x.rank != 1:
        raise AlgebraError("regular_trace applies to rank-1 elements")
    e = x.group.identity
    coeff = x.coeffs.get((e,))
    if coeff is None:
        return x.field.zero()
    return coeff * x.field.from_int(x.group.order)


# ---------------------------------------------------------------------------
# inversion inside the support subgroup

def support_subgroup(t):
    """Elements of G^rank generated by the support of t, as a sorted list."""
    table = t.group.table
    gens = list(t.coeffs)
    e = (t.group.identity,) * t.rank
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(table[a][b] for a, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def abelian_basis(members, mul, ident):
    """Cyclic decomposition of an abelian subgroup given as a member list.

    Returns (orders, dlog) where dlog maps each member to its exponent tuple
    with respect to a basis whose factor sizes form the returned list.
    Returns None when an adjustment or covering step fails, which certifies
    the input was not abelian; correctness never depends on the caller's
    abelianness check.
    """
    dlog = {ident: ()}
    orders = []
    powers = []                        # powers[i][k] = basis[i]^k
    while len(dlog) < len(members):
        best, best_d, best_tail = None, 1, None
        for h in members:
            if h in dlog:
                continue
            p, k = h, 1
            while p not in dlog:
                p = mul(p, h)
                k += 1
            if k > best_d:
                best, best_d, best_tail = h, k, p
        if best is None:
            return None
        # adjust the pick so its true order drops to its coset order: divide
        # out the tail best^d = prod basis_i^{t_i} by solving s_i*d = t_i
        # modulo the factor size
        d = best_d
        adj = best
        for i, (di, ti) in enumerate(zip(orders, dlog[best_tail])):
            if ti:
                g = gcd(d, di)
                if ti % g:
                    return None
                si = (ti // g) * pow(d // g, -1, di // g) % (di // g)
                if si:
                    adj = mul(adj, powers[i][di - si])
        pw = [ident]
        for _ in range(d - 1):
            pw.append(mul(pw[-1], adj))
        if mul(pw[-1], adj) != ident:
            return None
        new_dlog = {}
        for elem, coords in dlog.items():
            for j in range(d):
                new_dlog[mul(elem, pw[j])] = coords + (j,)
        if len(new_dlog) != len(dlog) * d:
            return None
        dlog = new_dlog
        orders.append(d)
        powers.append(pw)
    return orders, dlog


def _axis_dft(vals, sizes, strides, axis, roots, zero):
    """Transform one mixed-radix axis of a flat array by the root table."""
    d = sizes[axis]
    stride = strides[axis]
    block = stride * d
    out = list(vals)
    for base in range(0, len(vals), block):
        for off in range(stride):
            start = base + off
            col = vals[start:start + block:stride]
            for jp in range(d):
                acc = zero
                for j in range(d):
                    x = col[j]
                    if x:
                        acc = acc + roots[(j * jp) % d] * x
                out[start + jp * stride] = acc
    return out


def _fourier_invert(t, members):
    """Invert t through its character values, for abelian support.

    Returns None when the support subgroup is non-abelian, the order is not
    invertible in the field, or the field lacks the needed roots of unity.
    A zero character value certifies a zero divisor and raises.
    """
    field = t.field
    n = len(members)
    if field.characteristic and n % field.characteristic == 0:
        return None
    table = t.group.table

    def mul(x, y):
        return tuple(table[a][b] for a, b in zip(x, y))

    gens = list(t.coeffs)
    for i, g in enumerate(gens):
        for h in gens[i + 1:]:
            if mul(g, h) != mul(h, g):
                return None
    ident = (t.group.identity,) * t.rank
    decomp = abelian_basis(members, mul, ident)
    if decomp is None:
        return None
    orders, dlog = decomp
    m = 1
    for d in orders:
        m = m * d // gcd(m, d)
    try:
        zeta = field.primitive_root(m) if m > 1 else field.one()
    except ScalarError:
        return None
    zpow = [field.one()]
    for _ in range(m - 1):
        zpow.append(zpow[-1] * zeta)
    strides = [0] * len(orders)
    acc = 1
    for i in range(len(orders) - 1, -1, -1):
        strides[i] = acc
        acc *= orders[i]

    def pos(coords):
        return sum(c * s for c, s in zip(coords, strides))

    zero = field.zero()
    vals = [zero] * n
    for key, c in t.coeffs.items():
        vals[pos(dlog[key])] = c
    for ax, d in enumerate(orders):
        roots = [zpow[(m // d) * j % m] for j in range(d)]
        vals = _axis_dft(vals, orders, strides, ax, roots, zero)
    inv_vals = []
    for v in vals:
        if not v:
            raise AlgebraError("element is a zero divisor (not invertible)")
        inv_vals.append(v.inverse())
    vals = inv_vals
    for ax, d in enumerate(orders):
        roots = [zpow[(m - (m // d) * j % m) % m] for j in range(d)]
        vals = _axis_dft(vals, orders, strides, ax, roots, zero)
    scale = field.from_int(n).inverse()
    coeffs = {}
    for key in members:
        v = vals[pos(dlog[key])]
        if v:
            coeffs[key] = v * scale
    return TensorElement(t.group, t.rank, field, coeffs, prune=False)


def _central_split_invert(t, members):
    """Invert t through the character decomposition of the center of S.

    k[S] splits over characters chi of the center Z as a sum of twisted
    group algebras of S/Z; t is inverted in each component by a dense
    linear solve and reassembled.  Returns None when the split does not
    apply (trivial or full center, missing roots, bad characteristic);
    a singular component certifies a zero divisor and raises.
    """
    field = t.field
    table = t.group.table
    invtab = t.group.inv

    def mul(x, y):
        return tuple(table[a][b] for a, b in zip(x, y))

    gens = list(t.coeffs)
    center = [s for s in members if all(mul(s, g) == mul(g, s) for g in gens)]
    nz = len(center)
    if nz <= 1 or nz == len(members):
        return None
    if field.characteristic and nz % field.characteristic == 0:
        return None
    ident = (t.group.identity,) * t.rank
    decomp = abelian_basis(center, mul, ident)
    if decomp is None:
        return None
    orders, dlog = decomp
    m = 1
    for d in orders:
        m = m * d // gcd(m, d)
    try:
        zeta = field.primitive_root(m) if m > 1 else field.one()
    except ScalarError:
        return None
    zpow = [field.one()]
    for _ in range(m - 1):
        zpow.append(zpow[-1] * zeta)
    strides = [0] * len(orders)
    acc = 1
    for i in range(len(orders) - 1, -1, -1):
        strides[i] = acc
        acc *= orders[i]
    zindex = {z: sum(c * s for c, s in zip(dlog[z], strides)) for z in center}
    # build coset transversal of Z in S
    coset_of = {}
    reps = []
    for s in members:
        if s in coset_of:
            continue
        q = len(reps)
        reps.append(s)
        for z in center:
            coset_of[mul(s, z)] = q
    nq = len(reps)
    rep_inv = [tuple(invtab[a] for a in r) for r in reps]
    # z part of any element: rep(q)^-1 * s lies in Z
    zpart = {s: mul(rep_inv[coset_of[s]], s) for s in members}
    # character value table: chars[c][zpos] = chi_c(z) as a field scalar
    chars = []
    for cpos in range(nz):
        cc = []
        rem = cpos
        for si in strides:
            cc.append(rem // si)
            rem -= (rem // si) * si
        row = [None] * nz
        for z, zpos in zindex.items():
            e = 0
            for ci, ei, di in zip(cc, dlog[z], orders):
                e += ci * ei * (m // di)
            row[zpos] = zpow[e % m]
        chars.append(row)
    zero = field.zero()
    unit_vec = [field.one() if q == coset_of[ident] else zero for q in range(nq)]
    inv_comps = []
    for cpos in range(nz):
        row = chars[cpos]
        # image of t in the chi-component, indexed by cosets
        xv = [zero] * nq
        for key, c in t.coeffs.items():
            xv[coset_of[key]] = xv[coset_of[key]] + c * row[zindex[zpart[key]]]
        # left multiplication matrix in the twisted coset algebra
        mrows = [[zero] * nq for _ in range(nq)]
        for q in range(nq):
            if not xv[q]:
                continue
            for qp in range(nq):
                prod = mul(reps[q], reps[qp])
                qpp = coset_of[prod]
                tw = row[zindex[zpart[prod]]]
                mrows[qpp][qp] = mrows[qpp][qp] + xv[q] * tw
        sol = mat_solve(mrows, unit_vec, nq, field)
        if sol is None:
            raise AlgebraError("element is a zero divisor (not invertible)")
        inv_comps.append(sol)
    # reassemble: coefficient at rep(q)*z is |Z|^-1 sum_chi chi(z)^-1 y_chi[q]
    scale = field.from_int(nz).inverse()
    coeffs = {}
    for s in members:
        q = coset_of[s]
        zpos = zindex[zpart[s]]
        acc = zero
        for cpos in range(nz):
            y = inv_comps[cpos][q]
            if y:
                acc = acc + chars[cpos][zpos].inverse() * y
        if acc:
            coeffs[s] = acc * scale
    return TensorElement(t.group, t.rank, field, coeffs, prune=False)


def algebra_invert(t, max_steps=None):
    """Two-sided inverse of t in k[G]^(rank), or raise AlgebraError.

    Works in the group algebra of the subgroup S generated by the support.
    When S is abelian and the field has the needed roots of unity, t is
    diagonalized by characters of S and inverted pointwise; when only the
    center of S is nontrivial the inversion splits over its characters
    instead.  Otherwise the minimal polynomial of left multiplication by t
    on k[S] is found by exact Krylov iteration; a nonzero constant term
    yields the inverse, a zero constant term certifies a zero divisor.
    The result is always verified.
    """
    if not t.coeffs:
        raise AlgebraError("zero element is not invertible")
    members = support_subgroup(t)
    n = len(members)
    inv = _fourier_invert(t, members)
    if inv is None:
        inv = _central_split_invert(t, members)
    if inv is not None:
        unit = TensorElement.unit(t.group, t.rank, t.field)
        if t * inv != unit or inv * t != unit:
            raise AlgebraError("inverse verification failed")
        return inv
    index = {m: i for i, m in enumerate(members)}
    field = t.field
    zero = field.zero()
    table = t.group.table
    # each support element permutes S by left translation; precompute
    perms = []
    for key, val in t.coeffs.items():
        perm = [index[tuple(table[a][b] for a, b in zip(key, m))]
                for m in members]
        perms.append((perm, val))

    def apply_fast(vec):
        out = [zero] * n
        for perm, val in perms:
            for i, x in enumerate(vec):
                if x:
                    j = perm[i]
                    out[j] = out[j] + val * x
        return out

    cap = max_steps or n
    e_idx = index[(t.group.identity,) * t.rank]
    v = [zero] * n
    v[e_idx] = field.one()
    powers = [v]                       # powers[k] = t^k as dense vector
    # echelon rows with their expression in terms of the Krylov vectors
    ech = []                           # list of (pivot, row, combo)
    combo0 = [field.one()]
    row = list(v)
    _ech_insert(ech, row, combo0, field)
    for step in range(1, cap + 1):
        v = apply_fast(powers[-1])
        powers.append(v)
        combo = [zero] * step + [field.one()]
        row = list(v)
        rem_combo = _ech_reduce(ech, row, combo, field)
        if rem_combo is not None:
            # dependence: sum_i c_i t^i = 0 with c = rem_combo
            c = rem_combo
            if not c[0]:
                raise AlgebraError("element is a zero divisor (not invertible)")
            inv_c0 = (-c[0]).inverse()
            acc = [zero] * n
            for i in range(1, len(c)):
                if c[i]:
                    f = c[i] * inv_c0
                    pw = powers[i - 1]
                    for j in range(n):
                        if pw[j]:
                            acc[j] = acc[j] + f * pw[j]
            coeffs = {members[j]: acc[j] for j in range(n) if acc[j]}
            inv = TensorElement(t.group, t.rank, field, coeffs, prune=False)
            unit = TensorElement.unit(t.group, t.rank, field)
            if t * inv != unit or inv * t != unit:
                raise AlgebraError("inverse verification failed")
            return inv
        _ech_insert(ech, row, combo, field)
    raise AlgebraError(f"no inverse found within {cap} Krylov steps")


def _ech_reduce(ech, row, combo, field):
    """Reduce row against the echelon; return the combo if it hits zero."""
    for pivot, erow, ecombo in ech:
        x = row[pivot]
        if x:
            for j in range(len(row)):
                if erow[j]:
                    row[j] = row[j] - x * erow[j]
            for j in range(len(ecombo)):
                if ecombo[j]:
                    if j < len(combo):
                        combo[j] = combo[j] - x * ecombo[j]
                    else:
                        combo.extend([field.zero()] * (j + 1 - len(combo)))
                        combo[j] = -(x * ecombo[j])
    if any(row):
        return None
    return combo


def _ech_insert(ech, row, combo, field):
    rem = _ech_reduce(ech, row, combo, field)
    if rem is not None:
        raise AlgebraError("attempted to insert a dependent Krylov vector")
    pivot = next(i for i, x in enumerate(row) if x)
    inv = row[pivot].inverse()
    row = [x * inv for x in row]
    combo = [c * inv for c in combo]
    ech.append((pivot, row, combo))


def left_regular_matrix(t, members=None):
    """Dense matrix of left multiplication by t on k[S] (oracle helper)."""
    members = members or support_subgroup(t)
    n = len(members)
    index = {m: i for i, m in enumerate(members)}
    field = t.field
    zero = field.zero()
    table = t.group.table
    mat = [[zero] * n for _ in range(n)]
    for key, val in t.coeffs.items():
        for j, m in enumerate(members):
            target = tuple(table[a][b] for a, b in zip(key, m))
            i = index[target]
            mat[i][j] = mat[i][j] + val
    return mat, members


# ---------------------------------------------------------------------------
# structure-constant algebras (sparse)

class StructureConstantAlgebra:
    """A finite-dimensional algebra given by sparse structure constants.

    m[i][j] is the product of basis elements i and j as a dict index -> scalar.
    """

    def __init__(self, m, unit, field, labels=None, validate=True,
                 assoc_limit=20):
        self.dim = len(m)
        self.m = m
        self.unit = {k: v for k, v in unit.items() if v}
        self.field = field
        self.labels = list(labels) if labels else [f"Y{i}" for i in range(self.dim)]
        if validate:
            self.validate(full_assoc=self.dim <= assoc_limit)

    def validate(self, full_assoc=True):
        d = self.dim
        for i in range(d):
            u = self.mult_vec(self.unit, {i: self.field.one()})
            v = self.mult_vec({i: self.field.one()}, self.unit)
            if u != {i: self.field.one()} or v != {i: self.field.one()}:
                raise AlgebraError(f"unit axiom fails at basis element {i}")
        if full_assoc:
            for i in range(d):
                for j in range(d):
                    ij = self.m[i][j]
                    for k in range(d):
                        left = self.mult_vec(ij, {k: self.field.one()})
                        right = self.mult_vec({i: self.field.one()}, self.m[j][k])
                        if left != right:
                            raise AlgebraError(
                                f"associativity fails at ({i},{j},{k})")

    def mult_vec(self, u, v):
        out = {}
        for i, x in u.items():
            mi = self.m[i]
            for j, y in v.items():
                xy = x * y
                if not xy:
                    continue
                for k, c in mi[j].items():
                    w = out.get(k)
                    s = xy * c if w is None else w + xy * c
                    if s:
                        out[k] = s
                    elif w is not None:
                        del out[k]
        return out

    def is_commutative(self):
        return all(self.m[i][j] == self.m[j][i]
                   for i in range(self.dim) for j in range(i))

    def center_dimension(self):
        """Dimension of {z : zx = xz for all basis x} by exact nullspace."""
        d = self.dim
        zero = self.field.zero()
        rows = []
        for j in range(d):
            cols = {}
            for i in range(d):
                for k, c in self.m[i][j].items():
                    row = cols.setdefault(k, [zero] * d)
                    row[i] = row[i] + c
                for k, c in self.m[j][i].items():
                    row = cols.setdefault(k, [zero] * d)
                    row[i] = row[i] - c
            for row in cols.values():
                if any(row):
                    rows.append(row)
        return d - mat_rank(rows, d)

    def abelianization_dimension(self):
        """Dimension of A / ([A,A]), the two-sided ideal closure of commutators."""
        d = self.dim
        zero = self.field.zero()
        ech = []

        def insert(vec):
            row = list(vec)
            for pivot, erow in ech:
                x = row[pivot]
                if x:
                    for j in range(d):
                        if erow[j]:
                            row[j] = row[j] - x * erow[j]
            if not any(row):
                return False
            pivot = next(i for i, x in enumerate(row) if x)
            inv = row[pivot].inverse()
            ech.append((pivot, [x * inv for x in row]))
            return True

        def to_dense(vecdict):
            out = [zero] * d
            for k, v in vecdict.items():
                out[k] = v
            return out

        for i in range(d):
            for j in range(i):
                comm = dict(self.m[i][j])
                for k, v in self.m[j][i].items():
                    w = comm.get(k)
                    s = -v if w is None else w - v
                    if s:
                        comm[k] = s
                    elif w is not None:
                        del comm[k]
                if comm:
                    insert(to_dense(comm))
        # close under multiplication by basis elements on both sides
        changed = True
        while changed:
            changed = False
            for pivot, erow in list(ech):
                vd = {i: x for i, x in enumerate(erow) if x}
                for i in range(d):
                    b = {i: self.field.one()}
                    for prod in (self.mult_vec(b, vd), self.mult_vec(vd, b)):
                        if prod and insert(to_dense(prod)):
                            changed = True
        return d - len(ech)


def dualize_coalgebra(delta_rows, counit, field, labels=None, validate=True,
                      assoc_limit=20):
    """Dual algebra of a coalgebra given by Delta(x_k) coefficient dicts.

    delta_rows[k] maps (i, j) to the coefficient of x_i (x) x_j in Delta(x_k);
    counit[k] is eps(x_k).  The dual basis Y_k multiplies by
    (Y_i * Y_j)(x_k) = Delta(x_k)[i, j].  Coassociativity and the counit laws
    of the input are certified through the associativity and unit checks of
    the output algebra.
    """
    d = len(delta_rows)
    m = [[{} for _ in range(d)] for _ in range(d)]
    for k, row in enumerate(delta_rows):
        items = row.coeffs.items() if isinstance(row, TensorElement) else row.items()
        for (i, j), v in items:
            if v:
                m[i][j][k] = v
    unit = {k: v for k, v in enumerate(counit) if v}
    return StructureConstantAlgebra(m, unit, field, labels=labels,
                                    validate=validate, assoc_limit=assoc_limit)
