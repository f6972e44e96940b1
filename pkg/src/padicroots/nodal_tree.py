"""The labelled rooted tree of digit-shifted, rescaled polynomials.

A node holds a truncated polynomial g mod p^k_local reached by fixing base-p
digits zeta_0, ..., zeta_{i-1}: g = p^(-s) f(zeta_0 + ... + p^i x) with s the
precision consumed so far.  Children hang off degenerate roots of the mod-p
reduction whose s-value lies in {2, ..., k_local - 1}; non-degenerate roots
are harvested at every node and Hensel-lift to distinct Z_p roots of f.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import PAdicContext, ord_int
from .errors import ContentDivisible, PrimeTooLarge
from .fp import DESK_PRIME_CAP, fp_derivative_terms, fp_terms
from .sparsepoly import SparsePoly, shift_rescale, taylor_coeffs_mod

M_P = {2: 4, 3: 3}  # nodal degree cap by prime; 2 for p >= 5


def nodal_degree_cap(p: int) -> int:
    return M_P.get(p, 2)


def s_value(f: SparsePoly, digit: int, ctx: PAdicContext) -> int:
    """min_i (i + ord_p of the i-th Taylor coefficient of f at digit).

    Values >= k cannot be certified at precision k and are returned as k
    (callers only compare against thresholds below k).  Terminates early
    once the index alone exceeds the running minimum.
    """
    k = ctx.k
    best = k
    jmax = min(f.degree, k)
    u = taylor_coeffs_mod(f, digit, ctx, jmax)
    for i, ui in enumerate(u):
        if i >= best:
            break
        v = ord_int(ui, ctx.p)
        contribution = i + min(v, k)
        if contribution < best:
            best = contribution
    return min(best, k)


def _fp_roots_of_node(g: SparsePoly, p: int) -> list[tuple[int, bool]]:
    """Roots of the mod-p reduction with degeneracy flags; sparse-aware.

    The reduced term lists may be empty when exponent reduction cancels
    terms; the induced function then vanishes on all of F_p*.
    """
    if all(c % p == 0 for _, c in g.terms):
        raise ContentDivisible("nodal polynomial is 0 mod p")
    fterms = fp_terms(g, p)
    dterms = fp_derivative_terms(g, p)
    roots = []
    c0 = g.coefficient(0) % p
    if c0 == 0:
        roots.append((0, g.coefficient(1) % p == 0))
    for z in range(1, p):
        fv = sum(c * pow(z, e, p) for e, c in fterms) % p
        if fv:
            continue
        dv = sum(c * pow(z, e, p) for e, c in dterms) % p
        roots.append((z, dv == 0))
    return roots


@dataclass
class NodalNode:
    digit_path: tuple[int, ...]
    depth: int
    poly: SparsePoly  # truncated: coefficients mod p^k_local
    k_local: int
    s_consumed: int
    nondegenerate_roots: list[int] = field(default_factory=list)
    degenerate_roots: list[int] = field(default_factory=list)
    # (digit, s) for degenerate digits whose expansion is blocked by k_local
    blocked: list[tuple[int, int]] = field(default_factory=list)
    children: list["NodalNode"] = field(default_factory=list)
    child_s: list[int] = field(default_factory=list)

    @property
    def n_p(self) -> int:
        return len(self.nondegenerate_roots)

    def mod_p_coeffs(self, p: int) -> list[int]:
        out = [0] * (self.poly.degree + 1) if not self.poly.is_zero else []
        for a, c in self.poly.terms:
            out[a] = c % p
        while out and out[-1] == 0:
            out.pop()
        return out

    def walk(self):
        yield self
        for ch in self.children:
            yield from ch.walk()


@dataclass
class NodalTree:
    p: int
    k: int
    root: NodalNode
    trinomial_input: bool

    def nodes(self):
        return list(self.root.walk())

    @property
    def depth(self) -> int:
        return max(n.depth for n in self.root.walk())

    @property
    def node_count(self) -> int:
        return sum(1 for _ in self.root.walk())

    def signature(self) -> frozenset:
        """Root-bearing nodes: the stabilization fingerprint."""
        return frozenset(
            (n.digit_path, tuple(sorted(n.nondegenerate_roots)))
            for n in self.root.walk()
            if n.nondegenerate_roots
        )

    @property
    def immature(self) -> bool:
        """Some expansion is blocked purely by precision."""
        return any(n.blocked for n in self.root.walk())


def build_tree(
    f: SparsePoly,
    ctx: PAdicContext,
    root_digits: str = "all",
    cap: int = DESK_PRIME_CAP,
) -> NodalTree:
    """Construct the full tree at precision k.

    root_digits='nonzero' restricts depth-0 expansion and harvesting to
    digits != 0 (the valuation-0 root sweep); 'one' restricts depth 0 to
    the digit 1 (most-significant-digit-1 roots); deeper digits are never
    restricted.  Degree-collapse and depth invariants are asserted during
    construction for trinomial inputs.
    """
    p, k = ctx.p, ctx.k
    if p > cap:
        raise PrimeTooLarge(f"p = {p} exceeds cap {cap}")
    if f.content_p(p) > 0:
        raise ContentDivisible("divide out the content p-power first")
    trinomial_input = f.term_count == 3
    max_depth = (k - 1) // 2

    root = NodalNode(digit_path=(), depth=0, poly=f, k_local=k, s_consumed=0)
    stack = [root]
    while stack:
        node = stack.pop()
        roots = _fp_roots_of_node(node.poly, p)
        if node.depth == 0 and root_digits == "nonzero":
            roots = [(z, d) for z, d in roots if z != 0]
        elif node.depth == 0 and root_digits == "one":
            roots = [(z, d) for z, d in roots if z == 1]
        for z, degenerate in roots:
            if not degenerate:
                node.nondegenerate_roots.append(z)
                continue
            node.degenerate_roots.append(z)
            local_ctx = PAdicContext(p, node.k_local)
            s = s_value(node.poly, z, local_ctx)
            if not 2 <= s <= node.k_local - 1:
                if s >= node.k_local:
                    node.blocked.append((z, s))
                continue
            child_coeffs = shift_rescale(node.poly, z, s, local_ctx)
            child_poly = SparsePoly.from_dense(child_coeffs)
            child = NodalNode(
                digit_path=node.digit_path + (z,),
                depth=node.depth + 1,
                poly=child_poly,
                k_local=node.k_local - s,
                s_consumed=node.s_consumed + s,
            )
            assert child.depth <= max_depth, "depth bound exceeded"
            assert child.s_consumed >= 2 * child.depth, "s-sum bound violated"
            node.children.append(child)
            node.child_s.append(s)
            stack.append(child)
    tree = NodalTree(p=p, k=k, root=root, trinomial_input=trinomial_input)
    if trinomial_input:
        _assert_trinomial_invariants(tree)
    return tree


def _assert_trinomial_invariants(tree: NodalTree):
    cap = nodal_degree_cap(tree.p)
    for n in tree.root.walk():
        if n.depth >= 1 and n.digit_path[0] != 0:
            coeffs = n.mod_p_coeffs(tree.p)
            assert len(coeffs) - 1 <= cap, (
                f"nodal degree {len(coeffs) - 1} exceeds cap {cap} at {n.digit_path}"
            )


def count_nondegenerate_roots(tree: NodalTree) -> int:
    """Sum of non-degenerate mod-p root counts over all nodes.

    Each one lifts to a distinct Z_p root once the precision is stable.
    """
    return sum(n.n_p for n in tree.root.walk())


@dataclass
class StabilizedTree:
    tree: NodalTree
    k_used: int
    stabilized: bool  # False: the cap was hit first (still exact when the
    # cap comes from the worst-case precision formula)
    heuristic: bool  # True unless the cap is a proven worst-case bound


def stabilized_tree(
    f: SparsePoly,
    p: int,
    k_start: int = 4,
    k_cap: int = 4096,
    root_digits: str = "all",
    cap_is_proof: bool = False,
) -> StabilizedTree:
    """Double k until the root-bearing signature repeats, or k_cap is hit.

    A tree with precision-blocked expansions never votes for stabilization:
    only mature trees (no blocked sites) can confirm each other.  Inputs
    whose trees stay immature at every precision (an infinite digit chain
    shadowing a degenerate Z_p root) run to the cap, which is exact whenever
    the cap is the worst-case precision bound.
    """
    k = max(1, k_start)
    prev_sig = None
    tree = None
    while True:
        ctx = PAdicContext(p, k)
        tree = build_tree(f, ctx, root_digits=root_digits)
        sig = tree.signature() if not tree.immature else None
        if sig is not None and sig == prev_sig:
            return StabilizedTree(tree=tree, k_used=k, stabilized=True, heuristic=not cap_is_proof)
        prev_sig = sig
        if k >= k_cap:
            return StabilizedTree(
                tree=tree, k_used=k, stabilized=False, heuristic=not cap_is_proof
            )
        k = min(2 * k, k_cap)


def reconstruct_node_poly(
    f: SparsePoly, p: int, digit_path: tuple[int, ...], s_consumed: int, k_local: int
) -> SparsePoly:
    """Recompute p^(-s) f(mu + p^i x) mod p^k_local from scratch (test hook)."""
    i = len(digit_path)
    if i == 0:
        return f
    mu = sum(d * p ** j for j, d in enumerate(digit_path))
    ctx = PAdicContext(p, k_local + s_consumed)
    jmax = min(f.degree, ctx.k - 1)
    u = taylor_coeffs_mod(f, mu, ctx, jmax)
    m_out = p ** k_local
    ps = p ** s_consumed
    coeffs = []
    for j, uj in enumerate(u):
        c = uj * pow(p, i * j, ctx.modulus) % ctx.modulus
        if c % ps:
            raise ContentDivisible("reconstruction: claimed s does not divide")
        coeffs.append(c // ps % m_out)
    return SparsePoly.from_dense(coeffs)
