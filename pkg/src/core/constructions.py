"""
Constructions - the named presentations: Higman groups, K^(n,x), Steinberg
variants, L, G_n, J and labelled-graph groups
"""

import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .presentation import (
    GeneratorMap, Presentation, PresentationError, disjoint_union, tietze_eliminate
)
from .word import Alphabet, Word, commutator, invert

logger = logging.getLogger(__name__)

L_GENERATORS = ("x", "y", "h", "u", "v")


def copy_name(g: str, i: int) -> str:
    return f"{g}@{i}"


def _require_positive(n: int, what: str = "n"):
    if n < 1:
        raise PresentationError(f"{what} must be at least 1, got {n}")


def higman(n: int) -> Presentation:
    """Hig_n = < a_i (i mod n) : [a_{i-1}, a_i] = a_i >"""
    _require_positive(n)
    alphabet = Alphabet.of(copy_name("a", i) for i in range(n))
    relators = []
    for i in range(n):
        prev = alphabet.gen(copy_name("a", (i - 1) % n))
        cur = alphabet.gen(copy_name("a", i))
        relators.append(commutator(prev, cur) * invert(cur))
    return Presentation(f"Hig_{n}", alphabet, tuple(relators))


def variant_knx(k_pres: Presentation, x: str, n: int) -> Presentation:
    """K^(n,x): n renamed copies of K linked by [x_{i-1}, x_i] = x_i"""
    if x not in k_pres.alphabet:
        raise PresentationError(f"Generator '{x}' not in {k_pres.name}")
    _require_positive(n)
    union = disjoint_union(f"{k_pres.name}^({n},{x})", [k_pres.copy_renamed(i) for i in range(n)])
    alphabet = union.alphabet
    links = []
    for i in range(n):
        prev = alphabet.gen(copy_name(x, (i - 1) % n))
        cur = alphabet.gen(copy_name(x, i))
        links.append(commutator(prev, cur) * invert(cur))
    return Presentation(union.name, alphabet, union.relators + tuple(links))


def elementary_name(p: int, q: int) -> str:
    return f"E{p}_{q}"


def steinberg_base(d: int, magnus_nielsen: bool = False) -> Presentation:
    """Steinberg presentation of St_d(Z); with magnus_nielsen, of SL_d(Z)"""
    if d < 3:
        raise PresentationError(f"Steinberg presentations need d >= 3, got {d}")
    pairs = [(p, q) for p in range(1, d + 1) for q in range(1, d + 1) if p != q]
    alphabet = Alphabet.of(elementary_name(p, q) for p, q in pairs)
    e = {pq: alphabet.gen(elementary_name(*pq)) for pq in pairs}
    relators: List[Word] = []
    for p, q in pairs:
        for r in range(1, d + 1):
            if r != p and r != q:
                relators.append(commutator(e[p, q], e[q, r]) * invert(e[p, r]))
    for p, q in pairs:
        for r, s in pairs:
            if q != r and p != s:
                relators.append(commutator(e[p, q], e[r, s]))
    if magnus_nielsen:
        relators.append((e[1, 2] * invert(e[2, 1]) * e[1, 2]) ** 4)
    name = f"SL_{d}(Z)" if magnus_nielsen else f"St_{d}(Z)"
    return Presentation(name, alphabet, tuple(relators))


def steinberg(d: int, n: int, magnus_nielsen: bool = False) -> Presentation:
    """S_{d,n}: n Steinberg copies linked along E^{1,2}"""
    base = steinberg_base(d, magnus_nielsen)
    _require_positive(n)
    linked = variant_knx(base, elementary_name(1, 2), n)
    return Presentation(f"S_{d},{n}" + ("_MN" if magnus_nielsen else ""), linked.alphabet, linked.relators)


def l_relators(x: Word, y: Word, h: Word, u: Word, v: Word) -> List[Word]:
    """The relator set R(x, y, h, u, v) of L"""
    return [
        commutator(x, y),
        commutator(x, u),
        commutator(y, v),
        commutator(h, u),
        commutator(h, v),
        commutator(h, x) * invert(x),
        commutator(u, y) * invert(x),
        commutator(h, y) * invert(y),
        commutator(v, x) * invert(y),
    ]


def l_presentation() -> Presentation:
    """L = Z[1/2]^2 semidirect (Z x F_2) on {x, y, h, u, v}"""
    alphabet = Alphabet.of(L_GENERATORS)
    x, y, h, u, v = (alphabet.gen(g) for g in L_GENERATORS)
    return Presentation("L", alphabet, tuple(l_relators(x, y, h, u, v)))


def heisenberg_relators(alpha: Word, beta: Word, zeta: Word) -> List[Word]:
    """Heis(alpha, beta, zeta): [alpha, beta] = zeta central"""
    return [
        commutator(alpha, beta) * invert(zeta),
        commutator(zeta, alpha),
        commutator(zeta, beta),
    ]


def j_presentation() -> Presentation:
    """J = L amalgamated with Heis(h, z, v) over <h, v>"""
    alphabet = Alphabet.of(L_GENERATORS + ("z",))
    x, y, h, u, v, z = (alphabet.gen(g) for g in alphabet.names)
    relators = l_relators(x, y, h, u, v) + heisenberg_relators(h, z, v)
    return Presentation("J", alphabet, tuple(relators))


def bs12_presentation() -> Presentation:
    """BS(1,2) = < x, h : [h, x] = x >"""
    alphabet = Alphabet.of(("x", "h"))
    x, h = alphabet.gen("x"), alphabet.gen("h")
    return Presentation("BS(1,2)", alphabet, (commutator(h, x) * invert(x),))


def gn(n: int) -> Presentation:
    """G_n = < x_i, y_i : R(x_i, y_i, y_{i-2}, x_{i-2}, y_{i-1}) >"""
    _require_positive(n)
    names = []
    for i in range(n):
        names += [copy_name("x", i), copy_name("y", i)]
    alphabet = Alphabet.of(names)

    def x(i):
        return alphabet.gen(copy_name("x", i % n))

    def y(i):
        return alphabet.gen(copy_name("y", i % n))

    relators: List[Word] = []
    for i in range(n):
        relators.extend(l_relators(x(i), y(i), y(i - 2), x(i - 2), y(i - 1)))
    return Presentation(f"G_{n}", alphabet, tuple(relators))


Edge = Tuple[int, int, Tuple[str, str]]


def graph_group(base: Presentation, active: Sequence[str], passive: Sequence[str],
                vertices: int, edges: Sequence[Edge], name: Optional[str] = None) -> Presentation:
    """One copy of base per vertex, plus p_j = a_k for each (p, a)-labelled edge j -> k"""
    _require_positive(vertices, "vertices")
    for g in list(active) + list(passive):
        if g not in base.alphabet:
            raise PresentationError(f"Label generator '{g}' not in {base.name}")
    union = disjoint_union(name or f"Graph({base.name},{vertices})",
                           [base.copy_renamed(i) for i in range(vertices)])
    alphabet = union.alphabet
    relators = list(union.relators)
    for j, k, (p, a) in edges:
        if p not in passive:
            raise PresentationError(f"Edge label '{p}' is not a passive generator")
        if a not in active:
            raise PresentationError(f"Edge label '{a}' is not an active generator")
        if not (0 <= j < vertices and 0 <= k < vertices):
            raise PresentationError(f"Edge {j}->{k} leaves the vertex range 0..{vertices - 1}")
        relators.append(alphabet.gen(copy_name(p, j)) * invert(alphabet.gen(copy_name(a, k))))
    return Presentation(union.name, alphabet, tuple(relators))


def eliminate_active(p: Presentation, vertices: int, edges: Sequence[Edge],
                     active: Sequence[str]) -> Presentation:
    """Eliminate each active copy a@k through its incoming edge p@j = a@k.

    Eliminations run in ascending vertex order and, within a vertex, in the
    order of ``active``.
    """
    incoming: Dict[Tuple[str, int], Tuple[str, int]] = {}
    for j, k, (pas, act) in edges:
        incoming.setdefault((act, k), (pas, j))
    current = p
    # eliminated generator -> its value over the current alphabet
    replaced: Dict[str, Word] = {}
    for k in range(vertices):
        for a in active:
            if (a, k) not in incoming:
                continue
            pas, j = incoming[(a, k)]
            source = copy_name(pas, j)
            defining = replaced[source] if source in replaced else current.gen(source)
            g = copy_name(a, k)
            reduced = tietze_eliminate(current, g, defining)
            images = {name: reduced.gen(name) for name in reduced.generators}
            images[g] = defining.relabel(reduced.alphabet)
            replaced = {name: w.substitute(images, reduced.alphabet) for name, w in replaced.items()}
            replaced[g] = images[g]
            current = reduced
    logger.debug("Reduced %s to %d generators, %d relators", p.name, len(current.generators), len(current))
    return current


def higman_edges(n: int) -> List[Edge]:
    return [((i - 1) % n, i, ("x", "h")) for i in range(n)]


def higman_graph(n: int) -> Presentation:
    """Hig_n as a graph group: BS(1,2) copies with x_{i-1} = h_i along an n-cycle"""
    return graph_group(bs12_presentation(), ["h"], ["x"], n, higman_edges(n), name=f"HigGraph_{n}")


def gn_edges(n: int) -> List[Edge]:
    edges: List[Edge] = []
    for i in range(n):
        edges.append(((i - 2) % n, i, ("y", "h")))
        edges.append(((i - 2) % n, i, ("x", "u")))
        edges.append(((i - 1) % n, i, ("y", "v")))
    return edges


def gn_graph(n: int) -> Presentation:
    """G_n as a graph group: (h_i, u_i, v_i) = (y_{i-2}, x_{i-2}, y_{i-1})"""
    return graph_group(l_presentation(), ["h", "u", "v"], ["x", "y"], n, gn_edges(n), name=f"GnGraph_{n}")


def gn_via_j_edges(n: int) -> List[Edge]:
    edges: List[Edge] = []
    for i in range(n):
        prev = (i - 1) % n
        edges += [(prev, i, ("v", "h")), (prev, i, ("x", "z")), (prev, i, ("y", "v")), (prev, i, ("z", "u"))]
    return edges


def gn_via_j(n: int) -> Presentation:
    """G_n from copies of J glued along successive indices"""
    return graph_group(j_presentation(), ["h", "z", "v", "u"], ["v", "x", "y", "z"], n,
                       gn_via_j_edges(n), name=f"GnJ_{n}")


def higman_to_gn(k: int, m: int) -> GeneratorMap:
    """Hig_k -> G_m, a_i -> y_{2i}; needs k == m or 2k == m"""
    if not (k == m or 2 * k == m):
        raise PresentationError(f"a_i -> y_(2i) defines a map Hig_{k} -> G_{m} only for k = m or 2k = m")
    source, target = higman(k), gn(m)
    images = {copy_name("a", i): target.gen(copy_name("y", (2 * i) % m)) for i in range(k)}
    return GeneratorMap(source, target, images)


def higman_to_knx(k_pres: Presentation, x: str, n: int) -> GeneratorMap:
    """Hig_n -> K^(n,x), a_i -> x_i"""
    source, target = higman(n), variant_knx(k_pres, x, n)
    images = {copy_name("a", i): target.gen(copy_name(x, i)) for i in range(n)}
    return GeneratorMap(source, target, images)


FAMILIES: Dict[str, Callable[..., Presentation]] = {
    "higman": lambda n=4, **_: higman(n),
    "gn": lambda n=8, **_: gn(n),
    "steinberg": lambda n=4, d=3, magnus_nielsen=False, **_: steinberg(d, n, magnus_nielsen),
    "l": lambda **_: l_presentation(),
    "j": lambda **_: j_presentation(),
    "bs12": lambda **_: bs12_presentation(),
    "gn-via-j": lambda n=8, **_: gn_via_j(n),
}


def build_family(family: str, **params) -> Presentation:
    try:
        builder = FAMILIES[family]
    except KeyError:
        raise PresentationError(f"Unknown family '{family}'") from None
    params = {k: v for k, v in params.items() if v is not None}
    return builder(**params)
