from fractions import Fraction

from conftest import plsets, points
from hypothesis import given
from hypothesis import strategies as st

from plsheaf.exactgeom import (
    EQ,
    LE,
    LT,
    AffineConstraint,
    AffineMap,
    Arrangement,
    Cell,
    PLSet,
    cell_nonempty,
    complement,
    disjointify,
    find_point,
    intersect,
    maximize_from,
    member,
    negate,
    pairwise_disjoint,
    parse_constraint,
    preimage,
    product,
    subtract,
    translate,
    union,
)
from plsheaf.exactgeom.linalg import det, integer_rank, nullspace, rank, solve


def P(dim, *texts):
    return PLSet.parse(dim, *texts)


def same(a, b):
    return subtract(a, b).is_empty() and subtract(b, a).is_empty()


# cells and emptiness


def test_cell_nonempty_examples():
    assert not cell_nonempty([parse_constraint("x1 >= 0", 1), parse_constraint("x1 < 0", 1)])
    assert cell_nonempty([parse_constraint(t, 2) for t in ("x1 + x2 <= 1", "x1 >= 0", "x2 >= 0")])
    assert not cell_nonempty([parse_constraint("x1 < 1", 1), parse_constraint("x1 > 1", 1)])


def test_strict_rows_keep_open_cells_open():
    c = Cell.parse(2, "x1 > 0; x2 > 0; x1 + x2 < 1/100")
    assert c.contains(c.witness)
    assert Cell.make(2, [parse_constraint("x1 > 0", 2), parse_constraint("x1 <= 0", 2)]) is None


def test_find_point_respects_every_row():
    eqs = [((1, 1), Fraction(1))]
    les = [((1, 0), Fraction(2))]
    lts = [((-1, 0), Fraction(0))]
    p = find_point(eqs, les, lts, 2)
    assert p[0] + p[1] == 1 and p[0] <= 2 and p[0] > 0


def test_maximize_examples():
    A = [(1, 0), (0, 1), (-1, 0), (0, -1)]
    b = [1, 1, 0, 0]
    res = maximize_from(A, [Fraction(v) for v in b], [Fraction(1), Fraction(-2)], (Fraction(0), Fraction(0)))
    assert res.status == "optimal" and res.value == 1
    res = maximize_from([(-1,)], [Fraction(-1)], [Fraction(1)], (Fraction(1),))
    assert res.status == "unbounded"


# set algebra


def test_set_examples():
    assert same(intersect(P(1, "x1 >= 0; x1 <= 1"), P(1, "x1 <= 1/2")), P(1, "x1 >= 0; x1 <= 1/2"))
    i = AffineMap([[1], [0]], [0, -1])
    assert same(preimage(i, P(2, "x2 < 0")), PLSet.full(1))
    assert same(negate(P(1, "x1 > 0")), P(1, "x1 < 0"))
    assert not member(P(1, "x1 >= 0; x1 < 1"), [1])
    assert member(P(2, "x2 - x1 >= 0; x2 + x1 >= 0", "x2 - x1 <= 0; x2 + x1 <= 0"), [1, 2])
    assert not member(PLSet.empty(1), [0])


def test_disjointify_examples():
    s = union(P(1, "x1 >= 0; x1 <= 2"), P(1, "x1 >= 1; x1 <= 3"))
    d = disjointify(s)
    assert pairwise_disjoint(d)
    for x in (Fraction(-1), 0, Fraction(1, 2), 1, 2, 3, Fraction(7, 2)):
        assert member(d, [x]) == member(s, [x])
    single = P(2, "x1 >= 0; x2 < 1")
    assert len(disjointify(single).cells) == 1
    both = disjointify(union(P(1, "x1 <= 0"), P(1, "x1 >= 0")))
    assert all(member(both, [x]) for x in (-1, 0, 1))


@given(plsets(2), plsets(2), st.lists(points(2), min_size=25, max_size=25))
def test_boolean_laws(a, b, pts):
    i, u, d, c = intersect(a, b), union(a, b), subtract(a, b), complement(a)
    for p in pts:
        ma, mb = member(a, p), member(b, p)
        assert member(i, p) == (ma and mb)
        assert member(u, p) == (ma or mb)
        assert member(d, p) == (ma and not mb)
        assert member(c, p) == (not ma)


@given(plsets(1), plsets(1), st.lists(points(2), min_size=25, max_size=25))
def test_product_law(a, b, pts):
    s = product(a, b)
    for p in pts:
        assert member(s, p) == (member(a, p[:1]) and member(b, p[1:]))


@given(plsets(2), points(2), st.lists(points(2), min_size=20, max_size=20),
       st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_preimage_translate_negate_laws(a, v, pts, m):
    f = AffineMap([m[:2], m[2:]], v)
    pre = preimage(f, a)
    tr = translate(a, v)
    ng = negate(a)
    for p in pts:
        assert member(pre, p) == member(a, f(p))
        assert member(tr, p) == member(a, tuple(x - y for x, y in zip(p, v)))
        assert member(ng, p) == member(a, tuple(-x for x in p))


@given(plsets(2, max_cells=3), st.lists(points(2), min_size=20, max_size=20))
def test_disjointify_property(s, pts):
    d = disjointify(s)
    assert pairwise_disjoint(d)
    for p in pts:
        assert member(d, p) == member(s, p)


@given(plsets(2), st.lists(points(2), min_size=30, max_size=30))
def test_nonempty_agrees_with_point_search(s, pts):
    # one-sided: any sampled member certifies nonemptiness
    if any(member(s, p) for p in pts):
        assert not s.is_empty()
    for cell in s.cells:
        assert cell.contains(cell.witness)


# arrangements


@given(st.lists(st.tuples(st.lists(st.integers(-2, 2), min_size=2, max_size=2).filter(any), st.integers(-2, 2)),
                min_size=1, max_size=5))
def test_arrangement_euler_and_face_of(planes):
    arr = Arrangement(2)
    for a, b in planes:
        arr.add(a, b)
    faces = arr.faces()
    assert sum((-1) ** f.dim for f in faces) == 1  # (-1)^n for n = 2
    signs = {f.signs for f in faces}
    assert len(signs) == len(faces)
    for f in faces:
        assert arr.sign_vector(f.witness) == f.signs


@given(st.lists(st.tuples(st.lists(st.integers(-2, 2), min_size=3, max_size=3).filter(any), st.integers(-2, 2)),
                min_size=1, max_size=4), st.lists(points(3), min_size=10, max_size=10))
def test_arrangement_complete_in_dim3(planes, pts):
    arr = Arrangement(3)
    for a, b in planes:
        arr.add(a, b)
    faces = arr.faces()
    assert sum((-1) ** f.dim for f in faces) == -1
    signs = {f.signs for f in faces}
    for p in pts:
        assert arr.sign_vector(p) in signs


# linear algebra


def test_linalg_small_cases():
    assert rank([(1, 2), (2, 4)], 2) == 1
    assert solve([(1, 1), (1, -1)], [Fraction(2), Fraction(0)], 2) == (1, 1)
    assert det([[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]) == 1
    basis, _ = nullspace([(1, 1, 0)], 3)
    assert len(basis) == 2 and all(b[0] + b[1] == 0 for b in basis)
    assert integer_rank([{0: 1, 1: -1}, {1: 1, 2: -1}, {0: 1, 2: -1}]) == 2


def test_constraint_parsing_round_trip():
    c = parse_constraint("x1 - 2*x2 <= 3/2", 2)
    assert c.rel == LE and c.coeffs[0] * Fraction(3, 2) == c.rhs and c.coeffs[1] == -2 * c.coeffs[0]
    assert c.holds((Fraction(3, 2), 0)) and not c.holds((2, 0))
    assert parse_constraint("x1 > 0", 1).rel == LT
    assert parse_constraint("x1 = x2", 2).rel == EQ
    assert AffineConstraint([0, 0], 1, LE).is_trivial()
