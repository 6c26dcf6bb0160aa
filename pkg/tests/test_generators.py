import math

import pytest
from hypothesis import given, settings, strategies as st

from spernerlab.complex import (Triangulation, boundary_complex, check_antipodal_symmetry,
                                validate_triangulation)
from spernerlab.generators import (ChainError, GeneratorSpec, barycentric_subdivide, cross_standard,
                                   freudenthal_cube, generate, grid_simplex, hemisphere_chain,
                                   parse_spec, random_labelling, verify_chain)
from spernerlab.geometry import Kind
from spernerlab.theorems import TheoremId, validate_label_conditions

from oracles import chain_equalities_hold


def test_examples():
    T = cross_standard(2)
    assert len(T.maximal) == 4 and len(T.vertices) == 5
    assert len(freudenthal_cube(2, 1).maximal) == 2
    assert len(grid_simplex(2, 2).maximal) == 4


def test_barycentric_examples():
    tri = grid_simplex(2, 1)
    assert len(barycentric_subdivide(tri).maximal) == 6
    assert len(barycentric_subdivide(cross_standard(2)).maximal) == 24
    seg = Triangulation.from_maximal({0: (0,), 1: (1,)}, [(0, 1)])
    assert len(barycentric_subdivide(barycentric_subdivide(seg)).maximal) == 4


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_family_counts(n):
    assert len(cross_standard(n).maximal) == 2 ** n
    assert len(cross_standard(n).vertices) == 2 * n + 1
    for k in (1, 2):
        assert len(freudenthal_cube(n, k).maximal) == math.factorial(n) * k ** n
        assert len(freudenthal_cube(n, k).vertices) == (k + 1) ** n
        assert len(grid_simplex(n, k).maximal) == k ** n
        assert len(grid_simplex(n, k).vertices) == math.comb(n + k, n)


@pytest.mark.parametrize("text", ["cross:1", "cross:2", "cross:3", "cube:2:k=1", "cube:2:k=3",
                                  "cube:3:k=2", "simplex:2:k=1", "simplex:2:k=3", "simplex:3:k=2",
                                  "bary(cross:2,rounds=1)", "bary(cube:2:k=1,rounds=2)",
                                  "bary(simplex:2:k=1,rounds=2)"])
def test_generated_triangulations_are_valid(text):
    T = generate(text)
    report = validate_triangulation(T)
    assert report.ok, report.violations[:3]
    assert T.domain is not None


def test_barycentric_multiplies_by_factorial():
    for text in ("cross:3", "cube:2:k=2", "simplex:3:k=1"):
        T = generate(text)
        d = T.dimension
        assert len(barycentric_subdivide(T).maximal) == math.factorial(d + 1) * len(T.maximal)


def test_parse_spec():
    spec = parse_spec("bary(cube:2:k=2,rounds=1)")
    assert spec.kind == "BARYCENTRIC" and spec.rounds == 1
    assert spec.inner.kind == "FREUDENTHAL_CUBE" and spec.inner.n == 2 and spec.inner.k == 2
    assert parse_spec("cross:3") == GeneratorSpec("CROSS_STANDARD", 3)
    for bad in ("cross", "cross:0", "cube:2:k=0", "torus:2", "bary(cross:2,rounds=-1)"):
        with pytest.raises(ValueError):
            parse_spec(bad)


def test_generation_is_deterministic():
    a, b = generate("bary(cross:2,rounds=1)"), generate("bary(cross:2,rounds=1)")
    assert a.coords == b.coords and a.simplices == b.simplices


# -- hemisphere chains ----------------------------------------------------------

def test_chain_examples():
    chain = hemisphere_chain(cross_standard(2))
    T = chain.triangulation
    assert {tuple(sorted(map(tuple, T.points(s)))) for s in chain.simplices(1)} == {
        ((0, 1), (1, 0)), ((-1, 0), (0, 1))}
    assert [T.coords[s[0]] for s in chain.simplices(0)] == [(1, 0)]
    chain = hemisphere_chain(cross_standard(1))
    assert len(chain.simplices(1)) == 2
    assert [chain.triangulation.coords[s[0]] for s in chain.simplices(0)] == [(1,)]
    assert verify_chain(hemisphere_chain(barycentric_subdivide(cross_standard(2)))).ok


@pytest.mark.parametrize("text", ["cross:1", "cross:2", "cross:3", "bary(cross:1,rounds=2)",
                                  "bary(cross:2,rounds=1)", "bary(cross:2,rounds=2)",
                                  "bary(cross:3,rounds=1)"])
def test_chain_equalities(text):
    chain = hemisphere_chain(generate(text))
    assert verify_chain(chain).ok
    assert chain_equalities_hold(chain)
    assert len(chain.simplices(0)) == 1


def test_chain_rejects_cube_domain():
    with pytest.raises((ChainError, ValueError)):
        hemisphere_chain(freudenthal_cube(2, 1))


# -- labellings -----------------------------------------------------------------

def test_random_labelling_examples():
    T = grid_simplex(2, 2)
    lam = random_labelling(TheoremId.SPERNER, T, 2, seed=1)
    assert validate_label_conditions(TheoremId.SPERNER, T, lam).ok
    T = cross_standard(2)
    lam = random_labelling(TheoremId.TUCKER, T, 2, seed=7)
    assert validate_label_conditions(TheoremId.TUCKER, T, lam).ok
    Tb = boundary_complex(T)
    for v in Tb.vertices:
        assert lam[T.negate_vertex(v)] == tuple(-c for c in lam[v])
    assert random_labelling(TheoremId.TUCKER, T, 2, seed=7) == lam


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(list(TheoremId)), st.integers(0, 10 ** 6))
def test_random_labelling_meets_hypotheses(theorem, seed):
    text = {Kind.SIMPLEX: "simplex:2:k=2", Kind.CROSS: "bary(cross:2,rounds=1)",
            Kind.CUBE: "cube:2:k=2"}[theorem.domains[0]]
    T = generate(text)
    assert validate_label_conditions(theorem, T, random_labelling(theorem, T, 2, seed)).ok


def test_random_labelling_rejects_wrong_domain():
    with pytest.raises(ValueError):
        random_labelling(TheoremId.SPERNER, cross_standard(2), 2)
    with pytest.raises(ValueError):
        random_labelling(TheoremId.OCT_OCT, freudenthal_cube(2, 1), 2)


def test_boundary_symmetry_survives_refinement():
    for text in ("cross:2", "cube:2:k=1", "cube:3:k=1"):
        T = generate(text)
        for _ in range(2):
            T = barycentric_subdivide(T)
            assert check_antipodal_symmetry(boundary_complex(T)).ok
