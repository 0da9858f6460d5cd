import pytest
from hypothesis import given
from hypothesis import strategies as st

from productlocc.core import (
    FormatError,
    LocalKet,
    ProductState,
    ShapeMismatchError,
    StateSet,
    SystemShape,
    check_pairwise_orthogonal,
    inner_product,
    parse_state_set,
    format_state_set,
    read_state_set,
    tensor_amplitudes,
    write_state_set,
)
from productlocc.construct import build_bipartite, build_tripartite, stopper


def ps(label, *factors):
    return ProductState(label, tuple(LocalKet(tuple(f)) for f in factors))


def test_inner_product_examples():
    assert inner_product(ps("a", (1, -1, 0), (0, 0, 1)), ps("b", (1, 1, 0), (0, 0, 1))) == 0
    assert inner_product(ps("a", (1, 0), (1, 0)), ps("b", (1, 0), (1, 0))) == 1
    phi2 = ps("phi_2", (0, 1, 0, 0), (1, -1, 0, 0, 0, 0, 0))
    assert inner_product(stopper(SystemShape((4, 7))), phi2) == 0


def test_inner_product_shape_mismatch():
    with pytest.raises(ShapeMismatchError):
        inner_product(ps("a", (1, 0), (1, 0)), ps("b", (1, 0), (1, 0, 0)))


def test_tensor_amplitudes_examples():
    assert tensor_amplitudes(ps("a", (1, -1), (1, 0))) == (1, 0, -1, 0)
    assert tensor_amplitudes(ps("a", (0, 1), (0, 0, 1))) == (0, 0, 0, 0, 0, 1)
    assert tensor_amplitudes(stopper(SystemShape((2, 2)))) == (1, 1, 1, 1)


def test_shape_invariants():
    with pytest.raises(ValueError):
        SystemShape((4,))
    with pytest.raises(ValueError):
        SystemShape((1, 3))
    with pytest.raises(ValueError):
        LocalKet((0, 0))


def test_state_set_rejects_duplicate_labels_and_bad_dims():
    s = ps("x", (1, 0), (1, 0))
    with pytest.raises(ValueError):
        StateSet(SystemShape((2, 2)), (s, s))
    with pytest.raises(ShapeMismatchError):
        StateSet(SystemShape((2, 3)), (s,))


def test_check_pairwise_orthogonal():
    assert check_pairwise_orthogonal(build_bipartite(4, 7)) == []
    assert check_pairwise_orthogonal(build_tripartite(4, 5, 6)) == []
    bad = StateSet(SystemShape((2, 2)), (ps("b", (1, 0), (1, 0)), ps("a", (1, 0), (1, 1))))
    assert check_pairwise_orthogonal(bad) == [("a", "b")]


@st.composite
def state_pairs(draw):
    dims = draw(st.lists(st.integers(2, 3), min_size=2, max_size=3))
    def one():
        return tuple(
            LocalKet(tuple(draw(st.lists(st.integers(-2, 2), min_size=d, max_size=d).filter(any))))
            for d in dims
        )
    return ProductState("a", one()), ProductState("b", one())


@given(state_pairs())
def test_factored_inner_product_matches_expanded(pair):
    a, b = pair
    expanded = sum(x * y for x, y in zip(tensor_amplitudes(a), tensor_amplitudes(b)))
    assert inner_product(a, b) == expanded
    assert inner_product(a, b) == inner_product(b, a)


@given(state_pairs(), st.integers(-5, 5).filter(bool), st.data())
def test_inner_product_scales_linearly(pair, k, data):
    a, b = pair
    p = data.draw(st.integers(0, len(a.factors) - 1))
    factors = list(a.factors)
    factors[p] = factors[p].scaled(k)
    assert inner_product(ProductState("a", tuple(factors)), b) == k * inner_product(a, b)


def test_file_round_trip(tmp_path):
    original = build_tripartite(4, 5, 6)
    path = tmp_path / "t.txt"
    write_state_set(original, path)
    loaded = read_state_set(path)
    assert loaded.family_tag == "external"
    assert loaded.shape == original.shape
    assert loaded.states == original.states
    assert format_state_set(loaded) == format_state_set(original)


def test_file_format_layout():
    text = format_state_set(build_bipartite(4, 4))
    lines = text.splitlines()
    assert lines[0] == "shape: 4 4"
    assert lines[1] == "phi_1 | 1 1 1 1 | 1 1 1 1"
    assert lines[2] == "phi_2 | 0 1 0 0 | 1 -1 0 0"


def test_parse_comments_and_blank_lines():
    text = "# header\n\nshape: 2 2\n# c\na | 1 0 | 1 0\nb | 0 1 | 1 0\n"
    s = parse_state_set(text)
    assert [x.label for x in s] == ["a", "b"]


@pytest.mark.parametrize(
    "text",
    [
        "a | 1 0 | 1 0\n",
        "shape: 2 2\na | 1 0\n",
        "shape: 2 2\na | 1 0 0 | 1 0\n",
        "shape: 2 2\na | 1 x | 1 0\n",
        "shape: 2 2\na | 0 0 | 1 0\n",
        "shape: 2 2\na | 1 0 | 1 0\na | 0 1 | 1 0\n",
        "",
    ],
)
def test_parse_errors(text):
    with pytest.raises(FormatError):
        parse_state_set(text)
