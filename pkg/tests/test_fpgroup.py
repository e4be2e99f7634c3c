import pytest
from hypothesis import given, settings, strategies as st

from fiberfaces.fpgroup.cosets import (CosetTable, CosetTableError, count_cyclic_quotients,
                                       enumerate_cyclic_covers, format_coset_table,
                                       intersect_subgroups, parse_coset_table,
                                       reidemeister_schreier, transfer_abelianization)
from fiberfaces.fpgroup.presentation import (Presentation, PresentationError, abelianization,
                                             cyclically_reduce, format_presentation, inverse,
                                             multiply, parse_presentation, parse_word,
                                             reduce_word)
from fiberfaces.fpgroup.simplify import (NotCertified, SurfaceCertificate, generates_free_group,
                                         recognize_surface, scramble,
                                         simplify_presentation, standard_surface_presentation,
                                         surface_group_certificate, transport_words)

from properties import log_replay

TREFOIL = parse_presentation("pres v1\ngens a b\nrel abaBAB\n")


def test_word_ops():
    assert reduce_word((1, -1, 2, 3, -3)) == (2,)
    assert cyclically_reduce((-1, 2, 3, 1)) == (2, 3)
    assert multiply((1, 2), inverse((1, 2))) == ()
    assert parse_word("a^3B", ("a", "b")) == (1, 1, 1, -2)


def test_presentation_roundtrip_and_errors():
    P = parse_presentation("gens a b / rel abAB / rel a^2")
    assert parse_presentation(format_presentation(P)) == P
    with pytest.raises(PresentationError):
        parse_presentation("pres v1\nrel ab\n")
    with pytest.raises(PresentationError):
        parse_presentation("pres v2\ngens a\n")
    with pytest.raises(PresentationError):
        Presentation(("a",), ((2,),))


def test_abelianization_examples():
    assert abelianization(TREFOIL) == (1, [])
    assert abelianization(standard_surface_presentation(2)) == (4, [])
    assert abelianization(parse_presentation("gens a b / rel a^4 / rel b^6 / rel abAB")) == (0, [2, 12])


def test_coset_table_validation():
    with pytest.raises(CosetTableError):
        CosetTable(2, ((0, 0),))


@pytest.mark.parametrize("g,n", [(1, 2), (2, 2), (2, 3), (3, 2)])
def test_surface_cyclic_cover_betti(g, n):
    P = standard_surface_presentation(g)
    covers = enumerate_cyclic_covers(P, n)
    # index n covers of a genus g surface have genus n(g-1)+1
    assert covers and all(h == (2 * (n * (g - 1) + 1), []) for _, h in covers)
    assert len(covers) == count_cyclic_quotients(2 * g, [], n)


@pytest.mark.parametrize("pres,n", [
    ("gens a b / rel abaBAB", 3),
    ("gens a b / rel a^4 / rel b^6 / rel abAB", 2),
    ("gens a b c / rel abAB / rel c^6", 3),
    ("gens a b / rel a^2 / rel b^4", 4),
])
def test_cover_counts_and_transfer(pres, n):
    P = parse_presentation(pres)
    r, tors = abelianization(P)
    covers = enumerate_cyclic_covers(P, n)
    assert len(covers) == count_cyclic_quotients(r, tors, n)
    for T, h in covers:
        assert transfer_abelianization(P, T) == h


def test_coset_table_text_roundtrip():
    P = standard_surface_presentation(1)
    T, _ = enumerate_cyclic_covers(P, 3)[0]
    assert parse_coset_table(P, format_coset_table(P, T)).perms == T.perms
    with pytest.raises(CosetTableError):
        parse_coset_table(P, "perm a (1,2)\nperm b (1,2,3)\n")


def test_intersection_index():
    P = standard_surface_presentation(1)
    covers = enumerate_cyclic_covers(P, 2)
    T = intersect_subgroups(covers[0][0], covers[1][0])
    assert T.degree == 4
    assert abelianization(reidemeister_schreier(P, T)) == (2, [])


@pytest.mark.parametrize("g", [1, 2, 3])
def test_surface_certificate_after_scramble(g):
    P = scramble(standard_surface_presentation(g), 12, seed=g)
    c = surface_group_certificate(P, effort=8, seed=0)
    assert isinstance(c, SurfaceCertificate)
    assert (c.kind, c.orientable, c.genus) == ("closed", True, g)


def test_not_certified_for_trefoil():
    assert isinstance(surface_group_certificate(TREFOIL), NotCertified)


def test_recognize_nonorientable():
    P = parse_presentation("gens a b / rel aabb")
    assert recognize_surface(P) == ("closed", False, 2, 0)
    assert recognize_surface(Presentation(("a", "b"), ())) == ("free", True, 0, 2)


def test_simplify_log_replays_byte_exact():
    assert log_replay(1000, seed=0) == 1000


def test_transport_words_generators():
    P = scramble(standard_surface_presentation(1), 6, seed=4)
    res = simplify_presentation(P)
    ws = transport_words(P, res.log, [(i,) for i in range(1, P.ngens + 1)])
    assert len(ws) == P.ngens


def test_stallings_free_generation():
    assert generates_free_group([(1,), (2,)], 2)
    assert generates_free_group([(1, 2), (2,)], 2)
    assert not generates_free_group([(1, 1), (2,)], 2)
    assert not generates_free_group([(1,)], 2)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.sampled_from([2, -2]), max_size=6))
def test_nielsen_images_generate(w):
    # {a w, b} with w a word in b only generates F(a, b)
    w = tuple(w)
    assert generates_free_group([reduce_word((1,) + w), (2,)], 2)
