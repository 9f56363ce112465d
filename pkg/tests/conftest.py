from fractions import Fraction

from hypothesis import assume, settings
from hypothesis import strategies as st

from nefcert.pic import DegreeProblem, DivisorClass, enumerate_proper_partitions

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@st.composite
def reduced_problems(draw, n_min=4, n_max=7, m_min=2, m_max=6):
    m = draw(st.integers(m_min, m_max))
    n = draw(st.integers(n_min, n_max))
    head = draw(st.lists(st.integers(1, m - 1), min_size=n - 1, max_size=n - 1))
    last = -sum(head) % m
    assume(last != 0)
    return DegreeProblem(tuple(head) + (last,), m)


@st.composite
def divisor_classes(draw, n_min=5, n_max=7, bound=4):
    n = draw(st.integers(n_min, n_max))
    coeff = st.integers(-bound, bound)
    psi = draw(st.lists(coeff, min_size=n, max_size=n))
    parts = enumerate_proper_partitions(n)
    picks = draw(st.lists(st.sampled_from(parts), max_size=6))
    boundary = {P: Fraction(draw(coeff)) for P in picks}
    return DivisorClass(n, psi, boundary)
