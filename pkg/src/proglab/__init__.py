"""Greedy progression-free sets of integers and their densities."""

from .crt import crt_solve, rankin_gap_witness, s_level_gap_witness, verify_witness
from .density import (
    analytic_density_g3,
    analytic_density_s,
    b_m_density,
    count_members,
    excluded_e3_count,
    exponential_estimate,
    kfree_density,
    r_i_density,
    t_i_density,
    uniform_scan,
)
from .families import (
    A3,
    E3,
    G3,
    S,
    SetFamily,
    excluded_exponents,
    first_excluded,
    member_a3,
    member_e3,
    member_g3,
    member_s,
)
from .greedy import (
    DILATION,
    EXPONENTIATION,
    TRANSLATION,
    ProgressionFamily,
    completes_progression,
    greedy_set,
    verify_free,
    verify_maximal,
)
from .intervals import block_member, next_anchor, s_block, verify_block_free
from .numtheory import (
    Factorization,
    RangeError,
    exponent_gcd,
    factorize,
    is_k_free,
    is_squareful,
    nth_primes,
    power_roots,
    primes_up_to,
    ternary_digits,
    zeta,
)

__version__ = "0.1.0"
