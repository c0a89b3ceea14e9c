"""ultradiv: exact divisor-lattice combinatorics at desk scale.

Divisor closures and quotient sets, factorization patterns with a
domination order and constructive witnesses, bounded-universe filter
divisibility with the product formula, dyadic pair colorings with
exhaustive verifiers, and the greedy machinery built on top of them.
"""

__version__ = "0.1.0"

from .arith import (
    NatSet,
    coprime_power,
    coprime_product,
    down_closure,
    drop_to_two,
    elementwise_power,
    factorize,
    level_of,
    nth_prime,
    prime_index,
    quotient_set,
    smallest_prime_factor,
    up_closure,
)
from .coloring import (
    ThickParams,
    check_thick_lemmas,
    class_of,
    color_pair,
    color_tuple,
    coloring_from_set,
    find_mono_ap,
    find_monochromatic,
    is_thick_bounded,
    verify_progr,
    verify_refinement,
)
from .constructions import (
    ChainOfSets,
    ECFunction,
    build_Y,
    ec_enumerate,
    g_value,
    greedy_thick_extend,
    pseudo_check,
    verify_g_disjoint,
)
from .filters import (
    FinFilter,
    divides_down,
    divides_up,
    image_filter,
    member,
    product_member,
    product_principal,
)
from .patterns import (
    Pattern,
    dominates,
    extend_divisible,
    generate_falpha,
    pattern_add,
    pattern_leq,
    pattern_of,
    restrict,
    shape_class,
    shape_name,
    sigma,
    witness_set,
)
