"""Generators of su(2^m), Pauli strings, and the change of basis between them."""

from .basis_change import (
    Decomposition,
    Part,
    SectorBlock,
    classification_table,
    compose,
    decompose,
    decompose_in_generators,
    fast_decompose,
    generator_in_pauli,
    pauli_in_generators,
    sector_block,
)
from .errors import (
    OutOfSpanError,
    ResourceLimitError,
    SuConditionError,
    UnsupportedDimensionError,
)
from .gellmann import (
    Family,
    GeneratorIndex,
    all_generators,
    derivative_check,
    generator,
    index_to_position,
    orthogonal_diagonal_basis,
    pair_to_index,
)
from .pauli import (
    FormTag,
    PauliString,
    classify_form,
    enumerate_strings,
    hs_inner,
    make_string,
    materialize,
)
from .sugroup import (
    Convention,
    SuParameters,
    build_element,
    check_su_conditions,
    exponentiate,
    extract_params,
    free_parameter_count,
)

__version__ = "0.1.0"
