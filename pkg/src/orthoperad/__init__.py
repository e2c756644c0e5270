"""Colored operads of finite orthogonal categories and their algebras."""

from __future__ import annotations

from .algebra import (
    MonFunctor,
    OperadAlgebraView,
    check_algebra_axioms,
    check_perp_commutative,
    free_algebra,
    from_operad_algebra,
    perp_abelianization,
    to_operad_algebra,
)
from .dsl import DslDocument, Workspace, load, parse, print_document
from .errors import (
    ActionNotCompatible,
    AxiomViolation,
    BudgetExceeded,
    DslError,
    DuplicateDeclaration,
    InvalidSeedPair,
    LengthMismatch,
    NotPerpCommutative,
    OrthoperadError,
    ParseError,
    ProfileMismatch,
    UndeclaredIdentifier,
    UnknownObject,
)
from .extension import (
    GroupAction,
    check_lan_perp_commutative,
    compare_extensions,
    is_j_local,
    lan_extension,
    lan_presentation,
    operadic_left_adjoint,
    orbifoldize,
)
from .monoid import (
    FiniteMonoid,
    MonoidHom,
    PresentedMonoid,
    congruence_classes,
    element_count,
    equal_within_bound,
)
from .operad import (
    ColoredOperad,
    OperadElement,
    canonicalize,
    check_operad_axioms,
    equivalent,
    operad_morphism_apply,
)
from .orthocat import (
    FinCategory,
    OrthCategory,
    OrthFunctor,
    full_subcategory,
    is_j_closed,
    is_orthogonal_equivalence,
    orth_closure,
    pullback_orth,
    validate,
)
from .perm import Permutation, block_perm, block_sum, compose, compose_family, right_act

__all__ = [name for name in dir() if not name.startswith("_") and name != "annotations"]
