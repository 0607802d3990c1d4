from functools import lru_cache

from services.lie_data.LinearForms import t_forms
from services.lie_data.models import LieFamily, LieType
from services.poly.Polynomial import Polynomial, weight_variables
from shared.models.errors import UsageError


def _elementary_of(forms: tuple[Polynomial, ...], variables: tuple[str, ...]) -> tuple[Polynomial, ...]:
    """e_0..e_m of the given polynomials, read off ∏(1 + f_j z)."""
    e = [Polynomial.one(variables)] + [Polynomial.zero(variables)] * len(forms)
    for count, form in enumerate(forms, start=1):
        for k in range(count, 0, -1):
            e[k] = e[k] + e[k - 1] * form
    return tuple(e)


def elementary_symmetric(k: int, m: int) -> Polynomial:
    """e_k(t_1, ..., t_m).

    Raises:
        UsageError: k outside 0..m.
    """
    if not 0 <= k <= m:
        raise UsageError(f"elementary symmetric e_{k} needs 0 <= k <= {m}")
    variables = tuple(f"t{j}" for j in range(1, m + 1))
    return _elementary_of(tuple(Polynomial.variable(variables, j) for j in range(m)), variables)[k]


@lru_cache(maxsize=None)
def _form_elementaries(lie_type: LieType, squared: bool = False) -> tuple[Polynomial, ...]:
    variables = weight_variables(lie_type.rank)
    forms = tuple(Polynomial.linear(variables, form) for form in t_forms(lie_type))
    if squared:
        forms = tuple(form * form for form in forms)
    return _elementary_of(forms, variables)


def c_polynomial(lie_type: LieType, r: int) -> Polynomial:
    """c_r: e_r of the type's linear forms t_1, t_2, ..., written in the weights.

    Raises:
        UsageError: a type other than F4/E6/E7/E8, or r outside 1..(6 for F4, n for E_n).
    """
    if lie_type.family not in (LieFamily.F4, LieFamily.E6, LieFamily.E7, LieFamily.E8):
        raise UsageError(f"c_r is defined for F4, E6, E7 and E8, not {lie_type}")
    top = 6 if lie_type.family == LieFamily.F4 else lie_type.rank
    if not 1 <= r <= top:
        raise UsageError(f"c_{r} is out of range 1..{top} for {lie_type}")
    return _form_elementaries(lie_type)[r]


def classical_relation(lie_type: LieType, k: int) -> Polynomial:
    """The classical relation of a type in weight variables.

    A_r: s_k = e_k(t_1, ..., t_{r+1}) for 1 <= k <= r+1.
    C_n: s_{2k} = e_k(t_1², ..., t_n²), indexed by the polynomial degree 2k.

    Raises:
        UsageError: other families or an index out of range.
    """
    if lie_type.family == LieFamily.A:
        if not 1 <= k <= lie_type.rank + 1:
            raise UsageError(f"s_{k} is out of range 1..{lie_type.rank + 1} for {lie_type}")
        return _form_elementaries(lie_type)[k]
    if lie_type.family == LieFamily.C:
        if k % 2 or not 2 <= k <= 2 * lie_type.rank:
            raise UsageError(f"s_{k} must have an even degree in 2..{2 * lie_type.rank} for {lie_type}")
        return _form_elementaries(lie_type, squared=True)[k // 2]
    raise UsageError(f"no classical relations are defined for {lie_type}")
