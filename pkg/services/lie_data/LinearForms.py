"""The linear forms t_1, t_2, ... whose elementary symmetric functions give c_r.

Forms are weight-coordinate tuples (coefficients of ω_1..ω_n).
"""

from services.lie_data.models import LieFamily, LieType
from shared.helper.HelperMatrix import Vector
from shared.models.errors import UsageError


def _form(n: int, **coefficients: int) -> Vector:
    vec = [0] * n
    for name, value in coefficients.items():
        vec[int(name[1:]) - 1] += value
    return tuple(vec)


def t_forms(lie_type: LieType) -> tuple[Vector, ...]:
    """Return the forms of a type.

    F4 and E_n: the W(P)-orbit of ω_4 (F4) or ω_n (E_n), in the fixed
    order used to define c_r. A_r: t_1 = ω_1, t_k = ω_k − ω_{k−1},
    t_{r+1} = −ω_r. C_n: t_1 = ω_1, t_k = ω_k − ω_{k−1}.

    Raises:
        UsageError: G2 has no such forms.
    """
    n = lie_type.rank
    family = lie_type.family
    if family in (LieFamily.A, LieFamily.C):
        forms = [_form(n, w1=1)]
        for k in range(2, n + 1):
            forms.append(_form(n, **{f"w{k}": 1, f"w{k - 1}": -1}))
        if family == LieFamily.A:
            forms.append(tuple(-1 if j == n - 1 else 0 for j in range(n)))
        return tuple(forms)
    if family == LieFamily.F4:
        return (
            _form(4, w4=1),
            _form(4, w3=1, w4=-1),
            _form(4, w2=1, w3=-1),
            _form(4, w1=1, w2=-1, w3=1),
            _form(4, w1=1, w3=-1, w4=1),
            _form(4, w1=1, w4=-1),
        )
    if family in (LieFamily.E6, LieFamily.E7, LieFamily.E8):
        forms = [_form(n, **{f"w{n}": 1})]
        for k in range(2, n - 2):
            forms.append(tuple(
                (1 if j == n - k else -1 if j == n - k + 1 else 0) for j in range(n)
            ))
        forms.append(_form(n, w3=1, w4=-1, w2=1))
        forms.append(_form(n, w1=1, w3=-1, w2=1))
        forms.append(_form(n, w1=-1, w2=1))
        return tuple(forms)
    raise UsageError(f"no linear forms are defined for {lie_type}")


def distinguished_node(lie_type: LieType) -> int:
    """Node K of the Grassmannian G/P_K the forms live on (F4: 1, E_n: 2)."""
    if lie_type.family == LieFamily.F4:
        return 1
    if lie_type.family in (LieFamily.E6, LieFamily.E7, LieFamily.E8):
        return 2
    raise UsageError(f"{lie_type} has no distinguished Grassmannian")
