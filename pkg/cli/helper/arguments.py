import argparse

from cli.dependencies.services import AppState, get_presentation_service
from services.lie_data.models import LieType
from services.poly.Polynomial import weight_variables
from services.poly.helper.PolynomialParser import parse_polynomial
from services.presentations.helper.RelationRing import chern_images, is_kind
from services.schubert.SchubertCalculator import SchubertCalculator
from services.schubert.models import SchubertCombination
from shared.models.errors import UsageError


def common_parser() -> argparse.ArgumentParser:
    """Run flags accepted by every command; unset flags fall back to the environment."""
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("run settings")
    group.add_argument("--format", choices=["json", "text"], help="output format (text renders YAML)")
    group.add_argument("--out", help="write the output to this file instead of stdout")
    group.add_argument("--tier", type=int, choices=[1, 2, 3], help="verification tier")
    group.add_argument("--long", action="store_true", help="unlock the long-running degree caps")
    group.add_argument("--cache-dir", help="directory of the file cache")
    group.add_argument("--budget", type=float, help="wall-clock budget of a verification run in seconds")
    group.add_argument("--element-cap", type=int, help="maximal number of elements of one coset table")
    return parser


def add_table_arguments(parser: argparse.ArgumentParser, max_length: bool = False) -> None:
    parser.add_argument("--group", required=True, help="G2, F4, E6, E7, E8, A<r> or C<r>")
    parser.add_argument("--parabolic", default="all", help="comma list of nodes K, or 'all' for the full flag")
    if max_length:
        parser.add_argument("--max-length", type=int, help="cut the table at this length")


##########################################
############ CLASS EXPRESSIONS ###########
##########################################

def class_generators(state: AppState, calculator: SchubertCalculator) -> dict[str, SchubertCombination]:
    """Special classes y_i available on the calculator's table; none for classical types."""
    if not calculator.lie_type.is_exceptional:
        return {}
    try:
        return get_presentation_service(state).special_generators(calculator)
    except UsageError as e:
        state.helper_config.get_logger().debug("no special classes on %s: %s", calculator.label, e)
        return {}


def evaluate_expression(state: AppState, calculator: SchubertCalculator, text: str) -> SchubertCombination:
    """Schubert expansion of a polynomial in w_k, c_k, y_i and s<r>_<i>.

    Polynomials in weights and Chern invariants are expanded directly; any
    other symbol goes through class multiplication.
    """
    poly = parse_polynomial(text)
    lie_type: LieType = calculator.lie_type
    used = poly.used_variables()
    if all(is_kind(name, "w") or is_kind(name, "c") for name in used):
        ring = weight_variables(lie_type.rank)
        poly = poly.extend(used).substitute(chern_images(lie_type, used, ring), ring)
        return calculator.lr_expand(poly)
    return calculator.evaluate_generator_polynomial(poly, class_generators(state, calculator))
