"""enumerate, expand, multiply, giambelli and chern."""

import argparse

from cli.dependencies.services import AppState, get_presentation_service, get_schubert_service
from cli.helper.arguments import add_table_arguments, class_generators, evaluate_expression
from cli.models.requests import TableRequest, build_request
from cli.models.responses import CosetListing, ExpansionResponse, GiambelliResponse, ReportResponse
from services.schubert.GiambelliSolver import GiambelliSolver


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("enumerate", parents=[common], help="list the minimal coset representatives W^P")
    add_table_arguments(parser, max_length=True)
    parser.set_defaults(handler=cmd_enumerate)

    parser = subparsers.add_parser("expand", parents=[common], help="expand a polynomial into Schubert classes")
    add_table_arguments(parser)
    parser.add_argument("--poly", required=True, help='e.g. "c3", "w1^3" or "2*y3 - w1^3"')
    parser.set_defaults(handler=cmd_expand)

    parser = subparsers.add_parser("multiply", parents=[common], help="product of two Schubert expressions")
    add_table_arguments(parser)
    parser.add_argument("--left", required=True, help='e.g. "s3_1" or "y4"')
    parser.add_argument("--right", required=True)
    parser.set_defaults(handler=cmd_multiply)

    parser = subparsers.add_parser("giambelli", parents=[common], help="Giambelli polynomials of one degree")
    add_table_arguments(parser)
    parser.add_argument("--degree", type=int, required=True)
    parser.set_defaults(handler=cmd_giambelli)

    parser = subparsers.add_parser("chern", parents=[common], help="check the Chern class formulas of a group")
    parser.add_argument("--group", required=True)
    parser.set_defaults(handler=cmd_chern)


def _table_request(args: argparse.Namespace) -> TableRequest:
    return build_request(
        TableRequest, group=args.group, parabolic=args.parabolic, max_length=getattr(args, "max_length", None)
    )


##########################################
############### COMMANDS #################
##########################################

async def cmd_enumerate(args: argparse.Namespace, state: AppState) -> CosetListing:
    request = _table_request(args)
    table = await get_schubert_service(state).get_table(request.lie_type, request.K, max_length=request.max_length)
    return CosetListing.from_table(table)


async def cmd_expand(args: argparse.Namespace, state: AppState) -> ExpansionResponse:
    request = _table_request(args)
    calculator = await get_schubert_service(state).get_calculator(request.lie_type, request.K)
    return ExpansionResponse.from_combination(evaluate_expression(state, calculator, args.poly), args.poly)


async def cmd_multiply(args: argparse.Namespace, state: AppState) -> ExpansionResponse:
    request = _table_request(args)
    calculator = await get_schubert_service(state).get_calculator(request.lie_type, request.K)
    left = evaluate_expression(state, calculator, args.left)
    right = evaluate_expression(state, calculator, args.right)
    product = calculator.schubert_product(left, right)
    return ExpansionResponse.from_combination(product, f"({args.left})*({args.right})")


async def cmd_giambelli(args: argparse.Namespace, state: AppState) -> GiambelliResponse:
    request = _table_request(args)
    calculator = await get_schubert_service(state).get_calculator(request.lie_type, request.K)
    solver = GiambelliSolver(calculator, class_generators(state, calculator))
    return GiambelliResponse.from_table(solver.solve(args.degree))


async def cmd_chern(args: argparse.Namespace, state: AppState) -> ReportResponse:
    report = await get_presentation_service(state).verify_chern_formulas(args.group)
    return ReportResponse.from_reports([report])
