"""verify, tables, shape, basic, modp and spanning."""

import argparse

from cli.dependencies.services import AppState, get_presentation_service
from cli.models.requests import ModPRequest, build_request
from cli.models.responses import BasicDataResponse, ModPResponse, ReportResponse, SpanningResponse
from services.lie_data.models import LieType
from services.poly.helper.PolynomialParser import format_polynomial
from services.presentations.PresentationService import CLASSICAL_CHECK_TYPES
from services.presentations.models import VerificationReport
from shared.models.errors import UsageError

# groups with Chern formulas, restriction chains and reference tables
DISTINGUISHED_GROUPS = ("F4", "E6", "E7", "E8")

# full-flag presentations in the numbering of --theorem
THEOREM_FIXTURES = {1: "G2/T", 2: "F4/T", 3: "E6/T", 4: "E7/T", 5: "E8/T"}


def register(subparsers, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser("verify", parents=[common], help="run presentation checks")
    parser.add_argument("--fixture", action="append", help='presentation name, e.g. "F4/P{1}" (repeatable)')
    parser.add_argument("--theorem", type=int, choices=range(1, 6), help="full-flag presentation 1-5 (G2/T .. E8/T)")
    parser.add_argument("--group", help="every presentation of a group")
    parser.add_argument("--restriction", help="restriction to the classical fibre (F4, E_n) or classical relations (A_r, C_r)")
    parser.add_argument("--kernel-degree", type=int, help="compare kernel and ideal up to this degree")
    parser.add_argument("--generation-degree", type=int, help="check generation up to this degree")
    parser.add_argument("--all", action="store_true", help="every presentation, formula, table and restriction")
    parser.set_defaults(handler=cmd_verify)

    parser = subparsers.add_parser("tables", parents=[common], help="reference Chern coefficients and Giambelli polynomials")
    parser.add_argument("--group", required=True)
    parser.set_defaults(handler=cmd_tables)

    parser = subparsers.add_parser("shape", parents=[common], help="shape of the integral presentation of G/T")
    parser.add_argument("--group", required=True)
    parser.set_defaults(handler=cmd_shape)

    parser = subparsers.add_parser("basic", parents=[common], help="basic data of a simple group")
    parser.add_argument("--group", required=True)
    parser.set_defaults(handler=cmd_basic)

    parser = subparsers.add_parser("modp", parents=[common], help="presentation of H*(G/T; F_p)")
    parser.add_argument("--group", required=True)
    parser.add_argument("--prime", type=int, required=True)
    parser.add_argument("--dims", type=int, help="compare graded dimensions up to this degree")
    parser.set_defaults(handler=cmd_modp)

    parser = subparsers.add_parser("spanning", parents=[common], help="monotonous monomials span over the invariants")
    parser.add_argument("--group", required=True)
    parser.add_argument("--degree", type=int, required=True)
    parser.set_defaults(handler=cmd_spanning)


##########################################
################ VERIFY ##################
##########################################

def _selected_fixtures(args: argparse.Namespace, state: AppState) -> list[str]:
    presentations = get_presentation_service(state).loader.presentations()
    names: list[str] = []
    if args.all:
        names.extend(presentations)
    if args.group:
        group = LieType.parse(args.group).name
        matching = [name for name, fixture in presentations.items() if fixture.lie_type.name == group]
        if not matching:
            raise UsageError(f"no presentation is recorded for {group}")
        names.extend(matching)
    if args.theorem is not None:
        names.append(THEOREM_FIXTURES[args.theorem])
    for name in args.fixture or []:
        if name not in presentations:
            raise UsageError(f"unknown presentation '{name}'", known=sorted(presentations))
        names.append(name)
    return list(dict.fromkeys(names))


async def cmd_verify(args: argparse.Namespace, state: AppState) -> ReportResponse:
    service = get_presentation_service(state)
    fixtures = _selected_fixtures(args, state)
    if not fixtures and not args.restriction:
        raise UsageError("verify needs --fixture, --theorem, --group, --restriction or --all")
    reports: list[VerificationReport] = []
    for name in fixtures:
        reports.append(await service.verify_relations(name))
        if args.generation_degree is not None:
            reports.append(await service.verify_generation(name, args.generation_degree))
        if args.kernel_degree is not None:
            reports.append(await service.verify_kernel(name, args.kernel_degree))

    if args.all:
        for group in DISTINGUISHED_GROUPS:
            reports.append(await service.verify_chern_formulas(group))
            reports.append(await service.chern_coefficient_report(group))
            reports.append(await service.giambelli_report(group))
            reports.append(await service.verify_restriction(group))
        for group in CLASSICAL_CHECK_TYPES:
            reports.append(await service.verify_classical_relations(group))
    elif args.restriction:
        lie_type = LieType.parse(args.restriction)
        if lie_type.is_exceptional:
            reports.append(await service.verify_restriction(lie_type))
        else:
            reports.append(await service.verify_classical_relations(lie_type))
    return ReportResponse.from_reports(reports)


##########################################
############## PRESENTATIONS #############
##########################################

async def cmd_tables(args: argparse.Namespace, state: AppState) -> ReportResponse:
    service = get_presentation_service(state)
    return ReportResponse.from_reports([
        await service.chern_coefficient_report(args.group),
        await service.giambelli_report(args.group),
    ])


async def cmd_shape(args: argparse.Namespace, state: AppState) -> ReportResponse:
    return ReportResponse.from_reports([get_presentation_service(state).eliminator.presentation_shape(args.group)])


async def cmd_basic(args: argparse.Namespace, state: AppState) -> BasicDataResponse:
    lie_type = LieType.parse(args.group)
    data = get_presentation_service(state).eliminator.basic_data(lie_type)
    return BasicDataResponse(group=lie_type.name, data=data.model_dump())


async def cmd_modp(args: argparse.Namespace, state: AppState) -> ModPResponse:
    request = build_request(ModPRequest, group=args.group, prime=args.prime, dims=args.dims)
    eliminator = get_presentation_service(state).eliminator
    presentation = eliminator.mod_p_presentation(request.group, request.prime)
    if request.dims is None:
        return ModPResponse(presentation=presentation.to_payload())
    return ModPResponse(
        presentation=presentation.to_payload(),
        dimensions=eliminator.graded_dimensions(presentation, request.dims),
        expected=eliminator.expected_dimensions(request.group, request.dims),
    )


async def cmd_spanning(args: argparse.Namespace, state: AppState) -> SpanningResponse:
    service = get_presentation_service(state)
    report = await service.verify_monotonous_spanning(args.group, args.degree)
    monomials = service.eliminator.monotonous_monomials(args.group, args.degree)
    return SpanningResponse.from_reports([report], monomials=[format_polynomial(m) for m in monomials])
