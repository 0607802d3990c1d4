"""Command-line entry point of the Schubert engine.

Configuration is read from environment variables (or .env); run flags
override them. Results go to stdout (or --out) as JSON, or as YAML with
--format text; logs go to stderr.

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 resource cap.

Usage:
    python -m cli enumerate --group G2 --parabolic all
    python -m cli expand --group F4 --parabolic 1 --poly "c4"
    python -m cli verify --fixture G2/T --kernel-degree 6
    python -m cli modp --group E7 --prime 3
"""

import argparse
import asyncio
import json
import os
import sys

import yaml
from dotenv import load_dotenv

from cli.commands import CacheCommands, SchubertCommands, VerifyCommands
from cli.dependencies.services import lifespan
from cli.helper.arguments import common_parser
from cli.models.responses import CommandResponse, ErrorDetail, ErrorResponse
from shared.helper.HelperConfig import HelperConfig
from shared.logging.logging_setup import setup_logging
from shared.models.config import RunConfig
from shared.models.errors import SchubertEngineError, UsageError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schubert", description="Exact Schubert calculus on flag manifolds of exceptional Lie groups.")
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = common_parser()
    SchubertCommands.register(subparsers, common)
    VerifyCommands.register(subparsers, common)
    CacheCommands.register(subparsers, common)
    return parser


def build_run_config(helper_config: HelperConfig, args: argparse.Namespace) -> RunConfig:
    """RunConfig from the environment with the given flags applied on top."""
    if args.cache_dir:
        os.environ["CACHE_FILE_DIR"] = args.cache_dir
    run_config = RunConfig.from_env(helper_config)
    updates = {
        "tier": args.tier,
        "output_format": args.format,
        "cache_dir": args.cache_dir,
        "budget_seconds": args.budget,
        "element_cap": args.element_cap,
    }
    updates = {key: value for key, value in updates.items() if value is not None}
    if updates:
        run_config = RunConfig.model_validate({**run_config.model_dump(), **updates})
    if args.long:
        run_config = run_config.with_long_running(True)
    return run_config


##########################################
################ OUTPUT ##################
##########################################

def render(response: CommandResponse, output_format: str) -> str:
    payload = json.loads(json.dumps(response.model_dump(mode="json", by_alias=True), default=str))
    if output_format == "text":
        return yaml.safe_dump(payload, sort_keys=False, allow_unicode=True)
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def emit(response: CommandResponse, output_format: str, out: str | None) -> None:
    text = render(response, output_format)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


##########################################
################# RUN ####################
##########################################

async def run(args: argparse.Namespace) -> int:
    """Execute one parsed command and return its exit code."""
    logging = setup_logging()
    helper_config = HelperConfig(logger=logging)
    output_format = args.format or "json"
    try:
        run_config = build_run_config(helper_config, args)
        output_format = run_config.output_format
        logging.debug("running '%s' at tier %d", args.command, run_config.tier)
        async with lifespan(helper_config, run_config) as state:
            response = await args.handler(args, state)
    except SchubertEngineError as e:
        logging.error("%s: %s", e.type_name, e.message)
        emit(ErrorResponse.from_error(e), output_format, args.out)
        return e.exit_code
    except ValueError as e:
        # invalid environment settings
        logging.error("configuration error: %s", e)
        emit(ErrorResponse(error=ErrorDetail(type="ConfigurationError", message=str(e))), output_format, args.out)
        return UsageError.exit_code
    emit(response, output_format, args.out)
    if not response.succeeded():
        logging.warning("'%s' finished with failures", args.command)
        return 1
    logging.info("'%s' finished", args.command, color="green")
    return 0


def main(argv: list[str] | None = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    return asyncio.run(run(args))


if __name__ == "__main__":
    sys.exit(main())
