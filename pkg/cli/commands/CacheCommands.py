"""cache stats | clear | verify | warm."""

import argparse

from cli.dependencies.services import AppState, get_cache_client, get_schubert_service
from cli.helper.arguments import add_table_arguments
from cli.models.requests import TableRequest, build_request
from cli.models.responses import CacheClearResponse, CacheStatsResponse, CacheVerifyResponse, CacheWarmResponse
from shared.clients.cache.CacheClientInterface import NAMESPACES


def register(subparsers, common: argparse.ArgumentParser) -> None:
    cache = subparsers.add_parser("cache", help="inspect and maintain the table cache")
    actions = cache.add_subparsers(dest="action", required=True)

    parser = actions.add_parser("stats", parents=[common], help="number of entries per namespace")
    parser.set_defaults(handler=cmd_stats)

    parser = actions.add_parser("clear", parents=[common], help="delete cached entries")
    parser.add_argument("--namespace", choices=list(NAMESPACES), help="only this namespace")
    parser.set_defaults(handler=cmd_clear)

    parser = actions.add_parser("verify", parents=[common], help="recompute every entry and compare")
    parser.set_defaults(handler=cmd_verify_cache)

    parser = actions.add_parser("warm", parents=[common], help="build a table and its lift spaces ahead of time")
    add_table_arguments(parser)
    parser.add_argument("--degree", type=int, help="highest lift-space degree (default: the whole table)")
    parser.set_defaults(handler=cmd_warm)


async def cmd_stats(args: argparse.Namespace, state: AppState) -> CacheStatsResponse:
    client = get_cache_client(state)
    return CacheStatsResponse(engine=client.get_engine_name(), entries=await client.do_stats())


async def cmd_clear(args: argparse.Namespace, state: AppState) -> CacheClearResponse:
    client = get_cache_client(state)
    namespaces = [args.namespace] if args.namespace else list(NAMESPACES)
    removed = 0
    for namespace in namespaces:
        removed += await client.do_delete_pattern(f"{namespace}:*")
    state.helper_config.get_logger().info("removed %d cache entries from %s", removed, namespaces)
    return CacheClearResponse(engine=client.get_engine_name(), removed=removed)


async def cmd_verify_cache(args: argparse.Namespace, state: AppState) -> CacheVerifyResponse:
    get_cache_client(state)
    return CacheVerifyResponse(mismatches=await get_schubert_service(state).verify_cache())


async def cmd_warm(args: argparse.Namespace, state: AppState) -> CacheWarmResponse:
    get_cache_client(state)
    request = build_request(TableRequest, group=args.group, parabolic=args.parabolic)
    result = await get_schubert_service(state).warm(request.lie_type, request.K, args.degree)
    return CacheWarmResponse(**result)
