from contextlib import asynccontextmanager
from dataclasses import dataclass
from typing import AsyncGenerator

from services.presentations.PresentationService import PresentationService
from services.schubert.SchubertService import SchubertService
from shared.clients.cache.CacheClientInterface import CacheClientInterface
from shared.clients.cache.CacheClientManager import CacheClientManager
from shared.helper.HelperConfig import HelperConfig
from shared.models.config import RunConfig
from shared.models.errors import UsageError


@dataclass
class AppState:
    """Clients and services of one CLI invocation."""

    helper_config: HelperConfig
    run_config: RunConfig
    cache_client: CacheClientInterface | None
    schubert_service: SchubertService
    presentation_service: PresentationService


@asynccontextmanager
async def lifespan(helper_config: HelperConfig, run_config: RunConfig) -> AsyncGenerator[AppState, None]:
    """Boot the cache client, wire the services and persist new lift spaces on exit.

    A cache that fails to boot is logged and the run continues without it.
    """
    logging = helper_config.get_logger()
    cache_client: CacheClientInterface | None = CacheClientManager(helper_config=helper_config).get_client()
    try:
        await cache_client.boot()
        if not await cache_client.do_healthcheck():
            raise RuntimeError("healthcheck failed")
        logging.debug("cache client %s booted", cache_client.get_engine_name())
    except Exception as e:
        logging.warning("cache client %s unavailable, running without cache: %s", cache_client.get_engine_name(), e)
        await cache_client.close()
        cache_client = None

    schubert_service = SchubertService(helper_config, run_config, cache_client)
    presentation_service = PresentationService(helper_config, run_config, schubert_service)
    state = AppState(
        helper_config=helper_config,
        run_config=run_config,
        cache_client=cache_client,
        schubert_service=schubert_service,
        presentation_service=presentation_service,
    )
    try:
        yield state
        if cache_client is not None:
            stored = await schubert_service.store_all()
            if stored:
                logging.info("stored %d new lift spaces", stored)
    finally:
        if cache_client is not None:
            await cache_client.close()


##########################################
################ GETTER ##################
##########################################

def get_schubert_service(state: AppState) -> SchubertService:
    return state.schubert_service


def get_presentation_service(state: AppState) -> PresentationService:
    return state.presentation_service


def get_cache_client(state: AppState) -> CacheClientInterface:
    """Raises:
        UsageError: the cache client did not boot.
    """
    if state.cache_client is None:
        raise UsageError("no cache is available (check CACHE_ENGINE and its settings)")
    return state.cache_client
