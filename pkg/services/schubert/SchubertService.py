"""Entry point for Schubert computations on one group.

Builds (or loads from the cache) coset tables, wires calculators for
parabolic quotients to their full-flag calculator and keeps lift spaces in
the cache between runs.
"""

from services.lie_data.RootSystem import root_system_for
from services.lie_data.models import LieType
from services.schubert.SchubertCalculator import (
    LIFT_EMBEDDED,
    SchubertCalculator,
    calibrate_convention,
    lift_kind_for,
)
from services.schubert.models import ExpansionConvention, LiftSpace
from services.weyl.CosetDecomposer import CosetDecomposer
from services.weyl.helper.CosetTableCodec import decode_table, encode_table
from services.weyl.models import CosetTable
from shared.clients.cache.CacheClientInterface import (
    KEY_COSET_TABLE,
    KEY_LIFT_SPACE,
    CacheClientInterface,
    build_key,
)
from shared.helper.HelperConfig import HelperConfig
from shared.models.config import RunConfig
from shared.models.errors import FixtureError, LiftError, SchubertEngineError


class SchubertService:
    def __init__(
        self,
        helper_config: HelperConfig,
        run_config: RunConfig,
        cache_client: CacheClientInterface | None = None,
    ) -> None:
        self.logging = helper_config.get_logger()
        self._helper_config = helper_config
        self._run_config = run_config
        self._cache = cache_client
        self._decomposer = CosetDecomposer(helper_config, run_config)
        self._tables: dict[tuple[str, frozenset[int], int | None], CosetTable] = {}
        self._calculators: dict[tuple[str, frozenset[int]], SchubertCalculator] = {}
        self.convention: ExpansionConvention | None = None

    @property
    def run_config(self) -> RunConfig:
        return self._run_config

    ##########################################
    ################ TABLES ##################
    ##########################################

    def default_max_length(self, lie_type: LieType, K: frozenset[int]) -> int | None:
        key = f"{lie_type.name}/{'T' if len(K) == lie_type.rank else 'P'}"
        return self._run_config.degree_cap(key)

    async def get_table(self, lie_type: LieType | str, K, max_length: int | None = None) -> CosetTable:
        """Coset table of (G, K), from memory, the cache or a fresh decomposition.

        max_length defaults to the degree cap of the table key.
        """
        lie_type = LieType.parse(lie_type) if isinstance(lie_type, str) else lie_type
        K = CosetDecomposer.validate_parabolic(root_system_for(lie_type), K)
        if max_length is None:
            max_length = self.default_max_length(lie_type, K)
        memo_key = (lie_type.name, K, max_length)
        table = self._tables.get(memo_key)
        if table is not None:
            return table
        cache_key = build_key(KEY_COSET_TABLE, lie_type.name, K, "full" if max_length is None else max_length)
        if self._cache is not None:
            payload = await self._cache.do_get_entry(cache_key)
            if payload is not None:
                try:
                    table = decode_table(payload)
                    self.logging.debug("coset table %s loaded from cache", table.label)
                except (FixtureError, KeyError, TypeError) as e:
                    self.logging.warning("discarding cached coset table '%s': %s", cache_key, e)
                    table = None
        if table is None:
            table = self._decomposer.decompose(lie_type, K, max_length=max_length)
            if self._cache is not None:
                await self._cache.do_set_entry(cache_key, encode_table(table))
        self._tables[memo_key] = table
        return table

    ##########################################
    ############## CALCULATORS ###############
    ##########################################

    async def calibrate(self) -> ExpansionConvention:
        """Select the expansion convention once per service (startup self-test).

        Raises:
            VerificationError: the calibration is not unique.
        """
        if self.convention is None:
            table = await self.get_table("F4", {1}, max_length=4)
            self.convention = calibrate_convention(self._helper_config, self._run_config, table)
            self.logging.info("expansion convention: %s", self.convention.name)
        return self.convention

    async def get_calculator(self, lie_type: LieType | str, K, max_length: int | None = None) -> SchubertCalculator:
        lie_type = LieType.parse(lie_type) if isinstance(lie_type, str) else lie_type
        K = CosetDecomposer.validate_parabolic(root_system_for(lie_type), K)
        if max_length is None:
            max_length = self.default_max_length(lie_type, K)
        memo_key = (lie_type.name, K)
        calculator = self._calculators.get(memo_key)
        if calculator is not None and self._serves(calculator, max_length):
            return calculator
        convention = await self.calibrate()
        table = await self.get_table(lie_type, K, max_length=max_length)
        full_flag = None
        if lift_kind_for(lie_type, K) == LIFT_EMBEDDED:
            full_flag = await self.get_calculator(lie_type, range(1, lie_type.rank + 1))
        calculator = SchubertCalculator(self._helper_config, self._run_config, table, convention=convention, full_flag=full_flag)
        await self.load_lift_spaces(calculator)
        self._calculators[memo_key] = calculator
        return calculator

    @staticmethod
    def _serves(calculator: SchubertCalculator, max_length: int | None) -> bool:
        """Whether a memoized calculator reaches max_length; None asks for the whole table."""
        if calculator.table.complete:
            return True
        return max_length is not None and calculator.table.covers(max_length)

    ##########################################
    ############# LIFT SPACES ################
    ##########################################

    def _lift_key(self, calculator: SchubertCalculator, degree: int) -> str:
        return build_key(KEY_LIFT_SPACE, calculator.label, self.convention.name if self.convention else "default", degree)

    async def load_lift_spaces(self, calculator: SchubertCalculator) -> int:
        """Install every cached lift space of the calculator; returns how many were installed."""
        if self._cache is None or calculator.lift_kind == LIFT_EMBEDDED:
            return 0
        prefix = self._lift_key(calculator, "")
        installed = 0
        for key in await self._cache.do_keys(prefix + "*"):
            payload = await self._cache.do_get_entry(key)
            if payload is None:
                continue
            try:
                calculator.install_lift_space(LiftSpace.from_payload(payload))
                installed += 1
            except (LiftError, KeyError, TypeError, ValueError) as e:
                self.logging.warning("discarding cached lift space '%s': %s", key, e)
                await self._cache.do_delete(key)
        if installed:
            self.logging.debug("installed %d cached lift spaces on %s", installed, calculator.label)
        return installed

    async def store_lift_spaces(self, calculator: SchubertCalculator) -> int:
        """Write the lift spaces computed so far to the cache; returns how many are new."""
        if self._cache is None:
            return 0
        stored = 0
        calculators = [calculator] + ([calculator.full_flag] if calculator.full_flag else [])
        for owner in calculators:
            for space in owner.computed_lift_spaces():
                key = self._lift_key(owner, space.degree)
                if await self._cache.do_exists(key):
                    continue
                await self._cache.do_set_entry(key, space.to_payload())
                stored += 1
        return stored

    async def store_all(self) -> int:
        return sum([await self.store_lift_spaces(c) for c in self._calculators.values()])

    ##########################################
    ############## CACHE OPS #################
    ##########################################

    async def warm(self, lie_type: LieType | str, K, degrees: int | None = None) -> dict:
        """Build the table and every lift space up to a degree, then persist them."""
        calculator = await self.get_calculator(lie_type, K)
        top = calculator.table.max_length if degrees is None else min(degrees, calculator.table.max_length)
        owner = calculator.full_flag if calculator.lift_kind == LIFT_EMBEDDED else calculator
        for r in range(top + 1):
            owner.lift_space(r)
        stored = await self.store_lift_spaces(calculator)
        return {"table": calculator.label, "degrees": top, "lift_spaces_stored": stored}

    async def verify_cache(self) -> list[str]:
        """Recompute every cached entry and return the keys whose payload differs."""
        if self._cache is None:
            return []
        mismatches: list[str] = []
        for key in await self._cache.do_keys(f"{KEY_COSET_TABLE}:*"):
            payload = await self._cache.do_get_entry(key)
            if payload is None:
                mismatches.append(key)
                continue
            max_length = key.rsplit(":", 1)[1]
            fresh = self._decomposer.decompose(
                LieType.parse(payload["type"]), payload["K"], max_length=None if max_length == "full" else int(max_length)
            )
            if encode_table(fresh) != payload:
                mismatches.append(key)
        for key in await self._cache.do_keys(f"{KEY_LIFT_SPACE}:*"):
            payload = await self._cache.do_get_entry(key)
            if payload is None:
                mismatches.append(key)
                continue
            try:
                calculator = await self._calculator_for_label(key.split(":")[1])
                fresh = SchubertCalculator(
                    self._helper_config, self._run_config, calculator.table,
                    convention=calculator.convention, full_flag=calculator.full_flag,
                ).lift_space(int(payload["degree"]))
            except SchubertEngineError as e:
                self.logging.warning("cannot recompute '%s': %s", key, e)
                mismatches.append(key)
                continue
            if fresh.to_payload() != payload:
                mismatches.append(key)
        self.logging.info("cache verification: %d mismatching entries", len(mismatches))
        return mismatches

    async def _calculator_for_label(self, label: str) -> SchubertCalculator:
        """Calculator of a table label like "F4/P{1}" or "G2/T"."""
        name, quotient = label.split("/", 1)
        lie_type = LieType.parse(name)
        if quotient == "T":
            K = range(1, lie_type.rank + 1)
        else:
            K = [int(k) for k in quotient[2:-1].split(",")]
        return await self.get_calculator(lie_type, K)
