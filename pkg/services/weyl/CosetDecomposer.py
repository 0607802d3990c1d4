from services.lie_data.RootSystem import RootSystem, root_system_for
from services.lie_data.models import LieType
from services.weyl.WeylGroup import WeylGroup
from services.weyl.models import CosetElement, CosetTable, WeylElement, WeylWord
from shared.helper.HelperConfig import HelperConfig
from shared.helper.HelperMatrix import Matrix, Vector, identity, left_reflect, mat_vec
from shared.logging.logging_setup import table_scope
from shared.models.config import RunConfig
from shared.models.errors import (
    NotInTableError,
    NotMinimalRepresentativeError,
    ResourceCapError,
    TruncatedTableError,
    UsageError,
)


class CosetDecomposer:
    """Enumerates minimal coset representatives W(P_K; G) slice by slice.

    A minimal representative u is identified by u(λ_K) with λ_K = Σ_{k∈K} ω_k,
    whose stabilizer is W(P_K). σ_i u is a longer minimal representative
    iff the i-th coordinate of u(λ_K) is positive, and the smallest left
    descent of u is the first negative coordinate, which yields the
    minimized word together with the parent in the previous slice.
    """

    def __init__(self, helper_config: HelperConfig, run_config: RunConfig | None = None) -> None:
        self.logging = helper_config.get_logger()
        self._run_config = run_config or RunConfig()

    ##########################################
    ################# CORE ###################
    ##########################################

    def decompose(self, lie_type: LieType, K: frozenset[int] | set[int] | list[int], max_length: int | None = None) -> CosetTable:
        """Build the coset table of (G, K).

        Args:
            lie_type: the group type.
            K: non-empty subset of 1..n; all nodes give the full flag G/T.
            max_length: optional bound; slices above it are not built.

        Returns:
            CosetTable: complete when the natural top was reached.

        Raises:
            UsageError: invalid K.
            ResourceCapError: more elements than the configured element cap.
        """
        rs = root_system_for(lie_type)
        K = self.validate_parabolic(rs, K)
        label = f"{lie_type.name}/" + ("T" if len(K) == rs.rank else "P{%s}" % ",".join(str(k) for k in sorted(K)))
        with table_scope(label):
            return self._build(rs, K, max_length)

    def _build(self, rs: RootSystem, K: frozenset[int], max_length: int | None) -> CosetTable:
        cap = self._run_config.element_cap
        rank = rs.rank
        weight = tuple(1 if j + 1 in K else 0 for j in range(rank))
        slices: list[list[CosetElement]] = [
            [CosetElement(length=0, index=1, min_word=(), matrix=identity(rank), orbit=weight, parent=None)]
        ]
        total = 1
        complete = False
        while True:
            current = slices[-1]
            r = len(slices) - 1
            has_ascent = any(x > 0 for element in current for x in element.orbit)
            if not has_ascent:
                complete = True
                break
            if max_length is not None and r >= max_length:
                break
            current_index = {element.orbit: position for position, element in enumerate(current)}
            discovered: dict[Vector, tuple[WeylWord, Matrix, int]] = {}
            for element in current:
                for i in range(1, rank + 1):
                    if element.orbit[i - 1] <= 0:
                        continue
                    image = rs.reflect_weight(i, element.orbit)
                    if image in discovered:
                        continue
                    first = next(j for j, x in enumerate(image) if x < 0) + 1
                    parent_position = current_index[rs.reflect_weight(first, image)]
                    parent = current[parent_position]
                    matrix = left_reflect(parent.matrix, first - 1, rs.cartan.row(first))
                    discovered[image] = ((first,) + parent.min_word, matrix, parent_position)
            ordered = sorted(discovered.items(), key=lambda item: item[1][0])
            total += len(ordered)
            if total > cap:
                raise ResourceCapError(
                    f"{rs.lie_type.name} K={sorted(K)}: more than {cap} coset elements by length {r + 1}; "
                    "pass a max_length or raise SCHUBERT_ELEMENT_CAP"
                )
            slices.append([
                CosetElement(length=r + 1, index=position + 1, min_word=word, matrix=matrix, orbit=orbit, parent=parent)
                for position, (orbit, (word, matrix, parent)) in enumerate(ordered)
            ])
            self.logging.debug("slice %d: %d elements", r + 1, len(ordered))
        self.logging.info(
            "coset table %s K=%s: %d elements up to length %d (%s)",
            rs.lie_type.name, sorted(K), total, len(slices) - 1, "complete" if complete else "truncated",
        )
        return CosetTable(lie_type=rs.lie_type, K=K, slices=slices, complete=complete)

    ##########################################
    ################ LOOKUP ##################
    ##########################################

    @staticmethod
    def index_of(table: CosetTable, value: WeylElement | WeylWord | list[int] | Matrix) -> tuple[int, int]:
        """Return (r, i) of a minimal representative stored in the table.

        Raises:
            NotMinimalRepresentativeError: the element is not minimal in its coset.
            TruncatedTableError: the element is longer than a truncated table.
            NotInTableError: the element is absent.
        """
        group = WeylGroup(root_system_for(table.lie_type))
        matrix = value.matrix if isinstance(value, WeylElement) else group._as_matrix(value)
        if not group.is_minimal_rep(matrix, table.K):
            raise NotMinimalRepresentativeError(
                f"{group.min_word(matrix)} is not a minimal representative for K={sorted(table.K)}"
            )
        found = table.find_orbit(mat_vec(matrix, table.weight_vector()))
        if found is not None:
            return found
        length = group.length(matrix)
        if not table.complete and length > table.max_length:
            raise TruncatedTableError(f"{table.label} is truncated at length {table.max_length}; element has length {length}")
        raise NotInTableError(f"element {group.min_word(matrix)} not found in {table.label}")

    @staticmethod
    def embed(table: CosetTable, full_table: CosetTable) -> dict[tuple[int, int], tuple[int, int]]:
        """Map every (r, i) of a G/P table to its index in the G/T table.

        Raises:
            UsageError: the tables belong to different groups or the second is no full flag.
            TruncatedTableError: the full table is shorter than the G/P table.
        """
        if table.lie_type != full_table.lie_type or not full_table.is_full_flag:
            raise UsageError(f"cannot embed {table.label} into {full_table.label}")
        rho = full_table.weight_vector()
        mapping = {}
        for r, elements in enumerate(table.slices):
            if r > full_table.max_length:
                raise TruncatedTableError(f"{full_table.label} is truncated at length {full_table.max_length}")
            for element in elements:
                found = full_table.find_orbit(mat_vec(element.matrix, rho))
                if found is None or found[0] != r:
                    raise NotInTableError(f"{element.min_word} has no length-preserving image in {full_table.label}")
                mapping[(r, element.index)] = found
        return mapping

    ##########################################
    ############### HELPERS ##################
    ##########################################

    @staticmethod
    def validate_parabolic(rs: RootSystem, K) -> frozenset[int]:
        nodes = frozenset(int(k) for k in K)
        if not nodes:
            raise UsageError("the node subset K must not be empty")
        bad = [k for k in nodes if not 1 <= k <= rs.rank]
        if bad:
            raise UsageError(f"nodes {sorted(bad)} out of range 1..{rs.rank} for {rs.lie_type}")
        return nodes
