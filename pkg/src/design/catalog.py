"""Built-in plans for 3-level experiments and the subspaces they are expanded along.

P is a 3^4 plan on two blocks of size four; P3, P5 and P6 are derived from
it by deleting or duplicating factors. P26 is a second 3^6 starting plan
whose expansion supplements that of P6.
"""

from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, List, Tuple

from src.algebra.gfvec import Subspace, field_new, parse_subspace
from src.design.expansion import expand
from src.design.plan import Plan, add_factor, concatenate, delete_factor
from src.errors import UnknownNameError

if TYPE_CHECKING:
    from src.analysis.claims import Claim

F3 = field_new(3)

P_ROWS = (
    '0112|0022',
    '0120|2112',
    '0101|1202',
    '0011|2120',
)

P5_ROWS = P_ROWS + ('0011|2120',)

P6_ROWS = P5_ROWS + ('0112|0022',)

P26_ROWS = (
    '0112|0022',
    '0120|2112',
    '0112|0022',
    '0120|2112',
    '0011|2120',
    '0101|1202',
)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    rows: Tuple[str, ...]
    subspace: str

    def plan(self) -> Plan:
        return Plan.from_factor_rows(F3, self.rows)

    def expansion_subspace(self) -> Subspace:
        return parse_subspace(self.subspace, F3, len(self.rows))

    def claims(self) -> List['Claim']:
        """Recorded claims about this plan, its expansion and any union it joins."""
        from src.analysis.claims import claims_for
        return claims_for(self.name)


def _derived_rows(plan: Plan) -> Tuple[str, ...]:
    return tuple(plan.factor_row(i) for i in range(plan.m))


_P = Plan.from_factor_rows(F3, P_ROWS)

CATALOG: Dict[str, CatalogEntry] = {
    'P': CatalogEntry('P', '3^4 starting plan, 2 blocks of 4', P_ROWS, '0102;1010'),
    'P3': CatalogEntry('P3', 'P without factor D', _derived_rows(delete_factor(_P, 3)), '100'),
    'P5': CatalogEntry('P5', 'P with E repeating D', P5_ROWS, '01020;10102'),
    'P6': CatalogEntry('P6', 'P5 with F repeating A', P6_ROWS, '110100;001011'),
    'P26': CatalogEntry('P26', 'second 3^6 starting plan', P26_ROWS, '100120'),
}

SUBSPACE_ALIASES = {'V3': 'P3', 'V4': 'P', 'V5': 'P5', 'V6': 'P6', 'V26': 'P26'}


def catalog_names() -> List[str]:
    return list(CATALOG)


def catalog_entry(name: str) -> CatalogEntry:
    """Plan by its own name (P) or by its expansion subspace (V4)."""
    name = SUBSPACE_ALIASES.get(name, name)
    if name not in CATALOG:
        raise UnknownNameError(f"No catalog plan named {name!r}; known: {', '.join(CATALOG)}")
    return CATALOG[name]


def catalog_plan(name: str) -> Plan:
    return catalog_entry(name).plan()


def catalog_subspace(name: str) -> Subspace:
    """Expansion subspace by its own name (V4) or by the plan it expands (P)."""
    return catalog_entry(name).expansion_subspace()


def derived_plan(name: str) -> Plan:
    """P3, P5 and P6 rebuilt from P by factor deletion or duplication."""
    if name == 'P3':
        return delete_factor(_P, 3)
    if name == 'P5':
        return add_factor(_P, 3)
    if name == 'P6':
        return add_factor(add_factor(_P, 3), 0)
    raise UnknownNameError(f"{name!r} is not derived from P")


def union_plan() -> Plan:
    """Blocks of expand(P6, V6) followed by those of expand(P26, V26)."""
    first = expand(catalog_plan('P6'), catalog_subspace('V6'))
    second = expand(catalog_plan('P26'), catalog_subspace('V26'))
    return concatenate(first, second)
