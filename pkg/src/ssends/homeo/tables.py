"""Cell-permutation tables: random generation and the ``perm-v1`` text form."""
from __future__ import annotations

import json
import random
from collections import defaultdict
from typing import List, Optional, Tuple

from ..endspace.grammar import parse_descriptor, print_descriptor
from .address import Address, AddressModel, Clopen, lex_key, parse_address, render
from .maps import CellPermutation

TABLE_FORMAT = "perm-v1"


def random_pairs(model: AddressModel, rng: random.Random, depth: int,
                 region: Optional[Clopen] = None) -> List[Tuple[Address, Address]]:
    """Shuffle the depth-d cells of ``region`` among cells with the same local descriptor."""
    cells = model.partition(depth, region)
    groups = defaultdict(list)
    for c in cells:
        groups[model.local(c)].append(c)
    pairs = []
    for node in sorted(groups, key=lambda n: lex_key(groups[n][0])):
        src = groups[node]
        dst = list(src)
        rng.shuffle(dst)
        pairs.extend(zip(src, dst))
    return pairs


def random_cell_permutation(model: AddressModel, seed: int, depth: int = 3,
                            region: Optional[Clopen] = None) -> CellPermutation:
    """Seeded random homeomorphism of E; with ``region`` it is the identity off the region."""
    rng = random.Random(seed)
    pairs = random_pairs(model, rng, depth, region)
    if region is not None:
        pairs += [(c, c) for c in model.complement(region)]
    return CellPermutation(model, pairs)


def table_to_json(h: CellPermutation) -> dict:
    return {
        "format": TABLE_FORMAT,
        "descriptor": print_descriptor(h.model.root),
        "pairs": [[render(p), render(q)] for p, q in h.pairs],
    }


def table_from_json(obj: dict, model: Optional[AddressModel] = None) -> CellPermutation:
    if obj.get("format") != TABLE_FORMAT:
        raise ValueError(f"expected format {TABLE_FORMAT!r}")
    if model is None:
        model = AddressModel(parse_descriptor(obj["descriptor"]))
    elif "descriptor" in obj and parse_descriptor(obj["descriptor"]) != model.root:
        raise ValueError("table descriptor differs from the model")
    pairs = [(parse_address(p), parse_address(q)) for p, q in obj["pairs"]]
    for a in (x for pq in pairs for x in pq):
        if not model.is_valid(a):
            raise ValueError(f"invalid address {render(a)!r}")
    return CellPermutation(model, pairs)


def dumps_table(h: CellPermutation) -> str:
    return json.dumps(table_to_json(h), indent=2) + "\n"


def loads_table(text: str, model: Optional[AddressModel] = None) -> CellPermutation:
    return table_from_json(json.loads(text), model)
