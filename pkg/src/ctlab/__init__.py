"""ctlab: exact computational laboratory for finite groups, ordinary and
modular characters, blocks, and central-type constructions."""

__version__ = "0.1.0"

__all__ = [
    "PermGroup",
    "group_from_generators",
    "GroupHom",
    "Cyclotomic",
    "character_table",
    "brauer_data",
    "gagola_tower",
]


def __getattr__(name):
    # lazy re-exports so `import ctlab` stays light
    if name in ("PermGroup", "group_from_generators"):
        from . import permgroup

        return getattr(permgroup, name)
    if name == "GroupHom":
        from .homs import GroupHom

        return GroupHom
    if name == "Cyclotomic":
        from .cyclo import Cyclotomic

        return Cyclotomic
    if name == "character_table":
        from .chartab import character_table

        return character_table
    if name == "brauer_data":
        from .modrep import brauer_data

        return brauer_data
    if name == "gagola_tower":
        from .gagola import gagola_tower

        return gagola_tower
    raise AttributeError(name)
