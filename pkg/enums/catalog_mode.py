from enum import Enum


class CatalogMode(Enum):
    ALL_CYCLIC = "all-cyclic"
    RANDOM = "random-k-generated"
    NAMED_STANDARD = "named-standard"
    UNIPOTENT_SUBGROUPS = "unipotent-subgroups"
