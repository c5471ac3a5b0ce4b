from enum import Enum


class ArtifactKind(Enum):
    CLOSURE = "closure"
    LATTICE = "lattice"
    HOMOLOGY = "homology"
