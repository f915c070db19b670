import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def g0_of(alg):
    """Structure algebra as prolongation input: its defining matrices."""
    return [(alg.space[k].parity, alg.rep[k]) for k in range(len(alg.space))]
