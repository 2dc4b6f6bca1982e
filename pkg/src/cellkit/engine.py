"""Memoized assembly of the computation layers for one weighted system.

Everything downstream of the group itself is expensive enough to build
once and share: the scan, the ring, and the character-side data.  A
System bundles them behind lazy properties, and system_for hands out one
instance per (kind, parameter, weight tuple), so recursive computations
over parabolic subgroups hit the same pipelines over and over without
rebuilding them.
"""

from .cells import CellData
from .chartable import chartable_for
from .coxeter import coxeter_system
from .hecke import HeckeContext
from .jring import JRing
from .wrep import WRepData

_SYSTEMS = {}


class System:
    """One weighted Coxeter system with lazily built layers."""

    def __init__(self, kind, param, weights):
        self.kind = kind
        self.param = int(param)
        self.weights = tuple(int(w) for w in weights)
        if kind == "I2":
            W = coxeter_system(kind, m=self.param)
        elif self.param:
            W = coxeter_system(kind, self.param)
        else:
            W = coxeter_system(kind)
        self.W = W
        self.ctx = HeckeContext(W, self.weights)
        self.key = (self.kind, self.param, self.weights)
        self._cd = None
        self._wrep = None
        self._jring = None

    def prepare(self, jobs=None):
        """Build the scan eagerly, optionally over a process pool."""
        if self._cd is None:
            cd = CellData(self.ctx)
            cd.build_cells()
            if jobs:
                cd.run_scan(jobs=jobs)
            else:
                cd.run_scan()
            self._cd = cd
        return self

    @property
    def cd(self):
        if self._cd is None:
            self.prepare()
        return self._cd

    @property
    def table(self):
        return chartable_for(self.W)

    @property
    def wrep(self):
        if self._wrep is None:
            wr = WRepData(self.ctx, self.cd)
            wr.build()
            self._wrep = wr
        return self._wrep

    @property
    def jring(self):
        if self._jring is None:
            self._jring = JRing(self.cd)
        return self._jring

    def __repr__(self):
        return "<System %s %s weights=%s>" % (self.kind, self.param, self.weights)


def system_for(kind, param, weights):
    """The shared System instance for this kind, parameter, and weights."""
    key = (kind, int(param), tuple(int(w) for w in weights))
    sys = _SYSTEMS.get(key)
    if sys is None:
        sys = System(kind, param, weights)
        _SYSTEMS[key] = sys
    return sys
