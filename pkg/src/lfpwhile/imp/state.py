from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping, Union


def _nat(x, what):
    if type(x) is not int or x < 0:
        raise ValueError(f"{what} must be a natural number, got {x!r}")
    return x


@dataclass(frozen=True)
class MachineState:
    """Two registers and a memory map in which absent addresses read as 0.

    ``memory`` may be given as a mapping or as ``(address, value)`` pairs; it
    is stored as sorted pairs with zero entries dropped, so structurally
    equal states compare and hash equal.
    """

    reg1: int = 0
    reg2: int = 0
    memory: Union[Mapping[int, int], tuple] = ()

    def __post_init__(self):
        _nat(self.reg1, "reg1")
        _nat(self.reg2, "reg2")
        items = self.memory.items() if isinstance(self.memory, dict) or hasattr(self.memory, "items") else self.memory
        norm = {}
        for addr, val in items:
            norm[_nat(addr, "address")] = _nat(val, "memory value")
        object.__setattr__(self, "memory", tuple(sorted((a, v) for a, v in norm.items() if v)))

    @property
    def mem(self) -> dict:
        return dict(self.memory)

    def read(self, addr: int) -> int:
        for a, v in self.memory:
            if a == addr:
                return v
        return 0

    def write(self, addr: int, val: int) -> "MachineState":
        m = self.mem
        m[addr] = val
        return replace(self, memory=m)

    def with_regs(self, reg1=None, reg2=None) -> "MachineState":
        # memory is already normalized; only the new register values need checking
        new = object.__new__(MachineState)
        object.__setattr__(new, "reg1", self.reg1 if reg1 is None else _nat(reg1, "reg1"))
        object.__setattr__(new, "reg2", self.reg2 if reg2 is None else _nat(reg2, "reg2"))
        object.__setattr__(new, "memory", self.memory)
        return new

    def __repr__(self) -> str:
        mem = ", ".join(f"{a}: {v}" for a, v in self.memory)
        return f"MachineState(reg1={self.reg1}, reg2={self.reg2}, memory={{{mem}}})"
