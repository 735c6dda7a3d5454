"""The while-language: state, syntax, text format and semantics."""

from .parser import ParseError, format_cond, format_expr, parse, parse_expr, pretty_print, tokenize
from .semantics import (
    check_while_iff_fuel,
    check_while_unfold,
    compile_program,
    cond_reader,
    eval_cond,
    eval_expr,
    execute,
    fuel_program,
    incr_reg2,
    loop_program,
    read_addr,
    read_reg1,
    read_reg2,
    run_fuel,
    run_metered,
    unfold_once,
    while_fuel,
    while_functional,
    write_addr,
    write_reg1,
    write_reg2,
)
from .state import MachineState
from .syntax import (
    Add, Eq, IncrReg2, Lit, Mem, Neq0, Reg1, Reg2, Seq, SetMem, SetReg1, SetReg2, Skip, While,
    seq, writes_memory,
)

__all__ = [
    "ParseError",
    "format_cond",
    "format_expr",
    "parse",
    "parse_expr",
    "pretty_print",
    "tokenize",
    "check_while_iff_fuel",
    "check_while_unfold",
    "compile_program",
    "cond_reader",
    "eval_cond",
    "eval_expr",
    "execute",
    "fuel_program",
    "incr_reg2",
    "loop_program",
    "read_addr",
    "read_reg1",
    "read_reg2",
    "run_fuel",
    "run_metered",
    "unfold_once",
    "while_fuel",
    "while_functional",
    "write_addr",
    "write_reg1",
    "write_reg2",
    "MachineState",
    "Add",
    "Eq",
    "IncrReg2",
    "Lit",
    "Mem",
    "Neq0",
    "Reg1",
    "Reg2",
    "Seq",
    "SetMem",
    "SetReg1",
    "SetReg2",
    "Skip",
    "While",
    "seq",
    "writes_memory",
]
