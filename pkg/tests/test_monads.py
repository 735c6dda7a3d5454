from lfpwhile.imp import MachineState
from lfpwhile.monads import TT, bind, diverge, get, put, rbind, reader_to_program, ret
from lfpwhile.order import BOTTOM, Defined
from lfpwhile.suites import _bind_dropping_state, check_monad_laws

S0 = MachineState(1, 2, {3: 4})
S1 = MachineState(0, 9, {})
S2 = MachineState(5, 5, {5: 5})


def test_ret():
    assert ret(5)(S0) == 5
    assert reader_to_program(ret(5))(S0) == Defined((5, S0))
    assert ret(TT)(S0) == TT
    assert reader_to_program(ret(TT))(S0) == Defined((TT, S0))


def test_rbind():
    assert rbind(get(), ret)(S0) == S0
    assert rbind(ret(1), lambda x: ret(x + 1))(S0) == 2
    assert rbind(get(), lambda v: ret(v != 0))(3) is True


def test_get():
    assert get()(S0) == S0
    assert reader_to_program(get())(S0) == Defined((S0, S0))
    assert bind(put(S1), lambda _: reader_to_program(get()))(S0) == Defined((S1, S1))


def test_bind():
    assert all(bind(diverge, lambda a: reader_to_program(ret(a)))(s) is BOTTOM for s in (S0, S1))
    m = bind(reader_to_program(ret(1)), lambda x: reader_to_program(ret(x + 1)))
    assert m(S0) == Defined((2, S0))


def test_put():
    assert put(S1)(S0) == Defined((TT, S1))
    assert put(S0)(S0) == Defined((TT, S0))
    assert bind(put(S1), lambda _: put(S2))(S0) == Defined((TT, S2))


def test_monad_laws_hold():
    states = [S0, S1, S2, MachineState()]
    for r in check_monad_laws(states):
        assert r, r.property


def test_state_dropping_bind_breaks_laws():
    failing = {r.property for r in check_monad_laws([S0, S1, S2], _bind_dropping_state) if not r}
    assert "program-right-identity" in failing
