import pytest
from numpy.testing import assert_allclose
from condg.newton.lib import statusmap
from condg.newton.lib.exceptions import PackageError
from condg.newton.lib.problems import default_registry
from condg.newton.lib.problems import initial_point
from condg.newton.lib.solver import SolverConfig
from condg.newton.lib.solver import solve
from condg.newton.lib.tracepackage import TracePackage
from condg.newton.lib.tracepackage import pack_report
from condg.newton.lib.tracepackage import read_packages
from condg.newton.lib.tracepackage import unpack_report


def _report(config=None):
    problem = default_registry().get('Pb1')
    return solve(problem.system, problem.box, initial_point(problem, 2),
                 config)


def test_pack_report():
    report = _report()
    data = pack_report(report, problem='Pb1', gamma=2)
    restored = unpack_report(data)

    assert restored.status == report.status
    assert restored.iterations == report.iterations
    assert restored.final_residual_inf == report.final_residual_inf
    assert restored.wall_time == report.wall_time
    assert_allclose(restored.final_point, report.final_point, rtol=0)
    assert len(restored.trace) == len(report.trace)
    for a, b in zip(restored.trace, report.trace):
        assert a.k == b.k
        assert_allclose(a.x, b.x, rtol=0)
        assert a.residual_inf == b.residual_inf
        assert a.step_norm == b.step_norm
        assert a.condg_inner == b.condg_inner
        assert a.condg_status == b.condg_status
    assert restored.trace[-1].step_norm is None


def test_header():
    report = _report(SolverConfig(max_outer=1))
    data = pack_report(report)
    length, version, status, checkbit = \
        TracePackage.struct_tracepackage.unpack_from(data)
    assert length == len(data) - TracePackage.struct_tracepackage.size
    assert version == 1
    assert status == statusmap.SOLVE_MAX_ITERATIONS
    assert checkbit == status ^ 255


def test_meta():
    data = pack_report(_report(), problem='Pb1', gamma=2.5)
    package, = read_packages(data)
    assert package.meta == {'problem': 'Pb1', 'gamma': 2.5}
    assert package.report().converged


def test_stream():
    first = pack_report(_report(), problem='a')
    second = pack_report(_report(SolverConfig(max_outer=1)), problem='b')
    packages = read_packages(first + second)
    assert [p.meta['problem'] for p in packages] == ['a', 'b']
    assert [p.status for p in packages] == [
        statusmap.SOLVE_CONVERGED, statusmap.SOLVE_MAX_ITERATIONS]
    with pytest.raises(PackageError):
        unpack_report(first + second)


def test_corrupt_packages():
    data = bytearray(pack_report(_report()))
    with pytest.raises(PackageError):
        read_packages(bytes(data[:-1]))
    with pytest.raises(PackageError):
        read_packages(bytes(data[:5]))

    bad_checkbit = bytearray(data)
    bad_checkbit[7] ^= 1
    with pytest.raises(PackageError):
        read_packages(bytes(bad_checkbit))

    bad_version = bytearray(data)
    bad_version[4] = 99
    with pytest.raises(PackageError):
        read_packages(bytes(bad_version))


def test_empty_stream():
    assert read_packages(b'') == []
