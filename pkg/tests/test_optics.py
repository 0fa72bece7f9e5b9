import math

import pytest
from hypothesis import given, settings, strategies as st

from ramancavity.optics import (DEFECT, HIGH, LOW, AtomParams, InvalidArgument, Layer,
                                LayerStack, PumpSpec, build_canonical_stack)

from conftest import LAMBDA_PROBE


def test_canonical_stack_geometry():
    stack = build_canonical_stack(2.35, 1.45, 10, LAMBDA_PROBE, 1)
    assert len(stack) == 43
    kinds = [layer.kind for layer in stack.layers]
    assert kinds[:21] == [HIGH, LOW] * 10 + [HIGH]
    assert kinds[21] == DEFECT
    assert kinds[22:] == [HIGH] + [LOW, HIGH] * 10
    assert stack.layers[0].thickness == LAMBDA_PROBE / (4 * 2.35)
    assert stack.layers[1].thickness == LAMBDA_PROBE / (4 * 1.45)
    assert stack.layers[21].thickness == LAMBDA_PROBE / 2


def test_zero_periods_gives_hdh():
    stack = build_canonical_stack(2.35, 1.45, 0, LAMBDA_PROBE, 1)
    assert [layer.kind for layer in stack.layers] == [HIGH, DEFECT, HIGH]


def test_defect_slices_partition_half_wave():
    stack = build_canonical_stack(2.35, 1.45, 10, LAMBDA_PROBE, 200)
    assert len(stack) == 242
    start, stop = stack.defect_range()
    assert stop - start == 200
    total = math.fsum(layer.thickness for layer in stack.layers[start:stop])
    assert total == pytest.approx(LAMBDA_PROBE / 2, rel=1e-15)


@pytest.mark.parametrize("kwargs", [
    dict(probe_wavelength=0.0), dict(probe_wavelength=-1e-6), dict(m=-1),
    dict(defect_slice_count=0),
])
def test_canonical_stack_rejects_bad_arguments(kwargs):
    args = dict(n_h=2.35, n_l=1.45, m=10, probe_wavelength=LAMBDA_PROBE, defect_slice_count=1)
    args.update(kwargs)
    with pytest.raises(InvalidArgument):
        build_canonical_stack(**args)


@given(m=st.integers(0, 15), slices=st.integers(1, 50),
       n_h=st.floats(1.5, 4.0), n_l=st.floats(1.01, 1.5))
@settings(max_examples=60, deadline=None)
def test_quarter_wave_optical_paths_and_mirror_symmetry(m, slices, n_h, n_l):
    stack = build_canonical_stack(n_h, n_l, m, LAMBDA_PROBE, slices)
    for layer in stack.layers:
        if layer.kind != DEFECT:
            assert layer.index.real * layer.thickness == pytest.approx(LAMBDA_PROBE / 4, rel=1e-15)
    pairs = [(layer.thickness, layer.index) for layer in stack.layers]
    assert pairs == pairs[::-1]


def test_layer_invariants():
    with pytest.raises(InvalidArgument):
        Layer(HIGH, 0.0, 2.35)
    with pytest.raises(InvalidArgument):
        Layer(HIGH, 1e-7, 2.35 - 0.01j)
    with pytest.raises(InvalidArgument):
        Layer(DEFECT, 1e-7, -1.0)
    assert Layer(DEFECT, 1e-7, 1 - 1e-6j).index.imag < 0


def test_with_defect_indices_checks_length():
    stack = build_canonical_stack(2.35, 1.45, 2, LAMBDA_PROBE, 4)
    with pytest.raises(InvalidArgument):
        stack.with_defect_indices([1.0] * 3)
    new = stack.with_defect_indices([1 - 1e-6j] * 4)
    assert [layer.index for layer in new.layers[5:9]] == [1 - 1e-6j] * 4
    assert isinstance(new, LayerStack)


def test_atom_and_pump_invariants(caplog):
    with pytest.raises(InvalidArgument):
        AtomParams(3e15, 1e10, gamma10=1e8, gamma20=2e8, coupling_k=1.0)
    with pytest.raises(InvalidArgument):
        AtomParams(3e15, 1e15, gamma10=1e8, gamma20=1e7, coupling_k=1.0)
    atom = AtomParams(3e15, 1e10, gamma10=1e8, gamma20=1e7, coupling_k=1.0)
    assert PumpSpec(1e6, 30e8).check_validity(atom)
    with caplog.at_level("WARNING"):
        assert not PumpSpec(1e6, 5e8).check_validity(atom)
    assert "below 10 gamma10" in caplog.text
