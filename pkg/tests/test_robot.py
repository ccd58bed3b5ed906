import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import reachbot as rb
from reachbot.robot import MISSION_KEEPOUT_AXES, fibonacci_sphere


class TestMounts:
    def test_single_mount(self):
        mounts = rb.build_mounts(1, body_radius=0.5)
        assert len(mounts) == 1
        assert np.linalg.norm(mounts[0].position) == pytest.approx(0.5)

    def test_two_mounts_nearly_antipodal(self):
        mounts = rb.build_mounts(2)
        cos = float(mounts[0].axis @ mounts[1].axis)
        assert math.degrees(math.acos(np.clip(cos, -1, 1))) >= 170.0

    def test_mission_respects_keepouts(self):
        mounts = rb.build_mounts(8, layout="mission")
        cos_lim = math.cos(math.radians(30.0))
        for m in mounts:
            assert np.all(m.axis @ MISSION_KEEPOUT_AXES.T < cos_lim)

    @pytest.mark.parametrize("layout", ["uniform", "mission"])
    @pytest.mark.parametrize("n", [1, 2, 3, 6, 8, 16, 32])
    def test_mounts_on_sphere_unit_axes(self, n, layout):
        mounts = rb.build_mounts(n, body_radius=0.5, layout=layout)
        assert len(mounts) == n
        for m in mounts:
            assert abs(np.linalg.norm(m.position) - 0.5) < 1e-9
            assert abs(np.linalg.norm(m.axis) - 1.0) < 1e-12

    def test_unknown_layout(self):
        with pytest.raises(ValueError, match="layout"):
            rb.build_mounts(4, layout="spiral")

    def test_lattice_deterministic(self):
        assert np.array_equal(fibonacci_sphere(9), fibonacci_sphere(9))


class TestRobotConfig:
    def test_total_mass_default_8(self):
        assert rb.total_mass(rb.make_robot(8)) == pytest.approx(26.0)

    def test_zero_booms_rejected(self):
        with pytest.raises(ValueError, match="boom count"):
            rb.make_robot(0)

    def test_massless_booms(self):
        cfg = rb.make_robot(5, m_boom=0.0, m_gripper=0.0, m_shoulder=0.0)
        assert rb.total_mass(cfg) == pytest.approx(10.0)

    def test_mass_affine_in_boom_count(self):
        per_boom = 1.0 + 0.5 + 0.5
        masses = [rb.total_mass(rb.make_robot(n)) for n in range(1, 12)]
        diffs = np.diff(masses)
        assert np.allclose(diffs, per_boom)

    def test_length_limits_validated(self):
        with pytest.raises(ValueError, match="L_min < L_max"):
            rb.make_robot(2, L_min=5.0, L_max=2.0)

    def test_mount_count_mismatch(self):
        mounts = rb.build_mounts(3)
        with pytest.raises(ValueError, match="boom_count"):
            rb.RobotConfig(boom_count=4, mounts=tuple(mounts))

    def test_explicit_mounts_must_sit_on_body(self):
        bad = rb.MountSpec(position=np.array([1.0, 0, 0]), axis=np.array([1.0, 0, 0]))
        with pytest.raises(ValueError, match="body sphere"):
            rb.RobotConfig(boom_count=1, mounts=(bad,), body_radius=0.5)


class TestBuckling:
    def test_boom_only(self):
        assert rb.buckling_moment(0.0, 1.0, 3.721, 20.0) == pytest.approx(37.21)

    def test_gripper_and_boom(self):
        assert rb.buckling_moment(0.5, 1.0, 3.721, 20.0) == pytest.approx(74.42, abs=1e-9)

    def test_zero_length(self):
        assert rb.buckling_moment(3.0, 7.0, 9.81, 0.0) == 0.0

    def test_check_satisfied(self):
        rep = rb.check_buckling(100.0, rb.make_robot(8))
        assert rep.satisfied and rep.m_shoulder == pytest.approx(74.42)

    def test_check_strict_at_boundary(self):
        rep = rb.check_buckling(74.42, rb.make_robot(8))
        assert not rep.satisfied

    def test_zero_everything_not_satisfied(self):
        cfg = rb.make_robot(1, m_boom=0.0, m_gripper=0.0)
        assert not rb.check_buckling(0.0, cfg).satisfied

    @given(m_g=st.floats(0, 10), m_b=st.floats(0, 10),
           g=st.floats(0.1, 25), length=st.floats(0, 50))
    def test_linear_in_length(self, m_g, m_b, g, length):
        one = rb.buckling_moment(m_g, m_b, g, length)
        two = rb.buckling_moment(m_g, m_b, g, 2 * length)
        assert two == pytest.approx(2 * one, rel=1e-12, abs=1e-12)

    @given(m_g=st.floats(0, 10), m_b=st.floats(0, 10), g=st.floats(0.1, 25))
    def test_linear_in_gravity(self, m_g, m_b, g):
        base = rb.buckling_moment(m_g, m_b, 1.0, 20.0)
        assert rb.buckling_moment(m_g, m_b, g, 20.0) == pytest.approx(g * base, rel=1e-12, abs=1e-12)
