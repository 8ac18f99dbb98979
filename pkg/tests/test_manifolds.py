"""Surgery models: invariants, schedules, verification gates, transforms."""

from dataclasses import replace

import pytest

from exotic4 import (
    COMPLEMENT_TRIVIAL,
    PI1_TRIVIAL,
    AbelianInvariants,
    CertificateError,
    CharNumbers,
    FamilyParams,
    ParameterError,
    ScheduleMismatchError,
    SurgeryMove,
    abelian_invariants,
    apply_log_transform,
    apply_schedule,
    build_Mkn,
    build_Xk,
    build_Zk,
    claimed_invariants,
    classify_form,
    complement_presentation,
    gen,
    schedule_Mkn,
    verify_pi1,
)


def certified(model):
    """Stamp both certificates without running enumeration (unit-test rig;
    the real certificates are earned in the acceptance suite)."""
    return replace(
        model, certifications=frozenset({PI1_TRIVIAL, COMPLEMENT_TRIVIAL})
    )


# ---------------------------------------------------------------- parameters


def test_family_params_validation_names_the_constraint():
    with pytest.raises(ParameterError, match="k >= 1"):
        FamilyParams(0, 1)
    with pytest.raises(ParameterError, match="n >= 1"):
        FamilyParams(2, 0)
    with pytest.raises(ParameterError, match="p >= 0"):
        FamilyParams(2, 1, -1)
    with pytest.raises(ParameterError, match="r >= 0"):
        FamilyParams(2, 1, 1, -2)
    with pytest.raises(ParameterError, match="m >= 1"):
        FamilyParams(2, 1, 1, 1, 0)


def test_char_numbers_enforce_their_relations():
    CharNumbers(8, 0, 0, 6, 3)  # consistent
    with pytest.raises(ValueError):
        CharNumbers(8, 0, 0, 6, 4)  # b2plus != (b2 + sigma) / 2
    with pytest.raises(ValueError):
        CharNumbers(8, 0, 1, 6, 3)  # e != 2 - 2 b1 + b2
    c = CharNumbers.from_e_sigma_b1(8, 0, 0)
    assert (c.b2, c.b2plus) == (6, 3)


# ---------------------------------------------------------------- base model


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_base_model_characteristic_numbers(k):
    m = build_Xk(k)
    assert (m.char.e, m.char.sigma, m.char.b1, m.char.b2) == (
        4 * k, 0, 2 * k + 4, 8 * k + 6,
    )
    assert m.char.b2plus == 4 * k + 3
    assert str(classify_form(m.form)) == f"{4 * k + 3}H"
    assert len(m.form_basis) == 4 * k + 3
    assert len(m.presentation.generators) == 2 * k + 6
    assert m.symplectic_flag is True


def test_base_model_basis_labels_pair_dual_classes():
    m = build_Xk(2)
    assert m.form_basis[0] == ("[a1 x c1]", "-[b1 x d1]")
    assert m.form_basis[-1] == ("[Sigma_2 x pt]", "[pt x Sigma_5]")
    flat = [label for pair in m.form_basis for label in pair]
    assert len(flat) == len(set(flat)) == m.char.b2


def test_base_model_abelianization_is_free_of_full_rank():
    for k in (1, 2, 3):
        m = build_Xk(k)
        assert m.h1 == AbelianInvariants((), 2 * k + 4)


def test_base_model_rejects_bad_k():
    with pytest.raises(ParameterError):
        build_Xk(0)


# ---------------------------------------------------------------- schedules


def test_schedule_has_one_move_per_surgery_torus():
    for k in (1, 2, 3, 4):
        sched = schedule_Mkn(FamilyParams(k, 1))
        assert len(sched) == 2 * k + 4
        assert sum(1 for mv in sched if mv.coefficient == "-n") == 1
        labels = [mv.torus_label for mv in sched]
        assert len(labels) == len(set(labels))
        for mv in sched:
            assert len(mv.removed_relations) == len(mv.added_relations) == 1


def test_schedule_coefficients_for_genus_two():
    sched = schedule_Mkn(FamilyParams(2, 1))
    assert [mv.coefficient for mv in sched] == [
        "-1", "-1", "-1", "-n", "-1/p", "-1/r", "-1", "-1",
    ]
    assert [mv.surgery_curve for mv in sched] == [
        "a1", "b1", "c1", "d1", "c2", "d2", "d3", "ct",
    ]


def test_small_genus_schedule_skips_order_moves():
    sched = schedule_Mkn(FamilyParams(1, 1))
    assert len(sched) == 6
    assert all(mv.coefficient in ("-1", "-n") for mv in sched)


def test_move_symplectic_flags_follow_the_coefficients():
    always = schedule_Mkn(FamilyParams(2, 1, 1, 1))
    assert all(mv.symplectic for mv in always)
    twisted = schedule_Mkn(FamilyParams(2, 2, 0, 1))
    flags = [mv.symplectic for mv in twisted]
    assert flags == [True, True, True, False, False, True, True, True]


def test_apply_schedule_swaps_relations_in_place():
    base = build_Xk(2)
    model = build_Mkn(FamilyParams(2, 1))
    assert len(model.presentation.relators) == len(base.presentation.relators)
    assert model.presentation.generators == base.presentation.generators
    # every pre-surgery target is gone, every surgered relation is present
    for mv in schedule_Mkn(FamilyParams(2, 1)):
        for rel in mv.removed_relations:
            assert rel not in model.presentation.relators
        for rel in mv.added_relations:
            assert rel in model.presentation.relators


def test_apply_schedule_then_inverse_restores_homology():
    base = build_Xk(2)
    sched = schedule_Mkn(FamilyParams(2, 3, 2, 1))
    model = apply_schedule(base, sched, params=FamilyParams(2, 3, 2, 1))
    inverse = [
        SurgeryMove(
            torus_label=mv.torus_label,
            surgery_curve=mv.surgery_curve,
            coefficient="undo",
            removed_relations=mv.added_relations,
            added_relations=mv.removed_relations,
            symplectic=None,
        )
        for mv in reversed(sched)
    ]
    restored = apply_schedule(model, inverse)
    assert abelian_invariants(restored.presentation) == base.h1
    assert set(restored.presentation.relators) == set(base.presentation.relators)


def test_empty_schedule_is_a_noop_on_the_presentation():
    base = build_Xk(2)
    same = apply_schedule(base, ())
    assert same.presentation == base.presentation
    assert same.char == base.char
    assert same.name.startswith("X_2")


def test_schedule_mismatch_is_reported_with_the_move():
    base = build_Xk(2)
    bogus = SurgeryMove(
        torus_label="phantom",
        surgery_curve="a1",
        coefficient="-1",
        removed_relations=(gen("a1") ** 7,),
        added_relations=(gen("a1"),),
        symplectic=None,
    )
    with pytest.raises(ScheduleMismatchError, match="phantom"):
        apply_schedule(base, (bogus,))


def test_surgery_preserves_euler_number_and_signature():
    for params in (
        FamilyParams(2, 1), FamilyParams(2, 3, 2, 3),
        FamilyParams(3, 2), FamilyParams(1, 2),
    ):
        base = build_Xk(params.k)
        model = build_Mkn(params)
        assert model.char.e == base.char.e
        assert model.char.sigma == base.char.sigma == 0
        assert model.char.b1 == model.h1.free_rank  # consistency by construction


# ---------------------------------------------------------------- homology law


@pytest.mark.parametrize("p,r", [(1, 1), (2, 3), (0, 1), (4, 4)])
def test_first_homology_follows_the_order_parameters(p, r):
    model = build_Mkn(FamilyParams(2, 1, p, r))
    assert model.h1 == claimed_invariants(p, r)


def test_claimed_invariants_normalization():
    assert str(claimed_invariants(1, 1)) == "0"
    assert str(claimed_invariants(2, 3)) == "Z/6"
    assert str(claimed_invariants(0, 1)) == "Z"
    assert str(claimed_invariants(4, 4)) == "Z/4 + Z/4"
    assert str(claimed_invariants(0, 0)) == "Z + Z"
    assert str(claimed_invariants(2, 4)) == "Z/2 + Z/4"


def test_trivial_homology_attaches_basis_and_form():
    model = build_Mkn(FamilyParams(2, 1))
    assert model.h1.trivial
    assert model.char.b2 == 6 and model.char.b2plus == 3
    assert len(model.form_basis) == 3
    assert str(classify_form(model.form)) == "3H"
    assert model.sw_profile == (2, 1, 1)
    # nontrivial homology must not carry a simply connected basis
    twisted = build_Mkn(FamilyParams(2, 1, 2, 3))
    assert twisted.form is None and twisted.form_basis == ()
    assert twisted.sw_profile is None


def test_intermediate_model_bookkeeping():
    for k in (2, 3):
        z = build_Zk(k)
        assert z.char.b1 == 1
        assert z.char.b2 == 4 * k
        assert z.char.b2plus == 2 * k
        assert z.h1.free_rank == 1


def test_small_genus_models_carry_an_unverified_note():
    model = build_Mkn(FamilyParams(1, 2))
    assert any("not certified" in note for note in model.notes)
    with pytest.raises(ParameterError):
        verify_pi1(model)


def test_symplectic_flag_tracks_the_twist_parameter():
    assert build_Mkn(FamilyParams(2, 1)).symplectic_flag is True
    assert build_Mkn(FamilyParams(2, 1, 2, 3)).symplectic_flag is True
    assert build_Mkn(FamilyParams(2, 2)).symplectic_flag is False
    # a custom schedule with no family parameters has unknown status
    base = build_Xk(2)
    mv = schedule_Mkn(FamilyParams(2, 2))[3]
    assert apply_schedule(base, (mv,)).symplectic_flag is None


# ---------------------------------------------------------------- verification


def test_pi1_check_without_enumeration_for_infinite_claims():
    model = build_Mkn(FamilyParams(2, 1, 0, 1))
    verdict = verify_pi1(model)
    assert verdict.passed
    assert verdict.enumeration is None and verdict.expected_index is None
    assert str(verdict.claimed) == "Z"
    assert not verdict.certifies_trivial


def test_pi1_needs_family_parameters():
    base = build_Xk(2)
    with pytest.raises(ParameterError):
        verify_pi1(base)


def test_complement_presentation_removes_one_commutator():
    model = build_Mkn(FamilyParams(2, 1))
    comp = complement_presentation(model)
    assert len(comp.relators) == len(model.presentation.relators) - 1
    from exotic4 import commutator

    assert commutator(gen("b1"), gen("d2")) not in comp.relators


def test_complement_presentation_gates_on_parameters():
    with pytest.raises(ParameterError, match="p = r = 1"):
        complement_presentation(build_Mkn(FamilyParams(2, 1, 2, 1)))
    with pytest.raises(ParameterError, match="k >= 2"):
        complement_presentation(build_Mkn(FamilyParams(1, 1)))


# ---------------------------------------------------------------- transform


def test_log_transform_requires_both_certificates():
    model = build_Mkn(FamilyParams(2, 1))
    with pytest.raises(CertificateError) as err:
        apply_log_transform(model, 2)
    assert PI1_TRIVIAL in str(err.value)
    assert COMPLEMENT_TRIVIAL in str(err.value)
    half = replace(model, certifications=frozenset({PI1_TRIVIAL}))
    with pytest.raises(CertificateError) as err2:
        apply_log_transform(half, 2)
    assert COMPLEMENT_TRIVIAL in str(err2.value)


def test_log_transform_multiplicity_one_is_identity():
    model = certified(build_Mkn(FamilyParams(2, 1)))
    assert apply_log_transform(model, 1) is model


def test_log_transform_keeps_numbers_and_flips_parity():
    model = certified(build_Mkn(FamilyParams(2, 1)))
    even = apply_log_transform(model, 2)
    assert even.params == FamilyParams(2, 1, 1, 1, 2)
    assert even.char == model.char  # e, sigma, b1, b2 all preserved
    assert even.h1.trivial
    assert even.presentation.generators == ()
    assert str(classify_form(even.form)) == "3<1> + 3<-1>"
    assert even.sw_profile == (2, 1, 2)
    assert even.certified(PI1_TRIVIAL)
    assert "m=2" in even.name

    odd = apply_log_transform(model, 3)
    assert str(classify_form(odd.form)) == "3H"
    assert odd.sw_profile == (2, 1, 3)


def test_log_transform_symplectic_flag_follows_the_twist():
    n1 = certified(build_Mkn(FamilyParams(2, 1)))
    n2 = certified(build_Mkn(FamilyParams(2, 2)))
    assert apply_log_transform(n1, 2).symplectic_flag is True
    assert apply_log_transform(n2, 2).symplectic_flag is False


def test_log_transform_validates_multiplicity():
    model = certified(build_Mkn(FamilyParams(2, 1)))
    with pytest.raises(ParameterError):
        apply_log_transform(model, 0)
