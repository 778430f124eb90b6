"""The monopole construction: group element, coordinates, projectors, forms."""

import json
from fractions import Fraction
from importlib import resources

import pytest

from supersphere.forms import SuperForm, d
from supersphere.matrices import BlockShape, EVEN_FIRST, SuperMatrix, sdet
from supersphere.monopole import (MINUS, PLUS, CoordinateEmissionError,
                                  base_coordinates, base_space, check_equivariance,
                                  chern_closed_form, chern_form, chern_form_body,
                                  chern_form_canonical, chern_intermediate_form,
                                  connection_closed_form, connection_form,
                                  coordinate_chern_form, coordinate_chern_report,
                                  coordinate_images, curvature, element_to_base,
                                  extended_space, group_element,
                                  group_identities_report, group_space,
                                  inversion_identities, nilpotent_exp_check,
                                  nilpotent_exp_report, osp_fixtures, outer_with_kernel,
                                  pairing, projector, projector_to_base, psi,
                                  section_to_equivariant, sphere_relation_check,
                                  supertrace_p_dp_dp, u1_embedding, u1_images)
from supersphere.scalars import Scalar, rat


@pytest.fixture(scope="module")
def g():
    return group_space()


def _fixture(name):
    with resources.files("supersphere.fixtures").joinpath(name).open() as fh:
        return json.load(fh)


# -- group element -------------------------------------------------------------

def test_group_element_unitary(g):
    s = group_element(g)
    ident = SuperMatrix.identity(s.shape, g.table)
    assert (s @ s.dagger()).reduce(g.rewrites) == ident
    assert (s.dagger() @ s).reduce(g.rewrites) == ident


def test_group_element_sdet_one(g):
    assert sdet(group_element(g), g.rewrites) == g.table.one()


def test_group_element_at_unit_parameters(g):
    s = group_element(g).substitute({"a": g.table.one(), "a*": g.table.one(),
                                     "b": g.table.zero(), "b*": g.table.zero(),
                                     "eta": g.table.zero(), "eta*": g.table.zero()})
    assert s == SuperMatrix.identity(BlockShape(1, 2, EVEN_FIRST), g.table)


def test_group_identities_report(g):
    assert all(item.holds for item in group_identities_report(g))


# -- nilpotent exponentials ------------------------------------------------------

def test_exponential_series_terminates_at_order_two(g):
    rep = nilpotent_exp_report(g)
    assert rep.terminates_at_order_two


def test_exponential_product_vs_sum(g):
    """The naive product = sum equality fails by an exact commutator term.

    The documented discrepancy is (1/2)[eta R+, eta* R-] =
    (1/8) eta eta* diag(0, 1, -1); the corrected factorization holds and the
    sum form is the odd factor of the parametrized group element.
    """
    rep = nilpotent_exp_report(g)
    assert nilpotent_exp_check(g) is False
    assert rep.product_equals_sum is False
    fix = osp_fixtures(g)
    bch_term = fix["A0"].scale(Scalar.of(0, Fraction(-1, 4)) * (g.eta * g.etad))
    assert rep.difference == bch_term
    assert rep.bch_equal
    assert rep.sum_matches_group_factor


# -- coordinates -------------------------------------------------------------------

def test_coordinates_match_displayed_formulas(g):
    c = base_coordinates(g)
    one = g.table.one()
    fer = one - rat(1, 4) * g.eta * g.etad
    i = Scalar.i()
    R = g.rewrites
    assert R.reduce(c.x0 - (g.a * g.ad - g.b * g.bd) * fer).is_zero
    assert R.reduce(c.x0 - (2 * (g.a * g.ad) - one) * fer).is_zero
    assert R.reduce(c.x1 - (g.a * g.bd + g.b * g.ad) * fer).is_zero
    assert R.reduce(c.x2 - i * (g.a * g.bd - g.b * g.ad) * fer).is_zero
    assert R.reduce(c.xim - rat(-1, 2) * (g.a * g.etad + g.eta * g.bd)).is_zero
    assert R.reduce(c.xip - rat(1, 2) * (g.eta * g.ad - g.b * g.etad)).is_zero


def test_coordinates_reality_properties(g):
    c = base_coordinates(g)
    R = g.rewrites
    for x in (c.x0, c.x1, c.x2):
        assert R.reduce(x.diamond() - x).is_zero
        assert x.parity() == "even"
    assert R.reduce(c.xim.diamond() - c.xip).is_zero
    assert R.reduce(c.xip.diamond() + c.xim).is_zero
    assert c.xim.parity() == "odd" and c.xip.parity() == "odd"
    # fermionic coordinates have no body
    assert c.xim.body().is_zero and c.xip.body().is_zero


def test_sphere_relation(g):
    assert sphere_relation_check(g)


def test_quarter_eta_identity(g):
    c = base_coordinates(g)
    target = rat(1, 4) * g.eta * g.etad - c.xim * c.xip
    assert g.rewrites.reduce(target).is_zero


def test_inversion_identities_hold(g):
    checks = inversion_identities(g)
    assert len(checks) == 6
    for item in checks:
        assert item.holds, item.name


def test_inversion_identities_degenerate_without_eta(g):
    """With eta = 0 the fermionic identities collapse to 0 = 0."""
    kill = {"eta": g.table.zero(), "eta*": g.table.zero()}
    c = base_coordinates(g)
    for expr in (c.xim, c.xip):
        assert expr.substitute(kill, g.table).is_zero


# -- psi vectors ----------------------------------------------------------------------

def test_psi_minus_one_components(g):
    v = psi(MINUS, 1, g)
    one = g.table.one()
    e8 = one - rat(1, 8) * g.eta * g.etad
    assert v.components == [rat(1, 2) * g.eta, e8 * g.a, e8 * g.b]


def test_psi_minus_two_has_sqrt2(g):
    v = psi(MINUS, 2, g)
    e8 = g.table.one() - rat(1, 8) * g.eta * g.etad
    assert v.components[3] == g.table.scalar(Scalar.sqrt_int(2)) * e8 * g.a * g.b
    assert v.components[1] == rat(1, 2) * g.eta * g.b


def test_psi_normalized(g):
    one = g.table.one()
    for n in (1, 2, 3):
        for sign in (MINUS, PLUS):
            v = psi(sign, n, g)
            assert g.rewrites.reduce(pairing(v, v) - one).is_zero, (sign, n)


def test_psi_requires_positive_n(g):
    with pytest.raises(ValueError):
        psi(MINUS, 0, g)


def test_psi_families_related_by_diamond(g):
    for n in (1, 2, 3):
        vm, vp = psi(MINUS, n, g), psi(PLUS, n, g)
        assert [c.diamond() for c in vm.components] == vp.components


def test_pairing_zero_and_shape_mismatch(g):
    v = psi(MINUS, 1, g)
    zero = [g.table.zero()] * 3
    assert pairing(zero, v.components).is_zero
    with pytest.raises(ValueError):
        pairing(v.components, v.components[:2])


# -- projectors --------------------------------------------------------------------------

def test_projector_identities(g):
    one = g.table.one()
    for n in (1, 2, 3):
        for sign in (MINUS, PLUS):
            mat = projector(psi(sign, n, g)).matrix
            assert (mat @ mat).reduce(g.rewrites) == mat, ("p^2", sign, n)
            assert mat.dagger().reduce(g.rewrites) == mat, ("dagger", sign, n)
            assert g.rewrites.reduce(mat.supertrace()) == one, ("Str", sign, n)
            assert mat.validate_parity()


def test_supertrace_charge_three(g):
    assert g.rewrites.reduce(projector(psi(MINUS, 3, g)).matrix.supertrace()) \
        == g.table.one()


def test_projector_diagonal_is_radical_free(g):
    """The square-root binomial factors always cancel on the diagonal."""
    for n in (2, 3):
        mat = projector(psi(MINUS, n, g)).matrix
        for k in range(2 * n + 1):
            for coeff in mat.entries[k][k].terms.values():
                assert all(rad == 1 for rad, _, _, _ in coeff.components())


def test_projector_supertranspose_relation(g):
    for n in (1, 2, 3):
        pm = projector(psi(MINUS, n, g)).matrix
        pp = projector(psi(PLUS, n, g)).matrix
        assert pm.supertranspose() == pp


def test_projector_charge_labels(g):
    assert projector(psi(MINUS, 2, g)).charge == 2
    assert projector(psi(PLUS, 2, g)).charge == -2


def test_golden_projectors_via_coordinate_emission(g):
    base = base_space()
    for sign, fname in ((MINUS, "p_minus_1.json"), (PLUS, "p_plus_1.json")):
        want = SuperMatrix.from_obj(base.table, _fixture(fname)["matrix"])
        got = projector_to_base(projector(psi(sign, 1, g)))
        assert got == want, sign


def test_golden_projector_via_pullback_substitution(g):
    """Substituting the coordinate expressions into the golden entries
    reproduces the group-space projector exactly."""
    base = base_space()
    images = coordinate_images(g)
    for sign, fname in ((MINUS, "p_minus_1.json"), (PLUS, "p_plus_1.json")):
        golden = SuperMatrix.from_obj(base.table, _fixture(fname)["matrix"])
        proj = projector(psi(sign, 1, g)).matrix
        for i in range(3):
            for j in range(3):
                pulled = golden.entries[i][j].substitute(images, g.table)
                assert g.rewrites.reduce(pulled - proj.entries[i][j]).is_zero, (sign, i, j)


def test_projector_sign_placement_uniquely_fixed(g):
    """Brute-force elimination over the four Koszul sign placements.

    Exactly one placement per charge family reproduces the displayed
    matrices: the row parity for the minus family and the column parity for
    the plus family (the latter equals the supertranspose of the former).
    """
    base = base_space()
    images = coordinate_images(g)

    def build(vec, placement):
        n = vec.n
        dia = [c.diamond() for c in vec.components]
        rows = []
        for alpha in range(2 * n + 1):
            row = []
            for beta in range(2 * n + 1):
                entry = vec.components[alpha] * dia[beta]
                sign = 1
                if placement in ("row", "both") and vec.block_parity(alpha):
                    sign = -sign
                if placement in ("col", "both") and vec.block_parity(beta):
                    sign = -sign
                row.append(g.rewrites.reduce(entry if sign > 0 else -entry))
            rows.append(row)
        return rows

    for sign, fname, expected in ((MINUS, "p_minus_1.json", "row"),
                                  (PLUS, "p_plus_1.json", "col")):
        golden = SuperMatrix.from_obj(base.table, _fixture(fname)["matrix"])
        target = [[g.rewrites.reduce(golden.entries[i][j].substitute(images, g.table))
                   for j in range(3)] for i in range(3)]
        matches = []
        for placement in ("none", "row", "col", "both"):
            rows = build(psi(sign, 1, g), placement)
            if all(rows[i][j] == target[i][j] for i in range(3) for j in range(3)):
                matches.append(placement)
        assert matches == [expected], (sign, matches)


# -- equivariance ----------------------------------------------------------------------

def test_equivariance_reports(g):
    for n in (1, 2, 3):
        for sign in (MINUS, PLUS):
            rep = check_equivariance(sign, n)
            assert rep.psi_covariant and rep.projector_invariant, (sign, n)


def test_psi_covariance_exact_power(g):
    ext = extended_space()
    images = u1_images(ext)
    v = psi(MINUS, 1, g)
    w = ext.table.gen("w")
    for comp in v.components:
        moved = comp.substitute(images, ext.table)
        assert ext.rewrites.reduce(moved - w * comp.lift(ext.table)).is_zero


def test_unit_circle_substitution_is_identity(g):
    ext = extended_space()
    images = {name: img.substitute({"w": ext.table.one(), "w*": ext.table.one()},
                                   ext.table)
              for name, img in u1_images(ext).items()}
    x = (g.a * g.etad + g.b * g.bd).lift(ext.table)
    assert x.substitute(images, ext.table) == x


def test_circle_action_is_right_multiplication(g):
    """s(aw, bw, eta w) equals s(a,b,eta) diag(1, w, w*) mod w w* = 1."""
    ext = extended_space()
    s = group_element(g).substitute({}, ext.table)
    moved = s.substitute(u1_images(ext), ext.table)
    prod = s @ u1_embedding(ext)
    diff = moved - prod
    assert all(ext.rewrites.reduce(e).is_zero for row in diff.entries for e in row)


# -- sections and equivariant maps --------------------------------------------------------

def test_section_to_equivariant_zero(g):
    assert section_to_equivariant(MINUS, 2, [g.table.zero()] * 5, g).is_zero


def test_section_to_equivariant_unit_slots(g):
    n, k = 3, 1
    f = [g.table.zero()] * (2 * n + 1)
    f[n + k] = g.table.one()           # unit vector in slot k of the even block
    got = section_to_equivariant(MINUS, n, f, g)
    e8 = g.table.one() - rat(1, 8) * g.eta * g.etad
    import math
    want = g.table.scalar(Scalar.sqrt_int(math.comb(n, k))) * e8 * \
        g.a ** (n - k) * g.b ** k
    assert got == want


def test_section_to_equivariant_general_shape(g):
    n = 2
    f = [g.table.scalar(j + 1) for j in range(2 * n + 1)]
    phi = section_to_equivariant(MINUS, n, f, g)
    v = psi(MINUS, n, g)
    want = sum((comp * fj for comp, fj in zip(v.components, f)), g.table.zero())
    assert phi == want
    with pytest.raises(ValueError):
        section_to_equivariant(MINUS, n, f[:-1], g)


# -- connection forms -----------------------------------------------------------------------

def test_connection_closed_form(g):
    for n in (1, 2, 3, 4):
        a_form = connection_form(psi(MINUS, n, g), space=g)
        closed = g.ideal.reduce(connection_closed_form(MINUS, n, g))
        assert a_form == closed, n


def test_connection_antihermitian_and_sign_flip(g):
    for n in (1, 2, 3):
        am = connection_form(psi(MINUS, n, g), space=g)
        ap = connection_form(psi(PLUS, n, g), space=g)
        assert g.ideal.reduce(am.diamond() + am).is_zero
        assert g.ideal.reduce(ap + am).is_zero


def test_connection_matches_golden_fixture(g):
    want = SuperForm.from_obj(g.table, _fixture("a_minus_1.json")["form"])
    assert connection_form(psi(MINUS, 1, g), space=g) == want


# -- curvature and Chern forms -----------------------------------------------------------------

def test_curvature_entries_are_even_two_forms(g):
    """Form degree 2 throughout, Grassmann-even in the block sense: the
    parity of each entry matches the row/column type parities."""
    proj = projector(psi(MINUS, 1, g))
    cur = curvature(proj)
    shape = proj.matrix.shape
    for i, row in enumerate(cur.entries):
        for j, entry in enumerate(row):
            if entry.is_zero:
                continue
            assert entry.form_degrees() == {2}
            want = (shape.type_parity(i) + shape.type_parity(j)) % 2
            assert entry.grassmann_parity() == want


def test_curvature_equals_outer_kernel_up_to_convention_sign(g):
    """p (dp)^2 = -|psi> <d psi|d psi> <psi| under the conventions used here.

    The minus sign is forced by the pairing with the diamond on the second
    slot: commuting the two odd-parity 1-forms in the gamma contraction
    flips the kernel, see the package documentation.
    """
    for n in (1, 2):
        vec = psi(MINUS, n, g)
        proj = projector(vec)
        cur = curvature(proj)
        kernel = pairing([d(c) for c in vec.components],
                         [d(c) for c in vec.components])
        rhs = outer_with_kernel(vec, kernel)
        dim = 2 * n + 1
        for i in range(dim):
            for j in range(dim):
                assert g.localizer.is_zero_mod(cur.entries[i][j]
                                               + rhs.entries[i][j]), (n, i, j)


def test_supertrace_curvature_vs_pairing(g):
    for n in (1, 2):
        for sign in (MINUS, PLUS):
            vec = psi(sign, n, g)
            S = supertrace_p_dp_dp(projector(vec))
            K = pairing([d(c) for c in vec.components],
                        [d(c) for c in vec.components])
            assert g.localizer.is_zero_mod(S + K), (sign, n)


def test_chern_form_chain(g):
    for n in (1, 2):
        for sign in (MINUS, PLUS):
            computed = chern_form(sign, n, reduced=False, space=g)
            assert g.equal_mod(computed, chern_closed_form(sign, n, g)), (sign, n)
            assert g.equal_mod(computed, chern_intermediate_form(sign, n, g)), (sign, n)


def test_chern_form_smoncf_lines_equal_under_display_reduction(g):
    for n in (1, 2):
        lhs = g.ideal.reduce(chern_intermediate_form(MINUS, n, g))
        rhs = g.ideal.reduce(chern_closed_form(MINUS, n, g))
        assert lhs == rhs


def test_chern_form_sign_flip(g):
    for n in (1, 2):
        cm = chern_form(MINUS, n, reduced=False, space=g)
        cp = chern_form(PLUS, n, reduced=False, space=g)
        assert g.equal_mod(cp, -cm)


def test_chern_form_canonical_matches_fixture(g):
    want = SuperForm.from_obj(g.table, _fixture("c1_minus_1.json")["form"])
    assert chern_form_canonical(MINUS, 1, g) == want


def test_chern_body_route_agrees_with_full_route(g):
    for n in (1, 2, 3):
        for sign in (MINUS, PLUS):
            full = chern_form(sign, n, reduced=False, space=g).body_project()
            fast = chern_form_body(sign, n, g)
            assert g.localizer.is_zero_mod(full - fast), (sign, n)


def test_coordinate_chern_report(g):
    """The verbatim coordinate expression misses the group-space form by one
    fermionic sign; the corrected variant (+2 x0 dxi- dxi+) matches.  The
    discrepancy is reported with a witness, never patched silently."""
    for n in (1, 2):
        rep = coordinate_chern_report(n, g)
        assert rep.corrected_matches, n
        assert not rep.verbatim_matches, n
        assert rep.difference is not None and not rep.difference.is_zero


def test_coordinate_chern_variants_share_body(g):
    for n in (1, 2):
        verbatim = coordinate_chern_form(MINUS, n)
        corrected = coordinate_chern_form(MINUS, n, corrected=True)
        assert verbatim.body_project() == corrected.body_project()


# -- coordinate emission --------------------------------------------------------------------

def test_element_to_base_roundtrip_n2(g):
    base = base_space()
    images = coordinate_images(g)
    proj = projector(psi(MINUS, 2, g))
    emitted = projector_to_base(proj, g, base)
    for i in range(5):
        for j in range(5):
            pulled = emitted.entries[i][j].substitute(images, g.table)
            assert g.rewrites.reduce(pulled - proj.matrix.entries[i][j]).is_zero, (i, j)


def test_element_to_base_rejects_non_invariant(g):
    with pytest.raises(CoordinateEmissionError):
        element_to_base(g.a, g)
    with pytest.raises(CoordinateEmissionError):
        element_to_base(g.eta, g)
