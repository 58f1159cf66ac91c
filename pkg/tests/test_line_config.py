import itertools
import json
import os
import random
import tempfile
import unittest
from fractions import Fraction

from lib import line_io, sturm
from lib.errors import CollisionFound, LinesIntersect, MalformedLines, NotHopf, RangeViolation
from lib.line_config import (
    STANDARD_L0,
    IsotopyScript,
    ProjLine,
    collision_fixture,
    det4,
    dlk_lines,
    final_equations_hold,
    is_hopf_config,
    is_standard_config,
    pair_polynomial,
    random_hopf_configuration,
    random_positive_matrix,
    slope_form,
    standard_hyperboloid_config,
    standard_line,
    standardize,
    verify_script,
)


def affine(point, direction):
    return ProjLine.affine(point, direction)


def certified(script):
    certificate = verify_script(script)
    return certificate.verified and final_equations_hold(script)


class LinkingTests(unittest.TestCase):

    def test_standard_lines_link_positively(self):
        self.assertEqual(dlk_lines(standard_line(1), standard_line(2)), 1)
        self.assertEqual(dlk_lines(standard_line(2), standard_line(-3)), 1)

    def test_line_at_infinity_links_by_sign_of_x_direction(self):
        self.assertEqual(dlk_lines(STANDARD_L0, standard_line(5)), 1)
        self.assertEqual(dlk_lines(STANDARD_L0, affine((0, 0, 0), (-1, 0, 0))), -1)

    def test_reversing_one_line_flips_the_sign(self):
        self.assertEqual(dlk_lines(standard_line(1), standard_line(2).reversed()), -1)

    def test_meeting_lines_have_no_linking_number(self):
        with self.assertRaises(LinesIntersect):
            dlk_lines(affine((0, 0, 0), (1, 0, 0)), affine((0, 0, 0), (0, 1, 0)))

    def test_linking_survives_orientation_preserving_maps(self):
        rng = random.Random(12)
        lines = [standard_line(1), standard_line(-2), standard_line(3).reversed(), STANDARD_L0]
        for _ in range(20):
            M = random_positive_matrix(rng)
            self.assertGreater(det4([list(row) for row in zip(*M)]), 0)
            moved = [line.transformed(M) for line in lines]
            for i, j in itertools.combinations(range(len(lines)), 2):
                self.assertEqual(dlk_lines(moved[i], moved[j]), dlk_lines(lines[i], lines[j]), (i, j))

    def test_hopf_predicate(self):
        self.assertTrue(is_hopf_config(standard_hyperboloid_config(4, with_infinity=True)))
        self.assertFalse(is_hopf_config([standard_line(1), standard_line(2).reversed()]))
        with self.assertRaises(RangeViolation):
            is_hopf_config([standard_line(1)])


class ProjLineTests(unittest.TestCase):

    def test_scaling_by_a_negative_number_keeps_orientation(self):
        negated = ProjLine((0, 0, -1, -1), (-1, -1, 0, 0))
        self.assertTrue(negated.same_oriented_line(standard_line(1)))
        self.assertFalse(standard_line(1).reversed().same_oriented_line(standard_line(1)))

    def test_line_at_infinity_carries_its_normal(self):
        line = ProjLine.at_infinity((1, 0, 0))
        self.assertTrue(line.is_at_infinity)
        self.assertTrue(line.same_oriented_line(STANDARD_L0))
        self.assertEqual(line.normal(), (1, 0, 0))

    def test_slope_form(self):
        form = slope_form(affine((0, 1, 2), (2, 4, 6)))
        self.assertEqual((form.b, form.f, form.s, form.e), (1, 2, 2, 3))

    def test_degenerate_pair(self):
        with self.assertRaises(MalformedLines):
            ProjLine((0, 0, 0, 1), (0, 0, 0, 2))


class StandardizeTests(unittest.TestCase):

    def test_standard_family_needs_no_stages(self):
        script = standardize(standard_hyperboloid_config(3))
        self.assertEqual(script.stages, ())
        self.assertTrue(final_equations_hold(script))

    def test_standard_family_with_l0_needs_no_stages(self):
        lines = [ProjLine.at_infinity((1, 0, 0)), standard_line(1), standard_line(2)]
        script = standardize(lines)
        self.assertEqual(script.stages, ())
        self.assertEqual(script.l0_index, 0)

    def test_negatively_linked_pair_is_rejected(self):
        with self.assertRaises(NotHopf):
            standardize([standard_line(1), standard_line(2).reversed()])

    def test_tilted_lines_are_rotated_and_translated(self):
        lines = [affine((0, 1, 5), (1, 0, 1)), affine((0, -2, 9), (1, 3, -1))]
        self.assertTrue(is_hopf_config(lines))
        script = standardize(lines)
        self.assertTrue(certified(script))
        self.assertEqual(sorted(script.slopes()), [0, 3])

    def test_parallel_projections_get_sheared_apart(self):
        lines = [affine((0, 0, 0), (1, 1, 0)), affine((0, 1, 1), (1, 1, -1))]
        self.assertTrue(is_hopf_config(lines))
        script = standardize(lines)
        self.assertIn("shear", [stage.kind for stage in script.stages])
        self.assertTrue(certified(script))

    def test_random_configurations_are_certified(self):
        rng = random.Random(11)
        for n in (2, 3, 5):
            script = standardize(random_hopf_configuration(n, rng))
            self.assertTrue(certified(script), n)

    def test_configuration_with_line_at_infinity(self):
        lines = [ProjLine.at_infinity((1, 1, 0)), affine((0, 0, 0), (1, 0, 0)), affine((0, 0, 1), (1, 1, 0))]
        self.assertTrue(is_hopf_config(lines))
        script = standardize(lines)
        self.assertEqual(script.l0_index, 0)
        self.assertTrue(certified(script))
        self.assertIsNone(script.slopes()[0])

    def test_final_configuration_is_standard(self):
        script = standardize(random_hopf_configuration(4, random.Random(3)))
        self.assertTrue(is_standard_config(script.final_lines(), script.l0_index))


class ScriptTests(unittest.TestCase):

    def test_script_survives_json(self):
        script = standardize(random_hopf_configuration(3, random.Random(5)))
        data = json.loads(json.dumps(script.to_dict()))
        self.assertEqual(set(data), {"lines", "initial", "l0", "slopes", "stages"})
        self.assertTrue(verify_script(IsotopyScript.from_dict(data)).verified)

    def test_collision_is_reported_with_a_witness(self):
        with self.assertRaises(CollisionFound) as caught:
            verify_script(collision_fixture())
        details = caught.exception.details
        self.assertEqual(details["stage"], 0)
        self.assertEqual(details["pair"], [0, 1])
        lo, hi = (Fraction(v) for v in details["witness"])
        self.assertTrue(lo <= Fraction(1, 2) <= hi)

    def test_pair_polynomial_tracks_the_determinant(self):
        stage = collision_fixture().stages[0]
        coefficients = pair_polynomial(stage, 0, 1)

        def value(t):
            return sum(c * t ** k for k, c in enumerate(coefficients))

        start, end = stage.start_lines(), stage.end_lines()
        self.assertEqual(value(Fraction(0)), det4([start[0].P, start[0].D, start[1].P, start[1].D]))
        self.assertEqual(value(Fraction(1)), det4([end[0].P, end[0].D, end[1].P, end[1].D]))
        self.assertEqual(value(Fraction(1, 2)), 0)

    def test_certificate_lists_every_pair_per_stage(self):
        script = standardize(random_hopf_configuration(3, random.Random(8)))
        certificate = verify_script(script)
        self.assertEqual(len(certificate.entries), 3 * len(script.stages))
        self.assertTrue(all(entry.dlk == 1 for entry in certificate.entries))


class SturmTests(unittest.TestCase):

    def test_linear_root_inside(self):
        self.assertEqual(sturm.count_roots(sturm.as_poly([-1, 2])), 1)

    def test_no_real_roots(self):
        self.assertEqual(sturm.count_roots(sturm.as_poly([1, 0, 1])), 0)

    def test_roots_at_both_ends_count(self):
        self.assertEqual(sturm.count_roots(sturm.as_poly([0, -1, 1])), 2)

    def test_root_outside_interval(self):
        self.assertEqual(sturm.count_roots(sturm.as_poly([-3, 1])), 0)

    def test_constant_has_no_roots(self):
        self.assertEqual(sturm.count_roots(sturm.as_poly([Fraction(5, 3)])), 0)

    def test_sign_changes_skip_zeros(self):
        self.assertEqual(sturm.count_sign_changes([1, 0, -2, 0, 3]), 2)

    def test_isolating_interval(self):
        lo, hi = sturm.root_interval(sturm.as_poly([-1, 0, 3]))
        self.assertLessEqual(float(lo), 3 ** -0.5)
        self.assertGreaterEqual(float(hi), 3 ** -0.5)


class LineFileTests(unittest.TestCase):

    def test_parse_records_and_comments(self):
        text = "# two lines\nP 0 0 1 D 1 1 0\n\nINF 1 0 0  # l0\n"
        lines = line_io.parse_lines(text)
        self.assertEqual(len(lines), 2)
        self.assertTrue(lines[0].same_oriented_line(standard_line(1)))
        self.assertTrue(lines[1].same_oriented_line(STANDARD_L0))

    def test_rational_tokens(self):
        line = line_io.parse_line("P 1/2 0 0 D 1 -3/4 0")
        point, direction = line.affine_form()
        self.assertEqual(point[0], Fraction(1, 2))
        self.assertEqual(direction[1], Fraction(-3, 4))

    def test_malformed_record_reports_line_number(self):
        with self.assertRaises(MalformedLines) as caught:
            line_io.parse_lines("P 0 0 1 D 1 1 0\nQ 1 2 3\n")
        self.assertEqual(caught.exception.details["line"], 2)

    def test_zero_direction(self):
        with self.assertRaises(MalformedLines):
            line_io.parse_line("P 0 0 0 D 0 0 0")

    def test_write_then_read(self):
        lines = standard_hyperboloid_config(3)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "lines.txt")
            line_io.write_lines_file(path, lines)
            again = line_io.read_lines_file(path)
        self.assertTrue(all(a.same_oriented_line(b) for a, b in zip(lines, again)))

    def test_missing_file(self):
        with self.assertRaises(MalformedLines):
            line_io.read_lines_file("/nonexistent/lines.txt")


if __name__ == "__main__":
    unittest.main()
