"""
Tests for Sylvester numbers, unit-partition enumeration and the sweeps
over unit partitions.
"""
import unittest
import warnings
from fractions import Fraction

import pytest

from reflex import numthy
from reflex.numthy import UnitPartition, enumerate_unit_partitions
from reflex.utils import LimitError, PartitionError, ReflexWarning
from tests.utils import brute_force_partitions, greedy_bounded_partitions

SYLVESTER = (2, 3, 7, 43, 1807, 3263443, 10650056950807)


class SylvesterTestCase(unittest.TestCase):

    def testFirstTerms(self):
        self.assertTupleEqual(SYLVESTER, tuple(numthy.sylvester(n) for n in range(7)))
        self.assertTupleEqual((1, 2, 6, 42, 1806),
                              tuple(numthy.sylvester_t(n) for n in range(5)))

    def testRecurrences(self):
        for n__ in range(1, 12):
            prev = numthy.sylvester(n__ - 1)
            self.assertEqual(prev * prev - prev + 1, numthy.sylvester(n__))
            self.assertEqual(numthy.sylvester_t(n__ - 1) * prev, numthy.sylvester_t(n__))

    def testBigIndexIsExact(self):
        y20 = numthy.sylvester(20)
        self.assertEqual(y20 - 1, numthy.sylvester_t(20))
        self.assertEqual(1, y20 % numthy.sylvester(19))

    def testBadIndex(self):
        for bad in (-1, 2.0, "3"):
            with self.assertRaises(ValueError):
                numthy.sylvester(bad)


class UnitPartitionTestCase(unittest.TestCase):

    def testValidation(self):
        self.assertTupleEqual((2, 3, 6), UnitPartition.of((6, 2, 3)).ks)
        with self.assertRaises(PartitionError):
            UnitPartition((6, 2, 3))
        with self.assertRaises(PartitionError):
            UnitPartition.of((2, 3, 7))
        with self.assertRaises(PartitionError):
            UnitPartition.of((0, 1))
        with self.assertRaises(PartitionError):
            UnitPartition(())

    def testProperties(self):
        part = UnitPartition.of((2, 3, 12, 12))
        self.assertEqual(3, part.dimension)
        self.assertEqual(4, part.length)
        self.assertEqual(12, part.total_weight)
        self.assertEqual(864, part.product)
        self.assertEqual("(2,3,12,12)", str(part))
        self.assertEqual(part, UnitPartition.from_json(part.to_json()))
        self.assertEqual(part, UnitPartition.from_json([12, "2", 3, 12]))
        with self.assertRaises(PartitionError):
            UnitPartition.from_json(["2", "x"])

    def testSpecialPartitions(self):
        self.assertTupleEqual((2, 3, 7, 42), numthy.sylvester_partition(3).ks)
        self.assertTupleEqual((2, 3, 7, 43, 1806), numthy.sylvester_partition(4).ks)
        self.assertTupleEqual((2, 3, 12, 12), numthy.enlarged_sylvester_partition(3).ks)
        self.assertTupleEqual((2, 3, 7, 84, 84), numthy.enlarged_sylvester_partition(4).ks)
        with self.assertRaises(PartitionError):
            numthy.sylvester_partition(1)


class EnumerationTestCase(unittest.TestCase):

    def testLengthThree(self):
        self.assertListEqual([(2, 3, 6), (2, 4, 4), (3, 3, 3)],
                             [p.ks for p in enumerate_unit_partitions(3)])

    def testSmallLengths(self):
        self.assertListEqual([(1,)], [p.ks for p in enumerate_unit_partitions(1)])
        self.assertListEqual([(2, 2)], [p.ks for p in enumerate_unit_partitions(2)])

    def testAgainstBruteForce(self):
        for n__, bound in ((2, 2), (3, 6), (4, 42)):
            self.assertListEqual(brute_force_partitions(n__, bound),
                                 [p.ks for p in enumerate_unit_partitions(n__)])

    def testLengthFiveAgainstOracle(self):
        found = [p.ks for p in enumerate_unit_partitions(5)]
        self.assertEqual(147, len(found))
        self.assertListEqual(greedy_bounded_partitions(5), found)

    def testExplicitCap(self):
        capped = [p.ks for p in enumerate_unit_partitions(4, max_denominator=12)]
        self.assertListEqual([ks for ks in brute_force_partitions(4, 42) if ks[-1] <= 12],
                             capped)

    def testWorkersGiveTheSameStream(self):
        serial = list(enumerate_unit_partitions(5))
        self.assertListEqual(serial, list(enumerate_unit_partitions(5, workers=2)))

    def testLimits(self):
        with self.assertRaises(LimitError):
            list(enumerate_unit_partitions(8))
        with self.assertRaises(PartitionError):
            list(enumerate_unit_partitions(0))

    def testOverrideWarns(self):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            found = [p.ks for p in enumerate_unit_partitions(8, max_denominator=8,
                                                             allow_long=True)]
        self.assertListEqual([(8,) * 8], found)
        self.assertTrue(any(issubclass(w.category, ReflexWarning) for w in caught))


@pytest.mark.parametrize("q__", (1, 2, 12, 42, 97, 360, 1806))
def testSquareDivisors(q__):
    expected = [d for d in range(1, q__ + 1) if (q__ * q__) % d == 0]
    assert numthy._square_divisors(q__) == expected


@pytest.mark.parametrize("n__, expected", ((1, 1), (2, 1), (3, 3), (4, 14), (5, 147)))
def testPartitionCounts(n__, expected):
    assert sum(1 for _ in enumerate_unit_partitions(n__)) == expected


@pytest.mark.slow
def testPartitionCountSix():
    parts = list(enumerate_unit_partitions(6))
    assert len(parts) == 3462
    assert parts == sorted(parts)
    assert all(sum(Fraction(1, k) for k in p.ks) == 1 for p in parts)


class KpropTestCase(unittest.TestCase):

    def testSylvesterEquality(self):
        report = numthy.check_kprop(UnitPartition.of((2, 3, 6)))
        self.assertTrue(report.holds)
        self.assertIn("sylvester", report.equality_flags)
        self.assertIsNone(report.bounds[2])
        self.assertEqual(36, report.product)

    def testAllEqual(self):
        report = numthy.check_kprop(UnitPartition.of((4, 4, 4, 4)))
        self.assertTrue(report.holds)
        self.assertIn("all-equal", report.equality_flags)

    def testHeadEquality(self):
        for ks, flag in (((2, 3, 12, 12), "enlarged-sylvester"), ((2, 6, 6, 6), "exceptional"),
                         ((2, 3, 7, 84, 84), "enlarged-sylvester")):
            report = numthy.check_kprop(UnitPartition.of(ks))
            self.assertTrue(report.holds, ks)
            self.assertIn(flag, report.equality_flags)
            self.assertEqual(2 * numthy.sylvester_t(len(ks) - 2) ** 2, report.prod_head)

    def testJson(self):
        data = numthy.check_kprop(UnitPartition.of((2, 4, 4))).to_json()
        self.assertListEqual(["2", "4", "4"], data["partition"])
        self.assertEqual("32", data["product"])
        self.assertTrue(data["holds"])


@pytest.mark.parametrize("n__", (3, 4, 5))
def testKpropSweep(n__):
    verdict = numthy.kprop_sweep(n__)
    assert verdict.holds
    sets = verdict.details["equality_sets"]
    assert sets["sylvester"] == [[str(k) for k in numthy.sylvester_partition(n__ - 1).ks]]
    assert sets["all-equal"] == [[str(n__)] * n__]
    expected_head = [] if n__ < 4 else \
        [[str(k) for k in numthy.enlarged_sylvester_partition(n__ - 1).ks]]
    if n__ == 4:
        expected_head = sorted(expected_head + [["2", "6", "6", "6"]])
    assert sets["head"] == expected_head


@pytest.mark.slow
def testKpropSweepSix():
    verdict = numthy.kprop_sweep(6)
    assert verdict.holds
    assert verdict.count == 3462


@pytest.mark.slow
def testKpropSweepSeven():
    verdict = numthy.kprop_sweep(7, workers=4)
    assert verdict.holds, verdict.counterexample
    assert verdict.count == 294314
    sets = verdict.details["equality_sets"]
    assert sets["sylvester"] == [[str(k) for k in numthy.sylvester_partition(6).ks]]
    assert sets["head"] == [[str(k) for k in numthy.enlarged_sylvester_partition(6).ks]]


@pytest.mark.parametrize("n__", (3, 4, 5))
def testChainAndCurtissSweeps(n__):
    chain = numthy.chain_sweep(n__)
    assert chain.holds
    assert [p.ks for p in chain.extremals] == [numthy.sylvester_partition(n__ - 1).ks]
    curtiss = numthy.curtiss_corollary_sweep(n__)
    assert curtiss.holds
    assert [p.ks for p in curtiss.extremals] == [numthy.sylvester_partition(n__ - 1).ks]


def testChainReportOnSylvester():
    report = numthy.check_reciprocal_chain(UnitPartition.of((2, 3, 7, 42)))
    assert report.hypotheses and report.equality and report.holds
    other = numthy.check_reciprocal_chain(UnitPartition.of((2, 4, 4)))
    assert other.holds and not other.equality


def testCrucInequality():
    verdict = numthy.cruc_inequality_check(12)
    assert verdict.holds
    expected = [(4, 1), (4, 2)] + [(n, 1) for n in range(5, 13)]
    assert verdict.extremals == expected
    assert verdict.count == sum(n - 1 for n in range(4, 13))
    with pytest.raises(ValueError):
        numthy.cruc_inequality_check(3)


def testVardiHolds():
    verdict = numthy.vardi_floor_check(4)
    assert verdict.status == "HOLDS"
    assert verdict.values == list(SYLVESTER[:5])
    for n_max in (5, 6):
        wider = numthy.vardi_floor_check(n_max)
        assert wider.status == "HOLDS"
        assert wider.values == list(SYLVESTER[:n_max + 1])
    with pytest.raises(ValueError):
        numthy.vardi_floor_check(7)


def testVardiShippedDigitsAreQuiet():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert numthy.vardi_floor_check(6).holds


@pytest.mark.parametrize("digits", ("1.26408473530530", "001.2640847353053011130795995841646694"))
def testVardiShortDigitsWarn(digits):
    with pytest.warns(ReflexWarning, match="significant digits"):
        verdict = numthy.vardi_floor_check(0, c_digits=digits)
    assert verdict.status == "HOLDS"


def testVardiInconclusiveNeverFails():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        verdict = numthy.vardi_floor_check(5, c_digits="1.26408", guard_digits=0)
    assert verdict.status == "INCONCLUSIVE"
    assert verdict.holds
    assert verdict.values[5] is None
    assert any(issubclass(w.category, ReflexWarning) for w in caught)
