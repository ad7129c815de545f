"""
Tests for the Hermite normal form enumeration, the classifier and the
record persistence.
"""
import contextlib
import io
import json
import unittest
import unittest.mock

import pytest
from sympy import divisors

from reflex import classify
from reflex import simplex as sx
from reflex.classify import ClassRecord, HNFMatrix, hnf_enumerate
from reflex.utils import LimitError, RecordFormatError, WeightSystemError
from reflex.verify import require_complete
from reflex.weights import WeightSystem, m_of, reflexive_weight_systems
from tests.utils import D2_SIMPLICES, d2_simplices, dedup_by_equivalence


def _index_count(d__, det):
    """ sum over diagonals of prod h_jj^(d-1-j) """
    if d__ == 1:
        return 1
    return sum(diag ** (d__ - 1) * _index_count(d__ - 1, det // diag) for diag in divisors(det))


class HNFMatrixTestCase(unittest.TestCase):

    def testValid(self):
        hnf = HNFMatrix(((2, 0), (1, 3)))
        self.assertEqual(2, hnf.dim)
        self.assertEqual(6, hnf.det)
        self.assertListEqual([[2, 0], [1, 3]], hnf.rows())

    def testInvalid(self):
        for entries in (((2, 1), (0, 3)), ((0, 0), (0, 1)), ((2, 0), (2, 3)),
                        ((2, 0), (-1, 3)), ((1, 0),)):
            with self.assertRaises(ValueError):
                HNFMatrix(entries)


class HNFEnumerationTestCase(unittest.TestCase):

    def testDeterminantTwo(self):
        found = {hnf.entries for hnf in hnf_enumerate(2, 2)}
        self.assertSetEqual({((1, 0), (0, 2)), ((2, 0), (0, 1)), ((2, 0), (1, 1))}, found)

    def testIdentity(self):
        self.assertListEqual([((1, 0), (0, 1))], [h.entries for h in hnf_enumerate(2, 1)])
        self.assertListEqual([((1, 0, 0), (0, 1, 0), (0, 0, 1))],
                             [h.entries for h in hnf_enumerate(3, 1)])

    def testPrimes(self):
        for p__ in (2, 3, 5, 7, 11):
            self.assertEqual(p__ + 1, sum(1 for _ in hnf_enumerate(2, p__)))

    def testCountsAndDistinct(self):
        for d__ in (2, 3, 4):
            for det in (4, 6, 12):
                found = [hnf.entries for hnf in hnf_enumerate(d__, det)]
                self.assertEqual(_index_count(d__, det), len(found))
                self.assertEqual(len(found), len(set(found)))
                self.assertTrue(all(HNFMatrix(e).det == det for e in found))

    def testFilterPrunes(self):
        keep_diagonal = lambda h, j: all(row[j] == 0 for k, row in enumerate(h) if k > j)
        found = [hnf.entries for hnf in hnf_enumerate(2, 4, column_filter=keep_diagonal)]
        self.assertSetEqual({((1, 0), (0, 4)), ((2, 0), (0, 2)), ((4, 0), (0, 1))}, set(found))
        self.assertListEqual([], list(hnf_enumerate(3, 6, column_filter=lambda h, j: False)))

    def testBadArguments(self):
        for d__, det in ((0, 1), (2, 0), (2, -3), (2.0, 2)):
            with self.assertRaises(ValueError):
                list(hnf_enumerate(d__, det))


@pytest.mark.parametrize("qs", ((1, 1, 1), (2, 1, 1), (1, 1, 1, 1), (2, 2, 1, 1)))
def testDualIntegrityFilterIsExact(qs):
    q__ = WeightSystem(qs)
    p_q = sx.build_PQ(q__)
    etas = sx.dual_lattice_simplex(p_q).vertices
    for lam in divisors(int(m_of(q__))):
        kept = {h.entries for h in hnf_enumerate(
            q__.dimension, lam, column_filter=classify._DualIntegrality(etas, q__.dimension))}
        reflexive = {h.entries for h in hnf_enumerate(q__.dimension, lam)
                     if sx.is_reflexive(p_q.transform(h.rows()))}
        assert kept == reflexive


class ClassifyWeightSystemTestCase(unittest.TestCase):

    def testP2(self):
        records = classify.classify_weight_system(WeightSystem((1, 1, 1)))
        self.assertListEqual([3, 1], [rec.lam for rec in records])
        self.assertListEqual([9, 3], [rec.volume for rec in records])
        self.assertListEqual([10, 4], [rec.points for rec in records])
        self.assertTrue(all(rec.m == 3 for rec in records))
        self.assertFalse(any(rec.self_dual for rec in records))

    def testSylvester(self):
        records = classify.classify_weight_system(WeightSystem((3, 2, 1)))
        self.assertEqual(1, len(records))
        rec = records[0]
        self.assertTrue(rec.self_dual)
        self.assertEqual((1, 1, 6), (rec.lam, rec.m, rec.volume))
        self.assertTupleEqual((2, 3, 6), rec.partition.ks)
        self.assertEqual(4, rec.max_edge)

    def testEnlargedSylvester(self):
        records = classify.classify_weight_system(WeightSystem((2, 1, 1)))
        self.assertListEqual([(2, 8, 5), (1, 4, 3)],
                             [(rec.lam, rec.volume, rec.max_edge) for rec in records])

    def testRejectsNonReflexive(self):
        with self.assertRaises(WeightSystemError):
            classify.classify_weight_system(WeightSystem((2, 2, 1)))
        with self.assertRaises(WeightSystemError):
            classify.classify_weight_system(WeightSystem((2, 2, 2)))

    def testRecordsPassTheirChecks(self):
        for q__ in reflexive_weight_systems(3):
            for rec in classify.classify_weight_system(q__):
                rec.check()
                self.assertEqual(rec.vertices, sx.canonical_form(rec.simplex))


class ClassifyDimensionTestCase(unittest.TestCase):

    def testDimensionTwo(self):
        records = classify.classify_dimension(2)
        self.assertEqual(5, len(records))
        self.assertListEqual([9, 8, 6, 4, 3], [rec.volume for rec in records])
        self.assertListEqual([10, 9, 7, 5, 4], [rec.points for rec in records])
        self.assertListEqual([4, 5, 4, 3, 2], [rec.max_edge for rec in records])
        self.assertListEqual([False, False, True, False, False],
                             [rec.self_dual for rec in records])
        self.assertSetEqual({sx.canonical_form(s) for s in d2_simplices()},
                            {rec.vertices for rec in records})

    def testDimensionTwoAgainstOracle(self):
        """
        Oracle: every reflexive HNF image, deduplicated by pairwise
        equivalence tests instead of canonical forms.
        """
        found = []
        for q__ in reflexive_weight_systems(2):
            p_q = sx.build_PQ(q__)
            images = [p_q.transform(h.rows()) for lam in divisors(int(m_of(q__)))
                      for h in hnf_enumerate(2, lam)]
            found.extend(dedup_by_equivalence([s for s in images if sx.is_reflexive(s)]))
        self.assertEqual(len(D2_SIMPLICES), len(found))

    def testWorkersKeepTheOrder(self):
        self.assertListEqual(classify.classify_dimension(2),
                             classify.classify_dimension(2, workers=2))

    def testDebugReachesWorkers(self):
        serial = io.StringIO()
        with contextlib.redirect_stderr(serial):
            classify.classify_dimension(2, debug=True)
        self.assertEqual(3, len(serial.getvalue().splitlines()))

        def in_process_map(work, items, **kwargs):
            self.assertEqual(2, kwargs["max_workers"])
            return [work(item) for item in items]

        pooled = io.StringIO()
        with unittest.mock.patch.object(classify, "process_map", in_process_map), \
                contextlib.redirect_stderr(pooled):
            records = classify.classify_dimension(2, workers=2, debug=True)
        self.assertEqual(5, len(records))
        self.assertEqual(serial.getvalue(), pooled.getvalue())
        self.assertIn("candidates=", pooled.getvalue())

    def testLimits(self):
        for d__ in (1, 5, 2.0):
            with self.assertRaises(LimitError):
                classify.classify_dimension(d__)
        with self.assertRaises(LimitError):
            classify.classify_dimension(6, allow_high_dimension=True)


@pytest.mark.slow
def testDimensionThreeAgainstOracle():
    records = classify.classify_dimension(3)
    require_complete(3, records)
    for q__ in reflexive_weight_systems(3):
        p_q = sx.build_PQ(q__)
        images = [p_q.transform(h.rows()) for lam in divisors(int(m_of(q__)))
                  for h in hnf_enumerate(3, lam)]
        oracle = dedup_by_equivalence([s for s in images if sx.is_reflexive(s)])
        assert len(oracle) == sum(1 for rec in records if rec.weights == q__)
    assert len(records) == 48
    assert [rec.volume for rec in records][:2] == [72, 72]


@pytest.mark.slow
def testDimensionFour():
    records = classify.classify_dimension(4)
    require_complete(4, records)
    assert len(records) == 1561
    assert records[0].volume == 3528
    assert records[1].volume < 3528
    assert records == sorted(records, key=ClassRecord.sort_key)


class PersistenceTestCase(unittest.TestCase):

    def setUp(self):
        self.records = classify.classify_dimension(2)

    def testRecordJson(self):
        data = self.records[2].to_json()
        self.assertListEqual(["3", "2", "1"], data["weights"])
        self.assertEqual("1", data["lambda"])
        self.assertIs(True, data["selfDual"])
        for rec in self.records:
            self.assertEqual(rec, ClassRecord.from_json(json.loads(json.dumps(rec.to_json()))))

    def testFromJsonRejects(self):
        data = self.records[0].to_json()
        for key, value in (("selfDual", "true"), ("volume", 9.0), ("m", "three")):
            broken = dict(data)
            broken[key] = value
            with self.assertRaises(RecordFormatError):
                ClassRecord.from_json(broken)
        broken = dict(data)
        del broken["points"]
        with self.assertRaises(RecordFormatError):
            ClassRecord.from_json(broken)

    def testCheckCatchesInconsistencies(self):
        data = self.records[0].to_json()
        for key, value in (("lambda", "1"), ("points", "2"), ("maxEdge", "7"), ("m", "9")):
            broken = dict(data)
            broken[key] = value
            with self.assertRaises(RecordFormatError):
                ClassRecord.from_json(broken).check()


def testSaveLoadRoundTrip(tmp_path):
    records = classify.classify_dimension(2)
    path = str(tmp_path / "d2.jsonl")
    classify.save_classification(records, path)
    with open(path, encoding="utf-8") as inp:
        assert len(inp.read().splitlines()) == 5
    assert classify.load_classification(path) == records


def testTamperedVolumeNamesTheLine(tmp_path):
    records = classify.classify_dimension(2)
    path = str(tmp_path / "d2.jsonl")
    classify.save_classification(records, path)
    with open(path, encoding="utf-8") as inp:
        lines = inp.read().splitlines()
    data = json.loads(lines[2])
    data["volume"] = str(int(data["volume"]) + 1)
    lines[2] = json.dumps(data)
    with open(path, "w", encoding="utf-8") as out:
        out.write("\n".join(lines) + "\n")
    with pytest.raises(RecordFormatError) as info:
        classify.load_classification(path)
    assert info.value.lineno == 3
    assert ":3:" in str(info.value)
    assert len(classify.load_classification(path, check=False)) == 5


def testBrokenJsonLine(tmp_path):
    path = tmp_path / "broken.jsonl"
    path.write_text('\n{"d": 2,\n', encoding="utf-8")
    with pytest.raises(RecordFormatError) as info:
        classify.load_classification(str(path))
    assert info.value.lineno == 2


def testEmptyClassification(tmp_path):
    path = str(tmp_path / "empty.jsonl")
    classify.save_classification([], path)
    with open(path, encoding="utf-8") as inp:
        assert inp.read() == ""
    assert classify.load_classification(path) == []


class CsvTestCase(unittest.TestCase):

    def testRows(self):
        out = io.StringIO()
        classify.export_csv(classify.classify_dimension(2), out)
        lines = out.getvalue().splitlines()
        self.assertEqual(",".join(classify.CSV_HEADER), lines[0])
        self.assertEqual("d,weights,partition,m,lambda,volume,points,maxEdge,selfDual", lines[0])
        self.assertEqual(6, len(lines))
        self.assertIn("2,3|2|1,2|3|6,1,1,6,7,4,true", lines)
        self.assertIn("2,1|1|1,3|3|3,3,3,9,10,4,false", lines)

    def testEmpty(self):
        out = io.StringIO()
        classify.export_csv([], out)
        self.assertListEqual([",".join(classify.CSV_HEADER)], out.getvalue().splitlines())


def testCsvToPath(tmp_path):
    path = tmp_path / "d2.csv"
    classify.export_csv(classify.classify_dimension(2), str(path))
    assert len(path.read_text(encoding="utf-8").splitlines()) == 6
