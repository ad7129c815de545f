"""
Sylvester-sequence arithmetic, unit-partition enumeration and the
inequality sweeps over unit partitions.

A unit partition is a sorted tuple ``(k_0, ..., k_d)`` of positive
integers with ``1/k_0 + ... + 1/k_d = 1``. Everything here is exact:
integers, ``Fraction`` and, for Vardi's constant, rational intervals.
"""
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from sympy import divisors
from tqdm import tqdm
from tqdm.contrib.concurrent import process_map

from .utils import (PartitionError, LimitError, ReflexWarning, MAX_PARTITION_LENGTH,
                    VARDI_DIGITS, VARDI_GUARD_DIGITS, VARDI_MIN_DIGITS, is_int, parse_int,
                    lcm_all, product)

# The only partition besides the enlarged Sylvester one attaining the
# head-product bound; it exists for length 4 only.
EXCEPTIONAL_HEAD_PARTITION = (2, 6, 6, 6)


class SylvesterCache(object):                                       #pylint: disable=useless-object-inheritance
    """
    Memo of the Sylvester numbers ``y_n`` and of ``t_n = y_n - 1``.

    ``y_0 = 2`` and ``y_n = 1 + y_0 ... y_{n-1}``; the cache extends
    itself on demand and cross-checks the quadratic recurrence
    ``y_n = y_{n-1}^2 - y_{n-1} + 1`` on every new term.
    """

    def __init__(self):
        self.ys = [2]
        self.ts = [1]
        self._prod = 2

    def extend(self, n__):
        """ make sure ``y_n`` is cached """
        while len(self.ys) <= n__:
            prev = self.ys[-1]
            y__ = self._prod + 1
            assert y__ == prev * prev - prev + 1, "Sylvester recurrences disagree"
            assert y__ - 1 == self.ts[-1] * prev
            self.ys.append(y__)
            self.ts.append(y__ - 1)
            self._prod *= y__

    def y(self, n__):                                               #pylint: disable=invalid-name
        """ Sylvester number y_n """
        self.extend(n__)
        return self.ys[n__]

    def t(self, n__):                                               #pylint: disable=invalid-name
        """ t_n = y_n - 1 = y_0 ... y_{n-1} """
        self.extend(n__)
        return self.ts[n__]


_SYLVESTER = SylvesterCache()


def _check_index(n__):
    if not is_int(n__) or n__ < 0:
        raise ValueError("Sylvester index must be a non-negative integer, got %r" % (n__,))


def sylvester(n__):
    """
    :param int n__: index, ``n >= 0``.
    :return: the Sylvester number ``y_n`` (2, 3, 7, 43, 1807, ...).
    """
    _check_index(n__)
    return _SYLVESTER.y(n__)


def sylvester_t(n__):
    """ ``t_n = y_n - 1``; ``t_0 = 1`` """
    _check_index(n__)
    return _SYLVESTER.t(n__)


@dataclass(frozen=True, order=True)
class UnitPartition(object):                                        #pylint: disable=useless-object-inheritance
    """
    Sorted tuple of positive integers whose reciprocals sum to one.

    Build with :meth:`of`, which sorts and validates; the plain
    constructor validates too but expects sorted input.
    """
    ks: tuple

    def __post_init__(self):
        ks = self.ks
        if not isinstance(ks, tuple) or not ks:
            raise PartitionError("a unit partition needs at least one entry")
        if not all(is_int(k) and k > 0 for k in ks):
            raise PartitionError("unit partition entries must be positive integers: %r" % (ks,))
        if any(a > b for a, b in zip(ks, ks[1:])):
            raise PartitionError("unit partition must be sorted ascending: %r" % (ks,))
        if sum(Fraction(1, k) for k in ks) != 1:
            raise PartitionError("reciprocals of %r do not sum to 1" % (ks,))

    @classmethod
    def of(cls, values):
        """ sort ``values`` and validate them as a unit partition """
        return cls(tuple(sorted(values)))

    @property
    def length(self):
        """ n = d + 1 """
        return len(self.ks)

    @property
    def dimension(self):
        """ d = n - 1 """
        return len(self.ks) - 1

    @property
    def total_weight(self):
        """ lcm of all entries """
        return lcm_all(self.ks)

    @property
    def product(self):
        """ k_0 ... k_d """
        return product(self.ks)

    def __iter__(self):
        return iter(self.ks)

    def __len__(self):
        return len(self.ks)

    def __getitem__(self, index):
        return self.ks[index]

    def __str__(self):
        return "(" + ",".join(str(k) for k in self.ks) + ")"

    def to_json(self):
        """ JSON array of decimal strings """
        return [str(k) for k in self.ks]

    @classmethod
    def from_json(cls, data):
        """ inverse of :meth:`to_json`; plain integers are accepted too """
        try:
            return cls.of(parse_int(x, "partition entry") for x in data)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, PartitionError):
                raise
            raise PartitionError("malformed partition %r" % (data,)) from exc


def _sylvester_tuple(d__):
    """ (y_0, ..., y_{d-1}, t_d), valid for every d >= 0 """
    return tuple(sylvester(i) for i in range(d__)) + (sylvester_t(d__),)


def _enlarged_tuple(d__):
    """ (y_0, ..., y_{d-2}, 2 t_{d-1}, 2 t_{d-1}), valid for d >= 1 """
    tail = 2 * sylvester_t(d__ - 1)
    return tuple(sylvester(i) for i in range(d__ - 1)) + (tail, tail)


def _check_dimension(d__):
    if not is_int(d__) or d__ < 2:
        raise PartitionError("dimension must be an integer >= 2, got %r" % (d__,))


def sylvester_partition(d__):
    """
    The Sylvester partition ``(y_0, ..., y_{d-1}, t_d)`` of length d+1;
    its total weight is ``t_d``.
    """
    _check_dimension(d__)
    return UnitPartition(_sylvester_tuple(d__))


def enlarged_sylvester_partition(d__):
    """ ``(y_0, ..., y_{d-2}, 2 t_{d-1}, 2 t_{d-1})`` """
    _check_dimension(d__)
    return UnitPartition(_enlarged_tuple(d__))


# Enumeration ---------------------------------------------------------------

@lru_cache(maxsize=65536)
def _square_divisors(q__):
    """ sorted divisors of q^2 that do not exceed q """
    return [d__ for d__ in divisors(q__ * q__) if d__ <= q__]


def _last_two(p__, q__, low, cap, curtiss_bound):
    """
    All ``a <= b`` with ``1/a + 1/b = p/q`` and ``a >= low``, in
    increasing ``a``. Uses ``(p a - q)(p b - q) = q^2``.
    """
    for delta in _square_divisors(q__):
        if (q__ + delta) % p__:
            continue
        a__ = (q__ + delta) // p__
        if a__ < low:
            continue
        b__ = (q__ + q__ * q__ // delta) // p__
        if (q__ + q__ * q__ // delta) % p__:
            continue
        if b__ > cap:
            if curtiss_bound:
                raise AssertionError("Curtiss bound violated by a partition ending in %d" % b__)
            continue
        yield a__, b__


def _extend(prefix, p__, q__, slots, low, cap, curtiss_bound):
    """
    Recursive enumerator. The remaining sum ``p/q`` (lowest terms) has
    to be split over ``slots`` denominators, each at least ``low``.
    """
    if slots == 1:
        if p__ == 1 and low <= q__:
            if q__ > cap:
                if curtiss_bound:
                    raise AssertionError("Curtiss bound violated by %r" % (prefix + (q__,),))
                return
            yield prefix + (q__,)
        return
    if slots == 2:
        for a__, b__ in _last_two(p__, q__, low, cap, curtiss_bound):
            yield prefix + (a__, b__)
        return

    # 1/k < p/q strictly, and slots/k >= p/q since k is the smallest left
    first = max(low, q__ // p__ + 1)
    last = min(slots * q__ // p__, cap)
    for k in range(first, last + 1):
        num = p__ * k - q__
        den = q__ * k
        g__ = math.gcd(num, den)
        yield from _extend(prefix + (k,), num // g__, den // g__, slots - 1, k, cap,
                           curtiss_bound)


def _check_length(n__, allow_long):
    if not is_int(n__) or n__ < 1:
        raise PartitionError("partition length must be a positive integer, got %r" % (n__,))
    if n__ > MAX_PARTITION_LENGTH:
        if not allow_long:
            raise LimitError(
                "partition length %d exceeds the default limit %d; pass the "
                "override to enumerate it anyway" % (n__, MAX_PARTITION_LENGTH))
        warnings.warn("enumerating unit partitions of length %d, this may take "
                      "very long" % n__, ReflexWarning)


def _prefixes(n__, cap):
    """
    Work units ``(prefix, p, q)`` in lexicographic order: the prefix is
    ``(k_0,)`` for n <= 3 and ``(k_0, k_1)`` otherwise, ``p/q`` is what
    is left of the unit sum.
    """
    out = []
    for k0 in range(2, min(n__, cap) + 1):
        p__, q__ = k0 - 1, k0
        if n__ <= 3:
            out.append(((k0,), p__, q__))
            continue
        for k1 in range(max(k0, q__ // p__ + 1), min((n__ - 1) * q__ // p__, cap) + 1):
            num, den = p__ * k1 - q__, q__ * k1
            g__ = math.gcd(num, den)
            out.append(((k0, k1), num // g__, den // g__))
    return out


def _run_prefix(task):
    prefix, p__, q__, n__, cap, curtiss_bound = task
    return list(_extend(prefix, p__, q__, n__ - len(prefix), prefix[-1], cap, curtiss_bound))


def enumerate_unit_partitions(n__, max_denominator=None, allow_long=False, workers=1,
                              progress=False):
    """
    Stream every unit partition of length ``n`` exactly once, in
    lexicographic order of the sorted tuples.

    :param int n__: partition length, ``n >= 1``.
    :param max_denominator: cap on the entries. Defaults to ``t_{n-1}``,
        the largest entry any partition of length n can have; with the
        default in force an emitted entry above it raises
        ``AssertionError`` instead of being dropped silently.
    :param bool allow_long: unlock lengths above ``MAX_PARTITION_LENGTH``.
    :param int workers: with more than one worker the ``(k_0, k_1)``
        branches are fanned out over processes and concatenated in
        branch order, so the stream is identical to the serial one.
    :raises LimitError: on a too-long request without the override.
    """
    _check_length(n__, allow_long)
    curtiss_bound = max_denominator is None
    cap = sylvester_t(n__ - 1) if curtiss_bound else max_denominator

    if n__ == 1:
        if cap >= 1:
            yield UnitPartition((1,))
        return

    tasks = [(prefix, p__, q__, n__, cap, curtiss_bound)
             for prefix, p__, q__ in _prefixes(n__, cap)]
    if workers and workers > 1 and len(tasks) > 1:
        chunks = process_map(_run_prefix, tasks, max_workers=workers,
                             chunksize=1, disable=not progress)
    else:
        chunks = map(_run_prefix, tqdm(tasks, disable=not progress, desc="partitions"))
    for chunk in chunks:
        for ks in chunk:
            yield UnitPartition(ks)


# Theorem checks ------------------------------------------------------------

@dataclass
class KpropReport(object):                                          #pylint: disable=useless-object-inheritance,too-many-instance-attributes
    """
    Verdicts of the three unit-partition bounds for one partition.

    ``bounds[i]`` is ``None`` when statement i+1 does not apply (the
    head-product bound needs length >= 4); otherwise it is True iff the
    inequalities hold *and* equality occurs exactly in the stated case.
    """
    partition: UnitPartition
    lcm_sq: int
    product: int
    prod_head: int
    bounds: tuple
    equality_flags: frozenset = field(default_factory=frozenset)

    @property
    def holds(self):
        """ every applicable statement holds """
        return all(b is not False for b in self.bounds)

    def to_json(self):
        """ JSON-ready dict """
        return {"partition": self.partition.to_json(),
                "lcm_sq": str(self.lcm_sq),
                "product": str(self.product),
                "prod_head": str(self.prod_head),
                "bounds": list(self.bounds),
                "equality": sorted(self.equality_flags),
                "holds": self.holds}


def check_kprop(partition):
    """
    Check, for one unit partition ``(k_0, ..., k_d)`` sorted ascending:

    1. ``lcm^2 <= k_0...k_d <= t_d^2``, ``k_0...k_d / lcm^2`` an integer,
       upper equality only for the Sylvester partition;
    2. ``(d+1)^(d+1) <= k_0...k_d``, equality iff all entries are d+1;
    3. (d >= 3) ``k_0...k_d / lcm <= k_0...k_{d-1} <= 2 t_{d-1}^2``,
       upper equality iff enlarged Sylvester or (2,6,6,6).

    Equality cases are compared against constructed partitions.
    """
    ks = partition.ks
    d__ = partition.dimension
    lcm = partition.total_weight
    prod = partition.product
    prod_head = product(ks[:-1])
    flags = set()

    t_d = sylvester_t(d__)
    upper_eq = prod == t_d * t_d
    is_sylvester = ks == _sylvester_tuple(d__)
    if upper_eq:
        flags.add("sylvester")
    first = (lcm * lcm <= prod <= t_d * t_d and prod % (lcm * lcm) == 0
             and upper_eq == is_sylvester)

    amgm = (d__ + 1) ** (d__ + 1)
    all_equal = all(k == d__ + 1 for k in ks)
    if prod == amgm:
        flags.add("all-equal")
    second = amgm <= prod and (prod == amgm) == all_equal

    third = None
    if len(ks) >= 4:
        bound = 2 * sylvester_t(d__ - 1) ** 2
        head_eq = prod_head == bound
        expected = ks == _enlarged_tuple(d__) or ks == EXCEPTIONAL_HEAD_PARTITION
        if head_eq:
            if ks == _enlarged_tuple(d__):
                flags.add("enlarged-sylvester")
            elif ks == EXCEPTIONAL_HEAD_PARTITION:
                flags.add("exceptional")
            else:
                flags.add("head-equality")
        third = (Fraction(prod, lcm) <= prod_head <= bound) and head_eq == expected

    return KpropReport(partition, lcm * lcm, prod, prod_head, (first, second, third),
                       frozenset(flags))


@dataclass
class ChainReport(object):                                          #pylint: disable=useless-object-inheritance
    """
    The reciprocal-chain lemma at ``x_i = 1/k_i`` (descending x):
    hypotheses ``x_1...x_k <= x_{k+1} + ... + x_n`` and conclusions
    ``x_n >= 1/t_{n-1}``, ``x_1...x_n >= 1/t_{n-1}^2``.
    """
    partition: UnitPartition
    hypotheses: bool
    min_bound: bool
    product_bound: bool
    equality: bool
    equality_consistent: bool

    @property
    def holds(self):
        """ hypotheses, both conclusions and the equality case """
        return self.hypotheses and self.min_bound and self.product_bound and \
            self.equality_consistent


def check_reciprocal_chain(partition):
    """
    Verify the hypotheses and conclusions of the reciprocal-chain lemma
    for the reciprocals of ``partition``; equality in either conclusion
    must hold exactly when the first n-1 entries are ``y_0..y_{n-2}``.
    """
    xs = [Fraction(1, k) for k in partition.ks]
    n__ = len(xs)
    hypotheses = sum(xs) == 1
    running = Fraction(1)
    for k in range(n__ - 1):
        running *= xs[k]
        if running > sum(xs[k + 1:]):
            hypotheses = False
            break

    t__ = sylvester_t(n__ - 1)
    x_min = xs[-1]
    x_prod = product(xs)
    min_eq = x_min == Fraction(1, t__)
    prod_eq = x_prod == Fraction(1, t__ * t__)
    head_is_sylvester = partition.ks[:-1] == tuple(sylvester(i) for i in range(n__ - 1))
    return ChainReport(partition, hypotheses,
                       x_min >= Fraction(1, t__),
                       x_prod >= Fraction(1, t__ * t__),
                       min_eq,
                       min_eq == prod_eq == head_is_sylvester)


@dataclass
class SweepVerdict(object):                                         #pylint: disable=useless-object-inheritance
    """ Aggregated verdict of a check run over a finite family """
    statement: str
    n: int                                                          #pylint: disable=invalid-name
    holds: bool
    extremals: list = field(default_factory=list)
    counterexample: object = None
    count: int = 0
    details: dict = field(default_factory=dict)

    def to_json(self):
        """ {statement, holds, extremals: [...]} plus bookkeeping """
        def _enc(item):
            if isinstance(item, UnitPartition):
                return item.to_json()
            if isinstance(item, (tuple, list)):
                return [str(x) for x in item]
            return str(item)

        out = {"statement": self.statement,
               "n": self.n,
               "holds": self.holds,
               "extremals": [_enc(e) for e in self.extremals],
               "count": self.count}
        if self.counterexample is not None:
            out["counterexample"] = _enc(self.counterexample)
        out.update(self.details)
        return out


def curtiss_corollary_sweep(n__, allow_long=False, workers=1, progress=False):
    """
    Over all unit partitions of length ``n >= 2``: ``max k_i <= t_{n-1}``
    with equality exactly for the Sylvester partition, and the head sum
    ``sum_{i<d} 1/k_i <= 1 - 1/t_{n-1}`` with equality iff the head is
    ``(y_0, ..., y_{n-2})``.
    """
    if not is_int(n__) or n__ < 2:
        raise PartitionError("sweep length must be an integer >= 2, got %r" % (n__,))
    t__ = sylvester_t(n__ - 1)
    head_bound = 1 - Fraction(1, t__)
    sylvester_ks = _sylvester_tuple(n__ - 1)
    head_sylvester = sylvester_ks[:-1]
    verdict = SweepVerdict("curtiss", n__, True)

    for part in enumerate_unit_partitions(n__, allow_long=allow_long, workers=workers,
                                          progress=progress):
        verdict.count += 1
        ks = part.ks
        head_sum = sum(Fraction(1, k) for k in ks[:-1])
        max_eq = ks[-1] == t__
        ok = (ks[-1] <= t__ and max_eq == (ks == sylvester_ks)
              and head_sum <= head_bound
              and (head_sum == head_bound) == (ks[:-1] == head_sylvester))
        if max_eq:
            verdict.extremals.append(part)
        if not ok and verdict.counterexample is None:
            verdict.holds = False
            verdict.counterexample = part
    return verdict


def _expected_equality_sets(n__):
    d__ = n__ - 1
    sets = {"sylvester": {_sylvester_tuple(d__)},
            "all-equal": {tuple([n__] * n__)},
            "head": set()}
    if n__ >= 4:
        sets["head"].add(_enlarged_tuple(d__))
        if n__ == 4:
            sets["head"].add(EXCEPTIONAL_HEAD_PARTITION)
    return sets


def kprop_sweep(n__, allow_long=False, workers=1, progress=False):
    """
    :func:`check_kprop` over every partition of length n; the observed
    equality sets must be exactly {Sylvester}, {all-equal} and
    {enlarged Sylvester} (plus (2,6,6,6) at n = 4).
    """
    verdict = SweepVerdict("kprop", n__, True)
    observed = {"sylvester": set(), "all-equal": set(), "head": set()}

    for part in enumerate_unit_partitions(n__, allow_long=allow_long, workers=workers,
                                          progress=progress):
        verdict.count += 1
        report = check_kprop(part)
        if "sylvester" in report.equality_flags:
            observed["sylvester"].add(part.ks)
        if "all-equal" in report.equality_flags:
            observed["all-equal"].add(part.ks)
        if report.equality_flags & {"enlarged-sylvester", "exceptional"}:
            observed["head"].add(part.ks)
        if not report.holds and verdict.counterexample is None:
            verdict.holds = False
            verdict.counterexample = part

    expected = _expected_equality_sets(n__)
    if observed != expected:
        verdict.holds = False
    verdict.extremals = [UnitPartition(ks) for key in ("sylvester", "all-equal", "head")
                         for ks in sorted(observed[key])]
    verdict.details = {"equality_sets": {key: [[str(k) for k in ks] for ks in sorted(value)]
                                         for key, value in observed.items()}}
    return verdict


def chain_sweep(n__, allow_long=False, workers=1, progress=False):
    """ :func:`check_reciprocal_chain` over every partition of length n """
    verdict = SweepVerdict("chain", n__, True)
    for part in enumerate_unit_partitions(n__, allow_long=allow_long, workers=workers,
                                          progress=progress):
        verdict.count += 1
        report = check_reciprocal_chain(part)
        if report.equality:
            verdict.extremals.append(part)
        if not report.holds and verdict.counterexample is None:
            verdict.holds = False
            verdict.counterexample = part
    if [p.ks[:-1] for p in verdict.extremals] != [tuple(sylvester(i) for i in range(n__ - 1))]:
        verdict.holds = False
    return verdict


def cruc_inequality_check(n_max):
    """
    ``(r+1)^r t_{n-r-1}^(r+1) <= 2 t_{n-2}^2`` for ``4 <= n <= n_max``,
    ``1 <= r <= n-1``; equality exactly for ``r = 1`` or ``(n, r) = (4, 2)``.
    """
    if not is_int(n_max) or n_max < 4:
        raise ValueError("n_max must be an integer >= 4, got %r" % (n_max,))
    verdict = SweepVerdict("cruc", n_max, True)
    for n__ in range(4, n_max + 1):
        rhs = 2 * sylvester_t(n__ - 2) ** 2
        for r__ in range(1, n__):
            verdict.count += 1
            lhs = (r__ + 1) ** r__ * sylvester_t(n__ - r__ - 1) ** (r__ + 1)
            equal = lhs == rhs
            if equal:
                verdict.extremals.append((n__, r__))
            expected = r__ == 1 or (n__, r__) == (4, 2)
            if (lhs > rhs or equal != expected) and verdict.counterexample is None:
                verdict.holds = False
                verdict.counterexample = (n__, r__)
    return verdict


@dataclass
class VardiVerdict(object):                                         #pylint: disable=useless-object-inheritance
    """
    Outcome of the floor-formula check. ``status`` is ``"HOLDS"``,
    ``"FAILS"`` or ``"INCONCLUSIVE"``; ``values[n]`` is the floor the
    interval pinned down, or ``None`` where it straddled an integer.
    """
    status: str
    n_max: int
    values: list

    @property
    def holds(self):
        """ False only on a proven mismatch """
        return self.status != "FAILS"

    def to_json(self):
        """ JSON-ready dict """
        return {"statement": "vardi", "n": self.n_max, "status": self.status,
                "holds": self.holds,
                "values": [None if v is None else str(v) for v in self.values]}


def _significant_digits(digits):
    """ digits of a decimal expansion, leading zeros and sign excluded """
    return len(digits.strip().lstrip("+-").replace(".", "").lstrip("0"))


def _decimal_interval(digits, guard):
    """ rational interval certainly containing c, given its truncation """
    text = digits.strip()
    if "." in text:
        places = len(text.split(".", 1)[1])
    else:
        places = 0
    centre = Fraction(text)
    width = Fraction(1, 10 ** max(places - guard, 0))
    return max(centre - width, Fraction(1)), centre + width


def vardi_floor_check(n_max, c_digits=VARDI_DIGITS, guard_digits=VARDI_GUARD_DIGITS):
    """
    Check ``y_n = floor(c^(2^(n+1)) + 1/2)`` for ``0 <= n <= n_max``.

    ``c_digits`` is a decimal expansion of Vardi's constant; its last
    ``guard_digits`` digits are not trusted. When the rational interval
    for ``c^(2^(n+1)) + 1/2`` contains an integer the result for that n
    is ``None`` and the overall status INCONCLUSIVE; it is never FAILS
    for lack of precision.
    """
    if not is_int(n_max) or not 0 <= n_max <= 6:
        raise ValueError("n_max must be an integer in [0, 6], got %r" % (n_max,))
    given = _significant_digits(c_digits)
    if given < VARDI_MIN_DIGITS:
        warnings.warn("Vardi constant given to %d significant digits, fewer than %d"
                      % (given, VARDI_MIN_DIGITS), ReflexWarning)
    lo_c, hi_c = _decimal_interval(c_digits, guard_digits)
    half = Fraction(1, 2)
    values = []
    status = "HOLDS"

    for n__ in range(n_max + 1):
        power = 2 ** (n__ + 1)
        lo_v = math.floor(lo_c ** power + half)
        hi_v = math.floor(hi_c ** power + half)
        if lo_v != hi_v:
            values.append(None)
            if status == "HOLDS":
                status = "INCONCLUSIVE"
            continue
        values.append(lo_v)
        if lo_v != sylvester(n__):
            status = "FAILS"

    if status == "INCONCLUSIVE":
        warnings.warn("Vardi constant given to too few digits to decide every n <= %d"
                      % n_max, ReflexWarning)
    return VardiVerdict(status, n_max, values)
