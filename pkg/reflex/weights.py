"""
Weight systems: reduction, normalization, reflexivity, the invariant
``m_Q`` and the bijection between reflexive weight systems and unit
partitions.

A weight system is stored sorted descending; two weight systems that
agree up to permutation are therefore equal as values.
"""
from dataclasses import dataclass
from fractions import Fraction

from .numthy import UnitPartition, enumerate_unit_partitions, sylvester, sylvester_t
from .utils import WeightSystemError, is_int, parse_int, gcd_all, lcm_all, product


@dataclass(frozen=True, order=True)
class WeightSystem(object):                                         #pylint: disable=useless-object-inheritance
    """
    Tuple ``(q_0, ..., q_d)`` of positive integers, kept sorted
    descending. Use :meth:`of` to build one from weights in any order.
    """
    qs: tuple

    def __post_init__(self):
        qs = self.qs
        if not isinstance(qs, tuple) or len(qs) < 2:
            raise WeightSystemError("a weight system needs at least two weights: %r" % (qs,))
        if not all(is_int(q) and q > 0 for q in qs):
            raise WeightSystemError("weights must be positive integers: %r" % (qs,))
        if any(a < b for a, b in zip(qs, qs[1:])):
            raise WeightSystemError("weights must be sorted descending: %r" % (qs,))

    @classmethod
    def of(cls, values):
        """ sort ``values`` descending and validate """
        return cls(tuple(sorted(values, reverse=True)))

    @property
    def total(self):
        """ |Q| = q_0 + ... + q_d """
        return sum(self.qs)

    @property
    def factor(self):
        """ lambda_Q = gcd(Q) """
        return gcd_all(self.qs)

    @property
    def dimension(self):
        """ d, one less than the number of weights """
        return len(self.qs) - 1

    def __iter__(self):
        return iter(self.qs)

    def __len__(self):
        return len(self.qs)

    def __getitem__(self, index):
        return self.qs[index]

    def __str__(self):
        return "(" + ",".join(str(q) for q in self.qs) + ")"

    def scaled(self, factor):
        """ lambda Q """
        return WeightSystem(tuple(factor * q for q in self.qs))

    def to_json(self):
        """ {"weights": [...], "total": "...", "m": "..."} """
        return {"weights": [str(q) for q in self.qs],
                "total": str(self.total),
                "m": str(m_of(self))}

    @classmethod
    def from_json(cls, data):
        """ accepts the dict of :meth:`to_json` or a bare list of weights """
        weights = data["weights"] if isinstance(data, dict) else data
        try:
            return cls.of(parse_int(w, "weight") for w in weights)
        except ValueError as exc:
            if isinstance(exc, WeightSystemError):
                raise
            raise WeightSystemError(str(exc)) from exc


def is_reduced(q__):
    """ gcd of all weights is one """
    return q__.factor == 1


def is_normalized(q__):
    """ every d-element sub-family has gcd one """
    qs = q__.qs
    return all(gcd_all(qs[:i] + qs[i + 1:]) == 1 for i in range(len(qs)))


def reduce(q__):                                                    #pylint: disable=redefined-builtin
    """ Q / lambda_Q; idempotent """
    lam = q__.factor
    if lam == 1:
        return q__
    return WeightSystem(tuple(q // lam for q in q__.qs))


def is_reflexive(q__):
    """ reduced, and every weight divides the total weight """
    total = q__.total
    return is_reduced(q__) and all(total % q == 0 for q in q__.qs)


def m_of(q__):
    """
    ``m_Q = |Q|^(d-1) / (q_0 ... q_d)`` as an exact ``Fraction``. For a
    reflexive weight system it is a positive integer, and that is
    asserted.
    """
    value = Fraction(q__.total ** (q__.dimension - 1), product(q__.qs))
    if is_reflexive(q__):
        assert value.denominator == 1, "m_Q of reflexive %s is not integral" % q__
    return value


def partition_to_weights(partition):
    """ ``(k_0, ..., k_d) -> (t'/k_0, ..., t'/k_d)`` with ``t' = lcm`` """
    lcm = lcm_all(partition.ks)
    q__ = WeightSystem.of(lcm // k for k in partition.ks)
    assert is_reflexive(q__)
    return q__


def weights_to_partition(q__):
    """
    ``(q_0, ..., q_d) -> (|Q|/q_0, ..., |Q|/q_d)`` sorted ascending.

    :raises WeightSystemError: if ``q`` is not reflexive.
    """
    if not is_reflexive(q__):
        raise WeightSystemError("%s is not a reflexive weight system" % q__)
    total = q__.total
    return UnitPartition.of(total // q for q in q__.qs)


def _check_dimension(d__):
    if not is_int(d__) or d__ < 2:
        raise WeightSystemError("dimension must be an integer >= 2, got %r" % (d__,))


def sylvester_ws(d__):
    """ Q_d = (t_d/y_0, ..., t_d/y_{d-1}, 1) """
    _check_dimension(d__)
    t_d = sylvester_t(d__)
    return WeightSystem.of([t_d // sylvester(i) for i in range(d__)] + [1])


def enlarged_sylvester_ws(d__):
    """ Q'_d = (2t_{d-1}/y_0, ..., 2t_{d-1}/y_{d-2}, 1, 1) """
    _check_dimension(d__)
    top = 2 * sylvester_t(d__ - 1)
    return WeightSystem.of([top // sylvester(i) for i in range(d__ - 1)] + [1, 1])


def reflexive_weight_systems(d__, **kwargs):
    """
    Every reflexive weight system of length d+1, in the order of the
    unit partitions they come from. Keyword arguments go to the
    partition enumerator.
    """
    for partition in enumerate_unit_partitions(d__ + 1, **kwargs):
        yield partition_to_weights(partition)
