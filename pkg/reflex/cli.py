"""
Command-line front end of the reflex package.

Results go to standard output as JSON lines (or CSV with ``--format
csv``); warnings, progress bars and error messages go to standard
error. Exit status: 0 when everything ran and every verdict holds, 1 on
usage, input or I/O errors, 2 when a verdict fails.
"""
import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass

from ._version import __version__
from . import classify, numthy, simplex as sx, verify
from .utils import (ReflexError, MAX_CANONICAL_DIMENSION, MAX_CLASSIFY_DIMENSION,
                    MAX_PARTITION_LENGTH, OVERRIDE_CLASSIFY_DIMENSION, install_warning_format,
                    parse_int, parse_int_list)
from .weights import WeightSystem, partition_to_weights, reduce

EXIT_OK, EXIT_ERROR, EXIT_FAILED = 0, 1, 2
ENV_MAX_PARTITION_LEN = "REFLEX_MAX_PARTITION_LEN"
ENV_WORKERS = "REFLEX_WORKERS"

THEOREMS = ("A", "B", "C", "bracket", "volume", "weights", "kprop", "properties", "all")

export_csv = classify.export_csv


class UsageError(ReflexError):
    """ bad command line or environment """


class _Parser(argparse.ArgumentParser):
    """ argparse with exit status 1 on usage errors """

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, "%s: error: %s\n" % (self.prog, message))


@dataclass
class RunConfig(object):                                            #pylint: disable=useless-object-inheritance,too-many-instance-attributes
    """ Everything a command needs, validated before any heavy loop """
    command: str
    number: int = None
    argument: str = None
    theorem: str = None
    max_partition_length: int = MAX_PARTITION_LENGTH
    allow_high_dimension: bool = False
    output: str = None
    database: str = None
    fmt: str = "json"
    workers: int = 1
    progress: bool = False
    debug: bool = False
    cruc: int = None
    vardi: int = None

    @property
    def allow_long(self):
        """ partition lengths above the built-in default were permitted """
        return self.max_partition_length > MAX_PARTITION_LENGTH

    def enumeration_kwargs(self):
        """ keyword arguments for the partition enumerator """
        return {"allow_long": self.allow_long, "workers": self.workers,
                "progress": self.progress}

    def check_length(self, n__):
        """
        :raises UsageError: if ``n`` exceeds the configured partition length.
        """
        if n__ < 1:
            raise UsageError("partition length must be at least 1, got %d" % n__)
        if n__ > self.max_partition_length:
            raise UsageError("partition length %d exceeds the limit %d (raise it with "
                             "--max-partition-len or %s)"
                             % (n__, self.max_partition_length, ENV_MAX_PARTITION_LEN))


def _env_int(environ, name, minimum):
    text = environ.get(name)
    if text is None or not text.strip():
        return None
    try:
        value = parse_int(text, name)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if value < minimum:
        raise UsageError("%s must be at least %d, got %d" % (name, minimum, value))
    return value


def build_config(args, environ=None):
    """
    Merge parsed arguments with the environment; flags win over
    ``REFLEX_MAX_PARTITION_LEN`` and ``REFLEX_WORKERS``, which win over
    the defaults.

    :raises UsageError: on out-of-range limits.
    """
    environ = os.environ if environ is None else environ
    max_len = _env_int(environ, ENV_MAX_PARTITION_LEN, 1)
    workers = _env_int(environ, ENV_WORKERS, 0)
    if getattr(args, "max_partition_len", None) is not None:
        max_len = args.max_partition_len
    if getattr(args, "workers", None) is not None:
        workers = args.workers
    if max_len is None:
        max_len = MAX_PARTITION_LENGTH
    if workers is None:
        workers = 1
    if max_len < 1:
        raise UsageError("--max-partition-len must be at least 1")
    if workers < 0:
        raise UsageError("--workers must not be negative")
    if workers == 0:
        workers = os.cpu_count() or 1

    config = RunConfig(command=args.command,
                       number=getattr(args, "number", None),
                       argument=getattr(args, "argument", None),
                       theorem=getattr(args, "theorem", None),
                       max_partition_length=max_len,
                       allow_high_dimension=getattr(args, "allow_d5", False),
                       output=getattr(args, "out", None),
                       database=getattr(args, "db", None),
                       fmt=args.format,
                       workers=workers,
                       progress=not args.quiet and sys.stderr.isatty(),
                       debug=args.debug,
                       cruc=getattr(args, "cruc", None),
                       vardi=getattr(args, "vardi", None))

    if config.number is not None and config.number < 0:
        raise UsageError("expected a non-negative integer, got %d" % config.number)
    if config.command in ("classify", "verify"):
        limit = OVERRIDE_CLASSIFY_DIMENSION if config.allow_high_dimension \
            else MAX_CLASSIFY_DIMENSION
        if not 2 <= config.number <= limit:
            raise UsageError("dimension must be in [2, %d], got %d" % (limit, config.number))
    if config.command == "partitions":
        config.check_length(config.number)
    if config.command == "sweep-kprop":
        if config.number < 2:
            raise UsageError("sweep length must be at least 2, got %d" % config.number)
        config.check_length(config.number)
    if config.cruc is not None and config.cruc < 4:
        raise UsageError("--cruc needs a value of at least 4")
    if config.vardi is not None and not 0 <= config.vardi <= 6:
        raise UsageError("--vardi needs a value in [0, 6]")
    return config


def _emit(obj, out):
    out.write(json.dumps(obj) + "\n")


def _emit_rows(header, rows, out):
    writer = csv.writer(out)
    writer.writerow(header)
    writer.writerows(rows)


def cmd_sylvester(config, out):
    """ y_n and t_n for n = 0..N """
    rows = [(n__, numthy.sylvester(n__), numthy.sylvester_t(n__))
            for n__ in range(config.number + 1)]
    if config.fmt == "csv":
        _emit_rows(["n", "y", "t"], [[str(x) for x in row] for row in rows], out)
    else:
        for n__, y__, t__ in rows:
            _emit({"n": n__, "y": str(y__), "t": str(t__)}, out)
    return EXIT_OK


def cmd_partitions(config, out):
    """ every unit partition of length N """
    parts = numthy.enumerate_unit_partitions(config.number, **config.enumeration_kwargs())
    if config.fmt == "csv":
        _emit_rows(["partition"], (["|".join(str(k) for k in p.ks)] for p in parts), out)
    else:
        for part in parts:
            _emit(part.to_json(), out)
    return EXIT_OK


def cmd_weights_of(config, out):
    """ reflexive weight system of a unit partition """
    part = numthy.UnitPartition.of(parse_int_list(config.argument))
    _emit(partition_to_weights(part).to_json(), out)
    return EXIT_OK


def cmd_build_sq(config, out):
    """ S_Q for a reflexive weight system given as a list """
    q__ = WeightSystem.of(parse_int_list(config.argument))
    _emit(sx.build_SQ(q__).to_json(), out)
    return EXIT_OK


def cmd_simplex_info(config, out):
    """ invariants of the simplex stored as JSON in FILE """
    with open(config.argument, "r", encoding="utf-8") as inp:
        try:
            data = json.load(inp)
        except json.JSONDecodeError as exc:
            raise UsageError("%s: invalid JSON: %s" % (config.argument, exc.msg)) from exc
    simplex = sx.LatticeSimplex.from_json(data)
    q_p = sx.weight_system_of(simplex)
    reflexive = sx.is_reflexive(simplex)
    edges = sx.edge_lattice_counts(simplex)
    info = {"dim": simplex.dim,
            "weights": [str(q) for q in q_p.qs],
            "reduced": [str(q) for q in reduce(q_p).qs],
            "factor": str(sx.factor_of(simplex)),
            "volume": str(sx.volume(simplex)),
            "reflexive": reflexive,
            "points": str(sx.lattice_points(simplex, method="auto").count),
            "maxEdge": str(edges.max_points),
            "edges": [str(c) for c in edges.multiset()],
            "dual": [[str(x) for x in eta] for eta in sx.dual(simplex).vertices]}
    if simplex.dim <= MAX_CANONICAL_DIMENSION:
        info["canonical"] = [[str(x) for x in v] for v in sx.canonical_form(simplex)]
    _emit(info, out)
    return EXIT_OK


def _classify(config):
    return classify.classify_dimension(config.number,
                                       allow_high_dimension=config.allow_high_dimension,
                                       workers=config.workers, progress=config.progress,
                                       debug=config.debug)


def cmd_classify(config, out):
    """ all d-dimensional reflexive simplices """
    records = _classify(config)
    if config.fmt == "csv":
        export_csv(records, config.output or out)
    elif config.output:
        classify.save_classification(records, config.output)
    else:
        for rec in records:
            out.write(json.dumps(rec.to_json(), separators=(",", ":")) + "\n")
    return EXIT_OK


def _verdicts(config, records):
    d__ = config.number
    kwargs = config.enumeration_kwargs()
    theorem = config.theorem
    if theorem == "kprop":
        config.check_length(d__ + 1)
        return [verify.verify_kprop(d__ + 1, **kwargs)]
    if theorem == "weights":
        return [verify.verify_weight_bound(d__, **kwargs)]
    if theorem == "all":
        config.check_length(d__ + 1)
        return verify.verify_all(d__, records, **kwargs)
    single = {"A": verify.verify_theorem_A,
              "B": verify.verify_theorem_B,
              "C": verify.verify_theorem_C,
              "bracket": verify.verify_corollary_bracket,
              "volume": verify.verify_volume_bound}
    if theorem == "properties":
        return [verify.verify_record_properties(records)]
    return [single[theorem](d__, records)]


def cmd_verify(config, out):
    """ replay one statement, or all, in dimension D """
    records = None
    if config.theorem not in ("kprop", "weights"):
        if config.database:
            records = classify.load_classification(config.database)
        else:
            records = _classify(config)
    verdicts = _verdicts(config, records)
    if config.fmt == "csv":
        _emit_rows(["theorem", "d", "bound", "observed", "holds", "unique"],
                   ([v.theorem, v.d, v.bound, v.observed, str(v.holds).lower(),
                     str(v.unique).lower()] for v in verdicts), out)
    else:
        for verdict in verdicts:
            _emit(verdict.to_json(), out)
    return EXIT_OK if all(v.holds for v in verdicts) else EXIT_FAILED


def cmd_sweep_kprop(config, out):
    """ unit-partition sweeps of length N """
    kwargs = config.enumeration_kwargs()
    n__ = config.number
    sweeps = [numthy.kprop_sweep(n__, **kwargs),
              numthy.chain_sweep(n__, **kwargs),
              numthy.curtiss_corollary_sweep(n__, **kwargs)]
    if config.cruc is not None:
        sweeps.append(numthy.cruc_inequality_check(config.cruc))
    if config.vardi is not None:
        sweeps.append(numthy.vardi_floor_check(config.vardi))
    if config.fmt == "csv":
        _emit_rows(["statement", "n", "holds"],
                   ([s.to_json()["statement"], s.to_json()["n"], str(s.holds).lower()]
                    for s in sweeps), out)
    else:
        for sweep in sweeps:
            _emit(sweep.to_json(), out)
    return EXIT_OK if all(s.holds for s in sweeps) else EXIT_FAILED


COMMANDS = {"sylvester": cmd_sylvester,
            "partitions": cmd_partitions,
            "weights-of": cmd_weights_of,
            "build-sq": cmd_build_sq,
            "simplex-info": cmd_simplex_info,
            "classify": cmd_classify,
            "verify": cmd_verify,
            "sweep-kprop": cmd_sweep_kprop}


def _int_arg(text):
    try:
        return parse_int(text, "argument")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def make_parser():
    """ the argument parser; every subcommand lists its defaults in --help """
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json",
                        help="output format")
    common.add_argument("--workers", type=_int_arg, default=None,
                        help="worker processes, 0 = one per CPU (default: $%s or 1)"
                        % ENV_WORKERS)
    common.add_argument("--max-partition-len", type=_int_arg, default=None,
                        help="longest unit partition to enumerate (default: $%s or %d)"
                        % (ENV_MAX_PARTITION_LEN, MAX_PARTITION_LENGTH))
    common.add_argument("-q", "--quiet", action="store_true", help="no progress bars")
    common.add_argument("--debug", action="store_true",
                        help="per weight system counts on stderr")

    parser = _Parser(prog="reflex",
                     description="Reflexive simplices, unit partitions and weight systems",
                     epilog="Version %s" % __version__)
    parser.add_argument("-v", "--version", action="version",
                        version="%(prog)s " + __version__)
    subparsers = parser.add_subparsers(title="Commands", dest="command")
    subparsers.required = True
    fmt = argparse.ArgumentDefaultsHelpFormatter

    def add(name, help_text):
        return subparsers.add_parser(name, parents=[common], help=help_text,
                                     description=help_text, formatter_class=fmt)

    sub = add("sylvester", "Sylvester numbers y_0..y_N and t_n = y_n - 1")
    sub.add_argument("number", metavar="N", type=_int_arg, help="last index")

    sub = add("partitions", "every unit partition of length N")
    sub.add_argument("number", metavar="N", type=_int_arg, help="partition length")

    sub = add("weights-of", "reflexive weight system of a unit partition")
    sub.add_argument("argument", metavar="PARTITION", help='e.g. "2,3,6"')

    sub = add("build-sq", "the simplex S_Q of a reflexive weight system")
    sub.add_argument("argument", metavar="WEIGHTS", help='e.g. "3,2,1"')

    sub = add("simplex-info", "invariants of a simplex stored as JSON")
    sub.add_argument("argument", metavar="FILE", help='{"dim": d, "vertices": [[...], ...]}')

    sub = add("classify", "all reflexive simplices of dimension D")
    sub.add_argument("number", metavar="D", type=_int_arg, help="dimension")
    sub.add_argument("--out", default=None, help="write to this file instead of stdout")
    sub.add_argument("--allow-d5", action="store_true",
                     help="permit d = %d" % OVERRIDE_CLASSIFY_DIMENSION)

    sub = add("verify", "check a statement against the classification of dimension D")
    sub.add_argument("theorem", choices=THEOREMS, help="statement to check")
    sub.add_argument("number", metavar="D", type=_int_arg, help="dimension")
    sub.add_argument("--db", default=None,
                     help="classification JSONL; classified on the fly if omitted")
    sub.add_argument("--allow-d5", action="store_true",
                     help="permit d = %d" % OVERRIDE_CLASSIFY_DIMENSION)

    sub = add("sweep-kprop", "unit-partition bounds over every partition of length N")
    sub.add_argument("number", metavar="N", type=_int_arg, help="partition length")
    sub.add_argument("--cruc", type=_int_arg, default=None, metavar="N_MAX",
                     help="also check the Sylvester power inequality up to N_MAX")
    sub.add_argument("--vardi", type=_int_arg, default=None, metavar="N_MAX",
                     help="also check the floor formula for y_n up to N_MAX")
    return parser


def main(argv=None, out=None, environ=None):
    """
    :return: exit status of the program (``0`` success, ``1`` error,
        ``2`` failed verdict).
    """
    out = sys.stdout if out is None else out
    args = make_parser().parse_args(argv)
    install_warning_format(sys.stderr)

    try:
        config = build_config(args, environ)
        return COMMANDS[config.command](config, out)
    except (ReflexError, ValueError, OSError) as exc:
        print("reflex %s: %s" % (args.command, exc), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
