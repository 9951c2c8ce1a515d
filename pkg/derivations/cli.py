"""
Command line: build bases and fields, dump Bernoulli polynomials and
arrangements, run verification suites.

Exit codes: 0 success, 2 well-formed run with a negative verdict, 1 usage
or parameter error.
"""

import argparse
import json
import logging
import os
import sys
import tempfile
from typing import Callable, Dict, List, Optional, Tuple

from derivations import SCHEMA, __version__, configure_logging
from derivations.arrangement import braid, catalan, catalan_cone, shi, shi_cone
from derivations.basis_builder import BasisKind, FieldFamily, FieldFamilySpec, build_basis, homogenize
from derivations.config import Config
from derivations.discrete_calc import BernoulliTable
from derivations.errors import DerivationsError, UsageError
from derivations.verifier import run_identities, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NEGATIVE = 2

# (document, text rendering, verdict)
Outcome = Tuple[dict, str, bool]


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises UsageError instead of exiting"""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument('--format', choices=['json', 'text'], default='json')
    common.add_argument('--output', help='write to this file instead of standard output')

    sized = ArgumentParser(add_help=False)
    sized.add_argument('--l', type=int, required=True, help='ambient dimension')
    sized.add_argument('--m', type=int, required=True, help='multiplicity parameter')

    parser = ArgumentParser(prog='derivations', description=__doc__.strip().splitlines()[0])
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest='command', required=True, parser_class=ArgumentParser)

    kinds = [kind.value for kind in BasisKind]
    basis = commands.add_parser('basis', parents=[common, sized], help='emit a basis')
    basis.add_argument('kind', choices=kinds)

    verify = commands.add_parser('verify', parents=[common, sized], help='run the verification suite for a basis')
    verify.add_argument('kind', choices=kinds)

    commands.add_parser('identities', parents=[common, sized], help='check the primitive-derivation identities')

    bernoulli = commands.add_parser('bernoulli', parents=[common], help='emit B_0..B_N')
    bernoulli.add_argument('--n', type=int, required=True)

    field = commands.add_parser('field', parents=[common, sized], help='emit one field')
    field.add_argument('family', choices=[family.value for family in FieldFamily])
    field.add_argument('--k', type=int, required=True)
    field.add_argument('--homogenize', action='store_true')

    arrangement = commands.add_parser('arrangement', parents=[common, sized], help='emit an arrangement')
    arrangement.add_argument('kind', choices=['cat', 'shi', 'braid'])
    arrangement.add_argument('--affine', action='store_true', help='cat/shi without coning')
    return parser


def _numbered(lines: List[str]) -> str:
    return '\n'.join(f"[{i}] {line}" for i, line in enumerate(lines))


def handle_basis(args) -> Outcome:
    fields = build_basis(args.kind, args.l, args.m)
    document = {
        'command': 'basis',
        'kind': args.kind,
        'l': args.l,
        'm': args.m,
        'fields': [f.to_dict() for f in fields],
    }
    return document, _numbered([f.to_text() for f in fields]), True


def handle_verify(args) -> Outcome:
    report = run_suite(args.kind, args.l, args.m)
    document = {'command': 'verify', 'kind': args.kind, 'l': args.l, 'm': args.m, 'report': report.to_dict()}
    return document, report.to_text(), report.overall


def handle_identities(args) -> Outcome:
    report = run_identities(args.l, args.m)
    document = {'command': 'identities', 'l': args.l, 'm': args.m, 'report': report.to_dict()}
    return document, report.to_text(), report.overall


def handle_bernoulli(args) -> Outcome:
    table = BernoulliTable.build(args.n)
    document = {'command': 'bernoulli', 'n': args.n, 'polynomials': table.to_list()}
    text = '\n'.join(f"B_{n} = {p.to_text()}" for n, p in enumerate(table.entries))
    return document, text, True


def handle_field(args) -> Outcome:
    delta = FieldFamilySpec(FieldFamily(args.family), args.l, args.m, args.k).build()
    if args.homogenize:
        delta = homogenize(delta)
    document = {
        'command': 'field',
        'family': args.family,
        'l': args.l,
        'm': args.m,
        'k': args.k,
        'homogenized': args.homogenize,
        'field': delta.to_dict(),
    }
    return document, delta.to_text(), True


def handle_arrangement(args) -> Outcome:
    builders = {
        'cat': catalan if args.affine else catalan_cone,
        'shi': shi if args.affine else shi_cone,
        'braid': braid,
    }
    A = builders[args.kind](args.l, args.m)
    document = {'command': 'arrangement', 'arrangement': A.to_dict()}
    text = '\n'.join([A.label] + [f"{h.form.to_text()} (mult {h.multiplicity})" for h in A.hyperplanes])
    return document, text, True


HANDLERS: Dict[str, Callable[[argparse.Namespace], Outcome]] = {
    'basis': handle_basis,
    'verify': handle_verify,
    'identities': handle_identities,
    'bernoulli': handle_bernoulli,
    'field': handle_field,
    'arrangement': handle_arrangement,
}


def render(document: dict, text: str, fmt: str) -> str:
    if fmt == 'text':
        return text + '\n'
    return json.dumps({'schema': SCHEMA, **document}, indent=2) + '\n'


def write_output(content: str, path: Optional[str]) -> None:
    """Write to stdout, or atomically replace the file at path"""
    if not path:
        sys.stdout.write(content)
        sys.stdout.flush()
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, temp_path = tempfile.mkstemp(dir=directory, prefix='.derivations-', suffix='.tmp')
    try:
        with os.fdopen(fd, 'w', encoding='utf-8') as handle:
            handle.write(content)
        os.replace(temp_path, path)
    except OSError:
        if os.path.exists(temp_path):
            os.unlink(temp_path)
        raise


def run(argv: Optional[List[str]] = None) -> int:
    """Parse argv, dispatch to a handler and return the exit code"""
    try:
        config = Config.from_env()
    except DerivationsError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    configure_logging(config.log_level)

    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        logger.error(f"Usage error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as e:
        # --help and --version
        return e.code if isinstance(e.code, int) else EXIT_OK

    handler = HANDLERS.get(args.command)
    if not handler:
        print(f"error: unknown command {args.command}", file=sys.stderr)
        return EXIT_ERROR

    logger.info(f"Running {args.command}")
    try:
        document, text, verdict = handler(args)
        write_output(render(document, text, args.format), args.output)
    except DerivationsError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as e:
        logger.error(f"Could not write output: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    return EXIT_OK if verdict else EXIT_NEGATIVE


def main() -> None:
    sys.exit(run(sys.argv[1:]))
