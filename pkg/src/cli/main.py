#!/usr/bin/env python3
"""
Higman Toolkit - CLI Interface
Reproducible verifications for Higman-type finitely presented groups
"""

import logging
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

import click
from sympy import eye

from .. import __version__
from ..core.abelianize import abelian_invariants
from ..core.amalgam import (
    INSTANCES,
    blocking_element,
    check_hnn_against_model,
    check_qt_iso,
    freeness_report,
    instance_Hhalf,
    instance_J,
    run_property_suite,
)
from ..core.arithmetic import folner_square, folner_steps, is_all_ones, order_tuple_search
from ..core.config import ToolkitConfig, get_config
from ..core.constructions import (
    FAMILIES,
    bs12_presentation,
    build_family,
    heisenberg_relators,
    higman_to_gn,
    higman_to_knx,
    l_presentation,
    steinberg_base,
)
from ..core.coset_table import Strategy, enumerate_cosets
from ..core.exact_models import (
    BS12Model,
    HeisModel,
    LModel,
    affine_matrix_model,
    autothysis_conjugation_check,
    check_relators,
)
from ..core.formats import format_gap, format_presentation, parse_certificate, parse_presentation
from ..core.presentation import (
    Presentation,
    add_relators,
    check_certificate,
    check_hom_certificate,
    one_step_certificates,
)
from ..core.quotient_search import higman_order_violations, search_homs
from ..core.request_validator import RequestValidator, ValidationResult
from ..core.verification import VerificationResult, VerificationStatus, combine
from ..core.word import Alphabet
from ..core.word_parser import parse_word
from ..renderers.report_renderer import ReportRenderer


# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


class UsageFailure(click.ClickException):
    """Flag or input problem detected after parsing; exits with code 1"""
    exit_code = 1


class ExitCodeGroup(click.Group):
    """Runs commands without click's standalone handling so exit codes stay 0/1/2/3"""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            code = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.exceptions.Abort:
            ReportRenderer().render_error("Aborted")
            code = 1
        except click.ClickException as e:
            # click uses 2 for usage errors; 2 is reserved for failed verifications here
            e.show()
            code = 1
        except (ValueError, OSError) as e:
            logger.debug("Command failed", exc_info=True)
            ReportRenderer().render_error(str(e))
            code = 1
        sys.exit(code or 0)


class Session:
    """Per-invocation state handed to every command"""

    def __init__(self, config: ToolkitConfig, pretty: bool, timing: bool):
        self.config = config
        self.renderer = ReportRenderer(pretty=pretty, timing=timing)
        self.validator = RequestValidator()

    def check(self, validation: ValidationResult):
        for warning in validation.warnings:
            logger.warning(warning)
        if not validation.valid:
            raise UsageFailure(validation.error)

    def emit(self, result: VerificationResult) -> int:
        self.renderer.render(result)
        return result.exit_code


pass_session = click.make_pass_decorator(Session)


def source_options(f):
    """SOURCE is a family name, a presentation file, or '-' for stdin"""
    f = click.option('--magnus-nielsen', is_flag=True, help='Steinberg family: SL_d(Z) relators')(f)
    f = click.option('-d', 'd', type=int, default=None, help='Steinberg family: matrix size')(f)
    f = click.option('-n', 'n', type=int, default=None, help='Family index')(f)
    f = click.argument('source', required=False, default='-')(f)
    return f


def load_presentation(session: Session, source: str, n: Optional[int], d: Optional[int],
                      magnus_nielsen: bool) -> Presentation:
    if source in FAMILIES:
        session.check(session.validator.validate_family_params(source, n, d))
        return build_family(source, n=n, d=d, magnus_nielsen=magnus_nielsen or None)
    if n is not None or d is not None:
        logger.warning('-n/-d are ignored when reading a presentation file')
    if source == '-':
        return parse_presentation(click.get_text_stream('stdin').read())
    return parse_presentation(Path(source).read_text())


def parse_words(texts: Sequence[str], alphabet: Alphabet):
    return [parse_word(t, alphabet) for t in texts]


@click.group(cls=ExitCodeGroup)
@click.version_option(version=__version__)
@click.option('--debug', is_flag=True, help='Enable debug mode')
@click.option('--config', type=click.Path(dir_okay=False), help='Configuration file path')
@click.option('--pretty', is_flag=True, help='Render reports as tables')
@click.option('--timing', is_flag=True, help='Print elapsed time')
@click.pass_context
def cli(ctx, debug, config, pretty, timing):
    """Higman Toolkit - presentations, enumeration and normal-form checks"""
    settings = get_config(Path(config) if config else None)
    logging.getLogger().setLevel(logging.DEBUG if debug else settings.log_level)
    ctx.obj = Session(settings, pretty, timing)


@cli.command()
@source_options
@click.option('--format', 'fmt', type=click.Choice(['text', 'gap']), default='text', help='Output format')
@pass_session
def build(session, source, n, d, magnus_nielsen, fmt):
    """Print a family presentation in the presentation file format"""
    session.check(session.validator.validate_source(source))
    p = load_presentation(session, source, n, d, magnus_nielsen)
    session.renderer.render_text(format_gap(p) if fmt == 'gap' else format_presentation(p))
    return 0


@cli.command()
@source_options
@click.option('--format', 'fmt', type=click.Choice(['text', 'gap']), default='gap', help='Output format')
@pass_session
def emit(session, source, n, d, magnus_nielsen, fmt):
    """Emit a presentation for external systems"""
    session.check(session.validator.validate_source(source))
    p = load_presentation(session, source, n, d, magnus_nielsen)
    session.renderer.render_text(format_gap(p) if fmt == 'gap' else format_presentation(p))
    return 0


@cli.command(name='enumerate')
@source_options
@click.option('--add-relator', 'extra', multiple=True, help='Extra relator word (repeatable)')
@click.option('--subgroup', multiple=True, help='Subgroup generator word (repeatable)')
@click.option('--max-cosets', type=int, default=None, help='Live coset limit')
@click.option('--strategy', type=click.Choice(['hlt', 'felsch'], case_sensitive=False), default=None)
@click.option('--dump', is_flag=True, help='Print the coset table')
@pass_session
def enumerate_command(session, source, n, d, magnus_nielsen, extra, subgroup, max_cosets, strategy, dump):
    """Todd-Coxeter enumeration of the cosets of a subgroup"""
    settings = session.config
    max_cosets = max_cosets if max_cosets is not None else settings.max_cosets
    strategy = (strategy or settings.strategy).lower()
    session.check(session.validator.validate_source(source))
    session.check(session.validator.validate_enumeration(max_cosets, strategy))
    p = load_presentation(session, source, n, d, magnus_nielsen)
    if extra:
        p = add_relators(p, parse_words(extra, p.alphabet))
    started = time.perf_counter()
    outcome = enumerate_cosets(p, parse_words(subgroup, p.alphabet), max_cosets=max_cosets,
                               strategy=Strategy(strategy), compaction_ratio=settings.compaction_ratio)
    status = VerificationStatus.CONFIRMED if outcome.is_index else VerificationStatus.LIMIT_EXCEEDED
    result = VerificationResult('enumerate', status, elapsed=time.perf_counter() - started)
    result.add('group', p.name)
    result.add('index', outcome.index if outcome.is_index else 'limit-exceeded')
    result.add('cosets defined', outcome.cosets_defined)
    result.add('max live', outcome.max_live)
    result.add('strategy', outcome.strategy.value)
    if not outcome.is_index:
        result.message = f"hint: raise --max-cosets above {max_cosets} or try --strategy felsch"
    code = session.emit(result)
    if dump and outcome.is_index:
        session.renderer.render_text(outcome.table.dump())
    return code


@cli.command()
@source_options
@pass_session
def abelianize(session, source, n, d, magnus_nielsen):
    """Abelian invariants from the Smith normal form of the relation matrix"""
    session.check(session.validator.validate_source(source))
    p = load_presentation(session, source, n, d, magnus_nielsen)
    started = time.perf_counter()
    invariants = abelian_invariants(p)
    result = VerificationResult('abelianize', VerificationStatus.CONFIRMED, elapsed=time.perf_counter() - started)
    result.add('group', p.name)
    result.add('invariants', invariants)
    result.add('rank', invariants.rank)
    result.add('torsion', ' '.join(str(t) for t in invariants.torsion) or 'none')
    return session.emit(result)


@cli.command()
@source_options
@click.option('--degree', type=int, required=True, help='Target symmetric group degree')
@click.option('--budget', type=int, default=None, help='Search node budget')
@click.option('--workers', type=int, default=None, help='Worker processes')
@click.option('--max-witnesses', type=int, default=None, help='Nontrivial homs to print')
@pass_session
def quotients(session, source, n, d, magnus_nielsen, degree, budget, workers, max_witnesses):
    """Count homomorphisms into Sym(degree)"""
    settings = session.config
    budget = budget if budget is not None else settings.budget
    workers = workers if workers is not None else settings.workers
    max_witnesses = max_witnesses if max_witnesses is not None else settings.max_witnesses
    session.check(session.validator.validate_source(source))
    session.check(session.validator.validate_search(degree, budget, workers))
    p = load_presentation(session, source, n, d, magnus_nielsen)
    report = search_homs(p, degree, budget=budget, max_witnesses=max_witnesses, workers=workers)
    statuses = [VerificationStatus.CONFIRMED if report.complete else VerificationStatus.LIMIT_EXCEEDED]
    result = VerificationResult('quotients', VerificationStatus.CONFIRMED, elapsed=report.elapsed)
    result.add('group', p.name)
    result.add('degree', degree)
    result.add('total homs:', report.total_homs)
    result.add('nontrivial homs:', report.total_homs - 1 if report.nontrivial_found else 0)
    result.add('nodes', report.nodes)
    result.add('search', report.status.value)
    for k, witness in enumerate(report.witnesses, start=1):
        result.add(f'witness {k}', *(f'{g}={perm}' for g, perm in witness.items()))
        if source == 'higman':
            bad = higman_order_violations(witness, len(p.generators))
            if bad:
                statuses.append(VerificationStatus.FAILED)
                result.add(f'order check {k}', 'failed at', *bad)
    if not report.complete:
        result.message = f"hint: raise --budget above {budget} or add --workers"
    result.status = combine(statuses)
    return session.emit(result)


@cli.command()
@click.argument('files', nargs=-1, type=click.Path(exists=True, dir_okay=False))
@click.option('--hom', type=click.Choice(['higman-gn', 'higman-knx']), default=None, help='Built-in homomorphism')
@click.option('-n', 'n', type=int, default=None, help='Source Higman index')
@click.option('-m', 'm', type=int, default=None, help='Target G_m index')
@click.option('-d', 'd', type=int, default=3, help='higman-knx: Steinberg base size')
@click.option('--magnus-nielsen', is_flag=True, help='higman-knx: SL_d(Z) base')
@pass_session
def certify(session, files, hom, n, m, d, magnus_nielsen):
    """Check a certificate file (FILE CERT) or a built-in homomorphism"""
    if hom is None:
        if len(files) != 2:
            raise UsageFailure("certify needs FILE CERT, or --hom")
        p = parse_presentation(Path(files[0]).read_text())
        w, cert = parse_certificate(Path(files[1]).read_text(), p.alphabet)
        valid = check_certificate(p, w, cert)
        result = VerificationResult(
            'certify', VerificationStatus.CONFIRMED if valid else VerificationStatus.FAILED
        )
        result.add('group', p.name)
        result.add('word', w)
        result.add('steps', len(cert.steps))
        result.add('certificate', 'valid' if valid else 'invalid')
        return session.emit(result)

    if files:
        raise UsageFailure("--hom takes no FILE arguments")
    n = n if n is not None else 4
    session.check(session.validator.validate_family_params('higman', n, None))
    if hom == 'higman-gn':
        mapping = higman_to_gn(n, m if m is not None else 2 * n)
    else:
        mapping = higman_to_knx(steinberg_base(d, magnus_nielsen), 'E1_2', n)
    certs = one_step_certificates(mapping)
    missing = [i for i in range(len(mapping.source.relators)) if i not in certs]
    valid = not missing and check_hom_certificate(mapping, certs)
    result = VerificationResult('certify', VerificationStatus.CONFIRMED if valid else VerificationStatus.FAILED)
    result.add('source', mapping.source.name)
    result.add('target', mapping.target.name)
    result.add('relators', len(mapping.source.relators))
    if missing:
        result.add('missing certificates', *missing)
    result.add('homomorphism', 'valid' if valid else 'invalid')
    return session.emit(result)


def _model_checks(result: VerificationResult) -> bool:
    checks = []
    checks.append(('L model relators', check_relators(LModel(), l_presentation())))
    heis_ok = True
    for names in (('a', 'b', 'c'), ('h', 'z', 'v'), ('v', 'x', 'y')):
        model = HeisModel(*names)
        alphabet = model.alphabet
        p = Presentation(model.name, alphabet, tuple(heisenberg_relators(*(alphabet.gen(g) for g in names))))
        heis_ok = heis_ok and check_relators(model, p)
    checks.append(('Heisenberg relators', heis_ok))
    checks.append(('BS(1,2) relator', check_relators(BS12Model(), bs12_presentation())))
    alphabet = LModel().alphabet
    witness = parse_word('(u v^-1 u)^4', alphabet)
    checks.append(('affine model collapses (u v^-1 u)^4', affine_matrix_model(witness) == eye(3)))
    checks.append(('L model keeps (u v^-1 u)^4', not LModel().is_identity(LModel().eval(witness))))
    checks.append(('conjugation x -> y^-1', autothysis_conjugation_check()))
    for label, ok in checks:
        result.add(label, 'ok' if ok else 'FAILED')
    return all(ok for _, ok in checks)


@cli.command(name='amalgam-suite')
@click.option('--samples', type=int, default=None, help='Random words per suite')
@click.option('--max-len', type=int, default=None, help='Maximum random word length')
@click.option('--seed', type=int, default=None, help='PRNG seed')
@click.option('--qt-max-len', type=int, default=30, help='Maximum word length for the Q/T check')
@click.option('--free-len', type=int, default=8, help='Word length for the two-letter freeness check')
@click.option('--instance', 'instances', multiple=True, type=click.Choice(sorted(INSTANCES)),
              help='Restrict the normal-form suite (repeatable)')
@pass_session
def amalgam_suite(session, samples, max_len, seed, qt_max_len, free_len, instances):
    """Normal-form, freeness, Q/T and Britton checks on seeded random words"""
    settings = session.config
    samples = samples if samples is not None else settings.samples
    max_len = max_len if max_len is not None else settings.max_len
    seed = seed if seed is not None else settings.seed
    session.check(session.validator.validate_sampling(samples, max_len))
    session.check(session.validator.validate_sampling(qt_max_len, free_len))
    started = time.perf_counter()
    result = VerificationResult('amalgam-suite', VerificationStatus.CONFIRMED,
                                columns=('check', 'result', 'detail'))
    result.add('seed', seed)
    result.add('samples', samples)
    result.add('max len', max_len)
    ok = True

    for name in instances or sorted(INSTANCES):
        report = run_property_suite(INSTANCES[name](), samples, max_len, seed)
        detail = ' '.join(f'{k}={v}' for k, v in report.failures.items())
        result.add(f'suite {name}', 'ok' if report.passed else 'FAILED', detail)
        ok = ok and report.passed

    h = instance_Hhalf()
    pairs = [
        ([h.word('h@0'), h.word('x@1')], free_len),
        ([blocking_element(h), h.word('h@0'), h.word('x@1')], max(1, free_len - 2)),
    ]
    for letters, length in pairs:
        report = freeness_report(h, letters, length)
        result.add(f"free {h.name} {{{', '.join(report.letters)}}}", 'ok' if report.free else 'FAILED',
                   f'length<={length} words={report.words_checked}')
        ok = ok and report.free
    j = instance_J()
    report = freeness_report(j, [j.word('u x')], 2 * free_len)
    result.add(f'infinite order {j.name} u x', 'ok' if report.free else 'FAILED', f'powers<={2 * free_len}')
    ok = ok and report.free

    qt = check_qt_iso(samples, qt_max_len, seed)
    result.add('Q -> T', 'ok' if qt.passed else 'FAILED',
               f'violations={len(qt.violations)} identities={qt.identity_samples}')
    ok = ok and qt.passed

    hnn = check_hnn_against_model(samples, max_len, seed)
    result.add('Britton vs affine', 'ok' if hnn.passed else 'FAILED',
               f'mismatches={len(hnn.mismatches)} trivial={hnn.trivial_samples}')
    ok = ok and hnn.passed

    ok = _model_checks(result) and ok
    result.status = VerificationStatus.CONFIRMED if ok else VerificationStatus.FAILED
    result.elapsed = time.perf_counter() - started
    return session.emit(result)


@cli.command(name='lemma-arith')
@click.option('--n', 'n', type=int, default=4, help='Cycle length')
@click.option('--bound', type=int, default=100000, help='Upper bound for each order')
@pass_session
def lemma_arith(session, n, bound):
    """Cyclic tuples with r_j | 2^r_(j-1) - 1; only all-ones is expected"""
    session.check(session.validator.validate_arithmetic(n, bound))
    started = time.perf_counter()
    cycles = order_tuple_search(n, bound)
    ok = is_all_ones(cycles)
    result = VerificationResult('lemma-arith', VerificationStatus.CONFIRMED if ok else VerificationStatus.FAILED,
                                elapsed=time.perf_counter() - started)
    result.add('n', n)
    result.add('bound', bound)
    if ok:
        result.add('cycles found:', len(cycles), '(all-ones)')
    else:
        result.add('cycles found:', len(cycles))
    for cycle in [] if ok else cycles:
        result.add('cycle', *cycle)
    return session.emit(result)


@cli.command()
@pass_session
def folner(session):
    """Exact integer check that the Folner constant beats 1/6"""
    check = folner_steps()
    result = VerificationResult('folner', VerificationStatus.CONFIRMED if check.passed else VerificationStatus.FAILED,
                                columns=('comparison', 'lhs', 'rhs'))
    for label, lhs, rhs in check.steps:
        result.add(label, lhs, rhs)
    num, den = folner_square()
    result.add('bound squared', f'{num}/{den}')
    return session.emit(result)


def main():
    cli()


if __name__ == '__main__':
    main()
