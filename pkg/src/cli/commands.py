#!/usr/bin/env python3
"""
Flag-Variety Command Line
Every core operation as a subcommand with text or JSON output
"""
import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from pydantic import ValidationError

from config.settings import settings
from src.arith.hodge_riemann import hodge_riemann_matrix
from src.arith.slope_lattice import (
    density,
    k0_report,
    line_bundle_name,
    nef_solve,
    pic0_generators,
    pic0_index,
    polystable_bundle,
    solve_slope,
    tau,
    tau_factorization,
)
from src.cli.flag_spec import (
    CLIParseError,
    CommandResponse,
    FlagSpec,
    parse_bundle_for,
    parse_rational_list,
    parse_target,
)
from src.common.errors import BoundaryAmbiguous, FlagVarietyError
from src.common.exact import GaussianRational, format_fraction, format_float
from src.dhym.central_charge import (
    ChargeSource,
    Curve,
    central_charge,
    cjy_ratio,
    curve_phase,
    phase_defect,
)
from src.dhym.phase_angles import classify_window, lifted_angle
from src.flag.parabolic_geometry import (
    InvariantClass,
    anticanonical,
    degree,
    volume,
)
from src.rootsys.cartan_types import parse_cartan_type
from src.rootsys.root_system import WeightVector, build_root_system
from src.stability.slope_stability import (
    arg_dominance,
    hym_constant,
    mu_hat,
    restriction_semistable,
    slope,
    split_stability,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE_ERROR = 1
EXIT_DOMAIN_ERROR = 2
EXIT_BOUNDARY_AMBIGUOUS = 3


class CLIArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports problems as exceptions instead of exiting"""

    def error(self, message):
        raise CLIParseError(message)


def to_exact(value: Any) -> Any:
    """Rationals as "p/q", Gaussian rationals as {re, im}, containers recursively"""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, GaussianRational):
        return {'re': format_fraction(value.re), 'im': format_fraction(value.im)}
    if isinstance(value, WeightVector):
        return [format_fraction(c) for c in value.coords]
    if isinstance(value, InvariantClass):
        return to_exact(value.weight)
    if isinstance(value, dict):
        return {str(k): to_exact(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_exact(v) for v in value]
    raise TypeError(f"no exact form for {type(value).__name__}")


def _flag_and_omega(args):
    parse_cartan_type(args.type)
    request = FlagSpec(type_label=args.type, parabolic=args.parabolic, omega=getattr(args, 'omega', None))
    flag = request.build_flag()
    omega = request.kahler_class(flag) if getattr(args, 'omega', None) is not None else None
    return request, flag, omega


def _coords(flag, cls: InvariantClass) -> List[Fraction]:
    return list(flag.coordinates(cls))


def _pivot(flag, gamma: Optional[int]) -> Optional[int]:
    return None if gamma is None else gamma - 1


def _source(flag, args) -> ChargeSource:
    if getattr(args, 'bundle', None):
        source = ChargeSource.from_bundle(parse_bundle_for(flag, args.bundle))
    elif getattr(args, 'psi', None):
        source = ChargeSource(flag.invariant_class(parse_rational_list(args.psi)), 1)
    else:
        raise CLIParseError("one of --psi or --bundle is required")
    if getattr(args, 'rank', None) is not None:
        source = ChargeSource(source.cls, args.rank)
    return source


# Command Handlers

def cmd_roots(args) -> CommandResponse:
    series, rank = parse_cartan_type(args.type)
    rs = build_root_system(series, rank)
    roots = [
        {
            'label': beta.label(),
            'coeffs': list(beta.coeffs),
            'height': beta.height,
            'normsq': beta.normsq,
            'weight_coords': rs.root_to_weight_coords(beta),
            'coroot': list(beta.coroot),
        }
        for beta in rs.positive_roots
    ]
    return CommandResponse(
        command='roots',
        inputs={'type': rs.label},
        exact={'roots': to_exact(roots), 'symmetrizer': to_exact(list(rs.datum.symmetrizer))},
        verdicts={'count': len(roots)},
    )


def cmd_flag_info(args) -> CommandResponse:
    request, flag, _ = _flag_and_omega(args)
    return CommandResponse(
        command='flag-info',
        inputs=request.describe(),
        exact={
            'phi': [beta.label() for beta in flag.phi],
            'delta_p': to_exact(flag.delta_p),
            'anticanonical': to_exact(_coords(flag, anticanonical(flag).summands[0])),
        },
        verdicts={'dimension': flag.dimension, 'picard_number': flag.picard_number},
    )


def cmd_volume(args) -> CommandResponse:
    request, flag, omega = _flag_and_omega(args)
    vol = volume(flag, omega)
    return CommandResponse(command='volume', inputs=request.describe(),
                           exact={'volume': to_exact(vol)}, float_values={'volume': float(vol)})


def cmd_degree(args) -> CommandResponse:
    request, flag, omega = _flag_and_omega(args)
    bundle = parse_bundle_for(flag, args.bundle)
    value = degree(flag, omega, bundle)
    return CommandResponse(command='degree', inputs={**request.describe(), 'bundle': args.bundle},
                           exact={'degree': to_exact(value)}, float_values={'degree': float(value)})


def cmd_phase(args) -> CommandResponse:
    request, flag, omega = _flag_and_omega(args)
    psi = flag.invariant_class(parse_rational_list(args.psi))
    report = lifted_angle(flag, omega, psi)
    response = CommandResponse(
        command='phase',
        inputs={**request.describe(), 'psi': args.psi},
        exact={'eigenvalues': to_exact(list(report.eigenvalues)), 'modulus_sq': to_exact(report.modulus_sq)},
        float_values={
            'theta_hat': report.theta_hat,
            'boundary_distance': report.boundary_distance,
            'calibration_modulus': report.calibration_modulus,
        },
        verdicts={'n': report.n, 'window': None if report.window is None else report.window.value},
    )
    if report.window is None:
        raise BoundaryAmbiguousResponse(response)
    return response


def cmd_classify(args) -> CommandResponse:
    verdict = classify_window(args.theta, args.n)
    return CommandResponse(
        command='classify',
        inputs={'theta': args.theta, 'n': args.n},
        float_values={'boundary_distance': verdict.boundary_distance},
        verdicts={'window': verdict.window.value, 'supercritical': verdict.window.is_supercritical},
    )


def cmd_charge(args) -> CommandResponse:
    request, flag, omega = _flag_and_omega(args)
    source = _source(flag, args)
    target = parse_target(flag, args.target)
    charge = central_charge(flag, omega, source, target)
    return CommandResponse(
        command='charge',
        inputs={**request.describe(), 'source': to_exact(source.cls), 'rank': source.rank, 'target': target.describe()},
        exact={'charge': to_exact(charge.value), 'modulus_sq': to_exact(charge.value.abs_sq())},
        float_values={'re': float(charge.value.re), 'im': float(charge.value.im), 'arg': charge.arg},
    )


def cmd_cjy(args) -> CommandResponse:
    request, flag, omega = _flag_and_omega(args)
    source = _source(flag, args)
    target = parse_target(flag, args.target)
    result = cjy_ratio(flag, omega, source, target)
    return CommandResponse(
        command='cjy',
        inputs={**request.describe(), 'source': to_exact(source.cls), 'target': target.describe()},
        exact={'charge_x': to_exact(result.charge_x), 'charge_y': to_exact(result.charge_y)},
        float_values={'ratio_re': result.ratio.real, 'ratio_im': result.ratio.imag},
        verdicts={'im_sign': result.sign},
    )


def cmd_defect(args) -> CommandResponse:
    request, flag, omega = _flag_and_omega(args)
    psi = flag.invariant_class(parse_rational_list(args.psi))
    target = parse_target(flag, args.target)
    value = phase_defect(flag, omega, psi, target)
    return CommandResponse(
        command='defect',
        inputs={**request.describe(), 'psi': args.psi, 'target': target.describe()},
        float_values={'defect': value},
        verdicts={'positive': value > 0},
    )


def _bundle_command(name: str, compute: Callable) -> Callable:
    def handler(args) -> CommandResponse:
        request, flag, omega = _flag_and_omega(args)
        bundle = parse_bundle_for(flag, args.bundle)
        response = CommandResponse(command=name, inputs={**request.describe(), 'bundle': args.bundle})
        compute(flag, omega, bundle, response)
        return response
    return handler


def _fill_slope(flag, omega, bundle, response):
    value = slope(flag, omega, bundle)
    response.exact['slope'] = to_exact(value)
    response.float_values['slope'] = float(value)


def _fill_muhat(flag, omega, bundle, response):
    value = mu_hat(flag, omega, bundle)
    response.exact['mu_hat'] = to_exact(value)
    response.float_values['mu_hat'] = float(value)


def _fill_stability(flag, omega, bundle, response):
    verdict = split_stability(flag, omega, bundle)
    restriction = restriction_semistable(flag, bundle)
    response.exact['slope'] = to_exact(verdict.slope)
    response.exact['restriction_degrees'] = {
        f"α{a + 1}": list(d) for a, d in restriction.degrees.items()
    }
    if verdict.witness is not None:
        response.exact['witness'] = [i + 1 for i in verdict.witness]
        response.exact['witness_slope'] = to_exact(verdict.witness_slope)
    response.verdicts['verdict'] = verdict.verdict.value
    response.verdicts['restriction_semistable'] = restriction.semistable


def _fill_hym(flag, omega, bundle, response):
    constant = hym_constant(flag, omega, bundle)
    response.exact['summand_values_pi'] = to_exact(list(constant.summand_values))
    if constant.defined:
        response.exact['constant_pi'] = to_exact(constant.pi_multiple)
        response.exact['lambda'] = to_exact(constant.lambda_value)
        response.float_values['constant'] = float(constant.pi_multiple) * np.pi
    response.verdicts['defined'] = constant.defined


def cmd_dominance(args) -> CommandResponse:
    request, flag, omega = _flag_and_omega(args)
    first = parse_bundle_for(flag, args.bundle)
    second = parse_bundle_for(flag, args.other)
    return CommandResponse(
        command='dominance',
        inputs={**request.describe(), 'bundle': args.bundle, 'other': args.other},
        verdicts={'dominates': arg_dominance(flag, omega, first, second)},
    )


def cmd_hr_matrix(args) -> CommandResponse:
    request, flag, omega = _flag_and_omega(args)
    matrix = hodge_riemann_matrix(flag, omega)
    return CommandResponse(
        command='hr-matrix',
        inputs=request.describe(),
        exact={'indices': [a + 1 for a in matrix.indices], 'entries': to_exact(matrix.entries)},
        verdicts={'integral': matrix.integral},
    )


def cmd_tau(args) -> CommandResponse:
    request, flag, omega = _flag_and_omega(args)
    t = tau(flag, omega)
    return CommandResponse(
        command='tau', inputs=request.describe(),
        exact={'tau': to_exact(t), 'factorization': to_exact(tau_factorization(flag, omega))},
    )


def cmd_solve_slope(args) -> CommandResponse:
    request, flag, omega = _flag_and_omega(args)
    solution = solve_slope(flag, omega, args.m0)
    return CommandResponse(
        command='solve-slope', inputs={**request.describe(), 'm0': args.m0},
        exact={'line_bundle': to_exact(_coords(flag, solution)), 'name': line_bundle_name(flag, solution)},
    )


def cmd_pic0(args) -> CommandResponse:
    request, flag, omega = _flag_and_omega(args)
    gamma = _pivot(flag, args.gamma)
    basis = pic0_generators(flag, omega, gamma)
    return CommandResponse(
        command='pic0', inputs={**request.describe(), 'gamma': args.gamma},
        exact={
            'generators': [to_exact(_coords(flag, xi)) for xi in basis],
            'names': [line_bundle_name(flag, xi) for xi in basis],
            'index': to_exact(pic0_index(flag, omega, gamma)),
        },
    )


def cmd_density(args) -> CommandResponse:
    request, flag, omega = _flag_and_omega(args)
    report = density(flag, omega, args.n)
    return CommandResponse(
        command='density', inputs={**request.describe(), 'n': args.n},
        exact={'count': to_exact(report.count), 'limit': to_exact(report.limit), 'bound': to_exact(report.bound)},
        float_values={'gap': float(report.gap)},
    )


def cmd_nef_solve(args) -> CommandResponse:
    request, flag, omega = _flag_and_omega(args)
    result = nef_solve(flag, omega, args.m0, _pivot(flag, args.gamma))
    exact: Dict[str, Any] = {'guarantee_bound': to_exact(result.guarantee_bound)}
    if result.found:
        exact['line_bundle'] = to_exact(_coords(flag, result.solution))
    return CommandResponse(
        command='nef-solve', inputs={**request.describe(), 'm0': args.m0, 'gamma': args.gamma},
        exact=exact,
        verdicts={'found': result.found, 'guaranteed': result.guaranteed, 'truncated': result.truncated},
    )


def cmd_k0(args) -> CommandResponse:
    request, flag, omega = _flag_and_omega(args)
    report = k0_report(flag, omega, _pivot(flag, args.gamma))
    return CommandResponse(
        command='k0', inputs={**request.describe(), 'gamma': args.gamma},
        exact={
            'tau': to_exact(report.tau),
            'pic0_basis': [to_exact(_coords(flag, xi)) for xi in report.pic0_basis],
            'pic0_index': to_exact(report.pic0_index),
            'statement': report.statement,
        },
    )


def cmd_polystable(args) -> CommandResponse:
    request, flag, omega = _flag_and_omega(args)
    bundle = polystable_bundle(flag, omega, args.m0, args.rank, _pivot(flag, args.gamma))
    return CommandResponse(
        command='polystable', inputs={**request.describe(), 'm0': args.m0, 'rank': args.rank},
        exact={'summands': [to_exact(_coords(flag, s)) for s in bundle.summands]},
        verdicts={'verdict': split_stability(flag, omega, bundle).verdict.value},
    )


def cmd_curves(args) -> CommandResponse:
    request, flag, omega = _flag_and_omega(args)
    source = _source(flag, args)
    curves = {}
    phases = {}
    for beta in flag.phi:
        charge = central_charge(flag, omega, source, Curve(beta))
        curves[beta.label()] = to_exact(charge.value)
        phases[beta.label()] = charge.arg
        if source.rank == 1:
            phases[f"theta[{beta.label()}]"] = curve_phase(flag, omega, source.cls, beta)
    return CommandResponse(command='curves', inputs={**request.describe(), 'source': to_exact(source.cls)},
                           exact={'charges': curves}, float_values={'args': phases})


class BoundaryAmbiguousResponse(Exception):
    """Carries a fully computed response whose window is undecided"""

    def __init__(self, response: CommandResponse):
        self.response = response
        super().__init__("phase window undecided")


COMMANDS: Dict[str, Dict[str, Any]] = {
    'roots': {'handler': cmd_roots, 'help': 'positive roots of a simple type', 'flag': False},
    'flag-info': {'handler': cmd_flag_info, 'help': 'Φ_I⁺, δ_P and dimension'},
    'volume': {'handler': cmd_volume, 'help': 'Vol(X_P, ω)', 'omega': True},
    'degree': {'handler': cmd_degree, 'help': 'deg_ω of a split bundle', 'omega': True, 'bundle': True},
    'phase': {'handler': cmd_phase, 'help': 'lifted angle and window', 'omega': True, 'psi': True},
    'classify': {'handler': cmd_classify, 'help': 'window of a lifted angle', 'flag': False, 'type': False},
    'charge': {'handler': cmd_charge, 'help': 'central charge', 'omega': True, 'source': True, 'target': True},
    'cjy': {'handler': cmd_cjy, 'help': 'sign of Im(Z_Y/Z_X)', 'omega': True, 'source': True, 'target': True},
    'defect': {'handler': cmd_defect, 'help': 'subvariety phase defect', 'omega': True, 'psi': True, 'target': True},
    'slope': {'handler': _bundle_command('slope', _fill_slope), 'help': 'μ_ω(E)', 'omega': True, 'bundle': True},
    'muhat': {'handler': _bundle_command('muhat', _fill_muhat), 'help': 'μ̂_ω(E)', 'omega': True, 'bundle': True},
    'stability': {'handler': _bundle_command('stability', _fill_stability), 'help': 'split stability verdict',
                  'omega': True, 'bundle': True},
    'hym': {'handler': _bundle_command('hym', _fill_hym), 'help': 'HYM Einstein constant', 'omega': True,
            'bundle': True},
    'dominance': {'handler': cmd_dominance, 'help': 'per-curve Arg dominance of E over F', 'omega': True,
                  'bundle': True},
    'hr-matrix': {'handler': cmd_hr_matrix, 'help': 'Hodge-Riemann matrix', 'omega': True},
    'tau': {'handler': cmd_tau, 'help': 'τ([ω])', 'omega': True},
    'solve-slope': {'handler': cmd_solve_slope, 'help': 'line bundle of prescribed slope', 'omega': True,
                    'm0': True},
    'pic0': {'handler': cmd_pic0, 'help': 'Pic⁰ generators', 'omega': True, 'gamma': True},
    'density': {'handler': cmd_density, 'help': 'natural density of attainable slopes', 'omega': True},
    'nef-solve': {'handler': cmd_nef_solve, 'help': 'dominant line bundle of prescribed slope', 'omega': True,
                  'm0': True, 'gamma': True},
    'k0': {'handler': cmd_k0, 'help': 'K₀ splitting report', 'omega': True, 'gamma': True},
    'polystable': {'handler': cmd_polystable, 'help': 'polystable bundle of prescribed slope and rank',
                   'omega': True, 'm0': True, 'gamma': True},
    'curves': {'handler': cmd_curves, 'help': 'per-curve charges and phases', 'omega': True, 'source': True},
}


def build_parser() -> CLIArgumentParser:
    common = CLIArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help='emit the JSON envelope')
    common.add_argument('-v', '--verbose', action='count', default=0, help='-v for INFO, -vv for DEBUG')

    parser = CLIArgumentParser(description="Flag-variety dHYM toolkit")
    subparsers = parser.add_subparsers(dest='command', required=True)

    for name, options in COMMANDS.items():
        sub = subparsers.add_parser(name, help=options['help'], parents=[common])
        if options.get('type', True):
            sub.add_argument('--type', required=True, help='Cartan type such as A2 or E8')
        if options.get('flag', True):
            sub.add_argument('--parabolic', default='', help='1-based indices of I, "" for the Borel case')
        if options.get('omega'):
            sub.add_argument('--omega', required=True, help='Kähler class over Δ∖I, e.g. 2,2')
        if options.get('psi'):
            sub.add_argument('--psi', required=True, help='class over Δ∖I (use --psi=-1,-1 for negatives)')
        if options.get('bundle'):
            sub.add_argument('--bundle', required=True, help='summands separated by ";", e.g. "1,0;0,1"')
        if options.get('source'):
            sub.add_argument('--psi', help='class over Δ∖I')
            sub.add_argument('--bundle', help='split bundle')
            sub.add_argument('--rank', type=int, help='override the source rank')
        if options.get('target'):
            sub.add_argument('--target', default='whole', help='whole | curve:<coeffs> | divisor:<weights>')
        if options.get('m0'):
            sub.add_argument('--m0', type=int, required=True, help='prescribed slope')
        if options.get('gamma'):
            sub.add_argument('--gamma', type=int, help='1-based simple-root index of the pivot, must lie outside I')
        if name == 'polystable':
            sub.add_argument('--rank', type=int, required=True)
        if name == 'density':
            sub.add_argument('--n', type=int, required=True, help='upper end of 1..n')
        if name == 'dominance':
            sub.add_argument('--other', required=True, help='the bundle F compared against')
        if name == 'classify':
            sub.add_argument('--theta', type=float, required=True)
            sub.add_argument('--n', type=int, required=True)
    return parser


def _human(response: CommandResponse, digits: int) -> str:
    lines = [f"[{response.command}]"]
    for key, value in response.exact.items():
        approx = response.float_values.get(key)
        suffix = f"  (≈ {format_float(approx, digits)})" if isinstance(approx, float) else ''
        lines.append(f"{key}: {json.dumps(value, ensure_ascii=False)}{suffix}")
    for key, value in response.float_values.items():
        if key in response.exact:
            continue
        if isinstance(value, float):
            lines.append(f"{key}: {format_float(value, digits)}")
        else:
            lines.append(f"{key}: {json.dumps(value, ensure_ascii=False)}")
    for key, value in response.verdicts.items():
        lines.append(f"{key}: {value}")
    return '\n'.join(lines)


def _emit(response: CommandResponse, as_json: bool) -> None:
    if as_json:
        print(json.dumps(response.model_dump(by_alias=True), ensure_ascii=False, sort_keys=True))
    else:
        print(_human(response, settings.FLOAT_SIGNIFICANT_DIGITS))


def _configure_logging(verbosity: int) -> None:
    level = {0: settings.LOG_LEVEL, 1: 'INFO'}.get(verbosity, 'DEBUG')
    logging.basicConfig(level=level, format=settings.LOG_FORMAT, stream=sys.stderr)


def run(argv: Optional[List[str]] = None) -> int:
    """Dispatch one subcommand; returns the process exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except CLIParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except SystemExit as e:
        return int(e.code or 0)

    _configure_logging(args.verbose)
    handler = COMMANDS[args.command]['handler']
    try:
        response = handler(args)
    except (CLIParseError, ValidationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except BoundaryAmbiguousResponse as e:
        _emit(e.response, args.json)
        print("error: lifted angle within the boundary guard of a window threshold", file=sys.stderr)
        return EXIT_BOUNDARY_AMBIGUOUS
    except BoundaryAmbiguous as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BOUNDARY_AMBIGUOUS
    except FlagVarietyError as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR

    _emit(response, args.json)
    return EXIT_OK


def main():
    """Main function for the flag-variety command line"""
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
