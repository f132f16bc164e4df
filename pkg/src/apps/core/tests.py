import contextlib
import copy
import importlib
import io
import json
import math
import os
import tempfile

import numpy as np
from django.core.management import call_command
from django.conf import settings as django_settings
from django.core.management.base import CommandError
from django.test import SimpleTestCase
from hypothesis import given, settings as hypothesis_settings, strategies as st
from hypothesis.extra.django import SimpleTestCase as HypothesisTestCase

from apps.core.config import config_from_dict, load_config
from apps.core.cli import Subcommand
from apps.core.exceptions import ConfigError, DomainError, InputError
from apps.core.lib.tables import (
    emit_report,
    emit_table,
    format_number,
    parse_csv,
    parse_json_table,
    render_json,
    render_table,
)
from apps.core.lib.units import (
    Constants,
    comoving_distance,
    constants_document,
    planck_identities,
    redshift,
    redshift_inverse,
)
from apps.core.management.commands.cosmo import Command
from cosmotoy.routers import subcommands

EPS = np.finfo(float).eps


class ConstantsTests(SimpleTestCase):
    def test_planck_identities_hold_for_codata(self):
        for name, item in planck_identities(Constants()).items():
            self.assertTrue(item['passed'], name)
            self.assertLessEqual(item['residual'], 1.0e-12)

    def test_planck_scales_match_codata(self):
        constants = Constants()
        self.assertAlmostEqual(constants.l_p / 1.616255e-35, 1.0, places=5)
        self.assertAlmostEqual(constants.t_p / 5.391247e-44, 1.0, places=5)
        self.assertAlmostEqual(constants.m_p / 2.176434e-8, 1.0, places=5)

    def test_natural_set_is_all_ones(self):
        natural = Constants.natural()
        self.assertEqual((natural.l_p, natural.t_p, natural.m_p, natural.T_p), (1.0, 1.0, 1.0, 1.0))

    def test_rejects_non_positive_constant(self):
        with self.assertRaises(DomainError) as ctx:
            Constants(G=0.0)
        self.assertEqual(ctx.exception.parameter, 'G')

    def test_constants_document_passes(self):
        document = constants_document(Constants())
        self.assertTrue(document['success'])
        self.assertEqual(document['t_quantum_kelvin'], 1.0e32)


class ConversionPropertyTests(HypothesisTestCase):
    @given(st.floats(min_value=1.0e-200, max_value=1.0e200))
    @hypothesis_settings(max_examples=200, deadline=None)
    def test_si_natural_round_trip(self, value):
        constants = Constants()
        pairs = (
            (constants.seconds_to_planck, constants.planck_to_seconds),
            (constants.meters_to_planck, constants.planck_to_meters),
            (constants.kg_to_planck, constants.planck_to_kg),
            (constants.kelvin_to_planck, constants.planck_to_kelvin),
            (constants.kelvin_to_ev, constants.ev_to_kelvin),
        )
        for forward, backward in pairs:
            self.assertLessEqual(abs(backward(forward(value)) - value), 1.0e-12 * value)


class RedshiftTests(SimpleTestCase):
    def test_rest_frame(self):
        self.assertEqual(redshift(0.0), 0.0)

    def test_sixty_percent_of_light_speed(self):
        self.assertAlmostEqual(redshift(0.6), 1.0, places=12)

    def test_approaching_light_speed_grows_without_bound(self):
        self.assertGreater(redshift(1.0 - 1.0e-15), 1.0e7)

    def test_superluminal_velocity_rejected(self):
        for v in (1.0, 1.5, -1.0):
            with self.assertRaises(DomainError):
                redshift(v)

    def test_round_trip_up_to_a_million(self):
        for z in np.concatenate([[0.0], np.logspace(-6, 6, 241)]):
            recovered = redshift(redshift_inverse(float(z)))
            tolerance = max(1.0e-12, 4.0 * EPS * (1.0 + z) ** 2)
            self.assertLessEqual(abs(recovered - z), tolerance * max(z, 1.0), z)


class ComovingDistanceTests(SimpleTestCase):
    def test_present_scale_factor(self):
        self.assertEqual(comoving_distance(1.0, 7.5), 7.5)

    def test_linearity_and_zero(self):
        self.assertEqual(comoving_distance(0.5, 2.0), 1.0)
        self.assertEqual(comoving_distance(2.0, 0.0), 0.0)

    def test_collapsed_universe_rejected(self):
        with self.assertRaises(DomainError):
            comoving_distance(0.0, 1.0)


class TableTests(SimpleTestCase):
    def test_empty_rows_give_header_only(self):
        self.assertEqual(render_table([], columns=('k', 'T')), b'k,T\n')

    def test_seventeen_significant_digits(self):
        self.assertEqual(format_number(0.1), '0.10000000000000001')
        self.assertEqual(render_table([{'x': 1.0 / 3.0}]), b'x\n0.33333333333333331\n')

    def test_non_finite_tokens(self):
        payload = render_table([{'a': math.nan, 'b': math.inf, 'c': -math.inf}])
        self.assertEqual(payload, b'a,b,c\nnan,inf,-inf\n')
        document = json.loads(render_json({'value': math.nan}))
        self.assertEqual(document['value'], 'nan')

    def test_heterogeneous_rows_rejected(self):
        with self.assertRaises(InputError):
            render_table([{'a': 1.0}, {'b': 2.0}])

    def test_explicit_columns_select_from_wider_rows(self):
        rows = parse_csv(render_table([{'a': 1.0, 'b': 2.5, 'c': 'x'}], columns=['c', 'a']).decode('utf-8'))
        self.assertEqual(rows, [{'c': 'x', 'a': 1.0}])
        with self.assertRaises(ValueError):
            render_table([{'a': 1.0}], columns=['a', 'b'])

    def test_csv_and_json_parse_to_the_same_rows(self):
        rows = [
            {'k': k, 'T': 1.1e32 * k, 'occupation': 1.0 / (k + 0.3), 'flag': k % 2 == 0}
            for k in range(1, 6)
        ]
        rows.append({'k': 6, 'T': math.inf, 'occupation': 0.0, 'flag': False})
        from_csv = parse_csv(render_table(rows, fmt='csv').decode('utf-8'))
        from_json = parse_json_table(render_table(rows, fmt='json').decode('utf-8'))
        self.assertEqual(from_csv, from_json)
        self.assertEqual(from_csv, rows)


class EmitTableTests(SimpleTestCase):
    rows = [
        {'k': 1, 'T': 3.2e31, 'occupation': 0.25, 'power': math.nan},
        {'k': 2, 'T': 6.4e31, 'occupation': 1.0 / 3.0, 'power': 0.0},
    ]

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.directory.cleanup()

    def read(self, path):
        with open(path, encoding='utf-8') as handle:
            return handle.read()

    def assertSameRows(self, parsed):
        self.assertEqual([row['k'] for row in parsed], [1, 2])
        self.assertEqual([row['occupation'] for row in parsed], [0.25, 1.0 / 3.0])
        self.assertTrue(math.isnan(parsed[0]['power']))
        self.assertEqual(parsed[1]['power'], 0.0)

    def test_csv_file_round_trip(self):
        path = os.path.join(self.directory.name, 'table.csv')
        payload = emit_table(self.rows, fmt='csv', path=path)
        self.assertEqual(self.read(path).encode('utf-8'), payload)
        self.assertSameRows(parse_csv(self.read(path)))

    def test_json_file_round_trip(self):
        path = os.path.join(self.directory.name, 'table.json')
        emit_table(self.rows, fmt='json', path=path)
        self.assertSameRows(parse_json_table(self.read(path)))

    def test_stream_receives_the_same_bytes(self):
        stream = io.StringIO()
        payload = emit_table(self.rows, fmt='csv', stream=stream)
        self.assertEqual(stream.getvalue().encode('utf-8'), payload)

    def test_report_to_stream(self):
        stream = io.StringIO()
        emit_report({'value': math.inf}, stream=stream)
        self.assertEqual(json.loads(stream.getvalue()), {'value': 'inf'})

    def test_unwritable_path_raises_os_error(self):
        path = os.path.join(self.directory.name, 'missing', 'table.csv')
        with self.assertRaises(OSError):
            emit_table(self.rows, fmt='csv', path=path)


class ConfigTests(SimpleTestCase):
    def write(self, directory, text):
        path = os.path.join(directory, 'run.json')
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(text)
        return path

    def test_empty_file_gives_defaults(self):
        with tempfile.TemporaryDirectory() as directory:
            config = load_config(self.write(directory, ''))
        defaults = config_from_dict({})
        self.assertEqual(config.effective, defaults.effective)
        self.assertEqual(config.effective['burst']['n_plus'], 0.5)
        self.assertEqual(config.effective['output'], {'format': 'csv', 'path': ''})

    def test_echo_reloads_to_same_effective_config(self):
        original = config_from_dict({
            'burst': {'T_star': 2.0e31},
            'wdw': {'modes': [{'n': 2, 'p_n': 1}]},
        })
        reloaded = config_from_dict(json.loads(original.echo()))
        self.assertEqual(reloaded.effective, original.effective)
        self.assertEqual(reloaded.burst, original.burst)
        self.assertEqual(reloaded.wdw, original.wdw)

    def test_n_plus_outside_unit_interval_names_field(self):
        with self.assertRaises(ConfigError) as ctx:
            config_from_dict({'burst': {'n_plus': 1.5}})
        self.assertIn('burst.n_plus', ctx.exception.errors)
        self.assertIn('(0, 1)', ctx.exception.errors['burst.n_plus'][0])

    def test_unknown_keys_rejected_at_every_level(self):
        with self.assertRaises(ConfigError) as ctx:
            config_from_dict({'vacuum': {'bogus': 1}, 'extra': True})
        self.assertIn('vacuum.bogus', ctx.exception.errors)
        self.assertIn('extra', ctx.exception.errors)

    def test_domain_invariant_reports_field_path(self):
        with self.assertRaises(ConfigError) as ctx:
            config_from_dict({'wdw': {'a_min': 2.0, 'a_max': 1.0}})
        self.assertIn('wdw.a_max', ctx.exception.errors)

    def test_syntax_error_reports_line_and_column(self):
        with tempfile.TemporaryDirectory() as directory:
            path = self.write(directory, '{\n  "burst": }\n')
            with self.assertRaises(ConfigError) as ctx:
                load_config(path)
        self.assertEqual(ctx.exception.line, 2)
        self.assertEqual(ctx.exception.column, 12)

    def test_missing_file(self):
        with self.assertRaises(ConfigError):
            load_config('/nonexistent/cosmotoy.json')


class CommandTests(SimpleTestCase):
    """Drives `manage.py cosmo` in-process."""

    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.echo_path = os.path.join(self.directory.name, 'echo.json')

    def tearDown(self):
        self.directory.cleanup()

    def run_cosmo(self, *args):
        stdout, stderr = io.StringIO(), io.StringIO()
        call_command('cosmo', *args, '--echo-config', self.echo_path, stdout=stdout, stderr=stderr)
        return stdout.getvalue(), stderr.getvalue()

    def run_failing(self, *args):
        stdout, stderr = io.StringIO(), io.StringIO()
        with self.assertRaises(SystemExit) as ctx:
            call_command('cosmo', *args, '--echo-config', self.echo_path, stdout=stdout, stderr=stderr)
        return ctx.exception.code, stdout.getvalue(), json.loads(stderr.getvalue())

    def test_dispatch_table(self):
        self.assertEqual(
            [command.name for command in subcommands()],
            ['constants', 'lambda', 'hh', 'wormhole', 'theorem1', 'causal-scan', 'roots', 'lloyd',
             'entropy', 'burst-table', 'axion', 'rs-potential', 'quintessence', 'bifurcation', 'wdw'],
        )

    def test_constants_report(self):
        stdout, _ = self.run_cosmo('constants')
        document = json.loads(stdout)
        self.assertTrue(document['success'])
        self.assertTrue(all(item['passed'] for item in document['identities'].values()))

    def test_effective_config_is_echoed(self):
        self.run_cosmo('constants')
        with open(self.echo_path, encoding='utf-8') as handle:
            echoed = json.load(handle)
        self.assertEqual(echoed, config_from_dict({}).effective)

    def test_echo_defaults_to_stderr(self):
        stderr = io.StringIO()
        call_command('cosmo', 'hh', '--lambda', '1', stdout=io.StringIO(), stderr=stderr)
        self.assertEqual(json.loads(stderr.getvalue())['seed'], config_from_dict({}).seed)

    def test_output_path_and_sibling_echo(self):
        output = os.path.join(self.directory.name, 'burst.csv')
        stdout = io.StringIO()
        call_command('cosmo', 'burst-table', '--output', output, stdout=stdout, stderr=io.StringIO())
        self.assertEqual(stdout.getvalue(), '')
        with open(output, encoding='utf-8') as handle:
            self.assertEqual(handle.readline(), 'k,T_kelvin,occupation,power_watts\n')
        self.assertTrue(os.path.exists(output + '.config.json'))

    def test_burst_table_is_byte_identical_across_runs(self):
        first, _ = self.run_cosmo('burst-table')
        second, _ = self.run_cosmo('burst-table')
        self.assertEqual(first, second)
        self.assertEqual(len(first.splitlines()), 6)

    def test_every_subcommand_is_deterministic(self):
        invocations = [
            ('constants',),
            ('lambda', '--temp', '1e20', '1e32'),
            ('hh', '--lambda', '360'),
            ('wormhole', '--temp', '1e32'),
            ('theorem1',),
            ('causal-scan', '--points', '50'),
            ('roots',),
            ('lloyd', '--rho', '1e-27', '--age', '1e10'),
            ('entropy', '--t', '1e-45', '1', '1e17'),
            ('burst-table', '--tstar', '3e31'),
            ('axion', '--temp-sweep'),
            ('rs-potential',),
            ('rs-potential', '--scan', '0.3', '2.0'),
            ('quintessence', '--case', '2'),
            ('bifurcation', '--points', '40', '--summary'),
            ('wdw', '--lambda', '0', '--a-max', '1'),
        ]
        for args in invocations:
            with self.subTest(args=args):
                self.assertEqual(self.run_cosmo(*args)[0], self.run_cosmo(*args)[0])

    def test_cold_chain_exits_with_failed_links(self):
        code, stdout, error = self.run_failing('theorem1', '--tmax', '1')
        self.assertEqual(code, 1)
        self.assertFalse(error['success'])
        self.assertEqual(error['error'], 'check_failed')
        self.assertIn('iii', error['context']['failed_links'])
        self.assertFalse(json.loads(stdout)['passed'])

    def test_invalid_config_exits_with_field_path(self):
        path = os.path.join(self.directory.name, 'bad.json')
        with open(path, 'w', encoding='utf-8') as handle:
            json.dump({'burst': {'n_plus': 1.5}}, handle)
        code, stdout, error = self.run_failing('burst-table', '--config', path)
        self.assertEqual(code, 1)
        self.assertEqual(stdout, '')
        self.assertEqual(error['error'], 'config_error')
        self.assertIn('burst.n_plus', error['context']['errors'])

    def test_singular_input_exits_with_parameter(self):
        code, _, error = self.run_failing('hh', '--lambda', '0')
        self.assertEqual(code, 1)
        self.assertEqual(error['error'], 'singularity')
        self.assertEqual(error['context'], {'subcommand': 'hh', 'parameter': 'lambda'})

    def test_csv_flag_forces_csv(self):
        stdout, _ = self.run_cosmo('wdw', '--csv', '--format', 'json')
        self.assertTrue(stdout.startswith('a,psi\n'))

    def test_json_table_format(self):
        stdout, _ = self.run_cosmo('lambda', '--temp', '1e25', '--format', 'json')
        rows = json.loads(stdout)
        self.assertEqual(list(rows[0]), ['T', 'lambda4', 'lambda5', 'hh_amplitude'])

    def test_unknown_subcommand_is_a_usage_error(self):
        with self.assertRaises(CommandError):
            call_command('cosmo', 'nope', stdout=io.StringIO(), stderr=io.StringIO())

    def test_unknown_subcommand_exits_two_from_command_line(self):
        with contextlib.redirect_stderr(io.StringIO()), self.assertRaises(SystemExit) as ctx:
            Command().run_from_argv(['manage.py', 'cosmo', 'nope'])
        self.assertEqual(ctx.exception.code, 2)


class MalformedTableCommand(Subcommand):
    name = 'malformed-table'
    help = 'Rows with mismatched keys'

    def handle(self, options, config):
        return self.table([{'a': 1.0}, {'b': 2.0}], options, config)


class OverflowCommand(Subcommand):
    name = 'overflow'
    help = 'Raises a bare floating-point error'

    def handle(self, options, config):
        raise FloatingPointError('overflow encountered in exp')


class CommandBoundaryTests(SimpleTestCase):
    def setUp(self):
        self.directory = tempfile.TemporaryDirectory()
        self.echo_path = os.path.join(self.directory.name, 'echo.json')

    def tearDown(self):
        self.directory.cleanup()

    def run_failing(self, extra, *args):
        command = Command()
        command.registry[extra.name] = extra
        stdout, stderr = io.StringIO(), io.StringIO()
        with self.assertRaises(SystemExit) as ctx:
            call_command(command, *args, '--echo-config', self.echo_path, stdout=stdout, stderr=stderr)
        return ctx.exception.code, stdout.getvalue(), json.loads(stderr.getvalue())

    def test_malformed_table_ends_in_error_document(self):
        code, stdout, error = self.run_failing(MalformedTableCommand(), 'malformed-table')
        self.assertEqual(code, 1)
        self.assertEqual(stdout, '')
        self.assertEqual(error['error'], 'input_error')
        self.assertEqual(error['context']['subcommand'], 'malformed-table')
        self.assertEqual(error['context']['row'], 1)

    def test_bare_arithmetic_error_ends_in_error_document(self):
        code, _, error = self.run_failing(OverflowCommand(), 'overflow')
        self.assertEqual(code, 1)
        self.assertFalse(error['success'])
        self.assertEqual(error['error'], 'computation_error')
        self.assertEqual(error['context'], {'subcommand': 'overflow', 'exception': 'FloatingPointError'})

    def test_unwritable_output_is_an_io_error(self):
        output = os.path.join(self.directory.name, 'missing', 'burst.csv')
        command = Command()
        stderr = io.StringIO()
        with self.assertRaises(SystemExit) as ctx:
            call_command(command, 'burst-table', '--output', output, '--echo-config', self.echo_path,
                         stdout=io.StringIO(), stderr=stderr)
        self.assertEqual(ctx.exception.code, 1)
        error = json.loads(stderr.getvalue())
        self.assertEqual(error['error'], 'io_error')
        self.assertEqual(error['context']['path'], output)


class LoggingSettingsTests(SimpleTestCase):
    def test_console_handler_is_debug_only_at_info(self):
        console = django_settings.LOGGING['handlers']['console']
        self.assertEqual(console['level'], 'INFO')
        self.assertEqual(console['filters'], ['require_debug_true'])

    def test_production_keeps_warnings_on_the_console(self):
        from cosmotoy.settings import base

        saved = copy.deepcopy(base.LOGGING)
        self.addCleanup(lambda: (base.LOGGING.clear(), base.LOGGING.update(saved)))
        production = importlib.reload(importlib.import_module('cosmotoy.settings.production'))
        console = production.LOGGING['handlers']['console']
        self.assertFalse(production.DEBUG)
        self.assertEqual(console['level'], 'WARNING')
        self.assertEqual(console['filters'], ['require_debug_false'])
        self.assertNotEqual(console['level'], saved['handlers']['console']['level'])
