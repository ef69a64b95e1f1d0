import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase, override_settings, tag

from breadthlab.celery import app as celery_app
from core.exceptions import InvariantViolation, UnknownTheorem, UnsupportedField
from .models import CampaignRun
from .report import BUDGET, FAIL, PASS, CampaignReport, ShardResult
from .runner import run_campaign
from .serializer import CampaignRunSerializer
from .theorems import CAMPAIGNS, get_campaign


def merge(results):
    return CampaignReport.merge('t01', 'gf3', {}, 0, None, results)


class ReportTests(SimpleTestCase):
    def test_merge_sums_counts_in_shard_order(self):
        a = ShardResult('a')
        a.record(True)
        a.record(False, {'instance': 'x', 'problems': ['bad']})
        a.tally('breadth_type.(0,1)')
        b = ShardResult('b')
        b.record(True)
        b.tally('breadth_type.(0,1)', 2)
        b.skip('too many cosets')
        report = merge([a, b])
        self.assertEqual((report.scanned, report.passed, report.failed, report.skipped), (4, 2, 1, 1))
        self.assertEqual(report.tallies, {'breadth_type.(0,1)': 3, 'budget_exceeded': 1})
        self.assertEqual(report.witnesses, [{'instance': 'x', 'problems': ['bad'], 'shard': 'a'}])
        self.assertEqual(report.status, FAIL)
        self.assertEqual(report.exit_code, 1)

    def test_status(self):
        ok = ShardResult('a')
        ok.record(True)
        self.assertEqual(merge([ok]).status, PASS)
        skipped = ShardResult('b')
        skipped.skip('budget')
        report = merge([ok, skipped])
        self.assertEqual(report.status, BUDGET)
        self.assertEqual(report.exit_code, 3)

    @override_settings(BREADTHLAB_WITNESS_LIMIT=2)
    def test_witness_limit(self):
        result = ShardResult('a')
        for i in range(5):
            result.record(False, {'instance': str(i), 'problems': []})
        report = merge([result])
        self.assertEqual(report.failed, 5)
        self.assertEqual([w['instance'] for w in report.witnesses], ['0', '1'])

    def test_inconsistent_counts(self):
        with self.assertRaises(InvariantViolation):
            merge([ShardResult('a', scanned=3, passed=1)])

    def test_timing_is_optional(self):
        ok = ShardResult('a')
        ok.record(True)
        report = merge([ok])
        report.wall_time = 1.23456
        self.assertEqual(report.to_json()['wall_time'], 1.235)
        self.assertNotIn('wall_time', report.to_json(timing=False))


class CampaignTests(SimpleTestCase):
    def test_registry(self):
        self.assertEqual(sorted(CAMPAIGNS.keys()), sorted([
            't01', 't02', 't03-odd', 't03-even', 'camina-bound', 'correspondence', 'rational-camina',
        ]))
        with self.assertRaises(UnknownTheorem):
            get_campaign('t04')
        with self.assertRaises(UnknownTheorem):
            run_campaign('t04', 'gf3')

    def test_field_checks(self):
        with self.assertRaises(UnsupportedField):
            run_campaign('t03-odd', 'gf2')
        with self.assertRaises(UnsupportedField):
            run_campaign('t03-even', 'gf3')
        with self.assertRaises(UnsupportedField):
            run_campaign('correspondence', 'gf9')
        with self.assertRaises(UnsupportedField):
            run_campaign('t01', 'rational')

    def test_t01(self):
        report = run_campaign('t01', 'gf5', {'samples': 6})
        self.assertEqual(report.status, PASS)
        self.assertEqual(report.scanned, 18)
        self.assertEqual(report.shards, 3)
        # the hyperplanes of L1' are zero, so the m1 shard meets H1 itself
        self.assertIn('breadth_type.(0,1)', report.tallies)

    def test_t02(self):
        report = run_campaign('t02', 'gf3', {'samples': 4})
        self.assertEqual(report.status, PASS, report.witnesses)
        # L2 and L2 + A1 among the named algebras, L2/0 among the quotients
        self.assertGreaterEqual(report.tallies['stem.L2'], 3)
        self.assertEqual(report.tallies['stem.five-dim'], 1)
        self.assertGreaterEqual(report.tallies['stem.camina'], 2)

    def test_t02_characteristic_two(self):
        report = run_campaign('t02', 'gf2', {'samples': 2})
        self.assertEqual(report.status, PASS, report.witnesses)
        self.assertEqual(report.tallies['stem.five-dim'], 1)

    def test_t03_odd_lines(self):
        report = run_campaign('t03-odd', 'gf3', {'layers': [1]})
        self.assertEqual(report.status, PASS, report.witnesses)
        self.assertEqual(report.scanned, 364)
        self.assertEqual(report.tallies['dim1.scanned'], 364)
        self.assertEqual(report.tallies['dim1.bracket_free'], 234)
        self.assertEqual(report.tallies['dim1.canonical'], 234)
        self.assertEqual(report.tallies['not_breadth_type'], 130)
        self.assertEqual(report.tallies['breadth_type.(0,3)'], 234)
        self.assertEqual(report.parameters, {'layers': [1]})

    @tag('slow')
    def test_t03_odd_exhaustive(self):
        report = run_campaign('t03-odd', 'gf3')
        self.assertEqual(report.status, PASS, report.witnesses)
        self.assertEqual(report.tallies['dim2.scanned'], 11011)
        self.assertEqual(report.tallies['dim3.scanned'], 33880)
        self.assertNotIn('dim3.bracket_free', report.tallies)
        self.assertEqual(report.tallies['dim2.bracket_free'], report.tallies['dim2.canonical'])

    def test_t03_even_gf2(self):
        report = run_campaign('t03-even', 'gf2')
        self.assertEqual(report.status, PASS, report.witnesses)
        self.assertEqual(report.tallies['dim1.scanned'], 63)
        self.assertEqual(report.tallies['dim1.bracket_free'], 28)
        self.assertEqual(report.tallies['dim2.scanned'], 651)
        self.assertEqual(report.tallies['dim2.bracket_free'], report.tallies['dim2.canonical'])
        self.assertEqual(report.tallies['dim3.scanned'], 1395)
        self.assertNotIn('dim3.bracket_free', report.tallies)
        # a t^2 + b t + c over GF(2): only t^2 + t + 1 is irreducible
        self.assertEqual(report.tallies['quadratics.irreducible'], 1)

    @tag('slow')
    def test_t03_even_gf4(self):
        report = run_campaign('t03-even', 'gf4')
        self.assertEqual(report.status, PASS, report.witnesses)
        self.assertNotIn('dim3.bracket_free', report.tallies)

    @tag('slow')
    def test_trace_criterion_gf8(self):
        report = run_campaign('t03-even', 'gf8', {'layers': [1], 'exact': False})
        self.assertEqual(report.status, PASS, report.witnesses)
        # monic irreducible quadratics over GF(8) number (64 - 8) / 2, times 7 leading coefficients
        self.assertEqual(report.tallies['quadratics.irreducible'], 28 * 7)

    def test_camina_bound(self):
        for token in ('gf2', 'gf3'):
            with self.subTest(field=token):
                report = run_campaign('camina-bound', token, {'n': 4})
                self.assertEqual(report.status, PASS, report.witnesses)
                self.assertEqual(report.summary['k_sks'], 2)
                self.assertTrue(report.summary['exhaustive'])
                self.assertTrue(report.summary['certificate_verified'])

    def test_camina_bound_small_sizes(self):
        self.assertEqual(run_campaign('camina-bound', 'gf3', {'n': 2}).summary['k_sks'], 1)
        self.assertEqual(run_campaign('camina-bound', 'gf3', {'n': 3}).summary['k_sks'], 0)

    def test_correspondence(self):
        report = run_campaign('correspondence', 'gf3', {'m': 2})
        self.assertEqual(report.status, PASS, report.witnesses)
        self.assertEqual(report.scanned, 28)
        self.assertEqual(report.tallies['conjugate_type.(1, 3^2)'], 1)
        self.assertEqual(report.tallies['breadth_type.(0,1,2)'], 13)

    @tag('slow')
    def test_correspondence_m3(self):
        report = run_campaign('correspondence', 'gf3', {'m': 3})
        self.assertEqual(report.status, PASS, report.witnesses)
        self.assertEqual(report.scanned, 52)
        self.assertGreaterEqual(report.tallies['conjugate_type.(1, 3^3)'], 1)

    def test_rational_camina(self):
        report = run_campaign('rational-camina', 'gf3')
        self.assertEqual(report.status, PASS, report.witnesses)
        self.assertEqual(report.scanned, 3)
        self.assertEqual(report.tallies['quaternion.points'], 225)
        self.assertEqual(report.tallies['family.(iv)'], 1)

    def test_budget(self):
        report = run_campaign('correspondence', 'gf3', {'m': 2, 'budget': 10})
        self.assertEqual(report.status, BUDGET)
        self.assertEqual(report.skipped, 28)
        self.assertEqual(report.budget, 10)

    def test_deterministic(self):
        first = run_campaign('t01', 'gf3', {'samples': 4, 'seed': 11})
        second = run_campaign('t01', 'gf3', {'samples': 4, 'seed': 11})
        self.assertEqual(json.dumps(first.to_json(timing=False), sort_keys=True),
                         json.dumps(second.to_json(timing=False), sort_keys=True))
        self.assertEqual(first.seed, 11)

    def test_jobs_do_not_change_the_report(self):
        with mock.patch.object(celery_app.conf, 'task_always_eager', True):
            pooled = run_campaign('t02', 'gf3', {'samples': 2}, jobs=4)
        serial = run_campaign('t02', 'gf3', {'samples': 2}, jobs=1)
        self.assertEqual(pooled.to_json(timing=False), serial.to_json(timing=False))


class CommandTests(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def path(self, name):
        return str(Path(self.tmp.name) / name)

    def call(self, *args, **options):
        out = StringIO()
        call_command(*args, stdout=out, stderr=StringIO(), **options)
        return json.loads(out.getvalue())

    def make(self, family, field='gf3', **options):
        path = self.path(f"{family.replace(':', '_')}_{field}.json")
        call_command('make', family=family, field=field, json=path, stderr=StringIO(), **options)
        return path

    def write(self, name, data):
        path = self.path(name)
        Path(path).write_text(json.dumps(data))
        return path

    def test_make_and_breadth(self):
        data = self.call('breadth', alg=self.make('L3'), exact=True)
        self.assertEqual(data['breadth_type'], [0, 3])
        self.assertEqual(data['label'], '(0,3)')
        self.assertEqual(data['nilpotency_class'], 2)
        self.assertTrue(data['bounds']['ok'])

    def test_breadth_sampled(self):
        data = self.call('breadth', alg=self.make('H2', field='gf5'), sample=200, seed=3)
        self.assertFalse(data['exact'])
        self.assertEqual(data['seed'], 3)
        self.assertEqual(data['samples'], 200)
        self.assertEqual(data['upper_bound'], 1)

    def test_make_quotient(self):
        ideal = self.write('ideal.json', {'m_plus_1': 4, 'basis': [[1, 0, 0, 0, 0, 1]]})
        path = self.make('L3', quotient=ideal)
        algebra = json.loads(Path(path).read_text())
        self.assertEqual(algebra['dim'], 9)
        self.assertEqual(self.call('breadth', alg=path)['breadth_type'], [0, 3])
        data = self.call('classify', alg=path)
        self.assertEqual(data['family'], '(iii)')
        self.assertEqual(data['tag']['label'], 'DimOne(r=2)')

    def test_make_quotient_needs_matching_family(self):
        ideal = self.write('ideal.json', {'m_plus_1': 4, 'basis': [[1, 0, 0, 0, 0, 1]]})
        with self.assertRaises(CommandError) as cm:
            self.make('L2', quotient=ideal)
        self.assertEqual(cm.exception.returncode, 2)

    def test_make_modulus(self):
        path = self.make('h2', modulus='1,0,1')
        self.assertTrue(self.call('camina', alg=path)['camina'])

    def test_classify(self):
        self.assertEqual(self.call('classify', alg=self.make('theorem:iv'))['family'], '(iv)')
        self.assertEqual(self.call('classify', alg=self.make('H2'))['family'], 'not-breadth-type')
        with self.assertRaises(CommandError) as cm:
            self.call('classify', alg=self.make('H1'))
        self.assertEqual(cm.exception.returncode, 2)
        with self.assertRaises(CommandError) as cm:
            self.call('classify', alg=self.make('sl2', field='gf5'))
        self.assertEqual(cm.exception.returncode, 2)
        self.assertIn('NotClassTwo', str(cm.exception))

    def test_camina(self):
        data = self.call('camina', alg=self.make('h2'))
        self.assertTrue(data['camina'])
        self.assertTrue(data['generator_bound'])
        self.assertFalse(self.call('camina', alg=self.make('L3'))['camina'])
        data = self.call('camina', alg=self.make('theorem:i', field='rational'))
        self.assertTrue(data['camina'])
        self.assertEqual(data['method'], 'structure-matrices')

    def test_sks_search(self):
        data = self.call('sks_search', n=4, field='gf2')
        self.assertEqual(data['k_sks'], 2)
        self.assertEqual(data['certificate']['dim'], 2)
        self.assertEqual(self.call('sks_search', n=3, field='gf3')['k_sks'], 0)

    def test_sks_search_budget(self):
        out = StringIO()
        with self.assertRaises(CommandError) as cm:
            call_command('sks_search', n=4, field='gf3', budget=10, stdout=out)
        self.assertEqual(cm.exception.returncode, 3)
        self.assertTrue(json.loads(out.getvalue())['partial']['lower_bound'])

    def test_correspond(self):
        data = self.call('correspond', p=3, m=2, all_central_subgroups=True)
        self.assertEqual(data['count'], 28)
        self.assertEqual(data['mismatches'], 0)
        ideal = self.write('ideal.json', {'m_plus_1': 4, 'basis': [[1, 0, 0, 0, 0, 1]]})
        data = self.call('correspond', p=3, m=3, ideal=ideal)
        self.assertEqual(data['results'][0]['conjugate_type']['label'], '(1, 3^3)')
        self.assertEqual(data['results'][0]['breadth_type']['breadth_type'], [0, 3])

    def test_correspond_needs_odd_prime(self):
        for p in (2, 4):
            with self.subTest(p=p), self.assertRaises(CommandError) as cm:
                self.call('correspond', p=p, m=2, all_central_subgroups=True)
            self.assertEqual(cm.exception.returncode, 2)

    def test_verify(self):
        data = self.call('verify', 'rational-camina')
        self.assertEqual(data['status'], 'pass')
        self.assertEqual(data['theorem'], 'rational-camina')
        self.assertEqual(data['counts']['scanned'], 3)

    def test_verify_writes_json(self):
        path = self.path('report.json')
        call_command('verify', 't03-odd', field='gf3', layers='1', json=path, stdout=StringIO(), stderr=StringIO())
        report = json.loads(Path(path).read_text())
        self.assertEqual(report['tallies']['dim1.bracket_free'], 234)

    def test_usage_errors(self):
        with self.assertRaises(CommandError) as cm:
            self.call('verify', 'no-such-theorem')
        self.assertEqual(cm.exception.returncode, 2)
        with self.assertRaises(CommandError) as cm:
            self.call('verify', 't03-odd', field='gf2')
        self.assertEqual(cm.exception.returncode, 2)
        with self.assertRaises(CommandError) as cm:
            self.call('verify', 't03-odd', layers='4')
        self.assertEqual(cm.exception.returncode, 2)
        with self.assertRaises(CommandError) as cm:
            self.call('make', family='L3', field='gf6')
        self.assertEqual(cm.exception.returncode, 2)

    def test_malformed_inputs(self):
        bad = self.write('bad.json', {'field': {'kind': 'finite', 'p': 3}, 'dim': 2, 'brackets': [[1, 3, []]]})
        with self.assertRaises(CommandError) as cm:
            self.call('breadth', alg=bad)
        self.assertEqual(cm.exception.returncode, 2)
        with self.assertRaises(CommandError) as cm:
            self.call('breadth', alg=self.path('missing.json'))
        self.assertEqual(cm.exception.returncode, 2)
        broken = self.path('broken.json')
        Path(broken).write_text('{"field": ')
        with self.assertRaises(CommandError) as cm:
            self.call('camina', alg=broken)
        self.assertEqual(cm.exception.returncode, 2)

    def test_verify_budget_leaves_a_report(self):
        path = self.path('partial.json')
        with self.assertRaises(CommandError) as cm:
            call_command('verify', 'correspondence', field='gf3', m=2, budget=10, json=path,
                         stdout=StringIO(), stderr=StringIO())
        self.assertEqual(cm.exception.returncode, 3)
        report = json.loads(Path(path).read_text())
        self.assertEqual(report['status'], 'budget')
        self.assertEqual(report['counts']['skipped'], 28)


class RecordTests(TestCase):
    def test_record(self):
        out = StringIO()
        call_command('verify', 'rational-camina', record=True, seed=5, stdout=out, stderr=StringIO())
        run = CampaignRun.objects.get()
        recorded = json.loads(out.getvalue())['recorded']
        self.assertEqual(recorded['id'], run.id)
        self.assertEqual(recorded['status_display'], 'Pass')
        self.assertEqual(recorded['scanned'], 3)
        self.assertNotIn('report', recorded)
        self.assertEqual(run.theorem_id, 'rational-camina')
        self.assertEqual(run.seed, 5)
        self.assertEqual(run.status, 'pass')
        self.assertEqual((run.scanned, run.passed, run.failed, run.skipped), (3, 3, 0, 0))
        self.assertEqual(run.report['counts']['scanned'], 3)
        data = CampaignRunSerializer(run).data
        self.assertEqual(data['status_display'], 'Pass')
        self.assertEqual(data['field_token'], 'gf3')

    def test_latest_run(self):
        for seed in (1, 2):
            call_command('verify', 'rational-camina', record=True, seed=seed, stdout=StringIO(), stderr=StringIO())
        self.assertEqual(CampaignRun.objects.count(), 2)
        self.assertEqual(CampaignRun.objects.latest().seed, 2)
        self.assertEqual(str(CampaignRun.objects.latest()), 'rational-camina over gf3: pass (3/3)')

    def test_no_record_by_default(self):
        call_command('verify', 'rational-camina', stdout=StringIO(), stderr=StringIO())
        self.assertFalse(CampaignRun.objects.exists())
