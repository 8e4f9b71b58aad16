import json
from io import StringIO
from unittest import mock

from django.core.management import call_command
from django.test import TestCase

from rational_inference.cli import run
from rational_inference.exceptions import ValidationError
from verification.celery_tasks import execute_verification_run
from verification.models import RunState, VerificationRun
from verification.oracle import Failure, VerificationReport


class CheckCommandTest(TestCase):
    def test_plain_run(self):
        self.assertEqual(run(["check", "--atoms", "1", "--trials", "4", "--seed", "2"]), (0, "OK 4/4\n"))
        self.assertFalse(VerificationRun.objects.exists())

    def test_record(self):
        out = StringIO()
        call_command("check", "--atoms", "1", "--trials", "3", "--seed", "1", "--record", stdout=out)
        self.assertEqual(out.getvalue(), "OK 3/3\n")
        record = VerificationRun.objects.get()
        self.assertEqual(record.state, RunState.FINISHED)
        self.assertEqual(record.report, "OK 3/3")
        self.assertEqual(record.failure_count, 0)
        self.assertEqual(json.loads(record.checks), [])
        self.assertIsNotNone(record.finish_at)

    def test_record_selected_checks(self):
        call_command(
            "check", "--atoms", "2", "--trials", "2", "--checks", "rational_rules, chain_roundtrip",
            "--record", stdout=StringIO(),
        )
        record = VerificationRun.objects.get()
        self.assertEqual(json.loads(record.checks), ["rational_rules", "chain_roundtrip"])

    @mock.patch("verification.management.commands.check.execute_verification_run.apply_async")
    def test_queue(self, apply_async):
        apply_async.return_value = mock.Mock(id="task-1")
        code, text = run(["check", "--atoms", "2", "--trials", "10", "--queue"])
        record = VerificationRun.objects.get()
        self.assertEqual((code, text), (0, f"QUEUED run={record.id}\n"))
        self.assertEqual(record.state, RunState.PENDING)
        self.assertEqual(record.celery_task_id, "task-1")
        apply_async.assert_called_once_with(args=[record.id], queue="verification")

    @mock.patch("verification.management.commands.check.verify_theorems")
    def test_failures_exit_one(self, verify):
        report = VerificationReport(2, [Failure("0", "11", "rational_rules", "And\ta\tb\tc")])
        verify.return_value = report
        code, text = run(["check", "--trials", "2"])
        self.assertEqual(code, 1)
        self.assertIn("0\t11\trational_rules\tAnd", text)
        self.assertIn("FAILED 1/2", text)

    def test_invalid_options(self):
        self.assertEqual(run(["check", "--trials", "-1"])[0], 3)
        self.assertEqual(run(["check", "--seed", "-5"])[0], 3)
        self.assertEqual(run(["check", "--atoms", "4"])[0], 3)
        self.assertEqual(run(["check", "--checks", "no_such_check"])[0], 3)
        self.assertEqual(run(["check", "--record", "--queue"])[0], 2)
        self.assertEqual(run(["check", "--trials", "many"])[0], 2)
        self.assertFalse(VerificationRun.objects.exists())

    def test_roundtrip(self):
        self.assertEqual(
            run(["roundtrip", "--atoms", "2", "--trials", "20", "--seed", "3"]), (0, "OK 20/20\n")
        )


class VerificationTaskTest(TestCase):
    def _create_run(self, **fields):
        params = {"atoms": 2, "trials": 5, "seed": 42, "checks": "[]"}
        params.update(fields)
        return VerificationRun.objects.create(**params)

    def test_success(self):
        record = self._create_run()
        result = execute_verification_run.apply(args=[record.id]).get()
        self.assertEqual(result, {"run_id": record.id, "status": "success", "failures": 0})

        record.refresh_from_db()
        self.assertEqual(record.state, RunState.FINISHED)
        self.assertEqual(record.report, "OK 5/5")
        self.assertTrue(record.celery_task_id)
        self.assertIsNotNone(record.start_at)

    def test_failure_marks_run(self):
        record = self._create_run(atoms=4)
        result = execute_verification_run.apply(args=[record.id]).get()
        self.assertEqual(result["status"], "failed")

        record.refresh_from_db()
        self.assertEqual(record.state, RunState.FAILED)
        self.assertIn("LimitExceededError", record.error_message)
        self.assertIsNotNone(record.finish_at)

    def test_missing_run(self):
        result = execute_verification_run.apply(args=[987654]).get()
        self.assertEqual(result["status"], "failed")
        self.assertFalse(VerificationRun.objects.exists())

    @mock.patch("verification.celery_tasks.verify_theorems")
    def test_connection_error_after_last_retry(self, verify):
        verify.side_effect = ConnectionError("broker went away")
        record = self._create_run()
        result = execute_verification_run.apply(args=[record.id], retries=3).get()
        self.assertEqual(result["status"], "failed")
        verify.assert_called_once()

        record.refresh_from_db()
        self.assertEqual(record.state, RunState.FAILED)
        self.assertIn("ConnectionError: broker went away", record.error_message)
        self.assertIsNotNone(record.finish_at)

    @mock.patch("verification.celery_tasks.verify_theorems")
    def test_retries_exhausted(self, verify):
        verify.side_effect = TimeoutError("slow broker")
        record = self._create_run()
        execute_verification_run.apply(args=[record.id], throw=False)
        self.assertEqual(verify.call_count, execute_verification_run.max_retries + 1)

        record.refresh_from_db()
        self.assertEqual(record.state, RunState.FAILED)
        self.assertIn("TimeoutError", record.error_message)


class RecordedRunFailureTest(TestCase):
    @mock.patch("verification.celery_tasks.verify_theorems")
    def test_unexpected_error(self, verify):
        verify.side_effect = ConnectionError("database went away")
        with self.assertRaises(ConnectionError):
            call_command("check", "--atoms", "2", "--trials", "3", "--record", stdout=StringIO())
        record = VerificationRun.objects.get()
        self.assertEqual(record.state, RunState.FAILED)
        self.assertIn("ConnectionError: database went away", record.error_message)
        self.assertIsNotNone(record.finish_at)

    @mock.patch("verification.celery_tasks.verify_theorems")
    def test_library_error_keeps_exit_code(self, verify):
        verify.side_effect = ValidationError("Chain depth must be at least 1, got 0")
        code, _ = run(["check", "--atoms", "2", "--trials", "3", "--record"])
        self.assertEqual(code, 3)
        record = VerificationRun.objects.get()
        self.assertEqual(record.state, RunState.FAILED)
        self.assertIn("ValidationError", record.error_message)
