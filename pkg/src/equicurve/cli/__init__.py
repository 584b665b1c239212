"""Command-line front end, verification jobs and reports."""

from .jobs import JobError, VerificationJob, run_job
from .main import main, verify_paper_suite
from .report import Entry, Report

__all__ = ["Entry", "JobError", "Report", "VerificationJob", "main", "run_job", "verify_paper_suite"]
