"""Python access to the pfp core: every pf subcommand plus a few direct helpers."""

import json

from . import _core

__version__ = _core.__version__

__all__ = ["PfError", "run", "norm", "entropy", "xi", "criteria", "kahane", "check", "criteria_report",
           "xi_srw_closed_form", "suite_names"]


class PfError(RuntimeError):
    """A subcommand finished with a nonzero exit status."""

    def __init__(self, status, report):
        self.status = status
        self.report = report
        error = report.get("error", {})
        super().__init__(f"exit {status}: {error.get('kind', 'check')}: {error.get('message', 'suite failed')}")


def run(command, **options):
    """Runs a subcommand with CLI-equivalent options and returns the parsed JSON report.

    Option names follow the flags with dashes replaced by underscores; the walk
    entropy override is ``h``. Raises PfError on a nonzero exit status.
    """
    options.setdefault("format", "json")
    status, text = _core.run(command, options)
    if options["format"] != "json":
        if status != 0:
            raise PfError(status, json.loads(text))
        return text
    report = json.loads(text)
    if status != 0:
        raise PfError(status, report)
    return report


def norm(element, p=None, **options):
    return run("norm", element=element, p=p, **options)


def entropy(measure="srw", **options):
    return run("entropy", measure=measure, **options)


def xi(measure="srw", **options):
    return run("xi", measure=measure, **options)


def criteria(hx, p, **options):
    return run("criteria", hx=hx, p=p, **options)


def kahane(p, **options):
    return run("kahane", p=p, **options)


def check(suite="all", **options):
    return run("check", suite=suite, **options)


def criteria_report(k, h, speed, hx, p):
    return json.loads(_core.criteria(k, h, speed, hx, p))


def xi_srw_closed_form(rank, length):
    return _core.xi_srw_closed_form(rank, length)


def suite_names():
    return list(_core.suite_names())
