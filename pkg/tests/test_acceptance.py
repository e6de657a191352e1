"""Full acceptance gate: runs every criterion at full scale and prints one
pass/fail line per criterion."""

from operad_forge.selftest import run_acceptance


def test_acceptance_criteria(capsys):
    results = run_acceptance(seed=0, scale=1.0)
    with capsys.disabled():
        print()
        for r in results:
            print(r.line)
    assert len(results) == 9
    failed = [r for r in results if not r.ok]
    assert not failed, "\n".join(r.line for r in failed)
