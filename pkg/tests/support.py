def assert_all_pass(reports):
    """Every report passes and at least one check actually ran."""
    reports = list(reports)
    assert reports, "no checks were run"
    bad = [rep.to_json() for rep in reports if not rep.passed]
    assert not bad, bad
